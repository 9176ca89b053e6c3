//! Scalar abstraction over `f64` and first-order dual numbers.
//!
//! The whole forward pass and every adjoint is written against
//! [`Scalar`]. Running the tape on plain `f64` gives values and reverse
//! gradients; running it on [`Dual`] with a tangent seeded into the atomic
//! positions propagates a directional derivative through both the forward
//! and the reverse sweep, which is how the mixed second derivative needed
//! by the force term of the loss is obtained (forward-over-reverse).

use crate::fmath;
use core::fmt::Debug;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
{
    const ZERO: Self;
    const ONE: Self;

    fn from_f64(x: f64) -> Self;
    /// The value part (primal) of the scalar.
    fn value(self) -> f64;
    /// True when both value and any tangent part are finite.
    fn is_finite_all(self) -> bool;

    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn sqrt(self) -> Self;

    fn powi(self, n: i32) -> Self {
        let mut acc = Self::ONE;
        debug_assert!(n >= 0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Logistic sigmoid, the building block of SiLU.
    fn sigmoid(self) -> Self {
        Self::ONE / (Self::ONE + (-self).exp())
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline(always)]
    fn value(self) -> f64 {
        self
    }
    #[inline(always)]
    fn is_finite_all(self) -> bool {
        self.is_finite()
    }
    #[inline(always)]
    fn sin(self) -> Self {
        fmath::sin(self)
    }
    #[inline(always)]
    fn cos(self) -> Self {
        fmath::cos(self)
    }
    #[inline(always)]
    fn exp(self) -> Self {
        fmath::exp(self)
    }
    #[inline(always)]
    fn sqrt(self) -> Self {
        fmath::sqrt(self)
    }
    #[inline(always)]
    fn powi(self, n: i32) -> Self {
        fmath::powi(self, n)
    }
}

/// First-order dual number: value plus one tangent component.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Dual {
    pub re: f64,
    pub dx: f64,
}

impl Dual {
    #[inline(always)]
    pub const fn new(re: f64, dx: f64) -> Self {
        Dual { re, dx }
    }
    /// Lift a constant (zero tangent).
    #[inline(always)]
    pub const fn constant(re: f64) -> Self {
        Dual { re, dx: 0.0 }
    }
}

impl Add for Dual {
    type Output = Dual;
    #[inline(always)]
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.re + o.re, self.dx + o.dx)
    }
}
impl Sub for Dual {
    type Output = Dual;
    #[inline(always)]
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.re - o.re, self.dx - o.dx)
    }
}
impl Mul for Dual {
    type Output = Dual;
    #[inline(always)]
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.re * o.re, self.re * o.dx + self.dx * o.re)
    }
}
impl Div for Dual {
    type Output = Dual;
    #[inline(always)]
    fn div(self, o: Dual) -> Dual {
        let inv = 1.0 / o.re;
        let re = self.re * inv;
        Dual::new(re, (self.dx - re * o.dx) * inv)
    }
}
impl Neg for Dual {
    type Output = Dual;
    #[inline(always)]
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.dx)
    }
}
impl AddAssign for Dual {
    #[inline(always)]
    fn add_assign(&mut self, o: Dual) {
        *self = *self + o;
    }
}
impl SubAssign for Dual {
    #[inline(always)]
    fn sub_assign(&mut self, o: Dual) {
        *self = *self - o;
    }
}
impl MulAssign for Dual {
    #[inline(always)]
    fn mul_assign(&mut self, o: Dual) {
        *self = *self * o;
    }
}
impl Sum for Dual {
    fn sum<I: Iterator<Item = Dual>>(iter: I) -> Dual {
        iter.fold(Dual::constant(0.0), |a, b| a + b)
    }
}

impl Scalar for Dual {
    const ZERO: Self = Dual::constant(0.0);
    const ONE: Self = Dual::constant(1.0);

    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        Dual::constant(x)
    }
    #[inline(always)]
    fn value(self) -> f64 {
        self.re
    }
    #[inline(always)]
    fn is_finite_all(self) -> bool {
        self.re.is_finite() && self.dx.is_finite()
    }
    #[inline(always)]
    fn sin(self) -> Self {
        Dual::new(fmath::sin(self.re), self.dx * fmath::cos(self.re))
    }
    #[inline(always)]
    fn cos(self) -> Self {
        Dual::new(fmath::cos(self.re), -self.dx * fmath::sin(self.re))
    }
    #[inline(always)]
    fn exp(self) -> Self {
        let e = fmath::exp(self.re);
        Dual::new(e, self.dx * e)
    }
    #[inline(always)]
    fn sqrt(self) -> Self {
        let s = fmath::sqrt(self.re);
        Dual::new(s, 0.5 * self.dx / s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn dual_propagates_derivatives() {
        // f(x) = sin(x) * exp(x) / sqrt(x); f'(x) by product/chain rule.
        let x = 0.7;
        let d = {
            let v = Dual::new(x, 1.0);
            v.sin() * v.exp() / v.sqrt()
        };
        let f = |x: f64| x.sin() * x.exp() / x.sqrt();
        let h = 1e-6;
        let fd = (f(x + h) - f(x - h)) / (2.0 * h);
        assert!(close(d.re, f(x)));
        assert!((d.dx - fd).abs() < 1e-8);
    }

    #[test]
    fn dual_sigmoid_matches_f64() {
        let x = -0.3;
        let d = Dual::new(x, 1.0).sigmoid();
        let s = x.sigmoid();
        assert!(close(d.re, s));
        assert!(close(d.dx, s * (1.0 - s)));
    }
}
