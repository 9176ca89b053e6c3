//! `f64` transcendentals that work in both `std` and `no_std` builds.
//!
//! With `std` these are the inherent methods; without it they route
//! through `libm`. Everything else in the crate calls these shims (or the
//! [`crate::scalar::Scalar`] trait, which is built on them).

#[cfg(feature = "std")]
mod imp {
    #[inline(always)]
    pub fn sin(x: f64) -> f64 {
        x.sin()
    }
    #[inline(always)]
    pub fn cos(x: f64) -> f64 {
        x.cos()
    }
    #[inline(always)]
    pub fn exp(x: f64) -> f64 {
        x.exp()
    }
    #[inline(always)]
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    #[inline(always)]
    pub fn floor(x: f64) -> f64 {
        x.floor()
    }
    #[inline(always)]
    pub fn abs(x: f64) -> f64 {
        x.abs()
    }
    #[inline(always)]
    pub fn powi(x: f64, n: i32) -> f64 {
        x.powi(n)
    }
}

#[cfg(not(feature = "std"))]
mod imp {
    #[inline(always)]
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }
    #[inline(always)]
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }
    #[inline(always)]
    pub fn exp(x: f64) -> f64 {
        libm::exp(x)
    }
    #[inline(always)]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    #[inline(always)]
    pub fn floor(x: f64) -> f64 {
        libm::floor(x)
    }
    #[inline(always)]
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }
    pub fn powi(x: f64, n: i32) -> f64 {
        let mut acc = 1.0;
        let mut base = if n < 0 { 1.0 / x } else { x };
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
}

pub use imp::{abs, cos, exp, floor, powi, sin, sqrt};

/// Euclidean norm of a 3-vector.
#[inline]
pub fn norm3(v: [f64; 3]) -> f64 {
    sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
}

/// `n!` as f64, exact for `n <= 20`.
pub fn factorial(n: u32) -> f64 {
    debug_assert!(n <= 20);
    let mut acc = 1.0;
    for i in 2..=n as u64 {
        acc *= i as f64;
    }
    acc
}
