//! Real spherical harmonics.
//!
//! Convention: orthonormal real harmonics with the Condon–Shortley phase in
//! the underlying complex basis, components ordered `m = -l..l`. With
//! `u = (x, y, z)` on the unit sphere,
//!
//! ```text
//! Y[l, m>0] = N(l,m) * Re((x+iy)^m) * Q(l,m; z)
//! Y[l, 0  ] = N(l,0) * Q(l,0; z)
//! Y[l, m<0] = N(l,|m|) * Im((x+iy)^|m|) * Q(l,|m|; z)
//! ```
//!
//! where `Q(l,m)` is the associated Legendre polynomial with the
//! `(1-z^2)^{m/2}` factor removed and `N` the orthonormalization constant.
//! These functions are parity-definite: `Y_l(-u) = (-1)^l Y_l(u)`.
//!
//! Blocks are flattened as `p = l^2 + l + m`, so a full evaluation up to
//! `l_max` has `(l_max+1)^2` components.

use crate::error::{Error, Result};
use crate::fmath;
use crate::scalar::Scalar;
use alloc::vec;
use alloc::vec::Vec;

/// Flattened component index of `(l, m)`.
#[inline(always)]
pub fn lm_index(l: usize, m: isize) -> usize {
    (l * l) as usize + (l as isize + m) as usize
}

/// Number of components for orders `0..=l_max`.
#[inline(always)]
pub fn n_components(l_max: usize) -> usize {
    (l_max + 1) * (l_max + 1)
}

fn norm_const(l: usize, m: usize) -> f64 {
    let four_pi = 4.0 * core::f64::consts::PI;
    let base = (2 * l + 1) as f64 / four_pi;
    if m == 0 {
        fmath::sqrt(base)
    } else {
        fmath::sqrt(
            2.0 * base * fmath::factorial((l - m) as u32) / fmath::factorial((l + m) as u32),
        )
    }
}

/// Evaluate all components up to `l_max` at a unit vector. No unit check;
/// the public wrapper [`real_sph_harm`] enforces the contract.
pub fn eval<S: Scalar>(l_max: usize, u: [S; 3]) -> Vec<S> {
    let (values, _) = eval_impl::<S, false>(l_max, u);
    values
}

/// Evaluate values and Cartesian gradients of the polynomial extension.
/// Directions tangent to the sphere are exact; the radial component is an
/// artifact of the extension and is projected out by the caller (the edge
/// geometry carries the `(I - u u^T)/r` factor).
pub fn eval_grad<S: Scalar>(l_max: usize, u: [S; 3]) -> (Vec<S>, Vec<[S; 3]>) {
    let (values, grads) = eval_impl::<S, true>(l_max, u);
    (values, grads)
}

fn eval_impl<S: Scalar, const GRAD: bool>(l_max: usize, u: [S; 3]) -> (Vec<S>, Vec<[S; 3]>) {
    let [x, y, z] = u;
    let n = n_components(l_max);
    let mut out = vec![S::ZERO; n];
    let mut grad = if GRAD {
        vec![[S::ZERO; 3]; n]
    } else {
        Vec::new()
    };

    // cos/sin azimuthal polynomials: c[m] + i s[m] = (x + iy)^m.
    let mut c = vec![S::ZERO; l_max + 1];
    let mut s = vec![S::ZERO; l_max + 1];
    c[0] = S::ONE;
    for m in 1..=l_max {
        c[m] = x * c[m - 1] - y * s[m - 1];
        s[m] = x * s[m - 1] + y * c[m - 1];
    }

    // q[l][m], dq[l][m]: Legendre part and its z-derivative.
    let mut q = vec![vec![S::ZERO; l_max + 1]; l_max + 1];
    let mut dq = vec![vec![S::ZERO; l_max + 1]; l_max + 1];
    for m in 0..=l_max {
        // Q(m, m) = (2m-1)!!
        let mut dfact = 1.0;
        for k in 1..=m {
            dfact *= (2 * k - 1) as f64;
        }
        q[m][m] = S::from_f64(dfact);
        if m + 1 <= l_max {
            let f = S::from_f64((2 * m + 1) as f64);
            q[m + 1][m] = f * z * q[m][m];
            dq[m + 1][m] = f * q[m][m];
        }
        for l in (m + 2)..=l_max {
            let a = S::from_f64((2 * l - 1) as f64 / (l - m) as f64);
            let b = S::from_f64((l - 1 + m) as f64 / (l - m) as f64);
            q[l][m] = a * z * q[l - 1][m] - b * q[l - 2][m];
            if GRAD {
                dq[l][m] = a * (q[l - 1][m] + z * dq[l - 1][m]) - b * dq[l - 2][m];
            }
        }
    }

    for l in 0..=l_max {
        for m in 0..=l {
            let nc = S::from_f64(norm_const(l, m));
            let ql = q[l][m];
            if m == 0 {
                let idx = lm_index(l, 0);
                out[idx] = nc * ql;
                if GRAD {
                    grad[idx][2] = nc * dq[l][0];
                }
            } else {
                let (ip, im) = (lm_index(l, m as isize), lm_index(l, -(m as isize)));
                out[ip] = nc * c[m] * ql;
                out[im] = nc * s[m] * ql;
                if GRAD {
                    let mf = S::from_f64(m as f64);
                    // d/dx (c,s)[m] = m (c,s)[m-1];  d/dy c[m] = -m s[m-1], d/dy s[m] = m c[m-1]
                    grad[ip][0] = nc * mf * c[m - 1] * ql;
                    grad[ip][1] = -nc * mf * s[m - 1] * ql;
                    grad[ip][2] = nc * c[m] * dq[l][m];
                    grad[im][0] = nc * mf * s[m - 1] * ql;
                    grad[im][1] = nc * mf * c[m - 1] * ql;
                    grad[im][2] = nc * s[m] * dq[l][m];
                }
            }
        }
    }
    (out, grad)
}

/// Real spherical harmonics at a unit vector, all orders `l <= l_max`.
///
/// Errors if `|unit_vec|` deviates from 1 by more than 1e-12.
pub fn real_sph_harm(l_max: usize, unit_vec: [f64; 3]) -> Result<Vec<f64>> {
    let n = fmath::norm3(unit_vec);
    if fmath::abs(n - 1.0) > 1e-12 {
        return Err(Error::Contract(alloc::format!(
            "real_sph_harm requires a unit vector, got |v| = {n:.17}"
        )));
    }
    Ok(eval(l_max, unit_vec))
}

/// Gauss–Legendre nodes and weights on [-1, 1], exact for polynomials of
/// degree <= 2n - 1. Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-like initial guess.
        let mut x = fmath::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            // P_n(x) and P_n'(x)
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if fmath::abs(dx) < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// Quadrature over the unit sphere (weights sum to 4π), exact for
/// spherical-polynomial integrands of degree <= min(2*n_theta - 1, n_phi - 1).
pub fn sphere_quadrature(n_theta: usize, n_phi: usize) -> Vec<([f64; 3], f64)> {
    let gl = gauss_legendre(n_theta);
    let mut pts = Vec::with_capacity(n_theta * n_phi);
    let dphi = 2.0 * core::f64::consts::PI / n_phi as f64;
    for &(z, wz) in &gl {
        let rho = fmath::sqrt((1.0 - z * z).max(0.0));
        for j in 0..n_phi {
            let phi = dphi * j as f64;
            pts.push((
                [rho * fmath::cos(phi), rho * fmath::sin(phi), z],
                wz * dphi,
            ));
        }
    }
    pts
}
