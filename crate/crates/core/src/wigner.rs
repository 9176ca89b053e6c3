//! Wigner D-matrices for the real spherical-harmonic basis.
//!
//! `wigner_d_real(L, Q)` returns the matrix `D` with
//! `Y_L(Q v) = D · Y_L(v)` for every unit `v`. It is recovered by a
//! least-squares fit of harmonic evaluations over a deterministic spread
//! of sample directions; the linear system is consistent (the harmonics
//! span an invariant subspace), so the fit is exact to rounding. Improper
//! rotations are covered: `det Q = -1` contributes the parity factor
//! `(-1)^L` through the harmonics themselves.
//!
//! This is a test utility: the model never evaluates D-matrices, but the
//! equivariance contracts are phrased with them.

use crate::error::{Error, Result};
use crate::fmath;
use crate::sph;
use alloc::vec;
use alloc::vec::Vec;

/// Deterministic quasi-uniform directions (golden-angle spiral).
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = core::f64::consts::PI * (3.0 - fmath::sqrt(5.0));
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let rho = fmath::sqrt((1.0 - z * z).max(0.0));
            let phi = golden * i as f64;
            [rho * fmath::cos(phi), rho * fmath::sin(phi), z]
        })
        .collect()
}

fn mat_vec(q: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        q[0][0] * v[0] + q[0][1] * v[1] + q[0][2] * v[2],
        q[1][0] * v[0] + q[1][1] * v[1] + q[1][2] * v[2],
        q[2][0] * v[0] + q[2][1] * v[1] + q[2][2] * v[2],
    ]
}

fn check_orthogonal(q: &[[f64; 3]; 3]) -> Result<()> {
    for i in 0..3 {
        for j in 0..3 {
            let dot: f64 = (0..3).map(|k| q[k][i] * q[k][j]).sum();
            let expect = if i == j { 1.0 } else { 0.0 };
            if fmath::abs(dot - expect) > 1e-10 {
                return Err(Error::Contract(alloc::format!(
                    "wigner_d_real requires an orthogonal matrix; Q^T Q [{i}][{j}] = {dot}"
                )));
            }
        }
    }
    Ok(())
}

/// Solve `A x = b` in place for a small dense system (partial pivoting).
fn solve_small(a: &mut [Vec<f64>], b: &mut [Vec<f64>]) {
    let n = a.len();
    let m = b[0].len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| fmath::abs(a[i][col]).total_cmp(&fmath::abs(a[j][col])))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let diag = a[col][col];
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = a[row][col] / diag;
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            for k in 0..m {
                let v = b[col][k];
                b[row][k] -= f * v;
            }
        }
    }
    for row in 0..n {
        let diag = a[row][row];
        for k in 0..m {
            b[row][k] /= diag;
        }
    }
}

/// The `(2L+1) x (2L+1)` real Wigner matrix of `Q` at order `L`.
pub fn wigner_d_real(l: usize, q: &[[f64; 3]; 3]) -> Result<Vec<Vec<f64>>> {
    check_orthogonal(q)?;
    let dim = 2 * l + 1;
    if l == 0 {
        return Ok(vec![vec![1.0]]);
    }
    let n_samples = (2 * dim * dim).max(48);
    let dirs = fibonacci_sphere(n_samples);
    let base = l * l;

    // Normal equations: D (Y Y^T) = Z Y^T with columns Y_L(v), Z = Y_L(Qv).
    let mut gram = vec![vec![0.0; dim]; dim];
    let mut rhs = vec![vec![0.0; dim]; dim]; // rhs[a][b] = sum_s z_a y_b, transposed below
    for v in &dirs {
        let y = sph::eval(l, *v);
        let z = sph::eval(l, mat_vec(q, *v));
        for a in 0..dim {
            for b in 0..dim {
                gram[a][b] += y[base + a] * y[base + b];
                rhs[a][b] += y[base + a] * z[base + b];
            }
        }
    }
    // gram x_col = rhs_col solves D^T column-wise.
    solve_small(&mut gram, &mut rhs);
    let mut d = vec![vec![0.0; dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            d[a][b] = rhs[b][a];
        }
    }
    Ok(d)
}

/// `D * block` for a single order-L block.
pub fn apply(d: &[Vec<f64>], block: &[f64]) -> Vec<f64> {
    d.iter()
        .map(|row| row.iter().zip(block).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Prng;
    use crate::sph::lm_index;

    fn mat_mul3(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }

    #[test]
    fn order_zero_is_one() {
        let mut rng = Prng::seed_from_u64(1);
        let d = wigner_d_real(0, &rng.rotation()).unwrap();
        assert_eq!(d, vec![vec![1.0]]);
    }

    #[test]
    fn identity_rotation() {
        let eye = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for l in 0..=3 {
            let d = wigner_d_real(l, &eye).unwrap();
            for a in 0..2 * l + 1 {
                for b in 0..2 * l + 1 {
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!((d[a][b] - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn transforms_harmonics() {
        let mut rng = Prng::seed_from_u64(2);
        for _ in 0..10 {
            let q = rng.rotation();
            for l in 0..=4usize {
                let d = wigner_d_real(l, &q).unwrap();
                let v = rng.unit_vector();
                let y = sph::eval(l, v);
                let yq = sph::eval(l, mat_vec(&q, v));
                let mapped = apply(&d, &y[l * l..(l + 1) * (l + 1)]);
                for (a, m) in mapped.iter().enumerate() {
                    assert!(
                        (yq[l * l + a] - m).abs() < 1e-11,
                        "l={l} comp={a}: {} vs {m}",
                        yq[l * l + a]
                    );
                }
            }
        }
    }

    #[test]
    fn composition_property() {
        let mut rng = Prng::seed_from_u64(3);
        for _ in 0..10 {
            let q1 = rng.rotation();
            let q2 = rng.rotation();
            let q12 = mat_mul3(&q1, &q2);
            for l in 0..=3usize {
                let d1 = wigner_d_real(l, &q1).unwrap();
                let d2 = wigner_d_real(l, &q2).unwrap();
                let d12 = wigner_d_real(l, &q12).unwrap();
                let dim = 2 * l + 1;
                for a in 0..dim {
                    for b in 0..dim {
                        let prod: f64 = (0..dim).map(|k| d1[a][k] * d2[k][b]).sum();
                        assert!(
                            (d12[a][b] - prod).abs() < 1e-10,
                            "l={l} [{a}][{b}]: {} vs {prod}",
                            d12[a][b]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn result_is_orthogonal() {
        let mut rng = Prng::seed_from_u64(4);
        for _ in 0..10 {
            let q = rng.rotation();
            for l in 1..=3usize {
                let d = wigner_d_real(l, &q).unwrap();
                let dim = 2 * l + 1;
                for a in 0..dim {
                    for b in 0..dim {
                        let dot: f64 = (0..dim).map(|k| d[k][a] * d[k][b]).sum();
                        let expect = if a == b { 1.0 } else { 0.0 };
                        assert!((dot - expect).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn inversion_carries_parity() {
        let inv = [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]];
        for l in 0..=4usize {
            let d = wigner_d_real(l, &inv).unwrap();
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            for a in 0..2 * l + 1 {
                for b in 0..2 * l + 1 {
                    let expect = if a == b { sign } else { 0.0 };
                    assert!((d[a][b] - expect).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn rejects_non_orthogonal() {
        let bad = [[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(matches!(
            wigner_d_real(2, &bad),
            Err(crate::Error::Contract(_))
        ));
    }
}
