//! Seeded randomness. Everything stochastic in the crate (parameter
//! initialization, epoch shuffling, the self-check suite) draws from one
//! [`Prng`] so that runs are reproducible from a single seed across
//! platforms.

use alloc::vec::Vec;
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

pub struct Prng {
    inner: ChaCha12Rng,
}

impl Prng {
    pub fn seed_from_u64(seed: u64) -> Self {
        Prng {
            inner: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Derive an independent stream, e.g. one per parameter tensor.
    pub fn fork(&mut self) -> Self {
        Prng {
            inner: ChaCha12Rng::seed_from_u64(self.next_u64()),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        // Modulo bias is irrelevant at the sizes used here.
        (self.next_u64() % n as u64) as usize
    }

    /// Standard normal via Box–Muller.
    pub fn normal(&mut self) -> f64 {
        use crate::fmath::{cos, sqrt};
        let u1 = loop {
            let u = self.uniform();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.uniform();
        sqrt(-2.0 * ln(u1)) * cos(2.0 * core::f64::consts::PI * u2)
    }

    /// Fisher–Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i + 1);
            xs.swap(i, j);
        }
    }

    /// A random rotation matrix, uniform over SO(3) (quaternion method).
    pub fn rotation(&mut self) -> [[f64; 3]; 3] {
        use crate::fmath::{cos, sin, sqrt};
        let u1 = self.uniform();
        let u2 = self.uniform();
        let u3 = self.uniform();
        let two_pi = 2.0 * core::f64::consts::PI;
        let (a, b) = (sqrt(1.0 - u1), sqrt(u1));
        let q = [
            a * sin(two_pi * u2),
            a * cos(two_pi * u2),
            b * sin(two_pi * u3),
            b * cos(two_pi * u3),
        ];
        let (x, y, z, w) = (q[0], q[1], q[2], q[3]);
        [
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - z * w),
                2.0 * (x * z + y * w),
            ],
            [
                2.0 * (x * y + z * w),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - x * w),
            ],
            [
                2.0 * (x * z - y * w),
                2.0 * (y * z + x * w),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ]
    }

    /// A random unit vector, uniform on the sphere.
    pub fn unit_vector(&mut self) -> [f64; 3] {
        use crate::fmath::{cos, sin, sqrt};
        let z = self.uniform_in(-1.0, 1.0);
        let phi = self.uniform_in(0.0, 2.0 * core::f64::consts::PI);
        let r = sqrt((1.0 - z * z).max(0.0));
        [r * cos(phi), r * sin(phi), z]
    }

    pub fn normal_vec(&mut self, n: usize, scale: f64) -> Vec<f64> {
        (0..n).map(|_| scale * self.normal()).collect()
    }
}

#[cfg(feature = "std")]
fn ln(x: f64) -> f64 {
    x.ln()
}
#[cfg(not(feature = "std"))]
fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_across_instances() {
        let mut a = Prng::seed_from_u64(7);
        let mut b = Prng::seed_from_u64(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn rotation_is_orthogonal() {
        let mut rng = Prng::seed_from_u64(1);
        for _ in 0..20 {
            let q = rng.rotation();
            for i in 0..3 {
                for j in 0..3 {
                    let dot: f64 = (0..3).map(|k| q[k][i] * q[k][j]).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - expect).abs() < 1e-12);
                }
            }
            let det = q[0][0] * (q[1][1] * q[2][2] - q[1][2] * q[2][1])
                - q[0][1] * (q[1][0] * q[2][2] - q[1][2] * q[2][0])
                + q[0][2] * (q[1][0] * q[2][1] - q[1][1] * q[2][0]);
            assert!((det - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn normal_has_sane_moments() {
        let mut rng = Prng::seed_from_u64(3);
        let n = 20_000;
        let xs: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }
}
