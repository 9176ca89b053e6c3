//! Clebsch–Gordan coefficients in the real spherical-harmonic basis.
//!
//! Complex-basis coefficients come from the Racah closed form evaluated in
//! exact `i128` rational arithmetic (factorials up to the supported order
//! cap fit comfortably), followed by one square root. The real-basis table
//! is the conjugation of the complex table by the complex-to-real change
//! of basis.
//!
//! Parity bookkeeping: with every block of order `l` carrying parity
//! `(-1)^l`, a product of two blocks can only feed an order-`l3` block when
//! `l1 + l2 + l3` is even. For odd sums the conjugated table is purely
//! imaginary; [`cg_real`] returns an empty table for those triples. The
//! coupling-chain machinery still needs the stripped imaginary part (two
//! odd links compose to a real, parity-consistent map), which is what
//! [`cg_real_raw`] exposes.

use crate::error::{Error, Result};
use crate::fmath;
use alloc::vec::Vec;

/// Hard cap on the order of any coupled block (features, edge harmonics
/// and chain intermediates alike).
pub const MAX_ORDER: usize = 4;

/// An irreducible block label. Parity is fixed to `(-1)^l` throughout the
/// crate; the field exists so the convention is explicit at type level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Irrep {
    pub l: usize,
    pub parity: i8,
}

impl Irrep {
    pub fn new(l: usize) -> Self {
        Irrep {
            l,
            parity: if l % 2 == 0 { 1 } else { -1 },
        }
    }
    pub fn dimension(&self) -> usize {
        2 * self.l + 1
    }
}

/// One non-zero real-basis coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgEntry {
    pub m1: i32,
    pub m2: i32,
    pub m3: i32,
    pub value: f64,
}

/// Sparse coefficient table for the coupling `l1 x l2 -> l3`. Entries are
/// sorted lexicographically by `(m1, m2, m3)` for deterministic iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct CgTable {
    pub l1: usize,
    pub l2: usize,
    pub l3: usize,
    pub entries: Vec<CgEntry>,
}

impl CgTable {
    fn empty(l1: usize, l2: usize, l3: usize) -> Self {
        CgTable {
            l1,
            l2,
            l3,
            entries: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Couple two blocks: `out[m3] = sum C^{l3 m3}_{l1 m1, l2 m2} u[m1] w[m2]`.
    pub fn couple(&self, u: &[f64], w: &[f64]) -> Vec<f64> {
        debug_assert_eq!(u.len(), 2 * self.l1 + 1);
        debug_assert_eq!(w.len(), 2 * self.l2 + 1);
        let mut out = alloc::vec![0.0; 2 * self.l3 + 1];
        for e in &self.entries {
            out[(e.m3 + self.l3 as i32) as usize] += e.value
                * u[(e.m1 + self.l1 as i32) as usize]
                * w[(e.m2 + self.l2 as i32) as usize];
        }
        out
    }
}

fn triangle_ok(l1: usize, l2: usize, l3: usize) -> bool {
    l3 + l2 >= l1 && l1 + l3 >= l2 && l1 + l2 >= l3
}

/// Real-basis Clebsch–Gordan table. Empty when the triangle inequality
/// fails or when `l1 + l2 + l3` is odd (parity-inconsistent in the
/// `(-1)^l` convention).
pub fn cg_real(l1: usize, l2: usize, l3: usize) -> CgTable {
    if (l1 + l2 + l3) % 2 == 1 {
        return CgTable::empty(l1, l2, l3);
    }
    cg_real_raw(l1, l2, l3).0
}

/// Real-basis table with the `i^sigma` phase stripped. Returns the table
/// and `sigma` (1 for odd `l1+l2+l3`, else 0): the true coupling operator
/// is `i^sigma` times the returned real table. Chains with an even number
/// of odd links compose to genuinely real couplings.
pub(crate) fn cg_real_raw(l1: usize, l2: usize, l3: usize) -> (CgTable, u32) {
    let sigma = ((l1 + l2 + l3) % 2) as u32;
    if !triangle_ok(l1, l2, l3) {
        return (CgTable::empty(l1, l2, l3), sigma);
    }
    assert!(
        l1 <= MAX_ORDER && l2 <= MAX_ORDER && l3 <= MAX_ORDER,
        "coupling orders above {MAX_ORDER} are unsupported"
    );
    let mut entries = Vec::new();
    for m1 in -(l1 as i32)..=(l1 as i32) {
        for m2 in -(l2 as i32)..=(l2 as i32) {
            for m3 in -(l3 as i32)..=(l3 as i32) {
                let (re, im) = real_coupling_element(l1, l2, l3, m1, m2, m3);
                let value = if sigma == 0 { re } else { im };
                let residue = if sigma == 0 { im } else { re };
                debug_assert!(
                    residue.abs() < 1e-12,
                    "phase residue {residue} at ({l1},{l2},{l3};{m1},{m2},{m3})"
                );
                if value.abs() > 1e-14 {
                    entries.push(CgEntry { m1, m2, m3, value });
                }
            }
        }
    }
    (CgTable { l1, l2, l3, entries }, sigma)
}

/// `sum_{mu} A1[m1,mu1] A2[m2,mu2] conj(A3[m3,mu3]) <l1 mu1 l2 mu2 | l3 mu3>`
/// where `A` is the complex-to-real change of basis. Only `mu_i = ±m_i`
/// contribute and `mu3 = mu1 + mu2`.
fn real_coupling_element(
    l1: usize,
    l2: usize,
    l3: usize,
    m1: i32,
    m2: i32,
    m3: i32,
) -> (f64, f64) {
    let (mut re, mut im) = (0.0, 0.0);
    let (c1, n1) = candidates(m1);
    let (c2, n2) = candidates(m2);
    for &mu1 in &c1[..n1] {
        for &mu2 in &c2[..n2] {
            let mu3 = mu1 + mu2;
            if mu3.abs() != m3.abs() {
                continue;
            }
            let a1 = real_basis_coeff(m1, mu1);
            let a2 = real_basis_coeff(m2, mu2);
            let a3 = conj(real_basis_coeff(m3, mu3));
            let cgv = complex_cg(l1, mu1, l2, mu2, l3, mu3);
            let prod = cmul(cmul(a1, a2), a3);
            re += prod.0 * cgv;
            im += prod.1 * cgv;
        }
    }
    (re, im)
}

/// The complex orders contributing to a real component: `{m, -m}`, or just
/// `{0}`. Returned as (buffer, count).
fn candidates(m: i32) -> ([i32; 2], usize) {
    if m == 0 {
        ([0, 0], 1)
    } else {
        ([m, -m], 2)
    }
}

type C64 = (f64, f64);

fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}
fn conj(a: C64) -> C64 {
    (a.0, -a.1)
}

/// Entry `A[m, mu]` of the complex-to-real change of basis,
/// `Y^real_m = sum_mu A[m,mu] Y^complex_mu` (Condon–Shortley phase in the
/// complex harmonics). Zero unless `|mu| == |m|`; `candidates` already
/// filters, so duplicate `mu = 0` entries never reach here twice with
/// `m != 0`.
fn real_basis_coeff(m: i32, mu: i32) -> C64 {
    const INV_SQRT2: f64 = core::f64::consts::FRAC_1_SQRT_2;
    if m == 0 {
        return if mu == 0 { (1.0, 0.0) } else { (0.0, 0.0) };
    }
    let neg1_m = if m.abs() % 2 == 0 { 1.0 } else { -1.0 };
    if m > 0 {
        if mu == m {
            (neg1_m * INV_SQRT2, 0.0)
        } else {
            (INV_SQRT2, 0.0)
        }
    } else if mu == -m {
        // mu = |m|
        (0.0, -neg1_m * INV_SQRT2)
    } else {
        (0.0, INV_SQRT2)
    }
}

// ---- exact rational arithmetic for the Racah formula ----

#[derive(Clone, Copy, Debug)]
struct Rat {
    n: i128,
    d: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

impl Rat {
    fn new(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let s = if d < 0 { -1 } else { 1 };
        let g = gcd(n, d);
        Rat {
            n: s * n / g,
            d: s * d / g,
        }
    }
    fn int(n: i128) -> Rat {
        Rat { n, d: 1 }
    }
    fn mul(self, o: Rat) -> Rat {
        let g1 = gcd(self.n, o.d);
        let g2 = gcd(o.n, self.d);
        Rat::new((self.n / g1) * (o.n / g2), (self.d / g2) * (o.d / g1))
    }
    fn add(self, o: Rat) -> Rat {
        let g = gcd(self.d, o.d);
        let lcm = (self.d / g) * o.d;
        Rat::new(self.n * (o.d / g) + o.n * (self.d / g), lcm)
    }
    fn to_f64(self) -> f64 {
        self.n as f64 / self.d as f64
    }
}

fn fact_i(n: i32) -> i128 {
    debug_assert!((0..=24).contains(&n));
    (2..=n as i128).product::<i128>().max(1)
}

/// `<l1 m1 l2 m2 | l3 m3>` via the Racah closed form with exact rational
/// prefactor and sum; a single `sqrt` at the end.
fn complex_cg(l1: usize, m1: i32, l2: usize, m2: i32, l3: usize, m3: i32) -> f64 {
    let (j1, j2, j3) = (l1 as i32, l2 as i32, l3 as i32);
    if m1 + m2 != m3 || m1.abs() > j1 || m2.abs() > j2 || m3.abs() > j3 {
        return 0.0;
    }
    if !triangle_ok(l1, l2, l3) {
        return 0.0;
    }
    let delta = Rat::new(
        fact_i(j1 + j2 - j3) * fact_i(j1 - j2 + j3),
        fact_i(j1 + j2 + j3 + 1),
    )
    .mul(Rat::int(fact_i(-j1 + j2 + j3)));
    let pref = Rat::int((2 * j3 + 1) as i128)
        .mul(delta)
        .mul(Rat::int(fact_i(j3 + m3) * fact_i(j3 - m3)))
        .mul(Rat::int(fact_i(j1 - m1) * fact_i(j1 + m1)))
        .mul(Rat::int(fact_i(j2 - m2) * fact_i(j2 + m2)));

    let k_min = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let k_max = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut sum = Rat::int(0);
    let mut k = k_min;
    while k <= k_max {
        let denom = fact_i(k)
            * fact_i(j1 + j2 - j3 - k)
            * fact_i(j1 - m1 - k)
            * fact_i(j2 + m2 - k)
            * fact_i(j3 - j2 + m1 + k)
            * fact_i(j3 - j1 - m2 + k);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        sum = sum.add(Rat::new(sign, denom));
        k += 1;
    }
    fmath::sqrt(pref.to_f64()) * sum.to_f64()
}

/// All `(l1, l2, l3)` triples with `l1 <= sh_l_max`, `l2 <= feat_l_max`,
/// `l3 <= out_l_max`, triangle-admissible and parity-even, in lexicographic
/// order. This fixed ordering defines the layout of the radial MLP output.
pub fn admissible_triples(
    sh_l_max: usize,
    feat_l_max: usize,
    out_l_max: usize,
) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for l1 in 0..=sh_l_max {
        for l2 in 0..=feat_l_max {
            for l3 in 0..=out_l_max {
                if triangle_ok(l1, l2, l3) && (l1 + l2 + l3) % 2 == 0 {
                    out.push((l1, l2, l3));
                }
            }
        }
    }
    out
}

/// The coupling tables a model layer needs, keyed by the triple list.
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct CgTableSet {
    pub triples: Vec<(usize, usize, usize)>,
    pub tables: Vec<CgTable>,
}

impl CgTableSet {
    pub fn build(sh_l_max: usize, feat_l_max: usize, out_l_max: usize) -> Result<Self> {
        if sh_l_max > MAX_ORDER || feat_l_max > MAX_ORDER || out_l_max > MAX_ORDER {
            return Err(Error::Contract(alloc::format!(
                "orders above {MAX_ORDER} are unsupported (got {sh_l_max}, {feat_l_max}, {out_l_max})"
            )));
        }
        let triples = admissible_triples(sh_l_max, feat_l_max, out_l_max);
        let tables = triples
            .iter()
            .map(|&(a, b, c)| cg_real(a, b, c))
            .collect();
        Ok(CgTableSet { triples, tables })
    }

    /// Validation hook for the self-check mutation test: flip the sign of
    /// one coefficient so equivariance checks must fail.
    pub fn corrupt_one_entry(&mut self) {
        for t in self.tables.iter_mut() {
            if let Some(e) = t.entries.iter_mut().find(|e| e.m1 != 0 || e.m2 != 0) {
                e.value = -e.value;
                return;
            }
        }
    }
}
