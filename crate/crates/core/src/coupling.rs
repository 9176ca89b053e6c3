//! Generalized Clebsch–Gordan coefficients: chained couplings of a tuple
//! of orders `(l_1, ..., l_nu)` down to a target order `L`.
//!
//! A coupling path is a chain of intermediates `(L_2, ..., L_nu)` with
//! `L_1 = l_1`, every link triangle-admissible and `L_nu = L`; the
//! coefficient of a path is the chained product of pairwise real-basis
//! coefficients. Individual links may have odd `l`-sum (their real tables
//! carry an implicit factor of `i`); a scheme is non-empty only when the
//! total `l_1 + ... + l_nu + L` is even, in which case the number of odd
//! links is even and the chained product is genuinely real.
//!
//! Paths are enumerated in lexicographic order of the intermediate tuple
//! and all admissible chains are kept, including linearly dependent ones;
//! any dependence is absorbed by the learned weights attached per path.
//! Intermediates are capped at [`crate::cg::MAX_ORDER`].

use crate::cg::{self, MAX_ORDER};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// Intermediate orders `(L_2, ..., L_nu)` of one coupling chain; empty for
/// a single-leg tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingPath {
    pub intermediates: Vec<usize>,
}

/// One non-zero generalized coefficient: path index, `m`-tuple (one per
/// leg), output component `M`, value.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeEntry {
    pub path: usize,
    pub m: Vec<i32>,
    pub m_out: i32,
    pub value: f64,
}

/// All admissible couplings of `l_tuple` to `target_l`, with sparse
/// coefficients. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingScheme {
    pub l_tuple: Vec<usize>,
    pub target_l: usize,
    pub paths: Vec<CouplingPath>,
    pub entries: Vec<SchemeEntry>,
}

impl CouplingScheme {
    pub fn n_paths(&self) -> usize {
        self.paths.len()
    }

    /// Direct evaluation: chained product of the input blocks, one output
    /// block of dimension `2*target_l + 1` per path. Test oracle; the
    /// model goes through the contraction plan instead.
    pub fn couple(&self, blocks: &[&[f64]]) -> Vec<Vec<f64>> {
        debug_assert_eq!(blocks.len(), self.l_tuple.len());
        let dim = 2 * self.target_l + 1;
        let mut out = vec![vec![0.0; dim]; self.paths.len()];
        for e in &self.entries {
            let mut prod = e.value;
            for (leg, &m) in e.m.iter().enumerate() {
                prod *= blocks[leg][(m + self.l_tuple[leg] as i32) as usize];
            }
            out[e.path][(e.m_out + self.target_l as i32) as usize] += prod;
        }
        out
    }
}

/// Enumerate all admissible chains coupling `l_tuple` to `target_l` and
/// tabulate their coefficients. A single-leg tuple has exactly one path
/// (identity coefficients) when `l_1 == target_l`, otherwise none.
pub fn generalized_cg(l_tuple: &[usize], target_l: usize) -> CouplingScheme {
    assert!(!l_tuple.is_empty(), "generalized_cg needs at least one leg");
    assert!(
        target_l <= MAX_ORDER && l_tuple.iter().all(|&l| l <= MAX_ORDER),
        "coupling orders above {MAX_ORDER} are unsupported"
    );
    let mut scheme = CouplingScheme {
        l_tuple: l_tuple.to_vec(),
        target_l,
        paths: Vec::new(),
        entries: Vec::new(),
    };
    // Parity gate: products of blocks with parity (-1)^l can only fill a
    // target with matching parity.
    let total: usize = l_tuple.iter().sum::<usize>() + target_l;
    if total % 2 == 1 {
        return scheme;
    }
    if l_tuple.len() == 1 {
        if l_tuple[0] == target_l {
            scheme.paths.push(CouplingPath {
                intermediates: Vec::new(),
            });
            for m in -(target_l as i32)..=(target_l as i32) {
                scheme.entries.push(SchemeEntry {
                    path: 0,
                    m: vec![m],
                    m_out: m,
                    value: 1.0,
                });
            }
        }
        return scheme;
    }

    let mut chain = Vec::new();
    enumerate_chains(l_tuple, target_l, l_tuple[0], 1, &mut chain, &mut |inter| {
        scheme.paths.push(CouplingPath {
            intermediates: inter.to_vec(),
        });
    });

    for (path_idx, path) in scheme.paths.iter().enumerate() {
        let entries = chain_coefficients(l_tuple, &path.intermediates, target_l);
        for ((m, m_out), value) in entries {
            if value.abs() > 1e-14 {
                scheme.entries.push(SchemeEntry {
                    path: path_idx,
                    m,
                    m_out,
                    value,
                });
            }
        }
    }
    scheme
}

fn enumerate_chains(
    l_tuple: &[usize],
    target_l: usize,
    l_prev: usize,
    leg: usize,
    chain: &mut Vec<usize>,
    sink: &mut impl FnMut(&[usize]),
) {
    if leg == l_tuple.len() - 1 {
        // Last link must land exactly on the target.
        let l_leg = l_tuple[leg];
        if target_l >= l_prev.abs_diff(l_leg) && target_l <= l_prev + l_leg {
            sink(chain);
        }
        return;
    }
    let l_leg = l_tuple[leg];
    let lo = l_prev.abs_diff(l_leg);
    let hi = (l_prev + l_leg).min(MAX_ORDER);
    for l_next in lo..=hi {
        chain.push(l_next);
        enumerate_chains(l_tuple, target_l, l_next, leg + 1, chain, sink);
        chain.pop();
    }
}

/// Chain the raw pairwise tables along one path. Keys are
/// `(m-tuple, M)`; the BTreeMap keeps output ordering deterministic.
fn chain_coefficients(
    l_tuple: &[usize],
    intermediates: &[usize],
    target_l: usize,
) -> BTreeMap<(Vec<i32>, i32), f64> {
    let nu = l_tuple.len();
    let mut state: BTreeMap<(Vec<i32>, i32), f64> = BTreeMap::new();
    for m in -(l_tuple[0] as i32)..=(l_tuple[0] as i32) {
        state.insert((vec![m], m), 1.0);
    }
    let mut l_prev = l_tuple[0];
    let mut odd_links = 0u32;
    for leg in 1..nu {
        let l_leg = l_tuple[leg];
        let l_next = if leg == nu - 1 {
            target_l
        } else {
            intermediates[leg - 1]
        };
        let (table, sigma) = cg::cg_real_raw(l_prev, l_leg, l_next);
        odd_links += sigma;
        let mut next: BTreeMap<(Vec<i32>, i32), f64> = BTreeMap::new();
        for ((prefix, m_cur), coeff) in &state {
            for e in table.entries.iter().filter(|e| e.m1 == *m_cur) {
                let mut key = prefix.clone();
                key.push(e.m2);
                *next.entry((key, e.m3)).or_insert(0.0) += coeff * e.value;
            }
        }
        state = next;
        l_prev = l_next;
    }
    debug_assert!(odd_links % 2 == 0);
    // Two odd links contribute i^2 = -1 relative to the stripped tables.
    if odd_links % 4 == 2 {
        for v in state.values_mut() {
            *v = -*v;
        }
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cg::cg_real;
    use crate::rng::Prng;
    use crate::wigner::{apply, wigner_d_real};

    #[test]
    fn single_leg_is_identity_or_empty() {
        let s = generalized_cg(&[2], 2);
        assert_eq!(s.n_paths(), 1);
        assert!(s.paths[0].intermediates.is_empty());
        assert_eq!(s.entries.len(), 5);
        for e in &s.entries {
            assert_eq!(e.m[0], e.m_out);
            assert_eq!(e.value, 1.0);
        }
        assert_eq!(generalized_cg(&[2], 1).n_paths(), 0);
    }

    #[test]
    fn three_vectors_to_vector_has_three_paths() {
        let s = generalized_cg(&[1, 1, 1], 1);
        let inters: Vec<usize> = s.paths.iter().map(|p| p.intermediates[0]).collect();
        assert_eq!(inters, vec![0, 1, 2]);
    }

    #[test]
    fn parity_violating_tuple_has_no_paths() {
        assert_eq!(generalized_cg(&[1, 1], 1).n_paths(), 0);
        assert_eq!(generalized_cg(&[2, 1, 1], 1).n_paths(), 0);
    }

    #[test]
    fn two_vectors_to_scalar_gives_squared_norm() {
        let s = generalized_cg(&[1, 1], 0);
        assert_eq!(s.n_paths(), 1);
        let mut rng = Prng::seed_from_u64(9);
        let mut ratio_ref = None;
        for _ in 0..10 {
            let v = [rng.normal(), rng.normal(), rng.normal()];
            let out = s.couple(&[&v, &v]);
            let norm2: f64 = v.iter().map(|x| x * x).sum();
            let ratio = out[0][0] / norm2;
            let r = *ratio_ref.get_or_insert(ratio);
            assert!((ratio - r).abs() < 1e-12);
        }
    }

    #[test]
    fn two_leg_chains_match_pairwise_tables() {
        for (l1, l2, l3) in [(1usize, 1usize, 2usize), (2, 2, 0), (3, 1, 2), (2, 1, 1)] {
            let scheme = generalized_cg(&[l1, l2], l3);
            assert_eq!(scheme.n_paths(), 1);
            let table = cg_real(l1, l2, l3);
            assert_eq!(scheme.entries.len(), table.entries.len());
            for e in &scheme.entries {
                let t = table
                    .entries
                    .iter()
                    .find(|t| t.m1 == e.m[0] && t.m2 == e.m[1] && t.m3 == e.m_out)
                    .expect("entry present in pairwise table");
                assert!((t.value - e.value).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn coupled_products_are_equivariant() {
        // couple(D u, D w, ...) = D_L couple(u, w, ...) per path, which
        // exercises odd intermediate links (e.g. (1,1,1) -> 1 via L_2 = 1).
        let mut rng = Prng::seed_from_u64(33);
        let cases: Vec<(Vec<usize>, usize)> = vec![
            (vec![1, 1], 2),
            (vec![1, 1, 1], 1),
            (vec![2, 1, 1], 2),
            (vec![2, 2, 2], 0),
            (vec![3, 2, 1], 2),
            (vec![1, 1, 1, 1], 0),
        ];
        for (tuple, target) in cases {
            let scheme = generalized_cg(&tuple, target);
            assert!(scheme.n_paths() > 0, "{tuple:?} -> {target}");
            for _ in 0..5 {
                let q = rng.rotation();
                let blocks: Vec<Vec<f64>> = tuple
                    .iter()
                    .map(|&l| (0..2 * l + 1).map(|_| rng.normal()).collect())
                    .collect();
                let rotated: Vec<Vec<f64>> = tuple
                    .iter()
                    .zip(&blocks)
                    .map(|(&l, b)| apply(&wigner_d_real(l, &q).unwrap(), b))
                    .collect();
                let d_out = wigner_d_real(target, &q).unwrap();
                let refs: Vec<&[f64]> = blocks.iter().map(|b| b.as_slice()).collect();
                let rot_refs: Vec<&[f64]> = rotated.iter().map(|b| b.as_slice()).collect();
                let lhs = scheme.couple(&rot_refs);
                let rhs = scheme.couple(&refs);
                for (p, lhs_p) in lhs.iter().enumerate() {
                    let expect = apply(&d_out, &rhs[p]);
                    for (a, l_val) in lhs_p.iter().enumerate() {
                        assert!(
                            (l_val - expect[a]).abs() < 1e-10,
                            "{tuple:?}->{target} path {p} comp {a}: {l_val} vs {}",
                            expect[a]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic_construction() {
        let a = generalized_cg(&[2, 1, 1], 2);
        let b = generalized_cg(&[2, 1, 1], 2);
        assert_eq!(a, b);
    }
}
