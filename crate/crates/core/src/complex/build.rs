//! The generalized Eagon-Northcott family `C^i` of a map `φ: F → G`.
//!
//! With `F = ⊕ S(a_s)` of rank `f` and `G = ⊕ S(b_t)` of rank `g`, `C^i` is
//! spliced from two strands:
//!
//! * the tail `Λ^p F ⊗ Sym_{i-p} G` in position `p ≤ i`, twist `Σ_S a_s + Σ β_t b_t`;
//! * the head `Λ^{g+i+q} F ⊗ (Sym_q G)^* ⊗ (Λ^g G)^*` in position `i+1+q`,
//!   twist `Σ_S a_s - Σ α_t b_t - Σ_t b_t`, present when `0 ≤ i ≤ f-g`.
//!
//! The splice sends `e_S` to the signed `g × g` minors of `φ` on the columns
//! of `S`. `C^{-1}` is the dual of `C^{f-g+1}`.

use std::collections::HashMap;

use super::chain::ChainComplex;
use super::matrix::{subsets, subsets_colex, GradedMatrix};
use super::module::{BasisLabel, TwistedFreeModule};
use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;

/// Exponent vectors of length `g` summing to `q`, in decreasing lexicographic order.
pub(crate) fn sym_exponents(g: usize, q: usize) -> Vec<Vec<u32>> {
    fn rec(g: usize, q: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == g {
            cur.push(q);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=q).rev() {
            cur.push(e);
            rec(g, q - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if g == 0 {
        if q == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(g, q as u32, &mut Vec::new(), &mut out);
    out
}

type Key = (Vec<u32>, Vec<usize>);

struct Strand {
    module: TwistedFreeModule,
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
}

impl Strand {
    fn new(keys: Vec<Key>, twists: Vec<MultiDegree>, head: bool) -> Self {
        let labels = keys
            .iter()
            .map(|(sym, subset)| {
                let (sym, subset) = (sym.clone(), subset.clone());
                if head {
                    BasisLabel::Head { subset, sym }
                } else {
                    BasisLabel::Tail { subset, sym }
                }
            })
            .collect();
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Strand {
            module: TwistedFreeModule::with_labels(twists, labels),
            keys,
            index,
        }
    }
}

struct Builder<'a, K: Field> {
    phi: &'a GradedMatrix<K>,
    f: usize,
    g: usize,
}

impl<'a, K: Field> Builder<'a, K> {
    fn sum_a(&self, subset: &[usize]) -> MultiDegree {
        let mut d = self.phi.ring().zero_degree();
        for &s in subset {
            d += &self.phi.source().twists[s];
        }
        d
    }

    fn sym_b(&self, exps: &[u32]) -> MultiDegree {
        let mut d = self.phi.ring().zero_degree();
        for (t, &e) in exps.iter().enumerate() {
            d += &(&self.phi.target().twists[t] * e as i64);
        }
        d
    }

    fn tail(&self, p: usize, sym_degree: usize) -> Strand {
        let mut keys = Vec::new();
        let mut twists = Vec::new();
        for beta in sym_exponents(self.g, sym_degree) {
            for s in subsets_colex(self.f, p) {
                twists.push(&self.sum_a(&s) + &self.sym_b(&beta));
                keys.push((beta.clone(), s));
            }
        }
        Strand::new(keys, twists, false)
    }

    fn head(&self, p: usize, q: usize) -> Strand {
        let all_b = self.sym_b(&vec![1; self.g]);
        let mut keys = Vec::new();
        let mut twists = Vec::new();
        for alpha in sym_exponents(self.g, q) {
            for s in subsets_colex(self.f, p) {
                twists.push(&(&self.sum_a(&s) - &self.sym_b(&alpha)) - &all_b);
                keys.push((alpha.clone(), s));
            }
        }
        Strand::new(keys, twists, true)
    }

    fn empty_entries(&self, rows: usize, cols: usize) -> Vec<Vec<Polynomial<K>>> {
        vec![vec![Polynomial::zero(self.phi.ring()); cols]; rows]
    }

    /// Koszul-type map `e_S ⊗ ε^β ↦ Σ ± a_ts e_{S∖s} ⊗ ε^{β+u_t}`.
    fn tail_map(&self, src: &Strand, tgt: &Strand) -> Result<GradedMatrix<K>> {
        let mut m = self.empty_entries(tgt.keys.len(), src.keys.len());
        for (col, (beta, subset)) in src.keys.iter().enumerate() {
            for (pos, &s) in subset.iter().enumerate() {
                let mut rest = subset.clone();
                rest.remove(pos);
                for t in 0..self.g {
                    let a = self.phi.entry(t, s);
                    if a.is_zero() {
                        continue;
                    }
                    let mut b = beta.clone();
                    b[t] += 1;
                    let row = tgt.index[&(b, rest.clone())];
                    m[row][col] = if pos % 2 == 0 { &m[row][col] + a } else { &m[row][col] - a };
                }
            }
        }
        GradedMatrix::new(self.phi.ring(), tgt.module.clone(), src.module.clone(), m)
    }

    /// Contraction `e_S ⊗ (ε^α)^* ↦ Σ ± a_ts e_{S∖s} ⊗ (ε^{α-u_t})^*`.
    fn head_map(&self, src: &Strand, tgt: &Strand) -> Result<GradedMatrix<K>> {
        let mut m = self.empty_entries(tgt.keys.len(), src.keys.len());
        for (col, (alpha, subset)) in src.keys.iter().enumerate() {
            for (pos, &s) in subset.iter().enumerate() {
                let mut rest = subset.clone();
                rest.remove(pos);
                for t in 0..self.g {
                    let a = self.phi.entry(t, s);
                    if alpha[t] == 0 || a.is_zero() {
                        continue;
                    }
                    let mut b = alpha.clone();
                    b[t] -= 1;
                    let row = tgt.index[&(b, rest.clone())];
                    m[row][col] = if pos % 2 == 0 { &m[row][col] + a } else { &m[row][col] - a };
                }
            }
        }
        GradedMatrix::new(self.phi.ring(), tgt.module.clone(), src.module.clone(), m)
    }

    /// `e_S ↦ Σ_{T ⊆ S, |T| = g} sign(T, S) det(φ_T) e_{S∖T}`.
    fn splice_map(&self, src: &Strand, tgt: &Strand) -> Result<GradedMatrix<K>> {
        let ring = self.phi.ring();
        let mut dets: HashMap<Vec<usize>, Polynomial<K>> = HashMap::new();
        let rows: Vec<usize> = (0..self.g).collect();
        let mut m = self.empty_entries(tgt.keys.len(), src.keys.len());
        let zero_sym = vec![0u32; self.g];
        for (col, (_, subset)) in src.keys.iter().enumerate() {
            for positions in subsets(subset.len(), self.g) {
                let cols: Vec<usize> = positions.iter().map(|&p| subset[p]).collect();
                let det = dets
                    .entry(cols.clone())
                    .or_insert_with(|| self.phi.minor(&rows, &cols))
                    .clone();
                if det.is_zero() {
                    continue;
                }
                // shuffle sign of moving T to the front of S
                let inversions: usize = positions.iter().enumerate().map(|(k, &p)| p - k).sum();
                let rest: Vec<usize> = subset.iter().copied().filter(|s| !cols.contains(s)).collect();
                let row = tgt.index[&(zero_sym.clone(), rest)];
                m[row][col] = if inversions % 2 == 0 {
                    &m[row][col] + &det
                } else {
                    &m[row][col] - &det
                };
            }
        }
        GradedMatrix::new(ring, tgt.module.clone(), src.module.clone(), m)
    }
}

/// Builds `C^i` for `i ≥ -1`.
pub fn build_complex<K: Field>(phi: &GradedMatrix<K>, i: i64) -> Result<ChainComplex<K>> {
    let (f, g) = (phi.ncols(), phi.nrows());
    if g == 0 || f < g {
        return Err(Error::InvalidInput(format!(
            "need f ≥ g ≥ 1, got a {g}×{f} matrix (f = {f} columns, g = {g} rows)"
        )));
    }
    if i < -1 {
        return Err(Error::InvalidInput(format!("complex index {i} is below -1")));
    }
    if i == -1 {
        let mut c = build_complex(phi, (f - g + 1) as i64)?.dualize();
        c.set_index(Some(-1));
        return Ok(c);
    }
    let i = i as usize;
    let b = Builder { phi, f, g };

    // tail positions 0..=min(i, f)
    let top = i.min(f);
    let tail: Vec<Strand> = (0..=top).map(|p| b.tail(p, i - p)).collect();
    let mut strands: Vec<(Strand, bool)> = tail.into_iter().map(|s| (s, false)).collect();
    if i <= f - g {
        for q in 0..=(f - g - i) {
            strands.push((b.head(g + i + q, q), true));
        }
    }

    let mut differentials = Vec::new();
    for j in 1..strands.len() {
        let (src, src_head) = &strands[j];
        let (tgt, tgt_head) = &strands[j - 1];
        let d = match (tgt_head, src_head) {
            (false, false) => b.tail_map(src, tgt)?,
            (false, true) => b.splice_map(src, tgt)?,
            (true, true) => b.head_map(src, tgt)?,
            (true, false) => unreachable!("the head strand sits above the tail"),
        };
        differentials.push(d);
    }
    let terms = strands.into_iter().map(|(s, _)| s.module).collect();
    ChainComplex::new(phi.ring(), Some(i as i64), terms, differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::presets::preset;

    fn phi(name: &str) -> GradedMatrix<PrimeField> {
        preset(name).unwrap().build(PrimeField::default()).unwrap().phi
    }

    fn table(c: &ChainComplex<PrimeField>) -> Vec<Vec<(MultiDegree, usize)>> {
        let t = c.betti_table();
        (0..t.positions.len()).map(|j| t.position(j)).collect()
    }

    fn d(v: &[i64]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    #[test]
    fn generic_eagon_northcott() {
        let phi = phi("generic-2x4");
        let c0 = build_complex(&phi, 0).unwrap();
        assert_eq!(c0.ranks(), vec![1, 6, 8, 3]);
        assert_eq!(
            table(&c0),
            vec![
                vec![(d(&[0, 0]), 1)],
                vec![(d(&[-1, -1]), 6)],
                vec![(d(&[-2, -1]), 4), (d(&[-1, -2]), 4)],
                vec![(d(&[-3, -1]), 1), (d(&[-2, -2]), 1), (d(&[-1, -3]), 1)],
            ]
        );
        // column e_{123} ⊗ ε_1^* of the middle map
        let col: Vec<String> = (0..6).map(|r| c0.differential(2).entry(r, 0).to_string()).collect();
        assert_eq!(col, vec!["x13", "-x12", "x11", "0", "0", "0"]);
        let last: Vec<String> = (0..8).map(|r| c0.differential(3).entry(r, 0).to_string()).collect();
        assert_eq!(last, vec!["-x14", "x13", "-x12", "x11", "0", "0", "0", "0"]);
        assert!(c0.compose_check());
    }

    #[test]
    fn generic_buchsbaum_rim() {
        let phi = phi("generic-2x4");
        let c1 = build_complex(&phi, 1).unwrap();
        assert_eq!(c1.ranks(), vec![2, 4, 4, 2]);
        assert_eq!(table(&c1)[2], vec![(d(&[-2, -2]), 4)]);
        // the second differential consists of signed 2x2 minors
        let m = |a: usize, b: usize| phi.minor(&[0, 1], &[a, b]);
        let first: Vec<_> = (0..4).map(|r| c1.differential(2).entry(r, 0).clone()).collect();
        assert_eq!(first, vec![m(1, 2), -m(0, 2), m(0, 1), Polynomial::zero(phi.ring())]);
        assert!(c1.compose_check());
    }

    #[test]
    fn whole_family_is_a_complex() {
        let phi = phi("generic-2x4");
        for i in -1..=5 {
            let c = build_complex(&phi, i).unwrap();
            assert!(c.compose_check(), "C^{i}");
            if i <= 3 {
                assert_eq!(c.length(), 3, "C^{i}");
            } else {
                assert!(c.length() >= 3 && c.length() <= 4);
            }
        }
    }

    #[test]
    fn duality_mirrors_ranks() {
        let phi = phi("generic-2x4");
        for i in 0..=2 {
            let mut a = build_complex(&phi, i).unwrap().ranks();
            let b = build_complex(&phi, 2 - i).unwrap().ranks();
            a.reverse();
            assert_eq!(a, b);
        }
        let c0 = build_complex(&phi, 0).unwrap();
        let dd = c0.dualize().dualize();
        assert_eq!(dd.betti_table(), c0.betti_table());
    }

    #[test]
    fn twisted_cubic_table() {
        let c0 = build_complex(&phi("twisted-cubic"), 0).unwrap();
        assert_eq!(
            table(&c0),
            vec![
                vec![(d(&[0, 0]), 1)],
                vec![(d(&[-3, -1]), 6)],
                vec![(d(&[-6, -1]), 4), (d(&[-3, -2]), 4)],
                vec![(d(&[-9, -1]), 1), (d(&[-6, -2]), 1), (d(&[-3, -3]), 1)],
            ]
        );
    }

    #[test]
    fn hirzebruch_tables() {
        let phi = phi("hirzebruch-graph");
        let c0 = build_complex(&phi, 0).unwrap();
        assert_eq!(c0.ranks(), vec![1, 10, 20, 15, 4]);
        assert_eq!(table(&c0)[3], vec![(d(&[-3, -3, -1]), 5), (d(&[-2, -2, -2]), 5), (d(&[-1, -1, -3]), 5)]);
        let c1 = build_complex(&phi, 1).unwrap();
        assert_eq!(table(&c1)[2], vec![(d(&[-2, -2, -2]), 10)]);
        assert!(c1.compose_check());
    }

    #[test]
    fn square_case_is_the_determinant() {
        let p = preset("generic-2x4").unwrap();
        let mut sq = p.clone();
        sq.map.source_twists.truncate(2);
        for row in sq.map.entries.iter_mut() {
            row.truncate(2);
        }
        let phi = sq.build(PrimeField::default()).unwrap().phi;
        let c = build_complex(&phi, 0).unwrap();
        assert_eq!(c.ranks(), vec![1, 1]);
        assert_eq!(c.differential(1).entry(0, 0), &phi.minor(&[0, 1], &[0, 1]));
    }

    #[test]
    fn rejects_bad_input() {
        let phi = phi("generic-2x4");
        assert!(build_complex(&phi, -2).is_err());
        assert!(build_complex(&phi.transpose(), 0).is_err());
    }

    #[test]
    fn symmetric_exponent_order() {
        assert_eq!(sym_exponents(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(sym_exponents(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(sym_exponents(3, 1), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(sym_exponents(2, 3).len(), 4);
    }
}
