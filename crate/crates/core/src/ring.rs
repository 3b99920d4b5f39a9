//! Positively multigraded polynomial rings with an irrelevant ideal.
//!
//! A [`RingSpec`] is the serializable description: field, variables with
//! their multidegrees, and the variable sets whose coordinate ideals
//! intersect to the irrelevant ideal `B`. A [`PolyRing`] is the validated
//! runtime object shared (behind an `Arc`) by every polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::MonomialOrder;
use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    pub degree: MultiDegree,
}

/// Serializable ring description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub variables: Vec<VariableSpec>,
    /// Variable-name lists; `B` is the intersection of their coordinate ideals.
    pub irrelevant: Vec<Vec<String>>,
    /// Optional positivity witness `λ`; searched for when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positivity: Option<Vec<i64>>,
}

impl RingSpec {
    pub fn new<D: Into<MultiDegree> + Clone>(
        field: FieldSpec,
        variables: &[(&str, D)],
        irrelevant: &[&[&str]],
    ) -> Self {
        RingSpec {
            field,
            variables: variables
                .iter()
                .map(|(n, d)| VariableSpec {
                    name: n.to_string(),
                    degree: d.clone().into(),
                })
                .collect(),
            irrelevant: irrelevant
                .iter()
                .map(|f| f.iter().map(|s| s.to_string()).collect())
                .collect(),
            positivity: None,
        }
    }
}

/// A validated multigraded polynomial ring over the field `K`.
pub struct PolyRing<K: Field> {
    field: K,
    spec: RingSpec,
    names: Vec<String>,
    index: HashMap<String, usize>,
    degrees: Vec<MultiDegree>,
    rank: usize,
    factors: Vec<Vec<usize>>,
    lambda: Vec<i64>,
    weights: Vec<i64>,
    order: MonomialOrder,
}

impl<K: Field> fmt::Debug for PolyRing<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolyRing")
            .field("field", &self.field.spec())
            .field("variables", &self.names)
            .field("factors", &self.factors)
            .field("lambda", &self.lambda)
            .finish()
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<K: Field> PolyRing<K> {
    pub fn new(spec: RingSpec, field: K) -> Result<Arc<Self>> {
        if field.spec() != spec.field {
            return Err(Error::InvalidRing(format!(
                "ring declares field {} but {} was supplied",
                spec.field,
                field.spec()
            )));
        }
        if spec.variables.is_empty() {
            return Err(Error::InvalidRing("ring has no variables".into()));
        }
        let rank = spec.variables[0].degree.rank();
        let mut index = HashMap::new();
        for (i, v) in spec.variables.iter().enumerate() {
            if !valid_name(&v.name) {
                return Err(Error::InvalidRing(format!("bad variable name `{}`", v.name)));
            }
            if index.insert(v.name.clone(), i).is_some() {
                return Err(Error::InvalidRing(format!("duplicate variable `{}`", v.name)));
            }
            if v.degree.rank() != rank {
                return Err(Error::InvalidRing(format!(
                    "variable `{}` has degree of length {}, expected {rank}",
                    v.name,
                    v.degree.rank()
                )));
            }
        }
        let mut factors = Vec::new();
        let mut covered = vec![false; spec.variables.len()];
        for f in &spec.irrelevant {
            if f.is_empty() {
                return Err(Error::InvalidRing("empty irrelevant factor".into()));
            }
            let mut idx = Vec::new();
            for name in f {
                let i = *index
                    .get(name)
                    .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                covered[i] = true;
                idx.push(i);
            }
            factors.push(idx);
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidRing(format!(
                "variable `{}` lies in no irrelevant factor",
                spec.variables[i].name
            )));
        }
        let degrees: Vec<MultiDegree> = spec.variables.iter().map(|v| v.degree.clone()).collect();
        let lambda = match &spec.positivity {
            Some(l) => {
                if l.len() != rank {
                    return Err(Error::InvalidRing("positivity witness has wrong length".into()));
                }
                let bad: Vec<String> = degrees
                    .iter()
                    .zip(&spec.variables)
                    .filter(|(d, _)| d.dot(l) < 1)
                    .map(|(_, v)| v.name.clone())
                    .collect();
                if !bad.is_empty() {
                    return Err(Error::NotPositive {
                        candidate: l.clone(),
                        violating: bad,
                    });
                }
                l.clone()
            }
            None => find_positivity_witness(&degrees).map_err(|(candidate, bad)| Error::NotPositive {
                candidate,
                violating: bad.into_iter().map(|i| spec.variables[i].name.clone()).collect(),
            })?,
        };
        let weights: Vec<i64> = degrees.iter().map(|d| d.dot(&lambda)).collect();
        let order = MonomialOrder::grevlex(weights.clone());
        Ok(Arc::new(PolyRing {
            field,
            names: spec.variables.iter().map(|v| v.name.clone()).collect(),
            spec,
            index,
            degrees,
            rank,
            factors,
            lambda,
            weights,
            order,
        }))
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn var_degrees(&self) -> &[MultiDegree] {
        &self.degrees
    }

    /// The Picard rank `r`: length of every multidegree.
    pub fn grading_rank(&self) -> usize {
        self.rank
    }

    /// Irrelevant factors as variable-index lists.
    pub fn factors(&self) -> &[Vec<usize>] {
        &self.factors
    }

    /// The positivity witness `λ`.
    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    /// Per-variable weights `λ·deg(v)`, all positive.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// The canonical term order: weight by `λ`, ties by grevlex.
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn monomial_degree(&self, m: &Monomial) -> MultiDegree {
        m.degree(&self.degrees, self.rank)
    }

    pub fn zero_degree(&self) -> MultiDegree {
        MultiDegree::zero(self.rank)
    }

    /// Monomial generators of `B`: one variable from each factor, combined by lcm.
    pub fn irrelevant_generators(&self) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = vec![Monomial::one(n)];
        for f in &self.factors {
            let mut next = Vec::new();
            for m in &out {
                for &v in f {
                    let g = m.lcm(&Monomial::var(n, v));
                    if !next.contains(&g) {
                        next.push(g);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// All monomials of multidegree `d`, in decreasing lexicographic order of exponents.
    pub fn graded_piece(&self, d: &MultiDegree) -> Vec<Monomial> {
        enumerate_piece(&self.degrees, &self.weights, &self.lambda, d)
    }

    /// Number of monomials of multidegree `d`.
    pub fn graded_piece_dim(&self, d: &MultiDegree) -> usize {
        piece_dim(&self.degrees, &self.weights, &self.lambda, d).try_into().unwrap_or(usize::MAX)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Searches integer tuples `λ` with `λ·deg(v) ≥ 1` for every variable.
///
/// Candidates are visited by increasing max-norm (up to 4), lexicographically
/// within a norm. On failure returns the candidate with the fewest violations
/// and the violating variable indices.
pub fn find_positivity_witness(degrees: &[MultiDegree]) -> std::result::Result<Vec<i64>, (Vec<i64>, Vec<usize>)> {
    const BOUND: i64 = 4;
    let rank = degrees.first().map(|d| d.rank()).unwrap_or(0);
    let violations = |l: &[i64]| -> Vec<usize> {
        (0..degrees.len()).filter(|&i| degrees[i].dot(l) < 1).collect()
    };
    let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
    if rank == 0 {
        let bad = violations(&[]);
        return if bad.is_empty() { Ok(vec![]) } else { Err((vec![], bad)) };
    }
    for norm in 1..=BOUND {
        let base = (2 * norm + 1) as u64;
        // lexicographic over [-norm, norm]^rank, first coordinate most significant
        for code in 0..base.pow(rank as u32) {
            let mut c = code;
            let mut cand = vec![0i64; rank];
            for k in (0..rank).rev() {
                cand[k] = (c % base) as i64 - norm;
                c /= base;
            }
            if cand.iter().all(|c| c.abs() < norm) {
                continue;
            }
            let bad = violations(&cand);
            if bad.is_empty() {
                return Ok(cand);
            }
            if best.as_ref().map_or(true, |(_, b)| bad.len() < b.len()) {
                best = Some((cand, bad));
            }
        }
    }
    Err(best.unwrap_or_default())
}

/// Variables sharing a degree, with that degree's weight.
fn degree_groups(degrees: &[MultiDegree], weights: &[i64]) -> Vec<(MultiDegree, i64, Vec<usize>)> {
    let mut groups: Vec<(MultiDegree, i64, Vec<usize>)> = Vec::new();
    for (v, d) in degrees.iter().enumerate() {
        match groups.iter_mut().find(|(g, _, _)| g == d) {
            Some((_, _, vars)) => vars.push(v),
            None => groups.push((d.clone(), weights[v], vec![v])),
        }
    }
    groups
}

/// How many variables of each group a monomial of degree `d` uses.
fn group_counts(groups: &[(MultiDegree, i64, Vec<usize>)], lambda: &[i64], d: &MultiDegree) -> Vec<Vec<i64>> {
    fn rec(
        i: usize,
        budget: i64,
        groups: &[(MultiDegree, i64, Vec<usize>)],
        remaining: &mut MultiDegree,
        counts: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == groups.len() {
            if budget == 0 && remaining.is_zero() {
                out.push(counts.clone());
            }
            return;
        }
        let (deg, w, _) = &groups[i];
        for c in (0..=budget / w).rev() {
            for (r, x) in remaining.0.iter_mut().zip(&deg.0) {
                *r -= c * x;
            }
            counts.push(c);
            rec(i + 1, budget - c * w, groups, remaining, counts, out);
            counts.pop();
            for (r, x) in remaining.0.iter_mut().zip(&deg.0) {
                *r += c * x;
            }
        }
    }
    let total = d.dot(lambda);
    let mut out = Vec::new();
    if total >= 0 {
        rec(0, total, groups, &mut d.clone(), &mut Vec::new(), &mut out);
    }
    out
}

fn multichoose(n: usize, k: i64) -> u128 {
    // monomials of degree k in n variables
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - 1 + i) / i;
    }
    acc
}

fn piece_dim(degrees: &[MultiDegree], weights: &[i64], lambda: &[i64], d: &MultiDegree) -> u128 {
    let groups = degree_groups(degrees, weights);
    group_counts(&groups, lambda, d)
        .iter()
        .map(|counts| counts.iter().zip(&groups).map(|(&c, (_, _, vars))| multichoose(vars.len(), c)).product::<u128>())
        .sum()
}

/// Exponent vectors of degree `k` in `n` variables, lexicographically decreasing.
fn compositions(n: usize, k: i64) -> Vec<Vec<u16>> {
    if n == 1 {
        return vec![vec![k as u16]];
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in compositions(n - 1, k - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

fn enumerate_piece(degrees: &[MultiDegree], weights: &[i64], lambda: &[i64], d: &MultiDegree) -> Vec<Monomial> {
    let groups = degree_groups(degrees, weights);
    let n = degrees.len();
    let mut out: Vec<Vec<u16>> = Vec::new();
    for counts in group_counts(&groups, lambda, d) {
        let mut partial: Vec<Vec<u16>> = vec![vec![0; n]];
        for (&c, (_, _, vars)) in counts.iter().zip(&groups) {
            let parts = compositions(vars.len(), c);
            let mut next = Vec::with_capacity(partial.len() * parts.len());
            for base in &partial {
                for part in &parts {
                    let mut e = base.clone();
                    for (&v, &x) in vars.iter().zip(part) {
                        e[v] = x;
                    }
                    next.push(e);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out.into_iter().map(|e| Monomial::from_exponents(&e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn p1p3() -> Arc<PolyRing<PrimeField>> {
        let spec = RingSpec::new(
            FieldSpec::default(),
            &[
                ("x0", [1, 0]),
                ("x1", [1, 0]),
                ("y0", [0, 1]),
                ("y1", [0, 1]),
                ("y2", [0, 1]),
                ("y3", [0, 1]),
            ],
            &[&["x0", "x1"], &["y0", "y1", "y2", "y3"]],
        );
        PolyRing::new(spec, PrimeField::default()).unwrap()
    }

    fn hirzebruch_degrees() -> Vec<MultiDegree> {
        let mut d: Vec<MultiDegree> = vec![[1, 0, 0].into(), [-1, 1, 0].into(), [1, 0, 0].into(), [0, 1, 0].into()];
        d.extend((0..5).map(|_| MultiDegree::from([0, 0, 1])));
        d
    }

    #[test]
    fn standard_grading_witness() {
        let r = p1p3();
        assert_eq!(r.lambda(), &[1, 1]);
    }

    #[test]
    fn hirzebruch_witness_is_positive() {
        let degs = hirzebruch_degrees();
        // direct check of the stated witness
        assert!(degs.iter().all(|d| d.dot(&[1, 2, 1]) > 0));
        let found = find_positivity_witness(&degs).unwrap();
        assert!(degs.iter().all(|d| d.dot(&found) >= 1));
        assert_eq!(found, vec![1, 2, 1]);
    }

    #[test]
    fn zero_degree_variable_fails() {
        let err = find_positivity_witness(&[MultiDegree::from([0, 0])]).unwrap_err();
        assert_eq!(err.1, vec![0]);
    }

    #[test]
    fn graded_pieces() {
        let r = p1p3();
        let piece = r.graded_piece(&[1, 0].into());
        let names: Vec<_> = piece.iter().map(|m| r.format_monomial(m)).collect();
        assert_eq!(names, vec!["x0", "x1"]);
        assert!(r.graded_piece(&[-1, 0].into()).is_empty());
        assert_eq!(r.graded_piece_dim(&[3, 2].into()), 4 * 10);
    }

    #[test]
    fn hirzebruch_sections() {
        let spec = RingSpec::new(
            FieldSpec::default(),
            &[("x0", [1, 0]), ("x1", [-1, 1]), ("x2", [1, 0]), ("x3", [0, 1])],
            &[&["x0", "x2"], &["x1", "x3"]],
        );
        let r = PolyRing::new(spec, PrimeField::default()).unwrap();
        let mut names: Vec<_> = r
            .graded_piece(&[1, 1].into())
            .iter()
            .map(|m| r.format_monomial(m))
            .collect();
        names.sort();
        let mut expected = vec!["x0*x3", "x2*x3", "x0^2*x1", "x0*x1*x2", "x1*x2^2"];
        expected.sort();
        assert_eq!(names, expected);
    }

    #[test]
    fn rejects_uncovered_variable() {
        let spec = RingSpec::new(FieldSpec::default(), &[("a", [1]), ("b", [1])], &[&["a"]]);
        assert!(matches!(PolyRing::new(spec, PrimeField::default()), Err(Error::InvalidRing(_))));
    }

    #[test]
    fn irrelevant_generators_are_products() {
        let r = p1p3();
        let gens = r.irrelevant_generators();
        assert_eq!(gens.len(), 8);
        assert!(gens.iter().all(|g| g.total_degree() == 2));
    }
}
