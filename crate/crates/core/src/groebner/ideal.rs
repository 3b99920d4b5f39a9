use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::buchberger::{groebner_basis, is_groebner_basis, normal_form};
use super::{Budget, MonomialOrder};
use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Terms};
use crate::ring::PolyRing;

/// Depth (grade) of an ideal; the unit ideal has infinite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DepthValue {
    Finite(usize),
    Infinity,
}

impl DepthValue {
    /// Whether the depth is at least `bound` (always true for bounds ≤ 0).
    pub fn at_least(&self, bound: i64) -> bool {
        match self {
            DepthValue::Infinity => true,
            DepthValue::Finite(d) => *d as i64 >= bound,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, DepthValue::Infinity)
    }
}

impl fmt::Display for DepthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthValue::Finite(d) => write!(f, "{d}"),
            DepthValue::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for DepthValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DepthValue::Finite(d) => s.serialize_u64(*d as u64),
            DepthValue::Infinity => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for DepthValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(DepthValue::Finite(n as usize)),
            Raw::S(s) if s == "infinity" => Ok(DepthValue::Infinity),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad depth `{s}`"))),
        }
    }
}

/// A reduced Gröbner basis together with the order it was computed for.
pub struct GroebnerBasis<K: Field> {
    ring: Arc<PolyRing<K>>,
    order: MonomialOrder,
    elements: Vec<Terms<K::Elem>>,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.first().is_some_and(|g| g[0].0.is_one())
    }

    pub fn elements(&self) -> Vec<Polynomial<K>> {
        self.elements
            .iter()
            .map(|g| Polynomial::from_sorted_terms(&self.ring, g.clone(), &self.order))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g[0].0.clone()).collect()
    }

    fn sorted(&self, p: &Polynomial<K>) -> Terms<K::Elem> {
        let mut t = p.terms().to_vec();
        if &self.order != self.ring.order() {
            t.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        }
        t
    }

    pub fn normal_form(&self, p: &Polynomial<K>) -> Polynomial<K> {
        let r = normal_form(self.ring.field(), &self.order, &self.sorted(p), &self.elements);
        Polynomial::from_sorted_terms(&self.ring, r, &self.order)
    }

    pub fn reduces_to_zero(&self, p: &Polynomial<K>) -> bool {
        normal_form(self.ring.field(), &self.order, &self.sorted(p), &self.elements).is_empty()
    }

    /// Buchberger's criterion on the stored basis.
    pub fn verify(&self) -> bool {
        is_groebner_basis(self.ring.field(), &self.order, &self.elements)
    }

    /// Monomials of degree `d` outside the initial ideal.
    pub fn standard_monomials(&self, d: &MultiDegree) -> Vec<Monomial> {
        let lms = self.leading_monomials();
        self.ring
            .graded_piece(d)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .collect()
    }
}

/// An ideal given by generators, with a lazily computed Gröbner basis in the ring order.
pub struct Ideal<K: Field> {
    ring: Arc<PolyRing<K>>,
    gens: Vec<Polynomial<K>>,
    gb: OnceLock<Arc<GroebnerBasis<K>>>,
}

impl<K: Field> Clone for Ideal<K> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb: self.gb.clone(),
        }
    }
}

impl<K: Field> fmt::Debug for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

fn extend_terms<E: Clone>(t: &[(Monomial, E)], extra: usize) -> Terms<E> {
    t.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect()
}

impl<K: Field> Ideal<K> {
    /// The ideal generated by `gens`; zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing<K>>, gens: impl IntoIterator<Item = Polynomial<K>>) -> Self {
        let mut gens: Vec<Polynomial<K>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let mut seen = std::collections::HashSet::new();
        gens.retain(|g| seen.insert(g.clone()));
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn unit(ring: &Arc<PolyRing<K>>) -> Self {
        Self::new(ring, [Polynomial::one(ring)])
    }

    pub fn zero(ring: &Arc<PolyRing<K>>) -> Self {
        Self::new(ring, [])
    }

    /// The coordinate ideal generated by the listed variables.
    pub fn variables(ring: &Arc<PolyRing<K>>, vars: &[usize]) -> Self {
        Self::new(ring, vars.iter().map(|&v| Polynomial::var(ring, v)))
    }

    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<K>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    fn raw_gens(&self) -> Vec<Terms<K::Elem>> {
        self.gens.iter().map(|g| g.terms().to_vec()).collect()
    }

    fn weights_plus(&self, extra: usize) -> Vec<i64> {
        let mut w = self.ring.weights().to_vec();
        w.extend(std::iter::repeat(1).take(extra));
        w
    }

    /// Reduced Gröbner basis in the ring's canonical order (cached).
    pub fn groebner(&self, budget: &Budget) -> Result<Arc<GroebnerBasis<K>>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(self.groebner_in(self.ring.order().clone(), budget)?);
        Ok(self.gb.get_or_init(|| gb).clone())
    }

    /// Reduced Gröbner basis in an arbitrary order on the ring's variables.
    pub fn groebner_in(&self, order: MonomialOrder, budget: &Budget) -> Result<GroebnerBasis<K>> {
        let elements = groebner_basis(self.ring.field(), &order, &self.raw_gens(), budget)?;
        Ok(GroebnerBasis {
            ring: self.ring.clone(),
            order,
            elements,
        })
    }

    pub fn contains(&self, p: &Polynomial<K>, budget: &Budget) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(self.groebner(budget)?.reduces_to_zero(p))
    }

    /// Generator-wise containment `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal<K>, budget: &Budget) -> Result<bool> {
        let gb = self.groebner(budget)?;
        Ok(other.gens.iter().all(|g| gb.reduces_to_zero(g)))
    }

    /// Equality by mutual containment.
    pub fn equals(&self, other: &Ideal<K>, budget: &Budget) -> Result<bool> {
        Ok(self.contains_ideal(other, budget)? && other.contains_ideal(self, budget)?)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        Ok(self.groebner(budget)?.is_unit())
    }

    pub fn sum(&self, other: &Ideal<K>) -> Ideal<K> {
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    /// Whether every generator is homogeneous for the weight grading.
    fn weight_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        self.gens.iter().all(|g| {
            let first = g.terms()[0].0.weight(w);
            g.terms().iter().all(|(m, _)| m.weight(w) == first)
        })
    }

    /// Eliminates one auxiliary variable appended after the ring variables.
    fn eliminate_aux(&self, gens: Vec<Terms<K::Elem>>, budget: &Budget) -> Result<Ideal<K>> {
        let n = self.ring.nvars();
        let order = MonomialOrder::elimination(vec![n], self.weights_plus(1));
        let gb = groebner_basis(self.ring.field(), &order, &gens, budget)?;
        let kept = gb
            .into_iter()
            .filter(|g| g.iter().all(|(m, _)| m.exp(n) == 0))
            .map(|g| Polynomial::from_terms(&self.ring, g.into_iter().map(|(m, c)| (m.truncate(n), c))));
        Ok(Ideal::new(&self.ring, kept))
    }

    /// `I ∩ J` by eliminating `t` from `tI + (1 - t)J`.
    pub fn intersect(&self, other: &Ideal<K>, budget: &Budget) -> Result<Ideal<K>> {
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(other.clone());
        }
        if other.gens.iter().any(|g| g.is_unit()) {
            return Ok(self.clone());
        }
        let k = self.ring.field();
        let n = self.ring.nvars();
        let t = Monomial::var(n + 1, n);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.terms().iter().map(|(m, c)| (m.extend(1).mul(&t), c.clone())).collect());
        }
        for g in &other.gens {
            let mut terms = extend_terms(g.terms(), 1);
            terms.extend(g.terms().iter().map(|(m, c)| (m.extend(1).mul(&t), k.neg(c))));
            gens.push(terms);
        }
        self.eliminate_aux(gens, budget)
    }

    /// `(I : f) = (I ∩ ⟨f⟩) / f`.
    pub fn quotient(&self, f: &Polynomial<K>, budget: &Budget) -> Result<Ideal<K>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let meet = self.intersect(&Ideal::new(&self.ring, [f.clone()]), budget)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.exact_div(f).expect("element of <f> is divisible by f"));
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `(I : f^∞)`, eliminating `t` from `I + ⟨1 - t f⟩`.
    pub fn saturate_by_poly(&self, f: &Polynomial<K>, budget: &Budget) -> Result<Ideal<K>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let k = self.ring.field();
        let n = self.ring.nvars();
        let t = Monomial::var(n + 1, n);
        let mut gens: Vec<Terms<K::Elem>> = self.gens.iter().map(|g| extend_terms(g.terms(), 1)).collect();
        let mut aux: Terms<K::Elem> = f
            .terms()
            .iter()
            .map(|(m, c)| (m.extend(1).mul(&t), k.neg(c)))
            .collect();
        aux.push((Monomial::one(n + 1), k.one()));
        gens.push(aux);
        self.eliminate_aux(gens, budget)
    }

    /// `(I : v^∞)` for the variable with index `v`.
    ///
    /// Homogeneous ideals use a grevlex basis with `v` cheapest, dividing each
    /// element by its largest power of `v`; others fall back to elimination.
    pub fn saturate_by_variable(&self, v: usize, budget: &Budget) -> Result<Ideal<K>> {
        if self.is_zero_ideal() {
            return Ok(self.clone());
        }
        if !self.weight_homogeneous() {
            return self.saturate_by_poly(&Polynomial::var(&self.ring, v), budget);
        }
        let order = MonomialOrder::grevlex_with_last(self.ring.weights().to_vec(), v);
        let gb = groebner_basis(self.ring.field(), &order, &self.raw_gens(), budget)?;
        let gens = gb.into_iter().map(|g| {
            let e = g.iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0);
            let terms = g.into_iter().map(move |(mut m, c)| {
                m.set_exp(v, m.exp(v) - e);
                (m, c)
            });
            Polynomial::from_terms(&self.ring, terms)
        });
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `(I : B^∞)`: for each irrelevant factor, intersect the saturations by its variables.
    pub fn saturate_irrelevant(&self, budget: &Budget) -> Result<Ideal<K>> {
        let mut current = self.clone();
        for factor in self.ring.factors() {
            if current.is_unit(budget)? {
                return Ok(Ideal::unit(&self.ring));
            }
            let mut acc: Option<Ideal<K>> = None;
            for &v in factor {
                let sat = current.saturate_by_variable(v, budget)?;
                if sat.is_unit(budget)? {
                    continue;
                }
                acc = Some(match acc {
                    None => sat,
                    Some(a) => a.intersect(&sat, budget)?,
                });
            }
            current = match acc {
                None => Ideal::unit(&self.ring),
                Some(a) => a,
            };
        }
        Ok(current)
    }

    /// Whether `p ∈ √I`, via `1 ∈ I + ⟨1 - t p⟩`.
    pub fn radical_contains(&self, p: &Polynomial<K>, budget: &Budget) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        let k = self.ring.field();
        let n = self.ring.nvars();
        let t = Monomial::var(n + 1, n);
        let mut gens: Vec<Terms<K::Elem>> = self.gens.iter().map(|g| extend_terms(g.terms(), 1)).collect();
        let mut aux: Terms<K::Elem> = p
            .terms()
            .iter()
            .map(|(m, c)| (m.extend(1).mul(&t), k.neg(c)))
            .collect();
        aux.push((Monomial::one(n + 1), k.one()));
        gens.push(aux);
        let order = MonomialOrder::grevlex(self.weights_plus(1));
        let gb = groebner_basis(k, &order, &gens, budget)?;
        Ok(gb.first().is_some_and(|g| g[0].0.is_one()))
    }

    /// `dim S/I` from the leading monomials; rejects the unit ideal.
    pub fn krull_dimension(&self, budget: &Budget) -> Result<usize> {
        let gb = self.groebner(budget)?;
        if gb.is_unit() {
            return Err(Error::InvalidInput("the unit ideal has no Krull dimension".into()));
        }
        let n = self.ring.nvars();
        let masks: Vec<u64> = gb.leading_monomials().iter().map(|m| m.support_mask()).collect();
        Ok(n - min_hitting_set(&masks))
    }

    /// Codimension `n - dim S/I`, or infinity for the unit ideal.
    pub fn depth(&self, budget: &Budget) -> Result<DepthValue> {
        if self.is_unit(budget)? {
            return Ok(DepthValue::Infinity);
        }
        Ok(DepthValue::Finite(self.ring.nvars() - self.krull_dimension(budget)?))
    }
}

/// Size of a smallest variable set meeting every support mask.
///
/// `dim S/I = n - min_hitting_set(supports of in(I))`: a variable set is
/// independent exactly when its complement meets every leading monomial.
pub fn min_hitting_set(sets: &[u64]) -> usize {
    let mut sets: Vec<u64> = sets.to_vec();
    sets.sort_by_key(|s| s.count_ones());
    // drop supersets: hitting the subset suffices
    let mut minimal: Vec<u64> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|m| m & s == *m) {
            minimal.push(s);
        }
    }
    assert!(minimal.iter().all(|s| *s != 0), "empty support means the unit ideal");
    let mut best = minimal.iter().fold(0u64, |a, s| a | s).count_ones() as usize;
    fn rec(sets: &[u64], chosen: u64, count: usize, best: &mut usize) {
        let unhit = sets.iter().filter(|s| *s & chosen == 0).min_by_key(|s| s.count_ones());
        match unhit {
            None => *best = (*best).min(count),
            Some(&s) => {
                if count + 1 >= *best {
                    return;
                }
                let mut bits = s;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    rec(sets, chosen | b, count + 1, best);
                    bits &= bits - 1;
                }
            }
        }
    }
    rec(&minimal, 0, 0, &mut best);
    best
}
