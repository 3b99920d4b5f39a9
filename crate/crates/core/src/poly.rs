//! Sparse multigraded polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::MonomialOrder;
use crate::monomial::Monomial;
use crate::ring::PolyRing;

/// Term list sorted strictly decreasing under some [`MonomialOrder`], no zero coefficients.
pub type Terms<E> = Vec<(Monomial, E)>;

/// Result of asking for the degree of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(MultiDegree),
    Inhomogeneous,
}

/// An element of a [`PolyRing`], stored sparsely in the ring's canonical order.
pub struct Polynomial<K: Field> {
    ring: Arc<PolyRing<K>>,
    terms: Terms<K::Elem>,
}

impl<K: Field> Clone for Polynomial<K> {
    fn clone(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<K: Field> Eq for Polynomial<K> {}

impl<K: Field> std::hash::Hash for Polynomial<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_polynomial(self))
    }
}

impl<K: Field> Polynomial<K> {
    pub fn zero(ring: &Arc<PolyRing<K>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing<K>>, c: K::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) {
            vec![]
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Arc<PolyRing<K>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing<K>>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Arc<PolyRing<K>>, m: Monomial, c: K::Elem) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms: duplicates are combined and zeros dropped.
    pub fn from_terms(ring: &Arc<PolyRing<K>>, terms: impl IntoIterator<Item = (Monomial, K::Elem)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: normalize(ring.field(), ring.order(), terms),
        }
    }

    /// Wraps terms already sorted in some order; re-sorts them canonically.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing<K>>, terms: Terms<K::Elem>, order: &MonomialOrder) -> Self {
        let terms = if order == ring.order() {
            terms
        } else {
            let mut t = terms;
            t.sort_by(|a, b| ring.order().cmp(&b.0, &a.0));
            t
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    pub fn field(&self) -> &K {
        self.ring.field()
    }

    /// Terms in canonical order (largest first).
    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Terms<K::Elem> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&(Monomial, K::Elem)> {
        self.terms.first()
    }

    /// The common multidegree of the terms.
    pub fn degree(&self) -> Result<Homogeneity> {
        let mut it = self.terms.iter();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let d = self.ring.monomial_degree(&first.0);
        for (m, _) in it {
            if self.ring.monomial_degree(m) != d {
                return Ok(Homogeneity::Inhomogeneous);
            }
        }
        Ok(Homogeneity::Homogeneous(d))
    }

    /// Degree of a homogeneous nonzero polynomial.
    pub fn homogeneous_degree(&self) -> Result<MultiDegree> {
        match self.degree()? {
            Homogeneity::Homogeneous(d) => Ok(d),
            Homogeneity::Inhomogeneous => Err(Error::Inhomogeneous),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(self.degree(), Ok(Homogeneity::Homogeneous(_)))
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let k = self.field();
        if k.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), k.mul(a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field().inv(c);
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, point: &[K::Elem]) -> K::Elem {
        let k = self.field();
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = k.mul(&v, &point[i]);
                }
            }
            acc = k.add(&acc, &v);
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let k = self.field();
        let order = self.ring.order();
        let (lm, lc) = divisor.terms.first()?;
        let lc_inv = k.inv(lc);
        let mut rem = self.terms.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.first().cloned() {
            let q = m.checked_div(lm)?;
            let qc = k.mul(&c, &lc_inv);
            rem = sub_scaled(k, order, &rem, &qc, &q, &divisor.terms);
            quot.push((q, qc));
        }
        Some(Polynomial {
            ring: self.ring.clone(),
            terms: quot,
        })
    }

    /// Substitutes field values for some variables (`None` keeps the variable).
    pub fn substitute(&self, values: &[Option<K::Elem>]) -> Self {
        let k = self.field();
        let n = self.ring.nvars();
        let mut acc: HashMap<Monomial, K::Elem> = HashMap::new();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut exps = m.exponents().to_vec();
            for i in 0..n {
                if let Some(val) = &values[i] {
                    for _ in 0..exps[i] {
                        v = k.mul(&v, val);
                    }
                    exps[i] = 0;
                }
            }
            let key = Monomial::from_exponents(&exps);
            let entry = acc.entry(key).or_insert_with(|| k.zero());
            *entry = k.add(entry, &v);
        }
        Self::from_terms(&self.ring, acc)
    }
}

/// Sorts, combines and drops zero coefficients.
pub(crate) fn normalize<K: Field>(
    k: &K,
    order: &MonomialOrder,
    terms: impl IntoIterator<Item = (Monomial, K::Elem)>,
) -> Terms<K::Elem> {
    let mut map: HashMap<Monomial, K::Elem> = HashMap::new();
    for (m, c) in terms {
        match map.get_mut(&m) {
            Some(e) => *e = k.add(e, &c),
            None => {
                map.insert(m, c);
            }
        }
    }
    let mut out: Terms<K::Elem> = map.into_iter().filter(|(_, c)| !k.is_zero(c)).collect();
    out.sort_by(|a, b| order.cmp(&b.0, &a.0));
    out
}

/// `p + q` for term lists sorted in `order`.
pub(crate) fn add_terms<K: Field>(k: &K, order: &MonomialOrder, p: &[(Monomial, K::Elem)], q: &[(Monomial, K::Elem)]) -> Terms<K::Elem> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() && j < q.len() {
        match order.cmp(&p[i].0, &q[j].0) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(q[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let s = k.add(&p[i].1, &q[j].1);
                if !k.is_zero(&s) {
                    out.push((p[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    out.extend_from_slice(&q[j..]);
    out
}

/// `p - c * m * g` for term lists sorted in `order`.
pub(crate) fn sub_scaled<K: Field>(
    k: &K,
    order: &MonomialOrder,
    p: &[(Monomial, K::Elem)],
    c: &K::Elem,
    m: &Monomial,
    g: &[(Monomial, K::Elem)],
) -> Terms<K::Elem> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), gc)).peekable();
    while i < p.len() {
        let Some((gm, gc)) = gi.peek() else { break };
        match order.cmp(&p[i].0, gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.clone(), k.neg(&k.mul(c, gc))));
                gi.next();
            }
            Ordering::Equal => {
                let s = k.sub(&p[i].1, &k.mul(c, gc));
                if !k.is_zero(&s) {
                    out.push((p[i].0.clone(), s));
                }
                i += 1;
                gi.next();
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    for (gm, gc) in gi {
        out.push((gm, k.neg(&k.mul(c, gc))));
    }
    out
}

pub(crate) fn mul_terms<K: Field>(k: &K, order: &MonomialOrder, p: &[(Monomial, K::Elem)], q: &[(Monomial, K::Elem)]) -> Terms<K::Elem> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut map: HashMap<Monomial, K::Elem> = HashMap::with_capacity(p.len() * q.len());
    for (a, ca) in p {
        for (b, cb) in q {
            let m = a.mul(b);
            let v = k.mul(ca, cb);
            match map.get_mut(&m) {
                Some(e) => *e = k.add(e, &v),
                None => {
                    map.insert(m, v);
                }
            }
        }
    }
    let mut out: Terms<K::Elem> = map.into_iter().filter(|(_, c)| !k.is_zero(c)).collect();
    out.sort_by(|a, b| order.cmp(&b.0, &a.0));
    out
}

impl<K: Field> Add for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, rhs: &Polynomial<K>) -> Polynomial<K> {
        Polynomial {
            ring: self.ring.clone(),
            terms: add_terms(self.field(), self.ring.order(), &self.terms, &rhs.terms),
        }
    }
}

impl<K: Field> Sub for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, rhs: &Polynomial<K>) -> Polynomial<K> {
        let k = self.field();
        let one = k.one();
        Polynomial {
            ring: self.ring.clone(),
            terms: sub_scaled(
                k,
                self.ring.order(),
                &self.terms,
                &one,
                &Monomial::one(self.ring.nvars()),
                &rhs.terms,
            ),
        }
    }
}

impl<K: Field> Mul for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, rhs: &Polynomial<K>) -> Polynomial<K> {
        Polynomial {
            ring: self.ring.clone(),
            terms: mul_terms(self.field(), self.ring.order(), &self.terms, &rhs.terms),
        }
    }
}

impl<K: Field> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        let k = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), k.neg(c))).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<K: Field> $tr for Polynomial<K> {
            type Output = Polynomial<K>;
            fn $f(self, rhs: Polynomial<K>) -> Polynomial<K> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<K: Field> Neg for Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        -&self
    }
}
