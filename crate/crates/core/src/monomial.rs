//! Exponent vectors.

use smallvec::SmallVec;

use crate::degree::MultiDegree;

/// A monomial, stored as its exponent vector over the ring variables.
///
/// The derived `Ord` is lexicographic on exponent tuples; it is only used for
/// deterministic enumeration. Term orders live in [`crate::groebner::MonomialOrder`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Bit `i` is set when variable `i` (for `i < 64`) occurs.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.0.iter().enumerate().take(64) {
            if e > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, n: u16) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|a| a.checked_mul(n).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Product of the variables that occur in `self`.
    pub fn squarefree(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.min(1)).collect())
    }

    pub fn weight(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, w)| e as i64 * w).sum()
    }

    pub fn degree(&self, var_degrees: &[MultiDegree], rank: usize) -> MultiDegree {
        let mut d = vec![0i64; rank];
        for (e, vd) in self.0.iter().zip(var_degrees) {
            if *e > 0 {
                for (acc, c) in d.iter_mut().zip(&vd.0) {
                    *acc += *e as i64 * c;
                }
            }
        }
        MultiDegree(d)
    }

    /// Appends `extra` zero exponents.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat(0).take(extra));
        Monomial(v)
    }

    /// Keeps only the first `n` exponents.
    pub fn truncate(&self, n: usize) -> Monomial {
        Monomial(SmallVec::from_slice(&self.0[..n]))
    }

    /// Exponents at the listed positions, in that order.
    pub fn select(&self, keep: &[usize]) -> Monomial {
        Monomial(keep.iter().map(|&i| self.0[i]).collect())
    }

    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.0[i] = e;
    }
}
