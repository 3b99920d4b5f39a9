use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::matrix::GradedMatrix;
use super::module::TwistedFreeModule;
use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::PolyRing;

/// `0 → F_e → … → F_1 → F_0` with `φ_j : F_j → F_{j-1}`.
pub struct ChainComplex<K: Field> {
    ring: Arc<PolyRing<K>>,
    index: Option<i64>,
    terms: Vec<TwistedFreeModule>,
    differentials: Vec<GradedMatrix<K>>,
}

impl<K: Field> Clone for ChainComplex<K> {
    fn clone(&self) -> Self {
        ChainComplex {
            ring: self.ring.clone(),
            index: self.index,
            terms: self.terms.clone(),
            differentials: self.differentials.clone(),
        }
    }
}

impl<K: Field> fmt::Debug for ChainComplex<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex(index {:?})\n{}", self.index, self.betti_table().render())
    }
}

impl<K: Field> ChainComplex<K> {
    /// `differentials[j - 1]` is `φ_j`; shapes must chain.
    pub fn new(
        ring: &Arc<PolyRing<K>>,
        index: Option<i64>,
        terms: Vec<TwistedFreeModule>,
        differentials: Vec<GradedMatrix<K>>,
    ) -> Result<Self> {
        if terms.is_empty() || differentials.len() + 1 != terms.len() {
            return Err(Error::InvalidInput("a complex needs one more term than differentials".into()));
        }
        for (j, d) in differentials.iter().enumerate() {
            if d.source() != &terms[j + 1] || d.target() != &terms[j] {
                return Err(Error::InvalidInput(format!("differential {} does not match its terms", j + 1)));
            }
        }
        Ok(ChainComplex {
            ring: ring.clone(),
            index,
            terms,
            differentials,
        })
    }

    /// A single module in position 0.
    pub fn single(ring: &Arc<PolyRing<K>>, module: TwistedFreeModule) -> Self {
        ChainComplex {
            ring: ring.clone(),
            index: None,
            terms: vec![module],
            differentials: vec![],
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    /// The family index `i` when built as `C^i`.
    pub fn index(&self) -> Option<i64> {
        self.index
    }

    pub(crate) fn set_index(&mut self, i: Option<i64>) {
        self.index = i;
    }

    /// The length `e`.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[TwistedFreeModule] {
        &self.terms
    }

    pub fn term(&self, j: usize) -> &TwistedFreeModule {
        &self.terms[j]
    }

    /// `φ_j` for `1 ≤ j ≤ e`.
    pub fn differential(&self, j: usize) -> &GradedMatrix<K> {
        &self.differentials[j - 1]
    }

    pub fn differentials(&self) -> &[GradedMatrix<K>] {
        &self.differentials
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.rank()).collect()
    }

    /// Whether every composite `φ_j ∘ φ_{j+1}` vanishes.
    pub fn compose_check(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].compose(&w[1]).iter().all(|r| r.iter().all(|p| p.is_zero())))
    }

    /// Replaces a differential without shape checks beyond equality (mutation tests).
    pub fn with_differential(&self, j: usize, m: GradedMatrix<K>) -> Result<Self> {
        let mut diffs = self.differentials.clone();
        diffs[j - 1] = m;
        Self::new(&self.ring, self.index, self.terms.clone(), diffs)
    }

    /// Reversed terms, transposed differentials, negated twists.
    pub fn dualize(&self) -> Self {
        let e = self.length();
        let terms = (0..=e).map(|k| self.terms[e - k].dual()).collect();
        let differentials = (1..=e).map(|k| self.differentials[e - k].transpose()).collect();
        ChainComplex {
            ring: self.ring.clone(),
            index: None,
            terms,
            differentials,
        }
    }

    pub fn betti_table(&self) -> BettiTable {
        BettiTable {
            positions: self
                .terms
                .iter()
                .map(|t| {
                    t.twist_multiset()
                        .into_iter()
                        .map(|(twist, multiplicity)| TwistCount { twist, multiplicity })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistCount {
    pub twist: MultiDegree,
    pub multiplicity: usize,
}

/// Twists with multiplicities at each homological position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub positions: Vec<Vec<TwistCount>>,
}

impl BettiTable {
    pub fn ranks(&self) -> Vec<usize> {
        self.positions
            .iter()
            .map(|p| p.iter().map(|t| t.multiplicity).sum())
            .collect()
    }

    /// Position `j` as `(twist, multiplicity)` pairs.
    pub fn position(&self, j: usize) -> Vec<(MultiDegree, usize)> {
        self.positions[j].iter().map(|t| (t.twist.clone(), t.multiplicity)).collect()
    }

    /// Aligned text: one line per position.
    pub fn render(&self) -> String {
        let ranks = self.ranks();
        let w = ranks.iter().map(|r| r.to_string().len()).max().unwrap_or(1).max(4);
        let mut out = format!("{:<4} {:>w$}  twists\n", "pos", "rank");
        for (j, p) in self.positions.iter().enumerate() {
            let twists: Vec<String> = p
                .iter()
                .map(|t| {
                    if t.multiplicity == 1 {
                        format!("S{}", t.twist)
                    } else {
                        format!("S{}^{}", t.twist, t.multiplicity)
                    }
                })
                .collect();
            out.push_str(&format!("{:<4} {:>w$}  {}\n", j, ranks[j], twists.join(" + ")));
        }
        out
    }
}
