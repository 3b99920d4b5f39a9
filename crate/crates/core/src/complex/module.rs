use std::fmt;

use serde::{Serialize, Serializer};

use crate::degree::MultiDegree;

/// Where a basis element of a constructed module comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// A plain basis vector of an input module.
    Index(usize),
    /// `e_S ⊗ ε^β` in `Λ^p F ⊗ Sym G`.
    Tail { subset: Vec<usize>, sym: Vec<u32> },
    /// `e_S ⊗ (ε^α)^*` in `Λ^p F ⊗ (Sym G)^* ⊗ (Λ^g G)^*`.
    Head { subset: Vec<usize>, sym: Vec<u32> },
    /// The dual basis vector of a label.
    Dual(Box<BasisLabel>),
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Index(i) => write!(f, "e{i}"),
            BasisLabel::Tail { subset, sym } => write!(f, "e{{{}}}*s({})", join(subset), join(sym)),
            BasisLabel::Head { subset, sym } => write!(f, "e{{{}}}*s*({})", join(subset), join(sym)),
            BasisLabel::Dual(l) => write!(f, "({l})*"),
        }
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `⊕_k S(twist_k)`; the generator of `S(a)` has degree `-a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedFreeModule {
    pub twists: Vec<MultiDegree>,
    pub labels: Vec<BasisLabel>,
}

impl TwistedFreeModule {
    /// A module with plain index labels.
    pub fn new(twists: Vec<MultiDegree>) -> Self {
        let labels = (0..twists.len()).map(BasisLabel::Index).collect();
        TwistedFreeModule { twists, labels }
    }

    pub fn with_labels(twists: Vec<MultiDegree>, labels: Vec<BasisLabel>) -> Self {
        assert_eq!(twists.len(), labels.len(), "one label per summand");
        TwistedFreeModule { twists, labels }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Degree of the `k`-th generator, i.e. the negated twist.
    pub fn generator_degree(&self, k: usize) -> MultiDegree {
        -&self.twists[k]
    }

    /// Dual module: negated twists and dual labels.
    pub fn dual(&self) -> Self {
        TwistedFreeModule {
            twists: self.twists.iter().map(|t| -t).collect(),
            labels: self.labels.iter().map(|l| BasisLabel::Dual(Box::new(l.clone()))).collect(),
        }
    }

    /// Twists with multiplicities, grouped in order of first appearance.
    pub fn twist_multiset(&self) -> Vec<(MultiDegree, usize)> {
        let mut out: Vec<(MultiDegree, usize)> = Vec::new();
        for t in &self.twists {
            match out.iter_mut().find(|(d, _)| d == t) {
                Some((_, n)) => *n += 1,
                None => out.push((t.clone(), 1)),
            }
        }
        out
    }
}

impl fmt::Display for TwistedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .twist_multiset()
            .iter()
            .map(|(d, n)| {
                if *n == 1 {
                    format!("S{d}")
                } else {
                    format!("S{d}^{n}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
