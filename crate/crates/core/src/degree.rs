//! Multidegrees: elements of the grading group `Z^r`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An element of `Z^r`, the grading group of a Cox ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(rank: usize) -> Self {
        MultiDegree(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The pairing `λ·d` with an integer functional.
    pub fn dot(&self, lambda: &[i64]) -> i64 {
        self.0.iter().zip(lambda).map(|(a, b)| a * b).sum()
    }

    /// Comma-separated components, e.g. `-3,-1`.
    pub fn to_csv(&self) -> String {
        self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl From<Vec<i64>> for MultiDegree {
    fn from(v: Vec<i64>) -> Self {
        MultiDegree(v)
    }
}

impl From<&[i64]> for MultiDegree {
    fn from(v: &[i64]) -> Self {
        MultiDegree(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for MultiDegree {
    fn from(v: [i64; N]) -> Self {
        MultiDegree(v.to_vec())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

/// Parses `5,1`, `-6,-6,-2` or `(5,1)`.
impl FromStr for MultiDegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        t.split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(MultiDegree)
            .map_err(|_| Error::InvalidInput(format!("bad degree `{s}` (expected comma-separated integers)")))
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        debug_assert_eq!(self.rank(), rhs.rank());
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: MultiDegree) -> MultiDegree {
        &self + &rhs
    }
}

impl AddAssign<&MultiDegree> for MultiDegree {
    fn add_assign(&mut self, rhs: &MultiDegree) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Sub for &MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        debug_assert_eq!(self.rank(), rhs.rank());
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: MultiDegree) -> MultiDegree {
        &self - &rhs
    }
}

impl Neg for &MultiDegree {
    type Output = MultiDegree;
    fn neg(self) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for MultiDegree {
    type Output = MultiDegree;
    fn neg(self) -> MultiDegree {
        -&self
    }
}

impl Mul<i64> for &MultiDegree {
    type Output = MultiDegree;
    fn mul(self, k: i64) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * k).collect())
    }
}
