//! Problem files: a ring plus the map `φ: F → G`, stored as JSON.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::GradedMatrix;
use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::ring::{PolyRing, RingSpec};

/// The matrix of `φ`: `g` rows (target summands) by `f` columns (source summands).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub target_twists: Vec<MultiDegree>,
    pub source_twists: Vec<MultiDegree>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub ring: RingSpec,
    pub map: MapSpec,
}

/// A validated problem over a concrete field.
pub struct Problem<K: Field> {
    pub ring: Arc<PolyRing<K>>,
    pub phi: GradedMatrix<K>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    /// The same problem read over another coefficient field.
    pub fn with_field(&self, field: FieldSpec) -> Self {
        let mut p = self.clone();
        p.ring.field = field;
        p
    }

    /// Validates the ring, parses every entry and checks homogeneity and `f ≥ g`.
    pub fn build<K: Field>(&self, field: K) -> Result<Problem<K>> {
        let ring = PolyRing::new(self.ring.clone(), field)?;
        let (g, f) = (self.map.target_twists.len(), self.map.source_twists.len());
        if g == 0 {
            return Err(Error::InvalidInput("the target module is zero".into()));
        }
        if f < g {
            return Err(Error::InvalidInput(format!(
                "need f ≥ g, but the map has f = {f} columns and g = {g} rows"
            )));
        }
        let rank = ring.grading_rank();
        for d in self.map.target_twists.iter().chain(&self.map.source_twists) {
            if d.rank() != rank {
                return Err(Error::InvalidInput(format!("twist {d} should have {rank} components")));
            }
        }
        let phi = GradedMatrix::from_strings(
            &ring,
            self.map.target_twists.clone(),
            self.map.source_twists.clone(),
            &self.map.entries,
        )?;
        Ok(Problem { ring, phi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::presets::preset;

    #[test]
    fn json_roundtrip() {
        let p = preset("twisted-cubic").unwrap();
        let back = ProblemFile::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        p.save(&path).unwrap();
        assert_eq!(ProblemFile::load(&path).unwrap(), p);
    }

    #[test]
    fn rejects_tall_matrices() {
        let mut p = preset("twisted-cubic").unwrap();
        p.map.source_twists.truncate(1);
        p.map.target_twists.push(MultiDegree::from([-3, 0]));
        p.map.entries = vec![vec!["x0^3".into()], vec!["y0".into()], vec!["x0^3".into()]];
        // 3 rows, 1 column
        assert!(matches!(p.build(PrimeField::default()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn names_the_bad_slot() {
        let mut p = preset("twisted-cubic").unwrap();
        p.map.entries[1][0] = "x0".into();
        match p.build(PrimeField::default()) {
            Err(Error::EntryDegree { row, col, expected, .. }) => {
                assert_eq!((row, col), (1, 0));
                assert_eq!(expected, MultiDegree::from([0, 1]));
            }
            other => panic!("expected a degree error, got {:?}", other.err()),
        }
    }
}
