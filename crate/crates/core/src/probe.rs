//! Homology of a complex one multidegree at a time.
//!
//! In degree `d` every free module is a finite-dimensional vector space with
//! basis `m·e_k`, where `e_k` generates the summand `S(a_k)` and `m` runs over
//! monomials of degree `d + a_k`. The differentials become scalar matrices,
//! and exact ranks give `dim H_j(C)_d`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complex::{ChainComplex, GradedMatrix, TwistedFreeModule};
use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel, normalize_sparse, Echelon, SparseVec};
use crate::monomial::Monomial;
use crate::ring::PolyRing;

/// Default largest piece dimension probed.
pub const DEFAULT_PROBE_CAP: usize = 2000;
/// Default sweep bound on `λ·d`.
pub const DEFAULT_SWEEP_BOUND: i64 = 8;

/// A basis vector `m·e_k` of a graded piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PieceLabel {
    pub summand: usize,
    pub monomial: Monomial,
}

/// The monomial basis of `M_d` for a twisted free module `M`.
#[derive(Clone, Debug)]
pub struct PieceBasis {
    pub labels: Vec<PieceLabel>,
    index: HashMap<PieceLabel, usize>,
}

impl PieceBasis {
    pub fn new<K: Field>(ring: &PolyRing<K>, module: &TwistedFreeModule, d: &MultiDegree, cap: usize) -> Result<Self> {
        let shifted: Vec<MultiDegree> = (0..module.rank()).map(|k| d - &module.generator_degree(k)).collect();
        let dim = shifted.iter().map(|s| ring.graded_piece_dim(s)).fold(0usize, usize::saturating_add);
        if dim > cap {
            return Err(Error::BudgetExceeded(format!(
                "graded piece of {module} in degree {d} has dimension {dim}, above the probe cap {cap}"
            )));
        }
        let mut labels = Vec::with_capacity(dim);
        for (k, s) in shifted.iter().enumerate() {
            labels.extend(ring.graded_piece(s).into_iter().map(|m| PieceLabel { summand: k, monomial: m }));
        }
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Ok(PieceBasis { labels, index })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn position(&self, label: &PieceLabel) -> Option<usize> {
        self.index.get(label).copied()
    }
}

/// A differential restricted to one degree, stored by columns.
pub struct GradedPieceMatrix<K: Field> {
    pub degree: MultiDegree,
    pub rows: PieceBasis,
    pub cols: PieceBasis,
    pub columns: Vec<SparseVec<K::Elem>>,
}

impl<K: Field> fmt::Debug for GradedPieceMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPieceMatrix({}: {}×{})", self.degree, self.nrows(), self.ncols())
    }
}

impl<K: Field> GradedPieceMatrix<K> {
    pub fn nrows(&self) -> usize {
        self.rows.dim()
    }

    pub fn ncols(&self) -> usize {
        self.cols.dim()
    }

    pub fn rank(&self, k: &K) -> usize {
        k.rank(self.columns.clone(), self.nrows())
    }

    /// Dense rows of the matrix, for display or export.
    pub fn dense(&self, k: &K) -> Vec<Vec<K::Elem>> {
        let mut out = vec![vec![k.zero(); self.ncols()]; self.nrows()];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col {
                out[*i][j] = c.clone();
            }
        }
        out
    }
}

/// The scalar matrix of `φ` from `(source)_d` to `(target)_d`.
pub fn graded_piece_matrix<K: Field>(phi: &GradedMatrix<K>, d: &MultiDegree, cap: usize) -> Result<GradedPieceMatrix<K>> {
    let ring = phi.ring();
    let k = ring.field();
    let rows = PieceBasis::new(ring, phi.target(), d, cap)?;
    let cols = PieceBasis::new(ring, phi.source(), d, cap)?;
    let columns = cols
        .labels
        .iter()
        .map(|label| {
            let mut v: SparseVec<K::Elem> = Vec::new();
            for t in 0..phi.nrows() {
                for (m, c) in phi.entry(t, label.summand).terms() {
                    let target = PieceLabel {
                        summand: t,
                        monomial: m.mul(&label.monomial),
                    };
                    let i = rows.position(&target).expect("homogeneous entries land in the target piece");
                    v.push((i, c.clone()));
                }
            }
            normalize_sparse(k, v)
        })
        .collect();
    Ok(GradedPieceMatrix {
        degree: d.clone(),
        rows,
        cols,
        columns,
    })
}

/// Dimensions at one position of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionHomology {
    pub j: usize,
    /// `dim (F_j)_d`.
    pub dim: usize,
    /// `dim ker (φ_j)_d`, with `φ_0 = 0`.
    pub kernel: usize,
    /// `dim im (φ_{j+1})_d`, with `φ_{e+1} = 0`.
    pub image: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    #[serde(serialize_with = "as_csv")]
    pub degree: MultiDegree,
    pub positions: Vec<PositionHomology>,
}

fn as_csv<S: Serializer>(d: &MultiDegree, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.to_csv())
}

impl HomologyProfile {
    pub fn homology(&self, j: usize) -> usize {
        self.positions[j].homology
    }

    /// Positions `j ≥ 1` with nonzero homology.
    pub fn higher(&self) -> impl Iterator<Item = &PositionHomology> {
        self.positions.iter().filter(|p| p.j >= 1 && p.homology > 0)
    }

    /// `Σ (-1)^j dim (F_j)_d = Σ (-1)^j dim H_j(C)_d`.
    pub fn euler_holds(&self) -> bool {
        let sign = |j: usize| if j % 2 == 0 { 1i64 } else { -1 };
        let lhs: i64 = self.positions.iter().map(|p| sign(p.j) * p.dim as i64).sum();
        let rhs: i64 = self.positions.iter().map(|p| sign(p.j) * p.homology as i64).sum();
        lhs == rhs
    }
}

/// `dim H_j(C)_d = (dim (F_j)_d - rank (φ_j)_d) - rank (φ_{j+1})_d` for every `j`.
pub fn homology_dims<K: Field>(c: &ChainComplex<K>, d: &MultiDegree, cap: usize) -> Result<HomologyProfile> {
    let k = c.ring().field();
    let e = c.length();
    let mut dims = Vec::with_capacity(e + 1);
    for j in 0..=e {
        dims.push(PieceBasis::new(c.ring(), c.term(j), d, cap)?.dim());
    }
    // ranks[j] = rank of φ_j in degree d, zero at both ends
    let mut ranks = vec![0usize; e + 2];
    for j in 1..=e {
        if dims[j] > 0 && dims[j - 1] > 0 {
            ranks[j] = graded_piece_matrix(c.differential(j), d, cap)?.rank(k);
        }
    }
    let mut positions = Vec::with_capacity(e + 1);
    for j in 0..=e {
        let kernel = dims[j] - ranks[j];
        let image = ranks[j + 1];
        let homology = kernel.checked_sub(image).ok_or_else(|| {
            Error::InvalidInput(format!("image exceeds kernel at position {j} in degree {d}: d∘d ≠ 0"))
        })?;
        positions.push(PositionHomology {
            j,
            dim: dims[j],
            kernel,
            image,
            homology,
        });
    }
    Ok(HomologyProfile {
        degree: d.clone(),
        positions,
    })
}

/// Outcome of an annihilation search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Annihilation {
    pub j: usize,
    #[serde(serialize_with = "as_csv")]
    pub degree: MultiDegree,
    pub monomial: String,
    /// `dim H_j(C)_d`.
    pub classes: usize,
    /// Smallest `n` with `b^n · H_j(C)_d = 0`, if one was found.
    pub n: Option<u32>,
    pub n_max: u32,
}

/// Smallest `n ≤ n_max` such that multiplication by `b^n` sends every cycle
/// of `(F_j)_d` into the boundaries in degree `d + n·deg b`.
///
/// Requires `j ≥ 1` and `dim H_j(C)_d > 0`.
pub fn annihilation_check<K: Field>(
    c: &ChainComplex<K>,
    j: usize,
    d: &MultiDegree,
    b: &Monomial,
    n_max: u32,
    cap: usize,
) -> Result<Annihilation> {
    let ring = c.ring();
    let k = ring.field();
    let e = c.length();
    if j == 0 || j > e {
        return Err(Error::InvalidInput(format!("position {j} is outside 1..={e}")));
    }
    let profile = homology_dims(c, d, cap)?;
    let classes = profile.homology(j);
    if classes == 0 {
        return Err(Error::InvalidInput(format!("H_{j} vanishes in degree {d}: nothing to annihilate")));
    }
    let phi = graded_piece_matrix(c.differential(j), d, cap)?;
    let cycles = kernel(k, &phi.columns, phi.nrows());
    let bdeg = ring.monomial_degree(b);
    let mut found = None;
    for n in 1..=n_max {
        let target = d + &(&bdeg * n as i64);
        let shift = b.pow(n as u16);
        let basis = PieceBasis::new(ring, c.term(j), &target, cap)?;
        let mut span = Echelon::new(k.clone());
        if j < e {
            for col in graded_piece_matrix(c.differential(j + 1), &target, cap)?.columns {
                span.insert(col);
            }
        }
        let all_bound = cycles.iter().all(|z| {
            let moved: SparseVec<K::Elem> = z
                .iter()
                .map(|(i, coef)| {
                    let l = &phi.cols.labels[*i];
                    let label = PieceLabel {
                        summand: l.summand,
                        monomial: l.monomial.mul(&shift),
                    };
                    (basis.position(&label).expect("shifted basis element"), coef.clone())
                })
                .collect();
            span.contains(normalize_sparse(k, moved))
        });
        if all_bound {
            found = Some(n);
            break;
        }
    }
    Ok(Annihilation {
        j,
        degree: d.clone(),
        monomial: ring.format_monomial(b),
        classes,
        n: found,
        n_max,
    })
}

/// Degrees `δ` of monomials with `λ·δ ≤ bound`.
fn monomial_degrees<K: Field>(ring: &PolyRing<K>, bound: i64) -> BTreeSet<MultiDegree> {
    let lambda = ring.lambda();
    let mut seen = BTreeSet::new();
    let mut frontier = vec![ring.zero_degree()];
    seen.insert(ring.zero_degree());
    while let Some(d) = frontier.pop() {
        for v in ring.var_degrees() {
            let next = &d + v;
            if next.dot(lambda) <= bound && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// Every degree with `λ·d ≤ bound` where some term of `c` is nonzero.
pub fn probe_degrees<K: Field>(c: &ChainComplex<K>, bound: i64) -> Vec<MultiDegree> {
    let ring = c.ring();
    let lambda = ring.lambda();
    let mut gens: BTreeSet<MultiDegree> = BTreeSet::new();
    for t in c.terms() {
        for k in 0..t.rank() {
            gens.insert(t.generator_degree(k));
        }
    }
    let slack = gens.iter().map(|g| bound - g.dot(lambda)).max().unwrap_or(bound);
    let shifts = monomial_degrees(ring, slack);
    let mut out = BTreeSet::new();
    for g in &gens {
        for s in &shifts {
            let d = g + s;
            if d.dot(lambda) <= bound {
                out.insert(d);
            }
        }
    }
    out.into_iter().collect()
}

/// A class of higher homology found by a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonzeroHomology {
    #[serde(serialize_with = "as_csv")]
    pub degree: MultiDegree,
    pub j: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub index: Option<i64>,
    pub bound: i64,
    pub profiles: Vec<HomologyProfile>,
    pub nonzero: Vec<NonzeroHomology>,
    /// Degrees whose pieces exceeded the probe cap.
    pub skipped: Vec<String>,
    pub euler_ok: bool,
}

impl SweepReport {
    pub fn exact(&self) -> bool {
        self.nonzero.is_empty()
    }
}

/// Homology in every degree with `λ·d ≤ bound`.
pub fn exactness_sweep<K: Field>(c: &ChainComplex<K>, bound: i64, cap: usize) -> Result<SweepReport> {
    let degrees = probe_degrees(c, bound);
    let results: Vec<(MultiDegree, Result<HomologyProfile>)> = degrees
        .into_par_iter()
        .map(|d| {
            let p = homology_dims(c, &d, cap);
            (d, p)
        })
        .collect();
    let mut profiles = Vec::new();
    let mut skipped = Vec::new();
    for (d, res) in results {
        match res {
            Ok(p) => profiles.push(p),
            Err(Error::BudgetExceeded(_)) => skipped.push(d.to_csv()),
            Err(e) => return Err(e),
        }
    }
    let nonzero = profiles
        .iter()
        .flat_map(|p| {
            p.higher().map(|h| NonzeroHomology {
                degree: p.degree.clone(),
                j: h.j,
                dim: h.homology,
            })
        })
        .collect();
    let euler_ok = profiles.iter().all(|p| p.euler_holds());
    Ok(SweepReport {
        index: c.index(),
        bound,
        profiles,
        nonzero,
        skipped,
        euler_ok,
    })
}
