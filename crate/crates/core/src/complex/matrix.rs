use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::module::TwistedFreeModule;
use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::parse::parse_polynomial;
use crate::poly::{Homogeneity, Polynomial};
use crate::ring::PolyRing;

/// Default number of minors beyond which exact minor expansion is refused.
pub const DEFAULT_MINOR_CAP: usize = 2000;

/// A homogeneous map `source → target` of twisted free modules.
///
/// With `source = ⊕ S(a_s)` and `target = ⊕ S(b_t)`, entry `(t, s)` is zero
/// or homogeneous of degree `b_t - a_s`.
pub struct GradedMatrix<K: Field> {
    ring: Arc<PolyRing<K>>,
    target: TwistedFreeModule,
    source: TwistedFreeModule,
    entries: Vec<Vec<Polynomial<K>>>,
}

impl<K: Field> Clone for GradedMatrix<K> {
    fn clone(&self) -> Self {
        GradedMatrix {
            ring: self.ring.clone(),
            target: self.target.clone(),
            source: self.source.clone(),
            entries: self.entries.clone(),
        }
    }
}

impl<K: Field> std::fmt::Debug for GradedMatrix<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GradedMatrix {} <- {}", self.target, self.source)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<K: Field> PartialEq for GradedMatrix<K> {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target && self.source == other.source && self.entries == other.entries
    }
}

impl<K: Field> GradedMatrix<K> {
    /// Validates shape and homogeneity.
    pub fn new(
        ring: &Arc<PolyRing<K>>,
        target: TwistedFreeModule,
        source: TwistedFreeModule,
        entries: Vec<Vec<Polynomial<K>>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() {
            return Err(Error::InvalidInput(format!(
                "matrix has {} rows but the target has rank {}",
                entries.len(),
                target.rank()
            )));
        }
        for (t, row) in entries.iter().enumerate() {
            if row.len() != source.rank() {
                return Err(Error::InvalidInput(format!(
                    "row {t} has {} entries but the source has rank {}",
                    row.len(),
                    source.rank()
                )));
            }
            for (s, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let expected = &target.twists[t] - &source.twists[s];
                let found = match p.degree()? {
                    Homogeneity::Homogeneous(d) if d == expected => continue,
                    Homogeneity::Homogeneous(d) => d.to_string(),
                    Homogeneity::Inhomogeneous => "inhomogeneous".to_string(),
                };
                return Err(Error::EntryDegree {
                    row: t,
                    col: s,
                    expected,
                    found,
                });
            }
        }
        Ok(GradedMatrix {
            ring: ring.clone(),
            target,
            source,
            entries,
        })
    }

    /// Parses a grid of polynomial strings against plain twist lists.
    pub fn from_strings(
        ring: &Arc<PolyRing<K>>,
        target_twists: Vec<MultiDegree>,
        source_twists: Vec<MultiDegree>,
        entries: &[Vec<String>],
    ) -> Result<Self> {
        let grid = entries
            .iter()
            .map(|row| row.iter().map(|s| parse_polynomial(s, ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            ring,
            TwistedFreeModule::new(target_twists),
            TwistedFreeModule::new(source_twists),
            grid,
        )
    }

    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    pub fn source(&self) -> &TwistedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &TwistedFreeModule {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial<K> {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Polynomial<K>>] {
        &self.entries
    }

    /// Entries as text, row by row.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.ncols())
            .map(|s| (0..self.nrows()).map(|t| self.entries[t][s].clone()).collect())
            .collect();
        GradedMatrix {
            ring: self.ring.clone(),
            target: self.source.dual(),
            source: self.target.dual(),
            entries,
        }
    }

    /// The composite `self ∘ other` as a plain matrix of polynomials.
    pub fn compose(&self, other: &GradedMatrix<K>) -> Vec<Vec<Polynomial<K>>> {
        assert_eq!(self.ncols(), other.nrows(), "composable shapes");
        let zero = Polynomial::zero(&self.ring);
        (0..self.nrows())
            .map(|i| {
                (0..other.ncols())
                    .map(|j| {
                        let mut acc = zero.clone();
                        for k in 0..self.ncols() {
                            let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                            if !a.is_zero() && !b.is_zero() {
                                acc = &acc + &(a * b);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// Replaces one entry without revalidating homogeneity (used for mutation tests).
    pub fn with_entry_unchecked(&self, row: usize, col: usize, p: Polynomial<K>) -> Self {
        let mut m = self.clone();
        m.entries[row][col] = p;
        m
    }

    /// Submatrix determinant on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial<K> {
        let m: Vec<Vec<Polynomial<K>>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect();
        determinant(&self.ring, m)
    }

    /// Number of `m × m` minors.
    pub fn minor_count(&self, m: usize) -> u128 {
        binomial(self.nrows(), m) * binomial(self.ncols(), m)
    }

    /// All nonzero `m × m` minors, rows outer and columns inner, both in lexicographic subset order.
    pub fn minors(&self, m: usize) -> Vec<Polynomial<K>> {
        if m == 0 {
            return vec![Polynomial::one(&self.ring)];
        }
        let mut out = Vec::new();
        for rows in subsets(self.nrows(), m) {
            for cols in subsets(self.ncols(), m) {
                let d = self.minor(&rows, &cols);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    /// `I_m(φ)`: the unit ideal for `m ≤ 0`, zero beyond the matrix size.
    pub fn minors_ideal(&self, m: i64) -> Ideal<K> {
        if m <= 0 {
            return Ideal::unit(&self.ring);
        }
        let m = m as usize;
        if m > self.nrows().min(self.ncols()) {
            return Ideal::zero(&self.ring);
        }
        Ideal::new(&self.ring, self.minors(m))
    }

    /// Rank of the matrix of values at a random point.
    pub fn evaluated_rank<R: rand::Rng>(&self, rng: &mut R) -> usize {
        let k = self.ring.field();
        let point: Vec<K::Elem> = (0..self.ring.nvars()).map(|_| k.random(rng)).collect();
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(c, p)| (c, p.eval(&point)))
                    .filter(|(_, v)| !k.is_zero(v))
                    .collect()
            })
            .collect();
        k.rank(rows, self.ncols())
    }

    /// A certified lower bound on the rank: the best of `trials` random evaluations.
    ///
    /// A nonzero numeric minor at a point proves the symbolic minor is nonzero.
    pub fn rank_lower_bound(&self, seed: u64, trials: usize) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = self.nrows().min(self.ncols());
        let mut best = 0;
        for _ in 0..trials.max(1) {
            best = best.max(self.evaluated_rank(&mut rng));
            if best == full {
                break;
            }
        }
        best
    }

    /// Exact rank: evaluation screening for a lower bound, then proof that
    /// every larger minor vanishes (by expansion when there are at most
    /// `minor_cap` of them, else by fraction-free elimination).
    pub fn rank(&self, seed: u64, minor_cap: usize) -> Result<usize> {
        let lb = self.rank_lower_bound(seed, 2);
        if lb == self.nrows().min(self.ncols()) {
            return Ok(lb);
        }
        if self.minor_count(lb + 1) <= minor_cap as u128 {
            for rows in subsets(self.nrows(), lb + 1) {
                for cols in subsets(self.ncols(), lb + 1) {
                    if !self.minor(&rows, &cols).is_zero() {
                        // screening missed it; fall back to elimination
                        return self.symbolic_rank(minor_cap);
                    }
                }
            }
            return Ok(lb);
        }
        self.symbolic_rank(minor_cap)
    }

    /// Rank over the fraction field by fraction-free elimination on polynomials.
    fn symbolic_rank(&self, term_cap: usize) -> Result<usize> {
        let limit = term_cap.max(1) * 50;
        let mut a = self.entries.clone();
        let (m, n) = (self.nrows(), self.ncols());
        let mut prev = Polynomial::one(&self.ring);
        let mut rank = 0;
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].len()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..m {
                for j in col + 1..n {
                    let v = &(&a[i][j] * &a[rank][col]) - &(&a[i][col] * &a[rank][j]);
                    let v = v.exact_div(&prev).expect("fraction-free elimination divides exactly");
                    if v.len() > limit {
                        return Err(Error::BudgetExceeded(format!(
                            "symbolic rank: intermediate entry exceeded {limit} terms"
                        )));
                    }
                    a[i][j] = v;
                }
                a[i][col] = Polynomial::zero(&self.ring);
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        Ok(rank)
    }
}

/// Determinant by fraction-free elimination with exact polynomial division.
pub fn determinant<K: Field>(ring: &Arc<PolyRing<K>>, mut a: Vec<Vec<Polynomial<K>>>) -> Polynomial<K> {
    let n = a.len();
    match n {
        0 => return Polynomial::one(ring),
        1 => return a[0][0].clone(),
        2 => return &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]),
        _ => {}
    }
    let mut sign = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        let Some(p) = (k..n).filter(|&r| !a[r][k].is_zero()).min_by_key(|&r| a[r][k].len()) else {
            return Polynomial::zero(ring);
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev).expect("fraction-free elimination divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All `k`-subsets of `0..n` in colexicographic order.
pub(crate) fn subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = subsets(n, k);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}
