//! Depth of `(I_r(M) : B^∞)` without expanding every minor.
//!
//! `V(I_r(M) : B^∞)` is the closure of `{rank M < r} ∖ V(B)`, and the
//! complement of `V(B)` is covered by the charts `D(v_1 ⋯ v_k)` picking one
//! variable from each irrelevant factor. On each chart the rank locus is
//! split recursively into locally closed pieces:
//!
//! * a unit entry is pivoted away (`r` drops by one);
//! * otherwise a chosen entry `e` splits the piece into `D(e)` and `V(e)`,
//!   where monomial entries split along their variables;
//! * pieces with `r = 1`, or with few `r`-minors, compute their minors directly.
//!
//! Monomials in variables already known to be nonzero are divided out of
//! rows, columns and relations as the recursion proceeds; without this the
//! fraction-free pivots inflate the entries by large unit powers.
//!
//! After a fraction-free pivot the matrix is divided by the previous pivot
//! whenever that division is exact (Bareiss), which keeps degrees linear.
//!
//! Each leaf's dimension is the Krull dimension of `J + ⟨u·h - 1⟩`, with `h`
//! the product of the units. Only the smallest codimension matters, so a
//! closed piece whose own dimension cannot beat the best leaf found so far
//! (on any chart) is skipped, as is an empty one. When the chosen degrees form a basis of the
//! grading group the torus action lets us set the chart variables to 1,
//! which lowers the ambient dimension by `k`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::{determinant, subsets};
use crate::degree::MultiDegree;
use crate::error::Result;
use crate::field::Field;
use crate::groebner::{Budget, DepthValue, Ideal};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingSpec, VariableSpec};

type P<K> = Polynomial<K>;

/// Limits for the chart recursion.
#[derive(Clone, Copy, Debug)]
pub struct LocusConfig {
    /// Largest number of `r`-minors expanded at a leaf. Branching further is
    /// usually cheaper than one Gröbner basis of many large minors.
    pub leaf_minors: usize,
    pub budget: Budget,
}

impl Default for LocusConfig {
    fn default() -> Self {
        LocusConfig {
            leaf_minors: 1,
            budget: Budget::default(),
        }
    }
}

/// Whether the integer vectors are linearly independent (fraction-free elimination).
fn independent(vectors: &[MultiDegree]) -> bool {
    let rows: Vec<Vec<num_bigint::BigInt>> = vectors
        .iter()
        .map(|v| v.0.iter().map(|&x| num_bigint::BigInt::from(x)).collect())
        .collect();
    crate::linalg::bareiss_rank(rows) == vectors.len()
}

struct Chart<K: Field> {
    /// Working ring: the variables not set to 1, all of degree 1.
    ring: Arc<PolyRing<K>>,
    /// `ring` plus one extra variable for localization.
    ext: Arc<PolyRing<K>>,
    cfg: LocusConfig,
}

fn plain_ring<K: Field>(field: &K, names: &[String]) -> Result<Arc<PolyRing<K>>> {
    let spec = RingSpec {
        field: field.spec(),
        variables: names
            .iter()
            .map(|n| VariableSpec {
                name: n.clone(),
                degree: MultiDegree(vec![1]),
            })
            .collect(),
        irrelevant: vec![names.to_vec()],
        positivity: Some(vec![1]),
    };
    PolyRing::new(spec, field.clone())
}

#[derive(Clone)]
struct Node<K: Field> {
    m: Vec<Vec<P<K>>>,
    r: i64,
    relations: Vec<P<K>>,
    units: Vec<P<K>>,
    unit_vars: Vec<bool>,
    /// The last non-constant pivot, a unit on this piece.
    prev_pivot: Option<P<K>>,
}

/// Smallest codimension found so far across all charts.
struct Bound<'a> {
    ambient: usize,
    best: &'a AtomicUsize,
}

impl Bound<'_> {
    fn record(&self, dim: Option<usize>) {
        if let Some(d) = dim {
            self.best.fetch_min(self.ambient - d, Ordering::Relaxed);
        }
    }

    /// Whether a piece of dimension at most `ub` could lower the codimension.
    fn could_improve(&self, ub: usize) -> bool {
        self.ambient - ub < self.best.load(Ordering::Relaxed)
    }
}

impl<K: Field> Chart<K> {
    fn new(field: &K, names: &[String], cfg: LocusConfig) -> Result<Self> {
        let ring = plain_ring(field, names)?;
        let mut ext_names = names.to_vec();
        let mut aux = "u".to_string();
        while ext_names.contains(&aux) {
            aux.push('_');
        }
        ext_names.push(aux);
        let ext = plain_ring(field, &ext_names)?;
        Ok(Chart { ring, ext, cfg })
    }

    fn is_unit_entry(&self, p: &P<K>, unit_vars: &[bool]) -> bool {
        p.len() == 1 && p.terms()[0].0.support().iter().all(|&v| unit_vars[v])
    }

    /// The largest monomial in the unit variables dividing every term of every polynomial.
    fn unit_content<'p>(&self, ps: impl IntoIterator<Item = &'p P<K>>, unit_vars: &[bool]) -> Option<Monomial> {
        let mut g: Option<Monomial> = None;
        for p in ps {
            for (m, _) in p.terms() {
                g = Some(match g {
                    None => m.clone(),
                    Some(g) => g.gcd(m),
                });
            }
        }
        let mut g = g?;
        for (v, &unit) in unit_vars.iter().enumerate() {
            if !unit {
                g.set_exp(v, 0);
            }
        }
        (!g.is_one()).then_some(g)
    }

    fn divide(&self, p: &P<K>, m: &Monomial) -> P<K> {
        Polynomial::from_terms(&self.ring, p.terms().iter().map(|(t, c)| (m.quotient_of(t), c.clone())))
    }

    /// Divides a polynomial by its unit-monomial content.
    fn strip(&self, p: P<K>, unit_vars: &[bool]) -> P<K> {
        match self.unit_content([&p], unit_vars) {
            Some(m) => self.divide(&p, &m),
            None => p,
        }
    }

    /// Divides rows and columns by their unit-monomial contents, which keeps the rank on the piece.
    fn strip_matrix(&self, m: &mut [Vec<P<K>>], unit_vars: &[bool]) {
        for row in m.iter_mut() {
            if let Some(c) = self.unit_content(row.iter(), unit_vars) {
                for p in row.iter_mut() {
                    *p = self.divide(p, &c);
                }
            }
        }
        let cols = m.first().map_or(0, |r| r.len());
        for j in 0..cols {
            if let Some(c) = self.unit_content(m.iter().map(|row| &row[j]), unit_vars) {
                for row in m.iter_mut() {
                    row[j] = self.divide(&row[j], &c);
                }
            }
        }
    }

    fn extend(&self, p: &P<K>) -> P<K> {
        Polynomial::from_terms(&self.ext, p.terms().iter().map(|(m, c)| (m.extend(1), c.clone())))
    }

    /// Dimension of `V(relations) ∩ V(extra) ∩ D(∏ units)`, or `None` when empty.
    fn piece_dim(&self, relations: &[P<K>], extra: Vec<P<K>>, units: &[P<K>]) -> Result<Option<usize>> {
        let n = self.ring.nvars();
        let mut h = Polynomial::one(&self.ext);
        for u in units {
            h = &h * &self.extend(u);
        }
        let u = Polynomial::var(&self.ext, n);
        let loc = &(&u * &h) - &Polynomial::one(&self.ext);
        let gens = relations
            .iter()
            .chain(extra.iter())
            .map(|p| self.extend(p))
            .chain(std::iter::once(loc));
        let ideal = Ideal::new(&self.ext, gens);
        if ideal.is_unit(&self.cfg.budget)? {
            return Ok(None);
        }
        // the localization variable is algebraic over the rest, so no correction is needed
        Ok(Some(ideal.krull_dimension(&self.cfg.budget)?))
    }

    /// Like [`Chart::piece_dim`], but skips the localization when the closed
    /// set alone is too small to lower the codimension.
    fn leaf_dim(&self, relations: &[P<K>], extra: Vec<P<K>>, units: &[P<K>], bound: &Bound) -> Result<Option<usize>> {
        if !units.is_empty() {
            let ideal = Ideal::new(&self.ring, relations.iter().chain(extra.iter()).cloned());
            if ideal.is_unit(&self.cfg.budget)? || !bound.could_improve(ideal.krull_dimension(&self.cfg.budget)?) {
                return Ok(None);
            }
        }
        self.piece_dim(relations, extra, units)
    }

    fn minors(&self, m: &[Vec<P<K>>], r: usize) -> Vec<P<K>> {
        let mut out = Vec::new();
        for rows in subsets(m.len(), r) {
            for cols in subsets(m[0].len(), r) {
                let sub = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
                    .collect();
                let d = determinant(&self.ring, sub);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Removes the pivot row and column, scaling so the rank drops by exactly one on `D(e)`.
    fn pivot(&self, m: &[Vec<P<K>>], a: usize, b: usize) -> Vec<Vec<P<K>>> {
        let e = &m[a][b];
        let k = self.ring.field();
        let constant = e.is_unit();
        let inv = constant.then(|| k.inv(&e.terms()[0].1));
        let mut out = Vec::with_capacity(m.len() - 1);
        for (i, row) in m.iter().enumerate() {
            if i == a {
                continue;
            }
            let mut new_row = Vec::with_capacity(row.len() - 1);
            for (j, x) in row.iter().enumerate() {
                if j == b {
                    continue;
                }
                let cross = if row[b].is_zero() || m[a][j].is_zero() {
                    None
                } else {
                    Some(&row[b] * &m[a][j])
                };
                let v = match (&inv, cross) {
                    (_, None) if constant => x.clone(),
                    (_, None) => e * x,
                    (Some(c), Some(cr)) => x - &cr.scale(c),
                    (None, Some(cr)) => &(e * x) - &cr,
                };
                new_row.push(v);
            }
            out.push(new_row);
        }
        out
    }

    /// Pivots on `(a, b)` and divides by the previous pivot when that is exact.
    fn pivot_node(&self, node: &Node<K>, a: usize, b: usize) -> (Vec<Vec<P<K>>>, Option<P<K>>) {
        let e = &node.m[a][b];
        let mut m = self.pivot(&node.m, a, b);
        if e.is_unit() {
            return (m, node.prev_pivot.clone());
        }
        if let Some(prev) = node.prev_pivot.as_ref().filter(|p| !p.is_unit()) {
            let divided: Option<Vec<Vec<P<K>>>> = m
                .iter()
                .map(|row| row.iter().map(|x| x.exact_div(prev)).collect())
                .collect();
            if let Some(d) = divided {
                m = d;
            }
        }
        (m, Some(e.clone()))
    }

    fn substitute_zero(&self, p: &P<K>, v: usize) -> P<K> {
        Polynomial::from_terms(
            &self.ring,
            p.terms().iter().filter(|(m, _)| m.exp(v) == 0).cloned(),
        )
    }

    fn explore(&self, node: Node<K>, bound: &Bound) -> Result<Option<usize>> {
        let dim = self.explore_inner(node, bound)?;
        bound.record(dim);
        Ok(dim)
    }

    /// Explores a piece cut out by new relations unless it is empty or too small to matter.
    ///
    /// Entries and relations are first reduced modulo the relations, which
    /// vanish on the piece.
    fn explore_closed(&self, mut node: Node<K>, bound: &Bound) -> Result<Option<usize>> {
        let gb = Ideal::new(&self.ring, node.relations.clone()).groebner(&self.cfg.budget)?;
        if gb.is_unit() {
            return Ok(None);
        }
        node.relations = gb.elements();
        for row in node.m.iter_mut() {
            for p in row.iter_mut() {
                if !p.is_zero() {
                    *p = gb.normal_form(p);
                }
            }
        }
        match self.piece_dim(&node.relations, vec![], &node.units)? {
            None => Ok(None),
            Some(ub) if !bound.could_improve(ub) => Ok(None),
            Some(_) => self.explore(node, bound),
        }
    }

    fn explore_inner(&self, mut node: Node<K>, bound: &Bound) -> Result<Option<usize>> {
        if node.r <= 0 {
            return Ok(None);
        }
        if node.relations.iter().any(|p| self.is_unit_entry(p, &node.unit_vars)) {
            return Ok(None);
        }
        // drop zero rows and columns
        node.m.retain(|row| row.iter().any(|p| !p.is_zero()));
        if let Some(first) = node.m.first() {
            let keep: Vec<usize> = (0..first.len())
                .filter(|&j| node.m.iter().any(|row| !row[j].is_zero()))
                .collect();
            for row in node.m.iter_mut() {
                *row = keep.iter().map(|&j| row[j].clone()).collect();
            }
        }
        if node.unit_vars.iter().any(|&u| u) {
            let unit_vars = node.unit_vars.clone();
            let mut relations: Vec<P<K>> = Vec::with_capacity(node.relations.len());
            for p in std::mem::take(&mut node.relations) {
                let p = self.strip(p, &unit_vars);
                if !relations.contains(&p) {
                    relations.push(p);
                }
            }
            node.relations = relations;
            self.strip_matrix(&mut node.m, &unit_vars);
        }
        let rows = node.m.len();
        let cols = node.m.first().map_or(0, |r| r.len());
        let r = node.r as usize;
        if rows.min(cols) < r {
            return self.leaf_dim(&node.relations, vec![], &node.units, bound);
        }

        // pivot on a unit entry when there is one
        let unit = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let p = &node.m[i][j];
                !p.is_zero()
                    && (self.is_unit_entry(p, &node.unit_vars) || node.units.iter().any(|u| is_scalar_multiple(p, u)))
            })
            .min_by_key(|&(i, j)| {
                let row_fill = node.m[i].iter().filter(|p| !p.is_zero()).count();
                let col_fill = node.m.iter().filter(|row| !row[j].is_zero()).count();
                (row_fill - 1) * (col_fill - 1)
            });
        if let Some((a, b)) = unit {
            let (m, prev_pivot) = self.pivot_node(&node, a, b);
            return self.explore_inner(
                Node {
                    m,
                    r: node.r - 1,
                    prev_pivot,
                    ..node
                },
                bound,
            );
        }

        let count = crate::complex::binomial(rows, r) * crate::complex::binomial(cols, r);
        if r == 1 || count <= self.cfg.leaf_minors as u128 {
            let minors = self.minors(&node.m, r).into_iter().map(|p| self.strip(p, &node.unit_vars)).collect();
            return self.leaf_dim(&node.relations, minors, &node.units, bound);
        }

        // split on a monomial entry with the fewest non-unit variables, else the shortest entry
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..rows {
            for j in 0..cols {
                let p = &node.m[i][j];
                if p.len() == 1 {
                    let free = p.terms()[0].0.support().iter().filter(|&&v| !node.unit_vars[v]).count();
                    if best.map_or(true, |(_, _, f)| free < f) {
                        best = Some((i, j, free));
                    }
                }
            }
        }
        let mut results = Vec::new();
        match best {
            Some((a, b, _)) => {
                let free: Vec<usize> = node.m[a][b].terms()[0]
                    .0
                    .support()
                    .into_iter()
                    .filter(|&v| !node.unit_vars[v])
                    .collect();
                // D(v) for every free variable: the entry becomes a unit
                let mut open = node.clone();
                for &v in &free {
                    open.unit_vars[v] = true;
                    open.units.push(Polynomial::var(&self.ring, v));
                }
                (open.m, open.prev_pivot) = self.pivot_node(&node, a, b);
                open.r -= 1;
                results.push(self.explore(open, bound)?);
                // V(v) for each free variable
                for &v in &free {
                    let units: Vec<P<K>> = node.units.iter().map(|p| self.substitute_zero(p, v)).collect();
                    if units.iter().any(|p| p.is_zero()) {
                        continue;
                    }
                    let mut relations: Vec<P<K>> = node
                        .relations
                        .iter()
                        .map(|p| self.substitute_zero(p, v))
                        .filter(|p| !p.is_zero())
                        .collect();
                    relations.push(Polynomial::var(&self.ring, v));
                    let m = node
                        .m
                        .iter()
                        .map(|row| row.iter().map(|p| self.substitute_zero(p, v)).collect())
                        .collect();
                    results.push(self.explore_closed(
                        Node {
                            m,
                            r: node.r,
                            relations,
                            units,
                            unit_vars: node.unit_vars.clone(),
                            prev_pivot: None,
                        },
                        bound,
                    )?);
                }
            }
            None => {
                let (a, b) = (0..rows)
                    .flat_map(|i| (0..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| !node.m[i][j].is_zero())
                    .min_by_key(|&(i, j)| node.m[i][j].len())
                    .expect("a nonzero entry exists");
                let e = node.m[a][b].clone();
                let mut open = node.clone();
                open.units.push(e.clone());
                (open.m, open.prev_pivot) = self.pivot_node(&node, a, b);
                open.r -= 1;
                results.push(self.explore(open, bound)?);
                let mut closed = node;
                closed.relations.push(e);
                closed.m[a][b] = Polynomial::zero(&self.ring);
                closed.prev_pivot = None;
                results.push(self.explore_closed(closed, bound)?);
            }
        }
        Ok(results.into_iter().flatten().max())
    }
}

fn is_scalar_multiple<K: Field>(p: &P<K>, u: &P<K>) -> bool {
    p.len() == u.len() && p.exact_div(u).is_some_and(|q| q.is_unit())
}

/// `depth((I_r(M) : B^∞))` for a matrix of homogeneous polynomials, computed chart by chart.
pub fn saturated_minors_depth<K: Field>(
    ring: &Arc<PolyRing<K>>,
    m: &[Vec<Polynomial<K>>],
    r: i64,
    cfg: &LocusConfig,
) -> Result<DepthValue> {
    if r <= 0 {
        return Ok(DepthValue::Infinity);
    }
    let n = ring.nvars();
    let factors = ring.factors();
    let mut charts: Vec<Vec<usize>> = vec![vec![]];
    for f in factors {
        charts = charts
            .into_iter()
            .flat_map(|c| {
                f.iter().map(move |&v| {
                    let mut c = c.clone();
                    c.push(v);
                    c
                })
            })
            .collect();
    }
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<Result<(usize, Option<usize>)>> = charts
        .par_iter()
        .map(|chosen| {
            let mut chosen = chosen.clone();
            chosen.sort_unstable();
            chosen.dedup();
            let degrees: Vec<MultiDegree> = chosen.iter().map(|&v| ring.var_degrees()[v].clone()).collect();
            let slice = chosen.len() == ring.grading_rank() && chosen.len() < n && independent(&degrees);
            let keep: Vec<usize> = if slice {
                (0..n).filter(|v| !chosen.contains(v)).collect()
            } else {
                (0..n).collect()
            };
            let names: Vec<String> = keep.iter().map(|&v| ring.names()[v].clone()).collect();
            let chart = Chart::new(ring.field(), &names, *cfg)?;
            let localize = |p: &Polynomial<K>| -> Polynomial<K> {
                Polynomial::from_terms(
                    &chart.ring,
                    p.terms().iter().map(|(mono, c)| (mono.select(&keep), c.clone())),
                )
            };
            let matrix: Vec<Vec<P<K>>> = m.iter().map(|row| row.iter().map(localize).collect()).collect();
            let mut unit_vars = vec![false; keep.len()];
            let mut units = Vec::new();
            if !slice {
                for &v in &chosen {
                    let local = keep.iter().position(|&k| k == v).expect("kept");
                    unit_vars[local] = true;
                    units.push(Polynomial::var(&chart.ring, local));
                }
            }
            let bound = Bound {
                ambient: keep.len(),
                best: &best,
            };
            let dim = chart.explore(
                Node {
                    m: matrix,
                    r,
                    relations: vec![],
                    units,
                    unit_vars,
                    prev_pivot: None,
                },
                &bound,
            )?;
            Ok((keep.len(), dim))
        })
        .collect();
    let mut best: Option<usize> = None;
    for res in results {
        let (ambient, dim) = res?;
        if let Some(d) = dim {
            let codim = ambient - d;
            best = Some(best.map_or(codim, |b: usize| b.min(codim)));
        }
    }
    Ok(match best {
        None => DepthValue::Infinity,
        Some(c) => DepthValue::Finite(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::GradedMatrix;
    use crate::field::PrimeField;
    use crate::presets::preset;

    fn direct(phi: &GradedMatrix<PrimeField>, r: i64) -> DepthValue {
        let b = Budget::default();
        phi.minors_ideal(r).saturate_irrelevant(&b).unwrap().depth(&b).unwrap()
    }

    fn charts(phi: &GradedMatrix<PrimeField>, r: i64) -> DepthValue {
        saturated_minors_depth(phi.ring(), phi.rows(), r, &LocusConfig::default()).unwrap()
    }

    #[test]
    fn agrees_with_direct_saturation() {
        for name in ["twisted-cubic", "generic-2x4"] {
            let phi = preset(name).unwrap().build(PrimeField::default()).unwrap().phi;
            for r in 1..=2 {
                assert_eq!(charts(&phi, r), direct(&phi, r), "{name} r={r}");
            }
        }
    }

    #[test]
    fn leaf_size_does_not_matter() {
        let phi = preset("twisted-cubic").unwrap().build(PrimeField::default()).unwrap().phi;
        for leaf_minors in [1, 6, 1000] {
            let cfg = LocusConfig {
                leaf_minors,
                ..Default::default()
            };
            let d = saturated_minors_depth(phi.ring(), phi.rows(), 2, &cfg).unwrap();
            assert_eq!(d, DepthValue::Finite(3), "leaf size {leaf_minors}");
        }
    }

    #[test]
    fn trivial_ranks() {
        let phi = preset("twisted-cubic").unwrap().build(PrimeField::default()).unwrap().phi;
        assert_eq!(charts(&phi, 0), DepthValue::Infinity);
        assert_eq!(charts(&phi, 3), DepthValue::Finite(0));
    }
}
