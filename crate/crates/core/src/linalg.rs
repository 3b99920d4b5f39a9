//! Exact linear algebra over a [`Field`] on sparse vectors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::Field;

/// Sparse vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a - c * b` for sparse vectors.
fn axpy<K: Field>(k: &K, a: &[(usize, K::Elem)], c: &K::Elem, b: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, k.neg(&k.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = k.sub(&a[i].1, &k.mul(c, &b[j].1));
            if !k.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts entries by index, merging duplicates and dropping zeros.
pub fn normalize_sparse<K: Field>(k: &K, mut v: SparseVec<K::Elem>) -> SparseVec<K::Elem> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<K::Elem> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = k.add(acc, &c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !k.is_zero(c));
    out
}

/// A row space kept in echelon form, one normalized pivot row per leading index.
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    field: K,
    pivots: HashMap<usize, SparseVec<K::Elem>>,
}

impl<K: Field> Echelon<K> {
    pub fn new(field: K) -> Self {
        Echelon {
            field,
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` until its leading index is not a pivot (or it vanishes).
    pub fn reduce(&self, mut v: SparseVec<K::Elem>) -> SparseVec<K::Elem> {
        while let Some((lead, c)) = v.first() {
            match self.pivots.get(lead) {
                Some(p) => {
                    let c = c.clone();
                    v = axpy(&self.field, &v, &c, p);
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<K::Elem>) -> bool {
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some((lead, c)) => {
                let inv = self.field.inv(c);
                let lead = *lead;
                let row = r.into_iter().map(|(i, a)| (i, self.field.mul(&a, &inv))).collect();
                self.pivots.insert(lead, row);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec<K::Elem>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank by incremental sparse elimination.
pub fn sparse_rank<K: Field>(k: &K, rows: Vec<SparseVec<K::Elem>>, _ncols: usize) -> usize {
    let mut e = Echelon::new(k.clone());
    for r in rows {
        e.insert(normalize_sparse(k, r));
    }
    e.rank()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                let v = (&a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Basis of the kernel of the map whose columns are `cols` (each a sparse vector of length `nrows`).
///
/// Kernel vectors are indexed by column position.
pub fn kernel<K: Field>(k: &K, cols: &[SparseVec<K::Elem>], nrows: usize) -> Vec<SparseVec<K::Elem>> {
    // augment each column with a unit tag placed after the row indices
    let mut e = Echelon::new(k.clone());
    let mut out = Vec::new();
    for (idx, c) in cols.iter().enumerate() {
        let mut v = normalize_sparse(k, c.clone());
        v.push((nrows + idx, k.one()));
        let r = e.reduce(v);
        match r.first() {
            Some((lead, _)) if *lead >= nrows => {
                out.push(r.into_iter().map(|(i, c)| (i - nrows, c)).collect());
            }
            Some(_) => {
                e.insert(r);
            }
            None => unreachable!("tag entry keeps the vector nonzero"),
        }
    }
    out
}
