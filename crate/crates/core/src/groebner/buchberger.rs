//! Buchberger's algorithm on raw term lists.
//!
//! Pairs are selected by smallest lcm (the normal strategy) and pruned with
//! the Gebauer-Möller criteria. Every S-polynomial is fully reduced.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::MonomialOrder;
use crate::monomial::Monomial;
use crate::poly::{sub_scaled, Terms};

/// Limits on a single Gröbner basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of S-polynomials reduced.
    pub max_pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 500_000 }
    }
}

impl Budget {
    pub fn pairs(max_pairs: usize) -> Self {
        Budget { max_pairs }
    }
}

struct Element<E> {
    terms: Terms<E>,
    lm: Monomial,
    mask: u64,
    active: bool,
}

impl<E: Clone> Element<E> {
    fn new(terms: Terms<E>) -> Self {
        let lm = terms[0].0.clone();
        Element {
            mask: lm.support_mask(),
            lm,
            terms,
            active: true,
        }
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn find_reducer<'a, E>(m: &Monomial, basis: &'a [Element<E>], only_active: bool) -> Option<&'a Element<E>> {
    let mask = m.support_mask();
    basis
        .iter()
        .find(|g| (!only_active || g.active) && g.mask & !mask == 0 && g.lm.divides(m))
}

fn make_monic<K: Field>(k: &K, mut p: Terms<K::Elem>) -> Terms<K::Elem> {
    if let Some((_, c)) = p.first() {
        if !k.is_one(c) {
            let inv = k.inv(c);
            for (_, a) in p.iter_mut() {
                *a = k.mul(a, &inv);
            }
        }
    }
    p
}

fn reduce_with<K: Field>(
    k: &K,
    order: &MonomialOrder,
    mut p: Terms<K::Elem>,
    basis: &[Element<K::Elem>],
    only_active: bool,
) -> Terms<K::Elem> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < p.len() {
        match find_reducer(&p[i].0, basis, only_active) {
            Some(g) => {
                let q = g.lm.quotient_of(&p[i].0);
                let c = p[i].1.clone();
                p = sub_scaled(k, order, &p[i..], &c, &q, &g.terms);
                i = 0;
            }
            None => {
                out.push(p[i].clone());
                i += 1;
            }
        }
    }
    out
}

/// Remainder of `p` on division by `basis`, with no term divisible by any leading monomial.
pub fn normal_form<K: Field>(k: &K, order: &MonomialOrder, p: &[(Monomial, K::Elem)], basis: &[Terms<K::Elem>]) -> Terms<K::Elem> {
    let elems: Vec<Element<K::Elem>> = basis
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| Element::new(make_monic(k, g.clone())))
        .collect();
    reduce_with(k, order, p.to_vec(), &elems, false)
}

fn s_polynomial<K: Field>(k: &K, order: &MonomialOrder, f: &Element<K::Elem>, g: &Element<K::Elem>, lcm: &Monomial) -> Terms<K::Elem> {
    let a = f.lm.quotient_of(lcm);
    let b = g.lm.quotient_of(lcm);
    let fa: Terms<K::Elem> = f.terms[1..].iter().map(|(m, c)| (m.mul(&a), c.clone())).collect();
    sub_scaled(k, order, &fa, &k.one(), &b, &g.terms[1..])
}

/// Inserts `h` (index `hi`) and updates the pair list with the Gebauer-Möller criteria.
fn update<E>(order: &MonomialOrder, pairs: &mut Vec<Pair>, basis: &mut [Element<E>], hi: usize) {
    let h_lm = basis[hi].lm.clone();
    let candidates: Vec<(usize, Monomial, bool)> = (0..hi)
        .filter(|&g| basis[g].active)
        .map(|g| (g, h_lm.lcm(&basis[g].lm), h_lm.is_coprime(&basis[g].lm)))
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (idx, (g, lcm, coprime)) in candidates.iter().enumerate() {
        let dominated = !coprime
            && (candidates[idx + 1..].iter().any(|(_, l2, _)| l2.divides(lcm))
                || kept.iter().any(|(_, l2, _)| l2.divides(lcm)));
        if !dominated {
            kept.push((*g, lcm.clone(), *coprime));
        }
    }

    // old pairs made redundant by h
    pairs.retain(|p| {
        !(h_lm.divides(&p.lcm) && h_lm.lcm(&basis[p.i].lm) != p.lcm && h_lm.lcm(&basis[p.j].lm) != p.lcm)
    });

    let start = pairs.len();
    for (g, lcm, coprime) in kept {
        if !coprime {
            pairs.push(Pair { i: g, j: hi, lcm });
        }
    }
    if pairs.len() > start {
        // keep the list sorted with the smallest lcm at the end
        pairs.sort_by(|a, b| order.cmp(&b.lcm, &a.lcm));
    }

    for g in 0..hi {
        if basis[g].active && h_lm.divides(&basis[g].lm) {
            basis[g].active = false;
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
///
/// The result is monic, interreduced and sorted by increasing leading monomial.
/// A unit ideal returns `[1]`.
pub fn groebner_basis<K: Field>(k: &K, order: &MonomialOrder, gens: &[Terms<K::Elem>], budget: &Budget) -> Result<Vec<Terms<K::Elem>>> {
    let nvars = order.nvars();
    let unit = || vec![vec![(Monomial::one(nvars), k.one())]];
    let mut basis: Vec<Element<K::Elem>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Terms<K::Elem>> = gens
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| {
            let mut g = g.clone();
            g.sort_by(|a, b| order.cmp(&b.0, &a.0));
            g
        })
        .collect();
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for g in input {
        let r = reduce_with(k, order, g, &basis, true);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(unit());
        }
        basis.push(Element::new(make_monic(k, r)));
        let hi = basis.len() - 1;
        update(order, &mut pairs, &mut basis, hi);
    }

    let mut processed = 0usize;
    while let Some(pair) = pairs.pop() {
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::BudgetExceeded(format!(
                "Gröbner basis exceeded {} S-pair reductions",
                budget.max_pairs
            )));
        }
        let s = s_polynomial(k, order, &basis[pair.i], &basis[pair.j], &pair.lcm);
        let r = reduce_with(k, order, s, &basis, true);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(unit());
        }
        basis.push(Element::new(make_monic(k, r)));
        let hi = basis.len() - 1;
        update(order, &mut pairs, &mut basis, hi);
    }

    // minimalize, then interreduce tails
    let mut minimal: Vec<Element<K::Elem>> = Vec::new();
    let mut active: Vec<Element<K::Elem>> = basis.into_iter().filter(|e| e.active).collect();
    active.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
    for e in active {
        if !minimal.iter().any(|m| m.lm.divides(&e.lm)) {
            minimal.push(e);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        minimal[idx].active = false;
        let tail = minimal[idx].terms[1..].to_vec();
        let mut reduced = vec![minimal[idx].terms[0].clone()];
        reduced.extend(reduce_with(k, order, tail, &minimal, true));
        minimal[idx].active = true;
        out.push(reduced);
    }
    Ok(out)
}

/// Checks Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<K: Field>(k: &K, order: &MonomialOrder, basis: &[Terms<K::Elem>]) -> bool {
    let elems: Vec<Element<K::Elem>> = basis.iter().map(|g| Element::new(make_monic(k, g.clone()))).collect();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let lcm = elems[i].lm.lcm(&elems[j].lm);
            let s = s_polynomial(k, order, &elems[i], &elems[j], &lcm);
            if !reduce_with(k, order, s, &elems, false).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn linear_ideal() {
        let k = PrimeField::default();
        let order = MonomialOrder::grevlex(vec![1, 1]);
        // <x0, x0 + x1>
        let gens = vec![vec![(m(&[1, 0]), 1)], vec![(m(&[1, 0]), 1), (m(&[0, 1]), 1)]];
        let gb = groebner_basis(&k, &order, &gens, &Budget::default()).unwrap();
        assert_eq!(gb, vec![vec![(m(&[0, 1]), 1)], vec![(m(&[1, 0]), 1)]]);
    }

    #[test]
    fn principal_binomial() {
        let k = PrimeField::default();
        let order = MonomialOrder::grevlex(vec![1, 1, 1, 1]);
        // x0*y1 - x1*y0 with variables x0 x1 y0 y1
        let f = vec![(m(&[1, 0, 0, 1]), 1), (m(&[0, 1, 1, 0]), k.from_i64(-1))];
        let gb = groebner_basis(&k, &order, &[f], &Budget::default()).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].len(), 2);
        assert!(is_groebner_basis(&k, &order, &gb));
    }

    #[test]
    fn unit_and_budget() {
        let k = PrimeField::default();
        let order = MonomialOrder::grevlex(vec![1, 1]);
        // x*y - 1 and x: unit
        let gens = vec![
            vec![(m(&[1, 1]), 1), (m(&[0, 0]), k.from_i64(-1))],
            vec![(m(&[1, 0]), 1)],
        ];
        let gb = groebner_basis(&k, &order, &gens, &Budget::default()).unwrap();
        assert_eq!(gb, vec![vec![(m(&[0, 0]), 1)]]);
        // twisted cubic needs some pairs
        let cubic = vec![
            vec![(m(&[0, 2, 0, 0]), 1), (m(&[1, 0, 1, 0]), k.from_i64(-1))],
            vec![(m(&[0, 1, 1, 0]), 1), (m(&[1, 0, 0, 1]), k.from_i64(-1))],
            vec![(m(&[0, 0, 2, 0]), 1), (m(&[0, 1, 0, 1]), k.from_i64(-1))],
        ];
        let order4 = MonomialOrder::elimination(vec![0], vec![1, 1, 1, 1]);
        let err = groebner_basis(&k, &order4, &cubic, &Budget::pairs(0));
        assert!(matches!(err, Err(Error::BudgetExceeded(_))));
        let gb = groebner_basis(&k, &order4, &cubic, &Budget::default()).unwrap();
        assert!(is_groebner_basis(&k, &order4, &gb));
    }
}
