//! Random problems shared by the acceptance and property suites.

#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use virtual_en::degree::MultiDegree;
use virtual_en::field::{FieldSpec, PrimeField};
use virtual_en::monomial::Monomial;
use virtual_en::problem::{MapSpec, ProblemFile};
use virtual_en::ring::{PolyRing, RingSpec};

/// `P^1 × P^a` as `(x0, x1; y0, …, ya)`.
pub fn p1_times(a: usize) -> RingSpec {
    let mut vars: Vec<(String, [i64; 2])> = (0..2).map(|i| (format!("x{i}"), [1, 0])).collect();
    vars.extend((0..=a).map(|i| (format!("y{i}"), [0, 1])));
    let named: Vec<(&str, [i64; 2])> = vars.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let xs: Vec<&str> = vars[..2].iter().map(|v| v.0.as_str()).collect();
    let ys: Vec<&str> = vars[2..].iter().map(|v| v.0.as_str()).collect();
    RingSpec::new(FieldSpec::default(), &named, &[&xs, &ys])
}

/// A homogeneous `2 × f` matrix over `P^1 × P^a` with small random entry degrees.
///
/// Row 0 has twist 0 and row 1 twist `-r` with `r ∈ {0, (1,0), (0,1)}`; column `s` has twist `-(r + e_s)`,
/// so entries have degrees `r + e_s` and `e_s`.
pub fn random_map<R: Rng>(rng: &mut R, a: usize, f: usize) -> ProblemFile {
    let spec = p1_times(a);
    let ring = PolyRing::new(spec.clone(), PrimeField::default()).expect("product of projective spaces");
    // entry degrees stay at most (2,1) or (1,2): larger ones push the pieces
    // of C^{-1} with λ·d ≤ 4 past the default probe cap
    let r = MultiDegree::from(*[[0, 0], [1, 0], [0, 1]].choose(rng).unwrap());
    let shapes = [[1, 0], [0, 1], [1, 1]];
    let es: Vec<MultiDegree> = (0..f).map(|_| MultiDegree::from(*shapes.choose(rng).unwrap())).collect();
    let entries = (0..2)
        .map(|t| {
            es.iter()
                .map(|e| {
                    let d = if t == 0 { &r + e } else { e.clone() };
                    random_form(rng, &ring, &d)
                })
                .collect()
        })
        .collect();
    ProblemFile {
        ring: spec,
        map: MapSpec {
            target_twists: vec![MultiDegree::zero(2), -&r],
            source_twists: es.iter().map(|e| -(&r + e)).collect(),
            entries,
        },
    }
}

/// A random form of degree `d`: each monomial appears with probability 1/2
/// and a coefficient in `±1..=3`; never zero.
pub fn random_form<R: Rng>(rng: &mut R, ring: &Arc<PolyRing<PrimeField>>, d: &MultiDegree) -> String {
    let monomials = ring.graded_piece(d);
    let mut terms: Vec<String> = Vec::new();
    for m in &monomials {
        if rng.gen_bool(0.5) {
            let c: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            terms.push(format!("{c}*{}", ring.format_monomial(m)));
        }
    }
    if terms.is_empty() {
        terms.push(ring.format_monomial(monomials.choose(rng).expect("nonempty piece")));
    }
    terms.join(" + ")
}

/// Up to four random monomials with exponents at most 3 in `n` variables.
pub fn random_monomials<R: Rng>(rng: &mut R, n: usize) -> Vec<Monomial> {
    let count = rng.gen_range(1..=4);
    (0..count)
        .map(|_| {
            let exps: Vec<u16> = (0..n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..=3) } else { 0 }).collect();
            Monomial::from_exponents(&exps)
        })
        .collect()
}

/// Whether some generator divides `m`.
pub fn monomial_member(gens: &[Monomial], m: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(m))
}

/// Products choosing one variable from each factor: the generators of `B`.
pub fn irrelevant_products(factors: &[Vec<usize>], n: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    for factor in factors {
        out = out
            .iter()
            .flat_map(|m| factor.iter().map(move |&v| m.mul(&Monomial::var(n, v))))
            .collect();
    }
    out
}

/// Brute force: a squarefree `m` lies in `√(I : B^∞)` iff `m^E b^E ∈ I` for every
/// generator `b` of `B`, where `E` bounds every exponent of every generator of `I`.
pub fn in_radical_saturation(gens: &[Monomial], factors: &[Vec<usize>], m: &Monomial) -> bool {
    let n = m.nvars();
    let e = gens
        .iter()
        .flat_map(|g| g.exponents().iter().copied())
        .max()
        .unwrap_or(0)
        .max(1);
    irrelevant_products(factors, n)
        .iter()
        .all(|b| monomial_member(gens, &m.pow(e).mul(&b.pow(e))))
}

/// All squarefree monomials in `n` variables.
pub fn squarefree_monomials(n: usize) -> Vec<Monomial> {
    (0u32..1 << n)
        .map(|mask| {
            let exps: Vec<u16> = (0..n).map(|i| ((mask >> i) & 1) as u16).collect();
            Monomial::from_exponents(&exps)
        })
        .collect()
}
