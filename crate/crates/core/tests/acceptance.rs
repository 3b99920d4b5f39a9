//! One pass/fail line per acceptance criterion.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use virtual_en::complex::{build_complex, ChainComplex, GradedMatrix};
use virtual_en::degree::MultiDegree;
use virtual_en::field::{Field, PrimeField};
use virtual_en::groebner::{Budget, DepthValue, Ideal};
use virtual_en::parse::{format_polynomial, parse_polynomial};
use virtual_en::poly::Polynomial;
use virtual_en::presets::preset;
use virtual_en::probe::{annihilation_check, exactness_sweep, homology_dims, PieceBasis, DEFAULT_PROBE_CAP};
use virtual_en::problem::Problem;
use virtual_en::ring::PolyRing;
use virtual_en::virtuality::{
    loper_check, r_identity_holds, remark32_sweep, saturated_depth, CheckConfig, MinorDepths,
};

type K = PrimeField;
type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn load(name: &str) -> Problem<K> {
    preset(name).unwrap().build(K::default()).unwrap()
}

fn cfg() -> CheckConfig {
    CheckConfig::default()
}

fn budget() -> Budget {
    Budget::default()
}

fn err(e: virtual_en::error::Error) -> String {
    e.to_string()
}

fn twists(spec: &[(&[i64], usize)]) -> Vec<(MultiDegree, usize)> {
    let mut v: Vec<_> = spec.iter().map(|(d, m)| (MultiDegree::from(*d), *m)).collect();
    v.sort();
    v
}

fn position(c: &ChainComplex<K>, j: usize) -> Vec<(MultiDegree, usize)> {
    let mut v = c.betti_table().position(j);
    v.sort();
    v
}

fn table_matches(c: &ChainComplex<K>, expected: &[Vec<(MultiDegree, usize)>]) -> Check {
    ensure!(c.length() + 1 == expected.len(), "length {} but {} terms expected", c.length(), expected.len());
    for (j, want) in expected.iter().enumerate() {
        let got = position(c, j);
        ensure!(&got == want, "position {j}: got {got:?}, expected {want:?}");
    }
    Ok(())
}

fn parse_grid(ring: &Arc<PolyRing<K>>, rows: &[&[&str]]) -> Vec<Vec<Polynomial<K>>> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_polynomial(s, ring).unwrap()).collect())
        .collect()
}

/// Sign-free key of an entry.
fn key(p: &Polynomial<K>) -> String {
    if p.is_zero() {
        "0".into()
    } else {
        format_polynomial(&p.monic())
    }
}

fn signature(entries: impl Iterator<Item = String>) -> Vec<String> {
    let mut v: Vec<String> = entries.collect();
    v.sort();
    v
}

/// Whether `d = S P a Q T` for permutations `P, Q` and diagonal sign matrices `S, T`:
/// the same map up to reordering and negating basis elements on either side.
fn equivalent_up_to_basis_signs(a: &[Vec<Polynomial<K>>], d: &[Vec<Polynomial<K>>]) -> bool {
    let (n, m) = (a.len(), a.first().map_or(0, |r| r.len()));
    if d.len() != n || d.iter().any(|r| r.len() != m) {
        return false;
    }
    let row_sig = |g: &[Vec<Polynomial<K>>], i: usize| signature(g[i].iter().map(key));
    let col_sig = |g: &[Vec<Polynomial<K>>], j: usize| signature(g.iter().map(|r| key(&r[j])));
    let row_cands: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&k| row_sig(a, i) == row_sig(d, k)).collect()).collect();
    let col_cands: Vec<Vec<usize>> = (0..m).map(|j| (0..m).filter(|&k| col_sig(a, j) == col_sig(d, k)).collect()).collect();

    fn assign(cands: &[Vec<usize>], at: usize, used: &mut Vec<bool>, out: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if at == cands.len() {
            return f(out);
        }
        for &k in &cands[at] {
            if !used[k] {
                used[k] = true;
                out.push(k);
                if assign(cands, at + 1, used, out, f) {
                    return true;
                }
                out.pop();
                used[k] = false;
            }
        }
        false
    }

    let consistent = |rows: &[usize], cols: &[usize]| -> bool {
        // parity graph on rows 0..n and columns n..n+m; None = unvisited
        let mut sign: Vec<Option<bool>> = vec![None; n + m];
        let mut edges: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n + m];
        for i in 0..n {
            for j in 0..m {
                let (x, y) = (&a[i][j], &d[rows[i]][cols[j]]);
                if x.is_zero() != y.is_zero() {
                    return false;
                }
                if x.is_zero() {
                    continue;
                }
                let flip = if x == y {
                    false
                } else if &(-x) == y {
                    true
                } else {
                    return false;
                };
                edges[i].push((n + j, flip));
                edges[n + j].push((i, flip));
            }
        }
        for start in 0..n + m {
            if sign[start].is_some() {
                continue;
            }
            sign[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(v, flip) in &edges[u] {
                    let want = sign[u].unwrap() ^ flip;
                    match sign[v] {
                        None => {
                            sign[v] = Some(want);
                            stack.push(v);
                        }
                        Some(s) if s != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    };

    assign(&row_cands, 0, &mut vec![false; n], &mut Vec::new(), &mut |rows: &[usize]| {
        assign(&col_cands, 0, &mut vec![false; m], &mut Vec::new(), &mut |cols: &[usize]| consistent(rows, cols))
    })
}

fn homogeneous(c: &ChainComplex<K>) -> Check {
    for j in 1..=c.length() {
        let m = c.differential(j);
        for t in 0..m.nrows() {
            for s in 0..m.ncols() {
                let p = m.entry(t, s);
                if p.is_zero() {
                    continue;
                }
                let want = &m.source().generator_degree(s) - &m.target().generator_degree(t);
                let got = p.homogeneous_degree().map_err(err)?;
                ensure!(got == want, "phi_{j} entry ({t},{s}) has degree {got}, expected {want}");
            }
        }
    }
    Ok(())
}

/// `m_ij`, the minor on columns `i < j` (1-based) of the generic matrix.
fn generic_minor(i: usize, j: usize) -> String {
    format!("x1{i}*x2{j} - x1{j}*x2{i}")
}

fn criterion_1() -> Check {
    let p = load("generic-2x4");
    let ring = &p.ring;
    let c0 = build_complex(&p.phi, 0).map_err(err)?;
    let c1 = build_complex(&p.phi, 1).map_err(err)?;
    ensure!(c0.ranks() == vec![1, 6, 8, 3], "C^0 ranks {:?}", c0.ranks());
    ensure!(c1.ranks() == vec![2, 4, 4, 2], "C^1 ranks {:?}", c1.ranks());
    table_matches(
        &c0,
        &[
            twists(&[(&[0, 0], 1)]),
            twists(&[(&[-1, -1], 6)]),
            twists(&[(&[-2, -1], 4), (&[-1, -2], 4)]),
            twists(&[(&[-3, -1], 1), (&[-2, -2], 1), (&[-1, -3], 1)]),
        ],
    )
    .map_err(|e| format!("C^0: {e}"))?;
    table_matches(
        &c1,
        &[
            twists(&[(&[0, -1], 1), (&[-1, 0], 1)]),
            twists(&[(&[-1, -1], 4)]),
            twists(&[(&[-2, -2], 4)]),
            twists(&[(&[-3, -2], 1), (&[-2, -3], 1)]),
        ],
    )
    .map_err(|e| format!("C^1: {e}"))?;

    let m = |i, j| generic_minor(i, j);
    let minors_row = [m(1, 2), m(1, 3), m(1, 4), m(2, 3), m(2, 4), m(3, 4)];
    let row: Vec<&str> = minors_row.iter().map(String::as_str).collect();
    let c0_phi1 = parse_grid(ring, &[&row]);
    let c0_phi2 = parse_grid(
        ring,
        &[
            &["x13", "x14", "0", "0", "x23", "x24", "0", "0"],
            &["-x12", "0", "x14", "0", "-x22", "0", "x24", "0"],
            &["x11", "0", "0", "x14", "x21", "0", "0", "x24"],
            &["0", "-x12", "-x13", "0", "0", "-x22", "-x23", "0"],
            &["0", "x11", "0", "-x13", "0", "x21", "0", "-x23"],
            &["0", "0", "x11", "x12", "0", "0", "x21", "x22"],
        ],
    );
    let c0_phi3 = parse_grid(
        ring,
        &[
            &["-x14", "-x24", "0"],
            &["x13", "x23", "0"],
            &["-x12", "-x22", "0"],
            &["x11", "x21", "0"],
            &["0", "-x14", "-x24"],
            &["0", "x13", "x23"],
            &["0", "-x12", "-x22"],
            &["0", "x11", "x21"],
        ],
    );
    let c1_phi1 = parse_grid(ring, &[&["x11", "x12", "x13", "x14"], &["x21", "x22", "x23", "x24"]]);
    let (m12, m13, m14, m23, m24, m34) = (m(1, 2), m(1, 3), m(1, 4), m(2, 3), m(2, 4), m(3, 4));
    // m_ji = -m_ij
    let neg = |s: &String| {
        let i = minors_row.iter().position(|r| r == s).unwrap();
        let (a, b) = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)][i];
        generic_minor(b, a)
    };
    let c1_phi2 = parse_grid(
        ring,
        &[
            &[&m23, &m24, &m34, "0"],
            &[&neg(&m13), &neg(&m14), "0", &m34],
            &[&m12, "0", &neg(&m14), &neg(&m24)],
            &["0", &m12, &m13, &m23],
        ],
    );
    let c1_phi3 = parse_grid(
        ring,
        &[&["-x14", "-x24"], &["x13", "x23"], &["-x12", "-x22"], &["x11", "x21"]],
    );
    for (name, c, shown) in [
        ("C^0", &c0, vec![c0_phi1, c0_phi2, c0_phi3]),
        ("C^1", &c1, vec![c1_phi1, c1_phi2, c1_phi3]),
    ] {
        for (j, d) in shown.iter().enumerate() {
            ensure!(
                equivalent_up_to_basis_signs(c.differential(j + 1).rows(), d),
                "{name} phi_{} differs from the displayed matrix: {:?}",
                j + 1,
                c.differential(j + 1).entry_strings()
            );
        }
    }

    let minors: Vec<String> = minors_row.iter().map(|s| key(&parse_polynomial(s, ring).unwrap())).collect();
    for p in c1.differential(2).rows().iter().flatten() {
        ensure!(p.is_zero() || minors.contains(&key(p)), "C^1 middle entry {p} is not a signed minor");
    }
    for (name, c) in [("C^0", &c0), ("C^1", &c1)] {
        ensure!(c.compose_check(), "{name}: d∘d ≠ 0");
        let sweep = exactness_sweep(c, 6, DEFAULT_PROBE_CAP).map_err(err)?;
        ensure!(sweep.skipped.is_empty(), "{name}: degrees skipped {:?}", sweep.skipped);
        ensure!(sweep.exact(), "{name}: higher homology {:?}", sweep.nonzero);
    }
    Ok(())
}

fn criterion_2() -> Check {
    let p = load("rnc:3");
    ensure!(
        preset("rnc:3").unwrap() == preset("twisted-cubic").unwrap(),
        "rnc:3 and twisted-cubic differ"
    );
    let i2 = p.phi.minors_ideal(2);
    let plain = i2.depth(&budget()).map_err(err)?;
    let dim = i2.krull_dimension(&budget()).map_err(err)?;
    ensure!(!plain.at_least(3) && dim == 4, "depth I_2 = {plain}, dim S/I_2 = {dim}");
    let sat = saturated_depth(&p.phi, 2, &cfg()).map_err(err)?;
    ensure!(sat == DepthValue::Finite(3), "saturated depth {sat}");

    let depths = MinorDepths::new(&p.phi, &cfg());
    for i in -1..=3 {
        let t = depths.theorem(i).map_err(err)?;
        ensure!(t.verdict && t.e == 3, "theorem for C^{i}: {t:?}");
        let c = build_complex(&p.phi, i).map_err(err)?;
        ensure!(c.length() == 3, "C^{i} has length {}", c.length());
        let l = loper_check(&c, Some((4, 2)), &cfg()).map_err(err)?;
        ensure!(l.verdict, "loper for C^{i}: {l:?}");
    }

    let c0 = build_complex(&p.phi, 0).map_err(err)?;
    table_matches(
        &c0,
        &[
            twists(&[(&[0, 0], 1)]),
            twists(&[(&[-3, -1], 6)]),
            twists(&[(&[-6, -1], 4), (&[-3, -2], 4)]),
            twists(&[(&[-9, -1], 1), (&[-6, -2], 1), (&[-3, -3], 1)]),
        ],
    )?;
    let at = homology_dims(&c0, &MultiDegree::from([5, 1]), DEFAULT_PROBE_CAP).map_err(err)?;
    ensure!(at.homology(1) >= 1, "H_1(C^0) vanishes at (5,1): {at:?}");

    let sweep = exactness_sweep(&c0, 6, DEFAULT_PROBE_CAP).map_err(err)?;
    ensure!(!sweep.nonzero.is_empty(), "sweep found no H_1");
    let generators = p.ring.irrelevant_generators();
    ensure!(generators.len() == 8, "B has {} monomial generators", generators.len());
    for h in &sweep.nonzero {
        for b in &generators {
            let a = annihilation_check(&c0, h.j, &h.degree, b, 6, 20_000).map_err(err)?;
            ensure!(a.n.is_some_and(|n| n <= 6), "{} does not kill H_{} at {}: {a:?}", a.monomial, h.j, h.degree);
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let p = load("hirzebruch-graph");
    let plain = p.phi.minors_ideal(2).depth(&budget()).map_err(err)?;
    ensure!(plain == DepthValue::Finite(2), "depth I_2 = {plain}");
    let sat = saturated_depth(&p.phi, 2, &cfg()).map_err(err)?;
    ensure!(sat == DepthValue::Finite(4), "saturated depth {sat}");

    let c0 = build_complex(&p.phi, 0).map_err(err)?;
    ensure!(c0.ranks() == vec![1, 10, 20, 15, 4], "C^0 ranks {:?}", c0.ranks());
    table_matches(
        &c0,
        &[
            twists(&[(&[0, 0, 0], 1)]),
            twists(&[(&[-1, -1, -1], 10)]),
            twists(&[(&[-2, -2, -1], 10), (&[-1, -1, -2], 10)]),
            twists(&[(&[-3, -3, -1], 5), (&[-2, -2, -2], 5), (&[-1, -1, -3], 5)]),
            twists(&[(&[-4, -4, -1], 1), (&[-3, -3, -2], 1), (&[-2, -2, -3], 1), (&[-1, -1, -4], 1)]),
        ],
    )
    .map_err(|e| format!("C^0: {e}"))?;

    let c1 = build_complex(&p.phi, 1).map_err(err)?;
    let third = position(&c1, 2);
    ensure!(third == twists(&[(&[-2, -2, -2], 10)]), "C^1 third term {third:?}");
    homogeneous(&c1)?;
    ensure!(c1.compose_check(), "C^1: d∘d ≠ 0");

    let rep = remark32_sweep(&p.phi, &cfg()).map_err(err)?;
    ensure!(rep.hypothesis && rep.verdict, "remark sweep: {rep:?}");
    let covered: Vec<Option<i64>> = rep.complexes.iter().map(|c| c.index).collect();
    ensure!(covered == (-1..=4).map(Some).collect::<Vec<_>>(), "sweep covered {covered:?}");
    let c5 = build_complex(&p.phi, 5).map_err(err)?;
    let l5 = loper_check(&c5, Some((5, 2)), &cfg()).map_err(err)?;
    ensure!(l5.verdict, "loper for C^5: {l5:?}");

    for (c, bound) in [(&c0, 6), (&c1, 8)] {
        let sweep = exactness_sweep(c, bound, DEFAULT_PROBE_CAP).map_err(err)?;
        ensure!(
            sweep.nonzero.iter().any(|h| h.j == 1),
            "no H_1 for C^{:?} up to weight {bound}",
            c.index()
        );
    }
    Ok(())
}

fn criterion_4() -> Check {
    let p = load("p1p2p2");
    let plain = p.phi.minors_ideal(3).depth(&budget()).map_err(err)?;
    ensure!(plain == DepthValue::Finite(2), "depth I_3 = {plain}");
    let sat = saturated_depth(&p.phi, 3, &cfg()).map_err(err)?;
    ensure!(sat == DepthValue::Finite(3), "saturated depth {sat}");
    let depths = MinorDepths::new(&p.phi, &cfg());
    for i in -1..=3 {
        let t = depths.theorem(i).map_err(err)?;
        ensure!(t.verdict, "theorem for C^{i}: {t:?}");
    }
    let mut found = Vec::new();
    for i in -1..=3 {
        let c = build_complex(&p.phi, i).map_err(err)?;
        let sweep = exactness_sweep(&c, 6, DEFAULT_PROBE_CAP).map_err(err)?;
        if let Some(h) = sweep.nonzero.first() {
            found.push(format!("C^{i}: H_{} at ({})", h.j, h.degree.to_csv()));
            break;
        }
    }
    ensure!(!found.is_empty(), "every C^i looked exact up to weight 6");
    Ok(())
}

fn rnc_minor(phi: &GradedMatrix<K>, i: usize, j: usize) -> Polynomial<K> {
    &(phi.entry(0, i) * phi.entry(1, j)) - &(phi.entry(0, j) * phi.entry(1, i))
}

fn rational_normal_curve(d: usize) -> Check {
    let p = load(&format!("rnc:{d}"));
    let ring = &p.ring;
    let var = |name: &str| parse_polynomial(name, ring).unwrap();

    // J: minors of [x0 y0 … y_{d-1}; x1 y1 … y_d]
    let mut cols = vec![(var("x0"), var("x1"))];
    cols.extend((1..=d).map(|k| (var(&format!("y{}", k - 1)), var(&format!("y{k}")))));
    let mut j_gens = Vec::new();
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            j_gens.push(&(&cols[a].0 * &cols[b].1) - &(&cols[b].0 * &cols[a].1));
        }
    }
    let sat = p.phi.minors_ideal(2).saturate_irrelevant(&budget()).map_err(err)?;
    for g in &j_gens {
        ensure!(sat.contains(g, &budget()).map_err(err)?, "d = {d}: {g} not in the saturation");
    }
    let depth = saturated_depth(&p.phi, 2, &cfg()).map_err(err)?;
    ensure!(depth.at_least(d as i64), "d = {d}: saturated depth {depth}");

    let f = |i, j| rnc_minor(&p.phi, i, j);
    let (x0, x1) = (var("x0"), var("x1"));
    let coeffs = [((0, 1), &x1 * &x1), ((0, 2), -(&x0 * &x1)), ((1, 2), &x0 * &x0)];
    let relation = coeffs
        .iter()
        .fold(Polynomial::zero(ring), |acc, ((i, j), c)| &acc + &(c * &f(*i, *j)));
    let gb = p.phi.minors_ideal(2).groebner(&budget()).map_err(err)?;
    ensure!(gb.reduces_to_zero(&relation), "d = {d}: relation does not reduce to 0");

    // the relation as a cycle of C^0 in degree (d+2, 1)
    let c0 = build_complex(&p.phi, 0).map_err(err)?;
    let phi1 = c0.differential(1);
    let mut cycle = vec![Polynomial::zero(ring); phi1.ncols()];
    for ((i, j), coeff) in &coeffs {
        let target = f(*i, *j);
        let k = (0..phi1.ncols())
            .find(|&k| key(phi1.entry(0, k)) == key(&target))
            .ok_or_else(|| format!("d = {d}: f_{i}{j} is not an entry of phi_1"))?;
        cycle[k] = if phi1.entry(0, k) == &target { coeff.clone() } else { -coeff };
    }
    let deg = MultiDegree::from([d as i64 + 2, 1]);
    for (k, v) in cycle.iter().enumerate() {
        if !v.is_zero() {
            let want = &deg - &c0.term(1).generator_degree(k);
            ensure!(v.homogeneous_degree().map_err(err)? == want, "d = {d}: witness entry {k} has the wrong degree");
        }
    }
    let image = cycle
        .iter()
        .enumerate()
        .fold(Polynomial::zero(ring), |acc, (k, v)| &acc + &(phi1.entry(0, k) * v));
    ensure!(image.is_zero(), "d = {d}: witness is not a cycle");
    ensure!(cycle.iter().any(|v| !v.is_zero()), "d = {d}: witness is zero");
    let boundaries = PieceBasis::new(ring, c0.term(2), &deg, DEFAULT_PROBE_CAP).map_err(err)?;
    ensure!(boundaries.dim() == 0, "d = {d}: (F_2) in degree {deg} is not zero");
    let h = homology_dims(&c0, &deg, DEFAULT_PROBE_CAP).map_err(err)?;
    ensure!(h.homology(1) >= 1, "d = {d}: H_1 vanishes at {deg}");
    Ok(())
}

fn criterion_5() -> Check {
    for d in 3..=5 {
        rational_normal_curve(d)?;
    }
    Ok(())
}

fn monomial_ideal(ring: &Arc<PolyRing<K>>, gens: &[virtual_en::monomial::Monomial]) -> Ideal<K> {
    let one = ring.field().one();
    Ideal::new(ring, gens.iter().map(|m| Polynomial::monomial(ring, m.clone(), one)))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let mut hypothesis_held = 0;
    let shapes = [(1, 4), (1, 3), (2, 4), (2, 3)];
    for n in 0..50 {
        let (a, f) = shapes[n % shapes.len()];
        let file = common::random_map(&mut rng, a, f);
        let p = file.build(K::default()).map_err(err)?;
        let g = 2usize;
        let top = (f - g + 1) as i64;
        let mut ranks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let depths = MinorDepths::new(&p.phi, &cfg());
        for i in -1..=top {
            let c = build_complex(&p.phi, i).map_err(err)?;
            ensure!(c.compose_check(), "instance {n}, C^{i}: d∘d ≠ 0\n{}", file.to_json());
            ensure!(r_identity_holds(&c), "instance {n}, C^{i}: r identity fails");
            ranks.insert(i, c.ranks());
            let t = depths.theorem(i).map_err(err)?;
            if t.verdict {
                hypothesis_held += 1;
                let l = loper_check(&c, Some((f, g)), &cfg()).map_err(err)?;
                ensure!(l.verdict, "instance {n}, C^{i}: hypotheses hold but loper fails: {l:?}\n{}", file.to_json());
            }
            let sweep = exactness_sweep(&c, 4, DEFAULT_PROBE_CAP).map_err(err)?;
            let unbalanced: Vec<_> = sweep.profiles.iter().filter(|p| !p.euler_holds()).collect();
            ensure!(
                sweep.skipped.is_empty() && unbalanced.is_empty(),
                "instance {n}, C^{i}: skipped {:?}, euler fails at {unbalanced:?}\n{}",
                sweep.skipped,
                file.to_json()
            );
        }
        for i in -1..=top {
            let mirror = (f - g) as i64 - i;
            let mut reversed = ranks[&mirror].clone();
            reversed.reverse();
            ensure!(ranks[&i] == reversed, "instance {n}: C^{i} ranks {:?} vs C^{mirror} {:?}", ranks[&i], ranks[&mirror]);
        }
    }
    ensure!(hypothesis_held > 0, "no random instance met the theorem's hypotheses");

    for n in 0..100 {
        let a = 1 + n % 2;
        let ring = PolyRing::new(common::p1_times(a), K::default()).map_err(err)?;
        let nv = ring.nvars();
        let gens = common::random_monomials(&mut rng, nv);
        let sat = monomial_ideal(&ring, &gens).saturate_irrelevant(&budget()).map_err(err)?;
        let radical: Vec<_> = gens.iter().map(|m| m.squarefree()).collect();
        let rad_sat = monomial_ideal(&ring, &radical).saturate_irrelevant(&budget()).map_err(err)?;
        let one = ring.field().one();
        for m in common::squarefree_monomials(nv) {
            let want = common::in_radical_saturation(&gens, ring.factors(), &m);
            let poly = Polynomial::monomial(&ring, m.clone(), one);
            let lhs = sat.radical_contains(&poly, &budget()).map_err(err)?;
            let rhs = rad_sat.contains(&poly, &budget()).map_err(err)?;
            ensure!(lhs == want && rhs == want, "monomial instance {n}: {gens:?} at {m:?}: {lhs} {rhs} vs {want}");
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 6] = [
        ("generic 2x4: twist tables, displayed differentials, exactness", criterion_1),
        ("twisted cubic: depths, certificates, H_1 and its annihilation", criterion_2),
        ("hirzebruch graph: depths, twist tables, sweep, nonzero H_1", criterion_3),
        ("p1 x p2 x p2: depths, theorem, non-exactness", criterion_4),
        ("rational normal curves d = 3, 4, 5: scroll ideal, depth, H_1 witness", criterion_5),
        ("random properties and monomial radical saturation", criterion_6),
    ];
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name}  ({secs:.1}s)", n + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}  ({secs:.1}s): {why}", n + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
