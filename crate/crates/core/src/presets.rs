//! Built-in problems: the worked examples of the library's guide.

use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::problem::{MapSpec, ProblemFile};
use crate::ring::{RingSpec, VariableSpec};

/// Names accepted by [`preset`]; `rnc:<d>` takes any `d ≥ 3`.
pub const PRESET_NAMES: &[&str] = &["twisted-cubic", "generic-2x4", "hirzebruch-graph", "p1p2p2", "rnc:<d>"];

fn ring(vars: &[(String, Vec<i64>)], irrelevant: Vec<Vec<String>>) -> RingSpec {
    RingSpec {
        field: FieldSpec::default(),
        variables: vars
            .iter()
            .map(|(n, d)| VariableSpec {
                name: n.clone(),
                degree: MultiDegree(d.clone()),
            })
            .collect(),
        irrelevant,
        positivity: None,
    }
}

fn names(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn deg(v: &[i64]) -> MultiDegree {
    MultiDegree(v.to_vec())
}

fn strings(row: &[&str]) -> Vec<String> {
    row.iter().map(|s| s.to_string()).collect()
}

/// `P^1 × P^d` with the graph of the degree `d` rational normal curve.
pub fn rnc(d: usize) -> Result<ProblemFile> {
    if d < 3 {
        return Err(Error::InvalidInput(format!("rnc needs d ≥ 3, got {d}")));
    }
    let xs = names("x", 0..=1);
    let ys = names("y", 0..=d);
    let mut vars: Vec<(String, Vec<i64>)> = xs.iter().map(|n| (n.clone(), vec![1, 0])).collect();
    vars.extend(ys.iter().map(|n| (n.clone(), vec![0, 1])));
    let top: Vec<String> = (0..=d)
        .map(|j| {
            let mut parts = Vec::new();
            for (name, e) in [("x0", d - j), ("x1", j)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            parts.join("*")
        })
        .collect();
    let di = d as i64;
    Ok(ProblemFile {
        ring: ring(&vars, vec![xs, ys.clone()]),
        map: MapSpec {
            target_twists: vec![deg(&[0, -1]), deg(&[-di, 0])],
            source_twists: vec![deg(&[-di, -1]); d + 1],
            entries: vec![top, ys],
        },
    })
}

/// The generic 2×4 matrix over `P^3 × P^3`.
pub fn generic_2x4() -> ProblemFile {
    let r1 = names("x1", 1..=4);
    let r2 = names("x2", 1..=4);
    let mut vars: Vec<(String, Vec<i64>)> = r1.iter().map(|n| (n.clone(), vec![1, 0])).collect();
    vars.extend(r2.iter().map(|n| (n.clone(), vec![0, 1])));
    ProblemFile {
        ring: ring(&vars, vec![r1.clone(), r2.clone()]),
        map: MapSpec {
            target_twists: vec![deg(&[0, -1]), deg(&[-1, 0])],
            source_twists: vec![deg(&[-1, -1]); 4],
            entries: vec![r1, r2],
        },
    }
}

/// The graph of the Hirzebruch surface `H_1 → P^4` inside `H_1 × P^4`.
pub fn hirzebruch_graph() -> ProblemFile {
    let mut vars: Vec<(String, Vec<i64>)> = vec![
        ("x0".into(), vec![1, 0, 0]),
        ("x1".into(), vec![-1, 1, 0]),
        ("x2".into(), vec![1, 0, 0]),
        ("x3".into(), vec![0, 1, 0]),
    ];
    let zs = names("z", 0..=4);
    vars.extend(zs.iter().map(|n| (n.clone(), vec![0, 0, 1])));
    ProblemFile {
        ring: ring(
            &vars,
            vec![strings(&["x0", "x2"]), strings(&["x1", "x3"]), zs.clone()],
        ),
        map: MapSpec {
            target_twists: vec![deg(&[0, 0, -1]), deg(&[-1, -1, 0])],
            source_twists: vec![deg(&[-1, -1, -1]); 5],
            entries: vec![strings(&["x0*x3", "x2*x3", "x0^2*x1", "x0*x1*x2", "x1*x2^2"]), zs],
        },
    }
}

/// A 3×5 map over `P^1 × P^2 × P^2`.
pub fn p1p2p2() -> ProblemFile {
    let xs = names("x", 0..=1);
    let ys = names("y", 0..=2);
    let zs = names("z", 0..=2);
    let mut vars: Vec<(String, Vec<i64>)> = xs.iter().map(|n| (n.clone(), vec![1, 0, 0])).collect();
    vars.extend(ys.iter().map(|n| (n.clone(), vec![0, 1, 0])));
    vars.extend(zs.iter().map(|n| (n.clone(), vec![0, 0, 1])));
    ProblemFile {
        ring: ring(&vars, vec![xs, ys, zs]),
        map: MapSpec {
            target_twists: vec![deg(&[0, -2, -1]), deg(&[-4, 0, -1]), deg(&[-4, -2, 0])],
            source_twists: vec![deg(&[-4, -2, -1]); 5],
            entries: vec![
                strings(&["x0^4", "x0^3*x1", "x0^2*x1^2", "x0*x1^3", "x1^4"]),
                strings(&["0", "y0^2", "y1^2", "y2^2", "0"]),
                strings(&["z0", "z1", "z2", "z1", "z0"]),
            ],
        },
    }
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Result<ProblemFile> {
    match name {
        "twisted-cubic" => rnc(3),
        "generic-2x4" => Ok(generic_2x4()),
        "hirzebruch-graph" => Ok(hirzebruch_graph()),
        "p1p2p2" => Ok(p1p2p2()),
        _ => match name.strip_prefix("rnc:") {
            Some(d) => {
                let d: usize = d
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad rnc degree `{d}`")))?;
                rnc(d)
            }
            None => Err(Error::InvalidInput(format!(
                "unknown preset `{name}` (known: {})",
                PRESET_NAMES.join(", ")
            ))),
        },
    }
}
