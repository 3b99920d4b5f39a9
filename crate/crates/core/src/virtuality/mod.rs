//! Certificates for virtual resolutions: Loper's criterion, the depth
//! hypotheses of the main theorem, the rank and radical identities behind its
//! proof, and the sweep over the whole family `C^{-1}, …, C^{f-g+1}`.
//!
//! Every check returns a serializable record of the quantities it computed,
//! so a failing verdict points at the position and condition responsible.

mod locus;

use std::collections::BTreeMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

pub use locus::{saturated_minors_depth, LocusConfig};

use crate::complex::{build_complex, ChainComplex, GradedMatrix, DEFAULT_MINOR_CAP};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Budget, DepthValue};

/// Engine settings shared by every check.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CheckConfig {
    #[serde(skip)]
    pub budget: Budget,
    /// Seed for the random evaluations that screen matrix ranks.
    pub seed: u64,
    /// Most minors expanded when proving a rank or testing ideal identities.
    pub minor_cap: usize,
    /// Saturated minor ideals with at most this many generators are
    /// saturated directly; larger ones go through the chart decomposition.
    pub direct_minors: usize,
    /// Leaf size of the chart decomposition.
    pub leaf_minors: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            budget: Budget::default(),
            seed: 0x5eed,
            minor_cap: DEFAULT_MINOR_CAP,
            direct_minors: 40,
            leaf_minors: LocusConfig::default().leaf_minors,
        }
    }
}

impl CheckConfig {
    fn locus(&self) -> LocusConfig {
        LocusConfig {
            leaf_minors: self.leaf_minors,
            budget: self.budget,
        }
    }
}

fn at_position(j: usize, e: Error) -> Error {
    match e {
        Error::BudgetExceeded(m) => Error::BudgetExceeded(format!("position {j}: {m}")),
        other => other,
    }
}

/// `[r(1), …, r(e)]` with `r(j) = Σ_{ℓ=j}^{e} (-1)^{ℓ-j} rank F_ℓ`.
pub fn r_values<K: Field>(c: &ChainComplex<K>) -> Vec<i64> {
    r_from_ranks(&c.ranks())
}

fn r_from_ranks(ranks: &[usize]) -> Vec<i64> {
    let e = ranks.len() - 1;
    let mut r = vec![0i64; e + 2];
    for j in (1..=e).rev() {
        r[j] = ranks[j] as i64 - r[j + 1];
    }
    r[1..=e].to_vec()
}

/// Whether `r(j+1) + r(j) = rank F_j` for `1 ≤ j ≤ e`, with `r(e+1) = 0`.
pub fn r_identity_holds<K: Field>(c: &ChainComplex<K>) -> bool {
    let ranks = c.ranks();
    let mut r = r_from_ranks(&ranks);
    r.push(0);
    (1..ranks.len()).all(|j| r[j - 1] + r[j] == ranks[j] as i64)
}

/// `[s(1), …, s(e)]` with `s(j) = min(g, f - j + 1)`.
pub fn s_values(f: usize, g: usize, e: usize) -> Vec<i64> {
    (1..=e as i64).map(|j| (g as i64).min(f as i64 - j + 1)).collect()
}

/// Exact ranks of `φ_1, …, φ_e`.
///
/// Random evaluations give lower bounds `ℓ_j`. Since `φ_j φ_{j+1} = 0`,
/// `rank φ_j ≤ rank F_j - rank φ_{j+1}`, so `ℓ_j + ℓ_{j+1} = rank F_j`
/// proves both bounds sharp. Anything left unproven is settled by
/// [`GradedMatrix::rank`].
pub fn differential_ranks<K: Field>(c: &ChainComplex<K>, cfg: &CheckConfig) -> Result<Vec<usize>> {
    let e = c.length();
    let lower: Vec<usize> = (1..=e)
        .into_par_iter()
        .map(|j| c.differential(j).rank_lower_bound(cfg.seed ^ j as u64, 2))
        .collect();
    let sizes = c.ranks();
    let mut exact = vec![false; e + 2];
    for j in 1..=e {
        let m = c.differential(j);
        if lower[j - 1] == m.nrows().min(m.ncols()) {
            exact[j] = true;
        }
    }
    if c.compose_check() {
        for j in 1..=e {
            let next = if j < e { lower[j] } else { 0 };
            if lower[j - 1] + next == sizes[j] {
                exact[j] = true;
                exact[j + 1] = true;
            }
        }
    }
    (1..=e)
        .into_par_iter()
        .map(|j| {
            if exact[j] {
                Ok(lower[j - 1])
            } else {
                c.differential(j).rank(cfg.seed ^ j as u64, cfg.minor_cap).map_err(|e| at_position(j, e))
            }
        })
        .collect()
}

/// `depth((I_r(M) : B^∞))`, choosing between direct saturation and charts.
pub fn saturated_depth<K: Field>(m: &GradedMatrix<K>, r: i64, cfg: &CheckConfig) -> Result<DepthValue> {
    if r <= 0 {
        return Ok(DepthValue::Infinity);
    }
    if r as usize > m.nrows().min(m.ncols()) {
        // the zero ideal is already saturated
        return Ok(DepthValue::Finite(0));
    }
    if m.minor_count(r as usize) <= cfg.direct_minors as u128 {
        return m.minors_ideal(r).saturate_irrelevant(&cfg.budget)?.depth(&cfg.budget);
    }
    saturated_minors_depth(m.ring(), m.rows(), r, &cfg.locus())
}

/// One position of a Loper certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoperPosition {
    pub j: usize,
    pub rank_phi: usize,
    /// `rank φ_{j+1}`, zero at `j = e`.
    pub rank_next: usize,
    #[serde(rename = "rank_F")]
    pub rank_f: usize,
    pub r_j: i64,
    pub s_j: Option<i64>,
    pub rank_ok: bool,
    /// `depth((I(φ_j) : B^∞))` with `I(φ_j)` the ideal of maximal nonvanishing minors.
    pub depth: DepthValue,
    pub required: usize,
    pub depth_ok: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoperCertificate {
    pub index: Option<i64>,
    pub length: usize,
    pub positions: Vec<LoperPosition>,
    pub verdict: bool,
}

/// Loper's criterion: `C` is a virtual resolution iff for every `1 ≤ j ≤ e`
/// the ranks satisfy `rank φ_j + rank φ_{j+1} = rank F_j` and
/// `depth((I(φ_j) : B^∞)) ≥ j`.
///
/// `shape` optionally supplies `(f, g)` so the records carry `s(j)` as well.
pub fn loper_check<K: Field>(
    c: &ChainComplex<K>,
    shape: Option<(usize, usize)>,
    cfg: &CheckConfig,
) -> Result<LoperCertificate> {
    if !c.compose_check() {
        return Err(Error::InvalidInput("the differentials do not compose to zero".into()));
    }
    let e = c.length();
    let ranks = differential_ranks(c, cfg)?;
    let r = r_values(c);
    let s = shape.map(|(f, g)| s_values(f, g, e));
    let depths: Vec<DepthValue> = (1..=e)
        .into_par_iter()
        .map(|j| saturated_depth(c.differential(j), ranks[j - 1] as i64, cfg).map_err(|err| at_position(j, err)))
        .collect::<Result<_>>()?;
    let positions: Vec<LoperPosition> = (1..=e)
        .map(|j| {
            let rank_next = if j < e { ranks[j] } else { 0 };
            let rank_f = c.term(j).rank();
            let rank_ok = ranks[j - 1] + rank_next == rank_f;
            let depth_ok = depths[j - 1].at_least(j as i64);
            LoperPosition {
                j,
                rank_phi: ranks[j - 1],
                rank_next,
                rank_f,
                r_j: r[j - 1],
                s_j: s.as_ref().map(|s| s[j - 1]),
                rank_ok,
                depth: depths[j - 1],
                required: j,
                depth_ok,
                ok: rank_ok && depth_ok,
            }
        })
        .collect();
    let verdict = positions.iter().all(|p| p.ok);
    Ok(LoperCertificate {
        index: c.index(),
        length: e,
        positions,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorDepth {
    pub m: i64,
    pub depth: DepthValue,
    pub required: i64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCertificate {
    pub i: i64,
    pub e: usize,
    pub f: usize,
    pub g: usize,
    /// The tested range `f - e + 1 ≤ m ≤ g`, inclusive.
    pub range: (i64, i64),
    pub minors: Vec<MinorDepth>,
    pub verdict: bool,
}

/// Depths of `(I_m(φ) : B^∞)` for a fixed `φ`, computed once per `m`.
pub struct MinorDepths<'a, K: Field> {
    phi: &'a GradedMatrix<K>,
    cfg: CheckConfig,
    cache: Mutex<BTreeMap<i64, DepthValue>>,
}

impl<'a, K: Field> MinorDepths<'a, K> {
    pub fn new(phi: &'a GradedMatrix<K>, cfg: &CheckConfig) -> Self {
        MinorDepths {
            phi,
            cfg: *cfg,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn depth(&self, m: i64) -> Result<DepthValue> {
        if let Some(d) = self.cache.lock().expect("cache lock").get(&m) {
            return Ok(*d);
        }
        let d = saturated_depth(self.phi, m, &self.cfg)?;
        self.cache.lock().expect("cache lock").insert(m, d);
        Ok(d)
    }

    /// The main theorem's hypotheses for `C^i`: `depth((I_m(φ) : B^∞)) ≥ f - m + 1`
    /// for `f - e + 1 ≤ m ≤ g`.
    pub fn theorem(&self, i: i64) -> Result<TheoremCertificate> {
        let c = build_complex(self.phi, i)?;
        let (f, g, e) = (self.phi.ncols(), self.phi.nrows(), c.length());
        let (lo, hi) = (f as i64 - e as i64 + 1, g as i64);
        let minors = (lo..=hi)
            .map(|m| {
                let depth = self.depth(m)?;
                let required = f as i64 - m + 1;
                Ok(MinorDepth {
                    m,
                    depth,
                    required,
                    ok: depth.at_least(required),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let verdict = minors.iter().all(|m| m.ok);
        Ok(TheoremCertificate {
            i,
            e,
            f,
            g,
            range: (lo, hi),
            minors,
            verdict,
        })
    }
}

/// Tests the main theorem's depth hypotheses for `C^i`.
///
/// A true verdict proves `C^i` virtual; a false one only means the sufficient
/// condition is not met, and [`loper_check`] decides the question.
pub fn main_theorem_check<K: Field>(phi: &GradedMatrix<K>, i: i64, cfg: &CheckConfig) -> Result<TheoremCertificate> {
    MinorDepths::new(phi, cfg).theorem(i)
}

/// One position of the rank and radical comparison between `φ_j` and `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma31Position {
    pub j: usize,
    pub rank_phi: usize,
    pub r_j: i64,
    pub s_j: i64,
    pub rank_ok: bool,
    /// `depth((I_{r(j)}(φ_j) : B^∞))`.
    pub depth_phi_j: DepthValue,
    /// `depth((I_{s(j)}(φ) : B^∞))`.
    pub depth_phi: DepthValue,
    /// Generator-wise containment of the first saturation in the second.
    pub contained: Option<bool>,
    /// Every generator of each saturation lies in the radical of the other.
    pub radical_equal: Option<bool>,
    /// Why the ideal comparisons were skipped, when they were.
    pub skipped: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma31Report {
    pub index: Option<i64>,
    pub r: Vec<i64>,
    pub s: Vec<i64>,
    pub r_identity: bool,
    pub positions: Vec<Lemma31Position>,
    pub verdict: bool,
}

/// Compares `φ_j` with `φ`: `rank φ_j ≤ r(j)`, and `(I_{r(j)}(φ_j) : B^∞)` is
/// contained in `(I_{s(j)}(φ) : B^∞)` with the same radical.
///
/// Positions whose minor count exceeds `minor_cap` still compare depths (via
/// charts) but skip the ideal comparisons, recording why.
pub fn lemma31_check<K: Field>(phi: &GradedMatrix<K>, c: &ChainComplex<K>, cfg: &CheckConfig) -> Result<Lemma31Report> {
    let e = c.length();
    let (f, g) = (phi.ncols(), phi.nrows());
    let ranks = differential_ranks(c, cfg)?;
    let r = r_values(c);
    let s = s_values(f, g, e);
    let depths = MinorDepths::new(phi, cfg);
    let b = &cfg.budget;
    let position = |j: usize| -> Result<Lemma31Position> {
            let phi_j = c.differential(j);
            let (rj, sj) = (r[j - 1], s[j - 1]);
            let rank_ok = ranks[j - 1] as i64 <= rj;
            let depth_phi_j = saturated_depth(phi_j, rj, cfg)?;
            let depth_phi = depths.depth(sj)?;
            let count = if rj <= 0 { 0 } else { phi_j.minor_count(rj as usize) };
            let (contained, radical_equal, skipped) = if count > cfg.minor_cap as u128 {
                (None, None, Some(format!("{count} minors of size {rj} exceed the cap {}", cfg.minor_cap)))
            } else {
                let a = phi_j.minors_ideal(rj).saturate_irrelevant(b)?;
                let big = phi.minors_ideal(sj).saturate_irrelevant(b)?;
                let mut contained = true;
                for p in a.generators() {
                    if !big.contains(p, b)? {
                        contained = false;
                        break;
                    }
                }
                let mut radical = true;
                for p in a.generators() {
                    if !big.radical_contains(p, b)? {
                        radical = false;
                        break;
                    }
                }
                if radical {
                    for p in big.generators() {
                        if !a.radical_contains(p, b)? {
                            radical = false;
                            break;
                        }
                    }
                }
                (Some(contained), Some(radical), None)
            };
            let ok = rank_ok && depth_phi_j == depth_phi && contained != Some(false) && radical_equal != Some(false);
            Ok(Lemma31Position {
                j,
                rank_phi: ranks[j - 1],
                r_j: rj,
                s_j: sj,
                rank_ok,
                depth_phi_j,
                depth_phi,
                contained,
                radical_equal,
                skipped,
                ok,
            })
    };
    let positions = (1..=e)
        .into_par_iter()
        .map(|j| position(j).map_err(|err| at_position(j, err)))
        .collect::<Result<Vec<_>>>()?;
    let verdict = positions.iter().all(|p| p.ok);
    Ok(Lemma31Report {
        index: c.index(),
        r,
        s,
        r_identity: r_identity_holds(c),
        positions,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Remark32Report {
    pub f: usize,
    pub g: usize,
    pub depth: DepthValue,
    pub required: usize,
    pub hypothesis: bool,
    /// Loper certificates for `C^{-1}, …, C^{f-g+1}`, present when the hypothesis holds.
    pub complexes: Vec<LoperCertificate>,
    pub lengths_ok: bool,
    pub verdict: bool,
}

/// If `depth((I_g(φ) : B^∞)) ≥ f - g + 1`, certifies every `C^i` with
/// `-1 ≤ i ≤ f - g + 1` through [`loper_check`] and checks each has length `f - g + 1`.
pub fn remark32_sweep<K: Field>(phi: &GradedMatrix<K>, cfg: &CheckConfig) -> Result<Remark32Report> {
    let (f, g) = (phi.ncols(), phi.nrows());
    let required = f - g + 1;
    let depth = saturated_depth(phi, g as i64, cfg)?;
    let hypothesis = depth.at_least(required as i64);
    let complexes = if hypothesis {
        (-1..=required as i64)
            .into_par_iter()
            .map(|i| loper_check(&build_complex(phi, i)?, Some((f, g)), cfg))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let lengths_ok = complexes.iter().all(|c| c.length == required);
    let verdict = hypothesis && lengths_ok && complexes.iter().all(|c| c.verdict);
    Ok(Remark32Report {
        f,
        g,
        depth,
        required,
        hypothesis,
        complexes,
        lengths_ok,
        verdict,
    })
}
