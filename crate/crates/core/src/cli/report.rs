use std::time::Instant;

use serde::Serialize;

use crate::field::FieldSpec;
use crate::problem::ProblemFile;
use crate::virtuality::CheckConfig;

/// The canonical machine-readable output of every command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub problem: ProblemFile,
    pub command: String,
    pub config: EngineConfig,
    pub results: serde_json::Value,
    /// Wall-clock seconds per stage; `null` unless asked for, which keeps
    /// reports byte-identical across runs.
    pub timings: Option<Timings>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EngineConfig {
    pub field: FieldSpec,
    pub order: String,
    pub weights: Vec<i64>,
    pub seed: u64,
    pub budget_pairs: usize,
    pub minor_cap: usize,
    pub direct_minors: usize,
    pub leaf_minors: usize,
    pub probe_cap: usize,
}

impl EngineConfig {
    pub fn new(field: FieldSpec, weights: Vec<i64>, cfg: &CheckConfig, probe_cap: usize) -> Self {
        EngineConfig {
            field,
            order: "weighted grevlex".into(),
            weights,
            seed: cfg.seed,
            budget_pairs: cfg.budget.max_pairs,
            minor_cap: cfg.minor_cap,
            direct_minors: cfg.direct_minors,
            leaf_minors: cfg.leaf_minors,
            probe_cap,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Timings(Vec<(String, f64)>);

impl Timings {
    pub fn record(&mut self, stage: &str, started: Instant) {
        self.0.push((stage.to_string(), started.elapsed().as_secs_f64()));
    }

    pub fn render(&self) -> String {
        self.0
            .iter()
            .map(|(s, t)| format!("{s}: {t:.3}s"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}
