//! The `virtual-en` command line: argument parsing, dispatch over the
//! coefficient field, and human or JSON reports.
//!
//! Exit codes: 0 for true verdicts and pure outputs, 1 for false verdicts,
//! 2 for input errors, 3 when a computation budget runs out.

mod report;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

pub use report::{EngineConfig, Report, Timings};

use crate::complex::build_complex;
use crate::degree::MultiDegree;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::groebner::Budget;
use crate::presets::{preset, PRESET_NAMES};
use crate::probe::{annihilation_check, exactness_sweep, homology_dims, DEFAULT_PROBE_CAP, DEFAULT_SWEEP_BOUND};
use crate::problem::{Problem, ProblemFile};
use crate::virtuality::{lemma31_check, loper_check, saturated_depth, CheckConfig, MinorDepths};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "virtual-en", version, about = "Generalized Eagon-Northcott complexes and virtual-resolution certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Problem file (JSON).
    #[arg(long, global = true, conflicts_with = "preset")]
    pub input: Option<PathBuf>,

    /// Use a built-in example instead of a problem file.
    #[arg(long, global = true)]
    pub preset: Option<String>,

    /// Coefficient field: `qq` or `gfp:<p>`. Defaults to the problem's own field.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,

    /// Seed for the random evaluations that screen ranks.
    #[arg(long, global = true, default_value_t = CheckConfig::default().seed)]
    pub seed: u64,

    /// Most S-pairs reduced by a single Gröbner basis computation.
    #[arg(long, global = true, default_value_t = Budget::default().max_pairs)]
    pub budget_pairs: usize,

    /// Largest graded piece the homology probes will linearize.
    #[arg(long, global = true, default_value_t = DEFAULT_PROBE_CAP)]
    pub probe_cap: usize,

    /// Also write the JSON report to this path (`-` for stdout, replacing the text output).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,

    /// Record wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify C^i for a range of indices: theorem hypotheses and Loper's criterion.
    Check {
        /// Inclusive range `a..b`, or a single index. Defaults to -1..f-g+1.
        #[arg(long, allow_hyphen_values = true)]
        indices: Option<String>,
    },
    /// Build C^i and print its twists and differentials.
    Complex {
        /// Which complex C^i to build.
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
        /// `json` prints the differentials as entry strings.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Depth of the ideal of m×m minors of the map, optionally saturated by B.
    Depth {
        /// Size m of the minors.
        #[arg(long)]
        minors: i64,
        /// Report the depth of (I_m : B^∞) instead of I_m.
        #[arg(long)]
        saturate: bool,
    },
    /// Homology of C^i in one multidegree.
    Probe {
        /// Which complex C^i to build.
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
        /// Comma-separated components, e.g. `5,1`.
        #[arg(long, allow_hyphen_values = true)]
        degree: MultiDegree,
        /// Also search for `n ≤ N` with `b^n` killing each nonzero H_j, for every generator b of B.
        #[arg(long, value_name = "N")]
        annihilate: Option<u32>,
    },
    /// Homology of C^i in every degree with λ·d ≤ bound.
    Sweep {
        /// Which complex C^i to build.
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
        /// Largest value of λ·d visited.
        #[arg(long, default_value_t = DEFAULT_SWEEP_BOUND)]
        bound: i64,
    },
    /// Write a built-in example as a problem file.
    Preset {
        /// One of twisted-cubic, generic-2x4, hirzebruch-graph, p1p2p2, rnc:<d>.
        name: String,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank and radical comparisons between the differentials of C^i and the map.
    Lemma31 {
        /// Which complex C^i to build.
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// What a command computed, before it is wrapped in a [`Report`].
struct Outcome {
    results: serde_json::Value,
    text: String,
    verdict: Option<bool>,
    /// The order weights of the ring the command ran in.
    weights: Vec<i64>,
}

impl Outcome {
    fn pure(results: serde_json::Value, text: String) -> Self {
        Outcome { results, text, verdict: None, weights: Vec::new() }
    }
}

/// Parses `std::env::args`, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// 3 for budget exhaustion, 2 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_INPUT
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    if let Command::Preset { name, out } = &cli.command {
        let file = preset(name)?;
        match out {
            Some(path) => {
                file.save(path)?;
                println!("wrote {name} to {}", path.display());
            }
            None => println!("{}", file.to_json()),
        }
        return Ok(EXIT_TRUE);
    }

    let g = &cli.global;
    let file = match (&g.input, &g.preset) {
        (Some(path), _) => ProblemFile::load(path)?,
        (None, Some(name)) => preset(name)?,
        (None, None) => {
            return Err(Error::InvalidInput(format!(
                "give a problem with --input FILE or --preset NAME ({})",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    let field = g.field.unwrap_or(file.ring.field);
    let file = file.with_field(field);
    let cfg = CheckConfig {
        budget: Budget::pairs(g.budget_pairs),
        seed: g.seed,
        ..CheckConfig::default()
    };

    let started = Instant::now();
    let mut timings = Timings::default();
    let outcome = match field {
        FieldSpec::Prime(p) => dispatch(&cli.command, &file, PrimeField::new(p)?, &cfg, g.probe_cap, &mut timings)?,
        FieldSpec::Rationals => dispatch(&cli.command, &file, Rationals, &cfg, g.probe_cap, &mut timings)?,
    };
    timings.record("total", started);

    let report = Report {
        problem: file.clone(),
        command: command_line(&cli.command),
        config: EngineConfig::new(field, outcome.weights, &cfg, g.probe_cap),
        results: outcome.results,
        timings: g.timings.then_some(timings),
    };
    let to_stdout = g.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    match &g.json {
        Some(_) if to_stdout => println!("{}", report.to_json()),
        Some(path) => {
            std::fs::write(path, report.to_json() + "\n")?;
        }
        None => {}
    }
    if !to_stdout {
        let mut out = std::io::stdout().lock();
        out.write_all(outcome.text.as_bytes())?;
        if g.timings {
            if let Some(t) = &report.timings {
                writeln!(out, "{}", t.render())?;
            }
        }
    }
    Ok(match outcome.verdict {
        Some(false) => EXIT_FALSE,
        _ => EXIT_TRUE,
    })
}

/// The command as it would be typed, without the global flags.
fn command_line(c: &Command) -> String {
    match c {
        Command::Check { indices } => match indices {
            Some(r) => format!("check --indices {r}"),
            None => "check".into(),
        },
        Command::Complex { index, format } => {
            format!("complex --index {index} --format {}", if *format == Format::Json { "json" } else { "text" })
        }
        Command::Depth { minors, saturate } => {
            format!("depth --minors {minors}{}", if *saturate { " --saturate" } else { "" })
        }
        Command::Probe { index, degree, annihilate } => {
            let mut s = format!("probe --index {index} --degree {}", degree.to_csv());
            if let Some(n) = annihilate {
                s.push_str(&format!(" --annihilate {n}"));
            }
            s
        }
        Command::Sweep { index, bound } => format!("sweep --index {index} --bound {bound}"),
        Command::Preset { name, .. } => format!("preset {name}"),
        Command::Lemma31 { index } => format!("lemma31 --index {index}"),
    }
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_indices(s: &str) -> Result<RangeInclusive<i64>> {
    let bad = || Error::InvalidInput(format!("bad index range `{s}` (expected a..b)"));
    let s = s.trim();
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let a: i64 = s.parse().map_err(|_| bad())?;
            Ok(a..=a)
        }
    }
}

fn dispatch<K: Field>(
    command: &Command,
    file: &ProblemFile,
    field: K,
    cfg: &CheckConfig,
    probe_cap: usize,
    timings: &mut Timings,
) -> Result<Outcome> {
    let problem = file.build(field)?;
    let phi = &problem.phi;
    let (f, g) = (phi.ncols(), phi.nrows());
    let mut outcome = run_command(command, &problem, f, g, cfg, probe_cap, timings)?;
    outcome.weights = problem.ring.weights().to_vec();
    Ok(outcome)
}

fn run_command<K: Field>(
    command: &Command,
    problem: &Problem<K>,
    f: usize,
    g: usize,
    cfg: &CheckConfig,
    probe_cap: usize,
    timings: &mut Timings,
) -> Result<Outcome> {
    let phi = &problem.phi;
    match command {
        Command::Check { indices } => {
            let range = match indices {
                Some(s) => parse_indices(s)?,
                None => -1..=(f - g + 1) as i64,
            };
            let depths = MinorDepths::new(phi, cfg);
            let started = Instant::now();
            let entries = range
                .clone()
                .into_par_iter()
                .map(|i| {
                    let theorem = depths.theorem(i)?;
                    let loper = loper_check(&build_complex(phi, i)?, Some((f, g)), cfg)?;
                    Ok((theorem, loper))
                })
                .collect::<Result<Vec<_>>>()?;
            timings.record("check", started);
            let mut text = String::new();
            for (t, l) in &entries {
                let hyp = if t.verdict { "hypotheses hold" } else { "hypothesis not satisfied" };
                text.push_str(&format!(
                    "C^{}: length {}, theorem {}, loper {}\n",
                    t.i,
                    l.length,
                    hyp,
                    if l.verdict { "true" } else { "false" }
                ));
                for m in &t.minors {
                    text.push_str(&format!(
                        "  depth(I_{} : B^inf) = {} (need {}){}\n",
                        m.m,
                        m.depth,
                        m.required,
                        if m.ok { "" } else { "  not satisfied" }
                    ));
                }
                for p in &l.positions {
                    text.push_str(&format!(
                        "  j={} rank {}+{} of {} depth {} (need {}) {}\n",
                        p.j,
                        p.rank_phi,
                        p.rank_next,
                        p.rank_f,
                        p.depth,
                        p.required,
                        if p.ok { "ok" } else { "FAILS" }
                    ));
                }
            }
            let verdict = entries.iter().all(|(_, l)| l.verdict);
            let results = entries
                .iter()
                .map(|(t, l)| json!({ "index": t.i, "theorem": t, "loper": l }))
                .collect();
            Ok(Outcome {
                results: serde_json::Value::Array(results),
                text,
                verdict: Some(verdict),
                weights: Vec::new(),
            })
        }
        Command::Complex { index, format } => {
            let c = build_complex(phi, *index)?;
            let table = c.betti_table();
            let differentials: Vec<_> = c.differentials().iter().map(|m| m.entry_strings()).collect();
            let results = json!({
                "index": index,
                "length": c.length(),
                "ranks": c.ranks(),
                "betti": table,
                "differentials": differentials,
                "compose_zero": c.compose_check(),
            });
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&results)? + "\n",
                Format::Text => {
                    let mut s = format!("C^{index} (length {})\n{}", c.length(), table.render());
                    for (j, m) in differentials.iter().enumerate() {
                        s.push_str(&format!("\nphi_{}:\n", j + 1));
                        for row in m {
                            s.push_str(&format!("  [{}]\n", row.join(", ")));
                        }
                    }
                    s
                }
            };
            Ok(Outcome::pure(results, text))
        }
        Command::Depth { minors, saturate } => {
            let started = Instant::now();
            let depth = if *saturate {
                saturated_depth(phi, *minors, cfg)?
            } else {
                phi.minors_ideal(*minors).depth(&cfg.budget)?
            };
            timings.record("depth", started);
            let results = json!({ "minors": minors, "saturate": saturate, "depth": depth });
            Ok(Outcome::pure(results, format!("{depth}\n")))
        }
        Command::Probe { index, degree, annihilate } => {
            let c = build_complex(phi, *index)?;
            let profile = homology_dims(&c, degree, probe_cap)?;
            let mut text = format!("C^{index} in degree {degree}\n");
            for p in &profile.positions {
                text.push_str(&format!(
                    "  H_{} = {} (dim {}, kernel {}, image {})\n",
                    p.j, p.homology, p.dim, p.kernel, p.image
                ));
            }
            let mut killers = Vec::new();
            if let Some(n_max) = annihilate {
                for h in profile.higher() {
                    for b in problem.ring.irrelevant_generators() {
                        let a = annihilation_check(&c, h.j, degree, &b, *n_max, probe_cap)?;
                        text.push_str(&format!(
                            "  ({})^n kills H_{}: {}\n",
                            a.monomial,
                            h.j,
                            a.n.map_or(format!("not for n <= {n_max}"), |n| format!("n = {n}"))
                        ));
                        killers.push(a);
                    }
                }
            }
            let results = json!({ "index": index, "profile": profile, "annihilation": killers });
            Ok(Outcome::pure(results, text))
        }
        Command::Sweep { index, bound } => {
            let c = build_complex(phi, *index)?;
            let started = Instant::now();
            let sweep = exactness_sweep(&c, *bound, probe_cap)?;
            timings.record("sweep", started);
            let mut text = format!(
                "C^{index}, {} degrees with lambda.d <= {bound}: {}\n",
                sweep.profiles.len(),
                if sweep.exact() { "no higher homology" } else { "higher homology found" }
            );
            for h in &sweep.nonzero {
                text.push_str(&format!("  H_{} in degree {} has dimension {}\n", h.j, h.degree, h.dim));
            }
            if !sweep.skipped.is_empty() {
                text.push_str(&format!("  {} degrees skipped over the probe cap\n", sweep.skipped.len()));
            }
            text.push_str(&format!("  euler characteristic {}\n", if sweep.euler_ok { "balances" } else { "MISMATCH" }));
            let results = json!({
                "index": sweep.index,
                "bound": sweep.bound,
                "exact": sweep.exact(),
                "nonzero": sweep.nonzero,
                "skipped": sweep.skipped,
                "euler_ok": sweep.euler_ok,
                "degrees": sweep.profiles.len(),
            });
            Ok(Outcome::pure(results, text))
        }
        Command::Lemma31 { index } => {
            let c = build_complex(phi, *index)?;
            let rep = lemma31_check(phi, &c, cfg)?;
            let mut text = format!(
                "C^{index}: r = {:?}, s = {:?}, r identity {}\n",
                rep.r, rep.s, rep.r_identity
            );
            for p in &rep.positions {
                let show = |b: Option<bool>| b.map_or("skipped".to_string(), |b| b.to_string());
                text.push_str(&format!(
                    "  j={} rank {} (r {} s {}) depth {} vs {} contained {} radical {}{}\n",
                    p.j,
                    p.rank_phi,
                    p.r_j,
                    p.s_j,
                    p.depth_phi_j,
                    p.depth_phi,
                    show(p.contained),
                    show(p.radical_equal),
                    if p.ok { "" } else { "  FAILS" }
                ));
            }
            text.push_str(&format!("verdict {}\n", rep.verdict));
            Ok(Outcome {
                results: serde_json::to_value(&rep)?,
                text,
                verdict: Some(rep.verdict),
                weights: Vec::new(),
            })
        }
        Command::Preset { .. } => unreachable!("handled before a problem is loaded"),
    }
}
