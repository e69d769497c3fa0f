use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::case::{generate_case, CaseFamily, CaseSpec, PreparedCase};
use crate::error::{Error, Result};
use crate::inequalities::{CheckKind, CheckReport, TheoremId};
use crate::quadrature::DEFAULT_NODES;

/// One SplitMix64 step: `mix64(s)` is the output of a generator in state `s`.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index`; depends only on the pair, never on execution order.
pub fn trial_seed(master_seed: u64, index: u64) -> u64 {
    mix64(master_seed ^ mix64(index))
}

fn default_theorems() -> Vec<TheoremId> {
    TheoremId::case_checks()
}
fn default_trials() -> usize {
    1000
}
fn default_seed() -> u64 {
    42
}
fn default_nodes() -> usize {
    DEFAULT_NODES
}
fn default_families() -> Vec<CaseFamily> {
    CaseFamily::all()
}
fn default_x_max() -> f64 {
    2.0
}
fn default_parallel() -> bool {
    true
}

/// What to run. Every field has a default, so `{}` is a valid config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_theorems")]
    pub theorems: Vec<TheoremId>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_seed")]
    pub master_seed: u64,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    /// Trial `i` uses `families[i % families.len()]`.
    #[serde(default = "default_families")]
    pub families: Vec<CaseFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default = "default_x_max")]
    pub x_max: f64,
    #[serde(default = "default_parallel")]
    pub parallel: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config")
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SuiteConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::Config("nodes must be at least 1".into()));
        }
        if self.families.is_empty() {
            return Err(Error::Config("at least one case family is required".into()));
        }
        if self.theorems.contains(&TheoremId::Composition) {
            return Err(Error::Config(
                "composition is not a case-based check; remove it from `theorems`".into(),
            ));
        }
        if let Some(t) = self.tolerance {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::Config(format!("tolerance must be positive, got {t}")));
            }
        }
        if !self.x_max.is_finite() || self.x_max < 0.3 {
            return Err(Error::Config(format!(
                "x_max must be at least 0.3, got {}",
                self.x_max
            )));
        }
        Ok(())
    }
}

/// One check of one trial, as written to CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub seed: u64,
    pub theorem_id: TheoremId,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub scale: f64,
    pub holds: bool,
}

/// A check that did not hold or could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub trial: usize,
    pub seed: u64,
    pub theorem_id: TheoremId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub case: CaseSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub checks: usize,
    pub passed: usize,
    /// Smallest `slack / scale` among inequality checks, largest among identities.
    pub worst_normalized_slack: f64,
}

/// Aggregate of a suite run. `total` counts individual checks
/// (trials × theorems), and `passed + failed.len() == total`.
///
/// `max_residual` is the largest normalized deficit over all checks: the
/// residual `slack/scale` of an identity, or `max(0, −slack/scale)` of an
/// inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub trials: usize,
    pub master_seed: u64,
    pub nodes: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: Vec<FailureRecord>,
    pub per_theorem: BTreeMap<TheoremId, TheoremSummary>,
    pub max_residual: f64,
    pub wall_time_ms: u64,
    #[serde(skip)]
    pub rows: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn all_hold(&self) -> bool {
        self.failed.is_empty()
    }

    /// JSON with `wall_time_ms` zeroed, for byte comparisons between runs.
    pub fn to_json_without_timing(&self) -> String {
        let mut copy = self.clone();
        copy.wall_time_ms = 0;
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Config(e.to_string()))?;
        }
        if self.rows.is_empty() {
            w.write_record(["seed", "theorem_id", "lhs", "rhs", "slack", "scale", "holds"])
                .map_err(|e| Error::Config(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    /// Failures as JSON lines, one [`FailureRecord`] per line.
    pub fn write_failures<W: Write>(&self, mut out: W) -> Result<()> {
        for f in &self.failed {
            let line = serde_json::to_string(f).map_err(|e| Error::Config(e.to_string()))?;
            writeln!(out, "{line}").map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }
}

enum Outcome {
    Report(CheckReport),
    Failed(String),
}

struct Trial {
    index: usize,
    seed: u64,
    case: Option<CaseSpec>,
    setup_error: Option<String>,
    outcomes: Vec<(TheoremId, Outcome)>,
}

fn run_trial(cfg: &SuiteConfig, index: usize) -> Trial {
    let seed = trial_seed(cfg.master_seed, index as u64);
    let family = &cfg.families[index % cfg.families.len()];
    let prepared = generate_case(seed, family, cfg.x_max, cfg.nodes)
        .and_then(|spec| PreparedCase::new(&spec));
    let prepared = match prepared {
        Ok(p) => p,
        Err(e) => {
            return Trial {
                index,
                seed,
                case: generate_case(seed, family, cfg.x_max, cfg.nodes).ok(),
                setup_error: Some(e.to_string()),
                outcomes: Vec::new(),
            }
        }
    };
    let outcomes = cfg
        .theorems
        .iter()
        .map(|&id| {
            let outcome = match prepared.run(id) {
                Ok(r) => {
                    let r = match cfg.tolerance {
                        Some(t) => r.with_tolerance(t),
                        None => r,
                    };
                    Outcome::Report(r.with_seed(seed))
                }
                Err(e) => Outcome::Failed(e.to_string()),
            };
            (id, outcome)
        })
        .collect();
    Trial {
        index,
        seed,
        case: Some(prepared.spec().clone()),
        setup_error: None,
        outcomes,
    }
}

fn deficit(r: &CheckReport) -> f64 {
    match r.kind {
        CheckKind::Identity => r.normalized_slack(),
        CheckKind::Inequality => (-r.normalized_slack()).max(0.0),
    }
}

/// Runs every configured checker on `trials` generated cases.
///
/// Trials are independent, so they run on the rayon pool when
/// `config.parallel` is set; aggregation is by trial index, so the report does
/// not depend on scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let trials: Vec<Trial> = if config.parallel {
        (0..config.trials)
            .into_par_iter()
            .map(|i| run_trial(config, i))
            .collect()
    } else {
        (0..config.trials).map(|i| run_trial(config, i)).collect()
    };

    let mut report = SuiteReport {
        trials: config.trials,
        master_seed: config.master_seed,
        nodes: config.nodes,
        total: 0,
        passed: 0,
        failed: Vec::new(),
        per_theorem: BTreeMap::new(),
        max_residual: 0.0,
        wall_time_ms: 0,
        rows: Vec::new(),
    };
    for id in &config.theorems {
        report.per_theorem.insert(
            *id,
            TheoremSummary {
                checks: 0,
                passed: 0,
                worst_normalized_slack: if id.is_identity() { 0.0 } else { f64::INFINITY },
            },
        );
    }

    for trial in trials {
        debug_assert!(trial.case.is_some() || trial.setup_error.is_some());
        if let Some(err) = &trial.setup_error {
            // Every configured check of this trial counts as failed.
            for &id in &config.theorems {
                report.total += 1;
                report.per_theorem.get_mut(&id).unwrap().checks += 1;
                if let Some(case) = &trial.case {
                    report.failed.push(FailureRecord {
                        trial: trial.index,
                        seed: trial.seed,
                        theorem_id: id,
                        slack: None,
                        scale: None,
                        error: Some(err.clone()),
                        case: case.clone(),
                    });
                }
            }
            continue;
        }
        let case = trial.case.expect("prepared trial carries its case");
        for (id, outcome) in trial.outcomes {
            report.total += 1;
            let summary = report.per_theorem.get_mut(&id).unwrap();
            summary.checks += 1;
            match outcome {
                Outcome::Report(r) => {
                    let ns = r.normalized_slack();
                    summary.worst_normalized_slack = if id.is_identity() {
                        summary.worst_normalized_slack.max(ns)
                    } else {
                        summary.worst_normalized_slack.min(ns)
                    };
                    report.max_residual = report.max_residual.max(deficit(&r));
                    report.rows.push(CheckRow {
                        seed: trial.seed,
                        theorem_id: id,
                        lhs: r.lhs,
                        rhs: r.rhs,
                        slack: r.slack,
                        scale: r.scale,
                        holds: r.holds,
                    });
                    if r.holds {
                        summary.passed += 1;
                        report.passed += 1;
                    } else {
                        report.failed.push(FailureRecord {
                            trial: trial.index,
                            seed: trial.seed,
                            theorem_id: id,
                            slack: Some(r.slack),
                            scale: Some(r.scale),
                            error: None,
                            case: case.clone(),
                        });
                    }
                }
                Outcome::Failed(err) => report.failed.push(FailureRecord {
                    trial: trial.index,
                    seed: trial.seed,
                    theorem_id: id,
                    slack: None,
                    scale: None,
                    error: Some(err),
                    case: case.clone(),
                }),
            }
        }
    }
    for s in report.per_theorem.values_mut() {
        if s.worst_normalized_slack.is_infinite() {
            s.worst_normalized_slack = 0.0;
        }
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
