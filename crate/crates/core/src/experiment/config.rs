//! JSON experiment configuration. Unknown fields are rejected.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solvers::{Algorithm, SolverConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExperimentKind {
    /// Random convex facility location with `n` blocks of size `m`.
    SyntheticCase {
        m: usize,
        n: usize,
        k: usize,
        #[serde(default = "one_f64")]
        lambda: f64,
        #[serde(default)]
        seed: u64,
    },
    /// Rating-perturbation attack on a MovieLens-format ratings file.
    MovielensAttack {
        ratings: PathBuf,
        users: usize,
        movies: usize,
        k: usize,
        #[serde(default = "default_budget")]
        budget_fraction: f64,
    },
}

fn one_f64() -> f64 {
    1.0
}

fn default_budget() -> f64 {
    0.005
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmitFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptPolicy {
    /// Compute the reference when the independent sets number at most
    /// `opt_cap`.
    #[default]
    Auto,
    Always,
    Never,
}

/// How step sizes are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepPolicy {
    /// The extension method runs at its stability bound `1 / max(L_x, L_y)`.
    /// The other solvers use `γ = c / √T` with `c = 1 / L`, or with
    /// `c = D / M` (region diameter over gradient bound) when the objective
    /// reports `L = 0`.
    #[default]
    Auto,
    /// Schedules exactly as configured.
    Configured,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default = "all_algorithms")]
    pub algorithms: Vec<Algorithm>,
    /// Settings shared by every algorithm without its own entry.
    #[serde(default = "default_solver")]
    pub solver: SolverConfig,
    #[serde(default)]
    pub step_policy: StepPolicy,
    #[serde(default)]
    pub per_algorithm: BTreeMap<Algorithm, SolverConfig>,
    #[serde(default = "default_out")]
    pub output_dir: PathBuf,
    #[serde(default = "default_emit")]
    pub emit: Vec<EmitFormat>,
    #[serde(default)]
    pub opt_reference: OptPolicy,
    #[serde(default = "default_opt_cap")]
    pub opt_cap: u128,
    /// Worst-case metrics are exact up to this many independent sets and
    /// greedy beyond.
    #[serde(default = "default_metric_cap")]
    pub exact_metric_cap: u128,
    /// `ε` used for the reported certificates.
    #[serde(default)]
    pub certify_eps: f64,
}

fn all_algorithms() -> Vec<Algorithm> {
    Algorithm::ALL.to_vec()
}

fn default_solver() -> SolverConfig {
    SolverConfig::new(100)
}

fn default_out() -> PathBuf {
    PathBuf::from("results")
}

fn default_emit() -> Vec<EmitFormat> {
    vec![EmitFormat::Csv, EmitFormat::Json]
}

fn default_opt_cap() -> u128 {
    20_000
}

fn default_metric_cap() -> u128 {
    100_000
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        ExperimentConfig {
            experiment,
            algorithms: all_algorithms(),
            solver: default_solver(),
            step_policy: StepPolicy::Auto,
            per_algorithm: BTreeMap::new(),
            output_dir: default_out(),
            emit: default_emit(),
            opt_reference: OptPolicy::Auto,
            opt_cap: default_opt_cap(),
            exact_metric_cap: default_metric_cap(),
            certify_eps: 0.0,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        match &self.experiment {
            ExperimentKind::SyntheticCase { m, n, k, lambda, .. } => {
                if *m == 0 || *n == 0 || *k == 0 {
                    return Err(Error::Config("m, n, k must be positive".into()));
                }
                if k > n {
                    return Err(Error::Config(format!("k = {k} exceeds n = {n}")));
                }
                if !(*lambda > 0.0) {
                    return Err(Error::Config(format!("lambda = {lambda} must be positive")));
                }
            }
            ExperimentKind::MovielensAttack {
                users,
                movies,
                k,
                budget_fraction,
                ..
            } => {
                if *users == 0 || *movies == 0 || *k == 0 {
                    return Err(Error::Config("users, movies, k must be positive".into()));
                }
                if k > movies {
                    return Err(Error::Config(format!("k = {k} exceeds movies = {movies}")));
                }
                if !(*budget_fraction >= 0.0 && *budget_fraction <= 1.0) {
                    return Err(Error::Config(format!(
                        "budget fraction {budget_fraction} must lie in [0, 1]"
                    )));
                }
            }
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        if self.emit.is_empty() {
            return Err(Error::Config("no emit formats selected".into()));
        }
        self.solver.validate()?;
        for cfg in self.per_algorithm.values() {
            cfg.validate()?;
        }
        if !(self.certify_eps >= 0.0) {
            return Err(Error::Config("certify_eps must be non-negative".into()));
        }
        Ok(())
    }

    /// Solver settings for `alg`: its own entry, else the shared one.
    pub fn solver_for(&self, alg: Algorithm) -> &SolverConfig {
        self.per_algorithm.get(&alg).unwrap_or(&self.solver)
    }

    pub fn has_own_settings(&self, alg: Algorithm) -> bool {
        self.per_algorithm.contains_key(&alg)
    }
}

/// Parses a comma-separated algorithm list such as `gg,egg`.
pub fn parse_algorithms(list: &str) -> Result<Vec<Algorithm>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}
