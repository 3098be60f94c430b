use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::config::{EmitFormat, ExperimentConfig, ExperimentKind, OptPolicy, StepPolicy};
use super::emit::{rows_from, write_series_csv, InstanceSummary, OptSummary, RunSummary, Summary, SCHEMA_VERSION};
use super::movielens::ingest_movielens;
use super::synthetic::generate_synthetic_case;
use crate::continuous::StepSchedule;
use crate::discrete::DEFAULT_ENUMERATION_CAP;
use crate::error::{Error, Result};
use crate::evaluation::{
    certificate_from, compute_opt_minimax, error_series, phi_auto, phi_greedy, MetricSeries, OptConfig,
    OptReference,
};
use crate::matroid::MatroidConstraint;
use crate::objective::{Objective, RecommenderAttack, RecommenderAttackSpec};
use crate::region::FeasibleRegion;
use crate::solvers::{egce_step_bound, hex_digest, Algorithm, SolveResult, SolverConfig};

/// A ready-to-solve experiment instance.
pub struct Instance {
    pub objective: Box<dyn Objective>,
    pub constraint: MatroidConstraint,
    pub region: FeasibleRegion,
    /// Greedy utility on the unperturbed ratings (attack experiments only).
    pub baseline_utility: Option<f64>,
}

/// Builds the objective, constraint, and region an experiment describes.
/// Relative ratings paths resolve against the working directory.
pub fn build_instance(kind: &ExperimentKind) -> Result<Instance> {
    match kind {
        ExperimentKind::SyntheticCase { m, n, k, lambda, seed } => {
            let (obj, c, region) = generate_synthetic_case(*m, *n, *k, *lambda, *seed)?;
            Ok(Instance {
                objective: Box::new(obj),
                constraint: c,
                region,
                baseline_utility: None,
            })
        }
        ExperimentKind::MovielensAttack {
            ratings,
            users,
            movies,
            k,
            budget_fraction,
        } => {
            let matrix = ingest_movielens(ratings, *users, *movies)?;
            let spec = RecommenderAttackSpec::with_budget_fraction(*users, *movies, matrix.values, *budget_fraction);
            let obj = RecommenderAttack::new(spec)?;
            let region = obj.region()?;
            let c = MatroidConstraint::uniform(*movies, *k)?;
            let baseline = phi_greedy(&obj, &c, &obj.spec().ratings)?.1;
            Ok(Instance {
                objective: Box::new(obj),
                constraint: c,
                region,
                baseline_utility: Some(baseline),
            })
        }
    }
}

/// Command-line overrides applied on top of a configuration.
#[derive(Clone, Debug, Default)]
pub struct RunOverrides {
    pub output_dir: Option<PathBuf>,
    /// Replaces the instance seed and every solver seed.
    pub seed: Option<u64>,
    pub algorithms: Option<Vec<Algorithm>>,
}

impl RunOverrides {
    pub fn apply(&self, cfg: &ExperimentConfig) -> Result<ExperimentConfig> {
        let mut cfg = cfg.clone();
        if let Some(dir) = &self.output_dir {
            cfg.output_dir = dir.clone();
        }
        if let Some(algs) = &self.algorithms {
            cfg.algorithms = algs.clone();
        }
        if let Some(seed) = self.seed {
            if let ExperimentKind::SyntheticCase { seed: s, .. } = &mut cfg.experiment {
                *s = seed;
            }
            cfg.solver.seed = seed;
            cfg.per_algorithm.values_mut().for_each(|c| c.seed = seed);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Everything an experiment produced, in algorithm order.
pub struct ExperimentReport {
    pub summary: Summary,
    pub results: Vec<SolveResult>,
    pub series: Vec<MetricSeries>,
    pub opt: Option<OptReference>,
    pub files: Vec<PathBuf>,
}

/// Solver settings after applying the step policy.
pub fn effective_solver_config(cfg: &ExperimentConfig, alg: Algorithm, inst: &Instance) -> Result<SolverConfig> {
    let mut sc = cfg.solver_for(alg).clone();
    if cfg.step_policy == StepPolicy::Configured {
        return Ok(sc);
    }
    if alg == Algorithm::Egce {
        let bound = egce_step_bound(inst.objective.as_ref(), &sc)?;
        if bound.is_finite() {
            sc.schedule = StepSchedule::Constant { gamma: bound };
        }
    } else {
        let smooth = inst.objective.smoothness();
        let c = if smooth.lipschitz > 0.0 && smooth.lipschitz.is_finite() {
            Some(1.0 / smooth.lipschitz)
        } else {
            match (inst.region.diameter(), smooth.gradient_bound.finite()) {
                (Some(d), Some(m)) => Some(d / m),
                _ => None,
            }
        };
        if let Some(c) = c.filter(|c| *c > 0.0 && c.is_finite()) {
            sc.schedule = StepSchedule::ConstantOverSqrtT { c };
        }
    }
    Ok(sc)
}

fn opt_reference(cfg: &ExperimentConfig, inst: &Instance) -> Result<Option<OptReference>> {
    let count = inst.constraint.count_independent_sets();
    let wanted = match cfg.opt_reference {
        OptPolicy::Never => false,
        OptPolicy::Always => true,
        OptPolicy::Auto => count <= cfg.opt_cap,
    };
    if !wanted {
        return Ok(None);
    }
    let oc = OptConfig {
        cap: DEFAULT_ENUMERATION_CAP.max(cfg.opt_cap),
        ..OptConfig::default()
    };
    compute_opt_minimax(inst.objective.as_ref(), &inst.constraint, &inst.region, &oc).map(Some)
}

fn x_digest(x: &[f64]) -> String {
    let mut h = Sha256::new();
    for v in x {
        h.update(v.to_le_bytes());
    }
    hex_digest(&h.finalize())
}

/// Runs every configured algorithm and writes the requested files into the
/// output directory. Files written before a failure are removed.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let inst = build_instance(&cfg.experiment)?;
    let dir = cfg.output_dir.clone();
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut files = Vec::new();
    match run_into(cfg, &inst, &dir, &mut files) {
        Ok(mut report) => {
            report.files = files;
            Ok(report)
        }
        Err(e) => {
            for f in &files {
                let _ = std::fs::remove_file(f);
            }
            Err(e)
        }
    }
}

fn run_into(cfg: &ExperimentConfig, inst: &Instance, dir: &Path, files: &mut Vec<PathBuf>) -> Result<ExperimentReport> {
    let obj = inst.objective.as_ref();
    let c = &inst.constraint;
    let opt = opt_reference(cfg, inst)?;
    let emit_csv = cfg.emit.contains(&EmitFormat::Csv);

    let mut results = Vec::new();
    let mut all_series = Vec::new();
    let mut runs = Vec::new();
    for &alg in &cfg.algorithms {
        let sc = effective_solver_config(cfg, alg, inst)?;
        let result = alg.solve(obj, c, &inst.region, &sc)?;
        let series = error_series(&result, obj, c, opt.as_ref().map(|o| o.value), cfg.exact_metric_cap)?;
        let (phi, provenance) = phi_auto(obj, c, &result.x_sol, cfg.exact_metric_cap)?;
        let alpha = alg.alpha(c);
        let certificate = opt
            .as_ref()
            .map(|o| certificate_from(alpha, phi, provenance, o.value, cfg.certify_eps));
        let attacked_utility = match inst.baseline_utility {
            Some(_) => Some(phi_greedy(obj, c, &result.x_sol)?.1),
            None => None,
        };
        let csv = if emit_csv {
            let name = format!("{}.csv", alg.as_str());
            let path = dir.join(&name);
            let wall: Vec<f64> = result.trace.iter().map(|r| r.wall_ns as f64 / 1e6).collect();
            files.push(path.clone());
            write_series_csv(&path, &rows_from(&series, &wall), opt.is_some())?;
            Some(name)
        } else {
            None
        };
        runs.push(RunSummary {
            algorithm: alg,
            alpha,
            horizon: sc.horizon,
            x_sol_digest: x_digest(&result.x_sol),
            trace_digest: result.digest(),
            phi,
            phi_provenance: provenance,
            guarantees: result.guarantees.clone(),
            certificate,
            attacked_utility,
            csv,
        });
        results.push(result);
        all_series.push(series);
    }

    let summary = Summary {
        schema: SCHEMA_VERSION,
        config: cfg.clone(),
        instance: InstanceSummary {
            objective: obj.name().to_string(),
            dim: obj.dim(),
            ground_size: obj.ground_size(),
            constraint: c.clone(),
        },
        opt_reference: opt.as_ref().map(|o| OptSummary {
            value: o.value,
            iterations: o.iterations,
            approximate: o.approximate,
        }),
        baseline_utility: inst.baseline_utility,
        runs,
    };
    if cfg.emit.contains(&EmitFormat::Json) {
        let path = dir.join("summary.json");
        files.push(path.clone());
        summary.write(&path)?;
    }
    Ok(ExperimentReport {
        summary,
        results,
        series: all_series,
        opt,
        files: Vec::new(),
    })
}
