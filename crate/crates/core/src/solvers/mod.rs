//! Minimax solvers: gradient and extra-gradient steps in `x` paired with
//! greedy, replacement-greedy, or multilinear-extension updates of the set.

mod egce;
mod greedy_based;
mod maxmin;
mod replacement_based;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use egce::{egce_step_bound, solve_egce};
pub use greedy_based::{solve_egg, solve_gg};
pub use maxmin::extract_maxmin_solution;
pub use replacement_based::{solve_egrg, solve_grg};

use crate::continuous::{project, StepSchedule};
use crate::discrete::{greedy, lazy_greedy, replacement_greedy};
use crate::error::{Error, Result};
use crate::ground::SubsetSelection;
use crate::matroid::MatroidConstraint;
use crate::multilinear::{EstimatorConfig, GradientMode};
use crate::objective::{CountingSetFunction, Objective};
use crate::region::FeasibleRegion;
use crate::vector::{add_scaled, Vector};

pub const ONE_MINUS_INV_E: f64 = 1.0 - 1.0 / std::f64::consts::E;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Gg,
    Egg,
    Grg,
    Egrg,
    Egce,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Gg,
        Algorithm::Egg,
        Algorithm::Grg,
        Algorithm::Egrg,
        Algorithm::Egce,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Gg => "gg",
            Algorithm::Egg => "egg",
            Algorithm::Grg => "grg",
            Algorithm::Egrg => "egrg",
            Algorithm::Egce => "egce",
        }
    }

    /// Averages the extrapolated iterates `x̂_t` rather than `x_t`.
    pub fn averages_extrapolated(&self) -> bool {
        matches!(self, Algorithm::Egg | Algorithm::Egrg | Algorithm::Egce)
    }

    /// Approximation factor the algorithm's guarantee is stated with.
    pub fn alpha(&self, c: &MatroidConstraint) -> f64 {
        match self {
            Algorithm::Gg | Algorithm::Egg if c.is_uniform() => ONE_MINUS_INV_E,
            _ => 0.5,
        }
    }

    pub fn solve(
        &self,
        obj: &dyn Objective,
        c: &MatroidConstraint,
        region: &FeasibleRegion,
        cfg: &SolverConfig,
    ) -> Result<SolveResult> {
        match self {
            Algorithm::Gg => solve_gg(obj, c, region, cfg),
            Algorithm::Egg => solve_egg(obj, c, region, cfg),
            Algorithm::Grg => solve_grg(obj, c, region, cfg),
            Algorithm::Egrg => solve_egrg(obj, c, region, cfg),
            Algorithm::Egce => solve_egce(obj, c, region, cfg),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown algorithm '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    /// Horizon `T ≥ 1`; 100 when omitted.
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default)]
    pub schedule: StepSchedule,
    #[serde(default)]
    pub seed: u64,
    /// Gradient evaluation for the extension method.
    #[serde(default = "default_gradient_mode")]
    pub gradient_mode: GradientMode,
    /// Keep every `trace_every`-th record (plus the last).
    #[serde(default = "one")]
    pub trace_every: usize,
    /// Allow extension steps above the stability bound.
    #[serde(default)]
    pub unsafe_step: bool,
    /// Overrides the smoothness constant in `y` used by the extension method.
    #[serde(default)]
    pub l_y: Option<f64>,
    #[serde(default)]
    pub lazy_greedy: bool,
    /// Record wall-clock time per iteration; off keeps traces reproducible.
    #[serde(default)]
    pub record_timing: bool,
    /// Starting point before projection; objective default when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Vec<f64>>,
}

fn one() -> usize {
    1
}

fn default_horizon() -> usize {
    100
}

fn default_gradient_mode() -> GradientMode {
    GradientMode::Sampled(EstimatorConfig::default())
}

impl SolverConfig {
    pub fn new(horizon: usize) -> Self {
        SolverConfig {
            horizon,
            schedule: StepSchedule::default(),
            seed: 0,
            gradient_mode: default_gradient_mode(),
            trace_every: 1,
            unsafe_step: false,
            l_y: None,
            lazy_greedy: false,
            record_timing: false,
            start: None,
        }
    }

    pub fn with_schedule(mut self, schedule: StepSchedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_gradient_mode(mut self, mode: GradientMode) -> Self {
        self.gradient_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.schedule.validate(self.horizon)?;
        if self.trace_every == 0 {
            return Err(Error::Config("trace_every must be at least 1".into()));
        }
        if let GradientMode::Sampled(e) = &self.gradient_mode {
            e.validate()?;
        }
        Ok(())
    }

    fn gamma(&self, t: usize) -> f64 {
        self.schedule.gamma(t, self.horizon)
    }

    fn keeps(&self, t: usize) -> bool {
        (t - 1).is_multiple_of(self.trace_every) || t == self.horizon
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub t: usize,
    pub gamma: f64,
    pub x: Vec<f64>,
    /// `S_t` for set-based solvers, the rounded `y_t` for the extension method.
    pub set: SubsetSelection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_hat: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set_hat: Option<SubsetSelection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_hat: Option<Vec<f64>>,
    /// Set-function queries made by each discrete subroutine call of this
    /// iteration, in call order.
    pub evaluations: Vec<u64>,
    /// Zero unless timing is enabled.
    pub wall_ns: u64,
}

impl IterationRecord {
    /// The iterate that enters the average for `alg`.
    pub fn averaged_point(&self, alg: Algorithm) -> &[f64] {
        if alg.averages_extrapolated() {
            self.x_hat.as_deref().unwrap_or(&self.x)
        } else {
            &self.x
        }
    }
}

/// Which hypotheses behind the algorithm's guarantee could be checked.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Guarantees {
    pub alpha: f64,
    /// A finite gradient bound is available.
    pub bounded_gradient: bool,
    /// The step-size condition holds, when one applies and is checkable.
    pub step_condition: Option<bool>,
    /// All hypotheses of the guarantee are verified.
    pub certified: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub algorithm: Algorithm,
    pub x_sol: Vector,
    pub trace: Vec<IterationRecord>,
    pub visited_union: SubsetSelection,
    pub guarantees: Guarantees,
    pub config: SolverConfig,
}

impl SolveResult {
    /// `(Σ γ_t)^{-1} Σ γ_t z_t` over the trace, where `z_t` is the averaged
    /// iterate of the algorithm.
    pub fn average_from_trace(&self) -> Vec<f64> {
        weighted_average(self.trace.iter().map(|r| (r.gamma, r.averaged_point(self.algorithm))))
    }

    /// SHA-256 over the solution and trace, excluding wall-clock times.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.algorithm.as_str().as_bytes());
        for v in self.x_sol.iter() {
            h.update(v.to_le_bytes());
        }
        for r in &self.trace {
            let mut r = r.clone();
            r.wall_ns = 0;
            h.update(serde_json::to_vec(&r).expect("records serialize"));
        }
        hex_digest(&h.finalize())
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub(crate) fn weighted_average<'a>(items: impl Iterator<Item = (f64, &'a [f64])>) -> Vec<f64> {
    let mut acc: Vec<f64> = Vec::new();
    let mut total = 0.0;
    for (w, x) in items {
        if acc.is_empty() {
            acc = vec![0.0; x.len()];
        }
        for (a, v) in acc.iter_mut().zip(x) {
            *a += w * v;
        }
        total += w;
    }
    acc.iter_mut().for_each(|a| *a /= total);
    acc
}

/// Running state shared by all solvers.
pub(crate) struct Run<'a> {
    pub alg: Algorithm,
    pub obj: &'a dyn Objective,
    pub c: &'a MatroidConstraint,
    pub region: &'a FeasibleRegion,
    pub cfg: &'a SolverConfig,
    weighted: Vec<f64>,
    weight: f64,
    pub trace: Vec<IterationRecord>,
    pub union: SubsetSelection,
    started: Option<Instant>,
}

impl<'a> Run<'a> {
    pub fn new(
        alg: Algorithm,
        obj: &'a dyn Objective,
        c: &'a MatroidConstraint,
        region: &'a FeasibleRegion,
        cfg: &'a SolverConfig,
    ) -> Result<Self> {
        cfg.validate()?;
        if obj.ground_size() != c.ground_size() {
            return Err(Error::GroundSetMismatch {
                expected: obj.ground_size(),
                actual: c.ground_size(),
            });
        }
        if obj.dim() != region.dim() {
            return Err(Error::DimensionMismatch {
                expected: obj.dim(),
                actual: region.dim(),
            });
        }
        Ok(Run {
            alg,
            obj,
            c,
            region,
            cfg,
            weighted: vec![0.0; obj.dim()],
            weight: 0.0,
            trace: Vec::new(),
            union: SubsetSelection::empty(c.ground_size()),
            started: None,
        })
    }

    pub fn start_point(&self) -> Result<Vec<f64>> {
        let start = match &self.cfg.start {
            Some(s) => s.clone(),
            None => self.obj.default_start(),
        };
        if start.len() != self.obj.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.obj.dim(),
                actual: start.len(),
            });
        }
        project(self.region, &start).map_err(|e| match e {
            Error::NonFinite(_) => Error::Config("start point is not finite".into()),
            e => e,
        })
    }

    pub fn begin_iteration(&mut self) {
        if self.cfg.record_timing {
            self.started = Some(Instant::now());
        }
    }

    /// `π_X(x − γ ∇_x f(x, S))` with non-finite quantities reported as aborts.
    pub fn step(&self, t: usize, x: &[f64], s: &SubsetSelection, gamma: f64) -> Result<Vec<f64>> {
        let g = self.obj.grad_unchecked(x, s);
        self.step_along(t, x, &g, -gamma)
    }

    /// `π_X(x − γ ∇_x f(at, S))`: the extra-gradient update, stepping from
    /// `x` with the gradient taken at the probe `at`.
    pub fn step_from(&self, t: usize, x: &[f64], at: &[f64], s: &SubsetSelection, gamma: f64) -> Result<Vec<f64>> {
        let g = self.obj.grad_unchecked(at, s);
        self.step_along(t, x, &g, -gamma)
    }

    /// `π(x + a·d)` onto the continuous region.
    pub fn step_along(&self, t: usize, x: &[f64], d: &[f64], a: f64) -> Result<Vec<f64>> {
        if d.iter().any(|v| !v.is_finite()) {
            return Err(self.abort(t, "gradient"));
        }
        let next = add_scaled(x, a, d);
        if next.iter().any(|v| !v.is_finite()) {
            return Err(self.abort(t, "iterate"));
        }
        project(self.region, &next)
    }

    pub fn abort(&self, t: usize, quantity: &'static str) -> Error {
        Error::NumericalAbort {
            algorithm: self.alg.as_str(),
            iteration: t,
            quantity,
        }
    }

    /// Greedy at `x`, returning the set and its evaluation count.
    pub fn greedy_at(&self, t: usize, x: &[f64]) -> Result<(SubsetSelection, u64)> {
        let f = self.obj.at(x);
        let counted = CountingSetFunction::new(f.as_ref());
        let out = if self.cfg.lazy_greedy {
            lazy_greedy(&counted, self.c)
        } else {
            greedy(&counted, self.c)
        };
        let s = out.map_err(|e| self.numeric(t, e))?.0;
        Ok((s, counted.total_calls()))
    }

    pub fn replacement_at(&self, t: usize, x: &[f64], s: &SubsetSelection) -> Result<(SubsetSelection, u64)> {
        let f = self.obj.at(x);
        let counted = CountingSetFunction::new(f.as_ref());
        let out = replacement_greedy(&counted, self.c.rank(), s).map_err(|e| self.numeric(t, e))?;
        Ok((out, counted.total_calls()))
    }

    fn numeric(&self, t: usize, e: Error) -> Error {
        match e {
            Error::NonFinite(_) => self.abort(t, "marginal gain"),
            e => e,
        }
    }

    pub fn record(&mut self, mut rec: IterationRecord) {
        let z = rec.averaged_point(self.alg);
        for (a, v) in self.weighted.iter_mut().zip(z) {
            *a += rec.gamma * v;
        }
        self.weight += rec.gamma;
        self.union = self.union.union(&rec.set);
        if let Some(start) = self.started.take() {
            rec.wall_ns = start.elapsed().as_nanos() as u64;
        }
        if self.cfg.keeps(rec.t) {
            self.trace.push(rec);
        }
    }

    pub fn finish(self, guarantees: Guarantees) -> Result<SolveResult> {
        let x_sol: Vec<f64> = self.weighted.iter().map(|v| v / self.weight).collect();
        let x_sol = match self.obj.blocks() {
            Some(b) => Vector::with_blocks(x_sol, b),
            None => Vector::new(x_sol),
        }
        .map_err(|_| self.abort(self.cfg.horizon, "averaged solution"))?;
        Ok(SolveResult {
            algorithm: self.alg,
            x_sol,
            trace: self.trace,
            visited_union: self.union,
            guarantees,
            config: self.cfg.clone(),
        })
    }

    /// Guarantee record for the set-based solvers, whose theorems need a
    /// bounded gradient except for the extra-gradient greedy method.
    pub fn set_guarantees(&self) -> Guarantees {
        let bounded = self.obj.smoothness().gradient_bound.finite().is_some();
        let mut notes = Vec::new();
        let certified = match self.alg {
            Algorithm::Egg => {
                notes.push("guarantee needs smoothness only; step condition not checked".into());
                true
            }
            _ => {
                if !bounded {
                    notes.push("gradient bound unavailable: bounded-gradient hypothesis unverified".into());
                }
                bounded
            }
        };
        Guarantees {
            alpha: self.alg.alpha(self.c),
            bounded_gradient: bounded,
            step_condition: None,
            certified,
            notes,
        }
    }
}

pub(crate) fn require_uniform(alg: Algorithm, c: &MatroidConstraint) -> Result<()> {
    if !c.is_uniform() {
        return Err(Error::UnsupportedConstraint {
            algorithm: alg.as_str(),
            reason: "replacement greedy supports cardinality constraints only".into(),
        });
    }
    Ok(())
}
