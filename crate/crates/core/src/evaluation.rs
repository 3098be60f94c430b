//! Worst-case metrics, optimal-value references, and approximation certificates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::continuous::project;
use crate::discrete::{brute_force_max, greedy, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::ground::SubsetSelection;
use crate::matroid::MatroidConstraint;
use crate::objective::Objective;
use crate::region::FeasibleRegion;
use crate::solvers::SolveResult;
use crate::vector::{add_scaled, norm};

/// Whether a worst-case value is exact or a greedy lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Exact,
    GreedySurrogate,
}

/// `φ̄(x) = max_{S∈I} f(x, S)` by enumeration.
pub fn phi_bar_exact(
    obj: &dyn Objective,
    c: &MatroidConstraint,
    x: &[f64],
    cap: u128,
) -> Result<(SubsetSelection, f64)> {
    obj.check_inputs(x, &SubsetSelection::empty(c.ground_size()))?;
    brute_force_max(obj.at(x).as_ref(), c, cap)
}

/// `f(x, Greedy(x))`, a `(1 − 1/e)` lower approximation of `φ̄(x)` under
/// cardinality constraints.
pub fn phi_greedy(obj: &dyn Objective, c: &MatroidConstraint, x: &[f64]) -> Result<(SubsetSelection, f64)> {
    obj.check_inputs(x, &SubsetSelection::empty(c.ground_size()))?;
    let f = obj.at(x);
    let (s, _) = greedy(f.as_ref(), c)?;
    let v = f.value(&s);
    Ok((s, v))
}

/// Exact `φ̄` when the independent sets fit under `cap`, greedy otherwise.
pub fn phi_auto(
    obj: &dyn Objective,
    c: &MatroidConstraint,
    x: &[f64],
    cap: u128,
) -> Result<(f64, Provenance)> {
    if c.count_independent_sets() <= cap {
        Ok((phi_bar_exact(obj, c, x, cap)?.1, Provenance::Exact))
    } else {
        Ok((phi_greedy(obj, c, x)?.1, Provenance::GreedySurrogate))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptConfig {
    /// Stop once the step scale falls below this.
    pub tol: f64,
    pub max_iters: usize,
    /// Iterations per step-scale phase.
    pub phase_iters: usize,
    pub cap: u128,
    /// Starting point before projection; objective default when absent.
    pub start: Option<Vec<f64>>,
    /// Number of starting points. The first is `start`; the rest are seeded
    /// random points of the region.
    pub restarts: usize,
    /// Iteration budget of the short screening run from each start.
    pub screen_iters: usize,
    /// How many of the best screened points are run to full accuracy.
    pub polish: usize,
    pub seed: u64,
}

impl Default for OptConfig {
    fn default() -> Self {
        OptConfig {
            tol: 1e-6,
            max_iters: 100_000,
            phase_iters: 2_000,
            cap: DEFAULT_ENUMERATION_CAP,
            start: None,
            restarts: 64,
            screen_iters: 3_000,
            polish: 4,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptReference {
    pub value: f64,
    pub x: Vec<f64>,
    /// Subgradient iterations summed over all starts.
    pub iterations: usize,
    /// Always true: the reference is the best iterate of a first-order method.
    pub approximate: bool,
}

/// `OPT = min_x φ̄(x)` by projected subgradient descent on the pointwise
/// maximum, using `∇_x f(x, S*(x))` at the enumerated maximizer.
///
/// Steps are `D_k / √t` along the normalized subgradient; each phase restarts
/// from the best iterate with half the previous scale `D_k`, beginning at the
/// region diameter. `φ̄` need not be convex (facility location is not), so
/// the descent runs from several starts: every start gets a short screening
/// run, the best `polish` screened points are continued to full accuracy, and
/// the lowest value found is reported.
pub fn compute_opt_minimax(
    obj: &dyn Objective,
    c: &MatroidConstraint,
    region: &FeasibleRegion,
    cfg: &OptConfig,
) -> Result<OptReference> {
    if !(cfg.tol > 0.0) || cfg.phase_iters == 0 || cfg.restarts == 0 || cfg.polish == 0 {
        return Err(Error::Config(
            "OPT reference needs tol > 0 and positive phase_iters, restarts and polish".into(),
        ));
    }
    let count = c.count_independent_sets();
    if count > cfg.cap {
        return Err(Error::InstanceTooLarge { count, cap: cfg.cap });
    }
    let base = cfg.start.clone().unwrap_or_else(|| obj.default_start());
    if cfg.restarts == 1 {
        let x = project(region, &base)?;
        return descend(obj, c, region, cfg, x, cfg.max_iters);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let scale = region.diameter().unwrap_or(1.0) / (2.0 * (base.len().max(1) as f64).sqrt());
    let mut screened = Vec::with_capacity(cfg.restarts);
    let mut iterations = 0;
    for r in 0..cfg.restarts {
        let start = if r == 0 {
            base.clone()
        } else {
            base.iter().map(|b| b + scale * rng.random_range(-2.0..2.0)).collect()
        };
        let x = project(region, &start)?;
        let out = descend(obj, c, region, cfg, x, cfg.screen_iters.min(cfg.max_iters))?;
        iterations += out.iterations;
        screened.push(out);
    }
    screened.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut best: Option<OptReference> = None;
    for s in screened.into_iter().take(cfg.polish) {
        let out = descend(obj, c, region, cfg, s.x, cfg.max_iters)?;
        iterations += out.iterations;
        if best.as_ref().is_none_or(|b| out.value < b.value) {
            best = Some(out);
        }
    }
    let mut best = best.expect("polish > 0");
    best.iterations = iterations;
    Ok(best)
}

/// One phased subgradient descent from a feasible `x`.
fn descend(
    obj: &dyn Objective,
    c: &MatroidConstraint,
    region: &FeasibleRegion,
    cfg: &OptConfig,
    mut x: Vec<f64>,
    max_iters: usize,
) -> Result<OptReference> {
    let v0 = phi_bar_exact(obj, c, &x, cfg.cap)?.1;
    let mut best = (x.clone(), v0);
    let mut scale = region.diameter().unwrap_or(1.0);
    let phase_iters = cfg.phase_iters.min(max_iters.div_ceil(8)).max(1);
    let mut iterations = 0;
    while scale >= cfg.tol && iterations < max_iters {
        x = best.0.clone();
        let mut s_star = phi_bar_exact(obj, c, &x, cfg.cap)?.0;
        for t in 1..=phase_iters {
            if iterations >= max_iters {
                break;
            }
            iterations += 1;
            let g = obj.grad_x(&x, &s_star)?;
            let gn = norm(&g);
            if gn == 0.0 {
                break;
            }
            let step = scale / ((t as f64).sqrt() * gn);
            x = project(region, &add_scaled(&x, -step, &g))?;
            let v;
            (s_star, v) = phi_bar_exact(obj, c, &x, cfg.cap)?;
            if v < best.1 {
                best = (x.clone(), v);
            }
        }
        scale *= 0.5;
    }
    Ok(OptReference {
        value: best.1,
        x: best.0,
        iterations,
        approximate: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub alpha: f64,
    pub phi: f64,
    pub phi_provenance: Provenance,
    /// `α · φ̄(x)`.
    pub lhs: f64,
    pub opt_ref: f64,
    pub eps: f64,
    /// `OPT + ε`.
    pub rhs: f64,
    pub verdict: bool,
    /// `α · φ̄(x) − OPT`, the smallest `ε` the certificate would accept.
    pub eps_observed: f64,
}

/// Checks `α · φ̄(x) ≤ OPT + ε`, falling back to the greedy value (labeled)
/// when enumeration exceeds `cap`.
pub fn certify(
    alpha: f64,
    x: &[f64],
    obj: &dyn Objective,
    c: &MatroidConstraint,
    opt_ref: f64,
    eps: f64,
    cap: u128,
) -> Result<Certificate> {
    let (phi, phi_provenance) = phi_auto(obj, c, x, cap)?;
    Ok(certificate_from(alpha, phi, phi_provenance, opt_ref, eps))
}

pub fn certificate_from(alpha: f64, phi: f64, phi_provenance: Provenance, opt_ref: f64, eps: f64) -> Certificate {
    let lhs = alpha * phi;
    let rhs = opt_ref + eps;
    Certificate {
        alpha,
        phi,
        phi_provenance,
        lhs,
        opt_ref,
        eps,
        rhs,
        verdict: lhs <= rhs,
        eps_observed: lhs - opt_ref,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorMode {
    VsFinal,
    VsOpt,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricPoint {
    pub t: usize,
    pub gamma: f64,
    pub phi: f64,
    pub error_vs_final: f64,
    pub error_vs_opt: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricSeries {
    pub provenance: Provenance,
    pub points: Vec<MetricPoint>,
}

impl MetricSeries {
    pub fn errors(&self, mode: ErrorMode) -> Vec<f64> {
        self.points
            .iter()
            .map(|p| match mode {
                ErrorMode::VsFinal => p.error_vs_final,
                ErrorMode::VsOpt => p.error_vs_opt.unwrap_or(f64::NAN),
            })
            .collect()
    }
}

/// `φ(x_t)` over the traced iterates with errors against the last traced
/// iterate and, when given, against `opt_ref`.
pub fn error_series(
    result: &SolveResult,
    obj: &dyn Objective,
    c: &MatroidConstraint,
    opt_ref: Option<f64>,
    cap: u128,
) -> Result<MetricSeries> {
    let mut provenance = Provenance::Exact;
    let mut raw = Vec::with_capacity(result.trace.len());
    for r in &result.trace {
        let (phi, p) = phi_auto(obj, c, &r.x, cap)?;
        provenance = p;
        raw.push((r.t, r.gamma, phi));
    }
    Ok(series_from_values(&raw, opt_ref, provenance))
}

/// Builds a series from `(t, γ_t, φ_t)` triples.
pub fn series_from_values(raw: &[(usize, f64, f64)], opt_ref: Option<f64>, provenance: Provenance) -> MetricSeries {
    let last = raw.last().map_or(0.0, |r| r.2);
    MetricSeries {
        provenance,
        points: raw
            .iter()
            .map(|&(t, gamma, phi)| MetricPoint {
                t,
                gamma,
                phi,
                error_vs_final: phi - last,
                error_vs_opt: opt_ref.map(|o| phi - o),
            })
            .collect(),
    }
}

/// Least-squares slope of `log |e_t|` against `log t`, over positive errors.
pub fn log_log_slope(points: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|&(t, e)| ((t as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
