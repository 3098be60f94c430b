//! `φ(S) = min_{x∈X} f(x, S)` by projected gradient descent.

use serde::{Deserialize, Serialize};

use super::projection::project;
use crate::error::{Error, Result};
use crate::ground::SubsetSelection;
use crate::objective::Objective;
use crate::region::FeasibleRegion;
use crate::vector::{add_scaled, dist};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Projected-gradient norm fell below the tolerance.
    Tolerance,
    /// Iteration budget exhausted first.
    MaxIterations,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InnerSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub stop: StopReason,
}

impl InnerSolution {
    pub fn converged(&self) -> bool {
        self.stop == StopReason::Tolerance
    }
}

/// Minimizes `f(·, S)` over the region starting from the projected default
/// start of the objective.
///
/// Uses the fixed step `1/L`. When the objective reports `L = 0`
/// (piecewise-linear in `x`), a projected subgradient method with steps
/// `D/√t` is used instead and the best iterate is returned; that variant only
/// stops on the iteration budget.
pub fn minimize_over_x(
    obj: &dyn Objective,
    s: &SubsetSelection,
    region: &FeasibleRegion,
    tol: f64,
    max_iters: usize,
) -> Result<InnerSolution> {
    minimize_from(obj, s, region, &obj.default_start(), tol, max_iters)
}

pub fn minimize_from(
    obj: &dyn Objective,
    s: &SubsetSelection,
    region: &FeasibleRegion,
    start: &[f64],
    tol: f64,
    max_iters: usize,
) -> Result<InnerSolution> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance {tol} must be positive")));
    }
    let mut x = project(region, start)?;
    let lipschitz = obj.smoothness().lipschitz;
    if lipschitz > 0.0 {
        let step = 1.0 / lipschitz;
        for it in 0..max_iters {
            let g = obj.grad_x(&x, s)?;
            let next = project(region, &add_scaled(&x, -step, &g))?;
            let pg_norm = dist(&next, &x) / step;
            x = next;
            if pg_norm <= tol {
                let value = obj.value(&x, s)?;
                return Ok(InnerSolution {
                    x,
                    value,
                    iterations: it + 1,
                    stop: StopReason::Tolerance,
                });
            }
        }
        let value = obj.value(&x, s)?;
        return Ok(InnerSolution {
            x,
            value,
            iterations: max_iters,
            stop: StopReason::MaxIterations,
        });
    }

    let diameter = region.diameter().unwrap_or(1.0);
    let mut best = (x.clone(), obj.value(&x, s)?);
    for t in 1..=max_iters {
        let g = obj.grad_x(&x, s)?;
        let gn = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gn == 0.0 {
            return Ok(InnerSolution {
                x,
                value: best.1,
                iterations: t,
                stop: StopReason::Tolerance,
            });
        }
        let step = diameter / (gn * (t as f64).sqrt());
        x = project(region, &add_scaled(&x, -step, &g))?;
        let v = obj.value(&x, s)?;
        if v < best.1 {
            best = (x.clone(), v);
        }
    }
    Ok(InnerSolution {
        x: best.0,
        value: best.1,
        iterations: max_iters,
        stop: StopReason::MaxIterations,
    })
}
