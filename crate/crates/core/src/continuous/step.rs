use serde::{Deserialize, Serialize};

use super::projection::project;
use crate::error::{Error, Result};
use crate::ground::SubsetSelection;
use crate::objective::Objective;
use crate::region::FeasibleRegion;
use crate::vector::add_scaled;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepSchedule {
    /// `γ_t = c / √T` for every `t ≤ T`.
    ConstantOverSqrtT { c: f64 },
    Constant { gamma: f64 },
}

impl Default for StepSchedule {
    fn default() -> Self {
        StepSchedule::ConstantOverSqrtT { c: 1.0 }
    }
}

impl StepSchedule {
    /// Step used at iteration `t` (1-based) of a run with horizon `horizon`.
    pub fn gamma(&self, _t: usize, horizon: usize) -> f64 {
        match self {
            StepSchedule::ConstantOverSqrtT { c } => c / (horizon as f64).sqrt(),
            StepSchedule::Constant { gamma } => *gamma,
        }
    }

    pub fn validate(&self, horizon: usize) -> Result<()> {
        if horizon == 0 {
            return Err(Error::Config("horizon T must be at least 1".into()));
        }
        let g = self.gamma(1, horizon);
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::Config(format!("step size {g} must be positive and finite")));
        }
        Ok(())
    }
}

/// `π_X(x − γ ∇_x f(x, S))`.
pub fn gradient_step(
    obj: &dyn Objective,
    x: &[f64],
    s: &SubsetSelection,
    gamma: f64,
    region: &FeasibleRegion,
) -> Result<Vec<f64>> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::Precondition(format!("step size {gamma} must be positive")));
    }
    let g = obj.grad_x(x, s)?;
    project(region, &add_scaled(x, -gamma, &g))
}
