//! The convex-submodular objective contract and the built-in families.
//!
//! An [`Objective`] evaluates `f(x, S)`: convex in the continuous point `x`,
//! monotone submodular in the set `S`. Fixing `x` yields a [`SetFunction`],
//! which is what the discrete subroutines consume.

mod attack;
mod facility;
mod modular;

use std::cell::Cell;

use serde::{Deserialize, Serialize};

pub use attack::{RecommenderAttack, RecommenderAttackSpec, RATING_MAX, RATING_MIN};
pub use facility::{ConvexFacilityLocation, ConvexFacilityLocationSpec};
pub use modular::{ModularQuadratic, ModularQuadraticSpec, WeightTerm};

use crate::error::{Error, Result};
use crate::ground::{ElementId, SubsetSelection};
use crate::vector::{check_dim, check_finite};

/// Bound on `‖∇_x f(x, S)‖` used to decide whether bounded-gradient
/// guarantees can be claimed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GradientBound {
    /// Holds for every `x`.
    Global(f64),
    /// Holds on the region the objective was built for, not beyond it.
    OnRegion(f64),
    /// Grows without bound in `x`; no constant is claimed.
    Unbounded,
}

impl GradientBound {
    pub fn finite(&self) -> Option<f64> {
        match self {
            GradientBound::Global(m) | GradientBound::OnRegion(m) => Some(*m),
            GradientBound::Unbounded => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Smoothness {
    /// Lipschitz constant of `∇_x f(·, S)`, uniform over feasible `S`.
    pub lipschitz: f64,
    pub gradient_bound: GradientBound,
    /// Upper bound on `|f(x, S ∪ {e}) − f(x, S)|` over the build region.
    pub marginal_bound: Option<f64>,
}

/// `f(x, ·)` for a fixed `x`.
pub trait SetFunction {
    fn ground_size(&self) -> usize;

    fn value(&self, s: &SubsetSelection) -> f64;

    /// `f(S ∪ {e}) − f(S)` for `e ∉ S`.
    fn marginal(&self, s: &SubsetSelection, e: ElementId) -> f64 {
        self.value(&s.with(e)) - self.value(s)
    }
}

pub trait Objective: Send + Sync {
    fn name(&self) -> &'static str;

    /// Dimension `d` of the continuous variable.
    fn dim(&self) -> usize;

    /// Ground-set size `n`.
    fn ground_size(&self) -> usize;

    fn smoothness(&self) -> &Smoothness;

    /// Block sizes of the continuous variable, if it has block structure.
    fn blocks(&self) -> Option<Vec<usize>> {
        None
    }

    /// Starting point before projection onto the region.
    fn default_start(&self) -> Vec<f64> {
        vec![0.0; self.dim()]
    }

    /// `f(x, S)` without input validation.
    fn value_unchecked(&self, x: &[f64], s: &SubsetSelection) -> f64;

    /// `∇_x f(x, S)` without input validation.
    fn grad_unchecked(&self, x: &[f64], s: &SubsetSelection) -> Vec<f64>;

    /// The set function `f(x, ·)`; implementations precompute what they can at `x`.
    fn at<'a>(&'a self, x: &[f64]) -> Box<dyn SetFunction + 'a>;

    fn check_inputs(&self, x: &[f64], s: &SubsetSelection) -> Result<()> {
        check_dim(self.dim(), x)?;
        check_finite(x, "x entry")?;
        if s.ground_size() != self.ground_size() {
            return Err(Error::GroundSetMismatch {
                expected: self.ground_size(),
                actual: s.ground_size(),
            });
        }
        Ok(())
    }

    fn value(&self, x: &[f64], s: &SubsetSelection) -> Result<f64> {
        self.check_inputs(x, s)?;
        let v = self.value_unchecked(x, s);
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("{} value at {s}", self.name())));
        }
        Ok(v)
    }

    fn grad_x(&self, x: &[f64], s: &SubsetSelection) -> Result<Vec<f64>> {
        self.check_inputs(x, s)?;
        let g = self.grad_unchecked(x, s);
        check_finite(&g, "gradient entry")?;
        Ok(g)
    }

    fn marginal_gain(&self, x: &[f64], s: &SubsetSelection, e: ElementId) -> Result<f64> {
        self.check_inputs(x, s)?;
        if e.index() >= self.ground_size() {
            return Err(Error::ElementOutOfRange {
                element: e.index(),
                n: self.ground_size(),
            });
        }
        if s.contains(e) {
            return Err(Error::Precondition(format!("element {e} already in {s}")));
        }
        Ok(self.at(x).marginal(s, e))
    }
}

/// Wraps a set function and counts how often it is queried.
pub struct CountingSetFunction<'a> {
    inner: &'a dyn SetFunction,
    values: Cell<u64>,
    marginals: Cell<u64>,
}

impl<'a> CountingSetFunction<'a> {
    pub fn new(inner: &'a dyn SetFunction) -> Self {
        CountingSetFunction {
            inner,
            values: Cell::new(0),
            marginals: Cell::new(0),
        }
    }

    pub fn value_calls(&self) -> u64 {
        self.values.get()
    }

    pub fn marginal_calls(&self) -> u64 {
        self.marginals.get()
    }

    /// Value plus marginal queries.
    pub fn total_calls(&self) -> u64 {
        self.values.get() + self.marginals.get()
    }
}

impl SetFunction for CountingSetFunction<'_> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn value(&self, s: &SubsetSelection) -> f64 {
        self.values.set(self.values.get() + 1);
        self.inner.value(s)
    }

    fn marginal(&self, s: &SubsetSelection, e: ElementId) -> f64 {
        self.marginals.set(self.marginals.get() + 1);
        self.inner.marginal(s, e)
    }
}

/// A plain set function given by a closure, handy for tests and examples.
pub struct FnSetFunction<F> {
    n: usize,
    f: F,
}

impl<F: Fn(&SubsetSelection) -> f64> FnSetFunction<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnSetFunction { n, f }
    }
}

impl<F: Fn(&SubsetSelection) -> f64> SetFunction for FnSetFunction<F> {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, s: &SubsetSelection) -> f64 {
        (self.f)(s)
    }
}
