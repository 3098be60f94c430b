//! Modular-in-`S` test objective with quadratic element weights.
//!
//! `f(x, S) = Σ_{e∈S} (a_e + b_e‖x − c_e‖²) + q0 + qb‖x − qc‖²`. The inner
//! maximum over `|S| ≤ k` is the top-k weights, so ground truth is cheap.

use serde::{Deserialize, Serialize};

use super::{GradientBound, Objective, SetFunction, Smoothness};
use crate::error::{Error, Result};
use crate::ground::{ElementId, SubsetSelection};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightTerm {
    pub a: f64,
    pub b: f64,
    pub center: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularQuadraticSpec {
    pub dim: usize,
    pub terms: Vec<WeightTerm>,
    #[serde(default)]
    pub baseline_constant: f64,
    #[serde(default)]
    pub baseline_curvature: f64,
    #[serde(default)]
    pub baseline_center: Option<Vec<f64>>,
    /// Bound on element weights over the intended region, needed when some
    /// `b_e > 0`.
    #[serde(default)]
    pub marginal_bound: Option<f64>,
}

impl ModularQuadraticSpec {
    /// Constant weights `a` with no continuous dependence except `q`.
    pub fn constant(dim: usize, a: &[f64]) -> Self {
        ModularQuadraticSpec {
            dim,
            terms: a
                .iter()
                .map(|&a| WeightTerm {
                    a,
                    b: 0.0,
                    center: vec![0.0; dim],
                })
                .collect(),
            baseline_constant: 0.0,
            baseline_curvature: 0.0,
            baseline_center: None,
            marginal_bound: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModularQuadratic {
    spec: ModularQuadraticSpec,
    baseline_center: Vec<f64>,
    smoothness: Smoothness,
}

impl ModularQuadratic {
    pub fn new(spec: ModularQuadraticSpec) -> Result<Self> {
        for (e, t) in spec.terms.iter().enumerate() {
            if !(t.a >= 0.0 && t.b >= 0.0) || !t.a.is_finite() || !t.b.is_finite() {
                return Err(Error::InvalidSpec(format!(
                    "element {e}: weights a = {}, b = {} must be non-negative",
                    t.a, t.b
                )));
            }
            if t.center.len() != spec.dim {
                return Err(Error::DimensionMismatch {
                    expected: spec.dim,
                    actual: t.center.len(),
                });
            }
        }
        if !(spec.baseline_constant >= 0.0 && spec.baseline_curvature >= 0.0) {
            return Err(Error::InvalidSpec("baseline must be non-negative".into()));
        }
        let baseline_center = spec
            .baseline_center
            .clone()
            .unwrap_or_else(|| vec![0.0; spec.dim]);
        if baseline_center.len() != spec.dim {
            return Err(Error::DimensionMismatch {
                expected: spec.dim,
                actual: baseline_center.len(),
            });
        }
        let curvature: f64 = spec.terms.iter().map(|t| t.b).sum::<f64>() + spec.baseline_curvature;
        let curved = curvature > 0.0;
        let marginal_bound = if spec.terms.iter().all(|t| t.b == 0.0) {
            Some(spec.terms.iter().map(|t| t.a).fold(0.0, f64::max))
        } else {
            spec.marginal_bound
        };
        let smoothness = Smoothness {
            lipschitz: 2.0 * curvature,
            gradient_bound: if curved {
                GradientBound::Unbounded
            } else {
                GradientBound::Global(0.0)
            },
            marginal_bound,
        };
        Ok(ModularQuadratic {
            spec,
            baseline_center,
            smoothness,
        })
    }

    pub fn spec(&self) -> &ModularQuadraticSpec {
        &self.spec
    }

    pub fn weight(&self, x: &[f64], e: usize) -> f64 {
        let t = &self.spec.terms[e];
        if t.b == 0.0 {
            return t.a;
        }
        t.a + t.b * sq_dist(x, &t.center)
    }

    fn baseline(&self, x: &[f64]) -> f64 {
        self.spec.baseline_constant + self.spec.baseline_curvature * sq_dist(x, &self.baseline_center)
    }
}

fn sq_dist(x: &[f64], c: &[f64]) -> f64 {
    x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum()
}

impl Objective for ModularQuadratic {
    fn name(&self) -> &'static str {
        "modular_quadratic"
    }

    fn dim(&self) -> usize {
        self.spec.dim
    }

    fn ground_size(&self) -> usize {
        self.spec.terms.len()
    }

    fn smoothness(&self) -> &Smoothness {
        &self.smoothness
    }

    fn value_unchecked(&self, x: &[f64], s: &SubsetSelection) -> f64 {
        s.as_slice().iter().map(|&e| self.weight(x, e)).sum::<f64>() + self.baseline(x)
    }

    fn grad_unchecked(&self, x: &[f64], s: &SubsetSelection) -> Vec<f64> {
        let mut g: Vec<f64> = x
            .iter()
            .zip(&self.baseline_center)
            .map(|(xi, ci)| 2.0 * self.spec.baseline_curvature * (xi - ci))
            .collect();
        for &e in s.as_slice() {
            let t = &self.spec.terms[e];
            if t.b != 0.0 {
                for ((gi, xi), ci) in g.iter_mut().zip(x).zip(&t.center) {
                    *gi += 2.0 * t.b * (xi - ci);
                }
            }
        }
        g
    }

    fn at<'a>(&'a self, x: &[f64]) -> Box<dyn SetFunction + 'a> {
        Box::new(ModularSetFunction {
            weights: (0..self.ground_size()).map(|e| self.weight(x, e)).collect(),
            offset: self.baseline(x),
        })
    }
}

struct ModularSetFunction {
    weights: Vec<f64>,
    offset: f64,
}

impl SetFunction for ModularSetFunction {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, s: &SubsetSelection) -> f64 {
        s.as_slice().iter().map(|&e| self.weights[e]).sum::<f64>() + self.offset
    }

    fn marginal(&self, s: &SubsetSelection, e: ElementId) -> f64 {
        if s.contains(e) {
            0.0
        } else {
            self.weights[e.index()]
        }
    }
}
