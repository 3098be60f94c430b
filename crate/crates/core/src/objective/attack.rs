//! Recommender utility under rating perturbation.
//!
//! The continuous variable is the perturbed rating matrix `X′` (users × items,
//! row-major); the set is the list of recommended items. The value is the
//! average over users of the best rating among the recommended items.

use serde::{Deserialize, Serialize};

use super::facility::FacilitySetFunction;
use super::{GradientBound, Objective, SetFunction, Smoothness};
use crate::error::{Error, Result};
use crate::ground::SubsetSelection;
use crate::region::FeasibleRegion;

pub const RATING_MIN: f64 = 0.0;
pub const RATING_MAX: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecommenderAttackSpec {
    pub users: usize,
    pub items: usize,
    /// Baseline ratings, row-major `users × items`.
    pub ratings: Vec<f64>,
    /// Frobenius budget of the perturbation.
    pub budget: f64,
}

impl RecommenderAttackSpec {
    /// Budget as a fraction of `users × items`.
    pub fn with_budget_fraction(users: usize, items: usize, ratings: Vec<f64>, fraction: f64) -> Self {
        RecommenderAttackSpec {
            users,
            items,
            ratings,
            budget: fraction * (users * items) as f64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RecommenderAttack {
    spec: RecommenderAttackSpec,
    smoothness: Smoothness,
}

impl RecommenderAttack {
    pub fn new(spec: RecommenderAttackSpec) -> Result<Self> {
        if spec.users == 0 || spec.items == 0 {
            return Err(Error::InvalidSpec("rating matrix must be nonempty".into()));
        }
        if spec.ratings.len() != spec.users * spec.items {
            return Err(Error::DimensionMismatch {
                expected: spec.users * spec.items,
                actual: spec.ratings.len(),
            });
        }
        if let Some(v) = spec
            .ratings
            .iter()
            .find(|v| !(RATING_MIN..=RATING_MAX).contains(*v))
        {
            return Err(Error::InvalidSpec(format!("rating {v} outside [0, 5]")));
        }
        if !(spec.budget >= 0.0) || !spec.budget.is_finite() {
            return Err(Error::InvalidSpec(format!("budget {} must be non-negative", spec.budget)));
        }
        let smoothness = Smoothness {
            lipschitz: 0.0,
            gradient_bound: GradientBound::Global(1.0 / (spec.users as f64).sqrt()),
            marginal_bound: Some(RATING_MAX),
        };
        Ok(RecommenderAttack { spec, smoothness })
    }

    pub fn spec(&self) -> &RecommenderAttackSpec {
        &self.spec
    }

    /// `{X′ : ‖X′ − X‖_F ≤ ε, 0 ≤ X′ ≤ 5}`. A zero budget collapses the ball to
    /// the baseline itself, which is represented by a degenerate box.
    pub fn region(&self) -> Result<FeasibleRegion> {
        if self.spec.budget == 0.0 {
            return FeasibleRegion::Box {
                lower: self.spec.ratings.clone(),
                upper: self.spec.ratings.clone(),
            }
            .validated();
        }
        FeasibleRegion::frobenius_box(
            self.spec.ratings.clone(),
            self.spec.users,
            self.spec.items,
            self.spec.budget,
            RATING_MIN,
            RATING_MAX,
        )
    }

    fn row<'x>(&self, x: &'x [f64], u: usize) -> &'x [f64] {
        &x[u * self.spec.items..(u + 1) * self.spec.items]
    }
}

impl Objective for RecommenderAttack {
    fn name(&self) -> &'static str {
        "recommender_attack"
    }

    fn dim(&self) -> usize {
        self.spec.users * self.spec.items
    }

    fn ground_size(&self) -> usize {
        self.spec.items
    }

    fn smoothness(&self) -> &Smoothness {
        &self.smoothness
    }

    fn default_start(&self) -> Vec<f64> {
        self.spec.ratings.clone()
    }

    fn value_unchecked(&self, x: &[f64], s: &SubsetSelection) -> f64 {
        let total: f64 = (0..self.spec.users)
            .map(|u| {
                let row = self.row(x, u);
                s.as_slice().iter().fold(0.0, |acc: f64, &j| acc.max(row[j]))
            })
            .sum();
        total / self.spec.users as f64
    }

    fn grad_unchecked(&self, x: &[f64], s: &SubsetSelection) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        let w = 1.0 / self.spec.users as f64;
        for u in 0..self.spec.users {
            let row = self.row(x, u);
            let mut arg = None;
            let mut best = 0.0;
            for &j in s.as_slice() {
                if arg.is_none() && row[j] >= best || row[j] > best {
                    best = row[j];
                    arg = Some(j);
                }
            }
            if let Some(j) = arg {
                g[u * self.spec.items + j] = w;
            }
        }
        g
    }

    fn at<'a>(&'a self, x: &[f64]) -> Box<dyn SetFunction + 'a> {
        let w = 1.0 / self.spec.users as f64;
        Box::new(FacilitySetFunction {
            n: self.spec.items,
            weights: x.iter().map(|v| v * w).collect(),
            offset: 0.0,
        })
    }
}
