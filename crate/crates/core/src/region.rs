//! Convex feasible regions for the continuous variable.
//!
//! Projections live in [`crate::continuous::projection`]; this module only
//! describes and validates the sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{check_dim, dist, norm};

pub const DEFAULT_PROJECTION_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeasibleRegion {
    EuclideanBall {
        center: Vec<f64>,
        radius: f64,
    },
    /// Entrywise bounds; infinite bounds are allowed.
    Box {
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    /// Each contiguous block lies in a ball around the origin. With
    /// `nonnegative`, the blocks are further restricted to the nonnegative orthant.
    ProductOfBalls {
        block_sizes: Vec<usize>,
        radii: Vec<f64>,
        #[serde(default)]
        nonnegative: bool,
    },
    /// `{X : ‖X − C‖_F ≤ radius, lower ≤ X ≤ upper}` with `C` stored row-major.
    FrobeniusBallIntersectBox {
        center: Vec<f64>,
        rows: usize,
        cols: usize,
        radius: f64,
        lower: f64,
        upper: f64,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    /// `{y ∈ [0,1]^dim : Σ y ≤ k}`.
    CappedSimplex {
        k: f64,
        dim: usize,
    },
}

fn default_tol() -> f64 {
    DEFAULT_PROJECTION_TOL
}

impl FeasibleRegion {
    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        FeasibleRegion::EuclideanBall { center, radius }.validated()
    }

    pub fn product_of_balls(block_sizes: Vec<usize>, radius: f64, nonnegative: bool) -> Result<Self> {
        let radii = vec![radius; block_sizes.len()];
        FeasibleRegion::ProductOfBalls {
            block_sizes,
            radii,
            nonnegative,
        }
        .validated()
    }

    pub fn frobenius_box(
        center: Vec<f64>,
        rows: usize,
        cols: usize,
        radius: f64,
        lower: f64,
        upper: f64,
    ) -> Result<Self> {
        FeasibleRegion::FrobeniusBallIntersectBox {
            center,
            rows,
            cols,
            radius,
            lower,
            upper,
            tol: DEFAULT_PROJECTION_TOL,
        }
        .validated()
    }

    /// Checks the set is well formed and nonempty.
    pub fn validated(self) -> Result<Self> {
        match &self {
            FeasibleRegion::EuclideanBall { center, radius } => {
                finite(center)?;
                if !(*radius > 0.0) || !radius.is_finite() {
                    return Err(Error::InvalidRegion(format!("ball radius {radius} must be positive")));
                }
            }
            FeasibleRegion::Box { lower, upper } => {
                if lower.len() != upper.len() {
                    return Err(Error::DimensionMismatch {
                        expected: lower.len(),
                        actual: upper.len(),
                    });
                }
                for (i, (l, u)) in lower.iter().zip(upper).enumerate() {
                    if l.is_nan() || u.is_nan() || l > u || *l == f64::INFINITY || *u == f64::NEG_INFINITY {
                        return Err(Error::InvalidRegion(format!("box bounds [{l}, {u}] at entry {i}")));
                    }
                }
            }
            FeasibleRegion::ProductOfBalls {
                block_sizes, radii, ..
            } => {
                if block_sizes.len() != radii.len() {
                    return Err(Error::DimensionMismatch {
                        expected: block_sizes.len(),
                        actual: radii.len(),
                    });
                }
                if let Some(r) = radii.iter().find(|r| !(**r > 0.0) || !r.is_finite()) {
                    return Err(Error::InvalidRegion(format!("block radius {r} must be positive")));
                }
            }
            FeasibleRegion::FrobeniusBallIntersectBox {
                center,
                rows,
                cols,
                radius,
                lower,
                upper,
                tol,
            } => {
                check_dim(rows * cols, center)?;
                finite(center)?;
                if !(*radius > 0.0) || !radius.is_finite() {
                    return Err(Error::InvalidRegion(format!("Frobenius radius {radius} must be positive")));
                }
                if !(lower <= upper) {
                    return Err(Error::InvalidRegion(format!("box bounds [{lower}, {upper}]")));
                }
                if !(*tol > 0.0) {
                    return Err(Error::InvalidRegion(format!("projection tolerance {tol}")));
                }
                // Nonempty iff the box point nearest the center lies in the ball.
                let nearest: f64 = center
                    .iter()
                    .map(|c| {
                        let d = c - c.clamp(*lower, *upper);
                        d * d
                    })
                    .sum();
                if nearest.sqrt() > *radius {
                    return Err(Error::InvalidRegion("ball and box do not intersect".into()));
                }
            }
            FeasibleRegion::CappedSimplex { k, .. } => {
                if !(*k >= 0.0) || !k.is_finite() {
                    return Err(Error::InvalidRegion(format!("capped simplex budget {k}")));
                }
            }
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        match self {
            FeasibleRegion::EuclideanBall { center, .. } => center.len(),
            FeasibleRegion::Box { lower, .. } => lower.len(),
            FeasibleRegion::ProductOfBalls { block_sizes, .. } => block_sizes.iter().sum(),
            FeasibleRegion::FrobeniusBallIntersectBox { rows, cols, .. } => rows * cols,
            FeasibleRegion::CappedSimplex { dim, .. } => *dim,
        }
    }

    /// Block sizes when the region is a product of blocks.
    pub fn blocks(&self) -> Option<&[usize]> {
        match self {
            FeasibleRegion::ProductOfBalls { block_sizes, .. } => Some(block_sizes),
            _ => None,
        }
    }

    /// Euclidean diameter (an upper bound for the intersections), or `None`
    /// for unbounded regions.
    pub fn diameter(&self) -> Option<f64> {
        match self {
            FeasibleRegion::EuclideanBall { radius, .. } => Some(2.0 * radius),
            FeasibleRegion::Box { lower, upper } => {
                let s: f64 = lower.iter().zip(upper).map(|(l, u)| (u - l) * (u - l)).sum();
                s.is_finite().then(|| s.sqrt())
            }
            FeasibleRegion::ProductOfBalls { radii, .. } => {
                Some(2.0 * radii.iter().map(|r| r * r).sum::<f64>().sqrt())
            }
            FeasibleRegion::FrobeniusBallIntersectBox {
                radius,
                lower,
                upper,
                rows,
                cols,
                ..
            } => {
                let boxd = (upper - lower) * ((rows * cols) as f64).sqrt();
                Some((2.0 * radius).min(boxd))
            }
            // Upper bound: ‖a − b‖² ≤ ‖a‖₁ + ‖b‖₁ on the unit cube.
            FeasibleRegion::CappedSimplex { k, dim } => Some((2.0 * k).min(*dim as f64).sqrt()),
        }
    }

    /// Membership test with slack `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            FeasibleRegion::EuclideanBall { center, radius } => dist(x, center) <= radius + tol,
            FeasibleRegion::Box { lower, upper } => x
                .iter()
                .zip(lower.iter().zip(upper))
                .all(|(v, (l, u))| *v >= l - tol && *v <= u + tol),
            FeasibleRegion::ProductOfBalls {
                block_sizes,
                radii,
                nonnegative,
            } => {
                let mut off = 0;
                for (b, &size) in block_sizes.iter().enumerate() {
                    let blk = &x[off..off + size];
                    if norm(blk) > radii[b] + tol {
                        return false;
                    }
                    if *nonnegative && blk.iter().any(|v| *v < -tol) {
                        return false;
                    }
                    off += size;
                }
                true
            }
            FeasibleRegion::FrobeniusBallIntersectBox {
                center,
                radius,
                lower,
                upper,
                ..
            } => {
                dist(x, center) <= radius + tol
                    && x.iter().all(|v| *v >= lower - tol && *v <= upper + tol)
            }
            FeasibleRegion::CappedSimplex { k, .. } => {
                x.iter().all(|v| *v >= -tol && *v <= 1.0 + tol) && x.iter().sum::<f64>() <= k + tol
            }
        }
    }
}

fn finite(xs: &[f64]) -> Result<()> {
    crate::vector::check_finite(xs, "region entry")
}
