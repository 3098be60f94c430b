//! Euclidean projections onto [`FeasibleRegion`]s.

use crate::error::{Error, Result};
use crate::region::FeasibleRegion;
use crate::vector::{check_dim, check_finite, dist, norm};

pub const DYKSTRA_MAX_SWEEPS: usize = 500;
pub const SIMPLEX_BISECTION_TOL: f64 = 1e-10;

pub fn project(region: &FeasibleRegion, x: &[f64]) -> Result<Vec<f64>> {
    check_dim(region.dim(), x)?;
    check_finite(x, "projection input")?;
    Ok(match region {
        FeasibleRegion::EuclideanBall { center, radius } => project_ball(x, center, *radius),
        FeasibleRegion::Box { lower, upper } => x
            .iter()
            .zip(lower.iter().zip(upper))
            .map(|(v, (l, u))| v.clamp(*l, *u))
            .collect(),
        FeasibleRegion::ProductOfBalls {
            block_sizes,
            radii,
            nonnegative,
        } => {
            let mut out = x.to_vec();
            let mut off = 0;
            for (b, &size) in block_sizes.iter().enumerate() {
                let blk = &mut out[off..off + size];
                if *nonnegative {
                    // Clipping then scaling is exact for a ball centred at the
                    // apex of the orthant.
                    for v in blk.iter_mut() {
                        *v = v.max(0.0);
                    }
                }
                scale_into_ball(blk, radii[b]);
                off += size;
            }
            out
        }
        FeasibleRegion::CappedSimplex { k, .. } => project_capped_simplex(x, *k),
        FeasibleRegion::FrobeniusBallIntersectBox {
            center,
            radius,
            lower,
            upper,
            tol,
            ..
        } => dykstra_ball_box(x, center, *radius, *lower, *upper, *tol, DYKSTRA_MAX_SWEEPS)?,
    })
}

fn scale_into_ball(v: &mut [f64], radius: f64) {
    let nv = norm(v);
    if nv > radius {
        let s = radius / nv;
        for x in v.iter_mut() {
            *x *= s;
        }
    }
}

fn project_ball(x: &[f64], center: &[f64], radius: f64) -> Vec<f64> {
    let d = dist(x, center);
    if d <= radius {
        return x.to_vec();
    }
    let s = radius / d;
    x.iter().zip(center).map(|(v, c)| c + s * (v - c)).collect()
}

/// Projection onto `{y ∈ [0,1]^n : Σ y ≤ k}`.
///
/// Clips to the cube; if the budget is violated, bisects the threshold `τ` in
/// `y_i = clip(x_i − τ, 0, 1)` until the bracket is narrower than 1e-10, and
/// returns the upper end so the budget holds.
pub fn project_capped_simplex(x: &[f64], k: f64) -> Vec<f64> {
    let clipped: Vec<f64> = x.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    if clipped.iter().sum::<f64>() <= k {
        return clipped;
    }
    let mass = |tau: f64| x.iter().map(|v| (v - tau).clamp(0.0, 1.0)).sum::<f64>();
    let mut lo = 0.0;
    let mut hi = x.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    while hi - lo > SIMPLEX_BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if mass(mid) > k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    x.iter().map(|v| (v - hi).clamp(0.0, 1.0)).collect()
}

/// Dykstra's alternating projections onto a Euclidean ball and a scalar box.
fn dykstra_ball_box(
    x: &[f64],
    center: &[f64],
    radius: f64,
    lower: f64,
    upper: f64,
    tol: f64,
    max_sweeps: usize,
) -> Result<Vec<f64>> {
    let clip = |v: &[f64]| -> Vec<f64> { v.iter().map(|t| t.clamp(lower, upper)).collect() };
    // Exact shortcuts: if either single projection already lands in the
    // other set, it is the projection onto the intersection.
    let pb = clip(x);
    if dist(&pb, center) <= radius {
        return Ok(pb);
    }
    let pa = project_ball(x, center, radius);
    if pa.iter().all(|t| *t >= lower && *t <= upper) {
        return Ok(pa);
    }

    let d = x.len();
    let mut cur = x.to_vec();
    let mut p = vec![0.0; d];
    let mut q = vec![0.0; d];
    let mut buf = vec![0.0; d];
    let mut last_change = f64::INFINITY;
    for _ in 0..max_sweeps {
        for i in 0..d {
            buf[i] = cur[i] + p[i];
        }
        let y = project_ball(&buf, center, radius);
        for i in 0..d {
            p[i] = buf[i] - y[i];
            buf[i] = y[i] + q[i];
        }
        let next = clip(&buf);
        for i in 0..d {
            q[i] = buf[i] - next[i];
        }
        last_change = dist(&next, &cur);
        cur = next;
        if last_change < tol {
            return Ok(pull_into_ball(cur, center, radius, lower, upper));
        }
    }
    Err(Error::NotConverged {
        what: "Dykstra projection",
        iterations: max_sweeps,
        last_change,
    })
}

/// Removes the residual ball violation left by a converged Dykstra run by
/// moving toward the centre, which keeps box feasibility when the centre is
/// in the box.
fn pull_into_ball(mut z: Vec<f64>, center: &[f64], radius: f64, lower: f64, upper: f64) -> Vec<f64> {
    let d = dist(&z, center);
    let center_in_box = center.iter().all(|c| *c >= lower && *c <= upper);
    if d > radius && center_in_box {
        let s = radius / d;
        for (v, c) in z.iter_mut().zip(center) {
            *v = c + s * (*v - c);
        }
    }
    z
}
