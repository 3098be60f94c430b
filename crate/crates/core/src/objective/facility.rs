//! Convex facility location: `Σ_i max_{j∈S} x_iᵀ Q_ij x_j + λ / max(Σ‖x_i‖², δ)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{GradientBound, Objective, SetFunction, Smoothness};
use crate::error::{Error, Result};
use crate::ground::{ElementId, SubsetSelection};
use crate::vector::{dot, norm_sq, spectral_norm_sym};

pub const DEFAULT_DENOMINATOR_FLOOR: f64 = 1e-6;
pub const DEFAULT_START_NORM: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexFacilityLocationSpec {
    /// Block size.
    pub m: usize,
    /// Number of blocks, which is also the ground-set size.
    pub n: usize,
    /// `Q_ij` stored row-major at offset `(i * n + j) * m * m`.
    pub q: Vec<f64>,
    pub lambda: f64,
    #[serde(default = "default_floor")]
    pub delta_g: f64,
    /// Radius of every block ball of the intended region.
    #[serde(default = "default_radius")]
    pub radius: f64,
    /// Norm of each block of the starting point.
    #[serde(default = "default_start_norm")]
    pub start_norm: f64,
    /// Overrides the computed smoothness constant.
    #[serde(default)]
    pub lipschitz_override: Option<f64>,
}

fn default_floor() -> f64 {
    DEFAULT_DENOMINATOR_FLOOR
}
fn default_radius() -> f64 {
    1.0
}
fn default_start_norm() -> f64 {
    DEFAULT_START_NORM
}

impl ConvexFacilityLocationSpec {
    /// Random instance with `Q_ij = AᵀA + 0.1·I`, `A` entries uniform on `[0, 1)`.
    pub fn random<R: Rng + ?Sized>(m: usize, n: usize, lambda: f64, rng: &mut R) -> Self {
        let mm = m * m;
        let mut q = vec![0.0; n * n * mm];
        let mut a = vec![0.0; mm];
        for block in q.chunks_exact_mut(mm) {
            for v in a.iter_mut() {
                *v = rng.random::<f64>().abs();
            }
            for r in 0..m {
                for c in 0..m {
                    let mut s = 0.0;
                    for l in 0..m {
                        s += a[l * m + r] * a[l * m + c];
                    }
                    block[r * m + c] = s + if r == c { 0.1 } else { 0.0 };
                }
            }
        }
        ConvexFacilityLocationSpec {
            m,
            n,
            q,
            lambda,
            delta_g: DEFAULT_DENOMINATOR_FLOOR,
            radius: 1.0,
            start_norm: DEFAULT_START_NORM,
            lipschitz_override: None,
        }
    }

    fn validate(&self) -> Result<()> {
        let (m, n) = (self.m, self.n);
        if m == 0 || n == 0 {
            return Err(Error::InvalidSpec("block size and block count must be positive".into()));
        }
        if self.q.len() != n * n * m * m {
            return Err(Error::DimensionMismatch {
                expected: n * n * m * m,
                actual: self.q.len(),
            });
        }
        for (name, v) in [
            ("lambda", self.lambda),
            ("delta_g", self.delta_g),
            ("radius", self.radius),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidSpec(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.start_norm > 0.0 && self.start_norm <= self.radius) {
            return Err(Error::InvalidSpec(format!(
                "start norm {} must lie in (0, radius]",
                self.start_norm
            )));
        }
        for (b, block) in self.q.chunks_exact(m * m).enumerate() {
            let (i, j) = (b / n, b % n);
            if let Some(v) = block.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
                return Err(Error::InvalidSpec(format!("Q[{i},{j}] has non-positive entry {v}")));
            }
            for r in 0..m {
                for c in 0..r {
                    if (block[r * m + c] - block[c * m + r]).abs() > 1e-8 {
                        return Err(Error::InvalidSpec(format!("Q[{i},{j}] is not symmetric")));
                    }
                }
            }
            if !cholesky_psd(block, m, 1e-8) {
                return Err(Error::InvalidSpec(format!("Q[{i},{j}] is not positive semidefinite")));
            }
        }
        Ok(())
    }
}

/// Cholesky of `A + jitter·I` succeeds, i.e. `A` is PSD up to `jitter`.
fn cholesky_psd(a: &[f64], m: usize, jitter: f64) -> bool {
    let mut l = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..=i {
            let mut s = a[i * m + j] + if i == j { jitter } else { 0.0 };
            for k in 0..j {
                s -= l[i * m + k] * l[j * m + k];
            }
            if i == j {
                if s <= 0.0 {
                    return false;
                }
                l[i * m + i] = s.sqrt();
            } else {
                l[i * m + j] = s / l[j * m + j];
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct ConvexFacilityLocation {
    spec: ConvexFacilityLocationSpec,
    smoothness: Smoothness,
}

impl ConvexFacilityLocation {
    pub fn new(spec: ConvexFacilityLocationSpec) -> Result<Self> {
        spec.validate()?;
        let (m, n) = (spec.m, spec.n);
        let q_norm = spec
            .q
            .chunks_exact(m * m)
            .map(|b| spectral_norm_sym(b, m, 50, 1e-8))
            .fold(0.0, f64::max);
        // Hessian of the facility part is B + Bᵀ where B has one Q block per
        // block row; the Schur test gives ‖B‖ ≤ √n·max‖Q‖.
        let nf = n as f64;
        let facility_l = 2.0 * nf.sqrt() * q_norm;
        // Local bound for λ/‖x‖² near the start point, where ‖x‖² = n·start².
        let s0 = nf * spec.start_norm * spec.start_norm;
        let reg_l = 6.0 * spec.lambda / (s0 * s0);
        let lipschitz = spec.lipschitz_override.unwrap_or(facility_l + reg_l);
        let r = spec.radius;
        let grad_bound =
            2.0 * nf * q_norm * r + 2.0 * spec.lambda / spec.delta_g.powf(1.5);
        let smoothness = Smoothness {
            lipschitz,
            gradient_bound: GradientBound::OnRegion(grad_bound),
            marginal_bound: Some(nf * q_norm * r * r),
        };
        Ok(ConvexFacilityLocation { spec, smoothness })
    }

    pub fn spec(&self) -> &ConvexFacilityLocationSpec {
        &self.spec
    }

    fn q(&self, i: usize, j: usize) -> &[f64] {
        let mm = self.spec.m * self.spec.m;
        let off = (i * self.spec.n + j) * mm;
        &self.spec.q[off..off + mm]
    }

    fn block<'x>(&self, x: &'x [f64], i: usize) -> &'x [f64] {
        &x[i * self.spec.m..(i + 1) * self.spec.m]
    }

    /// `x_iᵀ Q_ij x_j`.
    fn pair(&self, x: &[f64], i: usize, j: usize) -> f64 {
        let m = self.spec.m;
        let (xi, xj, q) = (self.block(x, i), self.block(x, j), self.q(i, j));
        let mut s = 0.0;
        for r in 0..m {
            s += xi[r] * dot(&q[r * m..(r + 1) * m], xj);
        }
        s
    }

    fn regularizer(&self, x: &[f64]) -> f64 {
        self.spec.lambda / norm_sq(x).max(self.spec.delta_g)
    }

    /// Index in `s` achieving `max(0, max_j x_iᵀ Q_ij x_j)`; `None` when the
    /// zero baseline wins. Smallest index on ties.
    fn best(&self, x: &[f64], i: usize, s: &SubsetSelection) -> (Option<usize>, f64) {
        let mut arg = None;
        let mut best = 0.0;
        for j in s.as_slice() {
            let v = self.pair(x, i, *j);
            if v > best {
                best = v;
                arg = Some(*j);
            }
        }
        (arg, best)
    }
}

impl Objective for ConvexFacilityLocation {
    fn name(&self) -> &'static str {
        "convex_facility_location"
    }

    fn dim(&self) -> usize {
        self.spec.m * self.spec.n
    }

    fn ground_size(&self) -> usize {
        self.spec.n
    }

    fn smoothness(&self) -> &Smoothness {
        &self.smoothness
    }

    fn blocks(&self) -> Option<Vec<usize>> {
        Some(vec![self.spec.m; self.spec.n])
    }

    fn default_start(&self) -> Vec<f64> {
        let m = self.spec.m;
        vec![self.spec.start_norm / (m as f64).sqrt(); m * self.spec.n]
    }

    fn value_unchecked(&self, x: &[f64], s: &SubsetSelection) -> f64 {
        let facility: f64 = (0..self.spec.n).map(|i| self.best(x, i, s).1).sum();
        facility + self.regularizer(x)
    }

    fn grad_unchecked(&self, x: &[f64], s: &SubsetSelection) -> Vec<f64> {
        let m = self.spec.m;
        let mut g = vec![0.0; x.len()];
        for i in 0..self.spec.n {
            let Some(j) = self.best(x, i, s).0 else {
                continue;
            };
            let q = self.q(i, j);
            let (xi, xj) = (self.block(x, i), self.block(x, j));
            for r in 0..m {
                // ∂/∂x_i = Q x_j, ∂/∂x_j = Qᵀ x_i
                g[i * m + r] += dot(&q[r * m..(r + 1) * m], xj);
                let mut t = 0.0;
                for c in 0..m {
                    t += q[c * m + r] * xi[c];
                }
                g[j * m + r] += t;
            }
        }
        let s2 = norm_sq(x);
        if s2 > self.spec.delta_g {
            let coef = -2.0 * self.spec.lambda / (s2 * s2);
            for (gi, xi) in g.iter_mut().zip(x) {
                *gi += coef * xi;
            }
        }
        g
    }

    fn at<'a>(&'a self, x: &[f64]) -> Box<dyn SetFunction + 'a> {
        let n = self.spec.n;
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                weights[i * n + j] = self.pair(x, i, j);
            }
        }
        Box::new(FacilitySetFunction {
            n,
            weights,
            offset: self.regularizer(x),
        })
    }
}

/// `Σ_i max(0, max_{j∈S} w_ij) + offset` for a fixed weight matrix.
pub(crate) struct FacilitySetFunction {
    pub(crate) n: usize,
    /// Row-major `rows × n`; row `i` holds the weights of client `i`.
    pub(crate) weights: Vec<f64>,
    pub(crate) offset: f64,
}

impl FacilitySetFunction {
    fn rows(&self) -> usize {
        self.weights.len() / self.n
    }

    fn current(&self, row: usize, s: &SubsetSelection) -> f64 {
        let w = &self.weights[row * self.n..(row + 1) * self.n];
        s.as_slice().iter().fold(0.0, |acc, &j| acc.max(w[j]))
    }
}

impl SetFunction for FacilitySetFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, s: &SubsetSelection) -> f64 {
        (0..self.rows()).map(|i| self.current(i, s)).sum::<f64>() + self.offset
    }

    fn marginal(&self, s: &SubsetSelection, e: ElementId) -> f64 {
        if s.contains(e) {
            return 0.0;
        }
        (0..self.rows())
            .map(|i| (self.weights[i * self.n + e.index()] - self.current(i, s)).max(0.0))
            .sum()
    }
}
