//! Multilinear extension `F(x, y) = E_{S∼y} f(x, S)`, where each element `i`
//! joins `S` independently with probability `y_i`.
//!
//! Exact evaluators enumerate all `2^n` subsets (`n ≤ 20`). Sampled
//! evaluators draw subsets from a ChaCha stream derived from `(seed, stream)`,
//! and one subset sample serves every coordinate of both gradients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::continuous::project_capped_simplex;
use crate::error::{Error, Result};
use crate::ground::{ElementId, SubsetSelection};
use crate::matroid::MatroidConstraint;
use crate::objective::{Objective, SetFunction};
use crate::vector::{check_dim, check_finite};

pub const MAX_EXACT_GROUND_SIZE: usize = 20;
pub const DEFAULT_SAMPLES: usize = 200;

/// A point of `[0, 1]^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FractionalPoint(Vec<f64>);

impl FractionalPoint {
    pub fn new(y: Vec<f64>) -> Result<Self> {
        check_finite(&y, "fractional entry")?;
        if let Some((i, v)) = y.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Precondition(format!("fractional entry {i} = {v} outside [0, 1]")));
        }
        Ok(FractionalPoint(y))
    }

    pub fn zeros(n: usize) -> Self {
        FractionalPoint(vec![0.0; n])
    }

    pub fn corner(s: &SubsetSelection) -> Self {
        FractionalPoint(s.indicator())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub samples: usize,
    pub seed: u64,
    #[serde(default)]
    pub antithetic: bool,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            antithetic: false,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        Ok(())
    }

    /// Same settings on an independent substream.
    pub fn on_stream(&self, stream: u64) -> Self {
        EstimatorConfig {
            seed: derive_seed(self.seed, stream),
            ..*self
        }
    }
}

/// How gradients of the extension are computed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GradientMode {
    Exact,
    Sampled(EstimatorConfig),
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Order-independent seed for substream `stream` of `base`.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(base) ^ stream.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

fn check_y(obj: &dyn Objective, y: &FractionalPoint) -> Result<()> {
    if y.len() != obj.ground_size() {
        return Err(Error::GroundSetMismatch {
            expected: obj.ground_size(),
            actual: y.len(),
        });
    }
    Ok(())
}

fn check_exact(n: usize) -> Result<()> {
    if n > MAX_EXACT_GROUND_SIZE {
        return Err(Error::InstanceTooLarge {
            count: 1u128 << n.min(127),
            cap: 1u128 << MAX_EXACT_GROUND_SIZE,
        });
    }
    Ok(())
}

/// `P(S)` for every mask `S` (bit `i` set iff `i ∈ S`).
fn subset_probabilities(y: &[f64]) -> Vec<f64> {
    let mut p = vec![1.0];
    for (b, &yb) in y.iter().enumerate() {
        let mut next = vec![0.0; p.len() * 2];
        for (m, &pm) in p.iter().enumerate() {
            next[m] = pm * (1.0 - yb);
            next[m | 1 << b] = pm * yb;
        }
        p = next;
    }
    p
}

fn all_values(f: &dyn SetFunction, n: usize) -> Vec<f64> {
    (0..1u64 << n)
        .map(|m| f.value(&SubsetSelection::from_mask(n, m)))
        .collect()
}

pub fn extension_value_exact(obj: &dyn Objective, x: &[f64], y: &FractionalPoint) -> Result<f64> {
    check_y(obj, y)?;
    let n = obj.ground_size();
    check_exact(n)?;
    obj.check_inputs(x, &SubsetSelection::empty(n))?;
    let f = obj.at(x);
    let p = subset_probabilities(y.as_slice());
    let mut total = 0.0;
    for (m, &pm) in p.iter().enumerate() {
        if pm != 0.0 {
            total += pm * f.value(&SubsetSelection::from_mask(n, m as u64));
        }
    }
    finite(total, "extension value")
}

/// Exact `∇_y F(x, y)`: `∂_i F = Σ_{S ∌ i} P_{−i}(S) (f(S ∪ i) − f(S))`.
pub fn grad_y_exact(obj: &dyn Objective, x: &[f64], y: &FractionalPoint) -> Result<Vec<f64>> {
    check_y(obj, y)?;
    let n = obj.ground_size();
    check_exact(n)?;
    obj.check_inputs(x, &SubsetSelection::empty(n))?;
    let v = all_values(obj.at(x).as_ref(), n);
    let p = subset_probabilities(y.as_slice());
    let mut g = vec![0.0; n];
    for (i, gi) in g.iter_mut().enumerate() {
        let bit = 1usize << i;
        for m in 0..p.len() {
            if m & bit == 0 {
                // P_{−i}(S) = P(S) + P(S ∪ i)
                let w = p[m] + p[m | bit];
                if w != 0.0 {
                    *gi += w * (v[m | bit] - v[m]);
                }
            }
        }
    }
    check_finite(&g, "extension gradient entry")?;
    Ok(g)
}

/// Exact `∇_x F(x, y) = Σ_S P(S) ∇_x f(x, S)`.
pub fn grad_x_exact(obj: &dyn Objective, x: &[f64], y: &FractionalPoint) -> Result<Vec<f64>> {
    check_y(obj, y)?;
    let n = obj.ground_size();
    check_exact(n)?;
    obj.check_inputs(x, &SubsetSelection::empty(n))?;
    let p = subset_probabilities(y.as_slice());
    let mut g = vec![0.0; x.len()];
    for (m, &pm) in p.iter().enumerate() {
        if pm != 0.0 {
            let gs = obj.grad_unchecked(x, &SubsetSelection::from_mask(n, m as u64));
            for (a, b) in g.iter_mut().zip(&gs) {
                *a += pm * b;
            }
        }
    }
    check_finite(&g, "extension gradient entry")?;
    Ok(g)
}

/// Subset draws `S ∼ y` from the configured stream. With `antithetic`,
/// draws come in pairs driven by `u` and `1 − u`.
struct SubsetSampler {
    rng: ChaCha8Rng,
    pending: Option<Vec<f64>>,
    antithetic: bool,
}

impl SubsetSampler {
    fn new(cfg: &EstimatorConfig) -> Self {
        SubsetSampler {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            pending: None,
            antithetic: cfg.antithetic,
        }
    }

    fn draw(&mut self, y: &[f64]) -> SubsetSelection {
        let u: Vec<f64> = match self.pending.take() {
            Some(u) => u.iter().map(|v| 1.0 - v).collect(),
            None => {
                let u: Vec<f64> = (0..y.len()).map(|_| self.rng.random::<f64>()).collect();
                if self.antithetic {
                    self.pending = Some(u.clone());
                }
                u
            }
        };
        let members = (0..y.len()).filter(|&i| u[i] < y[i]);
        SubsetSelection::from_indices(y.len(), members).expect("indices are distinct and in range")
    }
}

/// Mean and standard error of per-draw statistics; antithetic pairs are
/// averaged first so the error reflects the paired design.
fn mean_stderr(samples: &[f64], antithetic: bool) -> (f64, f64) {
    let units: Vec<f64> = if antithetic {
        samples
            .chunks(2)
            .map(|c| c.iter().sum::<f64>() / c.len() as f64)
            .collect()
    } else {
        samples.to_vec()
    };
    let k = units.len() as f64;
    let mean = units.iter().sum::<f64>() / k;
    if units.len() < 2 {
        return (mean, 0.0);
    }
    let var = units.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

/// Monte-Carlo `F(x, y)` with its standard error.
pub fn extension_value_sampled(
    obj: &dyn Objective,
    x: &[f64],
    y: &FractionalPoint,
    cfg: &EstimatorConfig,
) -> Result<(f64, f64)> {
    check_y(obj, y)?;
    cfg.validate()?;
    obj.check_inputs(x, &SubsetSelection::empty(obj.ground_size()))?;
    let f = obj.at(x);
    let mut sampler = SubsetSampler::new(cfg);
    let vals: Vec<f64> = (0..cfg.samples)
        .map(|_| f.value(&sampler.draw(y.as_slice())))
        .collect();
    let (mean, se) = mean_stderr(&vals, cfg.antithetic);
    Ok((finite(mean, "extension value")?, se))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionGradients {
    pub grad_x: Vec<f64>,
    pub grad_y: Vec<f64>,
}

/// Both gradients of `F` at `(x, y)`; in sampled mode they share one
/// subset sample stream.
pub fn extension_gradients(
    obj: &dyn Objective,
    x: &[f64],
    y: &FractionalPoint,
    mode: &GradientMode,
) -> Result<ExtensionGradients> {
    match mode {
        GradientMode::Exact => Ok(ExtensionGradients {
            grad_x: grad_x_exact(obj, x, y)?,
            grad_y: grad_y_exact(obj, x, y)?,
        }),
        GradientMode::Sampled(cfg) => sampled_gradients(obj, x, y, cfg, true, true),
    }
}

fn sampled_gradients(
    obj: &dyn Objective,
    x: &[f64],
    y: &FractionalPoint,
    cfg: &EstimatorConfig,
    want_x: bool,
    want_y: bool,
) -> Result<ExtensionGradients> {
    check_y(obj, y)?;
    cfg.validate()?;
    let n = obj.ground_size();
    obj.check_inputs(x, &SubsetSelection::empty(n))?;
    let f = obj.at(x);
    let mut sampler = SubsetSampler::new(cfg);
    let mut gx = vec![0.0; if want_x { x.len() } else { 0 }];
    let mut gy = vec![0.0; if want_y { n } else { 0 }];
    for _ in 0..cfg.samples {
        let s = sampler.draw(y.as_slice());
        if want_x {
            let g = obj.grad_unchecked(x, &s);
            for (a, b) in gx.iter_mut().zip(&g) {
                *a += b;
            }
        }
        if want_y {
            let vs = f.value(&s);
            for (i, gi) in gy.iter_mut().enumerate() {
                let e = ElementId(i);
                *gi += if s.contains(e) {
                    vs - f.value(&s.without(e))
                } else {
                    f.marginal(&s, e)
                };
            }
        }
    }
    let inv = 1.0 / cfg.samples as f64;
    gx.iter_mut().chain(gy.iter_mut()).for_each(|v| *v *= inv);
    check_finite(&gx, "extension gradient entry")?;
    check_finite(&gy, "extension gradient entry")?;
    Ok(ExtensionGradients {
        grad_x: gx,
        grad_y: gy,
    })
}

/// Sampled `∇_y F`, one subset draw shared by all coordinates.
pub fn grad_y_extension(
    obj: &dyn Objective,
    x: &[f64],
    y: &FractionalPoint,
    cfg: &EstimatorConfig,
) -> Result<Vec<f64>> {
    Ok(sampled_gradients(obj, x, y, cfg, false, true)?.grad_y)
}

/// Sampled `∇_x F`; with the same `cfg` it sees the same subsets as
/// [`grad_y_extension`].
pub fn grad_x_extension(
    obj: &dyn Objective,
    x: &[f64],
    y: &FractionalPoint,
    cfg: &EstimatorConfig,
) -> Result<Vec<f64>> {
    Ok(sampled_gradients(obj, x, y, cfg, true, false)?.grad_x)
}

/// Projection onto the hull of independent-set indicators: a capped simplex
/// for uniform matroids, one per block for partition matroids.
pub fn project_polytope(c: &MatroidConstraint, y: &[f64]) -> Result<FractionalPoint> {
    check_dim(c.ground_size(), y)?;
    check_finite(y, "polytope projection input")?;
    let caps = c.capacities();
    let mut out = vec![0.0; y.len()];
    for (b, block) in c.block_lists().iter().enumerate() {
        let sub: Vec<f64> = block.iter().map(|&e| y[e]).collect();
        let p = project_capped_simplex(&sub, caps[b] as f64);
        for (&e, v) in block.iter().zip(p) {
            out[e] = v;
        }
    }
    Ok(FractionalPoint(out))
}

/// Largest entries per block up to capacity, smallest index on ties.
pub fn round_fractional(y: &FractionalPoint, c: &MatroidConstraint) -> Result<SubsetSelection> {
    check_dim(c.ground_size(), y.as_slice())?;
    let caps = c.capacities();
    let mut chosen = Vec::new();
    for (b, block) in c.block_lists().iter().enumerate() {
        let mut order = block.clone();
        order.sort_by(|&i, &j| y.0[j].total_cmp(&y.0[i]).then(i.cmp(&j)));
        chosen.extend(order.into_iter().take(caps[b]));
    }
    SubsetSelection::from_indices(c.ground_size(), chosen)
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("{what} is {v}")))
    }
}
