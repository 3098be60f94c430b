//! Dense real vectors and the handful of BLAS-1 helpers the solvers need.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vector of finite reals, optionally split into contiguous blocks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    entries: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<usize>>,
}

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_finite(&entries, "vector entry")?;
        Ok(Vector {
            entries,
            blocks: None,
        })
    }

    pub fn zeros(d: usize) -> Self {
        Vector {
            entries: vec![0.0; d],
            blocks: None,
        }
    }

    pub fn with_blocks(entries: Vec<f64>, blocks: Vec<usize>) -> Result<Self> {
        let total: usize = blocks.iter().sum();
        if total != entries.len() {
            return Err(Error::DimensionMismatch {
                expected: total,
                actual: entries.len(),
            });
        }
        let mut v = Vector::new(entries)?;
        v.blocks = Some(blocks);
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn blocks(&self) -> Option<&[usize]> {
        self.blocks.as_deref()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.entries
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.entries
    }
}

impl AsRef<[f64]> for Vector {
    fn as_ref(&self) -> &[f64] {
        &self.entries
    }
}

pub(crate) fn check_finite(xs: &[f64], what: &str) -> Result<()> {
    match xs.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFinite(format!("{what} {i} is {}", xs[i]))),
        None => Ok(()),
    }
}

pub(crate) fn check_dim(expected: usize, x: &[f64]) -> Result<()> {
    if x.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            actual: x.len(),
        });
    }
    Ok(())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

pub fn norm(a: &[f64]) -> f64 {
    norm_sq(a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// `y += a * x`
pub fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// `x + a * d` as a new vector.
pub fn add_scaled(x: &[f64], a: f64, d: &[f64]) -> Vec<f64> {
    let mut out = x.to_vec();
    axpy(a, d, &mut out);
    out
}

/// `y = A x` for a row-major `rows × cols` matrix.
pub fn matvec(a: &[f64], rows: usize, cols: usize, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(a.len(), rows * cols);
    for (r, yr) in y.iter_mut().enumerate().take(rows) {
        *yr = dot(&a[r * cols..(r + 1) * cols], x);
    }
}

/// Largest eigenvalue magnitude of a symmetric `m × m` matrix by power iteration.
///
/// Starts from the all-ones vector; stops after `max_iters` or when the
/// Rayleigh estimate changes by less than `tol` relative.
pub fn spectral_norm_sym(a: &[f64], m: usize, max_iters: usize, tol: f64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let mut v = vec![1.0 / (m as f64).sqrt(); m];
    let mut w = vec![0.0; m];
    let mut est = 0.0;
    for _ in 0..max_iters {
        matvec(a, m, m, &v, &mut w);
        let nw = norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        let prev = est;
        est = nw;
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / nw;
        }
        if (est - prev).abs() <= tol * est {
            break;
        }
    }
    est
}
