//! Reference routes used by the integration tests. Each one avoids the code
//! path it checks: bitmask enumeration instead of the DFS, exact breakpoint
//! search instead of bisection, KKT bisection instead of Dykstra, a second
//! count-sort scan for ingestion, and central differences for gradients.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use submodular_minimax::objective::{ModularQuadratic, ModularQuadraticSpec, WeightTerm};
use submodular_minimax::{MatroidConstraint, SetFunction, SubsetSelection};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn set(n: usize, xs: &[usize]) -> SubsetSelection {
    SubsetSelection::from_indices(n, xs.iter().copied()).unwrap()
}

/// Independence by direct counting.
pub fn independent_by_count(c: &MatroidConstraint, mask: u64) -> bool {
    match c {
        MatroidConstraint::Uniform { k, .. } => (mask.count_ones() as usize) <= *k,
        MatroidConstraint::Partition {
            blocks, capacities, ..
        } => blocks.iter().zip(capacities).all(|(b, &cap)| {
            b.iter().filter(|&&e| mask >> e & 1 == 1).count() <= cap
        }),
    }
}

/// Every independent set as a bitmask, in increasing mask order.
pub fn independent_masks(c: &MatroidConstraint) -> Vec<u64> {
    let n = c.ground_size();
    assert!(n <= 24, "oracle enumeration limited to 24 elements");
    (0..1u64 << n).filter(|&m| independent_by_count(c, m)).collect()
}

/// Maximum of `f` over independent sets by scanning all bitmasks.
pub fn max_by_masks(f: &dyn SetFunction, c: &MatroidConstraint) -> f64 {
    let n = c.ground_size();
    independent_masks(c)
        .into_iter()
        .map(|m| f.value(&SubsetSelection::from_mask(n, m)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Table-backed set function, evaluated by bitmask lookup.
pub struct TableFunction {
    pub n: usize,
    pub values: Vec<f64>,
}

impl SetFunction for TableFunction {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn value(&self, s: &SubsetSelection) -> f64 {
        self.values[s.mask() as usize]
    }
}

/// Weighted coverage over a random universe: monotone and submodular, with
/// values tabulated over all subsets. Integer weights keep every sum exact,
/// so ties are genuine ties.
pub fn random_coverage(n: usize, universe: usize, seed: u64) -> TableFunction {
    let mut r = rng(seed);
    let weights: Vec<f64> = (0..universe).map(|_| r.random_range(1..20) as f64).collect();
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|_| (0..universe).filter(|_| r.random_bool(0.3)).collect())
        .collect();
    let values = (0..1u64 << n)
        .map(|m| {
            let mut hit = vec![false; universe];
            for (e, cov) in covers.iter().enumerate() {
                if m >> e & 1 == 1 {
                    cov.iter().for_each(|&u| hit[u] = true);
                }
            }
            hit.iter().zip(&weights).filter(|(h, _)| **h).map(|(_, w)| w).sum()
        })
        .collect();
    TableFunction { n, values }
}

/// Monotone submodular by exhaustive check of `f(A+e) − f(A) ≥ f(B+e) − f(B)`
/// for `A ⊆ B`, `e ∉ B`, and `f(A) ≤ f(B)`.
pub fn is_monotone_submodular(values: &[f64], n: usize, tol: f64) -> bool {
    for b in 0..1u64 << n {
        let mut a = b;
        loop {
            if values[a as usize] > values[b as usize] + tol {
                return false;
            }
            for e in 0..n {
                if b >> e & 1 == 0 {
                    let ga = values[(a | 1 << e) as usize] - values[a as usize];
                    let gb = values[(b | 1 << e) as usize] - values[b as usize];
                    if ga + tol < gb {
                        return false;
                    }
                }
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & b;
        }
    }
    true
}

/// Central differences with step `h`.
pub fn finite_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let mut p = x.to_vec();
            let mut m = x.to_vec();
            p[i] += h;
            m[i] -= h;
            (f(&p) - f(&m)) / (2.0 * h)
        })
        .collect()
}

/// Exact projection onto `{0 ≤ y ≤ 1, Σy ≤ k}` by locating the threshold
/// among the breakpoints `x_i` and `x_i − 1` of the piecewise-linear mass.
pub fn capped_simplex_exact(x: &[f64], k: f64) -> Vec<f64> {
    let clip = |t: f64| -> Vec<f64> { x.iter().map(|v| (v - t).clamp(0.0, 1.0)).collect() };
    let mass = |t: f64| -> f64 { x.iter().map(|v| (v - t).clamp(0.0, 1.0)).sum() };
    if mass(0.0) <= k {
        return clip(0.0);
    }
    let mut pts: Vec<f64> = x.iter().flat_map(|&v| [v, v - 1.0]).filter(|&t| t > 0.0).collect();
    pts.push(0.0);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    // mass is non-increasing; find consecutive breakpoints bracketing k.
    for w in pts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (ml, mh) = (mass(lo), mass(hi));
        if ml >= k && mh <= k {
            let t = if ml == mh { lo } else { lo + (ml - k) * (hi - lo) / (ml - mh) };
            return clip(t);
        }
    }
    clip(*pts.last().unwrap())
}

/// Projection onto `{‖x − c‖ ≤ r} ∩ [lo, hi]^d` from the KKT form
/// `x(μ) = clip((z + μc)/(1 + μ), lo, hi)`, bisecting the multiplier `μ`.
pub fn ball_box_kkt(z: &[f64], c: &[f64], r: f64, lo: f64, hi: f64) -> Vec<f64> {
    let at = |mu: f64| -> Vec<f64> {
        z.iter()
            .zip(c)
            .map(|(zi, ci)| ((zi + mu * ci) / (1.0 + mu)).clamp(lo, hi))
            .collect()
    };
    let dist = |x: &[f64]| -> f64 { x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt() };
    let x0 = at(0.0);
    if dist(&x0) <= r {
        return x0;
    }
    let mut hi_mu = 1.0;
    while dist(&at(hi_mu)) > r {
        hi_mu *= 2.0;
    }
    let mut lo_mu = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo_mu + hi_mu);
        if dist(&at(mid)) > r {
            lo_mu = mid;
        } else {
            hi_mu = mid;
        }
    }
    at(hi_mu)
}

/// Modular objective with constant weights `a` in dimension `dim`.
pub fn constant_modular(dim: usize, a: &[f64]) -> ModularQuadratic {
    ModularQuadratic::new(ModularQuadraticSpec::constant(dim, a)).unwrap()
}

/// Weights `a_e + b_e‖x − c_e‖²` with a common quadratic baseline.
pub fn quadratic_modular(terms: Vec<(f64, f64, Vec<f64>)>, base_curv: f64, marginal_bound: f64) -> ModularQuadratic {
    let dim = terms[0].2.len();
    ModularQuadratic::new(ModularQuadraticSpec {
        dim,
        terms: terms
            .into_iter()
            .map(|(a, b, center)| WeightTerm { a, b, center })
            .collect(),
        baseline_constant: 0.0,
        baseline_curvature: base_curv,
        baseline_center: None,
        marginal_bound: Some(marginal_bound),
    })
    .unwrap()
}

/// Selection by a second scan: counts in ordered maps, then a stable sort by
/// descending count over ids already in ascending order.
pub fn count_sort_selection(text: &str, users: usize, movies: usize) -> (Vec<u64>, Vec<u64>) {
    let rows: Vec<(u64, u64)> = text
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split(',');
            let u = it.next().unwrap().parse().unwrap();
            let m = it.next().unwrap().parse().unwrap();
            (u, m)
        })
        .collect();
    let mut mc: BTreeMap<u64, usize> = BTreeMap::new();
    for &(_, m) in &rows {
        *mc.entry(m).or_default() += 1;
    }
    let mut ms: Vec<(u64, usize)> = mc.into_iter().collect();
    ms.sort_by_key(|&(_, c)| std::cmp::Reverse(c));
    let chosen: Vec<u64> = ms.iter().take(movies).map(|p| p.0).collect();
    let mut uc: BTreeMap<u64, usize> = BTreeMap::new();
    for &(u, m) in &rows {
        if chosen.contains(&m) {
            *uc.entry(u).or_default() += 1;
        }
    }
    let mut us: Vec<(u64, usize)> = uc.into_iter().collect();
    us.sort_by_key(|&(_, c)| std::cmp::Reverse(c));
    (us.iter().take(users).map(|p| p.0).collect(), chosen)
}

fn expect(cond: bool, what: &str, errors: &mut Vec<String>) {
    if !cond {
        errors.push(what.to_string());
    }
}

fn is_real(v: &Value) -> bool {
    v.is_f64() || v.is_i64() || v.is_u64()
}

fn is_digest(v: &Value) -> bool {
    v.as_str()
        .is_some_and(|s| s.len() == 64 && s.chars().all(|c| c.is_ascii_hexdigit()))
}

/// Checks a summary document against the documented layout; returns the
/// list of violations.
pub fn summary_schema_violations(doc: &Value) -> Vec<String> {
    let mut errs = Vec::new();
    expect(doc["schema"] == 1, "schema must be 1", &mut errs);
    expect(doc["config"].is_object(), "config echo missing", &mut errs);
    expect(doc["config"]["experiment"]["kind"].is_string(), "config.experiment.kind", &mut errs);
    let inst = &doc["instance"];
    expect(inst["objective"].is_string(), "instance.objective", &mut errs);
    expect(inst["dim"].is_u64(), "instance.dim", &mut errs);
    expect(inst["ground_size"].is_u64(), "instance.ground_size", &mut errs);
    expect(inst["constraint"]["kind"].is_string(), "instance.constraint.kind", &mut errs);
    let opt = &doc["opt_reference"];
    expect(
        opt.is_null() || (is_real(&opt["value"]) && opt["iterations"].is_u64() && opt["approximate"].is_boolean()),
        "opt_reference",
        &mut errs,
    );
    expect(
        doc["baseline_utility"].is_null() || is_real(&doc["baseline_utility"]),
        "baseline_utility",
        &mut errs,
    );
    match doc["runs"].as_array() {
        None => errs.push("runs must be an array".into()),
        Some(runs) => {
            for (i, r) in runs.iter().enumerate() {
                let at = |f: &str| format!("runs[{i}].{f}");
                expect(
                    matches!(r["algorithm"].as_str(), Some("gg" | "egg" | "grg" | "egrg" | "egce")),
                    &at("algorithm"),
                    &mut errs,
                );
                expect(is_real(&r["alpha"]), &at("alpha"), &mut errs);
                expect(r["horizon"].is_u64(), &at("horizon"), &mut errs);
                expect(is_digest(&r["x_sol_digest"]), &at("x_sol_digest"), &mut errs);
                expect(is_digest(&r["trace_digest"]), &at("trace_digest"), &mut errs);
                expect(is_real(&r["phi"]), &at("phi"), &mut errs);
                expect(
                    matches!(r["phi_provenance"].as_str(), Some("exact" | "greedy_surrogate")),
                    &at("phi_provenance"),
                    &mut errs,
                );
                let g = &r["guarantees"];
                expect(
                    is_real(&g["alpha"]) && g["bounded_gradient"].is_boolean() && g["certified"].is_boolean() && g["notes"].is_array(),
                    &at("guarantees"),
                    &mut errs,
                );
                let c = &r["certificate"];
                expect(
                    c.is_null()
                        || (is_real(&c["lhs"]) && is_real(&c["rhs"]) && c["verdict"].is_boolean() && is_real(&c["eps"])),
                    &at("certificate"),
                    &mut errs,
                );
                expect(
                    r["attacked_utility"].is_null() || is_real(&r["attacked_utility"]),
                    &at("attacked_utility"),
                    &mut errs,
                );
                expect(r["csv"].is_null() || r["csv"].is_string(), &at("csv"), &mut errs);
            }
        }
    }
    errs
}
