//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if a criterion fails without a recorded proof that it cannot hold.
//!
//! Every criterion runs twice; the second run feeds the determinism check.
//!
//!     cargo test --release --test acceptance

mod common;

use std::time::{Duration, Instant};

use rand::Rng;

use common::{independent_masks, rng};
use submodular_minimax::continuous::{minimize_over_x, project, StepSchedule};
use submodular_minimax::discrete::{brute_force_max, greedy, replacement_greedy, DEFAULT_ENUMERATION_CAP as CAP};
use submodular_minimax::evaluation::{compute_opt_minimax, phi_bar_exact, OptConfig};
use submodular_minimax::experiment::{
    build_instance, run_experiment, synthetic_ratings, ExperimentConfig, ExperimentKind, SyntheticRatings,
};
use submodular_minimax::multilinear::{
    extension_value_exact, extension_value_sampled, grad_y_exact, EstimatorConfig, FractionalPoint, GradientMode,
};
use submodular_minimax::objective::{
    ConvexFacilityLocation, ConvexFacilityLocationSpec, ModularQuadratic, ModularQuadraticSpec, WeightTerm,
};
use submodular_minimax::solvers::{egce_step_bound, extract_maxmin_solution, Algorithm, SolveResult, SolverConfig, ONE_MINUS_INV_E};
use submodular_minimax::{FeasibleRegion, MatroidConstraint, Objective, SubsetSelection};

/// Bit-level record of everything a criterion computed.
#[derive(Default, PartialEq)]
struct Fingerprint(Vec<String>);

impl Fingerprint {
    fn num(&mut self, v: f64) {
        self.0.push(format!("{:016x}", v.to_bits()));
    }

    fn run(&mut self, r: &SolveResult) {
        self.0.push(r.digest());
    }
}

struct Outcome {
    pass: bool,
    detail: String,
    /// Why the criterion cannot hold on this instance, established at run time.
    unattainable: Option<String>,
    fp: Fingerprint,
}

impl Outcome {
    fn new(pass: bool, detail: String, fp: Fingerprint) -> Self {
        Outcome {
            pass,
            detail,
            unattainable: None,
            fp,
        }
    }
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Outcome,
}

const fn minutes(m: u64) -> Option<Duration> {
    Some(Duration::from_secs(60 * m))
}

fn fmt(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    format!("[{}]", parts.join(", "))
}

fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0])
}

fn random_point(region: &FeasibleRegion, d: usize, r: &mut impl Rng) -> Vec<f64> {
    project(region, &(0..d).map(|_| r.random_range(-0.2..1.0)).collect::<Vec<_>>()).unwrap()
}

/// Facility instance with `n` blocks of dimension `m` and a point in its region.
fn facility_at(m: usize, n: usize, seed: u64) -> (ConvexFacilityLocation, Vec<f64>) {
    let mut r = rng(seed);
    let obj = ConvexFacilityLocation::new(ConvexFacilityLocationSpec::random(m, n, 1.0, &mut r)).unwrap();
    let region = FeasibleRegion::product_of_balls(vec![m; n], 1.0, true).unwrap();
    let x = random_point(&region, m * n, &mut r);
    (obj, x)
}

fn greedy_ratio() -> Outcome {
    let c = MatroidConstraint::uniform(8, 3).unwrap();
    let mut fp = Fingerprint::default();
    let mut worst = f64::INFINITY;
    let mut violations = 0;
    for seed in 0..200 {
        let (obj, x) = facility_at(4, 8, seed);
        let f = obj.at(&x);
        let (s, _) = greedy(f.as_ref(), &c).unwrap();
        let got = f.value(&s);
        let best = brute_force_max(f.as_ref(), &c, CAP).unwrap().1;
        if got < ONE_MINUS_INV_E * best - 1e-9 {
            violations += 1;
        }
        worst = worst.min(got / best);
        fp.num(got);
        fp.num(best);
    }
    Outcome::new(
        violations == 0,
        format!("200 instances, worst greedy/optimum {worst:.4} (floor {ONE_MINUS_INV_E:.4}), {violations} violations"),
        fp,
    )
}

fn replacement_step() -> Outcome {
    let (n, k) = (8, 3);
    let c = MatroidConstraint::uniform(n, k).unwrap();
    let masks = independent_masks(&c);
    let mut fp = Fingerprint::default();
    let mut checks = 0usize;
    let mut violations = 0;
    let mut min_slack = f64::INFINITY;
    for seed in 0..100 {
        let (obj, x) = facility_at(4, n, 1000 + seed);
        let g = obj.at(&x);
        let s = SubsetSelection::from_mask(n, masks[rng(seed).random_range(0..masks.len())]);
        let next = replacement_greedy(g.as_ref(), k, &s).unwrap();
        let gain = g.value(&next) - g.value(&s);
        for &b in &masks {
            let rhs = (g.value(&SubsetSelection::from_mask(n, b)) - 2.0 * g.value(&s)) / k as f64;
            if gain < rhs - 1e-9 {
                violations += 1;
            }
            min_slack = min_slack.min(gain - rhs);
            checks += 1;
        }
        fp.num(gain);
    }
    Outcome::new(
        violations == 0,
        format!("{checks} (S, B) pairs over 100 instances, smallest slack {min_slack:.3e}, {violations} violations"),
        fp,
    )
}

const SWEEP: [usize; 4] = [25, 100, 400, 1600];

/// 5-seed averages of `α·φ̄(x_sol) − OPT` on scaled Case I, one per horizon.
fn case_one_sweep(alg: Algorithm, alpha: f64, fp: &mut Fingerprint) -> (Vec<f64>, Vec<f64>) {
    let mut eps = vec![0.0; SWEEP.len()];
    let mut raw = vec![0.0; SWEEP.len()];
    for seed in 0..5 {
        let (obj, c, region) = submodular_minimax::experiment::generate_synthetic_case(4, 8, 3, 1.0, seed).unwrap();
        let opt = compute_opt_minimax(&obj, &c, &region, &OptConfig::default()).unwrap().value;
        fp.num(opt);
        let step = StepSchedule::ConstantOverSqrtT {
            c: 1.0 / obj.smoothness().lipschitz,
        };
        for (i, &t) in SWEEP.iter().enumerate() {
            let res = alg
                .solve(&obj, &c, &region, &SolverConfig::new(t).with_schedule(step).with_seed(seed))
                .unwrap();
            let phi = phi_bar_exact(&obj, &c, &res.x_sol, CAP).unwrap().1;
            eps[i] += (alpha * phi - opt) / 5.0;
            raw[i] += (phi - opt) / 5.0;
            fp.run(&res);
        }
    }
    (eps, raw)
}

fn sweep_passes(eps: &[f64]) -> bool {
    eps.iter().all(|e| e.is_finite()) && non_increasing(eps) && eps[eps.len() - 1] <= eps[0] / 3.0
}

fn gg_certificate() -> Outcome {
    let mut fp = Fingerprint::default();
    let (eps, raw) = case_one_sweep(Algorithm::Gg, ONE_MINUS_INV_E, &mut fp);
    Outcome::new(
        sweep_passes(&eps),
        format!("ε_T over T = {SWEEP:?}: {} (unscaled gap {})", fmt(&eps), fmt(&raw)),
        fp,
    )
}

fn replacement_certificates() -> Outcome {
    let mut fp = Fingerprint::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for alg in [Algorithm::Grg, Algorithm::Egrg] {
        let (eps, _) = case_one_sweep(alg, 0.5, &mut fp);
        pass &= sweep_passes(&eps);
        parts.push(format!("{}: {}", alg.as_str(), fmt(&eps)));
    }
    Outcome::new(pass, format!("ε_T over T = {SWEEP:?}: {}", parts.join("; ")), fp)
}

/// Quadratic element weights around centers far from the start: the gradient
/// grows without bound in `x`, and the ball is large enough that it matters.
fn far_quadratic(seed: u64) -> ModularQuadratic {
    let mut r = rng(seed);
    let terms = (0..8)
        .map(|_| WeightTerm {
            a: 0.0,
            b: r.random_range(0.5..1.5),
            center: (0..4).map(|_| 6.0 + r.random_range(-0.5..0.5)).collect(),
        })
        .collect();
    ModularQuadratic::new(ModularQuadraticSpec {
        dim: 4,
        terms,
        baseline_constant: 0.0,
        baseline_curvature: 0.0,
        baseline_center: None,
        marginal_bound: None,
    })
    .unwrap()
}

fn extra_gradient_without_bound() -> Outcome {
    let c = MatroidConstraint::uniform(8, 3).unwrap();
    let region = FeasibleRegion::ball(vec![0.0; 4], 20.0).unwrap();
    let mut fp = Fingerprint::default();
    let mut eps = vec![0.0; SWEEP.len()];
    let mut egg_certified = true;
    let mut gg_flagged = true;
    for seed in 0..5 {
        let obj = far_quadratic(seed);
        let opt = compute_opt_minimax(&obj, &c, &region, &OptConfig::default()).unwrap().value;
        let step = StepSchedule::ConstantOverSqrtT {
            c: 1.0 / obj.smoothness().lipschitz,
        };
        for (i, &t) in SWEEP.iter().enumerate() {
            let cfg = SolverConfig::new(t).with_schedule(step).with_seed(seed);
            let egg = Algorithm::Egg.solve(&obj, &c, &region, &cfg).unwrap();
            eps[i] += (ONE_MINUS_INV_E * phi_bar_exact(&obj, &c, &egg.x_sol, CAP).unwrap().1 - opt) / 5.0;
            egg_certified &= egg.guarantees.certified;
            fp.run(&egg);
        }
        let gg = Algorithm::Gg
            .solve(&obj, &c, &region, &SolverConfig::new(SWEEP[0]).with_schedule(step))
            .unwrap();
        gg_flagged &= !gg.guarantees.bounded_gradient && !gg.guarantees.certified;
        fp.run(&gg);
    }
    Outcome::new(
        sweep_passes(&eps) && egg_certified && gg_flagged,
        format!("EGG ε_T over T = {SWEEP:?}: {}; EGG certified {egg_certified}, GG flagged unverified {gg_flagged}", fmt(&eps)),
        fp,
    )
}

fn extension_rate() -> Outcome {
    let horizons = [50usize, 100, 200, 400];
    let mut fp = Fingerprint::default();
    let mut g = vec![0.0; horizons.len()];
    let mut g_gg = vec![0.0; horizons.len()];
    for seed in 0..5 {
        let (obj, c, region) = submodular_minimax::experiment::generate_synthetic_case(2, 10, 3, 1.0, seed).unwrap();
        let opt = compute_opt_minimax(&obj, &c, &region, &OptConfig::default()).unwrap().value;
        for (i, &t) in horizons.iter().enumerate() {
            let base = SolverConfig::new(t).with_gradient_mode(GradientMode::Exact).with_seed(seed);
            let gamma = egce_step_bound(&obj, &base).unwrap();
            let res = Algorithm::Egce
                .solve(&obj, &c, &region, &base.with_schedule(StepSchedule::Constant { gamma }))
                .unwrap();
            g[i] += (0.5 * phi_bar_exact(&obj, &c, &res.x_sol, CAP).unwrap().1 - opt) / 5.0;
            fp.run(&res);
            let step = StepSchedule::ConstantOverSqrtT {
                c: 1.0 / obj.smoothness().lipschitz,
            };
            let gg = Algorithm::Gg
                .solve(&obj, &c, &region, &SolverConfig::new(t).with_schedule(step).with_seed(seed))
                .unwrap();
            g_gg[i] += (0.5 * phi_bar_exact(&obj, &c, &gg.x_sol, CAP).unwrap().1 - opt) / 5.0;
            fp.run(&gg);
        }
    }
    let ratios: Vec<f64> = g.windows(2).map(|w| w[1] / w[0]).collect();
    let gg_ratios: Vec<f64> = g_gg.windows(2).map(|w| w[1] / w[0]).collect();
    let faster = ratios.iter().sum::<f64>() < gg_ratios.iter().sum::<f64>();
    let pass = g.windows(2).all(|w| w[1] <= 0.7 * w[0]) && faster;
    Outcome::new(
        pass,
        format!(
            "g(T) over T = {horizons:?}: {}, ratios {}; GG on the same instances: ratios {}",
            fmt(&g),
            fmt(&ratios),
            fmt(&gg_ratios)
        ),
        fp,
    )
}

fn multilinear_correctness() -> Outcome {
    let n = 10;
    let mut fp = Fingerprint::default();

    let mut corner_misses = 0;
    for trial in 0..500 {
        let (obj, x) = facility_at(2, n, 5000 + trial);
        let s = SubsetSelection::from_mask(n, rng(trial).random_range(0..1u64 << n));
        let f = extension_value_exact(&obj, &x, &FractionalPoint::corner(&s)).unwrap();
        if f != obj.value(&x, &s).unwrap() {
            corner_misses += 1;
        }
        fp.num(f);
    }

    let mut within = 0;
    for trial in 0..1000u64 {
        let (obj, x) = facility_at(2, n, 7000 + trial);
        let y = FractionalPoint::new((0..n).map(|_| rng(trial).random_range(0.0..1.0)).collect()).unwrap();
        let exact = extension_value_exact(&obj, &x, &y).unwrap();
        let est = EstimatorConfig {
            samples: 10_000,
            seed: trial,
            antithetic: false,
        };
        let (mean, se) = extension_value_sampled(&obj, &x, &y, &est).unwrap();
        if (mean - exact).abs() <= 4.0 * se {
            within += 1;
        }
        fp.num(mean);
    }

    let mut worst_fd = 0.0f64;
    for trial in 0..50u64 {
        let (obj, x) = facility_at(2, n, 9000 + trial);
        let mut r = rng(trial);
        let y: Vec<f64> = (0..n).map(|_| r.random_range(0.1..0.9)).collect();
        let grad = grad_y_exact(&obj, &x, &FractionalPoint::new(y.clone()).unwrap()).unwrap();
        let h = 1e-4;
        for e in 0..n {
            let at = |d: f64| {
                let mut z = y.clone();
                z[e] += d;
                extension_value_exact(&obj, &x, &FractionalPoint::new(z).unwrap()).unwrap()
            };
            worst_fd = worst_fd.max((grad[e] - (at(h) - at(-h)) / (2.0 * h)).abs());
        }
        fp.num(grad[0]);
    }

    Outcome::new(
        corner_misses == 0 && within >= 990 && worst_fd <= 1e-6,
        format!(
            "corners exact {}/500; sampled within 4·se {within}/1000; largest ∇_y finite-difference gap {worst_fd:.2e}",
            500 - corner_misses
        ),
        fp,
    )
}

fn evaluation_counts() -> Outcome {
    let (n, k) = (8usize, 3usize);
    let (obj, c, region) = submodular_minimax::experiment::generate_synthetic_case(4, n, k, 1.0, 0).unwrap();
    let greedy_calls: u64 = (0..k).map(|i| (n - i) as u64).sum();
    let step = StepSchedule::ConstantOverSqrtT {
        c: 1.0 / obj.smoothness().lipschitz,
    };
    let mut fp = Fingerprint::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for alg in [Algorithm::Gg, Algorithm::Egg, Algorithm::Grg, Algorithm::Egrg] {
        let res = alg.solve(&obj, &c, &region, &SolverConfig::new(30).with_schedule(step)).unwrap();
        let calls: Vec<u64> = res.trace.iter().flat_map(|r| r.evaluations.iter().copied()).collect();
        let max = calls.iter().copied().max().unwrap_or(0);
        let ok = match alg {
            Algorithm::Gg | Algorithm::Egg => calls.iter().all(|&e| e == greedy_calls),
            _ => max <= (n + k + 1) as u64,
        };
        let per_iter = res.trace[1..].iter().map(|r| r.evaluations.len()).max().unwrap_or(0);
        pass &= ok && !calls.is_empty();
        parts.push(format!("{} {} call(s)/iteration, max {max} evaluations/call", alg.as_str(), per_iter));
        fp.run(&res);
    }
    Outcome::new(
        pass,
        format!(
            "n = {n}, k = {k}: greedy Σ(n−i) = {greedy_calls}, replacement bound n+k+1 = {}; {}",
            n + k + 1,
            parts.join(", ")
        ),
        fp,
    )
}

/// Convex quadratic weights: a distant pair with light curvature and a tight
/// cluster with heavy curvature. Greedy from the origin first picks cluster
/// elements, whose pairs are cheap to cover, so early unions can be poor.
fn maxmin_instance(seed: u64) -> ModularQuadratic {
    let layout = [
        (0.5, -1.0, 0.0),
        (0.5, 1.0, 0.0),
        (2.0, 0.0, 0.9),
        (2.0, 0.1, 0.95),
        (2.0, -0.1, 0.95),
        (2.0, 0.0, 1.0),
    ];
    let mut r = rng(seed);
    let terms = layout
        .iter()
        .map(|&(b, cx, cy)| WeightTerm {
            a: 0.0,
            b: b * (1.0 + r.random_range(-0.1..0.1)),
            center: vec![cx + r.random_range(-0.05..0.05), cy + r.random_range(-0.05..0.05)],
        })
        .collect();
    ModularQuadratic::new(ModularQuadraticSpec {
        dim: 2,
        terms,
        baseline_constant: 0.0,
        baseline_curvature: 0.0,
        baseline_center: None,
        marginal_bound: None,
    })
    .unwrap()
}

fn maxmin_bicriteria() -> Outcome {
    let horizons = [5usize, 20, 80];
    let (n, k, radius) = (6, 2, 1.5);
    let c = MatroidConstraint::uniform(n, k).unwrap();
    let region = FeasibleRegion::ball(vec![0.0; 2], radius).unwrap();
    let mut fp = Fingerprint::default();
    let mut gaps = vec![0.0; horizons.len()];
    let mut eps_obs = vec![0.0; horizons.len()];
    let mut within_bound = true;
    for seed in 0..5 {
        let obj = maxmin_instance(seed);
        let opt_maxmin = independent_masks(&c)
            .into_iter()
            .map(|m| minimize_over_x(&obj, &SubsetSelection::from_mask(n, m), &region, 1e-10, 100_000).unwrap().value)
            .fold(f64::NEG_INFINITY, f64::max);
        fp.num(opt_maxmin);
        let l = obj.smoothness().lipschitz;
        // Gradient norm over the ball for any |S| ≤ k, and the squared diameter.
        let mut g: Vec<f64> = obj
            .spec()
            .terms
            .iter()
            .map(|t| 2.0 * t.b * (radius + t.center.iter().map(|v| v * v).sum::<f64>().sqrt()))
            .collect();
        g.sort_by(|a, b| b.total_cmp(a));
        let m: f64 = g[..k].iter().sum();
        let h = (2.0 * radius) * (2.0 * radius);
        let cst = 1.0 / l;
        for (i, &t) in horizons.iter().enumerate() {
            let res = Algorithm::Gg
                .solve(
                    &obj,
                    &c,
                    &region,
                    &SolverConfig::new(t).with_schedule(StepSchedule::ConstantOverSqrtT { c: cst }),
                )
                .unwrap();
            let (_, inner) = extract_maxmin_solution(&res, &obj, &region, 1e-10, 100_000).unwrap();
            let gap = ONE_MINUS_INV_E * opt_maxmin - inner.value;
            let bound = (2.0 * m * m * cst + h / (2.0 * cst)) / (t as f64).sqrt();
            within_bound &= gap <= bound;
            gaps[i] += gap / 5.0;
            eps_obs[i] += gap.max(0.0) / 5.0;
            fp.run(&res);
            fp.num(inner.value);
        }
    }
    Outcome::new(
        within_bound && non_increasing(&eps_obs),
        format!(
            "T = {horizons:?}: mean (1−1/e)·OPT_maxmin − φ(∪S_t) {}, ε_observed {}, all within the rate bound {within_bound}",
            fmt(&gaps),
            fmt(&eps_obs)
        ),
        fp,
    )
}

fn attack() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let ratings = dir.path().join("ratings.csv");
    std::fs::write(&ratings, synthetic_ratings(&SyntheticRatings::new(610, 2000, 11)).unwrap()).unwrap();
    let (users, movies, fraction) = (50usize, 200usize, 0.005);
    let kind = ExperimentKind::MovielensAttack {
        ratings,
        users,
        movies,
        k: 5,
        budget_fraction: fraction,
    };

    // Any recommendation containing item j earns at least the column mean of
    // j, so the attacked utility is at least the smallest achievable largest
    // column mean. Lowering column j to τ costs at least √U·(m_j − τ) in
    // Frobenius norm, spread evenly over its users.
    let inst = build_instance(&kind).unwrap();
    let baseline = inst.baseline_utility.unwrap();
    let x0 = inst.objective.default_start();
    let means: Vec<f64> = (0..movies)
        .map(|j| (0..users).map(|u| x0[u * movies + j]).sum::<f64>() / users as f64)
        .collect();
    let budget = fraction * (users * movies) as f64;
    let cost = |tau: f64| (users as f64 * means.iter().map(|m| (m - tau).max(0.0).powi(2)).sum::<f64>()).sqrt();
    let (mut lo, mut hi) = (0.0, means.iter().copied().fold(0.0, f64::max));
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if cost(mid) > budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let floor = lo;

    let mut cfg = ExperimentConfig::new(kind);
    cfg.algorithms = vec![Algorithm::Gg, Algorithm::Egg];
    cfg.solver = SolverConfig::new(200);
    cfg.output_dir = dir.path().join("out");
    let report = run_experiment(&cfg).unwrap();
    let mut fp = Fingerprint::default();
    fp.num(baseline);
    let mut best = f64::INFINITY;
    for run in &report.summary.runs {
        let u = run.attacked_utility.unwrap();
        best = best.min(u);
        fp.num(u);
        fp.0.push(run.trace_digest.clone());
    }
    let ratio = best / baseline;
    let mut out = Outcome::new(
        ratio <= 0.5,
        format!(
            "baseline {baseline:.4}, attacked {best:.4} ({ratio:.3} of baseline); no perturbation in budget gets below {floor:.4} ({:.3} of baseline)",
            floor / baseline
        ),
        fp,
    );
    if floor > 0.5 * baseline {
        out.unattainable = Some(format!("column-mean floor {:.3} of baseline exceeds 0.5", floor / baseline));
    }
    out
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "greedy guarantee", limit: Some(Duration::from_secs(10)), check: greedy_ratio },
        Criterion { id: 2, name: "replacement-greedy step inequality", limit: Some(Duration::from_secs(30)), check: replacement_step },
        Criterion { id: 3, name: "gradient greedy certificate", limit: minutes(5), check: gg_certificate },
        Criterion { id: 4, name: "replacement-greedy certificates", limit: minutes(5), check: replacement_certificates },
        Criterion { id: 5, name: "extra-gradient greedy without a gradient bound", limit: minutes(5), check: extra_gradient_without_bound },
        Criterion { id: 6, name: "extension method rate", limit: minutes(10), check: extension_rate },
        Criterion { id: 7, name: "multilinear extension", limit: None, check: multilinear_correctness },
        Criterion { id: 8, name: "evaluation counts", limit: None, check: evaluation_counts },
        Criterion { id: 9, name: "max-min bi-criteria", limit: minutes(2), check: maxmin_bicriteria },
        Criterion { id: 10, name: "attack at desk scale", limit: minutes(10), check: attack },
    ];

    let mut failed = Vec::new();
    let mut deterministic = true;
    let mut unstable = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let first = (c.check)();
        let elapsed = start.elapsed();
        let second = (c.check)();
        if first.fp != second.fp {
            deterministic = false;
            unstable.push(c.id);
        }
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let pass = first.pass && in_time;
        let time_note = match c.limit {
            Some(l) => format!("{:.1}s of {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.1}s", elapsed.as_secs_f64()),
        };
        println!(
            "{} criterion {:>2} ({}): {} [{time_note}]",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            first.detail
        );
        if !pass {
            match &first.unattainable {
                Some(why) if in_time => println!("     unattainable on this data: {why}"),
                _ => failed.push(c.id),
            }
        }
    }
    println!(
        "{} criterion 11 (determinism): criteria 1 to 10 repeated with identical bit-level results{}",
        if deterministic { "PASS" } else { "FAIL" },
        if deterministic { String::new() } else { format!(", except {unstable:?}") }
    );
    if !deterministic {
        failed.push(11);
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
