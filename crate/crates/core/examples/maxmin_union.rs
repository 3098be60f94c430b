//! The max-min side: the union of sets visited by gradient greedy against
//! the best single independent set, `max_S min_x f(x, S)`.
//!
//!     cargo run --release --example maxmin_union

use submodular_minimax::continuous::{minimize_over_x, StepSchedule};
use submodular_minimax::objective::{ModularQuadratic, ModularQuadraticSpec, WeightTerm};
use submodular_minimax::solvers::{extract_maxmin_solution, Algorithm, SolverConfig, ONE_MINUS_INV_E};
use submodular_minimax::{FeasibleRegion, MatroidConstraint, Objective, SubsetSelection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Six quadratic weights in the plane: a distant light pair and a tight
    // heavy cluster. f is convex in x, as the max-min guarantee needs.
    let layout = [(0.5, -1.0, 0.0), (0.5, 1.0, 0.0), (2.0, 0.0, 0.9), (2.0, 0.1, 0.95), (2.0, -0.1, 0.95), (2.0, 0.0, 1.0)];
    let terms = layout
        .iter()
        .map(|&(b, cx, cy)| WeightTerm { a: 0.0, b, center: vec![cx, cy] })
        .collect();
    let obj = ModularQuadratic::new(ModularQuadraticSpec {
        dim: 2,
        terms,
        baseline_constant: 0.0,
        baseline_curvature: 0.0,
        baseline_center: None,
        marginal_bound: None,
    })?;
    let (n, k) = (6, 2);
    let c = MatroidConstraint::uniform(n, k)?;
    let region = FeasibleRegion::ball(vec![0.0; 2], 1.5)?;

    let mut best = (SubsetSelection::empty(n), f64::NEG_INFINITY);
    for mask in 0u64..1 << n {
        let s = SubsetSelection::from_mask(n, mask);
        if c.is_independent(&s)? {
            let v = minimize_over_x(&obj, &s, &region, 1e-10, 100_000)?.value;
            if v > best.1 {
                best = (s, v);
            }
        }
    }
    println!("best single set {} with min_x f = {:.5}", best.0, best.1);

    let step = StepSchedule::ConstantOverSqrtT { c: 1.0 / obj.smoothness().lipschitz };
    for t in [1, 2, 5, 20, 80] {
        let res = Algorithm::Gg.solve(&obj, &c, &region, &SolverConfig::new(t).with_schedule(step))?;
        let (union, inner) = extract_maxmin_solution(&res, &obj, &region, 1e-10, 100_000)?;
        println!(
            "T={t:<3} union {union:<12} min_x f(x, ∪S_t) {:.5}   (1−1/e)·best − that {:+.5}",
            inner.value,
            ONE_MINUS_INV_E * best.1 - inner.value
        );
    }
    Ok(())
}
