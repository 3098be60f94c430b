//! Extra-gradient on the multilinear extension, exact and sampled, at the
//! stability step `1 / max(L_x, L_y)`.
//!
//!     cargo run --release --example egce

use submodular_minimax::continuous::StepSchedule;
use submodular_minimax::discrete::DEFAULT_ENUMERATION_CAP;
use submodular_minimax::evaluation::{compute_opt_minimax, phi_bar_exact, OptConfig};
use submodular_minimax::experiment::generate_synthetic_case;
use submodular_minimax::multilinear::{EstimatorConfig, GradientMode};
use submodular_minimax::solvers::{egce_step_bound, Algorithm, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (obj, c, region) = generate_synthetic_case(2, 10, 3, 1.0, 0)?;
    let opt = compute_opt_minimax(&obj, &c, &region, &OptConfig::default())?.value;
    println!("OPT reference {opt:.5}");

    let modes = [
        ("exact", GradientMode::Exact),
        ("sampled", GradientMode::Sampled(EstimatorConfig { samples: 500, seed: 3, antithetic: true })),
    ];
    for (name, mode) in modes {
        for t in [50, 100, 200, 400] {
            let base = SolverConfig::new(t).with_gradient_mode(mode);
            let gamma = egce_step_bound(&obj, &base)?;
            let res = Algorithm::Egce.solve(&obj, &c, &region, &base.with_schedule(StepSchedule::Constant { gamma }))?;
            let phi = phi_bar_exact(&obj, &c, &res.x_sol, DEFAULT_ENUMERATION_CAP)?.1;
            let last = res.trace.last().and_then(|r| r.y.clone()).unwrap_or_default();
            let mass: f64 = last.iter().sum();
            println!(
                "{name:<7} T={t:<4} γ={gamma:.2e}  φ̄(x_sol) {phi:.5}  ½φ̄ − OPT {:+.5}  final y mass {mass:.3}",
                0.5 * phi - opt
            );
        }
    }
    Ok(())
}
