//! Certificates `α·φ̄(x) ≤ OPT + ε` for a solver output: the smallest ε
//! that holds, and the greedy surrogate used when enumeration is too large.
//!
//!     cargo run --release --example certify

use submodular_minimax::evaluation::{certify, compute_opt_minimax, OptConfig};
use submodular_minimax::experiment::generate_synthetic_case;
use submodular_minimax::solvers::{Algorithm, SolverConfig};
use submodular_minimax::discrete::DEFAULT_ENUMERATION_CAP;
use submodular_minimax::continuous::StepSchedule;
use submodular_minimax::Objective;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (obj, c, region) = generate_synthetic_case(4, 8, 3, 1.0, 1)?;
    let opt = compute_opt_minimax(&obj, &c, &region, &OptConfig::default())?.value;
    let step = StepSchedule::ConstantOverSqrtT { c: 1.0 / obj.smoothness().lipschitz };
    let res = Algorithm::Gg.solve(&obj, &c, &region, &SolverConfig::new(1600).with_schedule(step))?;
    let alpha = res.guarantees.alpha;

    let tight = certify(alpha, &res.x_sol, &obj, &c, opt, 0.0, DEFAULT_ENUMERATION_CAP)?;
    println!(
        "ε = 0: {:.5} <= {:.5} is {} ({:?}); smallest ε that holds: {:.5}",
        tight.lhs, tight.rhs, tight.verdict, tight.phi_provenance, tight.eps_observed.max(0.0)
    );
    for eps in [0.1, 0.5, 1.0] {
        let c = certify(alpha, &res.x_sol, &obj, &c, opt, eps, DEFAULT_ENUMERATION_CAP)?;
        println!("ε = {eps}: verdict {}", c.verdict);
    }
    // With an enumeration cap of 1 the worst case comes from greedy, which
    // can only under-estimate it; the record says so.
    let surrogate = certify(alpha, &res.x_sol, &obj, &c, opt, 0.0, 1)?;
    println!("greedy surrogate: lhs {:.5} ({:?})", surrogate.lhs, surrogate.phi_provenance);
    Ok(())
}
