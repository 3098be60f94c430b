//! Rating-perturbation attack on a top-k recommender at desk scale.
//!
//! Writes a MovieLens-format ratings file from the seeded generator (pass a
//! real `ratings.csv` as the first argument to use that instead), keeps the
//! 200 most-rated movies and the 50 most active users, and lets the attacker
//! move the completed matrix within a Frobenius budget of 0.5% of its size.
//!
//!     cargo run --release --example recommender_attack [ratings.csv]

use std::path::PathBuf;

use submodular_minimax::experiment::{
    run_experiment, synthetic_ratings, ExperimentConfig, ExperimentKind, SyntheticRatings,
};
use submodular_minimax::solvers::{Algorithm, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let work = std::env::temp_dir().join("csmm-recommender-attack");
    std::fs::create_dir_all(&work)?;
    let ratings = match std::env::args().nth(1) {
        Some(p) => PathBuf::from(p),
        None => {
            let path = work.join("ratings.csv");
            std::fs::write(&path, synthetic_ratings(&SyntheticRatings::new(610, 2000, 11))?)?;
            path
        }
    };

    let mut cfg = ExperimentConfig::new(ExperimentKind::MovielensAttack {
        ratings,
        users: 50,
        movies: 200,
        k: 5,
        budget_fraction: 0.005,
    });
    cfg.algorithms = vec![Algorithm::Gg, Algorithm::Egg];
    cfg.solver = SolverConfig::new(200);
    cfg.output_dir = work.join("out");

    let report = run_experiment(&cfg)?;
    let baseline = report.summary.baseline_utility.unwrap_or(f64::NAN);
    println!("no-attack greedy utility   {baseline:.4}");
    for run in &report.summary.runs {
        let u = run.attacked_utility.unwrap_or(f64::NAN);
        println!(
            "{:<4} attacked utility      {u:.4}  ({:.1}% of baseline)",
            run.algorithm.as_str(),
            100.0 * u / baseline
        );
    }
    for f in &report.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
