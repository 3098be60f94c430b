//! Optional full-scale attack: 200 users, 2000 movies, k = 10, budget 0.5%.
//! Not part of the test suite. Without a ratings file it generates a
//! MovieLens-format file with enough users and movies.
//!
//!     cargo run --release --example full_scale_attack [ratings.csv] [T]

use std::path::PathBuf;

use submodular_minimax::experiment::{
    run_experiment, synthetic_ratings, ExperimentConfig, ExperimentKind, SyntheticRatings,
};
use submodular_minimax::solvers::{Algorithm, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let work = std::env::temp_dir().join("csmm-full-scale-attack");
    std::fs::create_dir_all(&work)?;
    let mut args = std::env::args().skip(1);
    let ratings = match args.next().filter(|a| a != "-") {
        Some(p) => PathBuf::from(p),
        None => {
            let path = work.join("ratings.csv");
            std::fs::write(&path, synthetic_ratings(&SyntheticRatings::new(610, 9000, 11))?)?;
            path
        }
    };
    let horizon: usize = args.next().map_or(Ok(100), |s| s.parse())?;

    let mut cfg = ExperimentConfig::new(ExperimentKind::MovielensAttack {
        ratings,
        users: 200,
        movies: 2000,
        k: 10,
        budget_fraction: 0.005,
    });
    cfg.algorithms = vec![Algorithm::Gg];
    cfg.solver = SolverConfig::new(horizon);
    cfg.output_dir = work.join("out");
    let report = run_experiment(&cfg)?;
    let baseline = report.summary.baseline_utility.unwrap_or(f64::NAN);
    println!("no-attack utility {baseline:.4} (average best rating among the recommended movies)");
    for run in &report.summary.runs {
        let u = run.attacked_utility.unwrap_or(f64::NAN);
        println!("{} attacked utility {u:.4} ({:.1}% of baseline)", run.algorithm.as_str(), 100.0 * u / baseline);
    }
    Ok(())
}
