//! Greedy against exhaustive search on facility-location set functions.
//!
//! For a batch of random instances and points, prints the ratio of the
//! greedy value to the best independent set under a cardinality and a
//! partition constraint.
//!
//!     cargo run --release --example greedy_vs_bruteforce

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use submodular_minimax::continuous::project;
use submodular_minimax::discrete::{brute_force_max, greedy, lazy_greedy, DEFAULT_ENUMERATION_CAP};
use submodular_minimax::objective::{ConvexFacilityLocation, ConvexFacilityLocationSpec};
use submodular_minimax::solvers::ONE_MINUS_INV_E;
use submodular_minimax::{FeasibleRegion, MatroidConstraint, Objective};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (m, n) = (3, 10);
    let uniform = MatroidConstraint::uniform(n, 4)?;
    let partition = MatroidConstraint::partition(n, vec![(0..5).collect(), (5..10).collect()], vec![2, 1])?;
    let region = FeasibleRegion::product_of_balls(vec![m; n], 1.0, true)?;

    for (name, c) in [("uniform k=4", &uniform), ("partition 2+1", &partition)] {
        let mut worst = f64::INFINITY;
        let mut exact_hits = 0;
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let obj = ConvexFacilityLocation::new(ConvexFacilityLocationSpec::random(m, n, 1.0, &mut rng))?;
            let x = project(&region, &(0..m * n).map(|_| rng.random_range(0.0..1.0)).collect::<Vec<_>>())?;
            let f = obj.at(&x);
            let (s, trace) = greedy(f.as_ref(), c)?;
            let (lazy, _) = lazy_greedy(f.as_ref(), c)?;
            assert_eq!(s, lazy);
            let (_, best) = brute_force_max(f.as_ref(), c, DEFAULT_ENUMERATION_CAP)?;
            let ratio = f.value(&s) / best;
            worst = worst.min(ratio);
            if ratio == 1.0 {
                exact_hits += 1;
            }
            if seed == 0 {
                let gains: Vec<String> = trace.picks.iter().map(|(e, g)| format!("{e}:{g:.3}")).collect();
                println!("{name}: first instance picks {}", gains.join(" "));
            }
        }
        println!("{name}: worst ratio {worst:.4} over 100 instances, optimal on {exact_hits}, (1-1/e) = {ONE_MINUS_INV_E:.4}");
    }
    Ok(())
}
