//! Replacement greedy: one swap-or-add step at a time.
//!
//! Starts from the empty set and repeats the step until it stops changing,
//! printing the value after each step and the gap to the best set.
//!
//!     cargo run --release --example replacement_greedy

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use submodular_minimax::continuous::project;
use submodular_minimax::discrete::{brute_force_max, replacement_greedy, DEFAULT_ENUMERATION_CAP};
use submodular_minimax::objective::{ConvexFacilityLocation, ConvexFacilityLocationSpec};
use submodular_minimax::{FeasibleRegion, MatroidConstraint, Objective, SubsetSelection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (m, n, k) = (3, 12, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let obj = ConvexFacilityLocation::new(ConvexFacilityLocationSpec::random(m, n, 1.0, &mut rng))?;
    let region = FeasibleRegion::product_of_balls(vec![m; n], 1.0, true)?;
    let x = project(&region, &(0..m * n).map(|_| rng.random_range(0.0..1.0)).collect::<Vec<_>>())?;
    let f = obj.at(&x);
    let (best_set, best) = brute_force_max(f.as_ref(), &MatroidConstraint::uniform(n, k)?, DEFAULT_ENUMERATION_CAP)?;

    let mut s = SubsetSelection::empty(n);
    for step in 1..=20 {
        let next = replacement_greedy(f.as_ref(), k, &s)?;
        println!("step {step:>2}: {next}  value {:.5}  gap {:.2e}", f.value(&next), best - f.value(&next));
        if next == s {
            break;
        }
        s = next;
    }
    println!("best set {best_set} value {best:.5}");
    Ok(())
}
