//! Euclidean projections onto the supported regions and one projected
//! gradient step.
//!
//!     cargo run --release --example projections

use submodular_minimax::continuous::{gradient_step, project, project_capped_simplex};
use submodular_minimax::objective::{ModularQuadratic, ModularQuadraticSpec};
use submodular_minimax::{FeasibleRegion, SubsetSelection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ball = FeasibleRegion::ball(vec![0.0, 0.0], 1.0)?;
    println!("ball:            {:?}", project(&ball, &[3.0, 4.0])?);

    let blocks = FeasibleRegion::product_of_balls(vec![2, 2], 1.0, true)?;
    println!("orthant blocks:  {:?}", project(&blocks, &[3.0, -4.0, 0.3, 0.4])?);

    // Ratings perturbed within a Frobenius budget and kept in [0, 5].
    let ratings = vec![4.5, 1.0, 3.0, 5.0];
    let budget = FeasibleRegion::frobenius_box(ratings, 2, 2, 1.0, 0.0, 5.0)?;
    let p = project(&budget, &[6.0, -1.0, 3.0, 2.0])?;
    println!("frobenius ∩ box: {p:?}");

    println!("capped simplex:  {:?}", project_capped_simplex(&[0.9, 0.8, 0.1, -0.3], 1.5));

    // f(x, S) = ‖x − (2, 0)‖² for every S: the step overshoots the ball and
    // the projection brings it back to the boundary.
    let mut spec = ModularQuadraticSpec::constant(2, &[0.0]);
    spec.baseline_curvature = 1.0;
    spec.baseline_center = Some(vec![2.0, 0.0]);
    let obj = ModularQuadratic::new(spec)?;
    let x = gradient_step(&obj, &[0.5, 0.5], &SubsetSelection::empty(1), 0.25, &ball)?;
    println!("gradient step:   {x:?}");
    Ok(())
}
