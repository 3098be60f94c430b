//! The multilinear extension: exact enumeration against sampling, gradients
//! in both arguments, and rounding back to a set.
//!
//!     cargo run --release --example multilinear_extension

use submodular_minimax::multilinear::{
    extension_gradients, extension_value_exact, extension_value_sampled, project_polytope, round_fractional,
    EstimatorConfig, FractionalPoint, GradientMode,
};
use submodular_minimax::Objective;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (obj, c, _) = submodular_minimax::experiment::generate_synthetic_case(2, 10, 3, 1.0, 4)?;
    let x = obj.default_start();
    let y = project_polytope(&c, &[0.9, 0.1, 0.6, 0.4, 0.3, 0.8, 0.2, 0.5, 0.7, 0.05])?;
    println!("y in the rank-3 polytope: {:.3?} (sum {:.3})", y.as_slice(), y.as_slice().iter().sum::<f64>());

    let exact = extension_value_exact(&obj, &x, &y)?;
    println!("F(x, y) exact               {exact:.6}");
    for samples in [100, 1_000, 10_000] {
        let (mean, se) = extension_value_sampled(&obj, &x, &y, &EstimatorConfig { samples, seed: 1, antithetic: false })?;
        println!("F(x, y) from {samples:>6} samples {mean:.6} ± {se:.6}  (off by {:.2} standard errors)", (mean - exact).abs() / se);
    }

    let g = extension_gradients(&obj, &x, &y, &GradientMode::Exact)?;
    println!("∇_y F exact: {:.4?}", g.grad_y);
    let s = extension_gradients(&obj, &x, &y, &GradientMode::Sampled(EstimatorConfig { samples: 5_000, seed: 2, antithetic: true }))?;
    println!("∇_y F from 5000 antithetic samples: {:.4?}", s.grad_y);

    let set = round_fractional(&y, &c)?;
    println!("rounded set {set}: f(x, S) = {:.6}", obj.value(&x, &set)?);
    println!("corner check: F(x, 1_S) = {:.6}", extension_value_exact(&obj, &x, &FractionalPoint::corner(&set))?);
    Ok(())
}
