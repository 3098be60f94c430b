use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matroid::MatroidConstraint;
use crate::objective::{ConvexFacilityLocation, ConvexFacilityLocationSpec};
use crate::region::FeasibleRegion;

/// Random convex facility-location instance: `n` blocks of dimension `m`,
/// `Q_ij = AᵀA + 0.1·I` with `A` uniform on `[0, 1)`, cardinality `k`, and
/// unit balls per block intersected with the nonnegative orthant.
pub fn generate_synthetic_case(
    m: usize,
    n: usize,
    k: usize,
    lambda: f64,
    seed: u64,
) -> Result<(ConvexFacilityLocation, MatroidConstraint, FeasibleRegion)> {
    if m == 0 || n == 0 || k == 0 || k > n {
        return Err(Error::Config(format!("need positive m, n, k with k ≤ n; got m={m}, n={n}, k={k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = ConvexFacilityLocationSpec::random(m, n, lambda, &mut rng);
    let radius = spec.radius;
    let obj = ConvexFacilityLocation::new(spec)?;
    let c = MatroidConstraint::uniform(n, k)?;
    let region = FeasibleRegion::product_of_balls(vec![m; n], radius, true)?;
    Ok((obj, c, region))
}
