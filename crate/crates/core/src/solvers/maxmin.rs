use super::SolveResult;
use crate::continuous::{minimize_over_x, InnerSolution};
use crate::error::{Error, Result};
use crate::ground::SubsetSelection;
use crate::objective::Objective;
use crate::region::FeasibleRegion;

/// The union of all visited sets with its inner minimum `min_x f(x, ∪S_t)`.
///
/// The union may exceed the matroid rank; it is a bi-criteria answer to the
/// max-min problem and is never truncated.
pub fn extract_maxmin_solution(
    result: &SolveResult,
    obj: &dyn Objective,
    region: &FeasibleRegion,
    tol: f64,
    max_iters: usize,
) -> Result<(SubsetSelection, InnerSolution)> {
    let union = result.visited_union.clone();
    if union.ground_size() != obj.ground_size() {
        return Err(Error::GroundSetMismatch {
            expected: obj.ground_size(),
            actual: union.ground_size(),
        });
    }
    let inner = minimize_over_x(obj, &union, region, tol, max_iters)?;
    Ok((union, inner))
}
