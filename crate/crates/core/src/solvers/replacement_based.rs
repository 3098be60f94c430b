use super::{require_uniform, Algorithm, IterationRecord, Run, SolveResult, SolverConfig};
use crate::error::Result;
use crate::ground::SubsetSelection;
use crate::matroid::MatroidConstraint;
use crate::objective::Objective;
use crate::region::FeasibleRegion;

/// Gradient replacement greedy: the `x` update of gradient greedy with
/// `S_{t+1} = RepGreedy(x_{t+1}, S_t)`.
pub fn solve_grg(
    obj: &dyn Objective,
    c: &MatroidConstraint,
    region: &FeasibleRegion,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    require_uniform(Algorithm::Grg, c)?;
    let mut run = Run::new(Algorithm::Grg, obj, c, region, cfg)?;
    let mut x = run.start_point()?;
    let mut s = SubsetSelection::empty(c.ground_size());
    let mut carried = Vec::new();
    for t in 1..=cfg.horizon {
        run.begin_iteration();
        let gamma = cfg.gamma(t);
        let next = if t < cfg.horizon {
            let nx = run.step(t, &x, &s, gamma)?;
            let (ns, e) = run.replacement_at(t, &nx, &s)?;
            Some((nx, ns, e))
        } else {
            None
        };
        run.record(IterationRecord {
            t,
            gamma,
            x: x.clone(),
            set: s.clone(),
            y: None,
            x_hat: None,
            set_hat: None,
            y_hat: None,
            evaluations: std::mem::take(&mut carried),
            wall_ns: 0,
        });
        if let Some((nx, ns, e)) = next {
            x = nx;
            s = ns;
            carried.push(e);
        }
    }
    let g = run.set_guarantees();
    run.finish(g)
}

/// Extra-gradient replacement greedy, with the set updates taken literally:
/// `Ŝ_t = RepGreedy(x_t, S_t)` and `S_{t+1} = RepGreedy(x̂_t, Ŝ_t)`.
pub fn solve_egrg(
    obj: &dyn Objective,
    c: &MatroidConstraint,
    region: &FeasibleRegion,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    require_uniform(Algorithm::Egrg, c)?;
    let mut run = Run::new(Algorithm::Egrg, obj, c, region, cfg)?;
    let mut x = run.start_point()?;
    let mut s = SubsetSelection::empty(c.ground_size());
    let mut carried = Vec::new();
    for t in 1..=cfg.horizon {
        run.begin_iteration();
        let gamma = cfg.gamma(t);
        let x_hat = run.step(t, &x, &s, gamma)?;
        let (s_hat, e_hat) = run.replacement_at(t, &x, &s)?;
        let mut evaluations = std::mem::take(&mut carried);
        evaluations.push(e_hat);
        let next = if t < cfg.horizon {
            let nx = run.step_from(t, &x, &x_hat, &s_hat, gamma)?;
            let (ns, e) = run.replacement_at(t, &x_hat, &s_hat)?;
            Some((nx, ns, e))
        } else {
            None
        };
        run.record(IterationRecord {
            t,
            gamma,
            x: x.clone(),
            set: s.clone(),
            y: None,
            x_hat: Some(x_hat),
            set_hat: Some(s_hat),
            y_hat: None,
            evaluations,
            wall_ns: 0,
        });
        if let Some((nx, ns, e)) = next {
            x = nx;
            s = ns;
            carried.push(e);
        }
    }
    let g = run.set_guarantees();
    run.finish(g)
}
