use super::{Algorithm, IterationRecord, Run, SolveResult, SolverConfig};
use crate::error::Result;
use crate::ground::SubsetSelection;
use crate::matroid::MatroidConstraint;
use crate::objective::Objective;
use crate::region::FeasibleRegion;

/// Gradient greedy: `x_{t+1} = π(x_t − γ_t ∇f(x_t, S_t))`,
/// `S_{t+1} = Greedy(x_{t+1})`, starting from `S_1 = ∅`; averages `x_t`.
pub fn solve_gg(
    obj: &dyn Objective,
    c: &MatroidConstraint,
    region: &FeasibleRegion,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    let mut run = Run::new(Algorithm::Gg, obj, c, region, cfg)?;
    let mut x = run.start_point()?;
    let mut s = SubsetSelection::empty(c.ground_size());
    let mut evals = Vec::new();
    for t in 1..=cfg.horizon {
        run.begin_iteration();
        let gamma = cfg.gamma(t);
        let (next_x, next_s) = if t < cfg.horizon {
            let nx = run.step(t, &x, &s, gamma)?;
            let (ns, e) = run.greedy_at(t, &nx)?;
            (Some(nx), Some((ns, e)))
        } else {
            (None, None)
        };
        let rec_evals = std::mem::take(&mut evals);
        run.record(IterationRecord {
            t,
            gamma,
            x: x.clone(),
            set: s.clone(),
            y: None,
            x_hat: None,
            set_hat: None,
            y_hat: None,
            evaluations: rec_evals,
            wall_ns: 0,
        });
        if let (Some(nx), Some((ns, e))) = (next_x, next_s) {
            x = nx;
            s = ns;
            evals.push(e);
        }
    }
    let g = run.set_guarantees();
    run.finish(g)
}

/// Extra-gradient greedy: probes `x̂_t`, `Ŝ_t = Greedy(x̂_t)`, then steps from
/// `x_t` with the gradient at `(x̂_t, Ŝ_t)`; averages `x̂_t`.
pub fn solve_egg(
    obj: &dyn Objective,
    c: &MatroidConstraint,
    region: &FeasibleRegion,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    let mut run = Run::new(Algorithm::Egg, obj, c, region, cfg)?;
    let mut x = run.start_point()?;
    let mut s = SubsetSelection::empty(c.ground_size());
    let mut carried = Vec::new();
    for t in 1..=cfg.horizon {
        run.begin_iteration();
        let gamma = cfg.gamma(t);
        let x_hat = run.step(t, &x, &s, gamma)?;
        let (s_hat, e_hat) = run.greedy_at(t, &x_hat)?;
        let mut evaluations = std::mem::take(&mut carried);
        evaluations.push(e_hat);
        let next = if t < cfg.horizon {
            let nx = run.step_from(t, &x, &x_hat, &s_hat, gamma)?;
            let (ns, e) = run.greedy_at(t, &nx)?;
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
