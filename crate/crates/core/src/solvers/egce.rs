use super::{Algorithm, Guarantees, IterationRecord, Run, SolveResult, SolverConfig};
use crate::error::{Error, Result};
use crate::matroid::MatroidConstraint;
use crate::multilinear::{
    derive_seed, extension_gradients, project_polytope, round_fractional, EstimatorConfig,
    ExtensionGradients, FractionalPoint, GradientMode,
};
use crate::objective::Objective;
use crate::region::FeasibleRegion;

/// Largest stable step `1 / max(L_x, L_y)`.
///
/// `L_y` defaults to `n` times the objective's marginal bound (a Gershgorin
/// bound on the Hessian of the extension in `y`).
pub fn egce_step_bound(obj: &dyn Objective, cfg: &SolverConfig) -> Result<f64> {
    let l_x = obj.smoothness().lipschitz;
    let l_y = match cfg.l_y {
        Some(l) => l,
        None => {
            let mb = obj.smoothness().marginal_bound.ok_or_else(|| {
                Error::Config(format!(
                    "{} has no marginal bound; set l_y explicitly",
                    obj.name()
                ))
            })?;
            obj.ground_size() as f64 * mb
        }
    };
    let l = l_x.max(l_y);
    Ok(if l > 0.0 { 1.0 / l } else { f64::INFINITY })
}

/// Extra-gradient on the multilinear extension: descent in `x`, ascent in
/// `y` over the matroid polytope, starting from `y_1 = 0`; averages `x̂_t`.
pub fn solve_egce(
    obj: &dyn Objective,
    c: &MatroidConstraint,
    region: &FeasibleRegion,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    let mut run = Run::new(Algorithm::Egce, obj, c, region, cfg)?;
    let bound = egce_step_bound(obj, cfg)?;
    let mut step_ok = true;
    for t in 1..=cfg.horizon {
        let g = cfg.gamma(t);
        if g > bound * (1.0 + 1e-12) {
            step_ok = false;
            if !cfg.unsafe_step {
                return Err(Error::StepTooLarge { gamma: g, bound });
            }
            break;
        }
    }

    let n = c.ground_size();
    let mut x = run.start_point()?;
    let mut y = FractionalPoint::zeros(n);
    for t in 1..=cfg.horizon {
        run.begin_iteration();
        let gamma = cfg.gamma(t);
        let at = gradients(&run, t, 0, &x, &y)?;
        let x_hat = run.step_along(t, &x, &at.grad_x, -gamma)?;
        let y_hat = ascend(&run, t, &y, &at.grad_y, gamma)?;
        let mid = gradients(&run, t, 1, &x_hat, &y_hat)?;
        let x_next = run.step_along(t, &x, &mid.grad_x, -gamma)?;
        let y_next = ascend(&run, t, &y, &mid.grad_y, gamma)?;
        run.record(IterationRecord {
            t,
            gamma,
            x: std::mem::replace(&mut x, x_next),
            set: round_fractional(&y, c)?,
            y: Some(std::mem::replace(&mut y, y_next).into_inner()),
            x_hat: Some(x_hat),
            set_hat: Some(round_fractional(&y_hat, c)?),
            y_hat: Some(y_hat.into_inner()),
            evaluations: Vec::new(),
            wall_ns: 0,
        });
    }

    let bounded = obj.smoothness().gradient_bound.finite().is_some();
    let mut notes = vec![
        "certified under smoothness and bounded-gradient hypotheses, although the method is also listed as not needing bounded gradients".to_string(),
    ];
    if !bounded {
        notes.push("gradient bound unavailable: bounded-gradient hypothesis unverified".into());
    }
    if !step_ok {
        notes.push(format!("step exceeds stability bound {bound:e}"));
    }
    let guarantees = Guarantees {
        alpha: 0.5,
        bounded_gradient: bounded,
        step_condition: Some(step_ok),
        certified: bounded && step_ok,
        notes,
    };
    run.finish(guarantees)
}

fn gradients(
    run: &Run<'_>,
    t: usize,
    phase: u64,
    x: &[f64],
    y: &FractionalPoint,
) -> Result<ExtensionGradients> {
    let mode = match run.cfg.gradient_mode {
        GradientMode::Exact => GradientMode::Exact,
        GradientMode::Sampled(est) => GradientMode::Sampled(EstimatorConfig {
            seed: derive_seed(derive_seed(run.cfg.seed, est.seed), 2 * t as u64 + phase),
            ..est
        }),
    };
    extension_gradients(run.obj, x, y, &mode).map_err(|e| match e {
        Error::NonFinite(_) => run.abort(t, "extension gradient"),
        e => e,
    })
}

fn ascend(run: &Run<'_>, t: usize, y: &FractionalPoint, g: &[f64], gamma: f64) -> Result<FractionalPoint> {
    let next: Vec<f64> = y.as_slice().iter().zip(g).map(|(a, b)| a + gamma * b).collect();
    if next.iter().any(|v| !v.is_finite()) {
        return Err(run.abort(t, "fractional iterate"));
    }
    project_polytope(run.c, &next)
}
