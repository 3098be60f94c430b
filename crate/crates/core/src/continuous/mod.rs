//! Projections, gradient steps, and the inner minimization over `x`.

pub mod inner;
pub mod projection;
pub mod step;

pub use inner::{minimize_from, minimize_over_x, InnerSolution, StopReason};
pub use projection::{project, project_capped_simplex};
pub use step::{gradient_step, StepSchedule};
