//! Convex-submodular minimax optimization.
//!
//! Solves `min_{x∈X} max_{S∈I} f(x, S)` where `f` is convex in the continuous
//! point `x` and monotone submodular in the set `S`, with `I` a uniform or
//! partition matroid.

// `!(v > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod continuous;
pub mod discrete;
pub mod error;
pub mod evaluation;
pub mod experiment;
pub mod ground;
pub mod matroid;
pub mod multilinear;
pub mod objective;
pub mod region;
pub mod solvers;
pub mod vector;

pub use error::{Error, Result};
pub use ground::{ElementId, SubsetSelection};
pub use matroid::MatroidConstraint;
pub use objective::{Objective, SetFunction};
pub use region::FeasibleRegion;
pub use vector::Vector;
