//! Two positive solutions of a penalized obstacle problem on the real line.
//!
//! The first solution is a constrained minimizer near the obstacle, the second
//! a mountain-pass critical point; both solve the variational inequality
//! `u ≥ φ`, `⟨I'(u), v − u⟩ ≥ 0` for the energy
//! `I(u) = ½‖u‖²_λ − ∫ G(x, u)`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod discretize;
pub mod error;
pub mod experiments;
pub mod model;
pub mod mountain_pass;
pub mod vi_solver;

pub use discretize::{DiscreteFunction, DiscreteOperator, DiscreteProblem, Mesh};
pub use error::{ModelError, ModelResult};
pub use model::{InstanceConfig, ProblemInstance, ValidationReport};
pub use vi_solver::{SolveReport, SolverError, SolverOptions};
