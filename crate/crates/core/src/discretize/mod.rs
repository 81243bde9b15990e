//! Truncated mesh, P1 assembly of the λ-norm, discrete energy and the set `K`.

mod function;
mod mesh;
mod operator;
mod problem;
pub mod tridiag;

pub use function::DiscreteFunction;
pub use mesh::Mesh;
pub use operator::{assemble, assemble_with, DiscreteOperator};
pub use problem::{energy, gradient, project_k, DiscreteProblem};
pub use tridiag::SymTridiag;
