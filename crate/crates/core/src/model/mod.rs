//! Continuous problem data, hypothesis checks and the penalized nonlinearity.

mod instance;
mod nonlinearity;
mod obstacle;
mod penalized;
mod potential;
mod validate;

pub use instance::{InstanceConfig, MeshConfig, PenalizationConfig, ProblemInstance, DEFAULT_MESH_NODES};
pub use nonlinearity::{MonotoneSpline, NonlinearityConfig, NonlinearityKind, NonlinearitySpec};
pub use obstacle::{ObstacleConfig, ObstacleKind, ObstacleSpec};
pub use penalized::{min_admissible_k, solve_threshold_a, PenalizedNonlinearity, THRESHOLD_TOL};
pub use potential::{PotentialConfig, PotentialKind, PotentialSpec};
pub use validate::{validate_hypotheses, CheckOutcome, ValidationReport, MARGIN_TOL};
