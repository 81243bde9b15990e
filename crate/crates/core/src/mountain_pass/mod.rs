//! Second solution by a constrained mountain-pass iteration over paths in `K`.

mod deform;
mod endpoint;
mod path;
mod sigma;

use thiserror::Error;

use crate::error::ModelError;
use crate::vi_solver::SolverError;

pub use deform::{deform, mountain_pass, MountainPassOptions, MountainPassReport, TraceRow};
pub use endpoint::{build_endpoint, Endpoint, MAX_DOUBLINGS};
pub use path::{initial_path, MountainPath};
pub use sigma::{sigma_bound, sigma_bound_on_grid, SIGMA_GRID};

#[derive(Debug, Error)]
pub enum MountainPassError {
    #[error("no endpoint with energy below I(u) - 1 up to t = {t_max}")]
    EndpointNotFound { t_max: f64 },
    #[error("path peak {peak} fell below {floor} at sweep {sweep}; the saddle was lost")]
    PathCollapse { peak: f64, floor: f64, sweep: usize },
    #[error("peak energy stalled at sweep {sweep} with residual {residual:e}")]
    StallDetected { sweep: usize, residual: f64 },
    #[error("no convergence after {} sweeps (residual {:e})", report.sweeps, report.solve.comp_residual)]
    MaxIterExceeded { report: Box<MountainPassReport> },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
