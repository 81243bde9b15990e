//! First solution (constrained minimizer), complementarity residual, enumeration oracle and the limit problem.

mod lcp;
mod limit;
mod newton;
mod options;
mod oracle;
mod projected;
mod report;
mod residual;

use thiserror::Error;

use crate::error::ModelError;

pub use lcp::solve_obstacle_lcp;
pub use limit::{solve_limit_problem, LimitSolution};
pub use newton::semismooth_newton;
pub use options::{Armijo, Method, SolverOptions};
pub use oracle::{oracle_enumerate, ORACLE_MAX_NODES};
pub use projected::{minimize, projected_gradient, solve_min, NONNEGATIVITY_TOL};
pub use report::{are_distinct, relative_l2_distance, SolveReport, Source, DISTINCT_ENERGY, DISTINCT_L2};
pub use residual::{active_set, comp_residual, gap_tol, projected_step, stationarity, GAP_REL};

pub(crate) use projected::energy_slack;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("no convergence after {} iterations (residual {:e})", report.iterations, report.comp_residual)]
    MaxIterExceeded { report: Box<SolveReport> },
    #[error("||u||_lambda = {norm} is not below the ball radius {radius}")]
    BallViolation {
        norm: f64,
        radius: f64,
        report: Box<SolveReport>,
    },
    #[error("solution dips to {min:e} below zero")]
    Negative { min: f64, report: Box<SolveReport> },
    #[error("singular Newton matrix at node {node}")]
    JacobianSingular { node: usize },
    #[error("no descent on the merit function (merit {merit:e})")]
    NoDescent { merit: f64 },
    #[error("u = {value} below the obstacle {phi} at node {node}")]
    Infeasible { node: usize, value: f64, phi: f64 },
    #[error("active set iteration did not settle in {sweeps} sweeps")]
    InnerSolve { sweeps: usize },
    #[error("solver options: {0}")]
    Options(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl SolverError {
    /// Best available iterate for errors that carry one.
    pub fn report(&self) -> Option<&SolveReport> {
        match self {
            Self::MaxIterExceeded { report } | Self::BallViolation { report, .. } | Self::Negative { report, .. } => {
                Some(report)
            }
            _ => None,
        }
    }
}
