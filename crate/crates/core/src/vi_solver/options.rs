use serde::{Deserialize, Serialize};

use super::SolverError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[default]
    ProjectedGradient,
    SemismoothNewton,
}

/// Backtracking parameters for the sufficient-decrease test
/// `I(v) ≤ I(u) − (sigma/τ)‖v − u‖²_λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Armijo {
    pub sigma: f64,
    pub beta: f64,
    pub tau0: f64,
    pub tau_min: f64,
}

impl Default for Armijo {
    fn default() -> Self {
        Self {
            sigma: 1e-4,
            beta: 0.5,
            tau0: 1.0,
            tau_min: 1e-10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    pub method: Method,
    /// Bound on both the stationarity measure and the complementarity residual.
    pub tol: f64,
    pub max_iter: usize,
    pub armijo: Armijo,
    /// Iteration cap of the Newton polish.
    pub newton_max_iter: usize,
    /// Relative slack on `‖u‖²_λ ≤ 4‖φ₊‖²`.
    pub apriori_slack: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            method: Method::ProjectedGradient,
            tol: 1e-10,
            max_iter: 500,
            armijo: Armijo::default(),
            newton_max_iter: 60,
            apriori_slack: 1e-6,
        }
    }
}

impl SolverOptions {
    pub fn newton() -> Self {
        Self {
            method: Method::SemismoothNewton,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |reason: String| Err(SolverError::Options(reason));
        if !(self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.max_iter == 0 || self.newton_max_iter == 0 {
            return bad("iteration caps must be at least 1".into());
        }
        let a = &self.armijo;
        if !(a.sigma > 0.0 && a.sigma < 1.0) || !(a.beta > 0.0 && a.beta < 1.0) {
            return bad("armijo sigma and beta must lie in (0, 1)".into());
        }
        if !(a.tau0 > 0.0) || !(a.tau_min > 0.0) || a.tau_min > a.tau0 {
            return bad("armijo steps need 0 < tau_min <= tau0".into());
        }
        Ok(())
    }
}
