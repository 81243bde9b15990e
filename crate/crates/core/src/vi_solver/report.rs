use serde::Serialize;

use super::residual::{active_set, comp_residual_from, stationarity_from};
use super::SolverError;
use crate::discretize::{DiscreteFunction, DiscreteProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ProjectedGradient,
    SemismoothNewton,
    Oracle,
}

/// A discrete solution with its energy and diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    #[serde(skip)]
    pub solution: DiscreteFunction,
    pub source: Source,
    pub lambda: f64,
    pub energy: f64,
    pub lambda_norm: f64,
    pub comp_residual: f64,
    pub stationarity: f64,
    pub active_set: Vec<usize>,
    pub iterations: usize,
    pub converged: bool,
    /// Largest value on `Ω^c`.
    pub localization_max: f64,
    /// `λ Σ w_i V(x_i) u_i²`
    pub concentration: f64,
    pub linf_off_o: f64,
    pub min_value: f64,
    /// `∫_{|x|>L/2} (|u'|² + u²)`
    pub boundary_mass: f64,
    /// `4‖φ₊‖²_λ`
    pub apriori_bound: f64,
}

impl SolveReport {
    pub fn build(
        p: &DiscreteProblem,
        u: Vec<f64>,
        source: Source,
        iterations: usize,
        converged: bool,
    ) -> Result<Self, SolverError> {
        let r = p.gradient(&u);
        let comp = comp_residual_from(p, &u, &r);
        let stat = stationarity_from(p, &u, &r)?;
        let phi_plus = p.phi_plus();
        Ok(Self {
            source,
            lambda: p.lambda(),
            energy: p.energy(&u),
            lambda_norm: p.norm(&u),
            comp_residual: comp,
            stationarity: stat,
            active_set: active_set(p, &u),
            iterations,
            converged,
            localization_max: p.localization_max(&u),
            concentration: p.concentration(&u),
            linf_off_o: p.linf_off_o(&u),
            min_value: u.iter().cloned().fold(f64::INFINITY, f64::min),
            boundary_mass: p.boundary_mass(&u),
            apriori_bound: 4.0 * p.op.norm_sq(&phi_plus),
            solution: p.function(u),
        })
    }

    pub fn values(&self) -> &[f64] {
        self.solution.values()
    }
}

/// Relative `L²` distance threshold for two solutions to count as distinct.
pub const DISTINCT_L2: f64 = 1e-3;
/// Energy gap threshold for two solutions to count as distinct.
pub const DISTINCT_ENERGY: f64 = 1e-8;

/// `‖u − w‖_{L²} / max(‖u‖_{L²}, ‖w‖_{L²})` with lumped quadrature.
pub fn relative_l2_distance(p: &DiscreteProblem, u: &[f64], w: &[f64]) -> f64 {
    let wts = &p.op.weights;
    let l2 = |f: &dyn Fn(usize) -> f64| (0..u.len()).map(|i| wts[i] * f(i) * f(i)).sum::<f64>().sqrt();
    let d = l2(&|i| u[i] - w[i]);
    let s = l2(&|i| u[i]).max(l2(&|i| w[i]));
    if s > 0.0 {
        d / s
    } else {
        0.0
    }
}

/// Distinctness of two solutions: relative `L²` distance and energy gap both above threshold.
pub fn are_distinct(p: &DiscreteProblem, u: &SolveReport, w: &SolveReport) -> bool {
    relative_l2_distance(p, u.values(), w.values()) > DISTINCT_L2 && (u.energy - w.energy).abs() > DISTINCT_ENERGY
}
