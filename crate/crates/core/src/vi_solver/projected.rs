use super::newton::semismooth_newton;
use super::options::{Method, SolverOptions};
use super::report::{SolveReport, Source};
use super::residual::{comp_residual_from, projected_step};
use super::SolverError;
use crate::discretize::DiscreteProblem;

/// Lowest nodal value accepted as nonnegative.
pub const NONNEGATIVITY_TOL: f64 = -1e-10;

/// Energy roundoff allowance in the sufficient-decrease test.
pub(crate) fn energy_slack(e: f64) -> f64 {
    1e-14 * (1.0 + e.abs())
}

/// Projected gradient descent in the λ-metric with Armijo backtracking.
///
/// Each step solves a linear obstacle problem, so every iterate lies in `K`.
pub fn projected_gradient(
    p: &DiscreteProblem,
    u0: &[f64],
    options: &SolverOptions,
) -> Result<SolveReport, SolverError> {
    options.validate()?;
    let arm = options.armijo;
    let mut u = p.project(u0);
    let mut e = p.energy(&u);
    for it in 0..options.max_iter {
        let r = p.gradient(&u);
        let full = projected_step(p, &u, &r, 1.0)?;
        let diff: Vec<f64> = u.iter().zip(&full).map(|(a, b)| a - b).collect();
        let stat = p.norm(&diff);
        if stat <= options.tol && comp_residual_from(p, &u, &r) <= options.tol {
            return SolveReport::build(p, u, Source::ProjectedGradient, it, true);
        }
        let mut tau = arm.tau0;
        let mut v = if tau == 1.0 {
            full
        } else {
            projected_step(p, &u, &r, tau)?
        };
        let accepted = loop {
            let ev = p.energy(&v);
            let step: Vec<f64> = v.iter().zip(&u).map(|(a, b)| a - b).collect();
            if ev <= e - arm.sigma / tau * p.op.norm_sq(&step) + energy_slack(e) {
                break Some(ev);
            }
            tau *= arm.beta;
            if tau < arm.tau_min {
                break None;
            }
            v = projected_step(p, &u, &r, tau)?;
        };
        match accepted {
            Some(ev) => {
                u = v;
                e = ev;
            }
            None => {
                let report = SolveReport::build(p, u, Source::ProjectedGradient, it, false)?;
                return Err(SolverError::MaxIterExceeded {
                    report: Box::new(report),
                });
            }
        }
    }
    let report = SolveReport::build(p, u, Source::ProjectedGradient, options.max_iter, false)?;
    if report.comp_residual <= options.tol && report.stationarity <= options.tol {
        return Ok(SolveReport {
            converged: true,
            ..report
        });
    }
    Err(SolverError::MaxIterExceeded {
        report: Box::new(report),
    })
}

/// Minimizer of the discrete energy over `K` started from `project_K(0)`,
/// without the a posteriori ball check.
pub fn minimize(p: &DiscreteProblem, options: &SolverOptions) -> Result<SolveReport, SolverError> {
    let start = p.project(&vec![0.0; p.n()]);
    let report = match options.method {
        Method::ProjectedGradient => projected_gradient(p, &start, options)?,
        Method::SemismoothNewton => match semismooth_newton(p, &start, options) {
            Ok(r) => r,
            Err(SolverError::NoDescent { .. }) | Err(SolverError::JacobianSingular { .. }) => {
                projected_gradient(p, &start, options)?
            }
            Err(e) => return Err(e),
        },
    };
    check_nonnegative(report)
}

/// First solution: the minimizer of the energy over `K`, checked to lie inside
/// the ball of radius `r`.
pub fn solve_min(p: &DiscreteProblem, options: &SolverOptions) -> Result<SolveReport, SolverError> {
    let report = minimize(p, options)?;
    let radius = p.inst.ball_radius;
    if report.lambda_norm >= radius {
        return Err(SolverError::BallViolation {
            norm: report.lambda_norm,
            radius,
            report: Box::new(report),
        });
    }
    Ok(report)
}

pub(crate) fn check_nonnegative(report: SolveReport) -> Result<SolveReport, SolverError> {
    if report.min_value < NONNEGATIVITY_TOL {
        return Err(SolverError::Negative {
            min: report.min_value,
            report: Box::new(report),
        });
    }
    Ok(report)
}
