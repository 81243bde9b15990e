use super::options::SolverOptions;
use super::projected::check_nonnegative;
use super::report::{SolveReport, Source};
use super::residual::comp_residual_from;
use super::SolverError;
use crate::discretize::tridiag::solve_general;
use crate::discretize::DiscreteProblem;

/// `½ Σ min(u_i − φ_i, r_i / A_ii)²` over interior nodes.
fn merit(p: &DiscreteProblem, u: &[f64], r: &[f64]) -> f64 {
    let d = &p.op.matrix.diag;
    (1..p.n() - 1)
        .map(|i| {
            let phi = (u[i] - p.lower[i]).min(r[i] / d[i]);
            phi * phi
        })
        .sum::<f64>()
        * 0.5
}

/// Primal-dual active set Newton iteration on
/// `min(u − φ, (A_λu − diag(w)g(u)) / diag(A_λ)) = 0`, damped on the squared
/// residual with projected trial points.
///
/// Converges to whichever solution of the discrete VI attracts `u0`, minimizer or saddle.
pub fn semismooth_newton(p: &DiscreteProblem, u0: &[f64], options: &SolverOptions) -> Result<SolveReport, SolverError> {
    options.validate()?;
    let n = p.n();
    let last = n - 1;
    let a = &p.op.matrix;
    let mut u = p.project(u0);
    let mut sub = vec![0.0; n - 1];
    let mut diag = vec![0.0; n];
    let mut sup = vec![0.0; n - 1];
    let mut active = vec![false; n];
    for it in 0..options.newton_max_iter {
        let r = p.gradient(&u);
        if comp_residual_from(p, &u, &r) <= options.tol {
            let report = SolveReport::build(p, u, Source::SemismoothNewton, it, true)?;
            return check_nonnegative(report);
        }
        let jw = p.nonlinear_jacobian(&u);
        let mut delta = vec![0.0; n];
        for i in 0..n {
            active[i] = i == 0 || i == last || r[i] > a.diag[i] * (u[i] - p.lower[i]);
            if active[i] {
                diag[i] = 1.0;
                delta[i] = p.lower[i] - u[i];
            } else {
                diag[i] = a.diag[i] - jw[i];
                delta[i] = -r[i];
            }
        }
        for i in 0..n - 1 {
            sup[i] = if active[i] { 0.0 } else { a.off[i] };
            sub[i] = if active[i + 1] { 0.0 } else { a.off[i] };
        }
        solve_general(&sub, &diag, &sup, &mut delta).map_err(|node| SolverError::JacobianSingular { node })?;

        let m0 = merit(p, &u, &r);
        let mut alpha = 1.0;
        let next = loop {
            let v: Vec<f64> = (0..n).map(|i| (u[i] + alpha * delta[i]).max(p.lower[i])).collect();
            let rv = p.gradient(&v);
            if merit(p, &v, &rv) <= (1.0 - 1e-4 * alpha) * m0 {
                break Some(v);
            }
            alpha *= 0.5;
            if alpha < 1e-8 {
                break None;
            }
        };
        match next {
            Some(v) => u = v,
            None => return Err(SolverError::NoDescent { merit: m0 }),
        }
    }
    let report = SolveReport::build(p, u, Source::SemismoothNewton, options.newton_max_iter, false)?;
    if report.comp_residual <= options.tol {
        return check_nonnegative(SolveReport {
            converged: true,
            ..report
        });
    }
    Err(SolverError::MaxIterExceeded {
        report: Box::new(report),
    })
}
