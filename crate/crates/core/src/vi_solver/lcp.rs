//! Linear obstacle problem `min ½vᵀAv − bᵀv` over `v ≥ lower`, solved by a
//! primal-dual active set iteration on the tridiagonal system.
//!
//! The first and last rows are Dirichlet rows fixed at `lower`.

use super::SolverError;
use crate::discretize::tridiag::{solve_general, SymTridiag};

const MAX_SWEEPS: usize = 500;

pub fn solve_obstacle_lcp(a: &SymTridiag, lower: &[f64], b: &[f64], guess: &[f64]) -> Result<Vec<f64>, SolverError> {
    let n = a.n();
    let last = n - 1;
    let mut active: Vec<bool> = (0..n).map(|i| i == 0 || i == last || guess[i] <= lower[i]).collect();
    let b_scale = 1.0 + b.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mu_tol = 1e-13 * b_scale;

    let mut sub = vec![0.0; n - 1];
    let mut diag = vec![0.0; n];
    let mut sup = vec![0.0; n - 1];
    let mut v = vec![0.0; n];
    let mut mu = vec![0.0; n];
    for _ in 0..MAX_SWEEPS {
        for i in 0..n {
            if active[i] {
                diag[i] = 1.0;
                v[i] = lower[i];
            } else {
                diag[i] = a.diag[i];
                v[i] = b[i];
            }
        }
        for i in 0..n - 1 {
            sup[i] = if active[i] { 0.0 } else { a.off[i] };
            sub[i] = if active[i + 1] { 0.0 } else { a.off[i] };
        }
        solve_general(&sub, &diag, &sup, &mut v).map_err(|node| SolverError::JacobianSingular { node })?;

        a.mul_into(&v, &mut mu);
        for i in 0..n {
            mu[i] -= b[i];
        }
        let v_tol = |i: usize| 1e-14 * (1.0 + lower[i].abs());
        let kkt = (1..last).all(|i| {
            if active[i] {
                mu[i] >= -mu_tol
            } else {
                v[i] >= lower[i] - v_tol(i)
            }
        });
        let mut changed = false;
        for i in 1..last {
            let next = mu[i] > a.diag[i] * (v[i] - lower[i]);
            changed |= next != active[i];
            active[i] = next;
        }
        if kkt || !changed {
            for i in 0..n {
                v[i] = v[i].max(lower[i]);
            }
            return Ok(v);
        }
    }
    Err(SolverError::InnerSolve { sweeps: MAX_SWEEPS })
}
