use super::lcp::solve_obstacle_lcp;
use super::SolverError;
use crate::discretize::DiscreteProblem;

/// Contact classification gap relative to the obstacle amplitude.
pub const GAP_REL: f64 = 1e-10;

pub fn gap_tol(p: &DiscreteProblem) -> f64 {
    GAP_REL * p.inst.obstacle.amplitude().abs().max(f64::MIN_POSITIVE)
}

fn check_feasible(p: &DiscreteProblem, u: &[f64]) -> Result<(), SolverError> {
    let n = p.n();
    let bad = (1..n - 1).find(|&i| u[i] < p.lower[i] - 1e-14 * (1.0 + p.lower[i].abs()));
    match bad {
        Some(i) => Err(SolverError::Infeasible {
            node: i,
            value: u[i],
            phi: p.lower[i],
        }),
        None => Ok(()),
    }
}

/// Interior nodes in contact with the obstacle.
pub fn active_set(p: &DiscreteProblem, u: &[f64]) -> Vec<usize> {
    let gap = gap_tol(p);
    (1..p.n() - 1).filter(|&i| u[i] - p.lower[i] <= gap).collect()
}

/// Discrete KKT residual: `|r_i|` off contact, `max(0, −r_i)` on contact, with
/// `r = A_λu − diag(w)g(x, u)`.
pub fn comp_residual(p: &DiscreteProblem, u: &[f64]) -> Result<f64, SolverError> {
    check_feasible(p, u)?;
    let r = p.gradient(u);
    Ok(comp_residual_from(p, u, &r))
}

pub(crate) fn comp_residual_from(p: &DiscreteProblem, u: &[f64], r: &[f64]) -> f64 {
    let gap = gap_tol(p);
    (1..p.n() - 1)
        .map(|i| {
            if u[i] - p.lower[i] > gap {
                r[i].abs()
            } else {
                (-r[i]).max(0.0)
            }
        })
        .fold(0.0, f64::max)
}

/// `v = argmin_{v ∈ K} ⟨d, v − u⟩ + ‖v − u‖²_λ / (2τ)`: the projected step in
/// the λ-metric along the direction `d`.
pub fn projected_step(p: &DiscreteProblem, u: &[f64], d: &[f64], tau: f64) -> Result<Vec<f64>, SolverError> {
    let mut b = p.op.apply(u);
    for (bi, di) in b.iter_mut().zip(d) {
        *bi -= tau * di;
    }
    solve_obstacle_lcp(&p.op.matrix, &p.lower, &b, u)
}

/// `‖u − P_K^λ(u − A_λ⁻¹ I'(u))‖_λ`, zero exactly at solutions of the discrete VI.
pub fn stationarity(p: &DiscreteProblem, u: &[f64]) -> Result<f64, SolverError> {
    let r = p.gradient(u);
    stationarity_from(p, u, &r)
}

pub(crate) fn stationarity_from(p: &DiscreteProblem, u: &[f64], r: &[f64]) -> Result<f64, SolverError> {
    let v = projected_step(p, u, r, 1.0)?;
    let diff: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a - b).collect();
    Ok(p.norm(&diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ProblemInstance;

    #[test]
    fn obstacle_itself_is_not_a_solution() {
        let p = DiscreteProblem::new(&ProblemInstance::default_instance().with_mesh_nodes(401)).unwrap();
        let u = p.phi_plus();
        assert!(comp_residual(&p, &u).unwrap() > 1e-6);
        assert!(stationarity(&p, &u).unwrap() > 1e-6);
    }

    #[test]
    fn infeasible_point_rejected() {
        let p = DiscreteProblem::new(&ProblemInstance::default_instance().with_mesh_nodes(401)).unwrap();
        let u = vec![0.0; p.n()];
        assert!(matches!(comp_residual(&p, &u), Err(SolverError::Infeasible { .. })));
    }
}
