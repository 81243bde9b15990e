use super::options::SolverOptions;
use super::projected::minimize;
use super::report::SolveReport;
use super::SolverError;
use crate::discretize::{assemble_with, DiscreteOperator, DiscreteProblem};

/// Solution `ψ` of the λ-free obstacle problem on `O` with Dirichlet data on `∂O`.
#[derive(Clone, Debug)]
pub struct LimitSolution {
    pub report: SolveReport,
    /// `ψ` extended by zero to the full mesh.
    pub extended: Vec<f64>,
    h1: DiscreteOperator,
}

impl LimitSolution {
    /// `‖u − ψ‖_{H¹}` on the full mesh.
    pub fn distance(&self, u: &[f64]) -> f64 {
        let d: Vec<f64> = u.iter().zip(&self.extended).map(|(a, b)| a - b).collect();
        self.h1.norm(&d)
    }
}

pub fn solve_limit_problem(p: &DiscreteProblem, options: &SolverOptions) -> Result<LimitSolution, SolverError> {
    let pot = &p.inst.potential;
    let (mesh, offset) = p.mesh.sub_mesh(pot.o_left, pot.o_right)?;
    let sub = DiscreteProblem::on_mesh(&p.inst.with_lambda(0.0), mesh.into())?;
    let report = minimize(&sub, options)?;
    let mut extended = vec![0.0; p.n()];
    extended[offset..offset + sub.n()].copy_from_slice(report.values());
    let h1 = assemble_with(&p.mesh, 0.0, |_| 0.0)?;
    Ok(LimitSolution { report, extended, h1 })
}
