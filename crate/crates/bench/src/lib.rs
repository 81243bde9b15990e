//! Fixtures shared by the benchmarks.

use obstacle_core::vi_solver::{solve_min, SolveReport};
use obstacle_core::{DiscreteProblem, ProblemInstance, SolverOptions};

/// Default instance at `lambda` on `n` mesh nodes.
pub fn default_problem(n: usize, lambda: f64) -> DiscreteProblem {
    let inst = ProblemInstance::default_instance()
        .with_lambda(lambda)
        .with_mesh_nodes(n);
    DiscreteProblem::new(&inst).expect("default instance discretizes")
}

pub fn first_solution(p: &DiscreteProblem) -> SolveReport {
    solve_min(p, &SolverOptions::default()).expect("default instance converges")
}
