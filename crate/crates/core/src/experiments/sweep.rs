use std::sync::Arc;

use rayon::prelude::*;

use super::config::SweepConfig;
use super::verdict::{LambdaRecord, TheoremVerdict};
use crate::discretize::{DiscreteProblem, Mesh};
use crate::error::{ModelError, ModelResult};
use crate::model::ProblemInstance;
use crate::mountain_pass::{mountain_pass, MountainPassError, MountainPassOptions, MountainPassReport};
use crate::vi_solver::{solve_limit_problem, solve_min, LimitSolution, SolveReport, SolverError, SolverOptions};

/// Both solves at one `λ`. A failed solve keeps its best iterate when one exists.
#[derive(Clone, Debug)]
pub struct LambdaOutcome {
    pub lambda: f64,
    pub u: Option<SolveReport>,
    pub u_error: Option<String>,
    pub w: Option<MountainPassReport>,
    pub w_error: Option<String>,
    pub dist_limit_u: f64,
}

impl LambdaOutcome {
    pub fn converged_u(&self) -> bool {
        self.u_error.is_none() && self.u.as_ref().is_some_and(|r| r.converged)
    }

    pub fn converged_w(&self) -> bool {
        self.w_error.is_none() && self.w.as_ref().is_some_and(|r| r.solve.converged && r.distinct)
    }

    pub fn converged(&self) -> bool {
        self.converged_u() && self.converged_w()
    }
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub instance: ProblemInstance,
    pub limit: Option<LimitSolution>,
    pub limit_error: Option<String>,
    pub outcomes: Vec<LambdaOutcome>,
    pub verdict: TheoremVerdict,
}

impl SweepResult {
    pub fn all_converged(&self) -> bool {
        self.outcomes.iter().all(LambdaOutcome::converged)
    }
}

/// Solves for `u_λ` and then runs the mountain pass from it.
pub fn solve_lambda(
    p: &DiscreteProblem,
    solver: &SolverOptions,
    mp: &MountainPassOptions,
    limit: Option<&LimitSolution>,
) -> LambdaOutcome {
    let (u, u_error) = match solve_min(p, solver) {
        Ok(r) => (Some(r), None),
        Err(e) => (e.report().cloned(), Some(e.to_string())),
    };
    let (w, w_error) = match (&u, &u_error) {
        (Some(r), None) => match mountain_pass(p, r, solver, mp) {
            Ok(w) => (Some(w), None),
            Err(MountainPassError::MaxIterExceeded { report }) => {
                let msg = MountainPassError::MaxIterExceeded { report: report.clone() }.to_string();
                (Some(*report), Some(msg))
            }
            Err(e) => (None, Some(e.to_string())),
        },
        _ => (None, Some("skipped: no first solution".into())),
    };
    let dist_limit_u = match (&u, limit) {
        (Some(r), Some(l)) => l.distance(r.values()),
        _ => f64::NAN,
    };
    LambdaOutcome {
        lambda: p.lambda(),
        u,
        u_error,
        w,
        w_error,
        dist_limit_u,
    }
}

/// Runs every `λ` of the sweep on a shared mesh with `config.workers` threads.
///
/// Failures at one `λ` are recorded in its outcome; only setup errors abort.
pub fn run_sweep(config: &SweepConfig) -> ModelResult<SweepResult> {
    config.validate()?;
    let inst = config.instance.build()?;
    let mesh = Arc::new(Mesh::for_instance(&inst)?);
    let base = DiscreteProblem::on_mesh(&inst, mesh.clone())?;
    let (limit, limit_error) = if config.lambdas.is_empty() {
        (None, None)
    } else {
        match solve_limit_problem(&base, &config.solver) {
            Ok(l) => (Some(l), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| ModelError::InvalidParameter {
            name: "sweep.workers",
            reason: e.to_string(),
        })?;
    let outcomes: Vec<LambdaOutcome> = pool.install(|| {
        config
            .lambdas
            .par_iter()
            .map(
                |&lambda| match DiscreteProblem::on_mesh(&inst.with_lambda(lambda), mesh.clone()) {
                    Ok(p) => solve_lambda(&p, &config.solver, &config.mountain_pass, limit.as_ref()),
                    Err(e) => LambdaOutcome {
                        lambda,
                        u: None,
                        u_error: Some(SolverError::from(e).to_string()),
                        w: None,
                        w_error: None,
                        dist_limit_u: f64::NAN,
                    },
                },
            )
            .collect()
    });
    let a = inst.threshold();
    let rho = inst.rho();
    let records = outcomes.iter().map(|o| LambdaRecord::from_outcome(o, a, rho)).collect();
    let verdict = TheoremVerdict::new(
        records,
        limit.as_ref().map(|l| l.report.energy),
        limit.as_ref().is_some_and(|l| l.report.converged),
    );
    Ok(SweepResult {
        instance: inst,
        limit,
        limit_error,
        outcomes,
        verdict,
    })
}
