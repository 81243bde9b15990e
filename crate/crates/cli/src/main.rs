use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use obstacle_core::discretize::DiscreteProblem;
use obstacle_core::experiments::{
    check_instance, run_sweep, write_lambda_dir, write_sweep, ConfigDocument, LambdaOutcome,
};
use obstacle_core::mountain_pass::{mountain_pass, MountainPassError};
use obstacle_core::vi_solver::{oracle_enumerate, solve_min, SolverError};
use obstacle_core::{ModelError, ProblemInstance};
use serde_json::json;
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "obstacle",
    version,
    about = "Two positive solutions of a penalized obstacle problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the hypotheses and geometry of an instance.
    Validate {
        /// JSON instance file
        config: PathBuf,
    },
    /// Both solutions at a single lambda.
    Solve {
        /// JSON instance file
        config: PathBuf,
        #[arg(long)]
        lambda: f64,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Both solutions over the lambda sweep, with summary table and plots.
    Sweep {
        /// JSON instance file with an optional `sweep` block
        config: PathBuf,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; overrides `sweep.workers`
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Every KKT point on a coarse mesh by active-set enumeration.
    Oracle {
        /// JSON instance file
        config: PathBuf,
        /// Mesh nodes, at most 14
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Defaults to the config's lambda
        #[arg(long)]
        lambda: Option<f64>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    /// Bad configuration, failed hypothesis or a ball violation.
    #[error("{0}")]
    Invalid(String),
    /// Some solve did not converge; results were still written.
    #[error("{0}")]
    Partial(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Invalid(_) => 3,
            Self::Partial(_) => 2,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Io(_) | ModelError::Csv(_) => Self::Partial(e.to_string()),
            _ => Self::Invalid(e.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<ConfigDocument, CliError> {
    ConfigDocument::from_path(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn checked(inst: &ProblemInstance) -> Result<(), CliError> {
    let report = check_instance(inst);
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(CliError::Invalid(format!(
            "check '{}' failed (margin {:e}): {}",
            c.name,
            c.worst_margin,
            c.witness.as_deref().unwrap_or("")
        ))),
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    );
}

fn validate(config: &Path) -> Result<(), CliError> {
    let doc = load(config)?;
    let inst = doc.instance.build()?;
    let report = check_instance(&inst);
    print_json(&serde_json::to_value(&report).map_err(ModelError::from)?);
    checked(&inst)
}

fn solve(config: &Path, lambda: f64, out: &Path) -> Result<(), CliError> {
    let doc = load(config)?;
    doc.solver.validate().map_err(|e| CliError::Invalid(e.to_string()))?;
    let inst = doc.instance.build()?.with_lambda(lambda);
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(CliError::Invalid(format!("lambda must be positive, got {lambda}")));
    }
    checked(&inst)?;
    let p = DiscreteProblem::new(&inst)?;
    let mut outcome = LambdaOutcome {
        lambda,
        u: None,
        u_error: None,
        w: None,
        w_error: None,
        dist_limit_u: f64::NAN,
    };
    let mut failure = None;
    match solve_min(&p, &doc.solver) {
        Ok(r) => outcome.u = Some(r),
        Err(e) => {
            outcome.u = e.report().cloned();
            outcome.u_error = Some(e.to_string());
            failure = Some(match e {
                SolverError::BallViolation { .. } | SolverError::Negative { .. } => CliError::Invalid(e.to_string()),
                _ => CliError::Partial(e.to_string()),
            });
        }
    }
    if let (Some(u), None) = (&outcome.u, &failure) {
        match mountain_pass(&p, u, &doc.solver, &doc.mountain_pass) {
            Ok(w) => {
                if !w.distinct {
                    failure = Some(CliError::Partial(
                        "second solution is not distinct from the first".into(),
                    ));
                }
                outcome.w = Some(w);
            }
            Err(e) => {
                let msg = e.to_string();
                if let MountainPassError::MaxIterExceeded { report } = e {
                    outcome.w = Some(*report);
                }
                outcome.w_error = Some(msg.clone());
                failure = Some(CliError::Partial(msg));
            }
        }
    }
    write_lambda_dir(out, &outcome)?;
    print_json(&json!({
        "lambda": lambda,
        "I_u": outcome.u.as_ref().map(|r| r.energy),
        "I_w": outcome.w.as_ref().map(|r| r.c_lambda),
        "rho": inst.rho(),
        "converged_u": outcome.converged_u(),
        "converged_w": outcome.converged_w(),
        "out": out.display().to_string(),
    }));
    failure.map_or(Ok(()), Err)
}

fn sweep(config: &Path, out: &Path, workers: Option<usize>) -> Result<(), CliError> {
    let doc = load(config)?;
    let mut cfg = doc.sweep_config()?;
    if let Some(n) = workers {
        cfg.workers = n;
    }
    cfg.validate()?;
    doc.solver.validate().map_err(|e| CliError::Invalid(e.to_string()))?;
    if cfg.lambdas.is_empty() {
        return Ok(());
    }
    checked(&cfg.instance.build()?)?;
    let result = run_sweep(&cfg)?;
    write_sweep(out, &result)?;
    let v = &result.verdict;
    print_json(&json!({
        "out": out.display().to_string(),
        "all_converged": v.all_converged,
        "lambda_star_detected": v.lambda_star_detected,
        "lambda_star_bracket": v.lambda_star_bracket,
    }));
    if result.all_converged() {
        Ok(())
    } else {
        let failed: Vec<f64> = result
            .outcomes
            .iter()
            .filter(|o| !o.converged())
            .map(|o| o.lambda)
            .collect();
        Err(CliError::Partial(format!("no convergence at lambda = {failed:?}")))
    }
}

fn oracle(config: &Path, n: usize, lambda: Option<f64>) -> Result<(), CliError> {
    let doc = load(config)?;
    let mut inst = doc.instance.build()?.with_mesh_nodes(n);
    if let Some(l) = lambda {
        inst = inst.with_lambda(l);
    }
    let p = DiscreteProblem::new(&inst)?;
    let points = oracle_enumerate(&p).map_err(|e| CliError::Invalid(e.to_string()))?;
    let rows: Vec<serde_json::Value> = points
        .iter()
        .map(|r| {
            json!({
                "energy": r.energy,
                "comp_residual": r.comp_residual,
                "active_set": r.active_set,
                "lambda_norm": r.lambda_norm,
                "values": r.values(),
            })
        })
        .collect();
    print_json(&json!({
        "lambda": inst.lambda,
        "n": n,
        "rho": inst.rho(),
        "nodes": p.mesh.nodes(),
        "kkt_points": rows,
    }));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { config } => validate(config),
        Command::Solve { config, lambda, out } => solve(config, *lambda, out),
        Command::Sweep { config, out, workers } => sweep(config, out, *workers),
        Command::Oracle { config, n, lambda } => oracle(config, *n, *lambda),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("obstacle: {e}");
            ExitCode::from(e.code())
        }
    }
}
