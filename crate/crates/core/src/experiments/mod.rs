//! Parameter sweeps over `λ`, the instance checks run before them, and their outputs.

mod check;
mod config;
mod output;
pub mod plots;
mod sweep;
mod verdict;

pub use check::{check_instance, HYPOTHESIS_SAMPLES};
pub use config::{ConfigDocument, SweepConfig, SweepSection, DEFAULT_LAMBDAS};
pub use output::{lambda_dir_name, summary_csv, write_lambda_dir, write_sweep, SUMMARY_CSV, SVG_FILES, VERDICT_JSON};
pub use sweep::{run_sweep, solve_lambda, LambdaOutcome, SweepResult};
pub use verdict::{LambdaBracket, LambdaRecord, TheoremVerdict, SUMMARY_HEADER};
