use thiserror::Error;

/// Errors raised while building or validating a problem instance.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("f(t)/t never reaches 1/k = {target} on (0, {t_max}]")]
    NoBracket { target: f64, t_max: f64 },
    #[error("inadmissible parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("hypothesis {check} violated at {witness}: margin {margin:e}")]
    HypothesisViolated {
        check: String,
        witness: String,
        margin: f64,
    },
    #[error("mesh: {0}")]
    Mesh(String),
    #[error("cell {cell} has width {width:e}; assembly would be singular")]
    SingularAssembly { cell: usize, width: f64 },
    #[error("config: {0}")]
    Config(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type ModelResult<T> = Result<T, ModelError>;
