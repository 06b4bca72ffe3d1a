use thiserror::Error;

use crate::generator::Generator;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("metric is singular")]
    SingularMetric,
    #[error("metric is not symmetric")]
    NonSymmetricMetric,
    #[error("generator {0} is not covered by the relation set")]
    UnknownGenerator(Generator),
    #[error("no image assigned to generator {0}")]
    MissingImage(Generator),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("lambda^-1 residue in {0}")]
    LambdaResidue(String),
    #[error("degree cap {cap} exceeded (degree {degree})")]
    DegreeCap { cap: usize, degree: usize },
    #[error("resource limit: {0}")]
    Limit(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
