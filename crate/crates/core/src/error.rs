use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point too close to the origin (gauge norm {norm:e}) for {op}")]
    Singular { op: &'static str, norm: f64 },

    #[error("map word hits a singular point at position {position}: gauge norm {norm:e}")]
    SingularInWord { position: usize, norm: f64 },

    #[error("dilation factor must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{op}: argument {value} outside the domain")]
    JetDomain { op: &'static str, value: f64 },

    #[error("field evaluation failed in `{location}`: {source}")]
    FieldDomain {
        location: String,
        #[source]
        source: Box<Error>,
    },

    #[error("field value must be positive, got {0}")]
    NonPositiveField(f64),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("{0}")]
    OutOfRange(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}
