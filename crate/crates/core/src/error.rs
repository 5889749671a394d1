use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("circuit needs {needed} qubits, cap is {cap}")]
    QubitCap { needed: usize, cap: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("gate {support:?} not found in layer {layer}")]
    GateNotFound { layer: usize, support: Vec<usize> },

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("eigensolver did not converge after {0} iterations")]
    NotConverged(usize),

    #[error("{0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
