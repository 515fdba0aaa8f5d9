use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable index {index} out of range for {num_vars} variables")]
    VarIndex { index: usize, num_vars: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree {got} is below the required minimum {min}")]
    DegreeTooLow { got: u32, min: u32 },
    #[error("the zero point has no projective meaning")]
    ZeroPoint,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial is not a weight vector for the given group element")]
    NotWeightVector,
    #[error("point does not lie on the hypersurface")]
    NotOnHypersurface,
    #[error("point is a singular point of the hypersurface")]
    SingularPoint,
    #[error("invalid Betti vector: {0}")]
    Betti(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True when the error signals a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
