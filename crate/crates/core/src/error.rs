use thiserror::Error;

/// Errors raised by the algebra, geometry and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SliceError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("units must differ")]
    UnitsMustDiffer,
    #[error("not an imaginary unit (re = {re:e}, |q| = {norm})")]
    NotImaginaryUnit { re: f64, norm: f64 },
    #[error("not an s-basis")]
    NotSBasis,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point outside domain")]
    OutsideDomain,
    #[error("step size must be positive, got {0}")]
    NonPositiveStep(f64),
    #[error("r s\u{0304} not on slice C_I")]
    NotOnSlice,
    #[error("branch point on path")]
    BranchPointOnPath,
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = SliceError> = std::result::Result<T, E>;
