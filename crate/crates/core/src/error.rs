use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} is outside the domain of {sequence} (minimum {min})")]
    OutOfDomain {
        sequence: &'static str,
        index: i64,
        min: i64,
    },
    #[error("empty range: lo = {lo} > hi = {hi}")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("backward extension needs a unit coefficient on the oldest term")]
    NonInvertibleRecurrence,
    #[error("denominator series must have constant term 1")]
    NonUnitConstantTerm,
    #[error("shifted generating function needs shift m >= 2, got {0}")]
    ShiftTooSmall(i64),
    #[error("parameter x must be a positive finite real, got {0}")]
    InvalidParameter(f64),
    #[error("cubic roots did not converge: residual {residual:e} exceeds tolerance {tol:e}")]
    Convergence { residual: f64, tol: f64 },
    #[error("characteristic roots are (numerically) repeated; Binet denominator is singular")]
    SingularDenominator,
    #[error("truncation order {order} leaves a tail bound {bound:e} above tolerance {tol:e}")]
    TruncationTooShort { order: usize, bound: f64, tol: f64 },
    #[error("summation probe needs x outside {{-1, 0}}")]
    SingularProbe,
    #[error("summation sign is inconsistent: {0}")]
    SummationInconsistent(&'static str),
    #[error("cannot parse {0:?} as an exact rational")]
    InvalidRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
