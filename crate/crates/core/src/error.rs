use thiserror::Error;

/// Errors reported by curve validation and the computation paths.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The characteristic is not an odd prime > 3 (or exceeds the supported range).
    #[error("invalid field: p = {p} is not a prime greater than 3 below 2^31")]
    InvalidField { p: u64 },
    /// Multiplicative inverse of zero requested.
    #[error("division by zero in F_p")]
    DivisionByZero,
    /// An operation that requires a nonzero polynomial was handed the zero polynomial.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    /// The defining quartic drops degree after reduction mod p.
    #[error("degenerate curve: f must have degree exactly 4 mod {p}")]
    DegenerateCurve { p: u64 },
    /// The defining quartic has a repeated root.
    #[error("singular curve: f has a repeated root mod {p}")]
    SingularCurve { p: u64 },
    /// The bivariate expansion was requested above the configured prime cutoff.
    #[error("oracle bound exceeded: p = {p} is above the cutoff {bound}")]
    OracleBoundExceeded { p: u64, bound: u64 },
    /// Rejection sampling failed to find a valid quartic within the draw budget.
    #[error("curve generation failed for p = {p} after {attempts} draws")]
    GenerationFailed { p: u64, attempts: u64 },
}

impl Error {
    /// Stable identifier used in machine-parsable CLI error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidField { .. } => "InvalidField",
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DegenerateCurve { .. } => "DegenerateCurve",
            Error::SingularCurve { .. } => "SingularCurve",
            Error::OracleBoundExceeded { .. } => "OracleBoundExceeded",
            Error::GenerationFailed { .. } => "GenerationFailed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
