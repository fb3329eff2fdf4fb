use thiserror::Error;

/// Errors raised by the numeric kernels and the normal-form pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("cannot take an n-th root of zero")]
    ZeroRadicand,

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("constant term of the series is not invertible")]
    SingularConstantTerm,

    #[error("series truncated at order {order}, but order {required} is required")]
    OrderTooSmall { order: usize, required: usize },

    #[error("constant term is not regular nilpotent")]
    NotRegularNilpotent,

    #[error("malformed gauge transformation: {0}")]
    InvalidGauge(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("leading entry b_1 vanishes; the eigenvalues are not totally ramified")]
    ZeroLeadingEntry,

    #[error("slope for coefficient a_{index} vanished at working precision")]
    DegenerateSlope { index: usize },

    #[error("characteristic polynomial is not Eisenstein in zeta")]
    NotEisenstein,

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("all sample errors sit at the noise floor; expansion is exact at working precision")]
    DegenerateFit,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SingularMatrix => "SingularMatrix",
            Error::ZeroRadicand => "ZeroRadicand",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::NotMonic => "NotMonic",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::SingularConstantTerm => "SingularConstantTerm",
            Error::OrderTooSmall { .. } => "OrderTooSmall",
            Error::NotRegularNilpotent => "NotRegularNilpotent",
            Error::InvalidGauge(_) => "InvalidGauge",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::ZeroLeadingEntry => "ZeroLeadingEntry",
            Error::DegenerateSlope { .. } => "DegenerateSlope",
            Error::NotEisenstein => "NotEisenstein",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::DegenerateFit => "DegenerateFit",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
