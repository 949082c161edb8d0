use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("leading weight must be at least 1, got {0}")]
    NonPositiveLead(i64),
    #[error("not a key sequence: {0}")]
    InvalidKeySequence(String),
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("negative power {0}")]
    NegativePower(i64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("expected {expected} theta values, got {got}")]
    ThetaLengthMismatch { expected: usize, got: usize },
    #[error("theta values must be non-zero")]
    ZeroTheta,
    #[error("degree {0} is not an integer")]
    NonIntegralDegree(String),
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("cancellation needs a coefficient outside the rationals")]
    IrrationalCoefficientNeeded,
    #[error("inadmissible coordinate change: {0}")]
    InadmissibleChange(String),
    #[error("key sequence is not primitive")]
    NonPrimitive,
    #[error("key sequence is not algebraic")]
    NotAlgebraic,
    #[error("key sequence is not in normal form (clause {0})")]
    NotNormalForm(String),
    #[error("key sequence is not essential")]
    NotEssential,
    #[error("not a delta-sequence: {0}")]
    NotDeltaSequence(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("correction at exponent {0} is not rational")]
    IrrationalCorrection(String),
    #[error("cannot normalize: {0}")]
    NotNormalizable(String),
    #[error("bounds too large: {0}")]
    BoundsTooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPositiveLead(_) => "NonPositiveLead",
            Error::InvalidKeySequence(_) => "InvalidKeySequence",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NegativePower(_) => "NegativePower",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ThetaLengthMismatch { .. } => "ThetaLengthMismatch",
            Error::ZeroTheta => "ZeroTheta",
            Error::NonIntegralDegree(_) => "NonIntegralDegree",
            Error::InvalidSeries(_) => "InvalidSeries",
            Error::IrrationalCoefficientNeeded => "IrrationalCoefficientNeeded",
            Error::InadmissibleChange(_) => "InadmissibleChange",
            Error::NonPrimitive => "NonPrimitive",
            Error::NotAlgebraic => "NotAlgebraic",
            Error::NotNormalForm(_) => "NotNormalForm",
            Error::NotEssential => "NotEssential",
            Error::NotDeltaSequence(_) => "NotDeltaSequence",
            Error::InconsistentInput(_) => "InconsistentInput",
            Error::IrrationalCorrection(_) => "IrrationalCorrection",
            Error::NotNormalizable(_) => "NotNormalizable",
            Error::BoundsTooLarge(_) => "BoundsTooLarge",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
