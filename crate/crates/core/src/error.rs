use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has a nonzero constant term; composition needs u(0) = v(0) = 0")]
    NonzeroConstantTerm,

    #[error("series has a zero constant term; no reciprocal")]
    ZeroConstantTerm,

    #[error("square root needs a positive constant term (got {0})")]
    NonPositiveConstant(f64),

    #[error("valuation {found} is smaller than the requested factor x^{requested}")]
    ValuationTooSmall { requested: usize, found: usize },

    #[error("coefficient of degree {requested} lies beyond the reliable order {reliable}")]
    BeyondReliableOrder { requested: usize, reliable: isize },

    #[error("{what} vanishes to the reliable order {order}")]
    ZeroToOrder { what: String, order: isize },

    #[error("invalid surface coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("closed-form tables only cover the (c x^(mp+q), x^m) and (c x^(mp), x^m) families")]
    GeneralCurve,

    #[error("curve is not of the (c(x) x^(2m), x^m) shape: {0}")]
    NotC2m(String),

    #[error("cannot decide {0} within the reliable order")]
    Indeterminate(String),

    #[error("invalid mesh request: {0}")]
    InvalidMesh(String),

    #[error("invalid sampling request: {0}")]
    Sampling(String),
}

pub type Result<T> = std::result::Result<T, Error>;
