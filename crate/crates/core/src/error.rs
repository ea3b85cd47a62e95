use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}: the zero polynomial is not a valid input")]
    ZeroPolynomial(&'static str),
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("interval endpoint {0} is a root of the polynomial")]
    EndpointIsRoot(String),
    #[error("empty interval: lower bound must be strictly below upper bound")]
    EmptyInterval,
    #[error("rational function has a zero denominator")]
    ZeroDenominator,
    #[error("rational function has a zero numerator")]
    ZeroNumerator,
    #[error("degree must be even and at least 2, got {0}")]
    Degree(String),
    #[error("delta vanishes identically; the real-zero count is undefined")]
    DeltaIdenticallyZero,
    #[error("point does not lie on an even-parity segment")]
    NotOnEvenSegment,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown class label `{0}`")]
    UnknownLabel(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
