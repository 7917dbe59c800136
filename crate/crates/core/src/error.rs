use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("degree bound {bound} too small: numerator has not stabilized to zero")]
    InsufficientDegreeBound { bound: usize },
    #[error("degree bound {bound} too small: quotient dimensions have not stabilized")]
    NotStabilized { bound: usize },
    #[error("result is not a polynomial; denominator contains forms {factors:?}")]
    NonPolynomial { factors: Vec<usize> },
    #[error("{0} is not a homogeneous quasi-invariant")]
    NotQuasiInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
