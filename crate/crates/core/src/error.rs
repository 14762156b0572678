use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input exceeds an enumeration guard.
    #[error("size limit exceeded: {0}")]
    Size(String),
    /// Operands have incompatible dimensions.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// Barycentric weights do not sum to one.
    #[error("affine constraint violated: weights sum to {0}, expected 1")]
    AffineConstraint(String),
    /// Weights are not a probability vector.
    #[error("invalid probability weights: {0}")]
    Probability(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A value violates a type invariant.
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("search exhausted: {0}")]
    Search(String),
    #[error("could not parse rational {0:?}")]
    Parse(String),
    /// A self-check failed. Always a bug.
    #[error("internal verification failure: {0}")]
    Internal(String),
}
