//! Error type shared by all operations in this crate.

use thiserror::Error;

/// Errors produced when validating inputs or running algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The point set does not contain the origin.
    #[error("point set must contain the origin (0, 0)")]
    MissingOrigin,

    /// Two points in the input coincide.
    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),

    /// A point lies outside the closed unit square.
    #[error("point at index {0} lies outside [0, 1]^2")]
    OutOfBounds(usize),

    /// The instance is larger than the configured cap for an exhaustive
    /// algorithm.
    #[error("instance has {n} points, exceeding the cap of {cap}")]
    InstanceTooLarge { n: usize, cap: usize },

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested shape parameters admit no valid construction.
    #[error("infeasible construction: {0}")]
    Infeasible(String),

    /// The point set violates a general-position assumption.
    #[error("general position violated: {0}")]
    GeneralPosition(String),

    /// An anchor lies in the interior of an obstacle rectangle.
    #[error("anchor lies inside an obstacle")]
    AnchorInsideObstacle,

    /// A permutation is not a valid ordering of the point set.
    #[error("invalid order: {0}")]
    InvalidOrder(String),
}

/// Convenient result alias using [`Error`].
pub type Result<T> = std::result::Result<T, Error>;
