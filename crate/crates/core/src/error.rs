//! Error taxonomy for the whole library.

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// The eigenvalue triple at a chart point is too close to the boundary
    /// of the nondegenerate region (a vanishing or colliding eigenvalue).
    #[error("degenerate state: {0}")]
    DegenerateState(String),

    /// A metric argument failed positivity requirements.
    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    /// The two-form Gram matrix was not positive-definite.
    #[error("invalid gram matrix: {0}")]
    InvalidGram(String),

    /// A least-squares system was too ill-conditioned to trust.
    #[error("ill-conditioned system: {0}")]
    IllConditioned(String),

    /// The (anti-)self-duality constraint does not have the expected
    /// 35-dimensional solution space at this point.
    #[error("degenerate duality structure: {0}")]
    DegenerateDuality(String),

    /// The pinned 35x35 block of the duality system is singular, so the
    /// trailing-block pin convention cannot be applied at this point.
    #[error("pin convention failure: {0}")]
    PinConventionFailure(String),

    /// The chart calibration search did not find exactly one surviving
    /// candidate. Carries the best deviation per examined candidate class.
    #[error("calibration failure: {0}")]
    CalibrationFailure(String),

    /// A spectrum did not have the cluster pattern a consumer required.
    #[error("cluster pattern mismatch: {0}")]
    PatternMismatch(String),

    /// A finite-difference stencil left the nondegenerate region.
    #[error("stencil error: {0}")]
    Stencil(String),

    /// A closed-form sweep comparator was evaluated at one of its poles.
    #[error("pole in closed-form comparator: {0}")]
    Pole(String),

    /// Generic invalid-argument error (degree mismatches and similar).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
