use thiserror::Error;

/// Errors surfaced by the library. Inconsistent linear systems and absent
/// curves are regular outcomes (`None`), not errors; these are contract
/// violations and generation failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed fraction string: {0:?}")]
    BadFraction(String),

    #[error("duplicate point {0} in point set")]
    DuplicatePoint(String),

    #[error("degree bound {bound} too small: polynomial has degree {needed}")]
    DegreeBoundTooSmall { needed: usize, bound: usize },

    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { expected: usize, got: usize },

    #[error("vector length {got} does not match expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("point {0} is not a member of the point set")]
    PointNotInSet(String),

    #[error("point {0} does not lie on the given curve")]
    PointOffCurve(String),

    #[error("polynomial must be nonzero and nonconstant")]
    DegeneratePolynomial,

    #[error("point set has {0} points; this diagnostic is capped at {1}")]
    TooManyPoints(usize, usize),

    #[error("invalid degrees: require 1 <= m <= n, got m={m}, n={n}")]
    InvalidDegrees { m: i64, n: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("generation failed: resampling cap of {0} draws exceeded")]
    GenerationCap(u32),

    #[error("no valid scenario of this kind exists for m={m}, n={n}: {reason}")]
    UnsupportedScenario { m: i64, n: i64, reason: String },

    #[error("internal witness post-check failed: {0}")]
    WitnessPostCheck(String),
}
