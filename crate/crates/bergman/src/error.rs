//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A coefficient was NaN or infinite.
    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    /// Quadrature sample count below the anti-aliasing floor 4*(K+1).
    #[error("sample count {got} below the floor {min} for a degree-{degree} symbol")]
    TooFewSamples { got: usize, min: usize, degree: usize },

    /// A polynomial operation would exceed the per-variable degree cap.
    #[error("polynomial degree {got} exceeds the cap {cap}")]
    DegreeCap { got: usize, cap: usize },

    /// An operation requiring a real-valued polynomial received a non-real one.
    #[error("{0} is not real-valued")]
    NotReal(&'static str),

    /// Eigenvalue iteration hit its iteration cap before reaching tolerance.
    #[error("eigenvalue iteration did not reach tolerance {tol} within {iterations} iterations")]
    NoConvergence { iterations: usize, tol: f64 },

    /// Adaptive finite sections grew past the hard cap without stabilizing.
    #[error("finite sections did not stabilize below dimension {cap}")]
    SectionCap { cap: usize },

    /// A computed value violated an a priori bound; indicates an internal bug.
    #[error("consistency alarm: {what} = {value} exceeds bound {bound}")]
    BoundViolation { what: &'static str, value: f64, bound: f64 },

    #[error("matrix is not flagged Hermitian")]
    NotHermitian,

    /// The sufficient univalence condition failed and the caller did not force.
    #[error("univalence is not certified for this symbol; use the force flag to compute a multiplicity-weighted value")]
    UnivalenceUncertified,

    #[error("truncation {n} below the minimum {min} for a degree-{degree} symbol")]
    TruncationTooSmall { n: usize, min: usize, degree: usize },

    #[error("grid {radial}x{angular} below the minimum 32x64")]
    GridTooCoarse { radial: usize, angular: usize },

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),

    #[error("{0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
