use thiserror::Error;

/// Errors reported by the exact layers of the crate.
///
/// Structural misuse of the polynomial arithmetic itself (mismatched
/// variable counts, out-of-range variable slots) panics instead; those are
/// programming errors, and the CLI validates user input before it can
/// reach them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Lamé parameters: {0}")]
    InvalidLameParameters(String),

    #[error("degree mismatch: expected homogeneous of degree {expected}, got {found}")]
    DegreeMismatch { expected: i64, found: String },

    #[error("basis verification failed for {family} with parameters {params}: {condition}")]
    VerificationFailed {
        family: String,
        params: String,
        condition: String,
    },

    #[error("rank defect in {context}: expected {expected}, got {found}")]
    RankDefect {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("vector is not a solution: residual {residual}")]
    NotASolution { residual: String },

    #[error("coefficient denominator vanished for (n={n}, k={k}, b={b})")]
    ZeroDenominator { n: usize, k: u32, b: String },

    #[error("exact division by x_{var} failed: {0}", var = .1)]
    NotDivisible(String, usize),

    #[error("grid too coarse: axis {axis} has {points} points, need at least {needed}")]
    GridTooCoarse {
        axis: usize,
        points: usize,
        needed: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
