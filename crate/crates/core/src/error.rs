use thiserror::Error;

/// Errors raised by the algebraic and numerical operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two operands were truncated at different weighted degrees.
    #[error("truncation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    /// Shuffle inversion of a series whose constant term vanishes.
    #[error("series is not shuffle-invertible: constant term is zero")]
    NotInvertible,

    /// A value violated the defining constraint of a refined type.
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// A coefficient lookup beyond what the truncation determines.
    #[error("degree {needed} exceeds truncation degree {available}")]
    BeyondTruncation { needed: u32, available: u32 },

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// An iterative numerical scheme did not settle.
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    /// A fixed point that must stabilise by grading did not. Indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn same_degree(left: u32, right: u32) -> Result<u32> {
    if left == right {
        Ok(left)
    } else {
        Err(Error::DegreeMismatch { left, right })
    }
}
