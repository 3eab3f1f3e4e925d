use thiserror::Error;

use crate::spectral::PerronData;

/// Errors raised by the library. Failed lemma inequalities are never errors;
/// they are reported as audit data.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates an operation's precondition.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Malformed graph6 input.
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    /// Vertex count outside the supported range.
    #[error("range error: {0}")]
    Range(String),

    /// Power iteration ran out of budget; carries the best estimate reached.
    #[error("power iteration did not converge: residual {:.3e} after {iterations} iterations", best.residual)]
    Convergence { best: Box<PerronData>, iterations: usize },

    /// A constructive embedding hit a dead end. Never expected; its occurrence
    /// means the case analysis is wrong for the reported tree.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
