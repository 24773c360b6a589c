use thiserror::Error;

use crate::algebra::index::BlockIndex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different block algebras")]
    AlgebraMismatch,

    #[error("target vector is not in the span of the given basis")]
    NotInSpan,

    #[error("window functional is not specified on block {0:?}")]
    WindowTooSmall(BlockIndex),

    #[error("no convolution unit found on the configured window")]
    UnitNotFound,

    #[error("factor reconstruction mismatch: max error {max_error}")]
    ReconstructionMismatch { max_error: f64 },

    #[error("window budget of {budget} expansions exhausted without stabilization; history {history:?}")]
    BudgetExceeded { budget: usize, history: Vec<usize> },

    #[error("{0}")]
    Invalid(String),
}
