//! Crate-wide error type.

use thiserror::Error;

use crate::cone::Verdict;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("surface index n must be at least 3, got {0}")]
    SurfaceIndexTooSmall(i64),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector is not primitive (divisibility {0})")]
    NotPrimitive(String),

    #[error("vector has support outside the (F,W)-orthogonal block")]
    OutsideOrthogonalBlock,

    #[error("reflection vector must have non-zero square")]
    IsotropicReflection,

    #[error("reflection does not act integrally on the lattice")]
    NonIntegralReflection,

    #[error("matrix does not preserve the Gram form")]
    NotGramPreserving,

    #[error("transvection precondition violated: {0}")]
    TransvectionPrecondition(&'static str),

    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(String),

    #[error("alpha inequality violated: alpha={alpha}, beta={beta}, perp_square={perp_square}")]
    AlphaInequality {
        alpha: String,
        beta: String,
        perp_square: String,
    },

    #[error("escalation parameter exceeded the configured cap of {0}")]
    EscalationBound(u32),

    #[error("class is not in a certifiable region: {0:?}")]
    NotCertifiable(Verdict),

    #[error("positivity failure in {stage}: {detail}")]
    PositivityFailure { stage: &'static str, detail: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
