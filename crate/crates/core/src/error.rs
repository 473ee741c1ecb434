use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left:?} vs {right:?}")]
    OrderMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("series variables differ: {0} vs {1}")]
    VariableMismatch(String, String),

    #[error("constant term of the divisor is not a unit")]
    NonUnitConstant,

    #[error("matrix is singular (ad - bc = 0)")]
    Singular,

    #[error("g(1) = 1, the generating denominator has no unit constant term")]
    DegenerateAtOne,

    #[error("matrix is not admissible: T = {witness} lies in (1, inf) with gT in [1, inf]")]
    Inadmissible { witness: String },

    #[error("{0} is not a vertex of the matrix")]
    NotAVertex(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("point outside the certified domain: {0}")]
    OutsideDomain(String),

    #[error("argument on a branch cut: {0}")]
    OnBranchCut(String),

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
