use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse element literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },

    #[error("encoding of length {got} does not belong to {group} (expected length {expected})")]
    BadEncoding {
        group: String,
        expected: usize,
        got: usize,
    },

    #[error("encoding is not a valid element of {0}")]
    NotAnElement(String),

    #[error("x^E is not the identity: element lies outside the group or the exponent is wrong")]
    ExponentViolation,

    #[error("squaring sequence did not reach the identity within {steps} squarings")]
    InvolutionFailure { steps: u32 },

    #[error("element does not have odd order")]
    NotOddOrder,

    #[error("element is not an involution")]
    NotInvolution,

    #[error("matrix is singular")]
    Singular,

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("tuple size {k} is too small (need at least {min})")]
    TupleTooSmall { k: usize, min: usize },

    #[error("oracle starvation: no defined value after {attempts} attempts")]
    Starvation { attempts: usize },

    #[error("no involution found within a budget of {budget} draws")]
    BudgetExhausted { budget: usize },

    #[error("size guard exceeded: {size} > {limit}")]
    SizeGuard { size: u128, limit: u128 },

    #[error("walk did not reach the threshold within {cap} steps")]
    NonConvergence { cap: usize },

    #[error("distributions live in different groups ({0} vs {1})")]
    MismatchedGroups(String, String),

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { got: u64, needed: u64 },

    #[error("group {0} is too large to enumerate")]
    NotEnumerable(String),

    #[error("oracle emitted an element that does not commute with the involution")]
    NotCentralising,

    #[error("not a nontrivial involution modulo {n}: {x}")]
    TrivialInvolution { n: u64, x: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(literal: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            literal: literal.to_string(),
            reason: reason.into(),
        }
    }
}
