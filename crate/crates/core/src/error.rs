use thiserror::Error;

pub type Result<T> = std::result::Result<T, SawError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SawError {
    #[error("vertex index {index} out of range for a walk with {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} exceeds the configured limit ({value} > {limit})")]
    LimitExceeded {
        what: &'static str,
        value: String,
        limit: String,
    },

    #[error("moment accumulator holds no samples")]
    EmptyAccumulator,

    #[error("first moment is zero")]
    ZeroMoment,

    #[error("denominator has a zero constant term")]
    ZeroConstantTerm,

    #[error("series coefficient {index} is not an integer")]
    NonIntegralCoefficient { index: usize },

    #[error("G_{k} has no sign change on the bracketing interval")]
    NoSignChange { k: usize },

    #[error("derivative of G_{k} vanishes at the pole")]
    DegenerateDerivative { k: usize },

    #[error("point lies on the branch cut [-1, -1/9]")]
    OnBranchCut,

    #[error("no walks to render")]
    NothingToRender,

    #[error("empty table")]
    EmptyTable,

    #[error("cannot parse {0:?}")]
    Parse(String),
}

impl SawError {
    pub(crate) fn limit(what: &'static str, value: impl ToString, limit: impl ToString) -> Self {
        SawError::LimitExceeded {
            what,
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }
}
