use thiserror::Error;

/// Every failure the workbench reports, tagged with a stable kind code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by an identically zero scalar")]
    DivisionByZero,

    #[error("denominator vanishes at the given binding: {expr}")]
    EvalDenZero { expr: String },

    #[error("parse error at offset {offset}: expected one of [{}], found {found}", expected.join(", "))]
    Parse {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("unknown parameter `{name}` at offset {offset}")]
    UnknownParam { name: String, offset: usize },

    #[error("invalid parameter declaration: {0}")]
    InvalidParam(String),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("{law} requires bundle member `{member}`")]
    MissingMember { law: String, member: String },

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("grid has {size} candidates, cap is {cap}")]
    GridTooLarge { size: u128, cap: u128 },

    #[error("search template still has unbound parameters: {}", params.join(", "))]
    SymbolicTemplate { params: Vec<String> },

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
}

impl Error {
    /// Stable upper-case code used in reports and exit diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::EvalDenZero { .. } => "EVAL_DEN_ZERO",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::UnknownParam { .. } => "UNKNOWN_PARAM",
            Error::InvalidParam(_) => "INVALID_PARAM",
            Error::DimMismatch { .. } => "DIM_MISMATCH",
            Error::MissingMember { .. } => "MISSING_MEMBER",
            Error::NotInvertible(_) => "NOT_INVERTIBLE",
            Error::UnknownFixture(_) => "UNKNOWN_FIXTURE",
            Error::GridTooLarge { .. } => "GRID_TOO_LARGE",
            Error::SymbolicTemplate { .. } => "SYMBOLIC_TEMPLATE",
            Error::InvalidDescriptor(_) => "INVALID_DESCRIPTOR",
        }
    }

    pub(crate) fn dim(context: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimMismatch {
            context: context.into(),
            expected,
            found,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
