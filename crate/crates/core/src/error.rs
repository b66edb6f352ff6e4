use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("truncation too short: {0}")]
    TruncationTooShort(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("{count} branch(es) not resolvable in the working field")]
    UnresolvedBranch { count: usize },
    #[error("truncation budget exceeded after {0} Newton polygon stages")]
    TruncationBudgetExceeded(usize),
    #[error("input violates simplicity: {0}")]
    InputViolatesSimplicity(String),
    #[error("collinear point has no cover")]
    NoCover,
    #[error("no postbar grows at this point")]
    NoPostbar,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("placement unresolved: {0}")]
    PlacementUnresolved(String),
    #[error("shift s = {0} is not large enough")]
    SNotLargeEnough(i64),
    #[error("no generic shear found within budget")]
    NoGenericFound,
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("negative exponent at {line}:{col} requires --laurent")]
    NegativeExponentWithoutLaurent { line: usize, col: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
