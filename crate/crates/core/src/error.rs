use thiserror::Error;

/// Errors raised by the combinatorial routines and text parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relations contain a cycle through {0} and {1}")]
    CycleDetected(usize, usize),
    #[error("label {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("poset has {n} elements, more than the supported maximum {max}")]
    TooManyElements { n: usize, max: usize },
    #[error("poset has width {0}, but at most 2 is required")]
    WidthExceeded(usize),
    #[error("invalid chain decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("not a transverse permutation or partition: {0}")]
    NotTransverse(String),
    #[error("not a linear extension: {0}")]
    NotLinearExtension(String),
    #[error("poset is not naturally labeled")]
    NotNaturallyLabeled,
    #[error("support mismatch: {0}")]
    SupportMismatch(String),
    #[error("the zero polynomial has no well-defined root count")]
    ZeroPolynomial,
    #[error("exponent total {total} exceeds the truncation degree {max}")]
    DegreeExceeded { total: usize, max: usize },
    #[error("poset is not a standardized disjoint union of chains")]
    NotDisjointChains,
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
