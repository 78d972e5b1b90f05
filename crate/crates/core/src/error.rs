use thiserror::Error;

/// A position in a source document, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("nu is not a classical value (nu-in-classical-mode)")]
    NuInClassicalMode,
    #[error("nu is not allowed in a classical set")]
    NuInClassicalSet,
    #[error("the Minkowski functional needs 0 in the set (minkowski-requires-zero)")]
    MinkowskiRequiresZero,
    #[error("the direction vector must be nonzero (zero-direction)")]
    ZeroDirection,
    #[error("function cannot be optimised exactly (not-exactly-optimizable)")]
    NotExactlyOptimizable,
    #[error(
        "function attains +inf, which has no classical counterpart (plus-inf-not-representable)"
    )]
    PlusInfNotRepresentable,
    #[error("region is not contained in the domain (region-outside-dom)")]
    RegionOutsideDom,
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("invalid value `{0}`")]
    InvalidValue(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: {message}")]
    Semantic { span: Span, message: String },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NuInClassicalMode => "nu-in-classical-mode",
            Error::NuInClassicalSet => "nu-in-classical-set",
            Error::MinkowskiRequiresZero => "minkowski-requires-zero",
            Error::ZeroDirection => "zero-direction",
            Error::NotExactlyOptimizable => "not-exactly-optimizable",
            Error::PlusInfNotRepresentable => "plus-inf-not-representable",
            Error::RegionOutsideDom => "region-outside-dom",
            Error::UnknownProperty(_) => "unknown-property",
            Error::InvalidValue(_) => "invalid-value",
            Error::InvalidSequence(_) => "invalid-sequence",
            Error::InvalidFunction(_) => "invalid-function",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Syntax { .. } => "syntax",
            Error::Semantic { .. } => "semantic",
        }
    }

    pub fn span(&self) -> Option<Span> {
        match self {
            Error::Syntax { span, .. } | Error::Semantic { span, .. } => Some(*span),
            _ => None,
        }
    }

    /// Input errors (syntax and semantic) as opposed to precondition
    /// violations of an operation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::Semantic { .. }
                | Error::InvalidValue(_)
                | Error::InvalidSequence(_)
                | Error::InvalidFunction(_)
                | Error::UnknownProperty(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
