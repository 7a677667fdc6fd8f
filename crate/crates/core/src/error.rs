use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("permutation closure exceeds cap of {cap} elements")]
    ClosureTooLarge { cap: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a group: {reason}")]
    NotAGroup {
        reason: String,
        /// First failing associativity triple, when that is the failure.
        triple: Option<(usize, usize, usize)>,
    },

    #[error("cyclicizer of an empty set is undefined")]
    EmptySet,

    #[error("group {0} is cyclic; its non-cyclic graph is undefined")]
    GroupIsCyclic(String),

    #[error("non-cyclic graph is disconnected")]
    Disconnected,

    #[error("verification failure: {0}")]
    VerificationFailure(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("canonicalization exceeded its time budget")]
    Timeout,

    #[error("graph has {vertices} vertices, above the cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },

    #[error("unknown check: {0}")]
    UnknownCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Short machine-readable kind used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::ClosureTooLarge { .. } => "ClosureTooLarge",
            Error::Parse { .. } => "ParseError",
            Error::NotAGroup { .. } => "NotAGroup",
            Error::EmptySet => "EmptySet",
            Error::GroupIsCyclic(_) => "GroupIsCyclic",
            Error::Disconnected => "Disconnected",
            Error::VerificationFailure(_) => "VerificationFailure",
            Error::NotApplicable(_) => "NotApplicable",
            Error::Timeout => "Timeout",
            Error::TooLarge { .. } => "TooLarge",
            Error::UnknownCheck(_) => "UnknownCheck",
            Error::Io(_) => "Io",
        }
    }
}
