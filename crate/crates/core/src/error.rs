use thiserror::Error;

/// Errors raised by the kernel.
///
/// Every variant maps to a stable machine-readable code (see [`Error::code`]);
/// the CLI turns these into exit statuses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("table entry ({row}, {col}) = {value} is outside [0, {n})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },

    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("empty word is not an element of IG(E)")]
    EmptyWord,

    #[error("word is not regular: {0}")]
    RegularOnly(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("word falls out of the D-class: letters {0} and {1} multiply below D")]
    FallsOutOfD(usize, usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("principal factor not completely 0-simple for this input: {0}")]
    NotCompletelySimple(String),

    #[error("capability not supported: {0}")]
    Capability(String),

    #[error("enumeration overflow: {0}")]
    Overflow(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable error code for machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed-input",
            Error::EntryOutOfRange { .. } => "entry-out-of-range",
            Error::NotAssociative { .. } => "not-associative",
            Error::UnknownElement(_) => "unknown-element",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::EmptyWord => "empty-word",
            Error::RegularOnly(_) => "regular-only",
            Error::Domain(_) => "domain",
            Error::FallsOutOfD(..) => "falls-out-of-d",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal-consistency",
            Error::NotCompletelySimple(_) => "not-completely-0-simple",
            Error::Capability(_) => "capability",
            Error::Overflow(_) => "overflow",
            Error::Io(_) => "io",
        }
    }

    /// True for errors that mean "the tool cannot decide this" rather than "bad input".
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Capability(_) | Error::Overflow(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
