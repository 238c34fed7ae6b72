use std::fmt;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A query syntax error with the byte position it was detected at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self { position, message: message.into() }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("malformed trectext at byte offset {offset}: {message}")]
    Ingest { offset: usize, message: String },

    #[error("duplicate DOCNO `{0}`")]
    DuplicateDocno(String),

    #[error("output directory {0} is not empty")]
    OutputNotEmpty(PathBuf),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot open index file {file}: {message}")]
    Open { file: String, message: String },

    #[error("unsupported index format_version `{found}` (expected {expected})")]
    UnsupportedVersion { found: String, expected: u32 },

    #[error("document id {id} out of range [{base}, {max})")]
    DocumentOutOfRange { id: u64, base: u32, max: u32 },

    #[error("term id {0} is not in the lexicon")]
    InvalidTermId(u32),

    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("invalid smoothing rule: {0}")]
    Rule(String),

    #[error("invalid document set member {id}: not in [{base}, {max})")]
    InvalidDocumentSet { id: u32, base: u32, max: u32 },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn open(file: &str, message: impl Into<String>) -> Self {
        Error::Open { file: file.to_string(), message: message.into() }
    }
}
