use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text. `line` is 1-based.
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown {kind} `{id}`")]
    Unknown { kind: &'static str, id: String },

    #[error("unbounded enumeration requested on a cyclic complex")]
    Unbounded,

    #[error("size guard exceeded: {0}")]
    Guard(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { line, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by input that could not be read at all.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
