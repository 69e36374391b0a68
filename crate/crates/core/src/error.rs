use std::fmt;

use thiserror::Error;

/// Location of a parse failure inside a text file (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Structurally malformed input (wrong shape, out-of-range index, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// A value that parses but violates the precondition of an operation.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at {pos}: {message}")]
    Parse { pos: Position, message: String },

    /// An embedding witness failed its own verification. This indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos: Position { line, column },
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
