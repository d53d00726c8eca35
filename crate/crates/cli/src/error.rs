//! CLI error type with the stable exit-code contract:
//! 2 usage, 3 I/O, 4 numeric failure.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or inconsistent inputs the caller controls.
    Usage(String),
    /// Files that cannot be read, parsed, or written.
    Io(String),
    /// The solver produced non-finite values.
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<tl1denoise::Error> for CliError {
    fn from(e: tl1denoise::Error) -> Self {
        use tl1denoise::Error::*;
        match e {
            Io { .. } | UnsupportedFormat { .. } | MalformedFile { .. }
            | InvalidDimensions { .. } => CliError::Io(e.to_string()),
            NonFinite { .. } | NonFiniteIterate { .. } => CliError::Numeric(e.to_string()),
            InvalidParameter { .. } | ShapeMismatch { .. } => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
