use std::fmt;

pub const USAGE: u8 = 2;
pub const DATA: u8 = 3;
pub const IO: u8 = 4;
pub const COMPUTE: u8 = 5;

/// An error message paired with the process exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: USAGE, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure { code: IO, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<saxlab::Error> for Failure {
    fn from(e: saxlab::Error) -> Self {
        use saxlab::Error::*;
        let code = match &e {
            InvalidParameter(_) => USAGE,
            Io { .. } => IO,
            Parse { .. } | Dataset(_) | NonFinite { .. } | EmptySeries | LengthMismatch { .. } => DATA,
            TooShort { .. } | DegenerateSeries | Singular(_) => COMPUTE,
        };
        Failure { code, message: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, Failure>;
