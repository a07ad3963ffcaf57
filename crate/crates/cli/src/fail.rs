use binowords::error::Error;
use std::fmt;
use std::io;
use std::process::ExitCode;

pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_STABILIZATION: u8 = 3;
pub const EXIT_OTHER: u8 = 4;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    /// Some verification checks failed; the report was already printed.
    Verification(String),
    Lib(Error),
    Io(String, io::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verification(_) => EXIT_VERIFICATION,
            Failure::Lib(e) if e.is_stabilization() => EXIT_STABILIZATION,
            Failure::Lib(
                Error::Invalid(_)
                | Error::Parse { .. }
                | Error::UnknownSymbol { .. }
                | Error::InvalidAlphabet(_)
                | Error::NotBinary(_)
                | Error::Precondition(_),
            ) => EXIT_USAGE,
            Failure::Lib(_) | Failure::Io(..) => EXIT_OTHER,
        }
    }

    pub fn exit(&self) -> ExitCode {
        ExitCode::from(self.code())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Verification(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;
