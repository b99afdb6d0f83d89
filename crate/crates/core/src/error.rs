use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit: {what} needs {requested}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("not a lattice: elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),

    #[error("no bottom element")]
    NoBottom,

    #[error("no top element")]
    NoTop,

    #[error("cover relation has a cycle")]
    Cyclic,

    #[error("kappa undefined at join-irreducible {element}: {candidates} candidates")]
    KappaUndefined { element: usize, candidates: usize },

    #[error("Galois graph has a cycle")]
    GaloisCycle,

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{capped} of {trials} trials hit the step cap")]
    TooManyCapped { capped: usize, trials: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

/// Machine-readable error class, used for CLI exit codes and JSON error records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    InvalidInput,
    ResourceLimit,
    AssertionFailure,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::InvalidInput => 2,
            ErrorClass::ResourceLimit => 3,
            ErrorClass::AssertionFailure => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorClass::InvalidInput => "invalid_input",
            ErrorClass::ResourceLimit => "resource_limit",
            ErrorClass::AssertionFailure => "assertion_failure",
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ResourceLimit { .. } | Error::TooManyCapped { .. } => ErrorClass::ResourceLimit,
            Error::Verification(_) | Error::KappaUndefined { .. } | Error::GaloisCycle => {
                ErrorClass::AssertionFailure
            }
            _ => ErrorClass::InvalidInput,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::ResourceLimit {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}
