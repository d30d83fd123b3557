use std::fmt;

use csck_core::CoreError;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Internal = 1,
    Input = 2,
    Verification = 3,
    NoSolution = 4,
}

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub kind: ExitKind,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(kind: ExitKind, error: impl Into<anyhow::Error>) -> Self {
        Failure { kind, error: error.into() }
    }

    pub fn input(msg: impl fmt::Display) -> Self {
        Failure::new(ExitKind::Input, anyhow::anyhow!("{msg}"))
    }

    pub fn no_solution(msg: impl fmt::Display) -> Self {
        Failure::new(ExitKind::NoSolution, anyhow::anyhow!("{msg}"))
    }

    pub fn verification(msg: impl fmt::Display) -> Self {
        Failure::new(ExitKind::Verification, anyhow::anyhow!("{msg}"))
    }

    pub fn code(&self) -> u8 {
        self.kind as u8
    }

    /// Classifies a core error; `no_solution` marks errors that mean the
    /// solve found nothing rather than that the input was malformed.
    pub fn from_core(err: CoreError, no_solution: bool) -> Self {
        let kind = match err {
            CoreError::InvalidParameter(_) | CoreError::Degenerate(_) | CoreError::OutOfDomain { .. } => ExitKind::Input,
            CoreError::NoBracket(_) | CoreError::NoPositiveProfile(_) if no_solution => ExitKind::NoSolution,
            CoreError::NoBracket(_) | CoreError::NoPositiveProfile(_) => ExitKind::Input,
            _ => ExitKind::Internal,
        };
        Failure::new(kind, err)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl From<CoreError> for Failure {
    fn from(err: CoreError) -> Self {
        Failure::from_core(err, false)
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;
