use qcalab::QcaError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag, bad value or unreadable input: exit 2.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] QcaError),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn flag(flag: &str, reason: impl std::fmt::Display) -> Self {
        CliError::Usage(format!("invalid value for --{flag}: {reason}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            // a study ran and found the object fails a structural property
            CliError::Core(
                QcaError::NotCausal { .. }
                | QcaError::NotUnitary { .. }
                | QcaError::NotQuiescent { .. }
                | QcaError::NotInjective { .. }
                | QcaError::LeavesWindow { .. },
            ) => 1,
            _ => 2,
        }
    }
}

/// How a study ended when it ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
        }
    }
}
