use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::construction::ConstructionError;
use crate::enumerative::EnumerativeError;
use crate::mukai::LatticeError;
use crate::quadform::QuadFormError;
use crate::systems::SystemError;

/// Any failure surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{message} at line {line}, column {column}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    QuadForm(#[from] QuadFormError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Enumerative(#[from] EnumerativeError),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Verification,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. }
            | Error::Algebra(AlgebraError::Parse { .. } | AlgebraError::BadScalar(_)) => {
                ErrorKind::Parse
            }
            Error::Construction(ConstructionError::InconsistentConstant { .. }) => {
                ErrorKind::Verification
            }
            _ => ErrorKind::Precondition,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()).to_string(),
        }
    }
}

fn strip_position(message: &str) -> &str {
    match message.rfind(" at line ") {
        Some(i) => &message[..i],
        None => message,
    }
}
