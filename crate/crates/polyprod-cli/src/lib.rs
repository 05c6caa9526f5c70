//! Command-line front end for the polyprod pipelines: JSON instance files,
//! deterministic report rendering, and the seeded random corpora used by the
//! integration suite.

pub mod commands;
pub mod corpus;
pub mod input;

use thiserror::Error;

/// Anything that stops a command before its check can run. All of these exit
/// with status 1; status 2 is reserved for checks that ran and disagreed.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at {path}: {message}")]
    Json { path: String, message: String },
    #[error("invalid input at {path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn invalid(path: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Invalid { path: path.into(), message: message.into() }
    }
}

macro_rules! compute_from {
    ($($ty:path),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> CliError {
                CliError::Compute(e.to_string())
            }
        })*
    };
}

compute_from!(
    polyprod::exactlin::FieldError,
    polyprod::simplicial::SimplicialError,
    polyprod::chains::ChainsError,
    polyprod::factors::FactorError,
    polyprod::hochster::HochsterError,
    polyprod::structure::StructureError,
    polyprod::duality::DualityError,
    polyprod::oracle::OracleError,
    polyprod::oracle::CompareError,
);

/// What a command produced: the full stdout text and whether some check it
/// ran came out negative (exit status 2 instead of 0).
#[derive(Debug, Clone)]
pub struct CmdOutcome {
    pub stdout: String,
    pub failed: bool,
}

impl CmdOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.failed {
            2
        } else {
            0
        }
    }
}
