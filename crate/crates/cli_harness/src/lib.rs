//! Catalog of worked examples, spec-file input, reports and verification suites.

pub mod catalog;
pub mod checks;
pub mod dynamics;
pub mod properties;
pub mod report;
pub mod specfile;
pub mod tables;

use coord_poisson::CoordError;
use homspace_analysis::HomspaceError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Spec(#[from] specfile::SpecError),
    #[error(transparent)]
    Build(#[from] specfile::BuildError),
    #[error(transparent)]
    Analysis(#[from] HomspaceError),
    #[error(transparent)]
    Coord(#[from] CoordError),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("unknown dynamics case `{0}`")]
    UnknownCase(String),
    #[error("unreadable golden file: {0}")]
    Golden(String),
}

impl HarnessError {
    /// 2 for bad input, 1 for a computation that ran and failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Coord(_) => 1,
            _ => 2,
        }
    }
}
