//! Leopoldt and Gross log matrices, their isotypic pieces, and certified
//! ranks.

mod isotypic;
mod logs;
mod matrix;
mod report;

pub use isotypic::{character_label, isotypic_matrices, IsotypicMatrices};
pub use logs::{gross_matrix, leopoldt_matrix, log_vector};
pub use matrix::{PadicMatrix, RankCertificate};
pub use report::{defect_report, CertifiedDefect, DefectKind};

use crate::algebra::AlgebraError;
use crate::fixtures::FixtureError;
use crate::invariants::InvariantError;
use crate::padic::PadicError;

#[derive(Debug, thiserror::Error)]
pub enum RegulatorError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Padic(PadicError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("character index {index} out of range ({count} characters)")]
    NoSuchCharacter { index: usize, count: usize },
}

impl From<PadicError> for RegulatorError {
    fn from(e: PadicError) -> Self {
        RegulatorError::Padic(e)
    }
}
