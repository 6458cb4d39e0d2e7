//! The invariants `d`, `d⁺`, `f` of Artin representations, the defect bounds
//! they imply, and the combinatorial Gross–Kuz'min case list.

mod bounds;
mod classify;
mod places;
mod project;

pub use bounds::{gross_bound, leopoldt_bound, DefectBound, GrossFlags};
pub use classify::{classify_gk, GkCase, GkDescriptor};
pub use places::{compute_invariants, irreducible_over_q, ArtinRep, InvariantTriple, Place, PlaceData};
pub use project::{idempotent_project, FormalCombination, FormalTerm, ProjectionMode};

use crate::algebra::AlgebraError;

#[derive(Debug, thiserror::Error)]
pub enum InvariantError {
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("inconsistent descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
