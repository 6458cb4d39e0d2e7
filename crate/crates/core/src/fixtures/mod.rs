//! Number-field fixtures: loading, exact validation, p-adic embeddings, and
//! the built-in quadratic generator.

mod embeddings;
mod field;
pub mod quadratic;
pub mod schema;

pub use embeddings::{admit, padic_embeddings, AdmittedField, EmbeddingSet, PUnit};
pub use field::{count_real_roots, Automorphism, Elem, NumberField, Subfield};
pub use quadratic::quadratic_document;
pub use schema::{FixtureDocument, GaloisDoc, PUnitDoc, PolyDoc, PrimeDoc, SubfieldDoc, SCHEMA_VERSION};

use thiserror::Error;

use crate::padic::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("fixture invariant violated: {0}")]
    Invariant(String),
    #[error("inadmissible prime: {0}")]
    Inadmissible(String),
    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),
    #[error(transparent)]
    Padic(PadicError),
}

/// Parses and validates the prime-agnostic part of a fixture.
pub fn load_fixture(text: &str) -> Result<NumberField, FixtureError> {
    let doc = FixtureDocument::from_toml(text).map_err(|e| FixtureError::Schema(e.message().to_string()))?;
    NumberField::from_document(&doc)
}

/// The built-in quadratic field `Q(√d)` admitted at `p`.
pub fn quadratic_builtin(d: i64, p: u64, precision: u32) -> Result<AdmittedField, FixtureError> {
    let doc = quadratic::quadratic_document(d, &[p])?;
    let field = NumberField::from_document(&doc)?;
    admit(&field, p, precision)
}
