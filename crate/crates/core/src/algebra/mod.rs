//! Exact arithmetic for character values: cyclotomic fields, finite groups
//! given by tables, and their one-dimensional characters.

mod character;
mod cyclotomic;
mod group;
mod linalg;

pub use character::{
    character_inner_product, inner_product, linear_characters, ClassFunction, LinearCharacter,
};
pub use cyclotomic::{
    cyclotomic_polynomial, primitive_root, teichmuller_embed, teichmuller_zeta, totient,
    CyclotomicNumber,
};
pub use group::{FiniteGroup, MAX_GROUP_ORDER};
pub use linalg::{cyclotomic_rank, is_rational_invertible, rational_matmul, rational_rank};

use thiserror::Error;

use crate::padic::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cannot coerce from conductor {from} to {to}")]
    Coercion { from: u64, to: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("character values outside Q_p: {m} does not divide {p} - 1; fixture inadmissible")]
    NotInQp { m: u64, p: u64 },
    #[error("inconsistent character data")]
    InconsistentCharacter,
    #[error("shape mismatch")]
    ShapeMismatch,
    #[error("group of order {0} is outside the supported range 1..=64")]
    GroupTooLarge(usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error(transparent)]
    Padic(PadicError),
}
