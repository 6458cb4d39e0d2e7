#![allow(clippy::needless_range_loop)]

//! Certified p-adic rank computations for Leopoldt and Gross defects.

pub mod padic;
pub mod algebra;
pub mod fixtures;
pub mod invariants;
pub mod regulators;
pub mod scan;
pub mod theta;
