//! Capped-relative-precision arithmetic in `Q_p` for odd primes `p`.

mod hensel;
mod log;
mod number;

pub use hensel::{eval_int_poly, hensel_roots};
pub use log::{iwasawa_log, log_rational, teichmuller, LOG_ADDITIVITY_SLACK};
pub use number::{is_prime, prime_power, Padic, PrecisionPolicy};

pub(crate) use number::{check_odd_prime, split_valuation_int};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("precision exhausted: divisor is indistinguishable from zero")]
    PrecisionExhausted,
    #[error("expected a p-adic unit (valuation 0)")]
    NotAUnit,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("leading coefficient divisible by {0}")]
    LeadingCoefficientDivisible(u64),
    #[error("repeated root {root} modulo {p}")]
    RepeatedRootModP { root: u64, p: u64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("invalid precision {0}")]
    InvalidPrecision(u32),
    #[error("zero threshold {zero_threshold} exceeds precision {precision}")]
    InvalidPolicy { precision: u32, zero_threshold: i64 },
}
