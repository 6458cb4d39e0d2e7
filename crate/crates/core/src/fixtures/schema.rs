//! The fixture document: exact, prime-agnostic field data plus per-prime
//! p-unit generators, stored as TOML.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// A field element as power-basis coefficients in `θ`, constant term first,
/// each a decimal integer or fraction string (`"-3"`, `"1/2"`).
pub type PolyDoc = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDocument {
    pub schema_version: u32,
    pub id: String,
    #[serde(default)]
    pub description: String,
    /// Defining polynomial, integer coefficients, constant term first.
    pub poly: Vec<String>,
    /// `[r1, r2]`.
    pub signature: [u32; 2],
    pub class_number: u64,
    /// Name of the automorphism acting as complex conjugation, when the
    /// field is Galois and not totally real.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_conjugation: Option<String>,
    /// Fundamental units.
    #[serde(default)]
    pub units: Vec<PolyDoc>,
    #[serde(default)]
    pub galois: Vec<GaloisDoc>,
    /// Optional multiplication table over `galois` (by position); when
    /// present it must agree with the table derived from the images.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_table: Option<Vec<Vec<usize>>>,
    /// The base field `k` of the relative extension `K/k`; absent means
    /// `k = K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subfield: Option<SubfieldDoc>,
    #[serde(default)]
    pub primes: Vec<PrimeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisDoc {
    pub name: String,
    /// `σ(θ)` as a polynomial in `θ`.
    pub image: PolyDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubfieldDoc {
    /// Names of the automorphisms forming `Gal(K/k)`.
    pub group: Vec<String>,
    /// `[k:Q]`.
    pub degree: u32,
    /// Signature of `k`.
    pub signature: [u32; 2],
    /// For each real place of `k`, the element of `Gal(K/k)` acting as
    /// complex conjugation at a place of `K` above it (`"id"` when the place
    /// stays real).
    #[serde(default)]
    pub real_conjugations: Vec<String>,
    /// Decomposition groups of the primes of `k` above `p`; since `p` must
    /// split completely they can only be trivial.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub decomposition_groups: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeDoc {
    pub p: u64,
    #[serde(default)]
    pub p_units: Vec<PUnitDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PUnitDoc {
    pub poly: PolyDoc,
    /// 1-based index of the prime `𝔓_j`, primes being ordered by the
    /// residue modulo `p` of the corresponding root of the defining
    /// polynomial.
    pub prime_label: usize,
    /// `ord_{𝔓_j}` of the generator.
    pub valuation: u64,
}

impl FixtureDocument {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("fixture documents serialise")
    }
}
