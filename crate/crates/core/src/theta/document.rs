use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{parse_rational, BlockWitness, IndependenceCertificate, ThetaError};
use crate::padic::{log_rational, Padic};

/// A matrix with symbolic entries, optional block witnesses, and optional
/// values `log_p(q)` for the symbols.
///
/// ```toml
/// symbols = ["a", "b", "c"]
/// entries = [["a", "b"], ["c", "a + b"]]
///
/// [[witness]]
/// p = [["1", "0"], ["0", "1"]]
/// q = [["1", "0"], ["0", "1"]]
/// block = [1, 1]
///
/// [values]
/// prime = 5
/// logs = { a = "6", b = "11", c = "2/3" }
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaDocument {
    pub symbols: Vec<String>,
    pub entries: Vec<Vec<String>>,
    #[serde(default, rename = "witness", skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<ValueDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub p: Vec<Vec<String>>,
    pub q: Vec<Vec<String>>,
    /// `[m′, ℓ′]`.
    pub block: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueDoc {
    pub prime: u64,
    /// Symbol name to the rational whose logarithm it stands for.
    pub logs: BTreeMap<String, String>,
}

fn matrix(rows: &[Vec<String>]) -> Result<Vec<Vec<num_rational::BigRational>>, ThetaError> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect())
        .collect()
}

impl ThetaDocument {
    pub fn from_toml(text: &str) -> Result<Self, ThetaError> {
        toml::from_str(text).map_err(|e| ThetaError::Certificate(e.to_string()))
    }

    pub fn certificate(&self) -> Result<IndependenceCertificate, ThetaError> {
        IndependenceCertificate::parse(self.symbols.clone(), &self.entries)
    }

    pub fn block_witnesses(&self) -> Result<Vec<BlockWitness>, ThetaError> {
        self.witnesses
            .iter()
            .map(|w| {
                Ok(BlockWitness {
                    p: matrix(&w.p)?,
                    q: matrix(&w.q)?,
                    m_prime: w.block[0],
                    l_prime: w.block[1],
                })
            })
            .collect()
    }

    /// `log_p` of the listed rationals, in symbol order, at absolute
    /// precision `n`.
    pub fn symbol_values(&self, n: u32) -> Result<Option<(u64, Vec<Padic>)>, ThetaError> {
        let Some(v) = &self.values else { return Ok(None) };
        if let Some(k) = v.logs.keys().find(|k| !self.symbols.contains(k)) {
            return Err(ThetaError::Certificate(format!("value for unknown symbol {k:?}")));
        }
        let out = self
            .symbols
            .iter()
            .map(|s| {
                let q = v
                    .logs
                    .get(s)
                    .ok_or_else(|| ThetaError::Certificate(format!("no value for symbol {s:?}")))?;
                let q = parse_rational(q)?;
                Ok(log_rational(q.numer(), q.denom(), v.prime, n)?)
            })
            .collect::<Result<Vec<_>, ThetaError>>()?;
        Ok(Some((v.prime, out)))
    }
}
