//! The structured-rank invariant `θ(M)` of Waldschmidt and Roy in the two
//! regimes that can be decided exactly: entries with independent symbols,
//! and explicit block witnesses.

mod document;

pub use document::{ThetaDocument, ValueDoc, WitnessDoc};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{is_rational_invertible, rational_rank};
use crate::padic::{Padic, PadicError, PrecisionPolicy};
use crate::regulators::{PadicMatrix, RegulatorError};

#[derive(Debug, thiserror::Error)]
pub enum ThetaError {
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error("invalid witness {index}: {reason}")]
    InvalidWitness { index: usize, reason: String },
    #[error("neither full independence nor a block witness is available")]
    Undetermined,
    #[error("certificate insufficient: {0}")]
    Insufficient(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Regulator(#[from] RegulatorError),
}

type Vector = Vec<BigRational>;

/// Matrix entries as rational combinations of symbols assumed linearly
/// independent over `Q̄` (for instance logarithms of multiplicatively
/// independent numbers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceCertificate {
    symbols: Vec<String>,
    entries: Vec<Vec<Vector>>,
}

impl IndependenceCertificate {
    pub fn new(symbols: Vec<String>, entries: Vec<Vec<Vector>>) -> Result<Self, ThetaError> {
        if symbols.is_empty() {
            return Err(ThetaError::Certificate("empty symbol basis".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(s) = symbols.iter().find(|s| !seen.insert(s.as_str())) {
            return Err(ThetaError::Certificate(format!("symbol {s:?} listed twice")));
        }
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 {
            return Err(ThetaError::Certificate("the matrix must have m, ℓ > 0".into()));
        }
        for row in &entries {
            if row.len() != cols {
                return Err(ThetaError::Certificate("ragged rows".into()));
            }
            if row.iter().any(|e| e.len() != symbols.len()) {
                return Err(ThetaError::Certificate("entry length differs from the symbol count".into()));
            }
        }
        Ok(IndependenceCertificate { symbols, entries })
    }

    /// Parses entries such as `"2*a - 1/3*b"` over the given symbols.
    pub fn parse(symbols: Vec<String>, entries: &[Vec<String>]) -> Result<Self, ThetaError> {
        let parsed = entries
            .iter()
            .map(|row| row.iter().map(|e| parse_linear(e, &symbols)).collect())
            .collect::<Result<Vec<Vec<Vector>>, _>>()?;
        IndependenceCertificate::new(symbols, parsed)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.entries.len(), self.entries[0].len())
    }

    pub fn entry(&self, i: usize, j: usize) -> &[BigRational] {
        &self.entries[i][j]
    }

    /// All `m·ℓ` entries are linearly independent.
    pub fn fully_independent(&self) -> bool {
        let (m, l) = self.shape();
        let all: Vec<Vector> = self.entries.iter().flatten().cloned().collect();
        rational_rank(&all) == m * l
    }

    /// Rank of the rows over `Q̄`, which equals the rank of their rational
    /// coordinates over `Q`.
    pub fn row_rank(&self) -> usize {
        let rows: Vec<Vector> = self.entries.iter().map(|r| r.concat()).collect();
        rational_rank(&rows)
    }

    pub fn column_rank(&self) -> usize {
        let (m, l) = self.shape();
        let cols: Vec<Vector> = (0..l)
            .map(|j| (0..m).flat_map(|i| self.entries[i][j].clone()).collect())
            .collect();
        rational_rank(&cols)
    }

    /// `P·M·Q` in symbol coordinates.
    pub fn transform(&self, p: &[Vector], q: &[Vector]) -> Vec<Vec<Vector>> {
        let (m, l) = self.shape();
        let k = self.symbols.len();
        let zero = || vec![BigRational::zero(); k];
        let mq: Vec<Vec<Vector>> = (0..m)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let mut acc = zero();
                        for (b, qr) in q.iter().enumerate() {
                            axpy(&mut acc, &qr[j], &self.entries[i][b]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        (0..m)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let mut acc = zero();
                        for (a, row) in mq.iter().enumerate() {
                            axpy(&mut acc, &p[i][a], &row[j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// Numeric matrix for the given symbol values.
    pub fn evaluate(&self, values: &[Padic]) -> Result<PadicMatrix, ThetaError> {
        if values.len() != self.symbols.len() {
            return Err(ThetaError::Certificate(format!(
                "{} values for {} symbols",
                values.len(),
                self.symbols.len()
            )));
        }
        let p = values[0].prime();
        let (_, l) = self.shape();
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        e.iter()
                            .zip(values)
                            .fold(Padic::zero(p), |acc, (c, v)| &acc + &v.scale_rational(c))
                    })
                    .collect()
            })
            .collect();
        Ok(PadicMatrix::new(p, l, rows)?)
    }
}

fn axpy(acc: &mut [BigRational], c: &BigRational, x: &[BigRational]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        *a += c * b;
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ThetaError> {
    let s = s.trim();
    let err = || ThetaError::Parse(s.to_string());
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| err())?;
            let b: BigInt = b.trim().parse().map_err(|_| err())?;
            if b.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from(s.parse::<BigInt>().map_err(|_| err())?)),
    }
}

/// `"0"`, or a sum of terms `[±][c*]symbol`.
fn parse_linear(expr: &str, symbols: &[String]) -> Result<Vector, ThetaError> {
    let mut out = vec![BigRational::zero(); symbols.len()];
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(out);
    }
    let err = || ThetaError::Parse(expr.to_string());
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-BigRational::one(), b),
            None => (BigRational::one(), t.strip_prefix('+').unwrap_or(t)),
        };
        let (coeff, name) = match body.rsplit_once('*') {
            Some((c, n)) => (parse_rational(c)?, n),
            None => (BigRational::one(), body),
        };
        let k = symbols.iter().position(|s| s == name).ok_or_else(err)?;
        out[k] += sign * coeff;
    }
    Ok(out)
}

/// Invertible rational `P` (`m × m`) and `Q` (`ℓ × ℓ`) such that the top
/// right `m′ × (ℓ − ℓ′)` block of `P·M·Q` vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockWitness {
    pub p: Vec<Vector>,
    pub q: Vec<Vector>,
    pub m_prime: usize,
    pub l_prime: usize,
}

impl BlockWitness {
    /// Identity transforms.
    pub fn plain(m: usize, l: usize, m_prime: usize, l_prime: usize) -> Self {
        BlockWitness {
            p: identity(m),
            q: identity(l),
            m_prime,
            l_prime,
        }
    }

    pub fn verify(&self, cert: &IndependenceCertificate) -> Result<(), String> {
        let (m, l) = cert.shape();
        if !(0 < self.m_prime && self.m_prime <= m && self.l_prime <= l) {
            return Err(format!("block ({}, {}) outside 0 < m′ ≤ {m}, 0 ≤ ℓ′ ≤ {l}", self.m_prime, self.l_prime));
        }
        let square = |a: &[Vector], n: usize| a.len() == n && a.iter().all(|r| r.len() == n);
        if !square(&self.p, m) || !square(&self.q, l) {
            return Err("P or Q has the wrong shape".into());
        }
        if !is_rational_invertible(&self.p) || !is_rational_invertible(&self.q) {
            return Err("P or Q is singular".into());
        }
        let t = cert.transform(&self.p, &self.q);
        for (i, row) in t.iter().enumerate().take(self.m_prime) {
            for (j, e) in row.iter().enumerate().skip(self.l_prime) {
                if e.iter().any(|c| !c.is_zero()) {
                    return Err(format!("entry ({}, {}) of PMQ is not zero", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }
}

fn identity(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaValue {
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    /// False when only witnesses were used: `θ(M) ≤ value`.
    pub exact: bool,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// `ℓ/m` under full independence; otherwise the least `ℓ′/m′` over the
/// verified witnesses, as an upper bound.
pub fn theta_value(cert: &IndependenceCertificate, witnesses: &[BlockWitness]) -> Result<ThetaValue, ThetaError> {
    let (m, l) = cert.shape();
    let mut best: Option<BigRational> = None;
    for (index, w) in witnesses.iter().enumerate() {
        w.verify(cert).map_err(|reason| ThetaError::InvalidWitness { index, reason })?;
        let r = BigRational::new(BigInt::from(w.l_prime), BigInt::from(w.m_prime));
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    let full = BigRational::new(BigInt::from(l), BigInt::from(m));
    if cert.fully_independent() {
        return Ok(ThetaValue { value: full, exact: true });
    }
    match best {
        Some(b) if b < full => Ok(ThetaValue { value: b, exact: false }),
        Some(_) => Ok(ThetaValue { value: full, exact: false }),
        None => Err(ThetaError::Undetermined),
    }
}

/// `⌈θ/(1+θ)·m⌉`.
pub fn waldschmidt_roy_rank_bound(m: usize, theta: &BigRational) -> usize {
    assert!(!theta.is_negative(), "θ must be non-negative");
    let one = BigRational::one();
    let x = theta / (&one + theta) * BigRational::from(BigInt::from(m));
    let c = x.numer().div_ceil(x.denom());
    c.try_into().expect("bounded by m")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SixExponentials {
    pub predicted_rank: usize,
    pub numeric_rank: usize,
    pub confirmed: bool,
    /// Numeric rank below the prediction: either the certificate is wrong
    /// or something is broken.
    pub alarm: bool,
}

/// Rank 2 for a `3 × 2` matrix whose rows and columns are independent over
/// `Q̄`, confirmed numerically.
pub fn six_exponentials_check(
    m: &PadicMatrix,
    cert: &IndependenceCertificate,
    policy: &PrecisionPolicy,
) -> Result<SixExponentials, ThetaError> {
    if cert.shape() != (3, 2) || (m.nrows(), m.ncols()) != (3, 2) {
        return Err(ThetaError::Insufficient("a 3 × 2 matrix is required".into()));
    }
    if cert.row_rank() < 3 {
        return Err(ThetaError::Insufficient("the rows are dependent".into()));
    }
    if cert.column_rank() < 2 {
        return Err(ThetaError::Insufficient("the columns are dependent".into()));
    }
    let numeric = m.certified_rank_bounded(policy, 2).rank;
    Ok(SixExponentials {
        predicted_rank: 2,
        numeric_rank: numeric,
        confirmed: numeric == 2,
        alarm: numeric < 2,
    })
}
