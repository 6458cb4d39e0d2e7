use super::ScanError;
use crate::padic::{Padic, PrecisionPolicy};
use crate::regulators::PadicMatrix;

/// A finite slope `s_1/s_2` or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Padic),
    Infinity,
}

impl Slope {
    pub fn from_ratio(a: i64, b: i64, p: u64, prec: u32) -> Result<Self, ScanError> {
        if b == 0 {
            return Ok(Slope::Infinity);
        }
        Ok(Slope::Finite(Padic::from_ratio(a, b, p, prec)?))
    }

    /// Decimal residue modulo `p^prec` for integral slopes, `u*p^v` (with
    /// `u` the unit residue) otherwise, and `inf`.
    pub fn digits(&self, prec: u32) -> String {
        match self {
            Slope::Infinity => "inf".into(),
            Slope::Finite(x) => padic_digits(x, prec),
        }
    }
}

pub(crate) fn padic_digits(x: &Padic, prec: u32) -> String {
    match x.valuation() {
        None => "0".into(),
        Some(v) if v >= 0 => {
            let abs = x.abs_precision().unwrap_or(0).min(i64::from(prec)).max(0) as u32;
            x.residue(abs).map_or_else(|| "0".into(), |r| r.to_string())
        }
        Some(v) => {
            let unit = x.unit().expect("nonzero");
            format!("{unit}*{}^{v}", x.prime())
        }
    }
}

/// Projective coordinates `S = (s_1, …, s_n)` of a `Z_p`-extension of `k`,
/// scaled so that the first coordinate of least valuation is `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    s: Vec<Padic>,
}

impl Coordinates {
    pub fn new(s: Vec<Padic>) -> Result<Self, ScanError> {
        let (pos, _) = s
            .iter()
            .enumerate()
            .filter_map(|(i, x)| x.valuation().map(|v| (i, v)))
            .min_by_key(|&(i, v)| (v, i))
            .ok_or_else(|| ScanError::Precondition("all coordinates are indistinguishable from zero".into()))?;
        let pivot = s[pos].clone();
        let p = pivot.prime();
        let prec = pivot.rel_precision();
        let s = s
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if i == pos {
                    Ok(Padic::one(p, prec))
                } else {
                    x.checked_div(&pivot).map_err(ScanError::from)
                }
            })
            .collect::<Result<Vec<_>, ScanError>>()?;
        Ok(Coordinates { s })
    }

    pub fn from_integers(p: u64, prec: u32, s: &[i64]) -> Result<Self, ScanError> {
        let v = s
            .iter()
            .map(|&a| Padic::from_i64(a, p, prec).map_err(ScanError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Coordinates::new(v)
    }

    /// `(λ, 1)`, or `(1, 0)` for the point at infinity.
    pub fn from_slope(slope: &Slope, p: u64, prec: u32) -> Result<Self, ScanError> {
        match slope {
            Slope::Infinity => Coordinates::new(vec![Padic::one(p, prec), Padic::zero(p)]),
            Slope::Finite(x) => Coordinates::new(vec![x.clone(), Padic::one(p, prec)]),
        }
    }

    pub fn values(&self) -> &[Padic] {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn scale(&self, c: &Padic) -> Result<Self, ScanError> {
        Coordinates::new(self.s.iter().map(|x| x * c).collect())
    }

    /// `s_1/s_2` for `n = 2`.
    pub fn slope(&self) -> Option<Slope> {
        if self.s.len() != 2 {
            return None;
        }
        Some(match self.s[1].checked_inv() {
            Err(_) => Slope::Infinity,
            Ok(inv) => Slope::Finite(&self.s[0] * &inv),
        })
    }

    /// The slope digits for `n = 2`, otherwise the coordinate residues joined
    /// by `:`.
    pub fn digits(&self, prec: u32) -> String {
        match self.slope() {
            Some(s) => s.digits(prec),
            None => self
                .s
                .iter()
                .map(|x| padic_digits(x, prec))
                .collect::<Vec<_>>()
                .join(":"),
        }
    }

    /// True when `S` is proportional to `(1, …, 1)` within `policy`.
    pub fn is_cyclotomic(&self, policy: &PrecisionPolicy) -> bool {
        self.s.windows(2).all(|w| policy.is_apparent_zero(&(&w[0] - &w[1])))
    }

    /// `n = 2` and `S` proportional to `(1, −1)`.
    pub fn is_anticyclotomic(&self, policy: &PrecisionPolicy) -> bool {
        self.s.len() == 2 && policy.is_apparent_zero(&(&self.s[0] + &self.s[1]))
    }
}

/// A basis of `ker M` (column vectors of length `ncols`), by Gauss–Jordan
/// elimination with valuation pivoting. Columns without a certified pivot
/// are treated as free.
pub fn kernel_basis(m: &PadicMatrix, policy: &PrecisionPolicy) -> Vec<Vec<Padic>> {
    let p = m.prime();
    let ncols = m.ncols();
    let mut a: Vec<Vec<Padic>> = m.rows().to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row_used = vec![false; a.len()];
    let mut col_used = vec![false; ncols];
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate() {
            if row_used[i] {
                continue;
            }
            for (j, x) in row.iter().enumerate() {
                if col_used[j] || policy.is_apparent_zero(x) {
                    continue;
                }
                let v = x.valuation().expect("nonzero");
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        row_used[pi] = true;
        col_used[pj] = true;
        let inv = a[pi][pj].checked_inv().expect("certified pivot");
        a[pi] = a[pi].iter().map(|x| x * &inv).collect();
        for i in 0..a.len() {
            if i == pi || a[i][pj].is_exact_zero() {
                continue;
            }
            let f = a[i][pj].clone();
            for j in 0..ncols {
                let t = &f * &a[pi][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
        pivots.push((pi, pj));
    }
    let prec = policy.precision;
    (0..ncols)
        .filter(|&j| !col_used[j])
        .map(|free| {
            let mut x = vec![Padic::zero(p); ncols];
            x[free] = Padic::one(p, prec);
            for &(pi, pj) in &pivots {
                x[pj] = -a[pi][free].clone();
            }
            x
        })
        .collect()
}

/// `Σ c_i b_i`.
pub(crate) fn combine(basis: &[Vec<Padic>], c: &[Padic]) -> Vec<Padic> {
    let n = basis[0].len();
    let p = basis[0][0].prime();
    (0..n)
        .map(|j| {
            basis
                .iter()
                .zip(c)
                .fold(Padic::zero(p), |acc, (b, ci)| &acc + &(&b[j] * ci))
        })
        .collect()
}
