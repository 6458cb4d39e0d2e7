use crate::padic::{Padic, PrecisionPolicy};

use super::RegulatorError;

/// A dense matrix of p-adic numbers over a single prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicMatrix {
    p: u64,
    cols: usize,
    rows: Vec<Vec<Padic>>,
}

/// Result of valuation-pivoted elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    /// Number of pivots found; never exceeds the true rank.
    pub rank: usize,
    /// True when the rank reached the bound it was checked against, or the
    /// untouched remainder is exactly zero.
    pub saturated: bool,
    /// `(row, column)` of each pivot, in elimination order.
    pub pivots: Vec<(usize, usize)>,
}

impl PadicMatrix {
    pub fn new(p: u64, cols: usize, rows: Vec<Vec<Padic>>) -> Result<Self, RegulatorError> {
        for r in &rows {
            if r.len() != cols {
                return Err(RegulatorError::Shape(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            if r.iter().any(|x| x.prime() != p) {
                return Err(RegulatorError::Shape("entries over different primes".into()));
            }
        }
        Ok(PadicMatrix { p, cols, rows })
    }

    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        PadicMatrix {
            p,
            cols,
            rows: vec![vec![Padic::zero(p); cols]; rows],
        }
    }

    /// Builds from rationals `a/b` (given as integer pairs) at precision `n`.
    pub fn from_ratios(p: u64, n: u32, rows: &[Vec<(i64, i64)>]) -> Result<Self, RegulatorError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(a, b)| Padic::from_ratio(a, b, p, n).map_err(RegulatorError::Padic))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PadicMatrix::new(p, cols, rows)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Padic {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Padic) {
        self.rows[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[Padic] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Padic>] {
        &self.rows
    }

    pub fn push_row(&mut self, row: Vec<Padic>) -> Result<(), RegulatorError> {
        if row.len() != self.cols {
            return Err(RegulatorError::Shape("row length".into()));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Rows stacked below `self`.
    pub fn stack(&self, other: &PadicMatrix) -> Result<PadicMatrix, RegulatorError> {
        if other.cols != self.cols {
            return Err(RegulatorError::Shape(format!(
                "cannot stack {} columns over {}",
                self.cols, other.cols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(PadicMatrix {
            p: self.p,
            cols: self.cols,
            rows,
        })
    }

    /// The first `k` columns.
    pub fn leading_columns(&self, k: usize) -> PadicMatrix {
        PadicMatrix {
            p: self.p,
            cols: k,
            rows: self.rows.iter().map(|r| r[..k].to_vec()).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> PadicMatrix {
        PadicMatrix {
            p: self.p,
            cols: self.cols,
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &[Padic]) -> Result<Vec<Padic>, RegulatorError> {
        if v.len() != self.cols {
            return Err(RegulatorError::Shape("vector length".into()));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(Padic::zero(self.p), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Minimum valuation over all entries (`None` if every entry is zero).
    pub fn min_valuation(&self) -> Option<i64> {
        self.rows.iter().flatten().filter_map(|x| x.valuation()).min()
    }

    /// Rank certificate against the shape bound `min(m, ℓ)`.
    pub fn certified_rank(&self, policy: &PrecisionPolicy) -> RankCertificate {
        self.certified_rank_bounded(policy, self.nrows().min(self.ncols()))
    }

    /// Full-pivoting elimination: the pivot is the remaining entry of least
    /// valuation (ties broken row-major), and elimination stops once every
    /// remaining entry is an apparent zero under `policy` or `bound` pivots
    /// have been found.
    pub fn certified_rank_bounded(&self, policy: &PrecisionPolicy, bound: usize) -> RankCertificate {
        let m = self.nrows();
        let n = self.ncols();
        let mut a = self.rows.clone();
        let mut row_used = vec![false; m];
        let mut col_used = vec![false; n];
        let mut pivots = Vec::new();
        let bound = bound.min(m).min(n);
        while pivots.len() < bound {
            let mut best: Option<(i64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate() {
                if row_used[i] {
                    continue;
                }
                for (j, x) in row.iter().enumerate() {
                    if col_used[j] || policy.is_apparent_zero(x) {
                        continue;
                    }
                    let v = x.valuation().expect("not an apparent zero");
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            row_used[pi] = true;
            col_used[pj] = true;
            pivots.push((pi, pj));
            let pivot = a[pi][pj].clone();
            for i in 0..m {
                if row_used[i] || a[i][pj].is_exact_zero() {
                    continue;
                }
                let f = match a[i][pj].checked_div(&pivot) {
                    Ok(f) => f,
                    Err(_) => continue,
                };
                for j in 0..n {
                    if col_used[j] && j != pj {
                        continue;
                    }
                    let t = &f * &a[pi][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        let rank = pivots.len();
        let rest_exact = (0..m).filter(|&i| !row_used[i]).all(|i| {
            (0..n)
                .filter(|&j| !col_used[j])
                .all(|j| a[i][j].is_exact_zero())
        });
        RankCertificate {
            rank,
            saturated: rank == bound || rest_exact,
            pivots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn pol(n: u32) -> PrecisionPolicy {
        PrecisionPolicy::new(n)
    }

    fn exact_rank(rows: &[Vec<(i64, i64)>]) -> usize {
        let q: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect())
            .collect();
        crate::algebra::rational_rank(&q)
    }

    #[test]
    fn identity_is_full_rank() {
        let m = PadicMatrix::from_ratios(
            5,
            20,
            &[
                vec![(1, 1), (0, 1), (0, 1)],
                vec![(0, 1), (1, 1), (0, 1)],
                vec![(0, 1), (0, 1), (1, 1)],
            ],
        )
        .unwrap();
        let c = m.certified_rank(&pol(20));
        assert_eq!((c.rank, c.saturated), (3, true));
    }

    #[test]
    fn vanishing_matrix_is_unknowable() {
        let m = PadicMatrix::new(5, 2, vec![vec![Padic::vanishing(5, 20); 2]; 2]).unwrap();
        let c = m.certified_rank(&pol(20));
        assert_eq!((c.rank, c.saturated), (0, false));
    }

    #[test]
    fn singular_example() {
        let rows = vec![vec![(5, 1), (1, 1)], vec![(25, 1), (5, 1)]];
        assert_eq!(exact_rank(&rows), 1);
        let m = PadicMatrix::from_ratios(5, 20, &rows).unwrap();
        let c = m.certified_rank(&pol(20));
        assert_eq!((c.rank, c.saturated), (1, false));
        assert_eq!(c.pivots, vec![(0, 1)]);
    }

    #[test]
    fn pivot_choice_is_row_major_on_ties() {
        let m = PadicMatrix::from_ratios(7, 10, &[vec![(7, 1), (2, 1)], vec![(3, 1), (1, 1)]]).unwrap();
        let c = m.certified_rank(&pol(10));
        assert_eq!(c.pivots[0], (0, 1));
        assert_eq!(c.rank, 2);
    }

    #[test]
    fn threshold_hides_small_entries() {
        let m = PadicMatrix::from_ratios(3, 10, &[vec![(1, 1), (0, 1)], vec![(0, 1), (3i64.pow(8), 1)]]).unwrap();
        assert_eq!(m.certified_rank(&pol(10)).rank, 2);
        let strict = PrecisionPolicy::with_threshold(10, 8).unwrap();
        let c = m.certified_rank(&strict);
        assert_eq!((c.rank, c.saturated), (1, false));
    }
}
