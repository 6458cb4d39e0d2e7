use num_rational::BigRational;
use num_traits::Zero;

use super::cyclotomic::CyclotomicNumber;

/// Rank of a matrix over `Q(ζ_m)` by exact Gaussian elimination.
pub fn cyclotomic_rank(rows: &[Vec<CyclotomicNumber>]) -> usize {
    let mut a: Vec<Vec<CyclotomicNumber>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][col].inverse().expect("nonzero pivot");
        for r in rank + 1..m {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[rank][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..m {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[rank][col];
            for c in col..n {
                let t = &f * &a[rank][c];
                a[r][c] -= t;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rational_matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let k = b.len();
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    (0..k).fold(BigRational::zero(), |acc, t| acc + &row[t] * &b[t][j])
                })
                .collect()
        })
        .collect()
}

pub fn is_rational_invertible(a: &[Vec<BigRational>]) -> bool {
    a.iter().all(|r| r.len() == a.len()) && rational_rank(a) == a.len()
}
