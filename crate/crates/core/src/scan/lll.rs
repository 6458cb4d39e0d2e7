//! Integral LLL reduction with `δ = 99/100`, exact over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Numerator and denominator of the Lovász constant.
pub const DELTA: (i64, i64) = (99, 100);

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<BigInt>()
}

/// Nearest integer to `a/b` for `b > 0`, ties upward.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * BigInt::from(2) + b).div_floor(&(b * BigInt::from(2)))
}

struct State {
    b: Vec<Vec<BigInt>>,
    // d[0] = 1, d[i] = Gram determinant of the first i vectors
    d: Vec<BigInt>,
    // lam[k][j] for j < k, 0-based vectors
    lam: Vec<Vec<BigInt>>,
}

impl State {
    fn red(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        if (&self.lam[k][l] * BigInt::from(2)).abs() <= *dl {
            return;
        }
        let q = round_div(&self.lam[k][l], dl);
        let bl = self.b[l].clone();
        for (x, y) in self.b[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        self.lam[k][l] -= &q * dl;
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let (dkm2, dkm1, dk) = (self.d[k - 1].clone(), self.d[k].clone(), self.d[k + 1].clone());
        let bb = (&dkm2 * &dk + &lam * &lam) / &dkm1;
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&dk * &self.lam[i][k - 1] - &lam * &t) / &dkm1;
            self.lam[i][k - 1] = (&bb * &t + &lam * &self.lam[i][k]) / &dk;
        }
        self.d[k] = bb;
    }
}

/// Reduces the rows of `basis`, which must be linearly independent.
pub fn lll_reduce(basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let mut s = State {
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
        b: basis,
    };
    s.d[0] = BigInt::from(1);
    s.d[1] = dot(&s.b[0], &s.b[0]);
    assert!(!s.d[1].is_zero(), "dependent basis");
    let (dn, dd) = (BigInt::from(DELTA.0), BigInt::from(DELTA.1));
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&s.b[k], &s.b[j]);
                for i in 0..j {
                    u = (&s.d[i + 1] * &u - &s.lam[k][i] * &s.lam[j][i]) / &s.d[i];
                }
                if j < k {
                    s.lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "dependent basis");
                    s.d[k + 1] = u;
                }
            }
        }
        loop {
            s.red(k, k - 1);
            let lhs = &dd * &s.d[k + 1] * &s.d[k - 1];
            let rhs = &dn * &s.d[k] * &s.d[k] - &dd * &s.lam[k][k - 1] * &s.lam[k][k - 1];
            if lhs < rhs {
                s.swap(k, kmax);
                if k > 1 {
                    k -= 1;
                }
            } else {
                break;
            }
        }
        for l in (0..k - 1).rev() {
            s.red(k, l);
        }
        k += 1;
    }
    s.b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational_rank;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn norm2(v: &[BigInt]) -> BigInt {
        dot(v, v)
    }

    #[test]
    fn cohen_example() {
        let r = lll_reduce(m(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]));
        assert_eq!(r, m(&[&[0, 1, 0], &[1, 0, 1], &[-1, 0, 2]]));
    }

    #[test]
    fn finds_short_vector_in_knapsack() {
        // 3·x0 + 5·x1 − 8·x2 = 0 hides (1, 1, 1)
        let c = 1000;
        let r = lll_reduce(m(&[&[1, 0, 0, 3 * c], &[0, 1, 0, 5 * c], &[0, 0, 1, -8 * c]]));
        assert_eq!(norm2(&r[0]), BigInt::from(3));
    }

    fn gram_det(b: &[Vec<BigInt>]) -> BigRational {
        let n = b.len();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| BigRational::from(dot(&b[i], &b[j]))).collect())
            .collect();
        let mut det = BigRational::from(BigInt::from(1));
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return BigRational::zero();
            };
            a.swap(c, pr);
            det *= a[c][c].clone();
            for r in c + 1..n {
                let f = &a[r][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
        det
    }

    proptest! {
        #[test]
        fn preserves_lattice_and_is_size_reduced(entries in proptest::collection::vec(-50i64..50, 12)) {
            let b: Vec<Vec<BigInt>> = entries.chunks(4).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let rows: Vec<Vec<BigRational>> = b.iter().map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect()).collect();
            prop_assume!(rational_rank(&rows) == 3);
            let r = lll_reduce(b.clone());
            prop_assert_eq!(gram_det(&b), gram_det(&r));
            let shortest_in = b.iter().map(|v| norm2(v)).min().unwrap();
            // first vector within 2^{(n-1)/2} of any input vector
            prop_assert!(norm2(&r[0]) <= shortest_in * 4);
        }
    }
}
