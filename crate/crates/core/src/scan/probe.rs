//! Search for small integer relations `Σ a_i λ^i ≡ 0 (mod p^N)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{lll_reduce, ScanError};
use crate::padic::{prime_power, Padic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Primitive, positive leading coefficient, constant term first.
    Relation(Vec<BigInt>),
    NoRelation { degree: usize, height: BigInt },
}

/// `p^{N/(d+2)}/(d+2)`, the largest accepted norm for a degree-`d` relation.
fn threshold(p: u64, n: u32, d: usize) -> f64 {
    let k = (d + 2) as f64;
    (f64::from(n) / k * (p as f64).ln()).exp() / k
}

/// Norm bound for a relation of degree `d` and height `h` after reduction.
fn reduced_bound(d: usize, h: &BigInt) -> f64 {
    let h = h.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    ((d + 1) as f64).sqrt() * h * 2f64.powf(d as f64 / 2.0)
}

/// The least `N` at which a relation of degree `d` and height `h` is
/// guaranteed to be found.
pub fn min_precision(p: u64, d: usize, h: &BigInt) -> u32 {
    let k = (d + 2) as f64;
    let need = k * (k * reduced_bound(d, h)).ln() / (p as f64).ln();
    need.ceil().max(1.0) as u32
}

pub fn probe_capacity(p: u64, n: u32, degree: usize, height: &BigInt) -> Result<(), ScanError> {
    if reduced_bound(degree, height) < threshold(p, n, degree) {
        return Ok(());
    }
    Err(ScanError::Capacity {
        have: n,
        needed: min_precision(p, degree, height),
        degree,
        height: height.to_string(),
    })
}

fn eval(coeffs: &[BigInt], x: &Padic) -> Padic {
    let p = x.prime();
    coeffs.iter().rev().fold(Padic::zero(p), |acc, c| {
        let prec = x.rel_precision().max(1);
        &(&acc * x) + &Padic::from_integer(c, p, prec).expect("odd prime")
    })
}

fn primitive(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        a.iter_mut().for_each(|c| *c /= &g);
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        a.iter_mut().for_each(|c| *c = -c.clone());
    }
    a
}

fn search(mu: &Padic, p: u64, n: u32, d: usize, height: &BigInt) -> Option<Vec<BigInt>> {
    let modulus = BigInt::from(prime_power(p, n));
    let scale = {
        let t = threshold(p, n, d).ceil();
        BigInt::from(t.min(f64::from(u32::MAX)) as u64 + 1) * 16
    };
    let mut powers = Vec::with_capacity(d + 1);
    let mut acc = Padic::one(p, n);
    for _ in 0..=d {
        powers.push(BigInt::from(acc.residue(n).unwrap_or_default()));
        acc = (&acc * mu).truncate_abs(i64::from(n));
    }
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(d + 2);
    for (i, pw) in powers.iter().enumerate() {
        let mut row = vec![BigInt::zero(); d + 2];
        row[i] = BigInt::one();
        row[d + 1] = &scale * pw;
        basis.push(row);
    }
    let mut last = vec![BigInt::zero(); d + 2];
    last[d + 1] = &scale * &modulus;
    basis.push(last);
    let t = threshold(p, n, d);
    lll_reduce(basis).into_iter().find_map(|v| {
        if !v[d + 1].is_zero() {
            return None;
        }
        let a: Vec<BigInt> = v[..=d].to_vec();
        let norm: f64 = a
            .iter()
            .map(|c| c.to_string().parse::<f64>().unwrap_or(f64::INFINITY).powi(2))
            .sum::<f64>()
            .sqrt();
        if norm >= t || a.iter().any(|c| c.abs() > *height) || a[1..].iter().all(|c| c.is_zero()) {
            return None;
        }
        Some(primitive(a))
    })
}

/// Looks for a relation of degree `1..=degree` with coefficients bounded by
/// `height`. `lambda(prec)` must return `λ` to relative precision `prec`; a
/// relation found at `N` is accepted only if it still vanishes when `λ` is
/// recomputed at `2N`.
pub fn algebraicity_probe<F>(
    lambda: F,
    n: u32,
    degree: usize,
    height: &BigInt,
) -> Result<ProbeOutcome, ScanError>
where
    F: Fn(u32) -> Result<Padic, ScanError>,
{
    if degree == 0 || !height.is_positive() {
        return Err(ScanError::Precondition("degree and height bounds must be positive".into()));
    }
    let x = lambda(n)?;
    let p = x.prime();
    probe_capacity(p, n, degree, height)?;
    if x.is_indistinguishable_from_zero() {
        let y = lambda(2 * n)?;
        if y.is_indistinguishable_from_zero() {
            return Ok(ProbeOutcome::Relation(vec![BigInt::zero(), BigInt::one()]));
        }
        return Err(ScanError::Degenerate("λ vanishes to the working precision".into()));
    }
    let inverted = x.valuation().is_some_and(|v| v < 0);
    let prep = |y: Padic| -> Result<Padic, ScanError> {
        Ok(if inverted { y.checked_inv()? } else { y })
    };
    let mu = prep(x)?;
    let mut verify: Option<Padic> = None;
    for d in 1..=degree {
        let Some(a) = search(&mu, p, n, d, height) else { continue };
        if verify.is_none() {
            verify = Some(prep(lambda(2 * n)?)?);
        }
        let check = eval(&a, verify.as_ref().expect("set above"));
        if check.valuation().is_none_or(|v| v >= 2 * i64::from(n)) {
            let mut a = a;
            if inverted {
                a.reverse();
                a = primitive(a);
            }
            return Ok(ProbeOutcome::Relation(a));
        }
    }
    Ok(ProbeOutcome::NoRelation {
        degree,
        height: height.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{hensel_roots, log_rational};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rational(a: i64, b: i64, p: u64) -> impl Fn(u32) -> Result<Padic, ScanError> {
        move |prec| Ok(Padic::from_ratio(a, b, p, prec)?)
    }

    #[test]
    fn rational_slope() {
        let r = algebraicity_probe(rational(7, 1, 5), 50, 3, &BigInt::from(100)).unwrap();
        assert_eq!(r, ProbeOutcome::Relation(ints(&[-7, 1])));
        let r = algebraicity_probe(rational(3, 10, 5), 50, 2, &BigInt::from(100)).unwrap();
        assert_eq!(r, ProbeOutcome::Relation(ints(&[-3, 10])));
    }

    #[test]
    fn gaussian_root() {
        let g = ints(&[1, 0, 1]);
        let root = move |prec: u32| Ok(hensel_roots(&g, 5, prec)?[0].clone());
        let r = algebraicity_probe(root, 60, 4, &BigInt::from(1000)).unwrap();
        assert_eq!(r, ProbeOutcome::Relation(ints(&[1, 0, 1])));
    }

    #[test]
    fn log_ratio_has_no_small_relation() {
        let f = |prec: u32| {
            let a = log_rational(&BigInt::from(6), &BigInt::one(), 5, prec + 4)?;
            let b = log_rational(&BigInt::from(11), &BigInt::one(), 5, prec + 4)?;
            Ok(a.checked_div(&b)?.truncate_rel(prec))
        };
        let r = algebraicity_probe(f, 120, 4, &BigInt::from(1000)).unwrap();
        assert!(matches!(r, ProbeOutcome::NoRelation { .. }));
    }

    #[test]
    fn capacity_error_names_the_needed_precision() {
        let e = algebraicity_probe(rational(7, 1, 5), 10, 8, &BigInt::from(10).pow(20)).unwrap_err();
        let ScanError::Capacity { needed, .. } = e else { panic!("{e:?}") };
        assert!(needed > 10);
        assert!(probe_capacity(5, needed, 8, &BigInt::from(10).pow(20)).is_ok());
    }
}
