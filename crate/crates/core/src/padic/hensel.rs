use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use super::number::{check_odd_prime, inverse_mod, prime_power, Padic};
use super::PadicError;

/// Evaluates an integer polynomial (constant term first) at a p-adic point.
pub fn eval_int_poly(coeffs: &[BigInt], x: &Padic) -> Padic {
    let p = x.prime();
    let mut acc = Padic::zero(p);
    for c in coeffs.iter().rev() {
        acc = &acc * x;
        if !c.is_zero() {
            let prec = x.rel_precision().max(1) + 64;
            acc = &acc + &Padic::from_integer(c, p, prec).expect("odd prime");
        }
    }
    acc
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// All roots of `g` in `Z_p` to absolute precision `n`, sorted by their
/// residue modulo `p`.
///
/// Each root modulo `p` must be simple; Newton iteration then doubles the
/// number of correct digits per step.
pub fn hensel_roots(g: &[BigInt], p: u64, n: u32) -> Result<Vec<Padic>, PadicError> {
    check_odd_prime(p)?;
    if n == 0 {
        return Err(PadicError::InvalidPrecision(n));
    }
    let mut g: Vec<BigInt> = g.to_vec();
    while g.last().is_some_and(|c| c.is_zero()) {
        g.pop();
    }
    let Some(lead) = g.last() else {
        return Err(PadicError::ZeroPolynomial);
    };
    let pb = BigInt::from(p);
    if lead.mod_floor(&pb).is_zero() {
        return Err(PadicError::LeadingCoefficientDivisible(p));
    }
    let dg = derivative(&g);
    let mut roots = Vec::new();
    for r in 0..p {
        let rb = BigInt::from(r);
        if !eval_mod(&g, &rb, &pb).is_zero() {
            continue;
        }
        if eval_mod(&dg, &rb, &pb).is_zero() {
            return Err(PadicError::RepeatedRootModP { root: r, p });
        }
        roots.push(lift_root(&g, &dg, rb, p, n));
    }
    Ok(roots
        .into_iter()
        .map(|r| Padic::from_residue(p, &r, i64::from(n)))
        .collect())
}

fn lift_root(g: &[BigInt], dg: &[BigInt], r0: BigInt, p: u64, n: u32) -> BigInt {
    let mut r = r0;
    let mut k = 1u32;
    while k < n {
        k = (2 * k).min(n);
        let m = BigInt::from(prime_power(p, k));
        let gr = eval_mod(g, &r, &m);
        let dr = eval_mod(dg, &r, &m)
            .to_biguint()
            .expect("reduced residue is non-negative");
        let inv = inverse_mod(&dr, &BigUint::try_from(&m).expect("positive"))
            .expect("simple root");
        r = (r - gr * BigInt::from(inv)).mod_floor(&m);
    }
    r
}
