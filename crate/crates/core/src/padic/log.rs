use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::number::{inverse_mod, prime_power, split_valuation_uint, Padic};
use super::PadicError;

/// Valuation slack in `log(xy) = log(x) + log(y)` for units `x`, `y` of
/// relative precision `N`: the logarithm has absolute precision `N`, so the
/// identity holds with no loss.
pub const LOG_ADDITIVITY_SLACK: i64 = 0;

/// Teichmüller representative of a unit: the `(p-1)`-st root of unity
/// congruent to `x` modulo `p`, found as the fixed point of `x -> x^p`.
pub fn teichmuller(x: &Padic) -> Result<Padic, PadicError> {
    if x.valuation() != Some(0) {
        return Err(PadicError::NotAUnit);
    }
    let p = x.prime();
    let prec = x.rel_precision();
    let modulus = prime_power(p, prec);
    let pb = BigUint::from(p);
    let mut w = x.unit().expect("unit").clone();
    loop {
        let next = w.modpow(&pb, &modulus);
        if next == w {
            return Ok(Padic::from_parts(p, 0, w, prec));
        }
        w = next;
    }
}

/// Iwasawa logarithm, normalised by `log_p(p) = 0`.
///
/// The input's relative precision `N` becomes the absolute precision of the
/// result. `log` of a root of unity times a power of `p` vanishes to that
/// precision.
pub fn iwasawa_log(x: &Padic) -> Result<Padic, PadicError> {
    if x.is_exact_zero() {
        return Err(PadicError::LogOfZero);
    }
    if x.is_indistinguishable_from_zero() {
        return Err(PadicError::PrecisionExhausted);
    }
    let p = x.prime();
    let n = x.rel_precision();
    let unit = x.unit().expect("nonzero");
    // w = u^((p-1) p^r) = 1 + z kills the Teichmüller part and is known to
    // n + r digits; v(z) >= r + 1 shortens the series.
    let r = (f64::from(n).sqrt() as u32).min(16);
    let m = n + r;
    let mut e = BigUint::from(p - 1);
    e *= prime_power(p, r);
    let w = unit.modpow(&e, &prime_power(p, m));
    if w.is_one() {
        return Ok(Padic::vanishing(p, i64::from(n)));
    }
    let z = w - BigUint::one();
    let s = log_one_plus(&z, p, m);
    // log(u) = s / ((p-1) p^r)
    let modn = prime_power(p, n);
    let (q, rem) = s.div_rem(&prime_power(p, r));
    debug_assert!(rem.is_zero());
    let inv = inverse_mod(&(BigUint::from(p - 1) % &modn), &modn).expect("p-1 is a unit");
    let residue = (q * inv) % &modn;
    Ok(Padic::from_residue(p, &BigInt::from(residue), i64::from(n)))
}

/// `log(1 + z)` modulo `p^m` for `z` divisible by `p` and known modulo `p^m`.
fn log_one_plus(z: &BigUint, p: u64, m: u32) -> BigUint {
    let vz = split_valuation_uint(z, p).0;
    // Terms z^k / k have valuation at least k*vz - floor(log_p k); the first
    // k where that reaches m ends the sum. Guard digits cover v_p(k).
    let mut kmax = 1u64;
    while (kmax as i64 + 1) * i64::from(vz) - i64::from(ilog(p, kmax + 1)) < i64::from(m) {
        kmax += 1;
    }
    let guard = ilog(p, kmax);
    let work = prime_power(p, m + guard);
    let out = prime_power(p, m);
    let mut acc = BigInt::zero();
    let mut zk = BigUint::one();
    for k in 1..=kmax {
        zk = (&zk * z) % &work;
        let (vk, mk) = split_valuation_uint(&BigUint::from(k), p);
        let num = &zk / prime_power(p, vk);
        let inv = inverse_mod(&(mk % &out), &out).expect("prime to p");
        let term = BigInt::from((num * inv) % &out);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.mod_floor(&BigInt::from(out))
        .to_biguint()
        .expect("non-negative")
}

fn ilog(p: u64, k: u64) -> u32 {
    let mut e = 0;
    let mut t = k;
    while t >= p {
        t /= p;
        e += 1;
    }
    e
}

/// `log_p(a/b)` to absolute precision `n`.
pub fn log_rational(a: &BigInt, b: &BigInt, p: u64, n: u32) -> Result<Padic, PadicError> {
    iwasawa_log(&Padic::from_rational(a, b, p, n)?)
}
