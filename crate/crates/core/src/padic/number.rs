use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::PadicError;

thread_local! {
    static POWERS: RefCell<HashMap<(u64, u32), BigUint>> = RefCell::new(HashMap::new());
}

/// `p^k` as a big integer, memoised per thread.
pub fn prime_power(p: u64, k: u32) -> BigUint {
    POWERS.with(|cache| {
        let mut cache = cache.borrow_mut();
        if let Some(v) = cache.get(&(p, k)) {
            return v.clone();
        }
        let v = BigUint::from(p).pow(k);
        if cache.len() > 4096 {
            cache.clear();
        }
        cache.insert((p, k), v.clone());
        v
    })
}

/// Trial-division primality test; primes here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_odd_prime(p: u64) -> Result<(), PadicError> {
    if p == 2 || !is_prime(p) {
        return Err(PadicError::NotOddPrime(p));
    }
    Ok(())
}

/// Splits `n = p^v * m` with `p ∤ m`; `n` must be nonzero.
pub fn split_valuation_uint(n: &BigUint, p: u64) -> (u32, BigUint) {
    let pb = BigUint::from(p);
    let mut v = 0u32;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

pub fn split_valuation_int(n: &BigInt, p: u64) -> (u32, BigInt) {
    let (v, m) = split_valuation_uint(n.magnitude(), p);
    (v, BigInt::from_biguint(n.sign(), m))
}

/// Inverse of a unit modulo `modulus`.
pub(crate) fn inverse_mod(a: &BigUint, modulus: &BigUint) -> Option<BigUint> {
    if modulus.is_one() {
        return Some(BigUint::zero());
    }
    a.modinv(modulus)
}

fn to_residue(x: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    x.mod_floor(&m).to_biguint().expect("mod_floor is non-negative")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// The canonical exact zero.
    Zero,
    /// A value only known to be divisible by `p^abs`.
    Vanishing { abs: i64 },
    /// `p^val * unit + O(p^(val + prec))` with `p ∤ unit` and `unit < p^prec`.
    Unit { val: i64, unit: BigUint, prec: u32 },
}

/// An element of `Q_p` with capped relative precision.
///
/// Nonzero values carry a valuation, a unit part known modulo `p^prec`, and
/// the relative precision `prec`. Zero comes in two flavours: the exact zero,
/// and a value that is only known to vanish to some absolute precision
/// ("indistinguishable from zero"). Arithmetic never increases the relative
/// precision of its operands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u64,
    repr: Repr,
}

/// Working precision together with the valuation at which an entry is
/// treated as an apparent zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PrecisionPolicy {
    pub precision: u32,
    pub zero_threshold: i64,
}

impl PrecisionPolicy {
    pub fn new(precision: u32) -> Self {
        PrecisionPolicy {
            precision,
            zero_threshold: i64::from(precision),
        }
    }

    pub fn with_threshold(precision: u32, zero_threshold: i64) -> Result<Self, PadicError> {
        if zero_threshold > i64::from(precision) {
            return Err(PadicError::InvalidPolicy {
                precision,
                zero_threshold,
            });
        }
        Ok(PrecisionPolicy {
            precision,
            zero_threshold,
        })
    }

    /// True when `x` cannot be separated from zero under this policy.
    pub fn is_apparent_zero(&self, x: &Padic) -> bool {
        match x.valuation() {
            None => true,
            Some(v) => v >= self.zero_threshold,
        }
    }
}

impl Padic {
    pub fn zero(p: u64) -> Self {
        Padic { p, repr: Repr::Zero }
    }

    /// A value known only to be `O(p^abs)`.
    pub fn vanishing(p: u64, abs: i64) -> Self {
        Padic {
            p,
            repr: Repr::Vanishing { abs },
        }
    }

    pub fn one(p: u64, prec: u32) -> Self {
        Padic::from_parts(p, 0, BigUint::one(), prec)
    }

    /// Builds `p^val * unit` to relative precision `prec`; `unit` must be
    /// prime to `p`.
    pub fn from_parts(p: u64, val: i64, unit: BigUint, prec: u32) -> Self {
        assert!(prec >= 1, "relative precision must be positive");
        let unit = unit % prime_power(p, prec);
        debug_assert!(!(&unit % BigUint::from(p)).is_zero());
        Padic {
            p,
            repr: Repr::Unit { val, unit, prec },
        }
    }

    /// `a / b` in `Q_p` with relative precision `prec`.
    pub fn from_rational(a: &BigInt, b: &BigInt, p: u64, prec: u32) -> Result<Self, PadicError> {
        check_odd_prime(p)?;
        if prec == 0 {
            return Err(PadicError::InvalidPrecision(prec));
        }
        if b.is_zero() {
            return Err(PadicError::ZeroDenominator);
        }
        if a.is_zero() {
            return Ok(Padic::zero(p));
        }
        let (va, ma) = split_valuation_int(a, p);
        let (vb, mb) = split_valuation_int(b, p);
        let modulus = prime_power(p, prec);
        let num = to_residue(&ma, &modulus);
        let den = to_residue(&mb, &modulus);
        let inv = inverse_mod(&den, &modulus).expect("denominator is prime to p");
        let unit = (num * inv) % &modulus;
        Ok(Padic {
            p,
            repr: Repr::Unit {
                val: i64::from(va) - i64::from(vb),
                unit,
                prec,
            },
        })
    }

    pub fn from_ratio(a: i64, b: i64, p: u64, prec: u32) -> Result<Self, PadicError> {
        Padic::from_rational(&BigInt::from(a), &BigInt::from(b), p, prec)
    }

    pub fn from_bigrational(q: &BigRational, p: u64, prec: u32) -> Result<Self, PadicError> {
        Padic::from_rational(q.numer(), q.denom(), p, prec)
    }

    pub fn from_integer(a: &BigInt, p: u64, prec: u32) -> Result<Self, PadicError> {
        Padic::from_rational(a, &BigInt::one(), p, prec)
    }

    pub fn from_i64(a: i64, p: u64, prec: u32) -> Result<Self, PadicError> {
        Padic::from_ratio(a, 1, p, prec)
    }

    /// The p-adic integer whose residue modulo `p^abs` is `r`.
    pub fn from_residue(p: u64, r: &BigInt, abs: i64) -> Self {
        if abs <= 0 {
            return Padic::vanishing(p, abs.max(0));
        }
        let modulus = prime_power(p, abs as u32);
        let r = to_residue(r, &modulus);
        if r.is_zero() {
            return Padic::vanishing(p, abs);
        }
        let (v, unit) = split_valuation_uint(&r, p);
        let prec = abs as u32 - v;
        Padic {
            p,
            repr: Repr::Unit {
                val: i64::from(v),
                unit,
                prec,
            },
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `None` for both kinds of zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { val, .. } => Some(*val),
            _ => None,
        }
    }

    /// Absolute precision; `None` for the exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Vanishing { abs } => Some(*abs),
            Repr::Unit { val, prec, .. } => Some(val + i64::from(*prec)),
        }
    }

    /// Relative precision; zero for either zero.
    pub fn rel_precision(&self) -> u32 {
        match &self.repr {
            Repr::Unit { prec, .. } => *prec,
            _ => 0,
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// True for the exact zero and for values known only to vanish.
    pub fn is_indistinguishable_from_zero(&self) -> bool {
        !matches!(self.repr, Repr::Unit { .. })
    }

    /// The residue modulo `p^abs` of a p-adic integer. Fails when the value
    /// is not integral or is not known to absolute precision `abs`.
    pub fn residue(&self, abs: u32) -> Option<BigUint> {
        let modulus = prime_power(self.p, abs);
        match &self.repr {
            Repr::Zero => Some(BigUint::zero()),
            Repr::Vanishing { abs: a } => (i64::from(abs) <= *a).then(BigUint::zero),
            Repr::Unit { val, unit, prec } => {
                if *val < 0 || i64::from(abs) > val + i64::from(*prec) {
                    return None;
                }
                Some((unit * prime_power(self.p, *val as u32)) % modulus)
            }
        }
    }

    /// Signed representative in `(-p^abs/2, p^abs/2]` of the residue.
    pub fn balanced_residue(&self, abs: u32) -> Option<BigInt> {
        let r = BigInt::from(self.residue(abs)?);
        let m = BigInt::from(prime_power(self.p, abs));
        if &r * 2 > m {
            Some(r - m)
        } else {
            Some(r)
        }
    }

    /// Caps the absolute precision at `abs`.
    pub fn truncate_abs(&self, abs: i64) -> Padic {
        match &self.repr {
            Repr::Zero => Padic::vanishing(self.p, abs),
            Repr::Vanishing { abs: a } => Padic::vanishing(self.p, (*a).min(abs)),
            Repr::Unit { val, unit, prec } => {
                if abs <= *val {
                    return Padic::vanishing(self.p, abs);
                }
                let new_prec = (*prec).min((abs - val) as u32);
                Padic::from_parts(self.p, *val, unit.clone(), new_prec)
            }
        }
    }

    /// Caps the relative precision at `prec`.
    pub fn truncate_rel(&self, prec: u32) -> Padic {
        match &self.repr {
            Repr::Unit { val, unit, prec: q } if prec < *q && prec >= 1 => {
                Padic::from_parts(self.p, *val, unit.clone(), prec)
            }
            Repr::Unit { val, .. } if prec == 0 => Padic::vanishing(self.p, *val),
            _ => self.clone(),
        }
    }

    fn assert_same_prime(&self, other: &Padic) {
        assert_eq!(self.p, other.p, "p-adic operands over different primes");
    }

    fn add_signed(&self, other: &Padic, negate: bool) -> Padic {
        self.assert_same_prime(other);
        let p = self.p;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) => {
                if negate {
                    -other
                } else {
                    other.clone()
                }
            }
            (_, Repr::Zero) => self.clone(),
            (Repr::Vanishing { abs: a }, Repr::Vanishing { abs: b }) => {
                Padic::vanishing(p, (*a).min(*b))
            }
            (Repr::Vanishing { abs }, Repr::Unit { .. }) => {
                let y = if negate { -other } else { other.clone() };
                y.truncate_abs(*abs)
            }
            (Repr::Unit { .. }, Repr::Vanishing { abs }) => self.truncate_abs(*abs),
            (
                Repr::Unit {
                    val: vx,
                    unit: ux,
                    prec: nx,
                },
                Repr::Unit {
                    val: vy,
                    unit: uy,
                    prec: ny,
                },
            ) => {
                let abs = (vx + i64::from(*nx)).min(vy + i64::from(*ny));
                let vmin = (*vx).min(*vy);
                let digits = (abs - vmin) as u32;
                let modulus = prime_power(p, digits);
                let a = (ux * prime_power(p, (vx - vmin) as u32)) % &modulus;
                let b = (uy * prime_power(p, (vy - vmin) as u32)) % &modulus;
                let s = if negate {
                    (a + &modulus - b) % &modulus
                } else {
                    (a + b) % &modulus
                };
                if s.is_zero() {
                    return Padic::vanishing(p, abs);
                }
                let (t, unit) = split_valuation_uint(&s, p);
                Padic {
                    p,
                    repr: Repr::Unit {
                        val: vmin + i64::from(t),
                        unit,
                        prec: digits - t,
                    },
                }
            }
        }
    }

    fn mul_impl(&self, other: &Padic) -> Padic {
        self.assert_same_prime(other);
        let p = self.p;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Padic::zero(p),
            (Repr::Vanishing { abs: a }, Repr::Vanishing { abs: b }) => Padic::vanishing(p, a + b),
            (Repr::Vanishing { abs }, Repr::Unit { val, .. })
            | (Repr::Unit { val, .. }, Repr::Vanishing { abs }) => Padic::vanishing(p, abs + val),
            (
                Repr::Unit {
                    val: vx,
                    unit: ux,
                    prec: nx,
                },
                Repr::Unit {
                    val: vy,
                    unit: uy,
                    prec: ny,
                },
            ) => {
                let prec = (*nx).min(*ny);
                let modulus = prime_power(p, prec);
                Padic {
                    p,
                    repr: Repr::Unit {
                        val: vx + vy,
                        unit: (ux * uy) % modulus,
                        prec,
                    },
                }
            }
        }
    }

    /// Multiplicative inverse.
    pub fn checked_inv(&self) -> Result<Padic, PadicError> {
        match &self.repr {
            Repr::Zero => Err(PadicError::DivisionByZero),
            Repr::Vanishing { .. } => Err(PadicError::PrecisionExhausted),
            Repr::Unit { val, unit, prec } => {
                let modulus = prime_power(self.p, *prec);
                let inv = inverse_mod(unit, &modulus).expect("unit part is prime to p");
                Ok(Padic {
                    p: self.p,
                    repr: Repr::Unit {
                        val: -val,
                        unit: inv,
                        prec: *prec,
                    },
                })
            }
        }
    }

    /// Division; dividing by a value that merely vanishes to the working
    /// precision is reported as [`PadicError::PrecisionExhausted`].
    pub fn checked_div(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.assert_same_prime(other);
        let inv = other.checked_inv()?;
        match &self.repr {
            Repr::Zero => Ok(Padic::zero(self.p)),
            Repr::Vanishing { abs } => Ok(Padic::vanishing(
                self.p,
                abs - other.valuation().expect("inverse exists"),
            )),
            Repr::Unit { .. } => Ok(self.mul_impl(&inv)),
        }
    }

    pub fn pow(&self, mut e: u64) -> Padic {
        let mut base = self.clone();
        let mut acc: Option<Padic> = None;
        if e == 0 {
            let prec = self.rel_precision().max(1);
            return Padic::one(self.p, prec);
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.expect("exponent was positive")
    }

    /// Multiplies by an integer exactly (the integer costs no precision).
    pub fn scale_int(&self, k: &BigInt) -> Padic {
        if k.is_zero() {
            return Padic::zero(self.p);
        }
        let (v, m) = split_valuation_int(k, self.p);
        match &self.repr {
            Repr::Zero => Padic::zero(self.p),
            Repr::Vanishing { abs } => Padic::vanishing(self.p, abs + i64::from(v)),
            Repr::Unit { val, unit, prec } => {
                let modulus = prime_power(self.p, *prec);
                let m = to_residue(&m, &modulus);
                Padic {
                    p: self.p,
                    repr: Repr::Unit {
                        val: val + i64::from(v),
                        unit: (unit * m) % modulus,
                        prec: *prec,
                    },
                }
            }
        }
    }

    /// Multiplies by a rational exactly (numerator and denominator cost no
    /// precision).
    pub fn scale_rational(&self, q: &BigRational) -> Padic {
        if q.is_zero() {
            return Padic::zero(self.p);
        }
        let num = self.scale_int(q.numer());
        let (v, m) = split_valuation_int(q.denom(), self.p);
        match &num.repr {
            Repr::Zero => num,
            Repr::Vanishing { abs } => Padic::vanishing(self.p, abs - i64::from(v)),
            Repr::Unit { val, unit, prec } => {
                let modulus = prime_power(self.p, *prec);
                let m = to_residue(&m, &modulus);
                let inv = inverse_mod(&m, &modulus).expect("prime to p");
                Padic {
                    p: self.p,
                    repr: Repr::Unit {
                        val: val - i64::from(v),
                        unit: (unit * inv) % modulus,
                        prec: *prec,
                    },
                }
            }
        }
    }

    /// True when `self - other` is indistinguishable from zero.
    pub fn agrees_with(&self, other: &Padic) -> bool {
        (self - other).is_indistinguishable_from_zero()
    }

    /// Valuation of `self - other`, or its absolute precision when the
    /// difference vanishes; `None` if both are the same exact value.
    pub fn agreement(&self, other: &Padic) -> Option<i64> {
        let d = self - other;
        d.valuation().or_else(|| d.abs_precision())
    }

    /// Base-p digits of the unit part, least significant first.
    pub fn unit_digits(&self) -> Vec<u64> {
        let Some(unit) = self.unit() else {
            return Vec::new();
        };
        let mut digits = Vec::with_capacity(self.rel_precision() as usize);
        let pb = BigUint::from(self.p);
        let mut u = unit.clone();
        for _ in 0..self.rel_precision() {
            let (q, r) = u.div_rem(&pb);
            digits.push(r.to_u64().unwrap_or(0));
            u = q;
        }
        digits
    }

    /// A uniformly random p-adic integer modulo `p^abs` (possibly vanishing).
    pub fn random_integer<R: rand::Rng + ?Sized>(p: u64, abs: u32, rng: &mut R) -> Padic {
        use num_bigint::RandBigInt;
        let modulus = prime_power(p, abs);
        let r = rng.gen_biguint_below(&modulus);
        Padic::from_residue(p, &BigInt::from(r), i64::from(abs))
    }

    /// A random unit of `Z_p` with relative precision `prec`.
    pub fn random_unit<R: rand::Rng + ?Sized>(p: u64, prec: u32, rng: &mut R) -> Padic {
        use num_bigint::RandBigInt;
        let modulus = prime_power(p, prec);
        loop {
            let r = rng.gen_biguint_below(&modulus);
            if !(&r % BigUint::from(p)).is_zero() {
                return Padic::from_parts(p, 0, r, prec);
            }
        }
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Vanishing { abs } => write!(f, "O({}^{})", self.p, abs),
            Repr::Unit { val, unit, prec } => {
                if *val == 0 {
                    write!(f, "{} + O({}^{})", unit, self.p, prec)
                } else {
                    write!(
                        f,
                        "{}*{}^{} + O({}^{})",
                        unit,
                        self.p,
                        val,
                        self.p,
                        val + i64::from(*prec)
                    )
                }
            }
        }
    }
}

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        match &self.repr {
            Repr::Unit { val, unit, prec } => {
                let modulus = prime_power(self.p, *prec);
                Padic {
                    p: self.p,
                    repr: Repr::Unit {
                        val: *val,
                        unit: &modulus - unit,
                        prec: *prec,
                    },
                }
            }
            _ => self.clone(),
        }
    }
}

impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        -&self
    }
}

impl Add for &Padic {
    type Output = Padic;
    fn add(self, rhs: &Padic) -> Padic {
        self.add_signed(rhs, false)
    }
}

impl Sub for &Padic {
    type Output = Padic;
    fn sub(self, rhs: &Padic) -> Padic {
        self.add_signed(rhs, true)
    }
}

impl Mul for &Padic {
    type Output = Padic;
    fn mul(self, rhs: &Padic) -> Padic {
        self.mul_impl(rhs)
    }
}

impl Add for Padic {
    type Output = Padic;
    fn add(self, rhs: Padic) -> Padic {
        &self + &rhs
    }
}

impl Sub for Padic {
    type Output = Padic;
    fn sub(self, rhs: Padic) -> Padic {
        &self - &rhs
    }
}

impl Mul for Padic {
    type Output = Padic;
    fn mul(self, rhs: Padic) -> Padic {
        &self * &rhs
    }
}
