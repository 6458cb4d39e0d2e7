use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;
use crate::padic::{teichmuller, Padic, PadicError};

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

thread_local! {
    static PHI: RefCell<HashMap<u64, Vec<BigInt>>> = RefCell::new(HashMap::new());
}

/// The `m`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    if let Some(v) = PHI.with(|c| c.borrow().get(&m).cloned()) {
        return v;
    }
    let mut num: Poly = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d: Poly = cyclotomic_polynomial(d)
                .into_iter()
                .map(BigRational::from_integer)
                .collect();
            num = poly_divrem(&num, &phi_d).0;
        }
    }
    let out: Vec<BigInt> = num.into_iter().map(|c| c.to_integer()).collect();
    PHI.with(|c| c.borrow_mut().insert(m, out.clone()));
    out
}

/// An element of `Q(ζ_m)` in the power basis `1, ζ, …, ζ^(φ(m)-1)`.
///
/// Binary operations on different conductors first coerce both operands to
/// the lcm conductor.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    m: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    fn modulus(m: u64) -> Poly {
        cyclotomic_polynomial(m)
            .into_iter()
            .map(BigRational::from_integer)
            .collect()
    }

    fn from_poly(m: u64, p: Poly) -> Self {
        let phi = Self::modulus(m);
        let (_, mut r) = poly_divrem(&p, &phi);
        r.resize(totient(m) as usize, BigRational::zero());
        CyclotomicNumber { m, coeffs: r }
    }

    pub fn from_rational(m: u64, q: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); totient(m) as usize];
        coeffs[0] = q;
        CyclotomicNumber { m, coeffs }
    }

    pub fn from_int(m: u64, n: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(m: u64) -> Self {
        Self::from_int(m, 0)
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }

    /// `ζ_m^a`.
    pub fn zeta_pow(m: u64, a: i64) -> Self {
        let e = a.rem_euclid(m as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Self::from_poly(m, p)
    }

    /// Builds an element from power-basis coefficients of any length; the
    /// polynomial is reduced modulo `Φ_m`.
    pub fn from_coefficients(m: u64, coeffs: Vec<BigRational>) -> Self {
        Self::from_poly(m, coeffs)
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(ζ_l)` for a multiple `l` of `m`.
    pub fn coerce(&self, l: u64) -> Result<Self, AlgebraError> {
        if !l.is_multiple_of(self.m) {
            return Err(AlgebraError::Coercion { from: self.m, to: l });
        }
        if l == self.m {
            return Ok(self.clone());
        }
        let step = (l / self.m) as usize;
        let mut p = vec![BigRational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Ok(Self::from_poly(l, p))
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.m == b.m {
            return (a.clone(), b.clone());
        }
        let l = a.m.lcm(&b.m);
        (a.coerce(l).expect("lcm"), b.coerce(l).expect("lcm"))
    }

    /// Complex conjugation `ζ -> ζ^(-1)`.
    pub fn conj(&self) -> Self {
        let m = self.m as usize;
        let mut p = vec![BigRational::zero(); m.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[(m - i) % m] += c;
        }
        Self::from_poly(self.m, p)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo `Φ_m`.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let phi = Self::modulus(self.m);
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        // r1 is a nonzero constant since Φ_m is irreducible.
        let c = r1[0].clone();
        let inv: Poly = t1.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_poly(self.m, inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Image in `Z_p` under `ζ_m -> t`, where `t` is the Teichmüller root of
    /// unity fixed by [`teichmuller_zeta`].
    pub fn embed(&self, p: u64, prec: u32) -> Result<Padic, AlgebraError> {
        let t = teichmuller_zeta(self.m, p, prec)?;
        let mut acc = Padic::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = &acc * &t;
            if !c.is_zero() {
                let q = Padic::from_bigrational(c, p, prec).map_err(AlgebraError::Padic)?;
                acc = &acc + &q;
            }
        }
        Ok(acc)
    }
}

/// Least primitive root modulo an odd prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    let modpow = |b: u64, mut e: u64| {
        let mut r = 1u128;
        let mut b = b as u128 % p as u128;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        r as u64
    };
    (2..p)
        .find(|&g| factors.iter().all(|&q| modpow(g, (p - 1) / q) != 1))
        .unwrap_or(1)
}

/// The root of unity in `Z_p` that `ζ_m` is sent to: `ω(g)^((p-1)/m)` with
/// `g` the least primitive root modulo `p`.
pub fn teichmuller_zeta(m: u64, p: u64, prec: u32) -> Result<Padic, AlgebraError> {
    if m == 0 || !(p - 1).is_multiple_of(m) {
        return Err(AlgebraError::NotInQp { m, p });
    }
    let g = Padic::from_i64(primitive_root(p) as i64, p, prec).map_err(AlgebraError::Padic)?;
    let w = teichmuller(&g).map_err(AlgebraError::Padic)?;
    Ok(w.pow((p - 1) / m))
}

/// Embeds `ζ_m^a` into `Z_p`.
pub fn teichmuller_embed(m: u64, a: i64, p: u64, prec: u32) -> Result<Padic, AlgebraError> {
    let t = teichmuller_zeta(m, p, prec)?;
    Ok(t.pow(a.rem_euclid(m as i64) as u64))
}

impl From<PadicError> for AlgebraError {
    fn from(e: PadicError) -> Self {
        AlgebraError::Padic(e)
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = CyclotomicNumber::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        CyclotomicNumber {
            m: a.m,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        CyclotomicNumber::from_poly(a.m, poly_mul(&a.coeffs, &b.coeffs))
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "z{}", self.m)?;
                    } else {
                        write!(f, "z{}^{}", self.m, i)?;
                    }
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
