use rand::Rng;
use serde::Serialize;

use super::{build_n_phi, Coordinates, ScanError, Slope, KERNEL_SLACK};
use crate::algebra::LinearCharacter;
use crate::fixtures::NumberField;
use crate::padic::{Padic, PrecisionPolicy};
use crate::regulators::{IsotypicMatrices, PadicMatrix};

/// The unique slope at which the minor of rows 1 and 3 of `N_φ(S)` vanishes,
/// together with the check of the two remaining minors there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalSlope {
    pub candidate: Slope,
    /// Digits to which the solved minor vanishes at the candidate.
    pub precision: i64,
    /// Valuations of the minors on rows (1, 2) and (2, 3); `None` is zero.
    pub cross_minors: [Option<i64>; 2],
    /// Both cross minors vanish to `precision − 8` digits.
    pub viable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalReport {
    pub character: String,
    pub twist_invariant: Option<bool>,
    pub slope_digits: String,
    pub precision: i64,
    pub cross_minor_valuations: [Option<i64>; 2],
    pub viable: bool,
}

impl ExceptionalSlope {
    pub fn report(&self, character: &str, twist_invariant: Option<bool>, prec: u32) -> ExceptionalReport {
        ExceptionalReport {
            character: character.into(),
            twist_invariant,
            slope_digits: self.candidate.digits(prec),
            precision: self.precision,
            cross_minor_valuations: self.cross_minors,
            viable: self.viable,
        }
    }
}

fn det2(a: &Padic, b: &Padic, c: &Padic, d: &Padic) -> Padic {
    &(a * d) - &(b * c)
}

fn depth(x: &Padic, cap: i64) -> i64 {
    match x.valuation() {
        Some(v) => v.min(cap),
        None => x.abs_precision().unwrap_or(cap).min(cap),
    }
}

/// Solves `M_2(s_1 L^φ_{11} − L^1_{11}s_1 − L^1_{12}s_2) − M_1 s_1 L^φ_{12} = 0`
/// for `s_1/s_2` and evaluates the remaining minors of `N_φ(S)` there.
pub fn solve_exceptional(
    l_phi: &PadicMatrix,
    m_phi: &PadicMatrix,
    l_one: &PadicMatrix,
    policy: &PrecisionPolicy,
) -> Result<ExceptionalSlope, ScanError> {
    if l_phi.nrows() != 2 || m_phi.nrows() != 1 {
        return Err(ScanError::Precondition(format!(
            "the exceptional slope needs n = 2 and one row of M_φ, got n = {} and {} rows",
            l_phi.nrows(),
            m_phi.nrows()
        )));
    }
    let p = l_phi.prime();
    let (m1, m2) = (m_phi.get(0, 0), m_phi.get(0, 1));
    let num = l_one.get(0, 1) * m2;
    if policy.is_apparent_zero(&num) {
        return Err(ScanError::Degenerate("L_{1,2}·M_{1,2,φ} is indistinguishable from zero".into()));
    }
    let den = &(m2 * &(l_phi.get(0, 0) - l_one.get(0, 0))) - &(m1 * l_phi.get(0, 1));
    let candidate = if policy.is_apparent_zero(&den) {
        Slope::Infinity
    } else {
        Slope::Finite(num.checked_div(&den)?)
    };
    let s = Coordinates::from_slope(&candidate, p, policy.precision)?;
    let nm = build_n_phi(&s, l_phi, m_phi, l_one)?;
    let minor = |i: usize, j: usize| det2(nm.get(i, 0), nm.get(i, 1), nm.get(j, 0), nm.get(j, 1));
    let cap = policy.zero_threshold;
    let precision = depth(&minor(0, 2), cap);
    let cross = [minor(0, 1), minor(1, 2)];
    let floor = precision - KERNEL_SLACK;
    let viable = cross.iter().all(|x| depth(x, cap) >= floor);
    Ok(ExceptionalSlope {
        candidate,
        precision,
        cross_minors: [cross[0].valuation(), cross[1].valuation()],
        viable,
    })
}

/// [`solve_exceptional`] on the isotypic matrices of a base with two primes
/// above `p` and no units (an imaginary quadratic base).
pub fn exceptional_slope_candidate(
    phi: &IsotypicMatrices,
    one: &IsotypicMatrices,
    policy: &PrecisionPolicy,
) -> Result<ExceptionalSlope, ScanError> {
    if phi.is_trivial() {
        return Err(ScanError::Precondition("the exceptional slope needs φ ≠ 1".into()));
    }
    if one.n() != 2 || one.m.nrows() != 0 {
        return Err(ScanError::Precondition(
            "the base field must be imaginary quadratic with p split".into(),
        ));
    }
    solve_exceptional(&phi.l, &phi.m, &one.l, policy)
}

/// Whether `φ^τ = φ` for `τ` the complex conjugation of `K`, when `K/Q` is
/// Galois and `Gal(K/k)` is normal in it.
pub fn twist_invariant(field: &NumberField, phi: &LinearCharacter) -> Option<bool> {
    let tau = field.complex_conjugation?;
    if !field.is_galois() {
        return None;
    }
    let big = &field.galois_group;
    let (_, emb) = field.relative_group();
    let mut exps = Vec::with_capacity(emb.len());
    for &x in &emb {
        let y = big.conjugate(tau, x);
        let pos = emb.iter().position(|&e| e == y)?;
        exps.push(phi.exponent_at(pos));
    }
    Some(exps == phi.exponents())
}

/// Random `(L_φ, M_φ, L_1)` with `N_φ(S_0)` of rank one for the given slope.
pub fn plant_exceptional<R: Rng + ?Sized>(
    p: u64,
    prec: u32,
    s0: &Coordinates,
    rng: &mut R,
) -> Result<(PadicMatrix, PadicMatrix, PadicMatrix), ScanError> {
    let mut unit = || Padic::random_unit(p, prec, rng);
    let (s1, s2) = (&s0.values()[0], &s0.values()[1]);
    let l_one = PadicMatrix::new(p, 2, vec![vec![unit(), unit()], vec![unit(), unit()]])?;
    let c = l_one.mul_vec(s0.values())?;
    let (w1, w2) = (unit(), unit());
    let m1 = unit();
    let m2 = -(&m1 * &w1).checked_div(&w2)?;
    let l11 = unit();
    let l12 = -(&(&(s1 * &l11) - &c[0]) * &w1).checked_div(&(s1 * &w2))?;
    let l22 = unit();
    let l21 = -(&(&(s2 * &l22) - &c[1]) * &w2).checked_div(&(s2 * &w1))?;
    let l_phi = PadicMatrix::new(p, 2, vec![vec![l11, l12], vec![l21, l22]])?;
    let m_phi = PadicMatrix::new(p, 2, vec![vec![m1, m2]])?;
    Ok((l_phi, m_phi, l_one))
}

/// Random data with the symmetries forced by `φ^τ = φ`: `L_1` and `L_φ`
/// invariant under swapping the two primes and `M_{1,1} = M_{1,2}`.
pub fn symmetric_data<R: Rng + ?Sized>(
    p: u64,
    prec: u32,
    rng: &mut R,
) -> Result<(PadicMatrix, PadicMatrix, PadicMatrix), ScanError> {
    let mut unit = || Padic::random_unit(p, prec, rng);
    let (a, b, c, d, m) = (unit(), unit(), unit(), unit(), unit());
    let l_one = PadicMatrix::new(p, 2, vec![vec![a.clone(), b.clone()], vec![b, a]])?;
    let l_phi = PadicMatrix::new(p, 2, vec![vec![c.clone(), d.clone()], vec![d, c]])?;
    let m_phi = PadicMatrix::new(p, 2, vec![vec![m.clone(), m]])?;
    Ok((l_phi, m_phi, l_one))
}
