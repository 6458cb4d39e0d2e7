//! Exact construction of quadratic-field fixtures: class number by reduced
//! binary quadratic forms, fundamental unit by continued fractions, and
//! p-unit generators by bounded enumeration of norm equations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::schema::{FixtureDocument, GaloisDoc, PUnitDoc, PrimeDoc, SCHEMA_VERSION};
use super::FixtureError;
use crate::padic::{check_odd_prime, hensel_roots};

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Fundamental discriminant of `Q(√d)`.
pub fn discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Class number of `Q(√d)` (the wide class number for real fields).
pub fn class_number(d: i64) -> u64 {
    let disc = discriminant(d);
    if disc < 0 {
        imaginary_class_number(disc)
    } else {
        let narrow = narrow_class_number(disc);
        let (x, y) = fundamental_unit(d);
        if unit_norm(d, &x, &y) == -1 {
            narrow
        } else {
            narrow / 2
        }
    }
}

fn imaginary_class_number(disc: i64) -> u64 {
    let n = -disc;
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// Number of cycles of reduced indefinite primitive forms of discriminant
/// `disc`.
fn narrow_class_number(disc: i64) -> u64 {
    let s = disc.sqrt();
    let sqrt_d = (disc as f64).sqrt();
    // reduced: 0 < b < √D and √D - b < 2|a| < √D + b
    let mut forms = BTreeSet::new();
    for b in 1..=s {
        if (b * b - disc) % 4 != 0 || (b as f64) >= sqrt_d {
            continue;
        }
        let nac = (disc - b * b) / 4; // = -ac > 0
        for a in 1..=nac {
            if nac % a != 0 {
                continue;
            }
            let c = nac / a;
            for sa in [1i64, -1] {
                let aa = sa * a;
                let cc = -sa * c;
                let two_a = 2.0 * a as f64;
                if sqrt_d - (b as f64) < two_a && two_a < sqrt_d + b as f64 && aa.gcd(&b).gcd(&cc) == 1 {
                    forms.insert((aa, b, cc));
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut cycles = 0;
    for &f in &forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut g = f;
        loop {
            seen.insert(g);
            g = rho(g, disc, sqrt_d);
            if g == f {
                break;
            }
            assert!(forms.contains(&g), "reduction operator left the reduced set");
        }
    }
    cycles
}

/// `ρ(a, b, c) = (c, b', (b'^2 - D)/4c)` with `b' ≡ -b mod 2c` chosen so the
/// result is reduced.
fn rho((_a, b, c): (i64, i64, i64), disc: i64, sqrt_d: f64) -> (i64, i64, i64) {
    let m = 2 * c.abs();
    let lo = sqrt_d - m as f64;
    let mut r = (-b).rem_euclid(m);
    // choose r in (√D - 2|c|, √D)
    while (r as f64) <= lo {
        r += m;
    }
    while (r as f64) >= sqrt_d {
        r -= m;
    }
    (c, r, (r * r - disc) / (4 * c))
}

fn omega_is_half(d: i64) -> bool {
    d.rem_euclid(4) == 1
}

/// Norm of `x + y ω`, `ω = √d` or `(1 + √d)/2`.
fn unit_norm(d: i64, x: &BigInt, y: &BigInt) -> i64 {
    norm(d, x, y).to_i64().expect("small norm")
}

pub fn norm(d: i64, x: &BigInt, y: &BigInt) -> BigInt {
    let d = BigInt::from(d);
    if omega_is_half(d.to_i64().unwrap()) {
        // (x + y/2)^2 - d y^2/4 = x^2 + xy + (1-d)/4 y^2
        x * x + x * y + (BigInt::one() - &d) / 4 * y * y
    } else {
        x * x - d * y * y
    }
}

/// The fundamental unit `x + y ω > 1` of a real quadratic field, found as
/// the first continued-fraction convergent `p/q` of `ω` with
/// `N(p - q ω) = ±1`.
pub fn fundamental_unit(d: i64) -> (BigInt, BigInt) {
    assert!(d > 1);
    let (mut pp, mut qq) = if omega_is_half(d) { (1i64, 2i64) } else { (0, 1) };
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    let s = d.sqrt();
    loop {
        // complete quotient (pp + √d)/qq with qq | d - pp^2
        let a = Integer::div_floor(&(pp + s), &qq);
        let p2 = BigInt::from(a) * &p1 + &p0;
        let q2 = BigInt::from(a) * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let nrm = norm(d, &p1, &(-&q1));
        if nrm.abs().is_one() {
            // 1/(p - qω) = ±(p - qω'), ω' = -ω or 1 - ω
            return if omega_is_half(d) {
                (&p1 - &q1, q1.clone())
            } else {
                (p1.clone(), q1.clone())
            };
        }
        pp = a * qq - pp;
        qq = (d - pp * pp) / qq;
    }
}

/// Smallest `(x, y)` with `x^2 - d y^2 = ±1`, `y > 0`, by direct search;
/// an independent check on [`fundamental_unit`] for `d ≢ 1 mod 4`.
pub fn pell_search(d: i64, bound: i64) -> Option<(i64, i64)> {
    (1..=bound).find_map(|y| {
        [d * y * y - 1, d * y * y + 1].into_iter().find_map(|x2| {
            let x = x2.sqrt();
            (x * x == x2 && x > 0).then_some((x, y))
        })
    })
}

/// A generator of `𝔓^h` for each prime above `p`, as `(x, y)` with the
/// element `x + y ω`, and the index (0-based, ordered by root residue) of
/// the prime where it has positive valuation.
fn p_unit_generators(d: i64, p: u64, h: u64) -> Result<Vec<(BigInt, BigInt, usize)>, FixtureError> {
    let pb = BigInt::from(p);
    let ph = pb.pow(h as u32);
    let bound = ph.clone();
    let poly = [BigInt::from(-d), BigInt::zero(), BigInt::one()];
    let roots = hensel_roots(&poly, p, 4).map_err(FixtureError::Padic)?;
    let roots: Vec<BigInt> = roots.iter().map(|r| BigInt::from(r.residue(1).unwrap())).collect();
    let half = omega_is_half(d);
    let inv2 = BigInt::from(p.div_ceil(2));
    let omega_at = |r: &BigInt| {
        if half {
            ((BigInt::one() + r) * &inv2).mod_floor(&pb)
        } else {
            r.mod_floor(&pb)
        }
    };
    let mut found: Vec<Option<(BigInt, BigInt)>> = vec![None, None];
    let bmax = bound.to_i64().unwrap_or(i64::MAX);
    'outer: for babs in 0..=bmax {
        let bsq = BigInt::from(babs) * BigInt::from(babs);
        for target in [ph.clone(), -ph.clone()] {
            // x^2 - d y^2 = N, or (2x + y)^2 - d y^2 = 4N
            let rhs = if half {
                BigInt::from(4) * &target + BigInt::from(d) * &bsq
            } else {
                &target + BigInt::from(d) * &bsq
            };
            if rhs.is_negative() {
                continue;
            }
            let s = rhs.sqrt();
            if &s * &s != rhs {
                continue;
            }
            for t in [s.clone(), -s.clone()] {
                for b in if babs == 0 { vec![0] } else { vec![babs, -babs] } {
                    let bb = BigInt::from(b);
                    let x = if half {
                        let num = &t - &bb;
                        if num.is_odd() {
                            continue;
                        }
                        num / 2
                    } else {
                        t.clone()
                    };
                    if x.abs() > bound || (x.mod_floor(&pb).is_zero() && bb.mod_floor(&pb).is_zero()) {
                        continue;
                    }
                    // the prime where x + y ω vanishes modulo p
                    let idx = (0..2).find(|&j| (&x + &bb * omega_at(&roots[j])).mod_floor(&pb).is_zero());
                    if let Some(j) = idx {
                        if found[j].is_none() {
                            found[j] = Some((x.clone(), bb.clone()));
                        }
                    }
                    if found.iter().all(|f| f.is_some()) {
                        break 'outer;
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .enumerate()
        .map(|(j, f)| {
            f.map(|(x, y)| (x, y, j)).ok_or_else(|| {
                FixtureError::EnumerationBound(format!(
                    "no element of norm ±{p}^{h} with coordinates bounded by {bound} for prime {}",
                    j + 1
                ))
            })
        })
        .collect()
}

fn elem_doc(d: i64, x: &BigInt, y: &BigInt) -> Vec<String> {
    // in the basis 1, √d
    let (c0, c1) = if omega_is_half(d) {
        (
            BigRational::from_integer(x.clone()) + BigRational::new(y.clone(), BigInt::from(2)),
            BigRational::new(y.clone(), BigInt::from(2)),
        )
    } else {
        (BigRational::from_integer(x.clone()), BigRational::from_integer(y.clone()))
    };
    super::field::format_poly(&[c0, c1])
}

/// Builds the fixture document for `Q(√d)` with p-units at `p`.
pub fn quadratic_document(d: i64, primes: &[u64]) -> Result<FixtureDocument, FixtureError> {
    if d == 0 || d == 1 || !is_squarefree(d) {
        return Err(FixtureError::Schema(format!("{d} is not a squarefree integer other than 0, 1")));
    }
    let h = class_number(d);
    let mut prime_docs = Vec::new();
    for &p in primes {
        check_odd_prime(p).map_err(|_| FixtureError::Inadmissible(format!("{p} is not an odd prime")))?;
        if d.rem_euclid(p as i64) == 0 {
            return Err(FixtureError::Inadmissible(format!("{p} ramifies in Q(√{d})")));
        }
        let leg = BigInt::from(d).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
        if !leg.is_one() {
            return Err(FixtureError::Inadmissible(format!("{p} is inert in Q(√{d})")));
        }
        let gens = p_unit_generators(d, p, h)?;
        prime_docs.push(PrimeDoc {
            p,
            p_units: gens
                .iter()
                .map(|(x, y, j)| PUnitDoc {
                    poly: elem_doc(d, x, y),
                    prime_label: j + 1,
                    valuation: h,
                })
                .collect(),
        });
    }
    let real = d > 0;
    let units = if real {
        let (x, y) = fundamental_unit(d);
        vec![elem_doc(d, &x, &y)]
    } else {
        Vec::new()
    };
    Ok(FixtureDocument {
        schema_version: SCHEMA_VERSION,
        id: format!("quadratic_{}", if d < 0 { format!("m{}", -d) } else { d.to_string() }),
        description: format!("Q(sqrt({d}))"),
        poly: vec![(-d).to_string(), "0".into(), "1".into()],
        signature: if real { [2, 0] } else { [0, 1] },
        class_number: h,
        complex_conjugation: (!real).then(|| "tau".to_string()),
        units,
        galois: vec![
            GaloisDoc {
                name: "id".into(),
                image: vec!["0".into(), "1".into()],
            },
            GaloisDoc {
                name: "tau".into(),
                image: vec!["0".into(), "-1".into()],
            },
        ],
        group_table: None,
        subfield: None,
        primes: prime_docs,
    })
}

/// The first `count` odd primes that split in `Q(√d)`.
pub fn split_primes(d: i64, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 3u64;
    while out.len() < count {
        if crate::padic::is_prime(p) && d.rem_euclid(p as i64) != 0 {
            let leg = BigInt::from(d).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
            if leg.is_one() {
                out.push(p);
            }
        }
        p += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        for (d, h) in [
            (-1, 1),
            (-2, 1),
            (-3, 1),
            (-5, 2),
            (-7, 1),
            (-23, 3),
            (-47, 5),
            (-14, 4),
            (2, 1),
            (3, 1),
            (5, 1),
            (6, 1),
            (10, 2),
            (15, 2),
            (79, 3),
            (82, 4),
        ] {
            assert_eq!(class_number(d), h, "d = {d}");
        }
    }

    #[test]
    fn units_match_pell_search() {
        for d in [2i64, 3, 6, 7, 10, 11, 14, 19, 22, 23] {
            let (x, y) = fundamental_unit(d);
            let (px, py) = pell_search(d, 10_000).unwrap();
            assert_eq!((x, y), (BigInt::from(px), BigInt::from(py)), "d = {d}");
        }
        assert_eq!(fundamental_unit(5), (BigInt::zero(), BigInt::one()));
        // (5 + √13)/2 = 2 + ω
        assert_eq!(fundamental_unit(13), (BigInt::from(1), BigInt::from(1)));
    }

    #[test]
    fn split_prime_lists() {
        let table: [(i64, [u64; 2]); 8] = [
            (-1, [5, 13]),
            (-2, [3, 11]),
            (-3, [7, 13]),
            (-5, [3, 7]),
            (-7, [11, 23]),
            (2, [7, 17]),
            (3, [11, 13]),
            (5, [11, 19]),
        ];
        for (d, ps) in table {
            assert_eq!(split_primes(d, 2), ps.to_vec(), "d = {d}");
        }
    }

    #[test]
    fn gaussian_p_units() {
        let doc = quadratic_document(-1, &[5]).unwrap();
        let pu = &doc.primes[0].p_units;
        // θ_1 ≡ 7 has 2 - i vanishing there
        assert_eq!(pu[0].poly, vec!["2".to_string(), "-1".to_string()]);
        assert_eq!(pu[0].prime_label, 1);
        assert_eq!(pu[1].poly, vec!["2".to_string(), "1".to_string()]);
    }

    #[test]
    fn class_number_two_generator() {
        let doc = quadratic_document(-5, &[3]).unwrap();
        assert_eq!(doc.class_number, 2);
        for u in &doc.primes[0].p_units {
            let x = BigInt::from(u.poly[0].parse::<i64>().unwrap());
            let y = BigInt::from(u.poly.get(1).map_or(0, |s| s.parse::<i64>().unwrap()));
            assert_eq!(norm(-5, &x, &y), BigInt::from(9));
            assert_eq!(u.valuation, 2);
        }
        // exhaustive oracle: a^2 + 5 b^2 = 9 with |a|, |b| <= 3
        let sols: Vec<(i64, i64)> = (-3i64..=3)
            .flat_map(|a| (-3i64..=3).map(move |b| (a, b)))
            .filter(|&(a, b)| a * a + 5 * b * b == 9)
            .collect();
        assert_eq!(sols.len(), 6);
    }

    #[test]
    fn rejects_inert_and_ramified() {
        assert!(matches!(quadratic_document(-1, &[3]), Err(FixtureError::Inadmissible(_))));
        assert!(matches!(quadratic_document(-5, &[5]), Err(FixtureError::Inadmissible(_))));
        assert!(quadratic_document(4, &[5]).is_err());
    }
}
