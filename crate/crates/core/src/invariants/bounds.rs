use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::InvariantTriple;

/// An upper bound on a defect: a rational value, optionally strict, and the
/// integer bound it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectBound {
    pub value: BigRational,
    pub strict: bool,
    pub integer_bound: BigInt,
}

impl DefectBound {
    fn new(value: BigRational, strict: bool) -> Self {
        let floor = value.floor().to_integer();
        let integer_bound = if strict && value.is_integer() && !value.is_zero() {
            floor - BigInt::one()
        } else {
            floor
        };
        DefectBound {
            value,
            strict,
            integer_bound,
        }
    }
}

fn q(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(d⁺)²/(d + d⁺)` for representations irreducible over `Q`, `d⁺/2`
/// otherwise.
pub fn leopoldt_bound(t: &InvariantTriple, irreducible_over_q: bool) -> DefectBound {
    if t.d_plus == 0 {
        return DefectBound::new(BigRational::zero(), false);
    }
    let v = if irreducible_over_q {
        q(t.d_plus * t.d_plus, t.d + t.d_plus)
    } else {
        q(t.d_plus, 2)
    };
    DefectBound::new(v, false)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GrossFlags {
    pub irreducible_over_q: bool,
    pub has_real_place: bool,
    pub totally_real: bool,
}

/// `0` when `d⁺ = f = 0`; `f²/(d⁺ + 2f)` for irreducibles over `Q`;
/// otherwise `f/3` for totally real fields and `f/2` (strict when `f ≠ 0` and
/// there is a real place).
pub fn gross_bound(t: &InvariantTriple, flags: GrossFlags) -> DefectBound {
    if t.d_plus == 0 && t.f == 0 {
        return DefectBound::new(BigRational::zero(), false);
    }
    if flags.irreducible_over_q {
        return DefectBound::new(q(t.f * t.f, t.d_plus + 2 * t.f), false);
    }
    if flags.totally_real {
        return DefectBound::new(q(t.f, 3), false);
    }
    DefectBound::new(q(t.f, 2), t.f != 0 && flags.has_real_place)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: u64, d_plus: u64, f: u64) -> InvariantTriple {
        InvariantTriple { d, d_plus, f }
    }

    #[test]
    fn leopoldt_examples() {
        assert!(leopoldt_bound(&t(2, 0, 1), true).value.is_zero());
        assert_eq!(leopoldt_bound(&t(5, 5, 0), true).value, q(5, 2));
        assert_eq!(leopoldt_bound(&t(4, 2, 0), true).value, q(2, 3));
        assert_eq!(leopoldt_bound(&t(4, 2, 0), true).integer_bound, BigInt::zero());
        assert_eq!(leopoldt_bound(&t(4, 3, 0), false).value, q(3, 2));
    }

    #[test]
    fn gross_examples() {
        let irr = GrossFlags {
            irreducible_over_q: true,
            ..Default::default()
        };
        assert!(gross_bound(&t(1, 0, 0), irr).value.is_zero());
        let b = gross_bound(&t(1, 0, 1), irr);
        assert_eq!(b.value, q(1, 2));
        assert_eq!(b.integer_bound, BigInt::zero());
        let tr = GrossFlags {
            totally_real: true,
            has_real_place: true,
            ..Default::default()
        };
        assert_eq!(gross_bound(&t(6, 6, 3), tr).integer_bound, BigInt::one());
    }

    #[test]
    fn strict_bound_drops_at_integers() {
        let f = GrossFlags {
            has_real_place: true,
            ..Default::default()
        };
        let b = gross_bound(&t(4, 1, 2), f);
        assert_eq!(b.value, BigRational::one());
        assert!(b.strict);
        assert_eq!(b.integer_bound, BigInt::zero());
        let b = gross_bound(&t(4, 1, 3), f);
        assert_eq!(b.integer_bound, BigInt::one());
    }
}
