use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicNumber;
use super::group::FiniteGroup;
use super::AlgebraError;

/// A class function on a finite group, stored by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn new(values: Vec<CyclotomicNumber>) -> Self {
        ClassFunction { values }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        ClassFunction::new(vec![CyclotomicNumber::one(1); g.order()])
    }

    /// Character of the regular representation.
    pub fn regular(g: &FiniteGroup) -> Self {
        let n = g.order() as i64;
        ClassFunction::new(
            (0..g.order())
                .map(|x| CyclotomicNumber::from_int(1, if x == g.identity() { n } else { 0 }))
                .collect(),
        )
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &CyclotomicNumber {
        &self.values[g]
    }

    /// `χ(1)` as an integer, when it is one.
    pub fn degree(&self, g: &FiniteGroup) -> Option<BigInt> {
        let q = self.values[g.identity()].as_rational()?;
        q.is_integer().then(|| q.to_integer())
    }

    /// True when the function is constant on conjugacy classes.
    pub fn is_class_function(&self, g: &FiniteGroup) -> bool {
        g.conjugacy_classes()
            .iter()
            .all(|cls| cls.iter().all(|&x| self.values[x] == self.values[cls[0]]))
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn mul(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction::new(self.values.iter().map(|v| v.conj()).collect())
    }

    /// Pulls back along a group homomorphism given as an element map.
    pub fn pullback(&self, map: &[usize]) -> ClassFunction {
        ClassFunction::new(map.iter().map(|&x| self.values[x].clone()).collect())
    }

    /// Induces from the subgroup `h` (listed as elements of `g`), where
    /// `self` is indexed by positions in `h`.
    pub fn induce(&self, g: &FiniteGroup, h: &[usize]) -> ClassFunction {
        let scale = BigRational::new(BigInt::one(), BigInt::from(h.len()));
        let values = (0..g.order())
            .map(|y| {
                let mut acc = CyclotomicNumber::zero(1);
                for x in 0..g.order() {
                    let c = g.mul(g.mul(g.inv(x), y), x);
                    if let Some(pos) = h.iter().position(|&e| e == c) {
                        acc = &acc + &self.values[pos];
                    }
                }
                acc.scale(&scale)
            })
            .collect();
        ClassFunction::new(values)
    }

    /// `(1/|H|) Σ_{h ∈ H} χ(h)`: the multiplicity of the trivial character in
    /// the restriction to `h`.
    pub fn fixed_dimension(&self, h: &[usize]) -> Result<BigInt, AlgebraError> {
        let mut acc = CyclotomicNumber::zero(1);
        for &x in h {
            acc = &acc + &self.values[x];
        }
        let q = acc
            .scale(&BigRational::new(BigInt::one(), BigInt::from(h.len())))
            .as_rational()
            .ok_or(AlgebraError::InconsistentCharacter)?;
        if !q.is_integer() || q < BigRational::zero() {
            return Err(AlgebraError::InconsistentCharacter);
        }
        Ok(q.to_integer())
    }
}

/// `(1/|G|) Σ_g χ1(g) conj(χ2(g))`, exact.
pub fn inner_product(
    a: &ClassFunction,
    b: &ClassFunction,
    g: &FiniteGroup,
) -> Result<CyclotomicNumber, AlgebraError> {
    if a.values.len() != g.order() || b.values.len() != g.order() {
        return Err(AlgebraError::ShapeMismatch);
    }
    let mut acc = CyclotomicNumber::zero(1);
    for x in 0..g.order() {
        acc = &acc + &(&a.values[x] * &b.values[x].conj());
    }
    Ok(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(g.order()))))
}

/// Inner product of two genuine characters, which must be a non-negative
/// integer.
pub fn character_inner_product(
    a: &ClassFunction,
    b: &ClassFunction,
    g: &FiniteGroup,
) -> Result<BigInt, AlgebraError> {
    let v = inner_product(a, b, g)?;
    match v.as_rational() {
        Some(q) if q.is_integer() && q >= BigRational::zero() => Ok(q.to_integer()),
        _ => Err(AlgebraError::InconsistentCharacter),
    }
}

/// A one-dimensional character with values in `μ_e`, `e` the group exponent:
/// `φ(g) = ζ_e^(exps[g])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCharacter {
    e: u64,
    exps: Vec<u64>,
}

impl LinearCharacter {
    pub fn trivial(g: &FiniteGroup) -> Self {
        LinearCharacter {
            e: g.exponent() as u64,
            exps: vec![0; g.order()],
        }
    }

    /// Validates a table of exponents as a homomorphism to `μ_e`.
    pub fn from_exponents(g: &FiniteGroup, e: u64, exps: Vec<u64>) -> Result<Self, AlgebraError> {
        if exps.len() != g.order() {
            return Err(AlgebraError::ShapeMismatch);
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if (exps[a] + exps[b]) % e != exps[g.mul(a, b)] % e {
                    return Err(AlgebraError::InconsistentCharacter);
                }
            }
        }
        Ok(LinearCharacter {
            e,
            exps: exps.into_iter().map(|x| x % e).collect(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.e
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn exponent_at(&self, g: usize) -> u64 {
        self.exps[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .fold(1u64, |acc, &x| acc.lcm(&(self.e / self.e.gcd(&x))))
    }

    pub fn value(&self, g: usize) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(self.e, self.exps[g] as i64)
    }

    pub fn class_function(&self) -> ClassFunction {
        ClassFunction::new((0..self.exps.len()).map(|g| self.value(g)).collect())
    }

    pub fn conj(&self) -> LinearCharacter {
        LinearCharacter {
            e: self.e,
            exps: self.exps.iter().map(|&x| (self.e - x) % self.e).collect(),
        }
    }

    pub fn mul(&self, other: &LinearCharacter) -> LinearCharacter {
        assert_eq!(self.e, other.e);
        LinearCharacter {
            e: self.e,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| (a + b) % self.e)
                .collect(),
        }
    }

    /// `φ^τ(g) = φ(τ g τ^{-1})`.
    pub fn twist(&self, g: &FiniteGroup, tau: usize) -> LinearCharacter {
        LinearCharacter {
            e: self.e,
            exps: (0..g.order())
                .map(|x| self.exps[g.conjugate(tau, x)])
                .collect(),
        }
    }
}

/// All one-dimensional characters of `g`, the trivial one first.
///
/// Values on a generating set are enumerated and the induced map checked
/// for consistency, which also handles nonabelian groups.
pub fn linear_characters(g: &FiniteGroup) -> Vec<LinearCharacter> {
    let e = g.exponent() as u64;
    let gens = g.generators();
    let n = g.order();
    let mut out = Vec::new();
    let total = (e as usize).pow(gens.len() as u32);
    'assign: for code in 0..total {
        let mut c = code;
        let mut on_gens = Vec::with_capacity(gens.len());
        for _ in &gens {
            on_gens.push((c % e as usize) as u64);
            c /= e as usize;
        }
        let mut exps: Vec<Option<u64>> = vec![None; n];
        exps[g.identity()] = Some(0);
        let mut queue = vec![g.identity()];
        while let Some(x) = queue.pop() {
            let vx = exps[x].expect("visited");
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let vy = (vx + on_gens[k]) % e;
                match exps[y] {
                    None => {
                        exps[y] = Some(vy);
                        queue.push(y);
                    }
                    Some(w) if w != vy => continue 'assign,
                    _ => {}
                }
            }
        }
        let exps: Vec<u64> = exps.into_iter().map(|v| v.expect("generated")).collect();
        if let Ok(chi) = LinearCharacter::from_exponents(g, e, exps) {
            out.push(chi);
        }
    }
    out.sort_by_key(|chi| !chi.is_trivial());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_product_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let one = ClassFunction::trivial(&c2);
        assert_eq!(character_inner_product(&one, &one, &c2).unwrap(), BigInt::one());
        let reg = ClassFunction::regular(&c2);
        assert_eq!(character_inner_product(&reg, &reg, &c2).unwrap(), BigInt::from(2));
        let chars = linear_characters(&c2);
        assert_eq!(chars.len(), 2);
        let sign = chars[1].class_function();
        assert_eq!(character_inner_product(&sign, &one, &c2).unwrap(), BigInt::zero());
    }

    #[test]
    fn dual_group_sizes() {
        for orders in [vec![4], vec![2, 2], vec![3, 4], vec![2, 2, 2], vec![8, 8]] {
            let g = FiniteGroup::abelian(&orders);
            let chars = linear_characters(&g);
            assert_eq!(chars.len(), g.order());
            assert!(chars[0].is_trivial());
        }
        // S3 has two linear characters
        assert_eq!(linear_characters(&FiniteGroup::symmetric(3)).len(), 2);
    }

    #[test]
    fn orthogonality() {
        let g = FiniteGroup::abelian(&[2, 6]);
        let chars = linear_characters(&g);
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let ip = character_inner_product(&a.class_function(), &b.class_function(), &g)
                    .unwrap();
                assert_eq!(ip, BigInt::from(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn regular_character_decomposes() {
        let g = FiniteGroup::cyclic(5);
        let sum = linear_characters(&g)
            .iter()
            .map(|c| c.class_function())
            .reduce(|a, b| a.add(&b))
            .unwrap();
        assert_eq!(sum, ClassFunction::regular(&g));
    }

    #[test]
    fn induction_of_trivial_is_permutation_character() {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.generated(&[1]);
        let (sub, _) = s3.subgroup(&h).unwrap();
        let ind = ClassFunction::trivial(&sub).induce(&s3, &h);
        assert_eq!(ind.degree(&s3), Some(BigInt::from(3)));
        assert!(ind.is_class_function(&s3));
        assert_eq!(character_inner_product(&ind, &ind, &s3).unwrap(), BigInt::from(2));
    }
}
