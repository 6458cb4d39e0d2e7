use num_integer::Integer;

use super::InvariantError;
use crate::fixtures::NumberField;

/// Field-theoretic data of an extension `K/k` needed by [`classify_gk`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GkDescriptor {
    /// `[K:Q]`.
    pub degree_big: u64,
    /// `[k:Q]`.
    pub degree_base: u64,
    /// `K/k` abelian; nothing is asserted otherwise.
    pub relative_abelian: bool,
    pub big_galois_over_q: bool,
    pub base_galois_over_q: bool,
    pub base_signature: [u32; 2],
    /// `|S_p(K)|`.
    pub sp_big: u64,
    /// `|S_p(k)|`.
    pub sp_base: u64,
    /// `|S_p(k⁺)|`, when known.
    pub sp_base_plus: Option<u64>,
    pub big_has_real_place: bool,
    pub big_totally_real: bool,
    /// `K ⊂ k·Q^ab`.
    pub inside_base_times_qab: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GkCase {
    A,
    B,
    C,
    D,
    E,
    Unknown,
}

impl std::fmt::Display for GkCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GkCase::A => "a",
            GkCase::B => "b",
            GkCase::C => "c",
            GkCase::D => "d",
            GkCase::E => "e",
            GkCase::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

impl GkDescriptor {
    /// Reads the descriptor off a fixture at an admissible prime. Such a prime
    /// splits completely, so `|S_p(L)| = [L:Q]` for every subfield `L`.
    pub fn from_field(field: &NumberField) -> Self {
        let n = field.degree() as u64;
        let sub = &field.subfield;
        let dk = u64::from(sub.degree);
        let (g, h) = field.relative_group();
        let galois = field.is_galois();
        let all = &field.galois_group;
        let base_galois = if galois {
            all.is_normal(&h)
        } else {
            dk <= 2 || dk == n
        };
        let base_totally_real = sub.signature[1] == 0;
        let sp_base_plus = if base_totally_real {
            Some(dk)
        } else if dk == 2 {
            Some(1)
        } else if galois {
            // k⁺ is fixed by H together with every conjugate of complex conjugation.
            let c = field.complex_conjugation.expect("validated: Galois and not totally real");
            let mut gens = h.clone();
            gens.extend((0..all.order()).map(|x| all.conjugate(x, c)));
            Some((all.order() / all.generated(&gens).len()) as u64)
        } else {
            None
        };
        let inside = if galois {
            let comm = all.commutator_subgroup();
            h.iter().all(|x| *x == all.identity() || !comm.contains(x))
        } else {
            dk == n
        };
        GkDescriptor {
            degree_big: n,
            degree_base: dk,
            relative_abelian: g.is_abelian(),
            big_galois_over_q: galois,
            base_galois_over_q: base_galois,
            base_signature: sub.signature,
            sp_big: n,
            sp_base: dk,
            sp_base_plus,
            big_has_real_place: field.has_real_place(),
            big_totally_real: field.is_totally_real(),
            inside_base_times_qab: inside,
        }
    }

    fn validate(&self) -> Result<(), InvariantError> {
        let fail = |m: &str| Err(InvariantError::Descriptor(m.into()));
        if self.degree_base == 0 || !self.degree_big.is_multiple_of(self.degree_base) {
            return fail("[k:Q] must divide [K:Q]");
        }
        if self.sp_big < self.sp_base {
            return fail("|S_p(K)| < |S_p(k)|");
        }
        if self.sp_big > self.degree_big || self.sp_base > self.degree_base {
            return fail("more primes above p than the degree allows");
        }
        if self.sp_base == 0 {
            return fail("|S_p(k)| = 0");
        }
        if let Some(s) = self.sp_base_plus {
            if s == 0 || s > self.sp_base {
                return fail("|S_p(k⁺)| must lie in 1..=|S_p(k)|");
            }
        }
        let [r1, r2] = self.base_signature;
        if u64::from(r1 + 2 * r2) != self.degree_base {
            return fail("signature of k does not match [k:Q]");
        }
        if self.big_totally_real && (!self.big_has_real_place || r2 > 0) {
            return fail("K totally real but k or K has complex places");
        }
        Ok(())
    }
}

/// The first case of the Gross–Kuz'min case list that the descriptor meets,
/// in order (a)–(e).
pub fn classify_gk(x: &GkDescriptor) -> Result<GkCase, InvariantError> {
    x.validate()?;
    if !x.relative_abelian {
        return Ok(GkCase::Unknown);
    }
    let (spk_big, spk) = (x.sp_big, x.sp_base);
    let real = x.big_has_real_place;
    let case_a = spk_big <= 2
        || (spk_big <= 3 && real)
        || (spk_big <= 4 && x.big_galois_over_q)
        || (spk_big <= 6 && x.big_galois_over_q && x.big_totally_real);
    if case_a {
        return Ok(GkCase::A);
    }
    if spk == 1 || (spk <= 2 && real) {
        return Ok(GkCase::B);
    }
    if x.inside_base_times_qab && x.base_galois_over_q && (spk <= 3 || (spk <= 5 && x.big_totally_real)) {
        return Ok(GkCase::C);
    }
    let quadratic = x.degree_base == 2;
    let imaginary = x.base_signature[1] > 0;
    if quadratic && (imaginary || real) {
        return Ok(GkCase::D);
    }
    let relative = x.degree_big / x.degree_base;
    if x.base_galois_over_q && spk <= 2 && x.sp_base_plus == Some(1) && relative.gcd(&x.degree_base) == 1 {
        return Ok(GkCase::E);
    }
    Ok(GkCase::Unknown)
}
