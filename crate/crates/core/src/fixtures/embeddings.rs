use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::{Elem, NumberField};
use super::FixtureError;
use crate::padic::{check_odd_prime, hensel_roots, split_valuation_int, Padic, PadicError};

/// The `n` embeddings `ι_j: K -> Q_p` of a field in which `p` splits
/// completely, together with the Galois action on them.
#[derive(Clone, Debug)]
pub struct EmbeddingSet {
    pub p: u64,
    /// Target precision `N` of derived logarithms.
    pub precision: u32,
    /// Absolute precision of the stored roots.
    pub work_precision: u32,
    /// `θ_1, …, θ_n`, sorted by residue modulo `p`.
    pub roots: Vec<Padic>,
    /// `perm[σ][j]`: the index `i` with `h_σ(θ_j) = θ_i`, so that
    /// `ι_j ∘ σ = ι_i`.
    pub perm: Vec<Vec<usize>>,
}

impl EmbeddingSet {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// `ι_j(x)`.
    pub fn embed(&self, x: &[BigRational], j: usize) -> Padic {
        let r = &self.roots[j];
        let mut acc = Padic::zero(self.p);
        for c in x.iter().rev() {
            acc = &acc * r;
            if !c.is_zero() {
                let prec = self.work_precision + 8;
                let cq = Padic::from_bigrational(c, self.p, prec).expect("validated prime");
                acc = &acc + &cq;
            }
        }
        acc.truncate_abs(i64::from(self.work_precision))
    }
}

fn max_denominator_valuation(x: &[BigRational], p: u64) -> u32 {
    x.iter()
        .filter(|c| !c.is_zero())
        .map(|c| split_valuation_int(c.denom(), p).0)
        .max()
        .unwrap_or(0)
}

/// Hensel-lifts the roots of the defining polynomial and records the
/// permutation action of every listed automorphism.
pub fn padic_embeddings(
    field: &NumberField,
    p: u64,
    precision: u32,
    guard: u32,
) -> Result<EmbeddingSet, FixtureError> {
    check_odd_prime(p).map_err(|_| FixtureError::Inadmissible(format!("{p} is not an odd prime")))?;
    let n = field.degree();
    let work = precision + guard;
    let coeffs: Vec<BigInt> = field.poly.clone();
    let roots = match hensel_roots(&coeffs, p, work) {
        Ok(r) => r,
        Err(PadicError::RepeatedRootModP { .. }) => {
            return Err(FixtureError::Inadmissible(format!(
                "{p} divides the discriminant of the defining polynomial (ramified or index divisor)"
            )))
        }
        Err(e) => return Err(FixtureError::Padic(e)),
    };
    if roots.len() != n {
        return Err(FixtureError::Inadmissible(format!(
            "{p} does not split completely: the defining polynomial has {} of {n} roots modulo {p}",
            roots.len()
        )));
    }
    let mut set = EmbeddingSet {
        p,
        precision,
        work_precision: work,
        roots,
        perm: Vec::new(),
    };
    let den = field
        .automorphisms
        .iter()
        .map(|a| max_denominator_valuation(&a.image, p))
        .max()
        .unwrap_or(0);
    for a in &field.automorphisms {
        let mut perm = Vec::with_capacity(n);
        for j in 0..n {
            let img = set.embed(&a.image, j);
            let target = (0..n).find(|&i| {
                let d = &img - &set.roots[i];
                d.valuation().is_none_or(|v| v >= i64::from(work - den))
            });
            let Some(i) = target else {
                return Err(FixtureError::Invariant(format!(
                    "image of θ_{} under {} matches no root to precision {}",
                    j + 1,
                    a.name,
                    work - den
                )));
            };
            perm.push(i);
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(FixtureError::Invariant(format!(
                "{} does not permute the embeddings",
                a.name
            )));
        }
        set.perm.push(perm);
    }
    // π_{στ} = π_τ ∘ π_σ
    let g = &field.galois_group;
    for s in 0..g.order() {
        for t in 0..g.order() {
            let st = g.mul(s, t);
            if (0..n).any(|j| set.perm[st][j] != set.perm[t][set.perm[s][j]]) {
                return Err(FixtureError::Invariant(
                    "permutation action on embeddings is not compatible with the group law".into(),
                ));
            }
        }
    }
    if (0..g.order()).any(|s| s != g.identity() && (0..n).all(|j| set.perm[s][j] == j)) {
        return Err(FixtureError::Invariant("Galois action on embeddings is not faithful".into()));
    }
    Ok(set)
}

/// A p-unit generator attached to the prime `𝔓_label`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PUnit {
    pub poly: Elem,
    /// 0-based prime index.
    pub label: usize,
    pub valuation: u64,
    /// Set when the generator was obtained by applying an automorphism to a
    /// listed one.
    pub transported_by: Option<String>,
}

/// A field together with everything derived from one admissible prime.
#[derive(Clone, Debug)]
pub struct AdmittedField {
    pub field: NumberField,
    pub embeddings: EmbeddingSet,
    /// One generator per prime `𝔓_1, …, 𝔓_n`, where known.
    pub p_units: Vec<Option<PUnit>>,
}

impl AdmittedField {
    pub fn p(&self) -> u64 {
        self.embeddings.p
    }

    pub fn precision(&self) -> u32 {
        self.embeddings.precision
    }

    /// All p-unit generators, or an error naming the first missing prime.
    pub fn complete_p_units(&self) -> Result<Vec<&PUnit>, FixtureError> {
        self.p_units
            .iter()
            .enumerate()
            .map(|(i, u)| {
                u.as_ref().ok_or_else(|| {
                    FixtureError::Invariant(format!("no p-unit for prime {} at p = {}", i + 1, self.p()))
                })
            })
            .collect()
    }

    /// The primes of `k` above `p`: orbits of root indices under
    /// `Gal(K/k)`. The fixed prime `𝔓_i` over `𝔭_i` is the smallest index of
    /// the orbit; orbits are ordered by it.
    pub fn base_primes(&self) -> Vec<Vec<usize>> {
        let n = self.field.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for j in 0..n {
            if seen[j] {
                continue;
            }
            let mut orbit: Vec<usize> = self
                .field
                .subfield
                .members
                .iter()
                .map(|&s| self.embeddings.perm[s][j])
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &i in &orbit {
                seen[i] = true;
            }
            out.push(orbit);
        }
        out
    }
}

/// Full p-specific validation: prime, character admissibility, splitting,
/// Galois consistency, unit and p-unit valuations.
pub fn admit(field: &NumberField, p: u64, precision: u32) -> Result<AdmittedField, FixtureError> {
    check_odd_prime(p).map_err(|_| FixtureError::Inadmissible(format!("{p} is not an odd prime")))?;
    let (g, _) = field.relative_group();
    let e = g.exponent() as u64;
    if !(p - 1).is_multiple_of(e) {
        return Err(FixtureError::Inadmissible(format!(
            "exponent of Gal(K/k) is {e}, which does not divide {p} - 1 = {}; character values lie outside Q_p",
            p - 1
        )));
    }
    let prime_doc = field.primes.iter().find(|d| d.p == p);
    let listed: Vec<(Elem, usize, u64)> = match prime_doc {
        None => Vec::new(),
        Some(d) => d
            .p_units
            .iter()
            .map(|u| Ok((field.reduce(&super::field::parse_poly(&u.poly)?), u.prime_label, u.valuation)))
            .collect::<Result<_, FixtureError>>()?,
    };
    let max_val = listed.iter().map(|u| u.2).max().unwrap_or(0) as u32;
    let den = field
        .units
        .iter()
        .chain(listed.iter().map(|u| &u.0))
        .map(|x| max_denominator_valuation(x, p))
        .max()
        .unwrap_or(0);
    let guard = 10 + max_val + den;
    let emb = padic_embeddings(field, p, precision, guard)?;
    let n = field.degree();

    let check_valuations = |x: &Elem, label: Option<usize>, val: u64, what: &str| {
        for j in 0..n {
            let v = emb.embed(x, j).valuation();
            let expect = if Some(j) == label { val as i64 } else { 0 };
            if v != Some(expect) {
                let got = v.map_or("+inf".to_string(), |v| v.to_string());
                return Err(FixtureError::Invariant(format!(
                    "{what} has valuation {got} at prime {} (expected {expect})",
                    j + 1
                )));
            }
        }
        Ok(())
    };
    for (i, u) in field.units.iter().enumerate() {
        check_valuations(u, None, 0, &format!("unit {}", i + 1))?;
    }
    let mut by_label: Vec<Option<PUnit>> = vec![None; n];
    for (idx, (poly, label, val)) in listed.iter().enumerate() {
        if *label == 0 || *label > n {
            return Err(FixtureError::Schema(format!("prime_label {label} out of range 1..={n}")));
        }
        if *val == 0 {
            return Err(FixtureError::Invariant(format!("p-unit {} has valuation 0", idx + 1)));
        }
        check_valuations(poly, Some(label - 1), *val, &format!("p-unit {}", idx + 1))?;
        if by_label[label - 1].is_some() {
            return Err(FixtureError::Schema(format!("two p-units for prime_label {label}")));
        }
        by_label[label - 1] = Some(PUnit {
            poly: poly.clone(),
            label: label - 1,
            valuation: *val,
            transported_by: None,
        });
    }
    // Complete by transport: σ(u) is a generator at the prime i with π_σ(i) = label(u).
    let originals: Vec<PUnit> = by_label.iter().flatten().cloned().collect();
    for i in 0..n {
        if by_label[i].is_some() {
            continue;
        }
        'search: for u in &originals {
            for (s, a) in field.automorphisms.iter().enumerate() {
                if emb.perm[s][i] == u.label {
                    by_label[i] = Some(PUnit {
                        poly: field.apply(s, &u.poly),
                        label: i,
                        valuation: u.valuation,
                        transported_by: Some(a.name.clone()),
                    });
                    break 'search;
                }
            }
        }
    }
    for (i, u) in by_label.iter().enumerate() {
        if let Some(u) = u.as_ref().filter(|u| u.transported_by.is_some()) {
            check_valuations(&u.poly, Some(i), u.valuation, &format!("transported p-unit {}", i + 1))?;
        }
    }
    Ok(AdmittedField {
        field: field.clone(),
        embeddings: emb,
        p_units: by_label,
    })
}
