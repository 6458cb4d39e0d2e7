use crate::algebra::{CyclotomicNumber, LinearCharacter};
use crate::fixtures::{AdmittedField, Elem, NumberField};
use crate::padic::Padic;

use super::InvariantError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionMode {
    /// `u_{i,φ}` built from a p-unit.
    Multiplicative,
    /// `ε_{i,φ}` built from a unit.
    Unit,
}

/// `coefficient · [σ(x)]` with `σ` an automorphism index.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalTerm {
    pub coefficient: CyclotomicNumber,
    pub automorphism: usize,
}

/// `Σ_σ φ(σ) ⊗ σ^{-1}(x)`, kept formal.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalCombination {
    pub base: Elem,
    pub mode: ProjectionMode,
    pub terms: Vec<FormalTerm>,
}

/// Applies the idempotent of the linear character `phi` of `Gal(K/k)` to `x`.
pub fn idempotent_project(
    field: &NumberField,
    phi: &LinearCharacter,
    x: &Elem,
    mode: ProjectionMode,
) -> Result<FormalCombination, InvariantError> {
    let (g, elems) = field.relative_group();
    if phi.exponents().len() != g.order() {
        return Err(InvariantError::Inconsistent("character is not defined on Gal(K/k)".into()));
    }
    let all = &field.galois_group;
    let terms = (0..g.order())
        .map(|s| FormalTerm {
            coefficient: phi.value(s),
            automorphism: all.inv(elems[s]),
        })
        .collect();
    Ok(FormalCombination {
        base: field.reduce(x),
        mode,
        terms,
    })
}

impl FormalCombination {
    /// The conjugates `σ(x)` paired with their coefficients.
    pub fn expand(&self, field: &NumberField) -> Vec<(CyclotomicNumber, Elem)> {
        self.terms
            .iter()
            .map(|t| (t.coefficient.clone(), field.apply(t.automorphism, &self.base)))
            .collect()
    }

    /// `Σ_σ φ(σ) · log_p ι_j(σ^{-1} x)`, given the logarithms of `x` at every
    /// embedding. Uses `ι_j ∘ σ = ι_{perm[σ][j]}`.
    pub fn log_at(&self, field: &AdmittedField, logs: &[Padic], j: usize) -> Result<Padic, InvariantError> {
        let p = field.p();
        let prec = field.embeddings.work_precision;
        let mut acc = Padic::zero(p);
        for t in &self.terms {
            let c = t.coefficient.embed(p, prec)?;
            let i = field.embeddings.perm[t.automorphism][j];
            acc = &acc + &(&c * &logs[i]);
        }
        Ok(acc)
    }
}
