use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{log_vector, PadicMatrix, RegulatorError};
use crate::algebra::{FiniteGroup, LinearCharacter};
use crate::fixtures::AdmittedField;
use crate::invariants::{
    compute_invariants, idempotent_project, ArtinRep, InvariantTriple, PlaceData, ProjectionMode,
};
use crate::padic::{Padic, PrecisionPolicy};

/// `L_φ`, `M_φ` for a linear character `φ` of `G = Gal(K/k)`, indexed by the
/// primes `𝔭_1, …, 𝔭_n` of `k` above `p`.
#[derive(Clone, Debug)]
pub struct IsotypicMatrices {
    pub character: LinearCharacter,
    pub label: String,
    /// Root index of the fixed prime `𝔓_i` over `𝔭_i`.
    pub fixed_primes: Vec<usize>,
    /// `n × n`: `log_p ι_{𝔓_j}(u_{i,φ}) / ord_{𝔓_i}(u_i)`.
    pub l: PadicMatrix,
    /// Selected rows `log_p ι_{𝔓_j}(ε_{t,φ})`.
    pub m: PadicMatrix,
    /// Fixture indices of the units behind the rows of `m`.
    pub unit_rows: Vec<usize>,
    /// `d⁺(φ) − [φ = 1]`, the rank `M_φ` has when Leopoldt holds for `φ`.
    pub expected_m_rank: usize,
    /// True when `m` reached `expected_m_rank`.
    pub m_saturated: bool,
    pub invariants: InvariantTriple,
}

impl IsotypicMatrices {
    pub fn n(&self) -> usize {
        self.l.nrows()
    }

    pub fn is_trivial(&self) -> bool {
        self.character.is_trivial()
    }

    /// Upper bound for `δ^L(φ)`.
    pub fn leopoldt_defect_bound(&self) -> usize {
        self.expected_m_rank - self.m.nrows()
    }
}

/// `"1"` for the trivial character, otherwise its values on the generators
/// as `σ:a/e` meaning `σ ↦ ζ_e^a`.
pub fn character_label(g: &FiniteGroup, phi: &LinearCharacter) -> String {
    if phi.is_trivial() {
        return "1".into();
    }
    g.generators()
        .iter()
        .map(|&s| format!("{}:{}/{}", g.name(s), phi.exponent_at(s), phi.modulus()))
        .collect::<Vec<_>>()
        .join(",")
}

/// Builds `L_φ` and greedily selects unit rows for `M_φ`, in fixture order,
/// until the certified rank reaches `d⁺(φ) − [φ = 1]`.
pub fn isotypic_matrices(
    field: &AdmittedField,
    phi: &LinearCharacter,
    policy: &PrecisionPolicy,
) -> Result<IsotypicMatrices, RegulatorError> {
    let f = &field.field;
    let p = field.p();
    let (g, _) = f.relative_group();
    let invariants = compute_invariants(&ArtinRep::linear(&g, phi), &PlaceData::from_field(f))?;
    let expected = invariants.d_plus as usize - usize::from(phi.is_trivial());
    let fixed: Vec<usize> = field.base_primes().iter().map(|o| o[0]).collect();
    let n = fixed.len();
    let pu = field.complete_p_units()?;

    let l_rows: Vec<Vec<Padic>> = fixed
        .par_iter()
        .map(|&pi| {
            let u = pu[pi];
            let logs = log_vector(field, &u.poly)?;
            let comb = idempotent_project(f, phi, &u.poly, ProjectionMode::Multiplicative)?;
            let inv_v = BigRational::new(BigInt::from(1), BigInt::from(u.valuation));
            fixed
                .iter()
                .map(|&pj| Ok(comb.log_at(field, &logs, pj)?.scale_rational(&inv_v)))
                .collect::<Result<Vec<_>, RegulatorError>>()
        })
        .collect::<Result<_, _>>()?;
    let l = PadicMatrix::new(p, n, l_rows)?;

    let candidates: Vec<Vec<Padic>> = f
        .units
        .par_iter()
        .map(|e| {
            let logs = log_vector(field, e)?;
            let comb = idempotent_project(f, phi, e, ProjectionMode::Unit)?;
            fixed
                .iter()
                .map(|&pj| Ok(comb.log_at(field, &logs, pj)?))
                .collect::<Result<Vec<_>, RegulatorError>>()
        })
        .collect::<Result<_, _>>()?;

    let mut m = PadicMatrix::zeros(p, 0, n);
    let mut unit_rows = Vec::new();
    for (t, row) in candidates.into_iter().enumerate() {
        if m.nrows() == expected {
            break;
        }
        let mut trial = m.clone();
        trial.push_row(row)?;
        let bound = trial.nrows();
        if trial.certified_rank_bounded(policy, bound).rank == bound {
            m = trial;
            unit_rows.push(t);
        }
    }
    Ok(IsotypicMatrices {
        character: phi.clone(),
        label: character_label(&g, phi),
        fixed_primes: fixed,
        m_saturated: m.nrows() == expected,
        l,
        m,
        unit_rows,
        expected_m_rank: expected,
        invariants,
    })
}
