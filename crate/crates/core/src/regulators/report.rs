use serde::Serialize;

use super::{gross_matrix, isotypic_matrices, leopoldt_matrix, PadicMatrix, RegulatorError};
use crate::algebra::linear_characters;
use crate::fixtures::AdmittedField;
use crate::padic::PrecisionPolicy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefectKind {
    Leopoldt,
    Gross,
}

impl std::str::FromStr for DefectKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "leopoldt" => Ok(DefectKind::Leopoldt),
            "gross" => Ok(DefectKind::Gross),
            _ => Err(format!("unknown defect kind {s:?} (expected leopoldt or gross)")),
        }
    }
}

/// A one-sided defect verdict: the computed rank never exceeds the true rank,
/// so `defect_upper_bound` never falls below the true defect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedDefect {
    pub kind: DefectKind,
    pub field_id: String,
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    pub character: Option<String>,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// The rank the matrix has when the defect vanishes.
    pub structural_rank: usize,
    pub saturated: bool,
    pub certified: bool,
    pub defect_upper_bound: usize,
}

fn verdict(
    kind: DefectKind,
    field: &AdmittedField,
    policy: &PrecisionPolicy,
    character: Option<String>,
    m: &PadicMatrix,
    structural: usize,
    offset: usize,
) -> CertifiedDefect {
    let c = m.certified_rank_bounded(policy, structural);
    CertifiedDefect {
        kind,
        field_id: field.field.id.clone(),
        p: field.p(),
        precision: policy.precision,
        character,
        rows: m.nrows(),
        cols: m.ncols(),
        rank: c.rank,
        structural_rank: structural,
        saturated: c.saturated,
        certified: c.rank == structural,
        defect_upper_bound: structural - c.rank + offset,
    }
}

/// Builds the relevant matrix and certifies its rank. With a character index
/// (into [`linear_characters`] of `Gal(K/k)`), works on the isotypic pieces:
/// `M_φ` for Leopoldt, and `[L_φ; M_φ]` (the cyclotomic coordinates) for
/// Gross.
pub fn defect_report(
    field: &AdmittedField,
    kind: DefectKind,
    policy: &PrecisionPolicy,
    character: Option<usize>,
) -> Result<CertifiedDefect, RegulatorError> {
    let n = field.field.degree();
    let Some(idx) = character else {
        return Ok(match kind {
            DefectKind::Leopoldt => {
                let m = leopoldt_matrix(field)?;
                let r = m.nrows();
                verdict(kind, field, policy, None, &m, r, 0)
            }
            DefectKind::Gross => {
                let m = gross_matrix(field)?.leading_columns(n - 1);
                verdict(kind, field, policy, None, &m, n - 1, 0)
            }
        });
    };
    let (g, _) = field.field.relative_group();
    let chars = linear_characters(&g);
    let phi = chars.get(idx).ok_or(RegulatorError::NoSuchCharacter {
        index: idx,
        count: chars.len(),
    })?;
    let iso = isotypic_matrices(field, phi, policy)?;
    let label = Some(iso.label.clone());
    Ok(match kind {
        DefectKind::Leopoldt => {
            let missing = iso.expected_m_rank - iso.m.nrows();
            let mut d = verdict(kind, field, policy, label, &iso.m, iso.m.nrows(), missing);
            d.structural_rank = iso.expected_m_rank;
            d.certified = iso.m_saturated;
            d
        }
        DefectKind::Gross => {
            let gamma = usize::from(iso.is_trivial());
            let stacked = iso.l.stack(&iso.m)?;
            let mut d = verdict(kind, field, policy, label, &stacked, iso.n() - gamma, 0);
            d.certified &= iso.m_saturated;
            d
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::quadratic_builtin;

    #[test]
    fn gaussian_gross_defect_vanishes() {
        let f = quadratic_builtin(-1, 5, 50).unwrap();
        let d = defect_report(&f, DefectKind::Gross, &PrecisionPolicy::new(50), None).unwrap();
        assert_eq!((d.rank, d.defect_upper_bound, d.certified), (1, 0, true));
        let l = defect_report(&f, DefectKind::Leopoldt, &PrecisionPolicy::new(50), None).unwrap();
        assert_eq!((l.rows, l.defect_upper_bound, l.certified), (0, 0, true));
    }

    #[test]
    fn sqrt2_leopoldt_defect_vanishes() {
        let f = quadratic_builtin(2, 7, 50).unwrap();
        let d = defect_report(&f, DefectKind::Leopoldt, &PrecisionPolicy::new(50), None).unwrap();
        assert_eq!((d.rank, d.defect_upper_bound, d.certified), (1, 0, true));
    }

    #[test]
    fn character_reports_match_direct_ones_for_trivial_group() {
        let f = quadratic_builtin(3, 11, 40).unwrap();
        let pol = PrecisionPolicy::new(40);
        for kind in [DefectKind::Leopoldt, DefectKind::Gross] {
            let direct = defect_report(&f, kind, &pol, None).unwrap();
            let iso = defect_report(&f, kind, &pol, Some(0)).unwrap();
            assert_eq!(direct.rank, iso.rank);
            assert_eq!(direct.defect_upper_bound, iso.defect_upper_bound);
        }
        assert!(defect_report(&f, DefectKind::Gross, &pol, Some(1)).is_err());
    }
}
