use rayon::prelude::*;

use super::{PadicMatrix, RegulatorError};
use crate::fixtures::{AdmittedField, Elem, FixtureError};
use crate::padic::{iwasawa_log, Padic};

/// `(log_p ι_1(x), …, log_p ι_n(x))` at absolute precision `N`.
pub fn log_vector(field: &AdmittedField, x: &Elem) -> Result<Vec<Padic>, RegulatorError> {
    let n = field.field.degree();
    let prec = i64::from(field.precision());
    (0..n)
        .into_par_iter()
        .map(|j| {
            let y = field.embeddings.embed(x, j);
            Ok(iwasawa_log(&y)?.truncate_abs(prec))
        })
        .collect()
}

fn log_rows(field: &AdmittedField, xs: &[&Elem], negate: bool) -> Result<Vec<Vec<Padic>>, RegulatorError> {
    xs.par_iter()
        .map(|x| {
            let v = log_vector(field, x)?;
            Ok(if negate { v.into_iter().map(|e| -e).collect() } else { v })
        })
        .collect()
}

/// Rows `ε_i`, columns `𝔓_j`, entry `log_p ι_{𝔓_j}(ε_i)`.
pub fn leopoldt_matrix(field: &AdmittedField) -> Result<PadicMatrix, RegulatorError> {
    let f = &field.field;
    if f.units.len() != f.unit_rank() {
        return Err(FixtureError::Invariant(format!(
            "{} units listed, unit rank is {}",
            f.units.len(),
            f.unit_rank()
        ))
        .into());
    }
    let xs: Vec<&Elem> = f.units.iter().collect();
    PadicMatrix::new(field.p(), f.degree(), log_rows(field, &xs, false)?)
}

/// Units then p-units, entry `−log_p ι_{𝔓_j}(x_i)`. All rows lie in the
/// hyperplane `Σ_j s_j = 0`.
pub fn gross_matrix(field: &AdmittedField) -> Result<PadicMatrix, RegulatorError> {
    let f = &field.field;
    let pu = field.complete_p_units()?;
    let xs: Vec<&Elem> = f.units.iter().chain(pu.iter().map(|u| &u.poly)).collect();
    PadicMatrix::new(field.p(), f.degree(), log_rows(field, &xs, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::quadratic_builtin;
    use crate::padic::PrecisionPolicy;

    #[test]
    fn imaginary_quadratic_has_empty_leopoldt_matrix() {
        let f = quadratic_builtin(-1, 5, 50).unwrap();
        let m = leopoldt_matrix(&f).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (0, 2));
    }

    #[test]
    fn real_quadratic_leopoldt_row() {
        let f = quadratic_builtin(2, 7, 50).unwrap();
        let m = leopoldt_matrix(&f).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (1, 2));
        let s = m.get(0, 0) + m.get(0, 1);
        assert!(PrecisionPolicy::new(50).is_apparent_zero(&s));
        assert!(!m.get(0, 0).is_indistinguishable_from_zero());
        assert_eq!(m.certified_rank(&PrecisionPolicy::new(50)).rank, 1);
    }

    #[test]
    fn gaussian_gross_rows_sum_to_zero() {
        let f = quadratic_builtin(-1, 5, 50).unwrap();
        let m = gross_matrix(&f).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (2, 2));
        for i in 0..2 {
            let s = m.get(i, 0) + m.get(i, 1);
            assert!(s.valuation().is_none_or(|v| v >= 48));
            assert!(m.get(i, 0).valuation().is_some_and(|v| v < 48));
        }
    }
}
