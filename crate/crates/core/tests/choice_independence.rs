//! Changing a p-unit generator by a unit, or a unit by its inverse, must not
//! change any defect report.

use gkdefect::fixtures::{admit, load_fixture, quadratic_document, FixtureDocument, NumberField};
use gkdefect::padic::PrecisionPolicy;
use gkdefect::regulators::{defect_report, CertifiedDefect, DefectKind};
use num_rational::BigRational;

fn strings(x: &[BigRational]) -> Vec<String> {
    x.iter().map(|c| c.to_string()).collect()
}

fn parse(x: &[String]) -> Vec<BigRational> {
    x.iter().map(|s| s.parse().unwrap()).collect()
}

/// Every p-unit times the first unit, and the first unit inverted.
fn rechoose(doc: &FixtureDocument) -> FixtureDocument {
    let f = NumberField::from_document(doc).unwrap();
    let mut out = doc.clone();
    let eps = parse(&doc.units[0]);
    let n = f.degree();
    let inv = inverse(&f, &eps, n);
    for pr in &mut out.primes {
        for u in &mut pr.p_units {
            u.poly = strings(&f.mul(&parse(&u.poly), &eps));
        }
    }
    out.units[0] = strings(&inv);
    out
}

/// Inverse in `K` by linear algebra on the multiplication-by-`a` matrix.
fn inverse(f: &NumberField, a: &[BigRational], n: usize) -> Vec<BigRational> {
    use num_traits::{One, Zero};
    let basis = |i: usize| {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        e
    };
    // columns a·θ^i
    let cols: Vec<Vec<BigRational>> = (0..n).map(|i| f.mul(a, &basis(i))).collect();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..n).map(|c| cols[c][r].clone()).collect();
            row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).unwrap();
        m.swap(c, p);
        let inv = BigRational::one() / m[c][c].clone();
        for x in &mut m[c] {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let k = m[r][c].clone();
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&k * y);
                }
            }
        }
    }
    m.into_iter().map(|r| r[n].clone()).collect()
}

fn reports(doc: &FixtureDocument, p: u64) -> Vec<CertifiedDefect> {
    let f = NumberField::from_document(doc).unwrap();
    let a = admit(&f, p, 40).unwrap();
    let pol = PrecisionPolicy::new(40);
    let (g, _) = f.relative_group();
    let mut out = Vec::new();
    for kind in [DefectKind::Leopoldt, DefectKind::Gross] {
        out.push(defect_report(&a, kind, &pol, None).unwrap());
        for i in 0..g.order() {
            out.push(defect_report(&a, kind, &pol, Some(i)).unwrap());
        }
    }
    out
}

fn same(doc: &FixtureDocument, p: u64) {
    let other = rechoose(doc);
    assert_ne!(&other, doc);
    assert_eq!(reports(doc, p), reports(&other, p));
}

#[test]
fn real_quadratic_reports_do_not_depend_on_generators() {
    for d in [2, 3, 5] {
        let p = gkdefect::fixtures::quadratic::split_primes(d, 1)[0];
        same(&quadratic_document(d, &[p]).unwrap(), p);
    }
}

#[test]
fn corpus_reports_do_not_depend_on_generators() {
    for (name, p) in [("zeta8_over_qi", 17), ("cyclic_cubic_7", 13), ("s3_sextic_over_qi", 97)] {
        let path = format!("{}/../../fixtures/{name}.toml", env!("CARGO_MANIFEST_DIR"));
        let doc = FixtureDocument::from_toml(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert!(load_fixture(&doc.to_toml()).is_ok());
        same(&doc, p);
    }
}
