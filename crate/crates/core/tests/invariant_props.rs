mod common;

use common::{add, group, places, rep, SHAPES};
use gkdefect::invariants::{compute_invariants, ArtinRep};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (usize, u64, Vec<u8>, Vec<u8>, Vec<usize>)> {
    (
        0..=SHAPES.len(),
        1u64..4,
        proptest::collection::vec(0u8..3, 1..5),
        proptest::collection::vec(0u8..3, 1..5),
        proptest::collection::vec(0usize..1000, 4..8),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn additive_and_bounded((shape, degree, m1, m2, picks) in instance()) {
        let g = group(shape);
        let pd = places(&g, degree, &picks);
        let (a, b) = (rep(&g, &m1), rep(&g, &m2));
        let sum = ArtinRep::new(g.clone(), a.character.add(&b.character)).unwrap();
        let (ta, tb, ts) = (
            compute_invariants(&a, &pd).unwrap(),
            compute_invariants(&b, &pd).unwrap(),
            compute_invariants(&sum, &pd).unwrap(),
        );
        prop_assert_eq!(ts, add(ta, tb));
        for t in [ta, tb, ts] {
            prop_assert!(t.d_plus <= t.d && t.f <= t.d);
        }
    }

    #[test]
    fn induction((shape, degree, m1, _m2, picks) in instance()) {
        let g = group(shape);
        let pd = places(&g, degree, &picks);
        let h = g.generated(&[picks[3] % g.order()]);
        let (hg, h) = g.subgroup(&h).unwrap();
        let psi = rep(&hg, &m1);
        let ind = ArtinRep::new(g.clone(), psi.character.induce(&g, &h)).unwrap();
        let below = compute_invariants(&psi, &pd.restrict(&g, &h)).unwrap();
        prop_assert_eq!(compute_invariants(&ind, &pd).unwrap(), below);
    }

    #[test]
    fn inflation((shape, degree, m1, _m2, picks) in instance()) {
        let g = group(shape);
        let pd = places(&g, degree, &picks);
        let n = g.normal_closure(&[picks[2] % g.order()]);
        let (q, map) = g.quotient(&n).unwrap();
        let rho = rep(&q, &m1);
        let inflated = ArtinRep::new(g.clone(), rho.character.pullback(&map)).unwrap();
        prop_assert_eq!(
            compute_invariants(&inflated, &pd).unwrap(),
            compute_invariants(&rho, &pd.push_forward(&map, &q)).unwrap()
        );
    }
}
