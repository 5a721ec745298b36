//! The bundled structures against the values printed for them.

use agg_core::crisp::{classify_subset, intra_regular_witness, is_intra_regular, IntraWitness};
use agg_core::fuzzy::{gamma_product, level_cut};
use agg_core::{
    check_laws, corpus, from_base_with_terms, CrispSubset, FuzzySubset, Grade, IdealKind, Law, TermPattern,
};

#[test]
fn ag9_is_built_from_its_base_multiplication() {
    let built = from_base_with_terms(
        &corpus::ag9_base(),
        &[TermPattern::SquareLeft, TermPattern::SquareRight],
        Some(vec!["alpha".into(), "beta".into()]),
    )
    .unwrap();
    let m = corpus::ag9();
    assert_eq!(built.flat(), m.flat());
    assert_eq!(built.labels(), m.labels());
}

#[test]
fn ag9_laws() {
    let m = corpus::ag9();
    let r = check_laws(&m);
    assert!(r.holds(Law::LeftInvertive));
    assert!(r.holds(Law::Band));
    assert!(!r.holds(Law::Commutative));
    assert!(!r.holds(Law::Associative));
    // 9α1 ≠ 1α9 and (6α7)β8 ≠ 6α(7β8), in 0-based indices.
    let (l, r9) = Law::Commutative.sides(&m, &[8, 0], &[0]).unwrap();
    assert_ne!(l, r9);
    let (l, r) = Law::Associative.sides(&m, &[5, 6, 7], &[0, 1]).unwrap();
    assert_ne!(l, r);
    for (law, w) in check_laws(&m).iter() {
        if let Some(w) = w {
            assert!(w.confirms(&m, law), "{law}");
        }
    }
}

#[test]
fn ir5_laws_and_intra_regularity() {
    let m = corpus::ir5();
    let r = check_laws(&m);
    assert!(r.holds(Law::LeftInvertive));
    assert!(r.holds(Law::AgStarStar));
    assert!(is_intra_regular(&m));
}

fn e(name: &str) -> usize {
    corpus::ir5().parse_element(name).unwrap()
}

#[test]
fn ir5_printed_intra_regular_witnesses_replay() {
    // a=(b1(a1a))1a, b=(c1(b1b))1d, c=(c1(c1c))1d, d=(c1(d1d))1e, e=(c1(e1e))1c
    let m = corpus::ir5();
    let printed = [
        ("a", "b", "a"),
        ("b", "c", "d"),
        ("c", "c", "d"),
        ("d", "c", "e"),
        ("e", "c", "c"),
    ];
    for (a, x, y) in printed {
        let w = IntraWitness {
            element: e(a),
            x: e(x),
            y: e(y),
            beta: 0,
            xi: 0,
            gamma: 0,
        };
        assert!(w.holds(&m), "{a} = ({x} 1 ({a} 1 {a})) 1 {y}");
    }
}

#[test]
fn ir5_least_witnesses() {
    let m = corpus::ir5();
    // (a 1 (a 1 a)) 1 a = a, so a's least witness is (a, a).
    let wa = intra_regular_witness(&m, e("a")).unwrap().unwrap();
    assert_eq!((wa.x, wa.y), (e("a"), e("a")));
    let wc = intra_regular_witness(&m, e("c")).unwrap().unwrap();
    assert_eq!((wc.x, wc.y), (e("c"), e("d")));
}

#[test]
fn ir5_ab_is_two_sided() {
    let m = corpus::ir5();
    let ab = CrispSubset::from_elements(5, [e("a"), e("b")]).unwrap();
    assert!(classify_subset(&m, &ab).unwrap().contains(IdealKind::TwoSided));
}

#[test]
fn ir5_fuzzy_product_example() {
    // (1/2 at c) ∘ (7/10 at d) is 1/2 at e, since c·d = e.
    let m = corpus::ir5();
    let f = FuzzySubset::point(5, e("c"), Grade::new(1, 2)).unwrap();
    let g = FuzzySubset::point(5, e("d"), Grade::new(7, 10)).unwrap();
    let p = gamma_product(&m, &f, &g).unwrap();
    assert_eq!(p, FuzzySubset::point(5, e("e"), Grade::new(1, 2)).unwrap());
    assert!(level_cut(&p, Grade::new(3, 5)).unwrap().is_empty());
}

#[test]
fn order_two_non_factorizable_element() {
    let m = corpus::non_factorizable_pair();
    assert!(!m.is_factorizable(0));
    assert!(check_laws(&m).holds(Law::LeftInvertive));
    let one = FuzzySubset::ones(2);
    assert_eq!(gamma_product(&m, &one, &one).unwrap().get(0), Grade::from_integer(0));
}
