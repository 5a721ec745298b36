//! Randomized invariants of the fuzzy and crisp layers.

use std::sync::OnceLock;

use agg_core::crisp::{classify_subset, set_product};
use agg_core::finder::{enumerate_models, SearchSpec};
use agg_core::fuzzy::{characteristic, classify_fuzzy, closure, gamma_product, join, leq, level_cut, meet};
use agg_core::theorems::{replay, verify};
use agg_core::{corpus, CrispSubset, FuzzyKind, FuzzySubset, GammaMagma, Grade, Lattice, Law, Mode, VerifyOptions};
use proptest::prelude::*;

/// ir5, ag9 and every left invertive magma of order 3 with one or two labels.
fn structures() -> &'static [GammaMagma] {
    static ALL: OnceLock<Vec<GammaMagma>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut v = vec![corpus::ir5(), corpus::ag9(), corpus::non_factorizable_pair()];
        for k in 1..=2 {
            v.extend(enumerate_models(&SearchSpec::new(3, k, vec![Law::LeftInvertive])).unwrap());
        }
        v
    })
}

fn fuzzy(values: &[u64], den: u64, order: usize) -> FuzzySubset {
    let nums: Vec<u64> = values.iter().take(order).map(|v| v % (den + 1)).collect();
    FuzzySubset::from_fractions(den, &nums).unwrap()
}

fn case() -> impl Strategy<Value = (usize, u64, Vec<u64>, Vec<u64>, u64)> {
    (
        0..structures().len(),
        1u64..=6,
        prop::collection::vec(0u64..100, 9),
        prop::collection::vec(0u64..100, 9),
        1u64..100,
    )
}

const POINTWISE: [FuzzyKind; 7] = [
    FuzzyKind::Subgroupoid,
    FuzzyKind::Left,
    FuzzyKind::Right,
    FuzzyKind::TwoSided,
    FuzzyKind::Bi,
    FuzzyKind::GeneralizedBi,
    FuzzyKind::Interior,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cut_of_product_is_product_of_cuts((i, d, a, b, t) in case()) {
        let m = &structures()[i];
        let (f, g) = (fuzzy(&a, d, m.order()), fuzzy(&b, d, m.order()));
        let t = Grade::new(t % d + 1, d);
        let lhs = level_cut(&gamma_product(m, &f, &g).unwrap(), t).unwrap();
        let rhs = set_product(m, &level_cut(&f, t).unwrap(), &level_cut(&g, t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pointwise_kinds_are_decided_by_cuts((i, d, a, _b, _t) in case()) {
        let m = &structures()[i];
        let f = fuzzy(&a, d, m.order());
        let kinds = classify_fuzzy(m, &f).unwrap();
        for kind in POINTWISE {
            let crisp = kind.crisp().unwrap();
            let all_cuts = (1..=d).all(|n| {
                let cut = level_cut(&f, Grade::new(n, d)).unwrap();
                cut.is_empty() || classify_subset(m, &cut).unwrap().contains(crisp)
            });
            prop_assert_eq!(kinds.contains(kind), all_cuts, "{}", kind);
        }
    }

    #[test]
    fn product_is_monotone((i, d, a, b, _t) in case()) {
        let m = &structures()[i];
        let (f, g) = (fuzzy(&a, d, m.order()), fuzzy(&b, d, m.order()));
        let small = meet(&f, &g).unwrap();
        let big = join(&f, &g).unwrap();
        let lo = gamma_product(m, &small, &small).unwrap();
        prop_assert!(leq(&lo, &gamma_product(m, &f, &g).unwrap()).unwrap());
        prop_assert!(leq(&gamma_product(m, &f, &g).unwrap(), &gamma_product(m, &big, &big).unwrap()).unwrap());
    }

    #[test]
    fn closure_is_least((i, d, a, b, _t) in case()) {
        let m = &structures()[i];
        let f = fuzzy(&a, d, m.order());
        let g = fuzzy(&b, d, m.order());
        for kind in FuzzyKind::ALL.into_iter().filter(|k| *k != FuzzyKind::Idempotent) {
            let c = closure(m, &f, kind).unwrap().unwrap();
            prop_assert!(classify_fuzzy(m, &c).unwrap().contains(kind));
            prop_assert_eq!(closure(m, &c, kind).unwrap().unwrap(), c.clone());
            // Any member of the kind above f is above the closure.
            let above = closure(m, &join(&f, &g).unwrap(), kind).unwrap().unwrap();
            prop_assert!(leq(&c, &above).unwrap());
        }
    }
}

#[test]
fn characteristic_functions_bridge_crisp_and_fuzzy() {
    for m in structures().iter().take(12) {
        for mask in 1..(1u64 << m.order()) {
            let a = CrispSubset::from_mask(m.order(), mask);
            let crisp = classify_subset(m, &a).unwrap();
            let fuzzy = classify_fuzzy(m, &characteristic(&a)).unwrap();
            for kind in crisp.iter() {
                assert!(fuzzy.contains(FuzzyKind::from(kind)), "{a:?} {kind}");
            }
            for kind in fuzzy.iter().filter_map(FuzzyKind::crisp) {
                assert!(crisp.contains(kind), "{a:?} {kind}");
            }
        }
    }
}

#[test]
fn absorption_counterexamples_replay() {
    let l = Lattice::new(1).unwrap();
    let opts = VerifyOptions::default();
    let mut seen = 0;
    for m in structures() {
        for id in ["sf", "sf_factorizable", "sf_left_identity"] {
            let v = verify(m, id, l, Mode::Exhaustive, opts).unwrap();
            let Some(cx) = &v.witness else { continue };
            seen += 1;
            assert_ne!(id, "sf_left_identity");
            assert!(replay(m, id, l, cx, opts).unwrap());
            let f = &cx.subsets[0];
            assert_ne!(&gamma_product(m, &FuzzySubset::ones(m.order()), f).unwrap(), f);
        }
    }
    assert!(seen > 0);
}

#[test]
fn factorizability_does_not_force_absorption() {
    // 2 γ 2 = 1, but χ{0, 1} is a left ideal and 1 is no product landing in it.
    let m = GammaMagma::new(
        vec!["g0".into(), "g1".into()],
        vec![
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]],
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 2]],
        ],
    )
    .unwrap();
    assert!(m.every_element_factorizable());
    let l = Lattice::new(1).unwrap();
    let v = verify(&m, "sf_factorizable", l, Mode::Exhaustive, VerifyOptions::default()).unwrap();
    let cx = v.witness.unwrap();
    assert_eq!(cx.subsets, vec![FuzzySubset::from_fractions(1, &[1, 1, 0]).unwrap()]);
}

#[test]
fn sampled_verdicts_are_reproducible() {
    let m = corpus::ir5();
    let l = Lattice::new(4).unwrap();
    for id in ["trm_i", "agss_ii", "idemquasi_prod_bi", "cap_eq_prod"] {
        let mode = Mode::Sampled {
            seed: 2024,
            samples: 60,
        };
        let a = verify(&m, id, l, mode, VerifyOptions::default()).unwrap();
        let b = verify(&m, id, l, mode, VerifyOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.holds(), "{id}");
    }
}

#[test]
fn intra_regular_ag_star_star_models_satisfy_every_statement() {
    let mut spec = SearchSpec::new(3, 1, vec![Law::LeftInvertive, Law::AgStarStar]);
    spec.intra_regular = true;
    let models = enumerate_models(&spec).unwrap();
    assert!(!models.is_empty());
    let l = Lattice::new(1).unwrap();
    for m in &models {
        for (id, v) in agg_core::verify_all(m, l, Mode::Exhaustive, VerifyOptions::default()) {
            assert!(!v.unwrap().is_counterexample(), "{id} on {:?}", m.flat());
        }
    }
}
