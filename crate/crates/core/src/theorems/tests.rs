use super::*;
use crate::corpus;

fn l(d: u64) -> Lattice {
    Lattice::new(d).unwrap()
}

fn run(m: &GammaMagma, id: &str, d: u64) -> Verdict {
    verify(m, id, l(d), Mode::Exhaustive, VerifyOptions::default()).unwrap()
}

#[test]
fn mode_parsing() {
    assert_eq!("exhaustive".parse::<Mode>().unwrap(), Mode::Exhaustive);
    assert_eq!(
        "sampled:7:200".parse::<Mode>().unwrap(),
        Mode::Sampled { seed: 7, samples: 200 }
    );
    for bad in ["", "sampled", "sampled:x:1", "sampled:1:2:3", "exhaustively"] {
        assert!(bad.parse::<Mode>().is_err(), "{bad}");
    }
    let m = Mode::Sampled { seed: 3, samples: 9 };
    assert_eq!(m.to_string().parse::<Mode>().unwrap(), m);
}

#[test]
fn unknown_id_is_input_error() {
    let err = verify(&corpus::ir5(), "nope", l(1), Mode::Exhaustive, VerifyOptions::default()).unwrap_err();
    assert!(err.is_input());
}

#[test]
fn ids_are_unique() {
    let mut all: Vec<_> = ids().collect();
    let n = all.len();
    all.sort();
    all.dedup();
    assert_eq!(all.len(), n);
}

#[test]
fn absorption_fails_without_factorizations() {
    let m = corpus::non_factorizable_pair();
    let v = run(&m, "sf", 1);
    assert_eq!(v.status, Status::Counterexample);
    let cx = v.witness.as_ref().unwrap();
    assert_eq!(cx.subsets, vec![FuzzySubset::ones(2)]);
    assert!(replay(&m, "sf", l(1), cx, VerifyOptions::default()).unwrap());
    assert_eq!(run(&m, "sf_factorizable", 1).status, Status::HypothesisNotMet);
}

#[test]
fn absorption_holds_on_ir5() {
    assert!(run(&corpus::ir5(), "sf", 2).holds());
    assert!(run(&corpus::ir5(), "l145", 2).holds());
}

#[test]
fn gate_on_left_invertive() {
    let m = corpus::left_zero_pair();
    let v = run(&m, "trm_i", 1);
    assert_eq!(v.status, Status::HypothesisNotMet);
    assert_eq!(v.missing_hypotheses, vec![Hypothesis::GammaAg]);
    assert!(v.bounds.is_none());
}

#[test]
fn tampered_witness_does_not_replay() {
    let m = corpus::non_factorizable_pair();
    let mut cx = run(&m, "sf", 1).witness.unwrap();
    cx.lhs = Evaluation::Subset(FuzzySubset::zeros(2));
    assert!(!replay(&m, "sf", l(1), &cx, VerifyOptions::default()).unwrap());
}

#[test]
fn capacity_reported() {
    let opts = VerifyOptions { budget: 10 };
    let err = verify(&corpus::ir5(), "trm_i", l(1), Mode::Exhaustive, opts).unwrap_err();
    assert!(err.is_capacity());
}

#[test]
fn sampling_is_deterministic() {
    let m = corpus::ag9();
    let mode = Mode::Sampled { seed: 11, samples: 40 };
    let a = verify(&m, "rl_cap_quasi", l(3), mode, VerifyOptions::default()).unwrap();
    let b = verify(&m, "rl_cap_quasi", l(3), mode, VerifyOptions::default()).unwrap();
    assert_eq!(a, b);
    assert!(a.holds());
    assert!(a.bounds.unwrap().premise_hits > 0);
}

#[test]
fn singleton_holds_everything_applicable() {
    let m = corpus::trivial();
    for (id, v) in verify_all(&m, l(2), Mode::Exhaustive, VerifyOptions::default()) {
        let v = v.unwrap();
        assert!(v.holds(), "{id}: {v:?}");
    }
}

#[test]
fn singleton_semilattice_is_the_constants() {
    let r = semilattice_report(&corpus::trivial(), l(3), VerifyOptions::default()).unwrap();
    assert_eq!(r.ideal_count, 4);
    assert!(r.is_semilattice());
}
