mod common;

use proptest::prelude::*;

use godel_lab::codec::encode_formula;
use godel_lab::corpus::{self, corpus};
use godel_lab::lab::replay::{Case, StepStatus};
use godel_lab::lab::{
    bounded_proof_search, check_claim, replay_incompleteness, report, report_json, revalidate,
    ClaimId, SearchOutcome, Status,
};
use godel_lab::proof::check_proof;
use godel_lab::syntax::parse_formula;
use godel_lab::{Arithmetic, Mode, Sentence};

#[test]
fn notboth_holds() {
    let v = check_claim(ClaimId::LemmaNotboth, 10_000, 0);
    assert_eq!(v.status, Status::HoldsOnSamples);
    assert_eq!(v.samples_tried, 10_000);
}

#[test]
fn refaut_witness_is_two_cubed() {
    let v = check_claim(ClaimId::LemmaRefaut, 100, 3);
    assert_eq!(v.status, Status::CounterexampleFound);
    let w = v.witness.as_ref().unwrap();
    // 2^3 in list notation is the one-element sequence [3]
    assert_eq!(w.inputs["x"], "[3]");
    assert_eq!(common::pow2(3), 8u32.into());
    assert!(w.values.iter().all(|p| !p.value));
    assert!(revalidate(&v).unwrap());
}

#[test]
fn autpfautrf_witness() {
    let v = check_claim(ClaimId::LemmaAutpfautrf, 100, 3);
    assert_eq!(v.status, Status::CounterexampleFound);
    let w = v.witness.as_ref().unwrap();
    assert_eq!(w.inputs["x"], "[3]");
    let t = godel_lab::SymbolTable::standard();
    let zero_eq = encode_formula(&parse_formula("(0 = 0)").unwrap(), &t).unwrap();
    assert_eq!(w.inputs["v"], zero_eq.to_string());
    assert!(w.values.iter().all(|p| !p.value));
    assert!(revalidate(&v).unwrap());
}

#[test]
fn tampered_witness_fails_revalidation() {
    let mut v = check_claim(ClaimId::LemmaRefaut, 100, 0);
    v.witness.as_mut().unwrap().values[0].value = true;
    assert!(!revalidate(&v).unwrap());
    let mut v = check_claim(ClaimId::LemmaRefaut, 100, 0);
    // a real proof code: Prf true, Ref false, so no violation
    let s5 = corpus::get("s5_plus_zero").unwrap();
    let code = s5
        .proof
        .encode(&godel_lab::SymbolTable::standard())
        .unwrap();
    let w = v.witness.as_mut().unwrap();
    w.inputs.insert("x".into(), code.to_string());
    w.values[0].value = true;
    assert!(!revalidate(&v).unwrap());
}

#[test]
fn full_report() {
    let r = report(2_000, 7);
    assert_eq!(r.len(), 11);
    let ids: Vec<ClaimId> = r.iter().map(|v| v.claim_id).collect();
    assert_eq!(ids, ClaimId::ALL.to_vec());
    let found = r
        .iter()
        .filter(|v| v.status == Status::CounterexampleFound)
        .count();
    assert!(found >= 2);
    for v in &r {
        if v.claim_id.depends_on_falsifiable() {
            assert_eq!(v.status, Status::DependsOnFalsified, "{}", v.claim_id);
        }
        assert!(revalidate(v).unwrap(), "{}", v.claim_id);
    }
    assert_eq!(report_json(&r), report_json(&report(2_000, 7)));
    let parsed: Vec<godel_lab::lab::ClaimVerdict> = serde_json::from_str(&report_json(&r)).unwrap();
    assert_eq!(parsed, r);
}

#[test]
fn budget_zero() {
    for v in report(0, 9) {
        assert_eq!(v.samples_tried, 0);
        assert_eq!(v.status, Status::NotNumberCheckable);
        assert!(v.witness.is_none());
    }
}

#[test]
fn unknown_claim() {
    assert!("LEMMA_FIVE".parse::<ClaimId>().is_err());
}

#[test]
fn replay_cases() {
    let a = Arithmetic::standard(Mode::Pa);
    let s7 = corpus::get("s7_times_zero").unwrap();
    let delta = Sentence::new(parse_formula("((0 . 0) = 0)").unwrap()).unwrap();
    assert!(replay_incompleteness(&delta, &s7.proof, &a).is_err());

    for e in corpus() {
        let last = e.proof.last_formula().clone();
        let Ok(s) = Sentence::new(last) else { continue };
        let t = replay_incompleteness(&s, &e.proof, &a).unwrap();
        assert_eq!(t.case, Case::Proves);
        assert!(t.pf && !t.rf, "{}", e.name);
        assert_eq!(t.c_rf.value(), 1);
        assert!(t
            .steps
            .iter()
            .all(|s| s.status != StepStatus::EvaluatedFalse));
        if let Some(alpha) = e.refuted() {
            let t = replay_incompleteness(&Sentence::new(alpha.clone()).unwrap(), &e.proof, &a)
                .unwrap();
            assert_eq!(t.case, Case::Refutes);
            assert!(!t.pf && t.rf);
            assert_eq!(t.c_pf.value(), 1);
            assert_eq!(t.c_rf.value(), 0);
        }
    }
}

#[test]
fn search_examples() {
    let s5 = parse_formula("((x1 + 0) = x1)").unwrap();
    let SearchOutcome::Found(p) = bounded_proof_search(&s5, 1, Mode::Pa) else {
        panic!("no proof of S5");
    };
    assert_eq!(p.len(), 1);
    let g = parse_formula("((all x1) ((x1 + 0) = x1))").unwrap();
    let SearchOutcome::Found(p) = bounded_proof_search(&g, 2, Mode::Pa) else {
        panic!("no Gen proof");
    };
    assert_eq!(p.len(), 2);
    let f = parse_formula("(0 = 0')").unwrap();
    assert_eq!(
        bounded_proof_search(&f, 3, Mode::Pa),
        SearchOutcome::Exhausted { bound: 3 }
    );
}

fn search_is_sound(target: &str, bound: usize, mode: Mode) {
    let f = parse_formula(target).unwrap();
    if let SearchOutcome::Found(p) = bounded_proof_search(&f, bound, mode) {
        assert!(check_proof(&p, mode).is_accept(), "{p}");
        let a = Arithmetic::standard(mode);
        let t = a.table();
        assert!(a.pf(&p.encode(t).unwrap(), &encode_formula(&f, t).unwrap()));
        assert!(p.len() <= bound);
    }
}

#[test]
fn search_soundness() {
    for (t, b) in [
        ("((0 + 0) = 0)", 4),
        ("(((x1 + 0) = x1) -> ((0 = 0) -> ((x1 + 0) = x1)))", 1),
        ("((0 = 0) -> ((x1 + 0) = x1))", 3),
        ("((all x2) ((x1 . 0) = 0))", 2),
        ("(~ (0 = 0'))", 4),
    ] {
        search_is_sound(t, b, Mode::Pa);
    }
    search_is_sound("((0 = 0) -> ((0 = 0) -> (0 = 0)))", 2, Mode::Pf);
    assert!(matches!(
        bounded_proof_search(&parse_formula("((0 + 0) = 0)").unwrap(), 4, Mode::Pa),
        SearchOutcome::Found(_)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn notboth_never_fails(seed in any::<u64>(), budget in 1u64..300) {
        let v = check_claim(ClaimId::LemmaNotboth, budget, seed);
        prop_assert_eq!(v.status, Status::HoldsOnSamples);
    }

    #[test]
    fn deterministic(seed in any::<u64>()) {
        for id in [ClaimId::LemmaCharValues, ClaimId::LemmaAntidiag, ClaimId::LemmaConscomp] {
            prop_assert_eq!(check_claim(id, 50, seed), check_claim(id, 50, seed));
        }
    }

    #[test]
    fn search_sound_on_corpus_targets(i in 0usize..55) {
        let e = &corpus()[i % corpus().len()];
        if e.proof.len() <= 2 {
            search_is_sound(&e.proof.last_formula().to_string(), 2, Mode::Pa);
        }
    }
}
