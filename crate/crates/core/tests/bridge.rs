//! The structural checker and the arithmetic predicates agree.

mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use godel_lab::codec::encode_formula;
use godel_lab::corpus::corpus;
use godel_lab::proof::{check_proof, check_sequence, mutate_proof_described, Proof};
use godel_lab::{Arithmetic, CodeExpr, Formula, Mode, SymbolTable};

fn agree(p: &Proof, arith: &Arithmetic) -> Result<bool, String> {
    let t = arith.table();
    let structural = check_proof(p, arith.mode()).is_accept();
    let c = p.encode(t).map_err(|e| e.to_string())?;
    let last = encode_formula(p.last_formula(), t).map_err(|e| e.to_string())?;
    let prf = arith.prf(&c);
    let pf = arith.pf(&c, &last);
    if structural == prf && prf == pf {
        Ok(structural)
    } else {
        Err(format!(
            "structural {structural}, Prf {prf}, Pf {pf} on\n{p}"
        ))
    }
}

#[test]
fn corpus_agrees() {
    let a = Arithmetic::standard(Mode::Pa);
    assert!(corpus().len() >= 50);
    for e in corpus() {
        assert_eq!(agree(&e.proof, &a), Ok(true), "{}", e.name);
    }
}

#[test]
fn mutations_agree() {
    let a = Arithmetic::standard(Mode::Pa);
    let mut rejected = 0;
    let mut kinds = std::collections::HashSet::new();
    let mut n = 0;
    for e in corpus() {
        for seed in 1..=6u64 {
            let (p, kind) = mutate_proof_described(&e.proof, seed * 7919 + e.name.len() as u64);
            kinds.insert(format!("{kind:?}"));
            match agree(&p, &a) {
                Ok(ok) => rejected += !ok as usize,
                Err(msg) => panic!("{} seed {seed} ({kind:?}): {msg}", e.name),
            }
            n += 1;
        }
    }
    assert!(n >= 200);
    assert!(rejected > n / 3, "only {rejected} of {n} mutants rejected");
    assert!(kinds.len() >= 4, "{kinds:?}");
}

#[test]
fn pf_mode_rejects_proper_axioms() {
    let pa = Arithmetic::standard(Mode::Pa);
    let pf = Arithmetic::standard(Mode::Pf);
    let s5 = godel_lab::corpus::get("s5_plus_zero").unwrap();
    assert_eq!(agree(&s5.proof, &pa), Ok(true));
    assert_eq!(agree(&s5.proof, &pf), Ok(false));
    let a1 = godel_lab::corpus::get("a1_equations").unwrap();
    assert_eq!(agree(&a1.proof, &pf), Ok(true));
}

#[test]
fn toy_proofs_match_oracle() {
    let toy = Arithmetic::toy();
    let table = SymbolTable::toy();
    let a = Formula::Atom;
    for k in 1..=4 {
        let lines = vec![a.clone(); k];
        assert!(check_sequence(&lines, Mode::Toy).is_accept());
        let p = Proof::from_formulas(lines, Mode::Toy).unwrap();
        assert_eq!(agree(&p, &toy), Ok(true));
        let n = common::seq_int(&vec![BigUint::from(2u32); k]);
        assert!(p
            .encode(&table)
            .unwrap()
            .code_equal(&CodeExpr::from_integer(&n).unwrap()));
    }
    let bad = Proof::from_formulas(vec![Formula::not(a)], Mode::Toy).unwrap();
    assert_eq!(agree(&bad, &toy), Ok(false));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_sequences_agree(fs in proptest::collection::vec(common::arb_formula(), 1..4)) {
        let a = Arithmetic::standard(Mode::Pa);
        let p = Proof::from_formulas(fs, Mode::Pa).unwrap();
        prop_assert!(agree(&p, &a).is_ok(), "{}", agree(&p, &a).unwrap_err());
    }
}

#[test]
fn rf_footnote_expansion_agrees() {
    let a = Arithmetic::standard(Mode::Pa);
    let t = a.table();
    let mut n = 0;
    for e in corpus() {
        let x = e.proof.encode(t).unwrap();
        let mut vs = vec![encode_formula(e.proof.last_formula(), t).unwrap()];
        if let Some(alpha) = e.refuted() {
            vs.push(encode_formula(alpha, t).unwrap());
        }
        for v in vs {
            assert_eq!(a.rf(&x, &v), a.rf_expanded(&x, &v), "{}", e.name);
            n += a.rf(&x, &v) as usize;
        }
    }
    assert!(n > 0);
}
