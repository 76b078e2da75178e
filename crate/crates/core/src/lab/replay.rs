//! Replay of the two cases of the incompleteness argument on a concrete
//! proof: a proof `r` of `δ`, or a proof `r` of `(~ δ)`.

use serde::Serialize;
use thiserror::Error;

use crate::code::CodeExpr;
use crate::codec::{encode_formula, CodecError};
use crate::predicates::{Arithmetic, CharValue};
use crate::proof::{check_proof, Proof};
use crate::syntax::{Formula, Sentence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("the proof ends in {found}, which is neither {delta} nor its negation")]
    Unrelated { delta: String, found: String },
    #[error(transparent)]
    Codec(#[from] CodecError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepStatus {
    EvaluatedTrue,
    EvaluatedFalse,
    ProvabilityClaimNotEvaluated,
}

impl StepStatus {
    fn of(b: bool) -> StepStatus {
        if b {
            StepStatus::EvaluatedTrue
        } else {
            StepStatus::EvaluatedFalse
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub claim: String,
    pub status: StepStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `r` proves `δ`.
    Proves,
    /// `r` proves `(~ δ)`.
    Refutes,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trace {
    pub case: Case,
    pub delta: String,
    /// `⌜p⌝` in list notation.
    pub r: String,
    /// `⌜δ⌝` in list notation.
    pub q: String,
    pub pf: bool,
    pub rf: bool,
    pub c_pf: CharValue,
    pub c_rf: CharValue,
    pub steps: Vec<Step>,
}

fn claim(s: impl Into<String>, status: StepStatus) -> Step {
    Step {
        claim: s.into(),
        status,
    }
}

pub fn replay_incompleteness(
    delta: &Sentence,
    p: &Proof,
    arith: &Arithmetic,
) -> Result<Trace, ReplayError> {
    let d = delta.formula();
    let last = p.last_formula();
    let case = if last == d {
        Case::Proves
    } else if *last == Formula::not(d.clone()) {
        Case::Refutes
    } else {
        return Err(ReplayError::Unrelated {
            delta: d.to_string(),
            found: last.to_string(),
        });
    };
    let table = arith.table();
    let r: CodeExpr = p.encode(table)?;
    let q = encode_formula(d, table)?;
    let pf = arith.pf(&r, &q);
    let rf = arith.rf(&r, &q);
    let c_pf = CharValue::of(pf);
    let c_rf = CharValue::of(rf);
    let valid = check_proof(p, arith.mode()).is_accept();

    let mut steps = Vec::new();
    use StepStatus::*;
    match case {
        Case::Proves => {
            steps.push(claim("assume ⊢ δ", ProvabilityClaimNotEvaluated));
            steps.push(claim(
                "r is the code of a proof of δ: Prf(r)",
                StepStatus::of(arith.prf(&r) && valid),
            ));
            steps.push(claim("Pf(r, q)", StepStatus::of(pf)));
            steps.push(claim(
                "C_Pf(r, q) = 0",
                StepStatus::of(c_pf == CharValue::TRUE),
            ));
            steps.push(claim("⊢ Pf(r̄, q̄)", ProvabilityClaimNotEvaluated));
            steps.push(claim("¬Rf(r, q)", StepStatus::of(!rf)));
            steps.push(claim(
                "C_Rf(r, q) = 1",
                StepStatus::of(c_rf == CharValue::FALSE),
            ));
            steps.push(claim("⊢ ¬Rf(r̄, q̄)", ProvabilityClaimNotEvaluated));
            steps.push(claim(
                "δ ⇒ ⊢ ¬δ, hence inconsistency",
                ProvabilityClaimNotEvaluated,
            ));
        }
        Case::Refutes => {
            steps.push(claim("assume ⊢ ¬δ", ProvabilityClaimNotEvaluated));
            steps.push(claim(
                "r is the code of a proof of ¬δ: Prf(r)",
                StepStatus::of(arith.prf(&r) && valid),
            ));
            steps.push(claim("Rf(r, q)", StepStatus::of(rf)));
            steps.push(claim(
                "C_Rf(r, q) = 0",
                StepStatus::of(c_rf == CharValue::TRUE),
            ));
            steps.push(claim("⊢ Rf(r̄, q̄)", ProvabilityClaimNotEvaluated));
            steps.push(claim("¬Pf(r, q)", StepStatus::of(!pf)));
            steps.push(claim(
                "C_Pf(r, q) = 1",
                StepStatus::of(c_pf == CharValue::FALSE),
            ));
            steps.push(claim("⊢ ¬Pf(r̄, q̄)", ProvabilityClaimNotEvaluated));
            steps.push(claim(
                "¬δ ⇒ ⊢ δ, hence inconsistency",
                ProvabilityClaimNotEvaluated,
            ));
        }
    }
    Ok(Trace {
        case,
        delta: d.to_string(),
        r: r.to_string(),
        q: q.to_string(),
        pf,
        rf,
        c_pf,
        c_rf,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Mode;
    use crate::corpus;

    #[test]
    fn both_cases_and_unrelated() {
        let a = Arithmetic::standard(Mode::Pa);
        let refute = corpus::get("refute_zero_one").unwrap();
        let alpha = refute.refuted().unwrap().clone();
        let t = replay_incompleteness(&Sentence::new(alpha.clone()).unwrap(), &refute.proof, &a)
            .unwrap();
        assert_eq!(t.case, Case::Refutes);
        assert!(!t.pf && t.rf);

        let neg = Sentence::new(refute.proof.last_formula().clone()).unwrap();
        let t = replay_incompleteness(&neg, &refute.proof, &a).unwrap();
        assert_eq!(t.case, Case::Proves);
        assert!(t.pf && !t.rf);
        assert_eq!(t.c_rf, CharValue::FALSE);

        let other = corpus::get("s5_plus_zero").unwrap();
        assert!(matches!(
            replay_incompleteness(&Sentence::new(alpha).unwrap(), &other.proof, &a),
            Err(ReplayError::Unrelated { .. })
        ));
    }
}
