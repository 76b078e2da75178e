//! Evaluation of the lemmas and theorems about `Pf`, `Prf`, `Rf`, `Ref` on
//! concrete numbers.
//!
//! Each claim gets a verdict: it held on every sample, a counterexample was
//! found, it is not decidable by evaluating numbers (a statement about
//! PA-provability), or its argument rests on a claim falsified in the same
//! run. Witnesses store codes in list notation together with the predicate
//! values observed, so they can be re-evaluated independently.

pub mod replay;
pub mod sample;
pub mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{proper_axiom, Mode};
use crate::code::{CodeError, CodeExpr};
use crate::codec::encode_formula;
use crate::diagonal::diagonalize;
use crate::predicates::{Arithmetic, PredicateError, PredicateId};
use crate::proof::check_proof;
use crate::syntax::{parse_formula, Formula, Term};
use crate::table::SymbolTable;

pub use replay::{replay_incompleteness, ReplayError, Trace};
pub use search::{bounded_proof_search, SearchOutcome};

use sample::{candidates, corpus_codes, mutated, random_formula, random_toy_formula, CodedProof};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimId {
    LemmaNotboth,
    /// Lemmas 2 and 3: the characteristic values of `Pf` and `Rf` on proofs
    /// and refutations.
    LemmaCharValues,
    LemmaAntidiag,
    LemmaRefaut,
    LemmaAutpfautrf,
    LemmaConscomp,
    ThmDecidable,
    ThmConsistency,
    ThmCompleteness,
    ThmTpfDecidable,
    ThmDiagFails,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::LemmaNotboth,
        ClaimId::LemmaCharValues,
        ClaimId::LemmaAntidiag,
        ClaimId::LemmaRefaut,
        ClaimId::LemmaAutpfautrf,
        ClaimId::LemmaConscomp,
        ClaimId::ThmDecidable,
        ClaimId::ThmConsistency,
        ClaimId::ThmCompleteness,
        ClaimId::ThmTpfDecidable,
        ClaimId::ThmDiagFails,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::LemmaNotboth => "LEMMA_NOTBOTH",
            ClaimId::LemmaCharValues => "LEMMA_CHAR_VALUES",
            ClaimId::LemmaAntidiag => "LEMMA_ANTIDIAG",
            ClaimId::LemmaRefaut => "LEMMA_REFAUT",
            ClaimId::LemmaAutpfautrf => "LEMMA_AUTPFAUTRF",
            ClaimId::LemmaConscomp => "LEMMA_CONSCOMP",
            ClaimId::ThmDecidable => "THM_DECIDABLE",
            ClaimId::ThmConsistency => "THM_CONSISTENCY",
            ClaimId::ThmCompleteness => "THM_COMPLETENESS",
            ClaimId::ThmTpfDecidable => "THM_TPF_DECIDABLE",
            ClaimId::ThmDiagFails => "THM_DIAG_FAILS",
        }
    }

    /// Claims whose argument goes through Refaut or autPfautRf.
    pub fn depends_on_falsifiable(self) -> bool {
        matches!(
            self,
            ClaimId::LemmaConscomp
                | ClaimId::ThmConsistency
                | ClaimId::ThmCompleteness
                | ClaimId::ThmTpfDecidable
                | ClaimId::ThmDiagFails
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("witness input {0:?} is missing")]
    MissingInput(String),
    #[error("witness input {name:?}: {source}")]
    BadInput { name: String, source: CodeError },
    #[error(transparent)]
    Predicate(#[from] PredicateError),
}

impl FromStr for ClaimId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| LabError::UnknownClaim(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    HoldsOnSamples,
    CounterexampleFound,
    NotNumberCheckable,
    DependsOnFalsified,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::HoldsOnSamples => "HOLDS_ON_SAMPLES",
            Status::CounterexampleFound => "COUNTEREXAMPLE_FOUND",
            Status::NotNumberCheckable => "NOT_NUMBER_CHECKABLE",
            Status::DependsOnFalsified => "DEPENDS_ON_FALSIFIED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Standard,
    Toy,
}

impl TableKind {
    fn arithmetic(self, mode: Mode) -> Result<Arithmetic, PredicateError> {
        let table = match self {
            TableKind::Standard => SymbolTable::standard(),
            TableKind::Toy => SymbolTable::toy(),
        };
        Arithmetic::new(table, mode)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateValue {
    pub predicate: PredicateId,
    pub args: Vec<String>,
    pub mode: Mode,
    pub table: TableKind,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Codes in list notation, by name.
    pub inputs: BTreeMap<String, String>,
    pub values: Vec<PredicateValue>,
}

impl Witness {
    fn value_of(&self, p: PredicateId) -> Option<bool> {
        self.values
            .iter()
            .find(|v| v.predicate == p)
            .map(|v| v.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim_id: ClaimId,
    pub status: Status,
    pub samples_tried: u64,
    pub witness: Option<Witness>,
    pub notes: String,
}

/// Builds a witness while evaluating, so the stored values are exactly the
/// ones the verdict was decided on.
struct Recorder<'a> {
    arith: &'a Arithmetic,
    kind: TableKind,
    inputs: BTreeMap<String, String>,
    values: Vec<PredicateValue>,
}

impl<'a> Recorder<'a> {
    fn new(arith: &'a Arithmetic, kind: TableKind) -> Self {
        Recorder {
            arith,
            kind,
            inputs: BTreeMap::new(),
            values: Vec::new(),
        }
    }

    fn input(&mut self, name: &str, c: &CodeExpr) {
        self.inputs.insert(name.to_string(), c.to_string());
    }

    fn eval(&mut self, p: PredicateId, names: &[&str], args: &[&CodeExpr]) -> bool {
        let value = match (p, args) {
            (PredicateId::Prf, [x]) => self.arith.prf(x),
            (PredicateId::Ref, [x]) => self.arith.ref_(x),
            (PredicateId::Pf, [x, v]) => self.arith.pf(x, v),
            (PredicateId::Rf, [x, v]) => self.arith.rf(x, v),
            _ => unreachable!("arity is fixed by the callers"),
        };
        self.values.push(PredicateValue {
            predicate: p,
            args: names.iter().map(|s| s.to_string()).collect(),
            mode: self.arith.mode(),
            table: self.kind,
            value,
        });
        value
    }

    fn finish(self) -> Witness {
        Witness {
            inputs: self.inputs,
            values: self.values,
        }
    }
}

/// Is the stored pattern a violation of the claim?
fn violates(claim: ClaimId, w: &Witness) -> bool {
    let pf = w.value_of(PredicateId::Pf);
    let rf = w.value_of(PredicateId::Rf);
    match claim {
        ClaimId::LemmaNotboth => pf == Some(true) && rf == Some(true),
        ClaimId::LemmaRefaut | ClaimId::LemmaConscomp => {
            matches!(
                (w.value_of(PredicateId::Prf), w.value_of(PredicateId::Ref)),
                (Some(a), Some(b)) if a == b
            )
        }
        ClaimId::LemmaAutpfautrf | ClaimId::LemmaCharValues | ClaimId::LemmaAntidiag => {
            matches!((pf, rf), (Some(a), Some(b)) if a == b)
        }
        _ => false,
    }
}

/// Re-evaluates every stored predicate value. For a counterexample, also
/// checks that the values form a violation of the claim.
pub fn revalidate(v: &ClaimVerdict) -> Result<bool, LabError> {
    let Some(w) = &v.witness else {
        return Ok(v.status != Status::CounterexampleFound);
    };
    for pv in &w.values {
        let arith = pv.table.arithmetic(pv.mode)?;
        let mut args = Vec::new();
        for name in &pv.args {
            let text = w
                .inputs
                .get(name)
                .ok_or_else(|| LabError::MissingInput(name.clone()))?;
            let c = CodeExpr::parse_notation(text).map_err(|source| LabError::BadInput {
                name: name.clone(),
                source,
            })?;
            args.push(c);
        }
        if arith.holds(pv.predicate, &args)? != pv.value {
            return Ok(false);
        }
    }
    Ok(v.status != Status::CounterexampleFound || violates(v.claim_id, w))
}

fn rng_for(claim: ClaimId, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(claim as u64 + 1);
    rng
}

struct Ctx {
    pa: Arithmetic,
    pf_mode: Arithmetic,
    toy: Arithmetic,
    corpus: Vec<CodedProof>,
}

impl Ctx {
    fn new() -> Ctx {
        let pa = Arithmetic::standard(Mode::Pa);
        let corpus = corpus_codes(pa.table());
        Ctx {
            pa,
            pf_mode: Arithmetic::standard(Mode::Pf),
            toy: Arithmetic::toy(),
            corpus,
        }
    }

    fn table(&self) -> &SymbolTable {
        self.pa.table()
    }

    fn code(&self, f: &Formula) -> CodeExpr {
        encode_formula(f, self.table()).expect("standard formulas encode")
    }

    /// A corpus proof or, half the time, a mutated proof that still checks.
    fn valid_proof(&self, rng: &mut ChaCha8Rng) -> CodedProof {
        if rng.gen_bool(0.5) {
            for _ in 0..16 {
                let m = mutated(rng, &self.corpus, self.table());
                if check_proof(&m.proof, Mode::Pa).is_accept() {
                    return m;
                }
            }
        }
        self.corpus[rng.gen_range(0..self.corpus.len())].clone()
    }

    fn refutations(&self) -> Vec<&CodedProof> {
        self.corpus
            .iter()
            .filter(|p| p.refuted().is_some())
            .collect()
    }
}

fn verdict(
    claim: ClaimId,
    status: Status,
    samples: u64,
    witness: Option<Witness>,
    notes: impl Into<String>,
) -> ClaimVerdict {
    ClaimVerdict {
        claim_id: claim,
        status,
        samples_tried: samples,
        witness,
        notes: notes.into(),
    }
}

const REF_READING: &str =
    "Ref(x) is evaluated as Prf(Neg(x)): the written definition has no variable v bound to anything";

/// Adjudicates one claim with at most `budget` samples. Deterministic in
/// `(claim, budget, seed)`.
pub fn check_claim(claim: ClaimId, budget: u64, seed: u64) -> ClaimVerdict {
    if budget == 0 {
        return verdict(
            claim,
            Status::NotNumberCheckable,
            0,
            None,
            "skipped: budget 0",
        );
    }
    let ctx = Ctx::new();
    let mut rng = rng_for(claim, seed);
    let v = match claim {
        ClaimId::LemmaNotboth => notboth(&ctx, budget, &mut rng),
        ClaimId::LemmaCharValues => char_values(&ctx, budget, &mut rng),
        ClaimId::LemmaAntidiag => antidiag(&ctx, budget, &mut rng),
        ClaimId::LemmaRefaut => refaut(&ctx, budget, &mut rng),
        ClaimId::LemmaAutpfautrf => autpfautrf(&ctx, budget),
        ClaimId::LemmaConscomp => conscomp(&ctx, budget, &mut rng),
        ClaimId::ThmDecidable => decidable(&ctx, budget, &mut rng),
        ClaimId::ThmConsistency => consistency(&ctx, budget),
        ClaimId::ThmCompleteness => completeness(budget, &mut rng),
        ClaimId::ThmTpfDecidable => tpf_decidable(&ctx, budget),
        ClaimId::ThmDiagFails => diag_fails(&ctx, budget),
    };
    debug_assert!(v.status != Status::CounterexampleFound || v.witness.is_some());
    v
}

/// All claims, checked in parallel and merged in claim order. Claims whose
/// argument uses Refaut or autPfautRf are marked as depending on a falsified
/// claim when either of those has a counterexample.
pub fn report(budget: u64, seed: u64) -> Vec<ClaimVerdict> {
    let mut out: Vec<ClaimVerdict> = ClaimId::ALL
        .par_iter()
        .map(|&c| check_claim(c, budget, seed))
        .collect();
    let falsified: Vec<&'static str> = out
        .iter()
        .filter(|v| {
            matches!(v.claim_id, ClaimId::LemmaRefaut | ClaimId::LemmaAutpfautrf)
                && v.status == Status::CounterexampleFound
        })
        .map(|v| v.claim_id.name())
        .collect();
    if !falsified.is_empty() {
        let by = falsified.join(", ");
        for v in out
            .iter_mut()
            .filter(|v| v.claim_id.depends_on_falsifiable())
        {
            v.notes = format!(
                "argument uses {by}, falsified in this run; own evaluation was {}: {}",
                v.status.name(),
                v.notes
            );
            v.status = Status::DependsOnFalsified;
        }
    }
    out
}

pub fn report_json(verdicts: &[ClaimVerdict]) -> String {
    serde_json::to_string_pretty(verdicts).expect("verdicts serialize")
}

// ---------------------------------------------------------------------------

fn notboth(ctx: &Ctx, budget: u64, rng: &mut ChaCha8Rng) -> ClaimVerdict {
    let claim = ClaimId::LemmaNotboth;
    let junk = candidates(ctx.table(), &[]);
    let (mut pf_true, mut rf_true) = (0u64, 0u64);
    for i in 0..budget {
        let kind = rng.gen_range(0..4);
        let (arith, tk, n, alpha) = match kind {
            0 | 1 => {
                let p = if kind == 0 {
                    ctx.corpus[rng.gen_range(0..ctx.corpus.len())].clone()
                } else {
                    mutated(rng, &ctx.corpus, ctx.table())
                };
                let alpha = match (rng.gen_range(0..3), p.refuted()) {
                    (0, _) => p.last.clone(),
                    (1, Some(a)) => ctx.code(a),
                    _ => ctx.code(&random_formula(rng, 3, 3)),
                };
                (&ctx.pa, TableKind::Standard, p.code, alpha)
            }
            2 => {
                // integers that are not codes satisfy nothing; draw again
                let n = loop {
                    let n = BigUint::from(rng.gen_range(1u32..=10_000));
                    if let Some(c) = CodeExpr::from_integer(&n) {
                        break c;
                    }
                };
                let alpha = encode_formula(&random_toy_formula(rng, 3), ctx.toy.table())
                    .expect("toy formulas encode");
                (&ctx.toy, TableKind::Toy, n, alpha)
            }
            _ => {
                let (_, x) = junk[rng.gen_range(0..junk.len())].clone();
                (
                    &ctx.pa,
                    TableKind::Standard,
                    x,
                    ctx.code(&random_formula(rng, 2, 2)),
                )
            }
        };
        let mut rec = Recorder::new(arith, tk);
        rec.input("n", &n);
        rec.input("alpha", &alpha);
        let pf = rec.eval(PredicateId::Pf, &["n", "alpha"], &[&n, &alpha]);
        let rf = rec.eval(PredicateId::Rf, &["n", "alpha"], &[&n, &alpha]);
        pf_true += pf as u64;
        rf_true += rf as u64;
        if pf && rf {
            return verdict(
                claim,
                Status::CounterexampleFound,
                i + 1,
                Some(rec.finish()),
                "Pf and Rf both hold: the stack is unsound",
            );
        }
    }
    verdict(
        claim,
        Status::HoldsOnSamples,
        budget,
        None,
        format!(
            "pairs (n, ⌜α⌝) from corpus proofs, mutated proofs, toy integers up to 10^4 and short \
             symbol strings; Pf held on {pf_true}, Rf on {rf_true}, both on none"
        ),
    )
}

/// A proof (or refutation) of α with the expected 0/1 pattern checked.
/// Returns the witness on a violation.
fn pattern_check(
    arith: &Arithmetic,
    tk: TableKind,
    n: &CodeExpr,
    alpha: &CodeExpr,
    proves: bool,
) -> Option<Witness> {
    let mut rec = Recorder::new(arith, tk);
    rec.input("n", n);
    rec.input("alpha", alpha);
    let pf = rec.eval(PredicateId::Pf, &["n", "alpha"], &[n, alpha]);
    let rf = rec.eval(PredicateId::Rf, &["n", "alpha"], &[n, alpha]);
    let ok = if proves { pf && !rf } else { rf && !pf };
    (!ok).then(|| rec.finish())
}

fn toy_proofs(ctx: &Ctx) -> Vec<CodeExpr> {
    let a = ctx
        .toy
        .table()
        .code(crate::table::Symbol::Atom)
        .expect("toy atom");
    (1..=4)
        .map(|k| CodeExpr::seq(vec![CodeExpr::single(a); k]))
        .collect()
}

fn char_values(ctx: &Ctx, budget: u64, rng: &mut ChaCha8Rng) -> ClaimVerdict {
    let claim = ClaimId::LemmaCharValues;
    let wrapper = "the ⊢_PA statements about the represented characteristic functions are \
                   NOT_NUMBER_CHECKABLE; the verdict covers the truth-level core";
    let mut tried = 0u64;
    let (mut proofs, mut refutations) = (0u64, 0u64);
    // every corpus proof and refutation first, then toy proofs, then
    // valid mutated proofs
    let toy_atom = encode_formula(&Formula::Atom, ctx.toy.table()).expect("toy atom");
    let mut jobs: Vec<(bool, CodedProof)> = Vec::new();
    for p in &ctx.corpus {
        jobs.push((true, p.clone()));
        if p.refuted().is_some() {
            jobs.push((false, p.clone()));
        }
    }
    for (i, (proves, p)) in jobs.iter().enumerate() {
        if tried == budget {
            break;
        }
        tried += 1;
        let alpha = if *proves {
            p.last.clone()
        } else {
            ctx.code(p.refuted().expect("refutation"))
        };
        if *proves {
            proofs += 1;
        } else {
            refutations += 1;
        }
        if let Some(w) = pattern_check(&ctx.pa, TableKind::Standard, &p.code, &alpha, *proves) {
            return verdict(
                claim,
                Status::CounterexampleFound,
                i as u64 + 1,
                Some(w),
                wrapper,
            );
        }
    }
    for n in toy_proofs(ctx) {
        if tried == budget {
            break;
        }
        tried += 1;
        proofs += 1;
        if let Some(w) = pattern_check(&ctx.toy, TableKind::Toy, &n, &toy_atom, true) {
            return verdict(claim, Status::CounterexampleFound, tried, Some(w), wrapper);
        }
    }
    while tried < budget {
        tried += 1;
        let p = ctx.valid_proof(rng);
        let proves = p.refuted().is_none() || rng.gen_bool(0.5);
        let alpha = if proves {
            p.last.clone()
        } else {
            ctx.code(p.refuted().expect("refutation"))
        };
        if proves {
            proofs += 1;
        } else {
            refutations += 1;
        }
        if let Some(w) = pattern_check(&ctx.pa, TableKind::Standard, &p.code, &alpha, proves) {
            return verdict(claim, Status::CounterexampleFound, tried, Some(w), wrapper);
        }
    }
    verdict(
        claim,
        Status::HoldsOnSamples,
        tried,
        None,
        format!(
            "C_Pf = 0 and C_Rf = 1 on {proofs} proofs of α; C_Rf = 0 and C_Pf = 1 on \
             {refutations} refutations of α; {wrapper}"
        ),
    )
}

fn antidiag(ctx: &Ctx, budget: u64, rng: &mut ChaCha8Rng) -> ClaimVerdict {
    let claim = ClaimId::LemmaAntidiag;
    let refutations = ctx.refutations();
    let mut counts = [0u64; 3];
    for i in 0..budget {
        let part = rng.gen_range(0..3);
        counts[part] += 1;
        let w = match part {
            // (i) not both, with an arbitrary α
            0 => {
                let p = ctx.valid_proof(rng);
                let alpha = if rng.gen_bool(0.5) {
                    p.last.clone()
                } else {
                    ctx.code(&random_formula(rng, 3, 3))
                };
                let mut rec = Recorder::new(&ctx.pa, TableKind::Standard);
                rec.input("n", &p.code);
                rec.input("alpha", &alpha);
                let pf = rec.eval(PredicateId::Pf, &["n", "alpha"], &[&p.code, &alpha]);
                let rf = rec.eval(PredicateId::Rf, &["n", "alpha"], &[&p.code, &alpha]);
                (pf && rf).then(|| rec.finish())
            }
            // (ii) n refutes α: Rf iff not Pf
            1 => {
                let p = refutations[rng.gen_range(0..refutations.len())];
                let alpha = ctx.code(p.refuted().expect("refutation"));
                pattern_check(&ctx.pa, TableKind::Standard, &p.code, &alpha, false)
            }
            // (iii) n proves α: Pf iff not Rf
            _ => {
                let p = ctx.valid_proof(rng);
                pattern_check(&ctx.pa, TableKind::Standard, &p.code, &p.last, true)
            }
        };
        if let Some(w) = w {
            return verdict(
                claim,
                Status::CounterexampleFound,
                i + 1,
                Some(w),
                format!("part ({}) fails", ["i", "ii", "iii"][part]),
            );
        }
    }
    verdict(
        claim,
        Status::HoldsOnSamples,
        budget,
        None,
        format!(
            "truth-level core: (i) on {} pairs, (ii) on {} refutations, (iii) on {} proofs; \
             the ⊢_PA wrapper is NOT_NUMBER_CHECKABLE",
            counts[0], counts[1], counts[2]
        ),
    )
}

/// The fixed candidate list followed by mutated corpus codes, as needed.
fn candidate_stream<'a>(
    ctx: &'a Ctx,
    rng: &'a mut ChaCha8Rng,
) -> impl Iterator<Item = (String, CodeExpr)> + 'a {
    let fixed = candidates(ctx.table(), &ctx.corpus);
    fixed.into_iter().chain(std::iter::from_fn(move || {
        let m = mutated(rng, &ctx.corpus, ctx.table());
        Some((format!("mutated {}", m.name), m.code))
    }))
}

fn refaut(ctx: &Ctx, budget: u64, rng: &mut ChaCha8Rng) -> ClaimVerdict {
    let claim = ClaimId::LemmaRefaut;
    for (i, (label, x)) in candidate_stream(ctx, rng).take(budget as usize).enumerate() {
        let mut rec = Recorder::new(&ctx.pa, TableKind::Standard);
        rec.input("x", &x);
        let prf = rec.eval(PredicateId::Prf, &["x"], &[&x]);
        let r = rec.eval(PredicateId::Ref, &["x"], &[&x]);
        if prf == r {
            return verdict(
                claim,
                Status::CounterexampleFound,
                i as u64 + 1,
                Some(rec.finish()),
                format!(
                    "x = {label}: Prf(x) = {prf} and Ref(x) = {r}, so Prf(x) iff ¬Ref(x) fails; \
                     {REF_READING}"
                ),
            );
        }
    }
    verdict(claim, Status::HoldsOnSamples, budget, None, REF_READING)
}

fn autpfautrf(ctx: &Ctx, budget: u64) -> ClaimVerdict {
    let claim = ClaimId::LemmaAutpfautrf;
    let xs = candidates(ctx.table(), &ctx.corpus);
    let vs: Vec<(String, CodeExpr)> = sample::small_formulas()
        .iter()
        .map(|f| (format!("⌜{f}⌝"), ctx.code(f)))
        .collect();
    let pairs = xs.iter().flat_map(|x| vs.iter().map(move |v| (x, v)));
    let mut tried = 0u64;
    for ((xl, x), (vl, v)) in pairs.take(budget as usize) {
        tried += 1;
        let mut rec = Recorder::new(&ctx.pa, TableKind::Standard);
        rec.input("x", x);
        rec.input("v", v);
        let pf = rec.eval(PredicateId::Pf, &["x", "v"], &[x, v]);
        let rf = rec.eval(PredicateId::Rf, &["x", "v"], &[x, v]);
        if pf == rf {
            return verdict(
                claim,
                Status::CounterexampleFound,
                tried,
                Some(rec.finish()),
                format!("x = {xl}, v = {vl}: Pf(x, v) = {pf} and Rf(x, v) = {rf}"),
            );
        }
    }
    verdict(claim, Status::HoldsOnSamples, tried, None, "")
}

fn herbrand_implication(rng: &mut ChaCha8Rng, k: usize) -> Formula {
    let mut f = random_formula(rng, 2, 2);
    for _ in 0..k {
        f = Formula::implies(random_formula(rng, 2, 2), f);
    }
    f
}

fn conscomp(ctx: &Ctx, budget: u64, rng: &mut ChaCha8Rng) -> ClaimVerdict {
    let claim = ClaimId::LemmaConscomp;
    // Case (ii) under two readings of n: the code of the implication itself,
    // or the code of a proof ending in an implication. Membership of n in
    // T_PA and R_PA is read through Prf and Ref, as the characteristic
    // functions in the argument are.
    let implications: Vec<&CodedProof> = ctx
        .corpus
        .iter()
        .filter(|p| matches!(p.proof.last_formula(), Formula::Implies(..)))
        .collect();
    let formula_budget = budget.div_ceil(2);
    let proof_budget = budget - formula_budget;
    let mut first_violation = None;
    let mut formula_violations = 0u64;
    for i in 0..formula_budget {
        let k = rng.gen_range(1..=3);
        let n = ctx.code(&herbrand_implication(rng, k));
        let mut rec = Recorder::new(&ctx.pa, TableKind::Standard);
        rec.input("n", &n);
        let prf = rec.eval(PredicateId::Prf, &["n"], &[&n]);
        let r = rec.eval(PredicateId::Ref, &["n"], &[&n]);
        if prf == r {
            formula_violations += 1;
            if first_violation.is_none() {
                first_violation = Some((i + 1, rec.finish()));
            }
        }
    }
    let mut proof_violations = 0u64;
    for _ in 0..proof_budget {
        let p = implications[rng.gen_range(0..implications.len())];
        if ctx.pa.prf(&p.code) == ctx.pa.ref_(&p.code) {
            proof_violations += 1;
        }
    }
    let notes = format!(
        "case (ii), n a formula code ⌜(θ1 -> (… -> θ))⌝: Prf(n) iff ¬Ref(n) failed on \
         {formula_violations}/{formula_budget}; n a proof code ending in an implication: failed \
         on {proof_violations}/{proof_budget}; case (i), m = ⌜α⌝ with T_PA and R_PA as sets of \
         theorems and refutable formulas, is a provability statement and is not evaluated; \
         {REF_READING}"
    );
    match first_violation {
        Some((_, w)) => verdict(claim, Status::CounterexampleFound, budget, Some(w), notes),
        None => verdict(claim, Status::HoldsOnSamples, budget, None, notes),
    }
}

fn decidable(ctx: &Ctx, budget: u64, rng: &mut ChaCha8Rng) -> ClaimVerdict {
    let claim = ClaimId::ThmDecidable;
    let searches = budget.min(4);
    let evals = budget - searches;
    let (mut pf_true, mut rf_true) = (0u64, 0u64);
    for _ in 0..evals {
        let p = if rng.gen_bool(0.5) {
            ctx.corpus[rng.gen_range(0..ctx.corpus.len())].clone()
        } else {
            mutated(rng, &ctx.corpus, ctx.table())
        };
        let v = match (rng.gen_bool(0.5), p.refuted()) {
            (true, Some(a)) => ctx.code(a),
            _ => p.last.clone(),
        };
        pf_true += ctx.pa.pf(&p.code, &v) as u64;
        rf_true += ctx.pa.rf(&p.code, &v) as u64;
    }
    let targets = [
        "((x1 + 0) = x1)",
        "((all x1) ((x1 + 0) = x1))",
        "(0 = 0')",
        "(0 = x1)",
    ];
    let mut found = Vec::new();
    let mut exhausted = Vec::new();
    for t in targets.iter().take(searches as usize) {
        let f = parse_formula(t).expect("fixed target parses");
        match bounded_proof_search(&f, 2, Mode::Pa) {
            SearchOutcome::Found(p) => found.push(format!("{t} ({} lines)", p.len())),
            SearchOutcome::Exhausted { .. } => exhausted.push(t.to_string()),
        }
    }
    verdict(
        claim,
        Status::NotNumberCheckable,
        budget,
        None,
        format!(
            "Pf and Rf are decidable relations and terminated on all {evals} evaluations \
             (Pf held on {pf_true}, Rf on {rf_true}); membership in T_PA or R_PA asks for the \
             existence of a proof, which bounded search only semi-decides: found [{}], \
             exhausted at bound 2 [{}]",
            found.join("; "),
            exhausted.join("; ")
        ),
    )
}

fn consistency(ctx: &Ctx, budget: u64) -> ClaimVerdict {
    let claim = ClaimId::ThmConsistency;
    let mut tried = 0u64;
    let mut clash = None;
    'outer: for a in &ctx.corpus {
        for b in &ctx.corpus {
            if tried == budget {
                break 'outer;
            }
            tried += 1;
            if b.proof.last_formula() == &Formula::not(a.proof.last_formula().clone()) {
                clash = Some((a.name.clone(), b.name.clone()));
                break 'outer;
            }
        }
    }
    let notes = match clash {
        Some((a, b)) => format!("corpus proofs {a} and {b} prove a formula and its negation"),
        None => format!(
            "no formula and its negation among the conclusions of {tried} corpus proof pairs; \
             consistency of PA is a statement about all proofs and is not number-checkable"
        ),
    };
    verdict(claim, Status::NotNumberCheckable, tried, None, notes)
}

/// Value of a quantifier-free formula without `sb` under `env` (x_k ↦ env[k-1]).
fn eval_qf(f: &Formula, env: &[u64]) -> Option<bool> {
    fn term(t: &Term, env: &[u64]) -> Option<u64> {
        Some(match t {
            Term::Var(k) => *env.get(*k as usize - 1)?,
            Term::Zero => 0,
            Term::Succ(a) => term(a, env)?.checked_add(1)?,
            Term::Plus(a, b) => term(a, env)?.checked_add(term(b, env)?)?,
            Term::Times(a, b) => term(a, env)?.checked_mul(term(b, env)?)?,
            Term::Sb(..) | Term::Numeral(_) => return None,
        })
    }
    Some(match f {
        Formula::Equals(a, b) => term(a, env)? == term(b, env)?,
        Formula::Not(a) => !eval_qf(a, env)?,
        Formula::Implies(a, b) => !eval_qf(a, env)? || eval_qf(b, env)?,
        Formula::ForAll(..) | Formula::Atom => return None,
    })
}

fn random_qf(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.4) {
        return Formula::eq(
            sample::random_term(rng, 2, 2),
            sample::random_term(rng, 2, 2),
        );
    }
    if rng.gen_bool(0.5) {
        Formula::not(random_qf(rng, depth - 1))
    } else {
        Formula::implies(random_qf(rng, depth - 1), random_qf(rng, depth - 1))
    }
}

fn completeness(budget: u64, rng: &mut ChaCha8Rng) -> ClaimVerdict {
    let claim = ClaimId::ThmCompleteness;
    let grid: Vec<[u64; 2]> = (0..4).flat_map(|a| (0..4).map(move |b| [a, b])).collect();
    let mut undetermined = 0u64;
    let mut example = None;
    for _ in 0..budget {
        let f = random_qf(rng, 3);
        let vals: Vec<Option<bool>> = grid.iter().map(|e| eval_qf(&f, e)).collect();
        let some_true = vals.contains(&Some(true));
        let some_false = vals.contains(&Some(false));
        if some_true && some_false {
            undetermined += 1;
            example.get_or_insert_with(|| f.to_string());
        }
    }
    verdict(
        claim,
        Status::NotNumberCheckable,
        budget,
        None,
        format!(
            "{undetermined}/{budget} random open formulas take both truth values on \
             {{0..3}}^2 (first: {}), so by soundness neither they nor their negations are \
             theorems; for sentences the claim concerns all proofs and is not number-checkable",
            example.unwrap_or_else(|| "none".into())
        ),
    )
}

fn tpf_decidable(ctx: &Ctx, budget: u64) -> ClaimVerdict {
    let claim = ClaimId::ThmTpfDecidable;
    // the argument identifies membership of a proof code in T_PA and T_PF
    let mut tried = 0u64;
    let mut differs = 0u64;
    let mut witness = None;
    for p in ctx.corpus.iter().take(budget as usize) {
        tried += 1;
        let mut rec = Recorder::new(&ctx.pa, TableKind::Standard);
        rec.input("n", &p.code);
        let in_pa = rec.eval(PredicateId::Prf, &["n"], &[&p.code]);
        let in_pf = ctx.pf_mode.prf(&p.code);
        if in_pa != in_pf {
            differs += 1;
            if witness.is_none() {
                rec.arith = &ctx.pf_mode;
                rec.eval(PredicateId::Prf, &["n"], &[&p.code]);
                witness = Some((p.name.clone(), rec.finish()));
            }
        }
    }
    let s5 = proper_axiom(5).expect("S5");
    let pf_search = match bounded_proof_search(&s5, 2, Mode::Pf) {
        SearchOutcome::Found(_) => "found",
        SearchOutcome::Exhausted { .. } => "exhausted",
    };
    let first = witness
        .as_ref()
        .map(|(n, _)| n.clone())
        .unwrap_or_else(|| "none".into());
    verdict(
        claim,
        Status::NotNumberCheckable,
        tried,
        witness.map(|(_, w)| w),
        format!(
            "the step identifying T_PA with T_PF on proof codes fails on {differs}/{tried} \
             corpus proofs (first: {first}, Prf true in PA and false in PF); search for S5 in PF \
             at bound 2: {pf_search}; decidability of T_PF is a statement about all formulas"
        ),
    )
}

fn diag_fails(ctx: &Ctx, budget: u64) -> ClaimVerdict {
    let claim = ClaimId::ThmDiagFails;
    let phis = [
        ("(x1 = x1)", "identity"),
        ("(~ (x1 = x1))", "negation"),
        ("((0 + x1) = x1)", "arithmetic"),
        // Rf is not a symbol of the language; an atomic relation of x and v
        // stands in for it
        ("((all x2) (~ (x2 = x1)))", "∀x Rf(x, v) stand-in"),
    ];
    let mut lines = Vec::new();
    let mut tried = 0u64;
    for (text, label) in phis.iter().take(budget as usize) {
        tried += 1;
        let phi = parse_formula(text).expect("fixed phi parses");
        match diagonalize(&phi, ctx.table()) {
            Ok(d) => lines.push(format!(
                "{label}: fixed point {}",
                if d.fixed_point_ok {
                    "verified"
                } else {
                    "FAILED"
                }
            )),
            Err(e) => lines.push(format!("{label}: {e}")),
        }
    }
    verdict(
        claim,
        Status::NotNumberCheckable,
        tried,
        None,
        format!(
            "{}; the identity sb(m, m) = ⌜δ⌝ is the only number-checkable step, the remaining \
             steps are PA-provability claims whose contradiction is derived from Lemma Refaut \
             and Lemma autPfautRf",
            lines.join("; ")
        ),
    )
}
