//! Sample sources for the claim checks: corpus codes, mutated proof codes,
//! random formulas, and fixed candidate lists.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::axioms::{proper_axiom, Mode};
use crate::code::CodeExpr;
use crate::codec::encode_formula;
use crate::corpus::corpus;
use crate::proof::{mutate_proof, Proof};
use crate::syntax::{Formula, Term, VarIndex};
use crate::table::SymbolTable;

#[derive(Debug, Clone)]
pub struct CodedProof {
    pub name: String,
    pub proof: Proof,
    pub code: CodeExpr,
    /// Code of the last line.
    pub last: CodeExpr,
}

impl CodedProof {
    pub fn new(name: String, proof: Proof, table: &SymbolTable) -> Option<CodedProof> {
        let code = proof.encode(table).ok()?;
        let last = encode_formula(proof.last_formula(), table).ok()?;
        Some(CodedProof {
            name,
            proof,
            code,
            last,
        })
    }

    pub fn refuted(&self) -> Option<&Formula> {
        match self.proof.last_formula() {
            Formula::Not(a) => Some(a),
            _ => None,
        }
    }
}

pub fn corpus_codes(table: &SymbolTable) -> Vec<CodedProof> {
    corpus()
        .iter()
        .filter_map(|e| CodedProof::new(e.name.to_string(), e.proof.clone(), table))
        .collect()
}

/// A mutated corpus proof. The mutation seed is nonzero, so the result is
/// usually, but not always, invalid.
pub fn mutated(rng: &mut ChaCha8Rng, pool: &[CodedProof], table: &SymbolTable) -> CodedProof {
    loop {
        let base = &pool[rng.gen_range(0..pool.len())];
        let seed = rng.gen_range(1..u64::MAX);
        let p = mutate_proof(&base.proof, seed);
        if let Some(c) = CodedProof::new(format!("{}~{seed}", base.name), p, table) {
            return c;
        }
    }
}

pub fn random_term(rng: &mut ChaCha8Rng, depth: u32, vars: VarIndex) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        return if rng.gen_bool(0.5) {
            Term::Zero
        } else {
            Term::var(rng.gen_range(1..=vars))
        };
    }
    match rng.gen_range(0..3) {
        0 => Term::succ(random_term(rng, depth - 1, vars)),
        1 => Term::plus(
            random_term(rng, depth - 1, vars),
            random_term(rng, depth - 1, vars),
        ),
        _ => Term::times(
            random_term(rng, depth - 1, vars),
            random_term(rng, depth - 1, vars),
        ),
    }
}

/// A random formula of the arithmetic language over `x1..x{vars}`.
pub fn random_formula(rng: &mut ChaCha8Rng, depth: u32, vars: VarIndex) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::eq(random_term(rng, 2, vars), random_term(rng, 2, vars));
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, depth - 1, vars)),
        1 => Formula::implies(
            random_formula(rng, depth - 1, vars),
            random_formula(rng, depth - 1, vars),
        ),
        _ => Formula::forall(
            rng.gen_range(1..=vars),
            random_formula(rng, depth - 1, vars),
        ),
    }
}

/// A random formula of the toy calculus.
pub fn random_toy_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.4) {
        return Formula::Atom;
    }
    if rng.gen_bool(0.5) {
        Formula::not(random_toy_formula(rng, depth - 1))
    } else {
        Formula::implies(
            random_toy_formula(rng, depth - 1),
            random_toy_formula(rng, depth - 1),
        )
    }
}

/// Small formulas in a fixed order, starting with `(0 = 0)`.
pub fn small_formulas() -> Vec<Formula> {
    let x1 = || Term::var(1);
    let mut out = vec![
        Formula::eq(Term::Zero, Term::Zero),
        Formula::eq(x1(), x1()),
        Formula::eq(Term::Zero, Term::succ(Term::Zero)),
        Formula::not(Formula::eq(Term::Zero, Term::Zero)),
    ];
    out.extend((1..=8).filter_map(proper_axiom));
    out
}

/// Candidates in increasing size: one-symbol expressions `2^c` for every
/// table code from 3 up, short symbol strings, small formula codes, then
/// corpus proof codes.
pub fn candidates(table: &SymbolTable, pool: &[CodedProof]) -> Vec<(String, CodeExpr)> {
    let mut codes: Vec<u64> = (3..=64)
        .step_by(2)
        .filter(|&c| table.contains_code(c))
        .collect();
    codes.sort_unstable();
    let mut out: Vec<(String, CodeExpr)> = codes
        .iter()
        .map(|&c| (format!("2^{c}"), CodeExpr::single(c)))
        .collect();
    for (a, b) in [(3, 5), (3, 3), (5, 3)] {
        out.push((format!("2^{a}*3^{b}"), CodeExpr::symbols(&[a, b])));
    }
    for f in small_formulas() {
        if let Ok(c) = encode_formula(&f, table) {
            out.push((format!("⌜{f}⌝"), c));
        }
    }
    for p in pool {
        out.push((format!("proof {}", p.name), p.code.clone()));
    }
    out
}

/// The mode the corpus is valid in.
pub const CORPUS_MODE: Mode = Mode::Pa;
