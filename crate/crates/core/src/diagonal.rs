//! The substitution function `sb` on codes and the diagonal construction
//! `β(v) = φ(sb(v, v))`, `m = ⌜β⌝`, `δ = β(m̄)`.
//!
//! `sb` also exists as a binary function symbol of the object language so that
//! `β` can be written down; it is an extension of the arithmetic language
//! and only this module introduces it.

use serde::Serialize;
use thiserror::Error;

use crate::code::{CodeExpr, SymNat};
use crate::codec::{self, CodecError};
use crate::syntax::{numeral, Formula, Sentence, SyntaxError, Term, VarIndex};
use crate::table::SymbolTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagError {
    #[error("not a formula code: {0}")]
    NotAFormula(#[from] CodecError),
    #[error("phi must have exactly one free variable, found {0:?}")]
    FreeVariables(Vec<VarIndex>),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// `⌜φ(n̄)⌝` from `⌜φ(xv)⌝`: decode, substitute the numeral, re-encode.
/// Numerals of code-valued `n` stay lazy. If `xv` is not free, `e` comes back
/// unchanged.
pub fn sb(
    e: &CodeExpr,
    v: VarIndex,
    n: &SymNat,
    table: &SymbolTable,
) -> Result<CodeExpr, DiagError> {
    let f = codec::decode_formula(e, table)?;
    if !f.has_free(v) {
        log::info!("sb: x{v} is not free in {f}; code returned unchanged");
        return Ok(e.clone());
    }
    // numerals are closed, so substitution cannot capture
    let g = f.substitute(v, &numeral(n))?;
    Ok(codec::encode_formula(&g, table)?)
}

#[derive(Debug, Clone)]
pub struct DiagResult {
    pub phi: Formula,
    pub var: VarIndex,
    pub beta: Formula,
    pub m: CodeExpr,
    pub delta: Sentence,
    pub fixed_point_ok: bool,
}

/// Sizes of `m` for display; the integer itself is never printed.
#[derive(Debug, Clone, Serialize)]
pub struct CodeSummary {
    pub sequence_length: Option<u64>,
    pub log2_estimate: f64,
}

impl DiagResult {
    pub fn m_summary(&self) -> CodeSummary {
        CodeSummary {
            sequence_length: self.m.len_hint().map(|n| n as u64),
            log2_estimate: self.m.log2_estimate(),
        }
    }
}

pub fn diagonalize(phi: &Formula, table: &SymbolTable) -> Result<DiagResult, DiagError> {
    let free: Vec<VarIndex> = phi.free_vars().into_iter().collect();
    let [v] = free[..] else {
        return Err(DiagError::FreeVariables(free));
    };
    let beta = phi.substitute(v, &Term::sb(Term::var(v), Term::var(v)))?;
    let m = codec::encode_formula(&beta, table)?;
    let delta = Sentence::new(beta.substitute(v, &numeral(&SymNat::from(m.clone())))?)?;
    let mut d = DiagResult {
        phi: phi.clone(),
        var: v,
        beta,
        m,
        delta,
        fixed_point_ok: false,
    };
    d.fixed_point_ok = verify_fixed_point(&d, table);
    Ok(d)
}

/// `sb(m, m) = ⌜δ⌝`, with the left side computed from `m` alone.
pub fn verify_fixed_point(d: &DiagResult, table: &SymbolTable) -> bool {
    let lhs = match sb(&d.m, d.var, &SymNat::from(d.m.clone()), table) {
        Ok(c) => c,
        Err(_) => return false,
    };
    match codec::encode_formula(d.delta.formula(), table) {
        Ok(rhs) => lhs.code_equal(&rhs),
        Err(_) => false,
    }
}
