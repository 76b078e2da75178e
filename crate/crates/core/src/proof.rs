//! Hilbert-style proofs: the structural checker, the `.paproof` script
//! format, and a mutation generator for negative cases.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::axioms::{self, AxiomKind, Mode};
use crate::code::CodeExpr;
use crate::codec::{self, CodecError};
use crate::syntax::{parse_formula, Formula, SyntaxError, Term, VarIndex};
use crate::table::{Symbol, SymbolTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom,
    /// `minor` is `α`, `major` is `(α -> β)`; both 0-based line indices.
    ModusPonens {
        minor: usize,
        major: usize,
    },
    Gen {
        premise: usize,
        var: VarIndex,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

/// A nonempty sequence of justified formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    lines: Vec<ProofLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("a proof has at least one line")]
    Empty,
    #[error("line {line}: {msg}")]
    Script { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Formula {
        line: usize,
        #[source]
        source: SyntaxError,
    },
}

impl Proof {
    pub fn new(lines: Vec<ProofLine>) -> Result<Proof, ProofError> {
        if lines.is_empty() {
            Err(ProofError::Empty)
        } else {
            Ok(Proof { lines })
        }
    }

    /// A proof whose justifications are re-derived from the formulas alone.
    /// Lines that cannot be justified are marked as axioms, so the checker
    /// reports them.
    pub fn from_formulas(formulas: Vec<Formula>, mode: Mode) -> Result<Proof, ProofError> {
        let mut lines: Vec<ProofLine> = Vec::with_capacity(formulas.len());
        for f in formulas {
            let justification = derive(&lines, &f, mode).unwrap_or(Justification::Axiom);
            lines.push(ProofLine {
                formula: f,
                justification,
            });
        }
        Proof::new(lines)
    }

    pub fn lines(&self) -> &[ProofLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.lines.iter().map(|l| &l.formula)
    }

    pub fn last_formula(&self) -> &Formula {
        &self.lines.last().expect("proofs are nonempty").formula
    }

    /// `2^{⌜f₀⌝} · 3^{⌜f₁⌝} · …`. Justifications are not part of the code.
    pub fn encode(&self, table: &SymbolTable) -> Result<CodeExpr, CodecError> {
        codec::encode_formulas(self.formulas(), table)
    }

    /// Script text; MP and GEN lines carry their formula as a comment.
    pub fn to_script(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            match line.justification {
                Justification::Axiom => out.push_str(&format!("A {}\n", line.formula)),
                Justification::ModusPonens { minor, major } => out.push_str(&format!(
                    "MP {} {}  # {}\n",
                    minor + 1,
                    major + 1,
                    line.formula
                )),
                Justification::Gen { premise, var } => out.push_str(&format!(
                    "GEN {} x{}  # {}\n",
                    premise + 1,
                    var,
                    line.formula
                )),
            }
        }
        out
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.lines.iter().enumerate() {
            let why = match line.justification {
                Justification::Axiom => "axiom".to_string(),
                Justification::ModusPonens { minor, major } => {
                    format!("MP {} {}", minor + 1, major + 1)
                }
                Justification::Gen { premise, var } => format!("Gen {} x{var}", premise + 1),
            };
            writeln!(f, "{:>3}. {}    [{}]", i + 1, line.formula, why)?;
        }
        Ok(())
    }
}

/// Parses the line format `A <formula>`, `MP <i> <j>`, `GEN <i> <xk>` with
/// 1-based references to earlier lines and `#` comments.
pub fn load_proof_script(text: &str) -> Result<Proof, ProofError> {
    let mut lines: Vec<ProofLine> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| ProofError::Script { line: lineno, msg };
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));
        let reference = |s: &str, lines: &[ProofLine]| -> Result<usize, ProofError> {
            let n: usize = s
                .parse()
                .map_err(|_| err(format!("invalid line reference {s:?}")))?;
            if n == 0 || n > lines.len() {
                return Err(err(format!(
                    "reference {n} is not an earlier line (have {})",
                    lines.len()
                )));
            }
            Ok(n - 1)
        };
        let line = match keyword {
            "A" => ProofLine {
                formula: parse_formula(rest).map_err(|source| ProofError::Formula {
                    line: lineno,
                    source,
                })?,
                justification: Justification::Axiom,
            },
            "MP" => {
                let args: Vec<&str> = rest.split_whitespace().collect();
                let [i, j] = args[..] else {
                    return Err(err("MP takes two line references".into()));
                };
                let minor = reference(i, &lines)?;
                let major = reference(j, &lines)?;
                let conclusion = match &lines[major].formula {
                    Formula::Implies(a, b) if **a == lines[minor].formula => (**b).clone(),
                    other => {
                        return Err(err(format!(
                            "line {} is not an implication from line {}: {other}",
                            major + 1,
                            minor + 1
                        )))
                    }
                };
                ProofLine {
                    formula: conclusion,
                    justification: Justification::ModusPonens { minor, major },
                }
            }
            "GEN" => {
                let args: Vec<&str> = rest.split_whitespace().collect();
                let [i, v] = args[..] else {
                    return Err(err("GEN takes a line reference and a variable".into()));
                };
                let premise = reference(i, &lines)?;
                let var: VarIndex = v
                    .strip_prefix('x')
                    .and_then(|d| d.parse().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| err(format!("invalid variable {v:?}")))?;
                ProofLine {
                    formula: Formula::forall(var, lines[premise].formula.clone()),
                    justification: Justification::Gen { premise, var },
                }
            }
            other => return Err(err(format!("unknown keyword {other:?}"))),
        };
        lines.push(line);
    }
    Proof::new(lines)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RejectReason {
    NotAnAxiom,
    ForwardReference { target: usize },
    MpMismatch,
    GenMismatch,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::NotAnAxiom => {
                f.write_str("not an axiom and not derivable from earlier lines")
            }
            RejectReason::ForwardReference { target } => {
                write!(f, "references line {} which is not earlier", target + 1)
            }
            RejectReason::MpMismatch => f.write_str("modus ponens premises do not fit"),
            RejectReason::GenMismatch => f.write_str("generalization does not fit its premise"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `rederived` lists lines whose stated justification failed but which
    /// follow from earlier lines anyway.
    Accept {
        rederived: Vec<usize>,
    },
    Reject {
        line: usize,
        reason: RejectReason,
    },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept { rederived } if rederived.is_empty() => f.write_str("accept"),
            Verdict::Accept { rederived } => {
                let list: Vec<String> = rederived.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "accept (re-derived lines {})", list.join(", "))
            }
            Verdict::Reject { line, reason } => write!(f, "reject at line {}: {reason}", line + 1),
        }
    }
}

fn stated_ok(lines: &[ProofLine], i: usize, mode: Mode) -> Result<(), RejectReason> {
    let line = &lines[i];
    match line.justification {
        Justification::Axiom => {
            if axioms::is_axiom(&line.formula, mode) {
                Ok(())
            } else {
                Err(RejectReason::NotAnAxiom)
            }
        }
        Justification::ModusPonens { minor, major } => {
            for target in [minor, major] {
                if target >= i {
                    return Err(RejectReason::ForwardReference { target });
                }
            }
            match &lines[major].formula {
                Formula::Implies(a, b) if **a == lines[minor].formula && **b == line.formula => {
                    Ok(())
                }
                _ => Err(RejectReason::MpMismatch),
            }
        }
        Justification::Gen { premise, var } => {
            if premise >= i {
                return Err(RejectReason::ForwardReference { target: premise });
            }
            match &line.formula {
                Formula::ForAll(k, body) if *k == var && **body == lines[premise].formula => Ok(()),
                _ => Err(RejectReason::GenMismatch),
            }
        }
    }
}

/// Some justification of `f` from `earlier`, searching over axioms, Gen
/// premises and MP pairs.
fn derive(earlier: &[ProofLine], f: &Formula, mode: Mode) -> Option<Justification> {
    if axioms::is_axiom(f, mode) {
        return Some(Justification::Axiom);
    }
    if let Formula::ForAll(var, body) = f {
        if let Some(premise) = earlier.iter().position(|l| l.formula == **body) {
            return Some(Justification::Gen { premise, var: *var });
        }
    }
    for (major, l) in earlier.iter().enumerate() {
        if let Formula::Implies(a, b) = &l.formula {
            if **b == *f {
                if let Some(minor) = earlier.iter().position(|m| m.formula == **a) {
                    return Some(Justification::ModusPonens { minor, major });
                }
            }
        }
    }
    None
}

/// Accepts iff every line is an axiom of `mode` or follows from earlier lines
/// by MP or Gen. Stated justifications are tried first; a line whose stated
/// justification fails is still accepted when some other justification works.
pub fn check_proof(p: &Proof, mode: Mode) -> Verdict {
    let mut rederived = Vec::new();
    for i in 0..p.lines.len() {
        if let Err(reason) = stated_ok(&p.lines, i, mode) {
            if derive(&p.lines[..i], &p.lines[i].formula, mode).is_some() {
                rederived.push(i);
            } else {
                return Verdict::Reject { line: i, reason };
            }
        }
    }
    Verdict::Accept { rederived }
}

/// Checks a bare formula sequence, as the arithmetic Prf sees it.
pub fn check_sequence(formulas: &[Formula], mode: Mode) -> Verdict {
    match Proof::from_formulas(formulas.to_vec(), mode) {
        Ok(p) => check_proof(&p, mode),
        Err(_) => Verdict::Reject {
            line: 0,
            reason: RejectReason::NotAnAxiom,
        },
    }
}

/// The axiom schema each axiom line instantiates, for display.
pub fn axiom_kinds(p: &Proof, mode: Mode) -> Vec<Option<AxiomKind>> {
    p.lines
        .iter()
        .map(|l| match l.justification {
            Justification::Axiom => axioms::classify(&l.formula, mode),
            _ => None,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MutationKind {
    Identity,
    SwapLines,
    FlipSymbol,
    RetargetMp,
    DropLine,
    DuplicateLine,
}

const MUTATIONS: [MutationKind; 5] = [
    MutationKind::SwapLines,
    MutationKind::FlipSymbol,
    MutationKind::RetargetMp,
    MutationKind::DropLine,
    MutationKind::DuplicateLine,
];

/// Deterministic corruption of `p`. Seed 0 is the identity.
pub fn mutate_proof(p: &Proof, seed: u64) -> Proof {
    mutate_proof_described(p, seed).0
}

pub fn mutate_proof_described(p: &Proof, seed: u64) -> (Proof, MutationKind) {
    if seed == 0 {
        return (p.clone(), MutationKind::Identity);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kind = MUTATIONS[rng.gen_range(0..MUTATIONS.len())];
    apply_mutation(p, kind, &mut rng)
}

pub fn apply_mutation(
    p: &Proof,
    kind: MutationKind,
    rng: &mut ChaCha8Rng,
) -> (Proof, MutationKind) {
    let mut lines = p.lines.clone();
    let n = lines.len();
    match kind {
        MutationKind::Identity => {}
        MutationKind::SwapLines if n >= 2 => {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            lines.swap(i, j);
        }
        MutationKind::SwapLines => return apply_mutation(p, MutationKind::FlipSymbol, rng),
        MutationKind::FlipSymbol => {
            let i = rng.gen_range(0..n);
            lines[i].formula = flip_symbol(&lines[i].formula, rng);
        }
        MutationKind::RetargetMp => {
            let mp_lines: Vec<usize> = (0..n)
                .filter(|&i| matches!(lines[i].justification, Justification::ModusPonens { .. }))
                .collect();
            if mp_lines.is_empty() {
                return apply_mutation(p, MutationKind::SwapLines, rng);
            }
            let i = mp_lines[rng.gen_range(0..mp_lines.len())];
            if let Justification::ModusPonens { minor, major } = lines[i].justification {
                let target = rng.gen_range(0..n);
                lines[i].justification = if rng.gen_bool(0.5) {
                    Justification::ModusPonens {
                        minor: target,
                        major,
                    }
                } else {
                    Justification::ModusPonens {
                        minor,
                        major: target,
                    }
                };
            }
        }
        MutationKind::DropLine if n >= 2 => {
            lines.remove(rng.gen_range(0..n - 1));
        }
        MutationKind::DropLine => return apply_mutation(p, MutationKind::FlipSymbol, rng),
        MutationKind::DuplicateLine => {
            let i = rng.gen_range(0..n);
            let copy = lines[i].clone();
            lines.insert(rng.gen_range(0..=n), copy);
        }
    }
    (Proof { lines }, kind)
}

/// Changes one primitive symbol of `f` into another of the same syntactic
/// category: a variable index, `+` against `.`, or `0` into `x1`. A formula
/// without such a symbol is negated instead.
pub fn flip_symbol(f: &Formula, rng: &mut ChaCha8Rng) -> Formula {
    let sites = count_sites(f);
    if sites == 0 {
        return Formula::not(f.clone());
    }
    let mut k = Some(rng.gen_range(0..sites));
    flip_formula(f, &mut k)
}

fn count_sites(f: &Formula) -> usize {
    match f {
        Formula::Equals(a, b) => term_sites(a) + term_sites(b),
        Formula::Not(g) => count_sites(g),
        Formula::Implies(a, b) => count_sites(a) + count_sites(b),
        Formula::ForAll(_, g) => 1 + count_sites(g),
        Formula::Atom => 0,
    }
}

fn term_sites(t: &Term) -> usize {
    match t {
        Term::Var(_) | Term::Zero => 1,
        Term::Numeral(_) => 0,
        Term::Succ(a) => term_sites(a),
        Term::Plus(a, b) | Term::Times(a, b) => 1 + term_sites(a) + term_sites(b),
        Term::Sb(a, b) => term_sites(a) + term_sites(b),
    }
}

fn other_var(k: VarIndex) -> VarIndex {
    if k == 1 {
        2
    } else {
        1
    }
}

/// Counts down to the target site; `None` once it has been flipped.
fn hit(k: &mut Option<usize>) -> bool {
    match k {
        Some(0) => {
            *k = None;
            true
        }
        Some(n) => {
            *n -= 1;
            false
        }
        None => false,
    }
}

fn flip_formula(f: &Formula, k: &mut Option<usize>) -> Formula {
    match f {
        Formula::Equals(a, b) => {
            let a2 = flip_term(a, k);
            Formula::Equals(a2, flip_term(b, k))
        }
        Formula::Not(g) => Formula::not(flip_formula(g, k)),
        Formula::Implies(a, b) => {
            let a2 = flip_formula(a, k);
            Formula::implies(a2, flip_formula(b, k))
        }
        Formula::ForAll(v, g) => {
            let v2 = if hit(k) { other_var(*v) } else { *v };
            Formula::forall(v2, flip_formula(g, k))
        }
        Formula::Atom => Formula::Atom,
    }
}

fn flip_term(t: &Term, k: &mut Option<usize>) -> Term {
    match t {
        Term::Var(v) if hit(k) => Term::var(other_var(*v)),
        Term::Zero if hit(k) => Term::var(1),
        Term::Var(_) | Term::Zero | Term::Numeral(_) => t.clone(),
        Term::Succ(a) => Term::succ(flip_term(a, k)),
        Term::Plus(a, b) | Term::Times(a, b) => {
            let flip_op = hit(k);
            let a2 = flip_term(a, k);
            let b2 = flip_term(b, k);
            if matches!(t, Term::Plus(..)) != flip_op {
                Term::plus(a2, b2)
            } else {
                Term::times(a2, b2)
            }
        }
        Term::Sb(a, b) => {
            let a2 = flip_term(a, k);
            Term::sb(a2, flip_term(b, k))
        }
    }
}

/// Symbols of `f` that the table cannot encode, if any.
pub fn unencodable(f: &Formula, table: &SymbolTable) -> Option<Symbol> {
    f.tokens().into_iter().find_map(|t| match t {
        crate::syntax::Token::Sym(s) if !table.has(s) => Some(s),
        _ => None,
    })
}
