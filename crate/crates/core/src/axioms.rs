//! Axiom recognizers: the logical schemas A1–A5, the proper axioms S1–S8 and
//! the induction schema S9 of first-order arithmetic, plus the toy axiom.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::syntax::{Formula, Term, VarIndex};

/// Which axiom set the predicates and the checker use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    /// Logical axioms plus the proper axioms of arithmetic.
    Pa,
    /// Logical axioms only.
    Pf,
    /// The one-atom micro-calculus.
    Toy,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Pa => "PA",
            Mode::Pf => "PF",
            Mode::Toy => "TOY",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pa" => Ok(Mode::Pa),
            "pf" => Ok(Mode::Pf),
            "toy" => Ok(Mode::Toy),
            other => Err(format!("unknown mode {other:?} (expected pa, pf or toy)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomKind {
    A1,
    A2,
    A3,
    A4,
    A5,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    Toy,
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn x(k: VarIndex) -> Term {
    Term::var(k)
}

/// The proper axiom S1..S8 as a formula over `x1`, `x2`, `x3`.
pub fn proper_axiom(n: u8) -> Option<Formula> {
    use Formula as F;
    use Term as T;
    Some(match n {
        1 => F::implies(
            F::eq(x(1), x(2)),
            F::implies(F::eq(x(1), x(3)), F::eq(x(2), x(3))),
        ),
        2 => F::implies(F::eq(x(1), x(2)), F::eq(T::succ(x(1)), T::succ(x(2)))),
        3 => F::not(F::eq(T::Zero, T::succ(x(1)))),
        4 => F::implies(F::eq(T::succ(x(1)), T::succ(x(2))), F::eq(x(1), x(2))),
        5 => F::eq(T::plus(x(1), T::Zero), x(1)),
        6 => F::eq(T::plus(x(1), T::succ(x(2))), T::succ(T::plus(x(1), x(2)))),
        7 => F::eq(T::times(x(1), T::Zero), T::Zero),
        8 => F::eq(
            T::times(x(1), T::succ(x(2))),
            T::plus(T::times(x(1), x(2)), x(1)),
        ),
        _ => return None,
    })
}

fn split_imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Implies(a, b) => Some((a, b)),
        _ => None,
    }
}

fn split_not(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(a) => Some(a),
        _ => None,
    }
}

fn split_all(f: &Formula) -> Option<(VarIndex, &Formula)> {
    match f {
        Formula::ForAll(k, a) => Some((*k, a)),
        _ => None,
    }
}

/// `(B -> (C -> B))`
pub fn is_a1(f: &Formula) -> bool {
    (|| {
        let (b, rest) = split_imp(f)?;
        let (_, b2) = split_imp(rest)?;
        Some(b == b2)
    })()
    .unwrap_or(false)
}

/// `((B -> (C -> D)) -> ((B -> C) -> (B -> D)))`
pub fn is_a2(f: &Formula) -> bool {
    (|| {
        let (l, r) = split_imp(f)?;
        let (b, cd) = split_imp(l)?;
        let (c, d) = split_imp(cd)?;
        let (bc, bd) = split_imp(r)?;
        let (b2, c2) = split_imp(bc)?;
        let (b3, d2) = split_imp(bd)?;
        Some(b == b2 && b == b3 && c == c2 && d == d2)
    })()
    .unwrap_or(false)
}

/// `(((~ C) -> (~ B)) -> (((~ C) -> B) -> C))`
pub fn is_a3(f: &Formula) -> bool {
    (|| {
        let (l, r) = split_imp(f)?;
        let (nc, nb) = split_imp(l)?;
        let c = split_not(nc)?;
        let b = split_not(nb)?;
        let (l2, c3) = split_imp(r)?;
        let (nc2, b2) = split_imp(l2)?;
        let c2 = split_not(nc2)?;
        Some(c == c2 && c == c3 && b == b2)
    })()
    .unwrap_or(false)
}

/// Matches `inst` against `pat[xv := t]` for an unknown `t`, binding `t` at
/// the first free occurrence of `xv`.
fn match_formula(pat: &Formula, inst: &Formula, v: VarIndex, t: &mut Option<Term>) -> bool {
    match (pat, inst) {
        (Formula::Equals(a, b), Formula::Equals(c, d)) => {
            match_term(a, c, v, t) && match_term(b, d, v, t)
        }
        (Formula::Not(a), Formula::Not(b)) => match_formula(a, b, v, t),
        (Formula::Implies(a, b), Formula::Implies(c, d)) => {
            match_formula(a, c, v, t) && match_formula(b, d, v, t)
        }
        (Formula::ForAll(k, a), Formula::ForAll(j, b)) => {
            k == j
                && if *k == v {
                    a == b
                } else {
                    match_formula(a, b, v, t)
                }
        }
        (Formula::Atom, Formula::Atom) => true,
        _ => false,
    }
}

fn match_term(pat: &Term, inst: &Term, v: VarIndex, t: &mut Option<Term>) -> bool {
    match (pat, inst) {
        (Term::Var(k), _) if *k == v => match t {
            Some(bound) => bound == inst,
            None => {
                *t = Some(inst.clone());
                true
            }
        },
        (Term::Succ(a), Term::Succ(b)) => match_term(a, b, v, t),
        (Term::Plus(a, b), Term::Plus(c, d))
        | (Term::Times(a, b), Term::Times(c, d))
        | (Term::Sb(a, b), Term::Sb(c, d)) => match_term(a, c, v, t) && match_term(b, d, v, t),
        _ => pat == inst,
    }
}

/// `(((all xi) B) -> B[xi := t])` with `t` free for `xi` in `B`.
pub fn is_a4(f: &Formula) -> bool {
    (|| {
        let (l, r) = split_imp(f)?;
        let (v, b) = split_all(l)?;
        let mut t = None;
        if !match_formula(b, r, v, &mut t) {
            return Some(false);
        }
        Some(match t {
            Some(t) => b.is_free_for(&t, v),
            None => true,
        })
    })()
    .unwrap_or(false)
}

/// `(((all xi) (B -> C)) -> (B -> ((all xi) C)))` with `xi` not free in `B`.
pub fn is_a5(f: &Formula) -> bool {
    (|| {
        let (l, r) = split_imp(f)?;
        let (v, bc) = split_all(l)?;
        let (b, c) = split_imp(bc)?;
        let (b2, ac) = split_imp(r)?;
        let (v2, c2) = split_all(ac)?;
        Some(v == v2 && b == b2 && c == c2 && !b.has_free(v))
    })()
    .unwrap_or(false)
}

/// `(B(0) -> (((all x) (B(x) -> B(x'))) -> ((all x) B(x))))`
pub fn is_s9(f: &Formula) -> bool {
    (|| {
        let (b0, rest) = split_imp(f)?;
        let (step, concl) = split_imp(rest)?;
        let (v, body) = split_all(step)?;
        let (b, bs) = split_imp(body)?;
        let (v2, b2) = split_all(concl)?;
        if v != v2 || b != b2 {
            return Some(false);
        }
        let zero = b.substitute(v, &Term::Zero).ok()?;
        let succ = b.substitute(v, &Term::succ(Term::var(v))).ok()?;
        Some(&zero == b0 && &succ == bs)
    })()
    .unwrap_or(false)
}

/// The schema or axiom that `f` is an instance of under `mode`, if any.
pub fn classify(f: &Formula, mode: Mode) -> Option<AxiomKind> {
    match mode {
        Mode::Toy => (f == &Formula::Atom).then_some(AxiomKind::Toy),
        Mode::Pf => classify_logical(f),
        Mode::Pa => classify_logical(f).or_else(|| classify_proper(f)),
    }
}

fn classify_logical(f: &Formula) -> Option<AxiomKind> {
    if is_a1(f) {
        Some(AxiomKind::A1)
    } else if is_a2(f) {
        Some(AxiomKind::A2)
    } else if is_a3(f) {
        Some(AxiomKind::A3)
    } else if is_a4(f) {
        Some(AxiomKind::A4)
    } else if is_a5(f) {
        Some(AxiomKind::A5)
    } else {
        None
    }
}

fn classify_proper(f: &Formula) -> Option<AxiomKind> {
    const KINDS: [AxiomKind; 8] = [
        AxiomKind::S1,
        AxiomKind::S2,
        AxiomKind::S3,
        AxiomKind::S4,
        AxiomKind::S5,
        AxiomKind::S6,
        AxiomKind::S7,
        AxiomKind::S8,
    ];
    for (i, kind) in KINDS.into_iter().enumerate() {
        if proper_axiom(i as u8 + 1).as_ref() == Some(f) {
            return Some(kind);
        }
    }
    is_s9(f).then_some(AxiomKind::S9)
}

pub fn is_axiom(f: &Formula, mode: Mode) -> bool {
    classify(f, mode).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn kind(s: &str, mode: Mode) -> Option<AxiomKind> {
        classify(&parse_formula(s).unwrap(), mode)
    }

    #[test]
    fn proper_axioms_print_as_expected() {
        assert_eq!(proper_axiom(5).unwrap().to_string(), "((x1 + 0) = x1)");
        assert_eq!(proper_axiom(3).unwrap().to_string(), "(~ (0 = x1'))");
        assert_eq!(
            proper_axiom(8).unwrap().to_string(),
            "((x1 . x2') = ((x1 . x2) + x1))"
        );
        assert_eq!(kind("((x1 + 0) = x1)", Mode::Pa), Some(AxiomKind::S5));
        assert_eq!(kind("((x1 + 0) = x1)", Mode::Pf), None);
        assert_eq!(kind("((x2 + 0) = x2)", Mode::Pa), None);
    }

    #[test]
    fn logical_schemas() {
        assert_eq!(
            kind("((0 = 0) -> ((x1 = x2) -> (0 = 0)))", Mode::Pf),
            Some(AxiomKind::A1)
        );
        assert_eq!(
            kind(
                "(((0 = 0) -> (A -> (x1 = 0))) -> (((0 = 0) -> A) -> ((0 = 0) -> (x1 = 0))))",
                Mode::Pf
            ),
            Some(AxiomKind::A2)
        );
        assert_eq!(
            kind(
                "(((~ (0 = 0)) -> (~ (x1 = 0))) -> (((~ (0 = 0)) -> (x1 = 0)) -> (0 = 0)))",
                Mode::Pf
            ),
            Some(AxiomKind::A3)
        );
        assert_eq!(kind("(0 = 0)", Mode::Pf), None);
        assert_eq!(kind("(0 = 0)", Mode::Pa), None);
    }

    #[test]
    fn a4_instances_and_capture() {
        assert_eq!(
            kind("(((all x1) (~ (0 = x1'))) -> (~ (0 = 0')))", Mode::Pf),
            Some(AxiomKind::A4)
        );
        assert_eq!(
            kind("(((all x1) (x1 = x1)) -> ((x2 + 0) = (x2 + 0)))", Mode::Pf),
            Some(AxiomKind::A4)
        );
        // inconsistent instantiation
        assert_eq!(kind("(((all x1) (x1 = x1)) -> (0 = 0'))", Mode::Pf), None);
        // vacuous quantifier: B must come back unchanged
        assert_eq!(
            kind("(((all x1) (x2 = 0)) -> (x2 = 0))", Mode::Pf),
            Some(AxiomKind::A4)
        );
        // x2 is not free for x1 in ((all x2) (x1 = x2))
        assert_eq!(
            kind(
                "(((all x1) ((all x2) (x1 = x2))) -> ((all x2) (x2 = x2)))",
                Mode::Pf
            ),
            None
        );
    }

    #[test]
    fn a5_side_condition() {
        assert_eq!(
            kind(
                "(((all x1) ((0 = 0) -> (x1 = x1))) -> ((0 = 0) -> ((all x1) (x1 = x1))))",
                Mode::Pf
            ),
            Some(AxiomKind::A5)
        );
        assert_eq!(
            kind(
                "(((all x1) ((x1 = 0) -> (x1 = x1))) -> ((x1 = 0) -> ((all x1) (x1 = x1))))",
                Mode::Pf
            ),
            None
        );
    }

    #[test]
    fn induction() {
        let s9 = "((0 = 0) -> (((all x1) ((x1 = x1) -> (x1' = x1'))) -> ((all x1) (x1 = x1))))";
        assert_eq!(kind(s9, Mode::Pa), Some(AxiomKind::S9));
        assert_eq!(kind(s9, Mode::Pf), None);
        let bad = "((0 = 0) -> (((all x1) ((x1 = x1) -> (x1 = x1'))) -> ((all x1) (x1 = x1))))";
        assert_eq!(kind(bad, Mode::Pa), None);
    }

    #[test]
    fn toy_axiom() {
        assert_eq!(classify(&Formula::Atom, Mode::Toy), Some(AxiomKind::Toy));
        assert_eq!(classify(&Formula::Atom, Mode::Pa), None);
        assert_eq!(kind("(A -> (A -> A))", Mode::Toy), None);
    }
}
