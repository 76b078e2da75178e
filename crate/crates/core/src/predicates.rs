//! Predicates on Gödel numbers: Gd, EVbl, Fml, Ax, Neg, MP, Gen, Prf, Pf and
//! the refutability predicates Rf and Ref, with their characteristic
//! functions.
//!
//! Everything is total over [`CodeExpr`]: a code that does not have the
//! expected shape makes a predicate false. Bounded quantifiers are evaluated
//! by decomposing the sequence rather than by enumerating integers below it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{self, Mode};
use crate::code::{monus, CodeExpr, SymNat};
use crate::codec;
use crate::syntax::{Formula, Token};
use crate::table::{Symbol, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredicateError {
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
    #[error("{name} takes {expected} argument(s), got {got}")]
    Arity {
        name: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("mode {mode} cannot be used with this symbol table: {reason}")]
    ModeTable { mode: Mode, reason: &'static str },
}

/// Value of a characteristic function: 0 when the relation holds, 1 when not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub struct CharValue(u8);

impl CharValue {
    pub const TRUE: CharValue = CharValue(0);
    pub const FALSE: CharValue = CharValue(1);

    pub fn of(holds: bool) -> CharValue {
        if holds {
            CharValue::TRUE
        } else {
            CharValue::FALSE
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn holds(self) -> bool {
        self.0 == 0
    }

    /// `1 − C`.
    pub fn complement(self) -> CharValue {
        CharValue(1 - self.0)
    }
}

impl From<CharValue> for u8 {
    fn from(c: CharValue) -> u8 {
        c.0
    }
}

impl TryFrom<u8> for CharValue {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 | 1 => Ok(CharValue(v)),
            _ => Err(format!("characteristic values are 0 or 1, got {v}")),
        }
    }
}

impl fmt::Display for CharValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The relations that have characteristic functions and complements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PredicateId {
    Pf,
    Prf,
    Rf,
    Ref,
}

impl PredicateId {
    pub fn arity(self) -> usize {
        match self {
            PredicateId::Prf | PredicateId::Ref => 1,
            PredicateId::Pf | PredicateId::Rf => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PredicateId::Pf => "Pf",
            PredicateId::Prf => "Prf",
            PredicateId::Rf => "Rf",
            PredicateId::Ref => "Ref",
        }
    }
}

impl FromStr for PredicateId {
    type Err = PredicateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pf" => Ok(PredicateId::Pf),
            "prf" => Ok(PredicateId::Prf),
            "rf" => Ok(PredicateId::Rf),
            "ref" => Ok(PredicateId::Ref),
            _ => Err(PredicateError::UnknownPredicate(s.to_string())),
        }
    }
}

/// Every predicate evaluable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predicate {
    Gd,
    EVbl,
    Fml,
    Ax,
    Mp,
    Gen,
    Char(PredicateId),
}

impl Predicate {
    pub fn arity(self) -> usize {
        match self {
            Predicate::Gd | Predicate::EVbl | Predicate::Fml | Predicate::Ax => 1,
            Predicate::Gen => 2,
            Predicate::Mp => 3,
            Predicate::Char(id) => id.arity(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Gd => "Gd",
            Predicate::EVbl => "EVbl",
            Predicate::Fml => "Fml",
            Predicate::Ax => "Ax",
            Predicate::Mp => "MP",
            Predicate::Gen => "Gen",
            Predicate::Char(id) => id.name(),
        }
    }
}

impl FromStr for Predicate {
    type Err = PredicateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gd" => Predicate::Gd,
            "evbl" => Predicate::EVbl,
            "fml" => Predicate::Fml,
            "ax" => Predicate::Ax,
            "mp" => Predicate::Mp,
            "gen" => Predicate::Gen,
            _ => Predicate::Char(s.parse()?),
        })
    }
}

/// `2^3 * 2^9 * v * 2^5`.
pub fn neg_code(v: &CodeExpr) -> CodeExpr {
    CodeExpr::concat_all(&[
        &CodeExpr::single(3),
        &CodeExpr::single(9),
        v,
        &CodeExpr::single(5),
    ])
}

/// Predicates evaluated against one symbol table and axiom set.
#[derive(Debug, Clone)]
pub struct Arithmetic {
    table: SymbolTable,
    mode: Mode,
}

impl Arithmetic {
    pub fn new(table: SymbolTable, mode: Mode) -> Result<Self, PredicateError> {
        let arith_symbols = [
            Symbol::Zero,
            Symbol::Equals,
            Symbol::Succ,
            Symbol::Plus,
            Symbol::Times,
        ];
        match mode {
            Mode::Toy => {
                if !table.has(Symbol::Atom) {
                    return Err(PredicateError::ModeTable {
                        mode,
                        reason: "the toy calculus needs a code for the atom A",
                    });
                }
                if table.has_variables() || arith_symbols.iter().any(|&s| table.has(s)) {
                    return Err(PredicateError::ModeTable {
                        mode,
                        reason: "the toy table has only parentheses, connectives and A",
                    });
                }
            }
            Mode::Pa | Mode::Pf => {
                if !table.has_variables() || !arith_symbols.iter().all(|&s| table.has(s)) {
                    return Err(PredicateError::ModeTable {
                        mode,
                        reason: "the table lacks variables or arithmetic symbols",
                    });
                }
            }
        }
        Ok(Arithmetic { table, mode })
    }

    pub fn standard(mode: Mode) -> Self {
        Arithmetic::new(SymbolTable::standard(), mode).expect("standard table fits PA and PF")
    }

    pub fn toy() -> Self {
        Arithmetic::new(SymbolTable::toy(), Mode::Toy).expect("toy table fits TOY")
    }

    pub fn table(&self) -> &SymbolTable {
        &self.table
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn formula_of(&self, x: &CodeExpr) -> Option<Formula> {
        codec::decode_formula(x, &self.table).ok()
    }

    /// `x` codes a nonempty expression: every exponent is a symbol code.
    pub fn gd(&self, x: &CodeExpr) -> bool {
        codec::tokens(x, &self.table).is_ok()
    }

    /// `x` codes an expression consisting of a single variable.
    pub fn evbl(&self, x: &CodeExpr) -> bool {
        matches!(
            codec::tokens(x, &self.table).as_deref(),
            Ok([Token::Sym(Symbol::Var(_))])
        )
    }

    pub fn fml(&self, x: &CodeExpr) -> bool {
        self.formula_of(x).is_some()
    }

    pub fn ax(&self, y: &CodeExpr) -> bool {
        self.formula_of(y)
            .is_some_and(|f| axioms::is_axiom(&f, self.mode))
    }

    pub fn neg(&self, v: &CodeExpr) -> CodeExpr {
        neg_code(v)
    }

    /// `y = 2^3 * x * 2^11 * z * 2^5 ∧ Gd(x) ∧ Gd(z)`.
    pub fn mp(&self, x: &CodeExpr, y: &CodeExpr, z: &CodeExpr) -> bool {
        let rhs = CodeExpr::concat_all(&[
            &CodeExpr::single(3),
            x,
            &CodeExpr::single(11),
            z,
            &CodeExpr::single(5),
        ]);
        y.code_equal(&rhs) && self.gd(x) && self.gd(z)
    }

    /// `(∃v)_{v<y}(EVbl(v) ∧ y = 2^3 * 2^3 * 2^13 * v * 2^5 * x * 2^5 ∧ Gd(x))`.
    ///
    /// The only candidate `v` is the one-symbol expression at position 3 of `y`.
    pub fn gen(&self, x: &CodeExpr, y: &CodeExpr) -> bool {
        let Ok(CodeExpr::Symbol(c)) = y.component_at(3) else {
            return false;
        };
        let v = CodeExpr::single(c);
        if !self.evbl(&v) {
            return false;
        }
        let rhs = CodeExpr::concat_all(&[
            &CodeExpr::single(3),
            &CodeExpr::single(3),
            &CodeExpr::single(13),
            &v,
            &CodeExpr::single(5),
            x,
            &CodeExpr::single(5),
        ]);
        y.code_equal(&rhs) && self.gd(x)
    }

    /// The lines of a candidate proof code with their decoded formulas.
    fn lines(&self, x: &CodeExpr) -> Option<Vec<(CodeExpr, Formula)>> {
        let CodeExpr::Seq(slots) = x else {
            return None;
        };
        if slots.is_empty() {
            return None;
        }
        let n = x.len_hint()?;
        (0..n)
            .map(|i| {
                let line = x.component_at(i).ok()?;
                let f = self.formula_of(&line)?;
                Some((line, f))
            })
            .collect()
    }

    /// Whether line `i` follows from lines `..i` by one of Prf's disjuncts.
    fn line_ok(&self, lines: &[(CodeExpr, Formula)], i: usize) -> bool {
        let (code, f) = &lines[i];
        if axioms::is_axiom(f, self.mode) {
            return true;
        }
        let earlier = &lines[..i];
        // Gen((u)_w, v): cheap syntactic filter, then the code equation
        if let Formula::ForAll(_, body) = f {
            if earlier
                .iter()
                .any(|(c, g)| g == body.as_ref() && self.gen(c, code))
            {
                return true;
            }
        }
        // MP((u)_z, (u)_w, v)
        earlier.iter().any(|(major, g)| match g {
            Formula::Implies(a, b) if b.as_ref() == f => earlier
                .iter()
                .any(|(minor, h)| h == a.as_ref() && self.mp(minor, major, code)),
            _ => false,
        })
    }

    /// `x` codes a proof: every line is an axiom or follows from earlier
    /// lines by Gen or MP. Equivalent to the recursion on `x = u * 2^v`.
    pub fn prf(&self, x: &CodeExpr) -> bool {
        match self.lines(x) {
            Some(lines) => (0..lines.len()).all(|i| self.line_ok(&lines, i)),
            None => false,
        }
    }

    /// `(x)_{lh(x) ∸ 1}`.
    pub fn last_component(x: &CodeExpr) -> Option<CodeExpr> {
        let lh = x.lh().ok()?;
        let idx = monus(&lh, &SymNat::from(1)).ok()?;
        let idx: BigUint = idx.concrete()?.clone();
        x.component(&idx).ok()
    }

    /// `Prf(x) ∧ v = (x)_{lh(x) ∸ 1}`.
    pub fn pf(&self, x: &CodeExpr, v: &CodeExpr) -> bool {
        self.prf(x) && Arithmetic::last_component(x).is_some_and(|last| last.code_equal(v))
    }

    /// `Pf(x, z) ∧ z = Neg(v)`.
    pub fn rf(&self, x: &CodeExpr, v: &CodeExpr) -> bool {
        self.pf(x, &neg_code(v))
    }

    /// The four-disjunct unfolding of Rf: the last line `y` of `x` equals
    /// `Neg(v)` and is justified by one of Prf's disjuncts over the prefix `u`.
    /// The free `v` is the argument; the inner quantifier that reuses the
    /// letter is read as a fresh variable.
    pub fn rf_expanded(&self, x: &CodeExpr, v: &CodeExpr) -> bool {
        let Some(lines) = self.lines(x) else {
            return false;
        };
        let k = lines.len() - 1;
        let y = &lines[k].0;
        if !y.code_equal(&neg_code(v)) {
            return false;
        }
        let u_prf = k == 0 || (0..k).all(|i| self.line_ok(&lines[..k], i));
        let ax = self.ax(y);
        if k == 0 {
            // [x = 2^y ∧ Ax(y) ∧ y = Neg(v)]
            return ax;
        }
        let u = &lines[..k];
        let gen = u.iter().any(|(w, _)| self.fml(w) && self.gen(w, y));
        let mp = u
            .iter()
            .any(|(z, _)| self.fml(z) && u.iter().any(|(w, _)| self.fml(w) && self.mp(z, w, y)));
        u_prf && (gen || mp || ax)
    }

    /// `Ref(x)`, read as `Prf(Neg(x))`.
    pub fn ref_(&self, x: &CodeExpr) -> bool {
        self.prf(&neg_code(x))
    }

    pub fn holds(&self, id: PredicateId, args: &[CodeExpr]) -> Result<bool, PredicateError> {
        check_arity(id.name(), id.arity(), args)?;
        Ok(match id {
            PredicateId::Pf => self.pf(&args[0], &args[1]),
            PredicateId::Prf => self.prf(&args[0]),
            PredicateId::Rf => self.rf(&args[0], &args[1]),
            PredicateId::Ref => self.ref_(&args[0]),
        })
    }

    pub fn evaluate(&self, p: Predicate, args: &[CodeExpr]) -> Result<bool, PredicateError> {
        check_arity(p.name(), p.arity(), args)?;
        Ok(match p {
            Predicate::Gd => self.gd(&args[0]),
            Predicate::EVbl => self.evbl(&args[0]),
            Predicate::Fml => self.fml(&args[0]),
            Predicate::Ax => self.ax(&args[0]),
            Predicate::Mp => self.mp(&args[0], &args[1], &args[2]),
            Predicate::Gen => self.gen(&args[0], &args[1]),
            Predicate::Char(id) => return self.holds(id, args),
        })
    }

    pub fn char_fn(&self, id: PredicateId, args: &[CodeExpr]) -> Result<CharValue, PredicateError> {
        self.holds(id, args).map(CharValue::of)
    }

    /// `C_¬R = 1 − C_R`.
    pub fn co_char_fn(
        &self,
        id: PredicateId,
        args: &[CodeExpr],
    ) -> Result<CharValue, PredicateError> {
        self.char_fn(id, args).map(CharValue::complement)
    }
}

fn check_arity(
    name: &'static str,
    expected: usize,
    args: &[CodeExpr],
) -> Result<(), PredicateError> {
    if args.len() == expected {
        Ok(())
    } else {
        Err(PredicateError::Arity {
            name,
            expected,
            got: args.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{encode_formula, encode_formulas};
    use crate::syntax::parse_formula;

    fn pa() -> Arithmetic {
        Arithmetic::standard(Mode::Pa)
    }

    fn code(s: &str) -> CodeExpr {
        encode_formula(&parse_formula(s).unwrap(), &SymbolTable::standard()).unwrap()
    }

    fn proof(lines: &[&str]) -> CodeExpr {
        let fs: Vec<Formula> = lines.iter().map(|s| parse_formula(s).unwrap()).collect();
        encode_formulas(&fs, &SymbolTable::standard()).unwrap()
    }

    #[test]
    fn expression_predicates() {
        let a = pa();
        assert!(a.evbl(&CodeExpr::single(21)));
        assert!(!a.evbl(&CodeExpr::single(15)));
        assert!(!a.evbl(&CodeExpr::symbols(&[21, 21])));
        assert!(a.fml(&code("(0 = 0)")));
        assert!(!a.fml(&CodeExpr::symbols(&[3])));
        assert!(a.gd(&CodeExpr::symbols(&[3])));
        assert!(!a.gd(&CodeExpr::Symbol(3)));
        assert!(!a.gd(&CodeExpr::seq(vec![code("(0 = 0)")])));
    }

    #[test]
    fn axioms_by_mode() {
        assert!(pa().ax(&code("((x1 + 0) = x1)")));
        assert!(!Arithmetic::standard(Mode::Pf).ax(&code("(0 = 0)")));
        assert!(!pa().ax(&CodeExpr::Symbol(3)));
    }

    #[test]
    fn neg_layout() {
        assert_eq!(neg_code(&code("(0 = 0)")), code("(~ (0 = 0))"));
        let toy = SymbolTable::toy_with_atom(17).unwrap();
        let a = encode_formula(&Formula::Atom, &toy).unwrap();
        assert_eq!(neg_code(&a), CodeExpr::symbols(&[3, 9, 17, 5]));
        assert_eq!(
            neg_code(&code("(0 = 0)")).lh().unwrap(),
            SymNat::from(5 + 3)
        );
    }

    #[test]
    fn mp_and_gen_equations() {
        let a = pa();
        let (x, z) = (code("(0 = 0)"), code("(x1 = x1)"));
        assert!(a.mp(&x, &code("((0 = 0) -> (x1 = x1))"), &z));
        assert!(!a.mp(&x, &code("((x1 = x1) -> (0 = 0))"), &z));
        assert!(!a.mp(&CodeExpr::Symbol(3), &code("((0 = 0) -> (x1 = x1))"), &z));
        assert!(a.gen(&code("(x1 = x1)"), &code("((all x1) (x1 = x1))")));
        let bare = CodeExpr::symbols(&[3, 13, 21, 5]).concat(&code("(x1 = x1)"));
        assert!(!a.gen(&code("(x1 = x1)"), &bare));
        let not_var = CodeExpr::symbols(&[3, 3, 13, 15, 5])
            .concat(&code("(x1 = x1)"))
            .concat(&CodeExpr::single(5));
        assert!(!a.gen(&code("(x1 = x1)"), &not_var));
    }

    #[test]
    fn proof_predicates() {
        let a = pa();
        let s5 = "((x1 + 0) = x1)";
        let p = proof(&[s5, "((all x1) ((x1 + 0) = x1))"]);
        assert!(a.prf(&p));
        assert!(a.pf(&p, &code("((all x1) ((x1 + 0) = x1))")));
        assert!(!a.pf(&p, &code(s5)));
        assert!(!a.prf(&proof(&["((all x1) ((x1 + 0) = x1))", s5])));
        assert!(!a.prf(&CodeExpr::symbols(&[3])));
        assert!(!a.pf(&CodeExpr::symbols(&[3]), &code(s5)));

        let refutation = proof(&["(~ (0 = x1'))"]);
        assert!(a.rf(&refutation, &code("(0 = x1')")));
        assert!(a.rf_expanded(&refutation, &code("(0 = x1')")));
        assert!(!a.rf(&p, &code(s5)));
        assert!(!a.rf(&CodeExpr::symbols(&[3]), &code(s5)));
    }

    #[test]
    fn ref_is_false_on_the_usual_suspects() {
        let a = pa();
        assert!(!a.ref_(&CodeExpr::symbols(&[3])));
        assert!(!a.ref_(&proof(&["((x1 + 0) = x1)"])));
        assert!(!a.ref_(&code("(0 = 0)")));
    }

    #[test]
    fn toy_prf() {
        let a = Arithmetic::toy();
        let t = a.table().clone();
        let one = encode_formulas([&Formula::Atom], &t).unwrap();
        assert_eq!(one.materialize(64).value().unwrap(), BigUint::from(4u32));
        assert!(a.prf(&one));
        assert!(!a.prf(&CodeExpr::symbols(&[3])));
        let atom = encode_formula(&Formula::Atom, &t).unwrap();
        assert_eq!(
            a.char_fn(PredicateId::Pf, &[one.clone(), atom.clone()]),
            Ok(CharValue::TRUE)
        );
        assert_eq!(
            a.co_char_fn(PredicateId::Pf, &[one, atom]),
            Ok(CharValue::FALSE)
        );
    }

    #[test]
    fn characteristic_functions() {
        let a = pa();
        let x = CodeExpr::symbols(&[3]);
        assert_eq!(
            a.char_fn(PredicateId::Ref, std::slice::from_ref(&x)),
            Ok(CharValue::FALSE)
        );
        assert_eq!(
            a.co_char_fn(PredicateId::Ref, std::slice::from_ref(&x)),
            Ok(CharValue::TRUE)
        );
        assert!(matches!(
            a.char_fn(PredicateId::Pf, &[x]),
            Err(PredicateError::Arity { .. })
        ));
        assert!(matches!(
            "foo".parse::<PredicateId>(),
            Err(PredicateError::UnknownPredicate(_))
        ));
        assert!(Arithmetic::new(SymbolTable::standard(), Mode::Toy).is_err());
        assert!(Arithmetic::new(SymbolTable::toy(), Mode::Pa).is_err());
    }
}
