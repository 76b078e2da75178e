//! Abstract syntax for the language of Peano Arithmetic (and its pure-logic
//! and toy fragments), with a fully parenthesized concrete form.
//!
//! The concrete grammar is deliberately rigid: every compound formula and
//! every binary term carries its own pair of parentheses, so the printed
//! symbol sequence of `(a -> b)` is exactly `( a -> b )`, of `(~ a)` exactly
//! `( ~ a )`, and of `((all xk) a)` exactly `( ( all xk ) a )`. The code
//! equations for modus ponens, negation and generalization rely on that shape.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::code::SymNat;
use crate::table::Symbol;

/// Index `k` of the variable `xk`. Always at least 1.
pub type VarIndex = u32;

/// Numerals up to this value are built as explicit successor chains; larger
/// ones (in practice: numerals of Gödel numbers) stay lazy.
pub const NUMERAL_EXPAND_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(VarIndex),
    Zero,
    Succ(Box<Term>),
    Plus(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
    /// Object-language stand-in for the substitution function `sb`. Only the
    /// diagonal construction introduces it.
    Sb(Box<Term>, Box<Term>),
    /// A numeral too large to spell out as successor applications.
    Numeral(LazyNumeral),
}

/// The numeral `n̄` for an `n` above [`NUMERAL_EXPAND_LIMIT`], kept as a count.
///
/// Only [`numeral`] constructs these, so a lazy numeral never denotes a value
/// that would otherwise be written as an explicit successor chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazyNumeral(SymNat);

impl LazyNumeral {
    /// For decoders; callers must respect the expansion limit themselves.
    pub(crate) fn new_unchecked(n: SymNat) -> Self {
        LazyNumeral(n)
    }

    pub fn value(&self) -> &SymNat {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Equals(Term, Term),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ForAll(VarIndex, Box<Formula>),
    /// The single propositional letter of the toy calculus.
    Atom,
}

/// A formula without free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence(Formula);

impl Sentence {
    pub fn new(f: Formula) -> Result<Self, SyntaxError> {
        let free = f.free_vars();
        if free.is_empty() {
            Ok(Sentence(f))
        } else {
            Err(SyntaxError::NotASentence(free.into_iter().collect()))
        }
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Either kind of well-formed expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    Formula(Formula),
    Term(Term),
}

/// One item of a symbol sequence. A lazy numeral stands for the run `0 ′ ′ … ′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Sym(Symbol),
    Numeral(LazyNumeral),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("unknown symbol {found:?} at position {pos}")]
    UnknownSymbol { pos: usize, found: String },
    #[error("unexpected {found} at position {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("trailing input at position {pos}")]
    Trailing { pos: usize },
    #[error("variable x{var} is not free for substitution: it would be captured")]
    Capture { var: VarIndex },
    #[error("formula has free variables {0:?}")]
    NotASentence(Vec<VarIndex>),
}

// ---------------------------------------------------------------------------
// Constructors

impl Term {
    pub fn var(k: VarIndex) -> Term {
        assert!(k >= 1, "variable indices start at 1");
        Term::Var(k)
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::Times(Box::new(a), Box::new(b))
    }

    pub fn sb(a: Term, b: Term) -> Term {
        Term::Sb(Box::new(a), Box::new(b))
    }

    pub fn is_closed(&self) -> bool {
        let mut vars = BTreeSet::new();
        self.collect_vars(&mut vars);
        vars.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<VarIndex> {
        let mut vars = BTreeSet::new();
        self.collect_vars(&mut vars);
        vars
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarIndex>) {
        match self {
            Term::Var(k) => {
                out.insert(*k);
            }
            Term::Zero | Term::Numeral(_) => {}
            Term::Succ(t) => t.collect_vars(out),
            Term::Plus(a, b) | Term::Times(a, b) | Term::Sb(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn contains_sb(&self) -> bool {
        match self {
            Term::Sb(..) => true,
            Term::Var(_) | Term::Zero | Term::Numeral(_) => false,
            Term::Succ(t) => t.contains_sb(),
            Term::Plus(a, b) | Term::Times(a, b) => a.contains_sb() || b.contains_sb(),
        }
    }

    /// Replaces every occurrence of `xv` by `t`. Terms bind nothing.
    pub fn substitute(&self, v: VarIndex, t: &Term) -> Term {
        match self {
            Term::Var(k) if *k == v => t.clone(),
            Term::Var(_) | Term::Zero | Term::Numeral(_) => self.clone(),
            Term::Succ(a) => Term::succ(a.substitute(v, t)),
            Term::Plus(a, b) => Term::plus(a.substitute(v, t), b.substitute(v, t)),
            Term::Times(a, b) => Term::times(a.substitute(v, t), b.substitute(v, t)),
            Term::Sb(a, b) => Term::sb(a.substitute(v, t), b.substitute(v, t)),
        }
    }

    pub fn tokens(&self) -> Vec<Token> {
        let mut out = Vec::new();
        self.push_tokens(&mut out);
        out
    }

    fn push_tokens(&self, out: &mut Vec<Token>) {
        match self {
            Term::Var(k) => out.push(Token::Sym(Symbol::Var(*k))),
            Term::Zero => out.push(Token::Sym(Symbol::Zero)),
            Term::Numeral(n) => out.push(Token::Numeral(n.clone())),
            Term::Succ(t) => {
                // successor chains can be thousands deep; unwind iteratively
                let mut depth = 1;
                let mut inner = t.as_ref();
                while let Term::Succ(next) = inner {
                    depth += 1;
                    inner = next;
                }
                inner.push_tokens(out);
                out.extend(std::iter::repeat_n(Token::Sym(Symbol::Succ), depth));
            }
            Term::Plus(a, b) | Term::Times(a, b) => {
                let op = if matches!(self, Term::Plus(..)) {
                    Symbol::Plus
                } else {
                    Symbol::Times
                };
                out.push(Token::Sym(Symbol::LParen));
                a.push_tokens(out);
                out.push(Token::Sym(op));
                b.push_tokens(out);
                out.push(Token::Sym(Symbol::RParen));
            }
            Term::Sb(a, b) => {
                out.push(Token::Sym(Symbol::Sb));
                out.push(Token::Sym(Symbol::LParen));
                a.push_tokens(out);
                out.push(Token::Sym(Symbol::Comma));
                b.push_tokens(out);
                out.push(Token::Sym(Symbol::RParen));
            }
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Equals(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(k: VarIndex, f: Formula) -> Formula {
        assert!(k >= 1, "variable indices start at 1");
        Formula::ForAll(k, Box::new(f))
    }

    pub fn free_vars(&self) -> BTreeSet<VarIndex> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<VarIndex>) {
        match self {
            Formula::Equals(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(f) => f.collect_free(out),
            Formula::Implies(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::ForAll(k, f) => {
                let mut inner = BTreeSet::new();
                f.collect_free(&mut inner);
                inner.remove(k);
                out.extend(inner);
            }
            Formula::Atom => {}
        }
    }

    pub fn has_free(&self, v: VarIndex) -> bool {
        match self {
            Formula::Equals(a, b) => a.vars().contains(&v) || b.vars().contains(&v),
            Formula::Not(f) => f.has_free(v),
            Formula::Implies(a, b) => a.has_free(v) || b.has_free(v),
            Formula::ForAll(k, f) => *k != v && f.has_free(v),
            Formula::Atom => false,
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// `t` is free for `xv` in `self`: no free occurrence of `xv` lies in the
    /// scope of a quantifier binding a variable of `t`.
    pub fn is_free_for(&self, t: &Term, v: VarIndex) -> bool {
        let tvars = t.vars();
        self.free_for(&tvars, v)
    }

    fn free_for(&self, tvars: &BTreeSet<VarIndex>, v: VarIndex) -> bool {
        match self {
            Formula::Equals(..) | Formula::Atom => true,
            Formula::Not(f) => f.free_for(tvars, v),
            Formula::Implies(a, b) => a.free_for(tvars, v) && b.free_for(tvars, v),
            Formula::ForAll(k, f) => {
                if *k == v || !f.has_free(v) {
                    true
                } else {
                    !tvars.contains(k) && f.free_for(tvars, v)
                }
            }
        }
    }

    /// Replaces every free occurrence of `xv` by `t`. Capture is reported,
    /// never repaired by renaming.
    pub fn substitute(&self, v: VarIndex, t: &Term) -> Result<Formula, SyntaxError> {
        if !self.is_free_for(t, v) {
            return Err(SyntaxError::Capture { var: v });
        }
        Ok(self.subst_unchecked(v, t))
    }

    fn subst_unchecked(&self, v: VarIndex, t: &Term) -> Formula {
        match self {
            Formula::Equals(a, b) => Formula::Equals(a.substitute(v, t), b.substitute(v, t)),
            Formula::Not(f) => Formula::not(f.subst_unchecked(v, t)),
            Formula::Implies(a, b) => {
                Formula::implies(a.subst_unchecked(v, t), b.subst_unchecked(v, t))
            }
            Formula::ForAll(k, f) if *k == v => self.clone(),
            Formula::ForAll(k, f) => Formula::forall(*k, f.subst_unchecked(v, t)),
            Formula::Atom => Formula::Atom,
        }
    }

    pub fn contains_sb(&self) -> bool {
        match self {
            Formula::Equals(a, b) => a.contains_sb() || b.contains_sb(),
            Formula::Not(f) | Formula::ForAll(_, f) => f.contains_sb(),
            Formula::Implies(a, b) => a.contains_sb() || b.contains_sb(),
            Formula::Atom => false,
        }
    }

    /// Number of primitive symbols in the printed form (lazy numerals count as one).
    pub fn symbol_count(&self) -> usize {
        self.tokens().len()
    }

    /// The primitive symbol sequence of the printed form.
    pub fn tokens(&self) -> Vec<Token> {
        let mut out = Vec::new();
        self.push_tokens(&mut out);
        out
    }

    fn push_tokens(&self, out: &mut Vec<Token>) {
        use Symbol::*;
        match self {
            Formula::Equals(a, b) => {
                out.push(Token::Sym(LParen));
                a.push_tokens(out);
                out.push(Token::Sym(Equals));
                b.push_tokens(out);
                out.push(Token::Sym(RParen));
            }
            Formula::Not(f) => {
                out.push(Token::Sym(LParen));
                out.push(Token::Sym(Not));
                f.push_tokens(out);
                out.push(Token::Sym(RParen));
            }
            Formula::Implies(a, b) => {
                out.push(Token::Sym(LParen));
                a.push_tokens(out);
                out.push(Token::Sym(Implies));
                b.push_tokens(out);
                out.push(Token::Sym(RParen));
            }
            Formula::ForAll(k, f) => {
                out.extend(
                    [LParen, LParen, ForAll, Var(*k), RParen]
                        .into_iter()
                        .map(Token::Sym),
                );
                f.push_tokens(out);
                out.push(Token::Sym(RParen));
            }
            Formula::Atom => out.push(Token::Sym(Atom)),
        }
    }
}

/// The numeral for `n`: `0` followed by `n` successor applications.
pub fn numeral(n: &SymNat) -> Term {
    match n.small_value(NUMERAL_EXPAND_LIMIT) {
        Some(k) => {
            let mut t = Term::Zero;
            for _ in 0..k {
                t = Term::succ(t);
            }
            t
        }
        None => Term::Numeral(LazyNumeral(n.clone())),
    }
}

pub fn numeral_u64(n: u64) -> Term {
    numeral(&SymNat::from(n))
}

impl Expression {
    pub fn tokens(&self) -> Vec<Token> {
        match self {
            Expression::Formula(f) => f.tokens(),
            Expression::Term(t) => t.tokens(),
        }
    }
}

// ---------------------------------------------------------------------------
// Printing

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(k) => write!(f, "x{k}"),
            Term::Zero => f.write_str("0"),
            Term::Numeral(n) => write!(f, "0'^{{{}}}", n.0),
            Term::Succ(t) => {
                let mut depth = 1;
                let mut inner = t.as_ref();
                while let Term::Succ(next) = inner {
                    depth += 1;
                    inner = next;
                }
                write!(f, "{inner}")?;
                for _ in 0..depth {
                    f.write_str("'")?;
                }
                Ok(())
            }
            Term::Plus(a, b) => write!(f, "({a} + {b})"),
            Term::Times(a, b) => write!(f, "({a} . {b})"),
            Term::Sb(a, b) => write!(f, "sb({a}, {b})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Equals(a, b) => write!(f, "({a} = {b})"),
            Formula::Not(g) => write!(f, "(~ {g})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::ForAll(k, g) => write!(f, "((all x{k}) {g})"),
            Formula::Atom => f.write_str("A"),
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Formula(g) => g.fmt(f),
            Expression::Term(t) => t.fmt(f),
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

// ---------------------------------------------------------------------------
// Lexing and parsing

fn lex(text: &str) -> Result<(Vec<Token>, Vec<usize>), SyntaxError> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut toks = Vec::new();
    let mut pos = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (at, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[at..];
        let (sym, width) = match c {
            '(' => (Symbol::LParen, 1),
            ')' => (Symbol::RParen, 1),
            ',' => (Symbol::Comma, 1),
            '~' | '¬' => (Symbol::Not, 1),
            '⇒' | '→' => (Symbol::Implies, 1),
            '∀' => (Symbol::ForAll, 1),
            '=' => (Symbol::Equals, 1),
            '\'' | '′' => (Symbol::Succ, 1),
            '+' => (Symbol::Plus, 1),
            '.' | '·' => (Symbol::Times, 1),
            'A' => (Symbol::Atom, 1),
            '0' if !rest[1..].starts_with(|d: char| d.is_ascii_digit()) => (Symbol::Zero, 1),
            '-' if rest.starts_with("->") => (Symbol::Implies, 2),
            'a' if rest.starts_with("all") && !ident_continues(rest, 3) => (Symbol::ForAll, 3),
            's' if rest.starts_with("sb") && !ident_continues(rest, 2) => (Symbol::Sb, 2),
            'x' => {
                let digits: String = rest[1..]
                    .chars()
                    .take_while(|d| d.is_ascii_digit())
                    .collect();
                match digits.parse::<VarIndex>() {
                    Ok(k) if k >= 1 && !digits.starts_with('0') => {
                        (Symbol::Var(k), 1 + digits.len())
                    }
                    _ => {
                        return Err(SyntaxError::UnknownSymbol {
                            pos: at,
                            found: format!("x{digits}"),
                        })
                    }
                }
            }
            _ => {
                let found: String = rest
                    .chars()
                    .take_while(|d| !d.is_whitespace() && !"()".contains(*d))
                    .collect();
                return Err(SyntaxError::UnknownSymbol { pos: at, found });
            }
        };
        toks.push(Token::Sym(sym));
        pos.push(at);
        // width counts chars; all multi-char symbols are ASCII
        i += width;
    }
    Ok((toks, pos))
}

fn ident_continues(rest: &str, n: usize) -> bool {
    rest[n..]
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphanumeric())
}

/// Recursive-descent parser over a token stream, shared by text parsing and
/// Gödel-number decoding.
pub(crate) struct Parser<'a> {
    toks: &'a [Token],
    pos: Option<&'a [usize]>,
    i: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(toks: &'a [Token]) -> Self {
        Parser {
            toks,
            pos: None,
            i: 0,
        }
    }

    fn with_positions(toks: &'a [Token], pos: &'a [usize]) -> Self {
        Parser {
            toks,
            pos: Some(pos),
            i: 0,
        }
    }

    fn position(&self, i: usize) -> usize {
        match self.pos {
            Some(p) => p.get(i).copied().unwrap_or(usize::MAX),
            None => i,
        }
    }

    fn peek_sym(&self, at: usize) -> Option<&Symbol> {
        match self.toks.get(at) {
            Some(Token::Sym(s)) => Some(s),
            _ => None,
        }
    }

    fn unexpected(&self, expected: &'static str) -> SyntaxError {
        match self.toks.get(self.i) {
            None => SyntaxError::UnexpectedEnd { expected },
            Some(tok) => SyntaxError::Unexpected {
                pos: self.position(self.i),
                found: describe(tok),
                expected,
            },
        }
    }

    fn expect(&mut self, sym: Symbol, expected: &'static str) -> Result<(), SyntaxError> {
        if self.peek_sym(self.i) == Some(&sym) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    pub(crate) fn finish(&self) -> Result<(), SyntaxError> {
        if self.i == self.toks.len() {
            Ok(())
        } else {
            Err(SyntaxError::Trailing {
                pos: self.position(self.i),
            })
        }
    }

    /// Decides whether the operand starting at `at` is a formula (as opposed
    /// to a term) without consuming anything.
    fn operand_is_formula(&self, at: usize) -> bool {
        match self.toks.get(at) {
            Some(Token::Sym(Symbol::Atom)) => true,
            Some(Token::Sym(Symbol::LParen)) => {
                let mut depth = 0usize;
                for tok in &self.toks[at..] {
                    match tok {
                        Token::Sym(Symbol::LParen) => depth += 1,
                        Token::Sym(Symbol::RParen) => {
                            depth -= 1;
                            if depth == 0 {
                                return false;
                            }
                        }
                        Token::Sym(
                            Symbol::Equals
                            | Symbol::Not
                            | Symbol::Implies
                            | Symbol::ForAll
                            | Symbol::Atom,
                        ) => return true,
                        _ => {}
                    }
                }
                false
            }
            _ => false,
        }
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek_sym(self.i) {
            Some(Symbol::Atom) => {
                self.i += 1;
                Ok(Formula::Atom)
            }
            Some(Symbol::LParen) => {
                let next = self.peek_sym(self.i + 1);
                if next == Some(&Symbol::Not) {
                    self.i += 2;
                    let f = self.formula()?;
                    self.expect(Symbol::RParen, "')' closing a negation")?;
                    return Ok(Formula::not(f));
                }
                if next == Some(&Symbol::LParen)
                    && self.peek_sym(self.i + 2) == Some(&Symbol::ForAll)
                {
                    self.i += 3;
                    let k = match self.peek_sym(self.i) {
                        Some(Symbol::Var(k)) => *k,
                        _ => return Err(self.unexpected("a variable after 'all'")),
                    };
                    self.i += 1;
                    self.expect(Symbol::RParen, "')' closing the quantifier prefix")?;
                    let f = self.formula()?;
                    self.expect(Symbol::RParen, "')' closing a quantified formula")?;
                    return Ok(Formula::forall(k, f));
                }
                self.i += 1;
                if self.operand_is_formula(self.i) {
                    let a = self.formula()?;
                    self.expect(Symbol::Implies, "'->'")?;
                    let b = self.formula()?;
                    self.expect(Symbol::RParen, "')' closing an implication")?;
                    Ok(Formula::implies(a, b))
                } else {
                    let a = self.term()?;
                    self.expect(Symbol::Equals, "'='")?;
                    let b = self.term()?;
                    self.expect(Symbol::RParen, "')' closing an equation")?;
                    Ok(Formula::Equals(a, b))
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    pub(crate) fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut t = match self.toks.get(self.i) {
            Some(Token::Numeral(n)) => {
                self.i += 1;
                Term::Numeral(n.clone())
            }
            Some(Token::Sym(Symbol::Zero)) => {
                self.i += 1;
                Term::Zero
            }
            Some(Token::Sym(Symbol::Var(k))) => {
                self.i += 1;
                Term::Var(*k)
            }
            Some(Token::Sym(Symbol::Sb)) => {
                self.i += 1;
                self.expect(Symbol::LParen, "'(' after sb")?;
                let a = self.term()?;
                self.expect(Symbol::Comma, "','")?;
                let b = self.term()?;
                self.expect(Symbol::RParen, "')' closing sb")?;
                Term::sb(a, b)
            }
            Some(Token::Sym(Symbol::LParen)) => {
                self.i += 1;
                let a = self.term()?;
                let op = match self.peek_sym(self.i) {
                    Some(Symbol::Plus) => Symbol::Plus,
                    Some(Symbol::Times) => Symbol::Times,
                    _ => return Err(self.unexpected("'+' or '.'")),
                };
                self.i += 1;
                let b = self.term()?;
                self.expect(Symbol::RParen, "')' closing a binary term")?;
                if op == Symbol::Plus {
                    Term::plus(a, b)
                } else {
                    Term::times(a, b)
                }
            }
            _ => return Err(self.unexpected("a term")),
        };
        while self.peek_sym(self.i) == Some(&Symbol::Succ) {
            self.i += 1;
            t = Term::succ(t);
        }
        Ok(t)
    }
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Sym(s) => format!("'{s}'"),
        Token::Numeral(_) => "a numeral".to_string(),
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let (toks, pos) = lex(text)?;
    let mut p = Parser::with_positions(&toks, &pos);
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let (toks, pos) = lex(text)?;
    let mut p = Parser::with_positions(&toks, &pos);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses a formula, falling back to a term.
pub fn parse_expression(text: &str) -> Result<Expression, SyntaxError> {
    match parse_formula(text) {
        Ok(f) => Ok(Expression::Formula(f)),
        Err(fe) => parse_term(text).map(Expression::Term).map_err(|_| fe),
    }
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parses_the_basic_shapes() {
        assert_eq!(p("(x1 = x1)"), Formula::eq(Term::var(1), Term::var(1)));
        assert_eq!(
            p("(~ (0 = 0))"),
            Formula::not(Formula::eq(Term::Zero, Term::Zero))
        );
        assert_eq!(
            p("((all x1) (x1 = x1))"),
            Formula::forall(1, Formula::eq(Term::var(1), Term::var(1)))
        );
        assert_eq!(
            p("(((x1 + 0) = x1) -> (x1' = (x2 . x3)))"),
            Formula::implies(
                Formula::eq(Term::plus(Term::var(1), Term::Zero), Term::var(1)),
                Formula::eq(
                    Term::succ(Term::var(1)),
                    Term::times(Term::var(2), Term::var(3))
                )
            )
        );
    }

    #[test]
    fn prints_the_basic_shapes() {
        assert_eq!(Formula::eq(Term::Zero, Term::Zero).to_string(), "(0 = 0)");
        assert_eq!(
            Formula::not(Formula::eq(Term::Zero, Term::Zero)).to_string(),
            "(~ (0 = 0))"
        );
        assert_eq!(
            Formula::forall(1, Formula::eq(Term::var(1), Term::var(1))).to_string(),
            "((all x1) (x1 = x1))"
        );
        assert_eq!(
            Formula::eq(Term::sb(Term::var(1), Term::var(1)), Term::Zero).to_string(),
            "(sb(x1, x1) = 0)"
        );
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(p("(¬ (0 = 0′))"), p("(~ (0 = 0'))"));
        assert_eq!(p("((∀x2) ((x2 · 0) = 0))"), p("((all x2) ((x2 . 0) = 0))"));
        assert_eq!(p("(A ⇒ A)"), p("(A -> A)"));
    }

    #[test]
    fn rejects_ill_formed_input() {
        assert!(matches!(
            parse_formula("(x1 = x1"),
            Err(SyntaxError::UnexpectedEnd { .. })
        ));
        assert!(matches!(
            parse_formula("(x1 = y)"),
            Err(SyntaxError::UnknownSymbol { pos: 6, .. })
        ));
        assert!(matches!(
            parse_formula("(x0 = 0)"),
            Err(SyntaxError::UnknownSymbol { .. })
        ));
        assert!(matches!(
            parse_formula("(0 = 0) x1"),
            Err(SyntaxError::Trailing { pos: 8 })
        ));
        // unparenthesized equation
        assert!(parse_formula("x1 = x1").is_err());
        // binary term needs its own parentheses
        assert!(parse_formula("(x1 + 0 = x1)").is_err());
        assert!(parse_formula("((x1 = x1) = 0)").is_err());
    }

    #[test]
    fn numerals() {
        assert_eq!(numeral_u64(0), Term::Zero);
        assert_eq!(numeral_u64(2), Term::succ(Term::succ(Term::Zero)));
        for n in [0u64, 1, 7, 1000] {
            let t = numeral_u64(n);
            let mut count = 0;
            let mut cur = &t;
            while let Term::Succ(inner) = cur {
                count += 1;
                cur = inner;
            }
            assert_eq!(cur, &Term::Zero);
            assert_eq!(count, n);
        }
        assert!(matches!(
            numeral_u64(NUMERAL_EXPAND_LIMIT + 1),
            Term::Numeral(_)
        ));
    }

    #[test]
    fn free_variables_and_capture() {
        assert_eq!(
            p("(x1 = x2)").free_vars().into_iter().collect::<Vec<_>>(),
            vec![1, 2]
        );
        assert!(p("((all x1) (x1 = x1))").free_vars().is_empty());
        assert!(!p("((all x2) (x1 = x2))").is_free_for(&Term::var(2), 1));
        assert!(p("((all x2) (x1 = x2))").is_free_for(&Term::var(3), 1));
        // x1 has no free occurrence under the binder, so anything is free for it
        assert!(p("((all x2) (x2 = x2))").is_free_for(&Term::var(2), 1));
    }

    #[test]
    fn substitution() {
        assert_eq!(
            p("(x1 = x1)").substitute(1, &Term::Zero).unwrap(),
            p("(0 = 0)")
        );
        let closed = p("((all x1) (x1 = x1))");
        assert_eq!(closed.substitute(1, &Term::Zero).unwrap(), closed);
        assert_eq!(
            p("(x1 = x2)")
                .substitute(2, &Term::succ(Term::var(1)))
                .unwrap(),
            p("(x1 = x1')")
        );
        assert_eq!(
            p("((all x2) (x1 = x2))").substitute(1, &Term::var(2)),
            Err(SyntaxError::Capture { var: 1 })
        );
    }

    #[test]
    fn sentences() {
        assert!(Sentence::new(p("(0 = 0)")).is_ok());
        assert_eq!(
            Sentence::new(p("(x3 = 0)")),
            Err(SyntaxError::NotASentence(vec![3]))
        );
    }

    #[test]
    fn expression_fallback() {
        assert_eq!(
            parse_expression("(x1 + 0')").unwrap(),
            Expression::Term(Term::plus(Term::var(1), Term::succ(Term::Zero)))
        );
        assert!(matches!(
            parse_expression("(x1 = 0)").unwrap(),
            Expression::Formula(_)
        ));
    }
}
