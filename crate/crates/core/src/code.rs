//! Symbolic Gödel numbers.
//!
//! A [`CodeExpr`] stands for the integer `∏ pᵢ^{eᵢ}` without computing it.
//! Odd integers are symbol codes; sequence codes are even (their first
//! exponent is a code), so a position's exponent is either an odd symbol code
//! or a nested sequence. A numeral run `0 ′ ′ … ′` of any length, including
//! one whose length is itself a Gödel number, occupies a single
//! [`Slot::Numeral`].
//!
//! Equality ([`CodeExpr::code_equal`]) is decided on the position streams and
//! expands numeral runs lazily, so it agrees with equality of the materialized
//! integers while never building them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::primes::nth_prime;

/// Default size bound for [`CodeExpr::materialize`].
pub const DEFAULT_BIT_LIMIT: u64 = 1_000_000;

/// Positions past this index borrow the prime at the cap when estimating sizes.
const ESTIMATE_PRIME_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("not a sequence code")]
    NotASequence,
    #[error("index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: BigUint, len: BigUint },
    #[error("sequence length depends on a lazily valued numeral")]
    SymbolicLength,
    #[error("operation needs concrete operands")]
    CodeValuedOperand,
    #[error("bad code notation at {pos}: {msg}")]
    Notation { pos: usize, msg: String },
}

/// A natural number: either concrete, or the value of a Gödel number.
#[derive(Debug, Clone)]
pub enum SymNat {
    Concrete(BigUint),
    CodeValued(Box<CodeExpr>),
}

#[derive(Debug, Clone)]
pub enum CodeExpr {
    /// An odd symbol code, as a bare integer.
    Symbol(u64),
    /// `p₀^{e₀} · p₁^{e₁} · …`, one or more positions per slot.
    Seq(Vec<Slot>),
}

#[derive(Debug, Clone)]
pub enum Slot {
    /// One position whose exponent is a symbol code or a nested sequence.
    One(CodeExpr),
    /// `1 + count` positions: the zero symbol, then `count` successor symbols.
    Numeral(NumeralRun),
}

#[derive(Debug, Clone)]
pub struct NumeralRun {
    pub zero: u64,
    pub succ: u64,
    pub count: SymNat,
}

/// Outcome of [`CodeExpr::materialize`]. Overflow is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Materialized {
    Value(BigUint),
    Overflow { estimated_bits: u64 },
}

impl Materialized {
    pub fn value(self) -> Option<BigUint> {
        match self {
            Materialized::Value(v) => Some(v),
            Materialized::Overflow { .. } => None,
        }
    }
}

// ---------------------------------------------------------------------------
// SymNat

impl SymNat {
    pub fn concrete(&self) -> Option<&BigUint> {
        match self {
            SymNat::Concrete(n) => Some(n),
            SymNat::CodeValued(_) => None,
        }
    }

    /// The value, if it materializes within `bit_limit` bits.
    pub fn to_biguint(&self, bit_limit: u64) -> Option<BigUint> {
        match self {
            SymNat::Concrete(n) => Some(n.clone()),
            SymNat::CodeValued(c) => c.materialize(bit_limit).value(),
        }
    }

    /// The value if it is at most `limit`.
    pub fn small_value(&self, limit: u64) -> Option<u64> {
        self.to_biguint(64)
            .and_then(|v| v.to_u64())
            .filter(|&v| v <= limit)
    }
}

impl From<u64> for SymNat {
    fn from(n: u64) -> Self {
        SymNat::Concrete(BigUint::from(n))
    }
}

impl From<BigUint> for SymNat {
    fn from(n: BigUint) -> Self {
        SymNat::Concrete(n)
    }
}

impl From<CodeExpr> for SymNat {
    fn from(c: CodeExpr) -> Self {
        SymNat::CodeValued(Box::new(c))
    }
}

impl PartialEq for SymNat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SymNat::Concrete(a), SymNat::Concrete(b)) => a == b,
            (SymNat::CodeValued(x), SymNat::CodeValued(y)) => x.code_equal(y),
            (SymNat::Concrete(a), SymNat::CodeValued(x))
            | (SymNat::CodeValued(x), SymNat::Concrete(a)) => match x.materialize(a.bits() + 2) {
                Materialized::Value(v) => &v == a,
                Materialized::Overflow { .. } => false,
            },
        }
    }
}

impl Eq for SymNat {}

impl fmt::Display for SymNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymNat::Concrete(n) => write!(f, "{n}"),
            SymNat::CodeValued(c) => write!(f, "#{c}"),
        }
    }
}

/// Truncated subtraction `a ∸ b`.
pub fn monus(a: &SymNat, b: &SymNat) -> Result<SymNat, CodeError> {
    match (a, b) {
        (SymNat::Concrete(a), SymNat::Concrete(b)) => Ok(SymNat::Concrete(if a > b {
            a - b
        } else {
            BigUint::zero()
        })),
        _ => Err(CodeError::CodeValuedOperand),
    }
}

// ---------------------------------------------------------------------------
// Position streams

#[derive(Clone, Copy)]
enum Block<'a> {
    Sym(u64),
    Code(&'a CodeExpr),
    Rep { sym: u64, count: &'a SymNat },
}

fn blocks(slots: &[Slot]) -> Vec<Block<'_>> {
    let mut out = Vec::with_capacity(slots.len());
    for slot in slots {
        match slot {
            Slot::One(CodeExpr::Symbol(c)) => out.push(Block::Sym(*c)),
            Slot::One(x) => out.push(Block::Code(x)),
            Slot::Numeral(run) => {
                out.push(Block::Sym(run.zero));
                out.push(Block::Rep {
                    sym: run.succ,
                    count: &run.count,
                });
            }
        }
    }
    out
}

/// What is left of a run while walking a stream.
enum Remaining<'a> {
    Finite(BigUint),
    Lazy {
        code: &'a CodeExpr,
        consumed: BigUint,
    },
}

impl<'a> Remaining<'a> {
    fn of(count: &'a SymNat) -> Self {
        match count {
            SymNat::Concrete(n) => Remaining::Finite(n.clone()),
            SymNat::CodeValued(c) => Remaining::Lazy {
                code: c,
                consumed: BigUint::zero(),
            },
        }
    }

    /// Turns a lazy remainder into a finite one if its value fits `bits`.
    fn resolve(&mut self, bits: u64) {
        if let Remaining::Lazy { code, consumed } = self {
            if let Materialized::Value(v) = code.materialize(bits) {
                *self = Remaining::Finite(if v > *consumed {
                    v - &*consumed
                } else {
                    BigUint::zero()
                });
            }
        }
    }

    fn is_zero(&mut self) -> bool {
        if let Remaining::Lazy { consumed, .. } = self {
            let bits = consumed.bits() + 2;
            self.resolve(bits);
        }
        matches!(self, Remaining::Finite(n) if n.is_zero())
    }

    fn consume(&mut self, n: &BigUint) {
        match self {
            Remaining::Finite(r) => *r -= n,
            Remaining::Lazy { consumed, .. } => *consumed += n,
        }
    }
}

/// Advances both remainders by their common length. Returns `false` when the
/// comparison cannot be decided (two distinct lazily valued runs whose values
/// are both beyond the default materialization bound).
fn take_common(a: &mut Remaining<'_>, b: &mut Remaining<'_>) -> bool {
    match (&mut *a, &mut *b) {
        (Remaining::Finite(x), Remaining::Finite(y)) => {
            let m = x.clone().min(y.clone());
            *x -= &m;
            *y -= &m;
            true
        }
        (Remaining::Finite(x), Remaining::Lazy { consumed, .. })
        | (Remaining::Lazy { consumed, .. }, Remaining::Finite(x)) => {
            let bits = (&*x + &*consumed).bits() + 2;
            let x = x.clone();
            a.resolve(bits);
            b.resolve(bits);
            if matches!((&*a, &*b), (Remaining::Finite(_), Remaining::Finite(_))) {
                return take_common(a, b);
            }
            a.consume(&x);
            b.consume(&x);
            true
        }
        (
            Remaining::Lazy {
                code: c1,
                consumed: k1,
            },
            Remaining::Lazy {
                code: c2,
                consumed: k2,
            },
        ) => {
            if c1.code_equal(c2) {
                let (ra, rb) = match (*k1).cmp(k2) {
                    Ordering::Equal => (BigUint::zero(), BigUint::zero()),
                    Ordering::Less => (&*k2 - &*k1, BigUint::zero()),
                    Ordering::Greater => (BigUint::zero(), &*k1 - &*k2),
                };
                *a = Remaining::Finite(ra);
                *b = Remaining::Finite(rb);
                return true;
            }
            a.resolve(DEFAULT_BIT_LIMIT);
            b.resolve(DEFAULT_BIT_LIMIT);
            if matches!((&*a, &*b), (Remaining::Finite(_), Remaining::Finite(_))) {
                take_common(a, b)
            } else {
                false
            }
        }
    }
}

enum Head<'a> {
    Single(Item<'a>),
    Run(u64),
}

#[derive(Clone, Copy)]
enum Item<'a> {
    Sym(u64),
    Code(&'a CodeExpr),
}

fn item_equal(a: Item<'_>, b: Item<'_>) -> bool {
    match (a, b) {
        (Item::Sym(x), Item::Sym(y)) => x == y,
        (Item::Code(x), Item::Code(y)) => x.code_equal(y),
        (Item::Sym(s), Item::Code(x)) | (Item::Code(x), Item::Sym(s)) => {
            x.code_equal(&CodeExpr::Symbol(s))
        }
    }
}

struct Cursor<'a> {
    blocks: Vec<Block<'a>>,
    idx: usize,
    rem: Option<Remaining<'a>>,
}

impl<'a> Cursor<'a> {
    fn new(slots: &'a [Slot]) -> Self {
        Cursor {
            blocks: blocks(slots),
            idx: 0,
            rem: None,
        }
    }

    fn skip_empty(&mut self) {
        while let Some(Block::Rep { count, .. }) = self.blocks.get(self.idx) {
            let rem = self.rem.get_or_insert_with(|| Remaining::of(count));
            if rem.is_zero() {
                self.idx += 1;
                self.rem = None;
            } else {
                break;
            }
        }
    }

    fn head(&self) -> Option<Head<'a>> {
        match self.blocks.get(self.idx)? {
            Block::Sym(c) => Some(Head::Single(Item::Sym(*c))),
            Block::Code(x) => Some(Head::Single(Item::Code(x))),
            Block::Rep { sym, .. } => Some(Head::Run(*sym)),
        }
    }

    fn step(&mut self) {
        match self.blocks.get(self.idx) {
            Some(Block::Rep { .. }) => {
                if let Some(rem) = self.rem.as_mut() {
                    rem.consume(&BigUint::one());
                }
            }
            Some(_) => self.idx += 1,
            None => {}
        }
    }
}

fn seq_equal(a: &[Slot], b: &[Slot]) -> bool {
    let mut ca = Cursor::new(a);
    let mut cb = Cursor::new(b);
    loop {
        ca.skip_empty();
        cb.skip_empty();
        match (ca.head(), cb.head()) {
            (None, None) => return true,
            (None, _) | (_, None) => return false,
            (Some(Head::Single(x)), Some(Head::Single(y))) => {
                if !item_equal(x, y) {
                    return false;
                }
            }
            (Some(Head::Single(x)), Some(Head::Run(s)))
            | (Some(Head::Run(s)), Some(Head::Single(x))) => {
                if !item_equal(x, Item::Sym(s)) {
                    return false;
                }
            }
            (Some(Head::Run(s)), Some(Head::Run(t))) => {
                if s != t {
                    return false;
                }
                let (Some(ra), Some(rb)) = (ca.rem.as_mut(), cb.rem.as_mut()) else {
                    unreachable!("skip_empty initializes run remainders");
                };
                if !take_common(ra, rb) {
                    return false;
                }
                continue;
            }
        }
        ca.step();
        cb.step();
    }
}

// ---------------------------------------------------------------------------
// CodeExpr

impl CodeExpr {
    /// `2^c`: the one-symbol sequence.
    pub fn single(c: u64) -> CodeExpr {
        CodeExpr::Seq(vec![Slot::One(CodeExpr::Symbol(c))])
    }

    /// A sequence with one position per element.
    pub fn seq(items: Vec<CodeExpr>) -> CodeExpr {
        CodeExpr::Seq(items.into_iter().map(Slot::One).collect())
    }

    /// A sequence of symbol codes.
    pub fn symbols(codes: &[u64]) -> CodeExpr {
        CodeExpr::Seq(
            codes
                .iter()
                .map(|&c| Slot::One(CodeExpr::Symbol(c)))
                .collect(),
        )
    }

    /// The code of the numeral `n̄`, given the codes of `0` and `′`.
    pub fn numeral(zero: u64, succ: u64, count: SymNat) -> CodeExpr {
        CodeExpr::Seq(vec![Slot::Numeral(NumeralRun { zero, succ, count })])
    }

    pub fn is_sequence(&self) -> bool {
        matches!(self, CodeExpr::Seq(_))
    }

    pub fn slots(&self) -> &[Slot] {
        match self {
            CodeExpr::Seq(s) => s,
            CodeExpr::Symbol(_) => &[],
        }
    }

    /// Equality of the integers the two codes denote.
    pub fn code_equal(&self, other: &CodeExpr) -> bool {
        match (self, other) {
            (CodeExpr::Symbol(a), CodeExpr::Symbol(b)) => a == b,
            (CodeExpr::Seq(a), CodeExpr::Seq(b)) => seq_equal(a, b),
            // the empty sequence and the odd number 1 are the same integer
            (CodeExpr::Seq(s), CodeExpr::Symbol(1)) | (CodeExpr::Symbol(1), CodeExpr::Seq(s)) => {
                let mut c = Cursor::new(s);
                c.skip_empty();
                c.head().is_none()
            }
            _ => false,
        }
    }

    /// Juxtaposition `x * y`: the positions of `self` followed by those of
    /// `other`. An odd operand is not a sequence and contributes no positions.
    pub fn concat(&self, other: &CodeExpr) -> CodeExpr {
        let mut slots = self.slots().to_vec();
        slots.extend_from_slice(other.slots());
        CodeExpr::Seq(slots)
    }

    pub fn concat_all(parts: &[&CodeExpr]) -> CodeExpr {
        CodeExpr::Seq(
            parts
                .iter()
                .flat_map(|p| p.slots().iter().cloned())
                .collect(),
        )
    }

    /// `lh(x)`, the number of positions.
    pub fn lh(&self) -> Result<SymNat, CodeError> {
        let CodeExpr::Seq(slots) = self else {
            return Err(CodeError::NotASequence);
        };
        let mut total = BigUint::zero();
        for b in blocks(slots) {
            match b {
                Block::Sym(_) | Block::Code(_) => total += 1u32,
                Block::Rep { count, .. } => {
                    total += count.to_biguint(64).ok_or(CodeError::SymbolicLength)?
                }
            }
        }
        Ok(SymNat::Concrete(total))
    }

    /// Number of positions when it is concrete and fits a `usize`.
    pub fn len_hint(&self) -> Option<usize> {
        self.lh().ok()?.concrete()?.to_usize()
    }

    /// `(x)ᵢ`, the exponent at position `i`.
    pub fn component(&self, i: &BigUint) -> Result<CodeExpr, CodeError> {
        let CodeExpr::Seq(slots) = self else {
            return Err(CodeError::NotASequence);
        };
        let mut i = i.clone();
        let original = i.clone();
        for b in blocks(slots) {
            match b {
                Block::Sym(c) if i.is_zero() => return Ok(CodeExpr::Symbol(c)),
                Block::Code(x) if i.is_zero() => return Ok(x.clone()),
                Block::Sym(_) | Block::Code(_) => i -= 1u32,
                Block::Rep { sym, count } => match count.to_biguint(i.bits() + 2) {
                    Some(n) if i >= n => i -= n,
                    _ => return Ok(CodeExpr::Symbol(sym)),
                },
            }
        }
        Err(CodeError::IndexOutOfRange {
            index: original,
            len: self
                .lh()
                .ok()
                .and_then(|l| l.concrete().cloned())
                .unwrap_or_default(),
        })
    }

    pub fn component_at(&self, i: usize) -> Result<CodeExpr, CodeError> {
        self.component(&BigUint::from(i))
    }

    /// `log₂` of the denoted integer: exact up to float rounding for codes
    /// without long numeral runs, a lower bound otherwise, `∞` when it does not
    /// fit an `f64`.
    pub fn log2_estimate(&self) -> f64 {
        match self {
            CodeExpr::Symbol(c) => (*c as f64).log2(),
            CodeExpr::Seq(slots) => {
                let mut total = 0.0f64;
                let mut pos = 0usize;
                let lp = |i: usize| (nth_prime(i.min(ESTIMATE_PRIME_CAP)) as f64).log2();
                for b in blocks(slots) {
                    match b {
                        Block::Sym(c) => total += c as f64 * lp(pos),
                        Block::Code(x) => total += exponent_estimate(x) * lp(pos),
                        Block::Rep { sym, count } => {
                            let n = match count {
                                SymNat::Concrete(n) => n.to_f64().unwrap_or(f64::INFINITY),
                                SymNat::CodeValued(c) => exponent_estimate(c),
                            };
                            total += n * sym as f64 * lp(pos);
                            pos = pos.saturating_add(n.min(usize::MAX as f64) as usize);
                            continue;
                        }
                    }
                    pos = pos.saturating_add(1);
                    if !total.is_finite() {
                        break;
                    }
                }
                total
            }
        }
    }

    /// The exact integer when it has at most `bit_limit` bits.
    pub fn materialize(&self, bit_limit: u64) -> Materialized {
        let est = self.log2_estimate();
        let estimated_bits = if est.is_finite() {
            est.ceil() as u64
        } else {
            u64::MAX
        };
        if est > bit_limit as f64 + 1.0 {
            return Materialized::Overflow { estimated_bits };
        }
        match self.exact(bit_limit) {
            Some(v) if v.bits() <= bit_limit => Materialized::Value(v),
            _ => Materialized::Overflow { estimated_bits },
        }
    }

    fn exact(&self, limit: u64) -> Option<BigUint> {
        match self {
            CodeExpr::Symbol(c) => Some(BigUint::from(*c)),
            CodeExpr::Seq(slots) => {
                let mut prod = BigUint::one();
                let mut pos = 0usize;
                let mul = |prod: &mut BigUint, pos: usize, e: &BigUint| -> Option<()> {
                    let e = e.to_u32().filter(|&e| u64::from(e) <= limit)?;
                    *prod *= BigUint::from(nth_prime(pos)).pow(e);
                    (prod.bits() <= limit).then_some(())
                };
                for b in blocks(slots) {
                    match b {
                        Block::Sym(c) => mul(&mut prod, pos, &BigUint::from(c))?,
                        Block::Code(x) => mul(&mut prod, pos, &x.exact(limit)?)?,
                        Block::Rep { sym, count } => {
                            let n = count.to_biguint(limit)?.to_u64().filter(|&n| n <= limit)?;
                            let e = BigUint::from(sym);
                            for j in 0..n as usize {
                                mul(&mut prod, pos + j, &e)?;
                            }
                            pos += n as usize;
                            continue;
                        }
                    }
                    pos += 1;
                }
                Some(prod)
            }
        }
    }

    /// Reads an integer back as a code: odd numbers are symbol codes, even
    /// numbers must be `∏ pᵢ^{eᵢ}` over consecutive primes with every exponent
    /// again a code. Returns `None` for integers that are neither.
    pub fn from_integer(n: &BigUint) -> Option<CodeExpr> {
        if n.is_zero() {
            return None;
        }
        if n.bit(0) {
            return n.to_u64().map(CodeExpr::Symbol);
        }
        let mut rest = n.clone();
        let mut items = Vec::new();
        let mut i = 0usize;
        while !rest.is_one() {
            let e = if i == 0 {
                let tz = rest.trailing_zeros().unwrap_or(0);
                rest >>= tz;
                BigUint::from(tz)
            } else {
                let p = BigUint::from(nth_prime(i));
                let mut e = BigUint::zero();
                loop {
                    let (q, r) = (&rest / &p, &rest % &p);
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    e += 1u32;
                }
                e
            };
            if e.is_zero() {
                return None;
            }
            items.push(CodeExpr::from_integer(&e)?);
            i += 1;
        }
        Some(CodeExpr::seq(items))
    }

    /// Product-of-prime-powers rendering, e.g. `2^3 · 3^9 · 5^17 · 7^5`.
    pub fn factored(&self) -> String {
        match self {
            CodeExpr::Symbol(c) => c.to_string(),
            CodeExpr::Seq(slots) if slots.is_empty() => "1".into(),
            CodeExpr::Seq(slots) => {
                let mut parts = Vec::new();
                let mut pos = 0usize;
                for b in blocks(slots) {
                    let p = nth_prime(pos.min(ESTIMATE_PRIME_CAP));
                    match b {
                        Block::Sym(c) => parts.push(format!("{p}^{c}")),
                        Block::Code(x) => parts.push(format!("{p}^({})", x.factored())),
                        Block::Rep { sym, count } => {
                            match count.to_biguint(64).and_then(|n| n.to_usize()) {
                                Some(n) if n <= 8 => {
                                    for j in 0..n {
                                        parts.push(format!("{}^{sym}", nth_prime(pos + j)));
                                    }
                                    pos += n;
                                }
                                Some(n) => {
                                    parts.push(format!("∏[p_{pos}..p_{}]^{sym}", pos + n - 1));
                                    pos += n;
                                }
                                None => {
                                    parts.push(format!("∏[p_{pos}..]^{sym} ({count} factors)"));
                                    pos = usize::MAX / 2;
                                }
                            }
                            continue;
                        }
                    }
                    pos += 1;
                }
                parts.join(" · ")
            }
        }
    }

    /// Parses the list notation produced by `Display` (`[3, 9, [..], 5]`,
    /// numeral runs as `{zero,succ;count}`), or a decimal integer.
    pub fn parse_notation(text: &str) -> Result<CodeExpr, CodeError> {
        let mut p = NotationParser {
            s: text.as_bytes(),
            i: 0,
        };
        p.ws();
        let code = if p.peek() == Some(b'[') {
            p.seq()?
        } else {
            let n = p.number()?;
            CodeExpr::from_integer(&n).ok_or_else(|| p.err("integer is not a code"))?
        };
        p.ws();
        if p.i != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(code)
    }
}

fn exponent_estimate(x: &CodeExpr) -> f64 {
    let l = x.log2_estimate();
    if l > 1000.0 {
        f64::INFINITY
    } else {
        l.exp2()
    }
}

impl PartialEq for CodeExpr {
    fn eq(&self, other: &Self) -> bool {
        self.code_equal(other)
    }
}

impl Eq for CodeExpr {}

impl fmt::Display for CodeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeExpr::Symbol(c) => write!(f, "{c}"),
            CodeExpr::Seq(slots) => {
                f.write_str("[")?;
                for (i, s) in slots.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    match s {
                        Slot::One(x) => write!(f, "{x}")?,
                        Slot::Numeral(r) => write!(f, "{{{},{};{}}}", r.zero, r.succ, r.count)?,
                    }
                }
                f.write_str("]")
            }
        }
    }
}

struct NotationParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl NotationParser<'_> {
    fn err(&self, msg: &str) -> CodeError {
        CodeError::Notation {
            pos: self.i,
            msg: msg.into(),
        }
    }

    fn ws(&mut self) {
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> Result<(), CodeError> {
        self.ws();
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<BigUint, CodeError> {
        self.ws();
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|d| d.parse::<BigUint>().ok())
            .ok_or_else(|| self.err("expected a number"))
    }

    fn small(&mut self) -> Result<u64, CodeError> {
        self.number()?
            .to_u64()
            .ok_or_else(|| self.err("number too large"))
    }

    fn seq(&mut self) -> Result<CodeExpr, CodeError> {
        self.eat(b'[')?;
        let mut slots = Vec::new();
        self.ws();
        if self.peek() == Some(b']') {
            self.i += 1;
            return Ok(CodeExpr::Seq(slots));
        }
        loop {
            self.ws();
            let slot = match self.peek() {
                Some(b'[') => Slot::One(self.seq()?),
                Some(b'{') => {
                    self.i += 1;
                    let zero = self.small()?;
                    self.eat(b',')?;
                    let succ = self.small()?;
                    self.eat(b';')?;
                    self.ws();
                    let count = if self.peek() == Some(b'#') {
                        self.i += 1;
                        SymNat::from(self.seq()?)
                    } else {
                        SymNat::Concrete(self.number()?)
                    };
                    self.eat(b'}')?;
                    Slot::Numeral(NumeralRun { zero, succ, count })
                }
                _ => {
                    let n = self.number()?;
                    Slot::One(
                        CodeExpr::from_integer(&n)
                            .ok_or_else(|| self.err("exponent is not a code"))?,
                    )
                }
            };
            slots.push(slot);
            self.ws();
            match self.peek() {
                Some(b',') => self.i += 1,
                Some(b']') => {
                    self.i += 1;
                    return Ok(CodeExpr::Seq(slots));
                }
                _ => return Err(self.err("expected ',' or ']'")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn int(x: &CodeExpr) -> BigUint {
        x.materialize(DEFAULT_BIT_LIMIT).value().unwrap()
    }

    #[test]
    fn concat_of_single_symbols() {
        let x = CodeExpr::single(3).concat(&CodeExpr::single(5));
        assert_eq!(int(&x), big(1944));
    }

    #[test]
    fn lh_and_component() {
        let x = CodeExpr::symbols(&[3, 9, 17, 5]);
        assert_eq!(x.lh().unwrap(), SymNat::from(4));
        assert_eq!(x.component_at(2).unwrap(), CodeExpr::Symbol(17));
        assert!(matches!(
            x.component_at(4),
            Err(CodeError::IndexOutOfRange { .. })
        ));
        assert_eq!(CodeExpr::Symbol(3).lh(), Err(CodeError::NotASequence));
    }

    #[test]
    fn materialize_small_codes() {
        assert_eq!(int(&CodeExpr::symbols(&[3])), big(8));
        let expected = big(8) * big(3).pow(9) * big(5).pow(17) * big(7).pow(5);
        assert_eq!(int(&CodeExpr::symbols(&[3, 9, 17, 5])), expected);
        assert!(matches!(
            CodeExpr::symbols(&[3, 9, 17, 5]).materialize(10),
            Materialized::Overflow { .. }
        ));
    }

    #[test]
    fn monus_truncates() {
        let m = |a: u64, b: u64| monus(&SymNat::from(a), &SymNat::from(b)).unwrap();
        assert_eq!(m(5, 2), SymNat::from(3));
        assert_eq!(m(0, 1), SymNat::from(0));
        assert_eq!(m(9, 0), SymNat::from(9));
        let cv = SymNat::from(CodeExpr::single(3));
        assert_eq!(
            monus(&cv, &SymNat::from(1)),
            Err(CodeError::CodeValuedOperand)
        );
    }

    #[test]
    fn numeral_runs_compare_with_explicit_symbols() {
        let explicit = CodeExpr::symbols(&[3, 15, 19, 19, 19, 5]);
        let run = CodeExpr::single(3)
            .concat(&CodeExpr::numeral(15, 19, SymNat::from(3)))
            .concat(&CodeExpr::single(5));
        assert_eq!(explicit, run);
        let shorter = CodeExpr::single(3)
            .concat(&CodeExpr::numeral(15, 19, SymNat::from(2)))
            .concat(&CodeExpr::single(5));
        assert_ne!(explicit, shorter);
        assert_eq!(int(&run), int(&explicit));
    }

    #[test]
    fn lazy_runs() {
        let m = CodeExpr::symbols(&[3, 21, 17, 21, 5]);
        let lazy = CodeExpr::numeral(15, 19, SymNat::from(m.clone()));
        let same = CodeExpr::numeral(15, 19, SymNat::from(m.clone()));
        assert_eq!(lazy, same);
        // the value of m is known, so a concrete count of the same value matches
        let value = int(&m);
        let concrete = CodeExpr::numeral(15, 19, SymNat::Concrete(value.clone()));
        assert_eq!(lazy, concrete);
        let off_by_one = CodeExpr::numeral(15, 19, SymNat::Concrete(value + 1u32));
        assert_ne!(lazy, off_by_one);
        assert_eq!(lazy.component_at(1).unwrap(), CodeExpr::Symbol(19));
        // a numeral of a proof-sized code has no concrete length
        let tower = CodeExpr::seq(vec![m.clone()]);
        let huge = CodeExpr::numeral(15, 19, SymNat::from(tower.clone()));
        assert_eq!(huge.lh(), Err(CodeError::SymbolicLength));
        assert_eq!(huge.component_at(1_000_000).unwrap(), CodeExpr::Symbol(19));
        assert_eq!(huge, CodeExpr::numeral(15, 19, SymNat::from(tower.clone())));
        let other = CodeExpr::seq(vec![CodeExpr::symbols(&[3, 29, 17, 29, 5])]);
        assert_ne!(huge, CodeExpr::numeral(15, 19, SymNat::from(other)));
        assert!(matches!(
            huge.materialize(DEFAULT_BIT_LIMIT),
            Materialized::Overflow { .. }
        ));
        let tail = huge.concat(&CodeExpr::single(5));
        let tail2 = CodeExpr::numeral(15, 19, SymNat::from(tower)).concat(&CodeExpr::single(5));
        assert_eq!(tail, tail2);
        assert_ne!(tail, huge);
    }

    #[test]
    fn empty_sequence_is_one() {
        assert_eq!(CodeExpr::Seq(vec![]), CodeExpr::Symbol(1));
        assert_eq!(int(&CodeExpr::Seq(vec![])), big(1));
    }

    #[test]
    fn from_integer_reads_codes() {
        assert_eq!(
            CodeExpr::from_integer(&big(8)),
            Some(CodeExpr::symbols(&[3]))
        );
        assert_eq!(
            CodeExpr::from_integer(&big(4)),
            Some(CodeExpr::seq(vec![CodeExpr::symbols(&[1])]))
        );
        assert_eq!(CodeExpr::from_integer(&big(10)), None);
        assert_eq!(CodeExpr::from_integer(&big(0)), None);
        assert_eq!(CodeExpr::from_integer(&big(15)), Some(CodeExpr::Symbol(15)));
        let x = CodeExpr::symbols(&[3, 9, 17, 5]);
        assert_eq!(CodeExpr::from_integer(&int(&x)), Some(x));
    }

    #[test]
    fn notation_roundtrip() {
        let inner = CodeExpr::symbols(&[3, 15, 17, 15, 5]);
        let x = CodeExpr::seq(vec![inner.clone(), inner]);
        let text = x.to_string();
        assert_eq!(CodeExpr::parse_notation(&text).unwrap(), x);
        let run = CodeExpr::numeral(15, 19, SymNat::from(x.clone()));
        assert_eq!(CodeExpr::parse_notation(&run.to_string()).unwrap(), run);
        assert_eq!(
            CodeExpr::parse_notation("1944").unwrap(),
            CodeExpr::symbols(&[3, 5])
        );
        assert!(CodeExpr::parse_notation("[3, 5").is_err());
        assert!(CodeExpr::parse_notation("10").is_err());
    }

    #[test]
    fn factored_form() {
        assert_eq!(
            CodeExpr::symbols(&[3, 9, 17, 5]).factored(),
            "2^3 · 3^9 · 5^17 · 7^5"
        );
        let proof = CodeExpr::seq(vec![CodeExpr::symbols(&[1])]);
        assert_eq!(proof.factored(), "2^(2^1)");
    }
}
