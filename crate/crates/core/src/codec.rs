//! Encoding expressions and proofs as [`CodeExpr`]s, and decoding them back.

use num_bigint::BigUint;
use thiserror::Error;

use crate::code::{CodeExpr, Slot, SymNat};
use crate::syntax::{
    Expression, Formula, LazyNumeral, Parser, SyntaxError, Term, Token, NUMERAL_EXPAND_LIMIT,
};
use crate::table::{Symbol, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("symbol '{0}' has no code in the symbol table")]
    UnknownSymbol(Symbol),
    #[error("not a sequence code")]
    NotASequence,
    #[error("exponent {code} at position {pos} is not a symbol code")]
    NotASymbol { pos: usize, code: u64 },
    #[error("position {pos} holds a sequence code where a symbol was expected")]
    NestedSequence { pos: usize },
    #[error("position {pos} holds a symbol code where a formula code was expected")]
    LineNotSequence { pos: usize },
    #[error("line {line} of the proof code does not decode: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<CodecError>,
    },
    #[error("the numeral run at position {pos} uses codes that are not 0 and successor")]
    BadNumeral { pos: usize },
    #[error("empty sequence")]
    Empty,
    #[error("symbol sequence does not parse: {0}")]
    Syntax(#[from] SyntaxError),
}

/// What a code is expected to denote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Formula,
    Term,
    /// A formula, or failing that a term.
    Expression,
    /// A sequence of formulas.
    Proof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Formula(Formula),
    Term(Term),
    /// The formula sequence of a proof code. Justifications are not part of
    /// the code; see `proof::Proof::from_formulas`.
    Proof(Vec<Formula>),
}

fn encode_tokens(tokens: &[Token], table: &SymbolTable) -> Result<CodeExpr, CodecError> {
    let code = |s: Symbol| table.code(s).ok_or(CodecError::UnknownSymbol(s));
    let mut slots = Vec::with_capacity(tokens.len());
    for tok in tokens {
        slots.push(match tok {
            Token::Sym(s) => Slot::One(CodeExpr::Symbol(code(*s)?)),
            Token::Numeral(n) => Slot::Numeral(crate::code::NumeralRun {
                zero: code(Symbol::Zero)?,
                succ: code(Symbol::Succ)?,
                count: n.value().clone(),
            }),
        });
    }
    Ok(CodeExpr::Seq(slots))
}

pub fn encode_formula(f: &Formula, table: &SymbolTable) -> Result<CodeExpr, CodecError> {
    encode_tokens(&f.tokens(), table)
}

pub fn encode_term(t: &Term, table: &SymbolTable) -> Result<CodeExpr, CodecError> {
    encode_tokens(&t.tokens(), table)
}

pub fn encode_expression(e: &Expression, table: &SymbolTable) -> Result<CodeExpr, CodecError> {
    encode_tokens(&e.tokens(), table)
}

/// The code of a sequence of formulas: `2^{⌜f₀⌝} · 3^{⌜f₁⌝} · …`.
pub fn encode_formulas<'a, I>(lines: I, table: &SymbolTable) -> Result<CodeExpr, CodecError>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let items = lines
        .into_iter()
        .map(|f| encode_formula(f, table))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CodeExpr::seq(items))
}

/// Reads a sequence code as primitive symbols.
pub fn tokens(x: &CodeExpr, table: &SymbolTable) -> Result<Vec<Token>, CodecError> {
    let CodeExpr::Seq(slots) = x else {
        return Err(CodecError::NotASequence);
    };
    let mut out = Vec::with_capacity(slots.len());
    let mut pos = 0usize;
    for slot in slots {
        match slot {
            Slot::One(CodeExpr::Symbol(c)) => {
                let sym = table
                    .symbol(*c)
                    .ok_or(CodecError::NotASymbol { pos, code: *c })?;
                out.push(Token::Sym(sym));
                pos += 1;
            }
            Slot::One(CodeExpr::Seq(inner)) => {
                // the empty sequence is the integer 1, which no table assigns
                if inner.is_empty() {
                    return Err(CodecError::NotASymbol { pos, code: 1 });
                }
                return Err(CodecError::NestedSequence { pos });
            }
            Slot::Numeral(run) => {
                if table.symbol(run.zero) != Some(Symbol::Zero)
                    || table.symbol(run.succ) != Some(Symbol::Succ)
                {
                    return Err(CodecError::BadNumeral { pos });
                }
                match run.count.small_value(NUMERAL_EXPAND_LIMIT) {
                    Some(k) => {
                        out.push(Token::Sym(Symbol::Zero));
                        out.extend(std::iter::repeat_n(Token::Sym(Symbol::Succ), k as usize));
                        pos += 1 + k as usize;
                    }
                    None => {
                        out.push(Token::Numeral(LazyNumeral::new_unchecked(
                            run.count.clone(),
                        )));
                        pos = pos.saturating_add(1 + NUMERAL_EXPAND_LIMIT as usize);
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(CodecError::Empty);
    }
    Ok(out)
}

pub fn decode_formula(x: &CodeExpr, table: &SymbolTable) -> Result<Formula, CodecError> {
    let toks = tokens(x, table)?;
    let mut p = Parser::new(&toks);
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn decode_term(x: &CodeExpr, table: &SymbolTable) -> Result<Term, CodecError> {
    let toks = tokens(x, table)?;
    let mut p = Parser::new(&toks);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn decode_formulas(x: &CodeExpr, table: &SymbolTable) -> Result<Vec<Formula>, CodecError> {
    let CodeExpr::Seq(slots) = x else {
        return Err(CodecError::NotASequence);
    };
    if slots.is_empty() {
        return Err(CodecError::Empty);
    }
    slots
        .iter()
        .enumerate()
        .map(|(pos, slot)| match slot {
            Slot::One(line @ CodeExpr::Seq(_)) => {
                decode_formula(line, table).map_err(|e| CodecError::Line {
                    line: pos,
                    source: Box::new(e),
                })
            }
            _ => Err(CodecError::LineNotSequence { pos }),
        })
        .collect()
}

pub fn decode(
    x: &CodeExpr,
    category: Category,
    table: &SymbolTable,
) -> Result<Decoded, CodecError> {
    match category {
        Category::Formula => decode_formula(x, table).map(Decoded::Formula),
        Category::Term => decode_term(x, table).map(Decoded::Term),
        Category::Expression => match decode_formula(x, table) {
            Ok(f) => Ok(Decoded::Formula(f)),
            Err(fe) => decode_term(x, table).map(Decoded::Term).map_err(|_| fe),
        },
        Category::Proof => decode_formulas(x, table).map(Decoded::Proof),
    }
}

/// Decodes an integer, reading it as a code first.
pub fn decode_integer(
    n: &BigUint,
    category: Category,
    table: &SymbolTable,
) -> Result<Decoded, CodecError> {
    let x = CodeExpr::from_integer(n).ok_or(CodecError::NotASequence)?;
    decode(&x, category, table)
}

/// `2^c`, the code of the one-symbol expression with symbol code `c`.
pub fn symbol_expr(sym: Symbol, table: &SymbolTable) -> Result<CodeExpr, CodecError> {
    Ok(CodeExpr::single(
        table.code(sym).ok_or(CodecError::UnknownSymbol(sym))?,
    ))
}

/// The code of `n̄` as a sequence with a single numeral run.
pub fn numeral_code(n: SymNat, table: &SymbolTable) -> Result<CodeExpr, CodecError> {
    let zero = table
        .code(Symbol::Zero)
        .ok_or(CodecError::UnknownSymbol(Symbol::Zero))?;
    let succ = table
        .code(Symbol::Succ)
        .ok_or(CodecError::UnknownSymbol(Symbol::Succ))?;
    Ok(CodeExpr::numeral(zero, succ, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::DEFAULT_BIT_LIMIT;
    use crate::syntax::{numeral, numeral_u64, parse_formula};

    fn std_table() -> SymbolTable {
        SymbolTable::standard()
    }

    #[test]
    fn toy_atom_with_code_17() {
        let t = SymbolTable::toy_with_atom(17).unwrap();
        let a = encode_formula(&Formula::Atom, &t).unwrap();
        assert_eq!(a, CodeExpr::symbols(&[17]));
        assert_eq!(
            a.materialize(64).value().unwrap(),
            BigUint::from(1u32) << 17
        );
        let na = encode_formula(&Formula::not(Formula::Atom), &t).unwrap();
        assert_eq!(na, CodeExpr::symbols(&[3, 9, 17, 5]));
        assert_eq!(
            decode_formula(&CodeExpr::symbols(&[3, 9, 17, 5]), &t).unwrap(),
            Formula::not(Formula::Atom)
        );
    }

    #[test]
    fn equation_layout() {
        let f = parse_formula("(0 = 0)").unwrap();
        assert_eq!(
            encode_formula(&f, &std_table()).unwrap(),
            CodeExpr::symbols(&[3, 15, 17, 15, 5])
        );
    }

    #[test]
    fn proof_codes() {
        let t = std_table();
        let a = parse_formula("(0 = 0)").unwrap();
        let b = parse_formula("(x1 = x1)").unwrap();
        let one = encode_formulas([&a], &t).unwrap();
        assert_eq!(one, CodeExpr::seq(vec![encode_formula(&a, &t).unwrap()]));
        let two = encode_formulas([&a, &b], &t).unwrap();
        assert_eq!(two.lh().unwrap(), SymNat::from(2));
        assert_eq!(
            decode(&one, Category::Proof, &t).unwrap(),
            Decoded::Proof(vec![a.clone()])
        );
        assert_eq!(decode_formulas(&two, &t).unwrap(), vec![a, b]);
    }

    #[test]
    fn decode_rejections() {
        let t = std_table();
        assert!(decode_integer(&BigUint::from(4u32), Category::Formula, &t).is_err());
        assert!(decode_integer(&BigUint::from(4u32), Category::Proof, &t).is_err());
        assert!(matches!(
            decode_formula(&CodeExpr::symbols(&[3]), &t),
            Err(CodecError::Syntax(_))
        ));
        assert!(matches!(
            decode_formula(&CodeExpr::symbols(&[31]), &t),
            Err(CodecError::NotASymbol { code: 31, .. })
        ));
        assert_eq!(
            decode_formula(&CodeExpr::Symbol(3), &t),
            Err(CodecError::NotASequence)
        );
    }

    #[test]
    fn lazy_numerals_roundtrip() {
        let t = std_table();
        let m = encode_formula(&parse_formula("(x1 = x1)").unwrap(), &t).unwrap();
        let f = Formula::eq(numeral(&SymNat::from(m.clone())), Term::Zero);
        let code = encode_formula(&f, &t).unwrap();
        assert!(matches!(
            code.materialize(DEFAULT_BIT_LIMIT),
            crate::code::Materialized::Overflow { .. }
        ));
        assert_eq!(decode_formula(&code, &t).unwrap(), f);
        // small numerals expand to explicit symbols on either side
        let g = Formula::eq(numeral_u64(3), Term::Zero);
        let run = CodeExpr::symbols(&[3])
            .concat(&numeral_code(SymNat::from(3), &t).unwrap())
            .concat(&CodeExpr::symbols(&[17, 15, 5]));
        assert_eq!(encode_formula(&g, &t).unwrap(), run);
        assert_eq!(decode_formula(&run, &t).unwrap(), g);
    }
}
