//! Primitive symbols and their odd codes.
//!
//! Five codes are fixed because the modus ponens, negation and generalization
//! code equations spell them out: `(` 3, `)` 5, `¬` 9, `⇒` 11, `∀` 13. Every
//! other assignment is configurable as long as codes stay odd and distinct.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::syntax::VarIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    LParen,
    RParen,
    Comma,
    Not,
    Implies,
    ForAll,
    Zero,
    Equals,
    Succ,
    Plus,
    Times,
    Sb,
    Atom,
    Var(VarIndex),
}

impl Symbol {
    /// Config-file spelling. Variables are configured as a family (`x`).
    pub fn name(&self) -> String {
        match self {
            Symbol::LParen => "(".into(),
            Symbol::RParen => ")".into(),
            Symbol::Comma => ",".into(),
            Symbol::Not => "~".into(),
            Symbol::Implies => "->".into(),
            Symbol::ForAll => "all".into(),
            Symbol::Zero => "0".into(),
            Symbol::Equals => "=".into(),
            Symbol::Succ => "'".into(),
            Symbol::Plus => "+".into(),
            Symbol::Times => ".".into(),
            Symbol::Sb => "sb".into(),
            Symbol::Atom => "A".into(),
            Symbol::Var(k) => format!("x{k}"),
        }
    }

    fn from_name(s: &str) -> Option<Symbol> {
        Some(match s {
            "(" => Symbol::LParen,
            ")" => Symbol::RParen,
            "," => Symbol::Comma,
            "~" | "¬" => Symbol::Not,
            "->" | "⇒" => Symbol::Implies,
            "all" | "∀" => Symbol::ForAll,
            "0" => Symbol::Zero,
            "=" => Symbol::Equals,
            "'" | "′" => Symbol::Succ,
            "+" => Symbol::Plus,
            "." | "·" => Symbol::Times,
            "sb" => Symbol::Sb,
            "A" => Symbol::Atom,
            _ => return None,
        })
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Codes that may not be reassigned.
pub const LOCKED: [(Symbol, u64); 5] = [
    (Symbol::LParen, 3),
    (Symbol::RParen, 5),
    (Symbol::Not, 9),
    (Symbol::Implies, 11),
    (Symbol::ForAll, 13),
];

/// Distance between consecutive variable codes; a multiple of 2 keeps them odd.
pub const VAR_STRIDE: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("code {code} for '{symbol}' is not odd")]
    EvenCode { symbol: String, code: u64 },
    #[error("code {code} is assigned to both '{first}' and '{second}'")]
    Duplicate {
        code: u64,
        first: String,
        second: String,
    },
    #[error("'{symbol}' must have code {expected}")]
    Locked { symbol: String, expected: u64 },
}

/// Assignment of odd codes to primitive symbols. Variables `xk` get
/// `var_base + 8k` when a variable family is configured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    codes: BTreeMap<Symbol, u64>,
    var_base: Option<u64>,
    reverse: HashMap<u64, Symbol>,
}

impl SymbolTable {
    /// The full table used for PA and PF.
    pub fn standard() -> SymbolTable {
        use Symbol::*;
        let codes = [
            (LParen, 3),
            (RParen, 5),
            (Comma, 7),
            (Not, 9),
            (Implies, 11),
            (ForAll, 13),
            (Zero, 15),
            (Equals, 17),
            (Succ, 19),
            (Plus, 23),
            (Times, 25),
            (Sb, 27),
        ];
        SymbolTable::build(codes.into_iter().collect(), Some(13)).expect("standard table is valid")
    }

    /// The toy micro-table: the five locked symbols plus the atom `A` with
    /// code 1, so that `⌜A⌝ = 2` and the one-line proof `A` has number 4.
    pub fn toy() -> SymbolTable {
        SymbolTable::toy_with_atom(1).expect("toy table is valid")
    }

    pub fn toy_with_atom(atom_code: u64) -> Result<SymbolTable, TableError> {
        let mut codes: BTreeMap<Symbol, u64> = LOCKED.into_iter().collect();
        codes.insert(Symbol::Atom, atom_code);
        SymbolTable::build(codes, None)
    }

    fn build(codes: BTreeMap<Symbol, u64>, var_base: Option<u64>) -> Result<Self, TableError> {
        for (sym, expected) in LOCKED {
            if codes.get(&sym) != Some(&expected) {
                return Err(TableError::Locked {
                    symbol: sym.name(),
                    expected,
                });
            }
        }
        let mut reverse: HashMap<u64, Symbol> = HashMap::new();
        for (&sym, &code) in &codes {
            if code % 2 == 0 {
                return Err(TableError::EvenCode {
                    symbol: sym.name(),
                    code,
                });
            }
            if let Some(prev) = reverse.insert(code, sym) {
                return Err(TableError::Duplicate {
                    code,
                    first: prev.name(),
                    second: sym.name(),
                });
            }
        }
        if let Some(base) = var_base {
            if base % 2 == 0 {
                return Err(TableError::EvenCode {
                    symbol: "x".into(),
                    code: base,
                });
            }
            for (&code, sym) in &reverse {
                if code > base && (code - base).is_multiple_of(VAR_STRIDE) {
                    return Err(TableError::Duplicate {
                        code,
                        first: sym.name(),
                        second: format!("x{}", (code - base) / VAR_STRIDE),
                    });
                }
            }
        }
        Ok(SymbolTable {
            codes,
            var_base,
            reverse,
        })
    }

    /// Reads `<symbol> <odd-code>` lines; `#` starts a comment. The variable
    /// family is configured with `x <base>`.
    pub fn parse_config(text: &str) -> Result<SymbolTable, TableError> {
        let mut codes = BTreeMap::new();
        let mut var_base = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let parts: Vec<&str> = content.split_whitespace().collect();
            let [name, code] = parts[..] else {
                return Err(TableError::Syntax {
                    line,
                    msg: format!("expected '<symbol> <code>', got {content:?}"),
                });
            };
            let code: u64 = code.parse().map_err(|_| TableError::Syntax {
                line,
                msg: format!("invalid code {code:?}"),
            })?;
            if name == "x" {
                var_base = Some(code);
                continue;
            }
            let sym = Symbol::from_name(name).ok_or_else(|| TableError::Syntax {
                line,
                msg: format!("unknown symbol {name:?}"),
            })?;
            if codes.insert(sym, code).is_some() {
                return Err(TableError::Syntax {
                    line,
                    msg: format!("symbol {name:?} listed twice"),
                });
            }
        }
        SymbolTable::build(codes, var_base)
    }

    pub fn to_config(&self) -> String {
        let mut out = String::new();
        for (sym, code) in &self.codes {
            out.push_str(&format!("{} {}\n", sym.name(), code));
        }
        if let Some(base) = self.var_base {
            out.push_str(&format!("x {base}\n"));
        }
        out
    }

    pub fn code(&self, sym: Symbol) -> Option<u64> {
        match sym {
            Symbol::Var(k) if k >= 1 => self.var_base.map(|b| b + VAR_STRIDE * k as u64),
            Symbol::Var(_) => None,
            other => self.codes.get(&other).copied(),
        }
    }

    pub fn symbol(&self, code: u64) -> Option<Symbol> {
        if let Some(sym) = self.reverse.get(&code) {
            return Some(*sym);
        }
        let base = self.var_base?;
        if code > base && (code - base).is_multiple_of(VAR_STRIDE) {
            VarIndex::try_from((code - base) / VAR_STRIDE)
                .ok()
                .map(Symbol::Var)
        } else {
            None
        }
    }

    pub fn contains_code(&self, code: u64) -> bool {
        self.symbol(code).is_some()
    }

    pub fn is_var_code(&self, code: u64) -> bool {
        matches!(self.symbol(code), Some(Symbol::Var(_)))
    }

    pub fn has_variables(&self) -> bool {
        self.var_base.is_some()
    }

    pub fn has(&self, sym: Symbol) -> bool {
        self.code(sym).is_some()
    }
}

impl Default for SymbolTable {
    fn default() -> Self {
        SymbolTable::standard()
    }
}
