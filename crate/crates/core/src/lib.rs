//! Gödel numbering for first-order arithmetic, the proof and refutability
//! predicates on Gödel numbers, a Hilbert-style proof checker, the diagonal
//! construction, and a laboratory that evaluates claims about them on
//! concrete numbers.

pub mod axioms;
pub mod code;
pub mod codec;
pub mod config;
pub mod corpus;
pub mod diagonal;
pub mod lab;
pub mod predicates;
pub mod primes;
pub mod proof;
pub mod syntax;
pub mod table;

pub use axioms::Mode;
pub use code::{CodeExpr, Materialized, SymNat};
pub use config::RunConfig;
pub use predicates::{Arithmetic, CharValue, PredicateId};
pub use syntax::{Formula, Sentence, Term};
pub use table::SymbolTable;
