//! Settings shared by every command.

use std::path::PathBuf;

use thiserror::Error;

use crate::axioms::Mode;
use crate::code::DEFAULT_BIT_LIMIT;
use crate::predicates::{Arithmetic, PredicateError};
use crate::table::{SymbolTable, TableError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("--bits must be positive")]
    ZeroBits,
    #[error("reading table {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("table {path}: {source}")]
    Table {
        path: PathBuf,
        #[source]
        source: TableError,
    },
    #[error(transparent)]
    Predicate(#[from] PredicateError),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    /// A table file; without one, PA and PF use the standard table and TOY
    /// the toy table.
    pub table: Option<PathBuf>,
    pub bits: u64,
    pub budget: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Pa,
            table: None,
            bits: DEFAULT_BIT_LIMIT,
            budget: 10_000,
            seed: 0,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn load_table(&self) -> Result<SymbolTable, ConfigError> {
        let Some(path) = &self.table else {
            return Ok(match self.mode {
                Mode::Toy => SymbolTable::toy(),
                Mode::Pa | Mode::Pf => SymbolTable::standard(),
            });
        };
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.clone(),
            source,
        })?;
        SymbolTable::parse_config(&text).map_err(|source| ConfigError::Table {
            path: path.clone(),
            source,
        })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.arithmetic().map(|_| ())
    }

    /// The table checked against the mode: TOY needs a toy table, PA and PF
    /// a table with variables and the arithmetic symbols.
    pub fn arithmetic(&self) -> Result<Arithmetic, ConfigError> {
        if self.bits == 0 {
            return Err(ConfigError::ZeroBits);
        }
        Ok(Arithmetic::new(self.load_table()?, self.mode)?)
    }
}
