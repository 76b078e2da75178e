//! The bundled proof corpus (`corpus/*.paproof`), valid in PA mode.

use std::sync::OnceLock;

use crate::proof::{load_proof_script, Proof};
use crate::syntax::Formula;

mod files {
    include!(concat!(env!("OUT_DIR"), "/corpus_files.rs"));
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub proof: Proof,
}

impl CorpusEntry {
    /// `α` when the proof ends in `(~ α)`.
    pub fn refuted(&self) -> Option<&Formula> {
        match self.proof.last_formula() {
            Formula::Not(a) => Some(a),
            _ => None,
        }
    }
}

pub fn corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        files::FILES
            .iter()
            .map(|&(name, source)| CorpusEntry {
                name,
                source,
                proof: load_proof_script(source)
                    .unwrap_or_else(|e| panic!("corpus file {name}.paproof: {e}")),
            })
            .collect()
    })
}

pub fn get(name: &str) -> Option<&'static CorpusEntry> {
    corpus().iter().find(|e| e.name == name)
}

/// Corpus proofs whose last line is a negation.
pub fn refutations() -> impl Iterator<Item = &'static CorpusEntry> {
    corpus().iter().filter(|e| e.refuted().is_some())
}
