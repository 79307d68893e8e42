//! The Hilbert system: axiom schemas, a truth-table kernel for TAUT lines,
//! the derivation checker and the theorem database.

mod derivation;
mod file;
mod schema;
mod taut;

use std::path::{Path, PathBuf};

pub use derivation::{check_derivation, CheckError, Derivation, Justification, Line, Reason, TheoremDb};
pub use file::{
    load_corpus, load_derivation, read_derivation, read_manifest, DerivationFile, JustFile, LineFile,
};
pub use schema::AxiomSchema;
pub use taut::is_tautology;

use crate::syntax::SyntaxError;

/// Errors reading schemas and derivation files. A derivation that loads but
/// fails to check is reported as a [`CheckError`] instead.
#[derive(Debug, thiserror::Error)]
pub enum ProofError {
    #[error("unknown axiom schema {0:?}")]
    UnknownSchema(String),
    #[error("line {line}: unknown axiom schema {name:?}")]
    UnknownSchemaAt { line: usize, name: String },
    #[error("letter {letter:?} does not occur in {schema}")]
    ForeignLetter { schema: String, letter: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: SyntaxError },
    #[error("malformed derivation file: {0}")]
    Json(String),
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("{}: {inner}", path.display())]
    InFile { path: PathBuf, inner: Box<ProofError> },
    #[error("{}: rejected: {error}", path.display())]
    Rejected { path: PathBuf, error: CheckError },
}

impl ProofError {
    fn in_file(self, path: &Path) -> ProofError {
        ProofError::InFile {
            path: path.to_path_buf(),
            inner: Box::new(self),
        }
    }
}
