//! JSON derivation files and the corpus manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::syntax::parse;

use super::{AxiomSchema, Derivation, Justification, Line, ProofError, TheoremDb};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationFile {
    pub name: String,
    pub lines: Vec<LineFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineFile {
    pub formula: String,
    pub just: JustFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum JustFile {
    Taut,
    Axiom {
        axiom: String,
    },
    AxiomInst {
        axiom: String,
        map: BTreeMap<String, String>,
    },
    Mp {
        premise: usize,
        implication: usize,
    },
    Necu {
        line: usize,
    },
    Sub {
        line: usize,
        letter: String,
        with: String,
    },
    Theorem {
        name: String,
    },
}

impl DerivationFile {
    pub fn into_derivation(self) -> Result<Derivation, ProofError> {
        let mut lines = Vec::with_capacity(self.lines.len());
        for (idx, l) in self.lines.into_iter().enumerate() {
            let n = idx + 1;
            let formula = |text: &str| {
                parse(text).map_err(|source| ProofError::Formula { line: n, source })
            };
            let schema = |name: &str| {
                name.parse::<AxiomSchema>()
                    .map_err(|_| ProofError::UnknownSchemaAt { line: n, name: name.to_string() })
            };
            let just = match l.just {
                JustFile::Taut => Justification::Taut,
                JustFile::Axiom { axiom } => Justification::Axiom(schema(&axiom)?),
                JustFile::AxiomInst { axiom, map } => {
                    let map = map
                        .iter()
                        .map(|(k, v)| Ok((k.clone(), formula(v)?)))
                        .collect::<Result<_, ProofError>>()?;
                    Justification::AxiomInst(schema(&axiom)?, map)
                }
                JustFile::Mp { premise, implication } => Justification::Mp(premise, implication),
                JustFile::Necu { line } => Justification::NecU(line),
                JustFile::Sub { line, letter, with } => Justification::Sub(line, letter, formula(&with)?),
                JustFile::Theorem { name } => Justification::Theorem(name),
            };
            lines.push(Line {
                formula: formula(&l.formula)?,
                just,
            });
        }
        Ok(Derivation {
            name: self.name,
            lines,
        })
    }

    pub fn from_derivation(d: &Derivation) -> DerivationFile {
        let lines = d
            .lines
            .iter()
            .map(|l| LineFile {
                formula: l.formula.render(),
                just: match &l.just {
                    Justification::Taut => JustFile::Taut,
                    Justification::Axiom(s) => JustFile::Axiom { axiom: s.name().to_string() },
                    Justification::AxiomInst(s, map) => JustFile::AxiomInst {
                        axiom: s.name().to_string(),
                        map: map.iter().map(|(k, v)| (k.clone(), v.render())).collect(),
                    },
                    Justification::Mp(i, j) => JustFile::Mp { premise: *i, implication: *j },
                    Justification::NecU(i) => JustFile::Necu { line: *i },
                    Justification::Sub(i, x, psi) => JustFile::Sub {
                        line: *i,
                        letter: x.clone(),
                        with: psi.render(),
                    },
                    Justification::Theorem(name) => JustFile::Theorem { name: name.clone() },
                },
            })
            .collect();
        DerivationFile {
            name: d.name.clone(),
            lines,
        }
    }
}

impl Derivation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DerivationFile::from_derivation(self)).expect("derivations serialize")
    }
}

/// Parses a derivation file's contents.
pub fn load_derivation(bytes: &[u8]) -> Result<Derivation, ProofError> {
    let file: DerivationFile = serde_json::from_slice(bytes).map_err(|e| ProofError::Json(e.to_string()))?;
    file.into_derivation()
}

pub fn read_derivation(path: &Path) -> Result<Derivation, ProofError> {
    let bytes = std::fs::read(path).map_err(|e| ProofError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    load_derivation(&bytes).map_err(|e| e.in_file(path))
}

/// Files listed by a manifest, one per line, relative to the manifest's
/// directory. Blank lines and `#` comments are skipped.
pub fn read_manifest(path: &Path) -> Result<Vec<PathBuf>, ProofError> {
    let text = std::fs::read_to_string(path).map_err(|e| ProofError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let dir = path.parent().unwrap_or(Path::new("."));
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| dir.join(l))
        .collect())
}

/// Checks every derivation of a manifest in order, registering each.
pub fn load_corpus(manifest: &Path) -> Result<TheoremDb, ProofError> {
    let mut db = TheoremDb::new();
    for path in read_manifest(manifest)? {
        let d = read_derivation(&path)?;
        db.admit(&d).map_err(|error| ProofError::Rejected {
            path: path.clone(),
            error,
        })?;
    }
    Ok(db)
}
