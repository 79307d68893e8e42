use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{is_identifier, Formula};

use super::{is_tautology, AxiomSchema};

/// How a proof line is obtained. Line references are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Taut,
    Axiom(AxiomSchema),
    AxiomInst(AxiomSchema, BTreeMap<String, Formula>),
    /// `Mp(i, j)`: line `j` is `line i -> current`.
    Mp(usize, usize),
    /// `NecU(i)`: current is `U(line i)`.
    NecU(usize),
    /// `Sub(i, x, psi)`: current is line `i` with `x` replaced by `psi`.
    Sub(usize, String, Formula),
    Theorem(String),
}

impl Justification {
    /// The line references, in field order.
    pub fn references(&self) -> Vec<usize> {
        match self {
            Justification::Mp(i, j) => vec![*i, *j],
            Justification::NecU(i) | Justification::Sub(i, _, _) => vec![*i],
            _ => Vec::new(),
        }
    }

    /// The same justification with its line references replaced in order.
    pub fn with_references(&self, refs: &[usize]) -> Justification {
        match self {
            Justification::Mp(..) => Justification::Mp(refs[0], refs[1]),
            Justification::NecU(_) => Justification::NecU(refs[0]),
            Justification::Sub(_, x, psi) => Justification::Sub(refs[0], x.clone(), psi.clone()),
            other => other.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub name: String,
    pub lines: Vec<Line>,
}

impl Derivation {
    /// The proved formula: the last line.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

/// Machine-readable cause of a rejected line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    BadMpShape,
    NotATautology,
    SchemaMismatch,
    UnknownTheorem,
    ForwardReference,
    BadNecuShape,
    BadSubResult,
    BadLetter,
    TheoremMismatch,
    EmptyDerivation,
    DuplicateTheorem,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::BadMpShape => "bad-mp-shape",
            Reason::NotATautology => "not-a-tautology",
            Reason::SchemaMismatch => "schema-mismatch",
            Reason::UnknownTheorem => "unknown-theorem",
            Reason::ForwardReference => "forward-reference",
            Reason::BadNecuShape => "bad-necu-shape",
            Reason::BadSubResult => "bad-sub-result",
            Reason::BadLetter => "bad-letter",
            Reason::TheoremMismatch => "theorem-mismatch",
            Reason::EmptyDerivation => "empty-derivation",
            Reason::DuplicateTheorem => "duplicate-theorem",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The first failing line (1-based; 0 when no line is to blame).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}: {detail}")]
pub struct CheckError {
    pub line: usize,
    pub reason: Reason,
    pub detail: String,
}

/// Theorems proved by previously checked derivations, by name.
#[derive(Debug, Clone, Default)]
pub struct TheoremDb {
    theorems: BTreeMap<String, Formula>,
}

impl TheoremDb {
    pub fn new() -> Self {
        TheoremDb::default()
    }

    pub fn get(&self, name: &str) -> Option<&Formula> {
        self.theorems.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.theorems.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.theorems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theorems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.theorems.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Checks `d` and, if it passes, registers its conclusion under `d.name`.
    /// This is the only way to add a theorem.
    pub fn admit(&mut self, d: &Derivation) -> Result<&Formula, CheckError> {
        if self.contains(&d.name) {
            return Err(CheckError {
                line: 0,
                reason: Reason::DuplicateTheorem,
                detail: format!("a theorem named {} is already registered", d.name),
            });
        }
        check_derivation(d, self)?;
        let conclusion = d.conclusion().expect("checked derivations are nonempty").clone();
        Ok(self.theorems.entry(d.name.clone()).or_insert(conclusion))
    }
}

/// Validates every line of `d` in order, stopping at the first failure.
pub fn check_derivation(d: &Derivation, db: &TheoremDb) -> Result<(), CheckError> {
    if d.lines.is_empty() {
        return Err(CheckError {
            line: 0,
            reason: Reason::EmptyDerivation,
            detail: "a derivation needs at least one line".to_string(),
        });
    }
    for (idx, line) in d.lines.iter().enumerate() {
        check_line(&d.lines[..idx], line, db).map_err(|(reason, detail)| CheckError {
            line: idx + 1,
            reason,
            detail,
        })?;
    }
    Ok(())
}

fn check_line(earlier: &[Line], line: &Line, db: &TheoremDb) -> Result<(), (Reason, String)> {
    let current = earlier.len() + 1;
    for r in line.just.references() {
        if r == 0 || r > earlier.len() {
            return Err((
                Reason::ForwardReference,
                format!("line {current} may only cite lines 1..{}, not {r}", earlier.len()),
            ));
        }
    }
    let at = |i: usize| &earlier[i - 1].formula;
    let f = &line.formula;
    match &line.just {
        Justification::Taut => {
            if !is_tautology(f) {
                return Err((Reason::NotATautology, f.render()));
            }
        }
        Justification::Axiom(schema) => {
            if f != schema.template() {
                return Err((
                    Reason::SchemaMismatch,
                    format!("{} is not {}", f.render(), schema.template().render()),
                ));
            }
        }
        Justification::AxiomInst(schema, map) => match schema.instantiate(map) {
            Ok(inst) if &inst == f => {}
            Ok(inst) => {
                return Err((
                    Reason::SchemaMismatch,
                    format!("instance of {schema} is {}", inst.render()),
                ))
            }
            Err(e) => return Err((Reason::SchemaMismatch, e.to_string())),
        },
        Justification::Mp(i, j) => {
            let expected = Formula::imp(at(*i).clone(), f.clone());
            if at(*j) != &expected {
                return Err((
                    Reason::BadMpShape,
                    format!("line {j} is not line {i} -> {}", f.render()),
                ));
            }
        }
        Justification::NecU(i) => {
            if f != &Formula::univ(at(*i).clone()) {
                return Err((Reason::BadNecuShape, format!("expected U of line {i}")));
            }
        }
        Justification::Sub(i, letter, with) => {
            if !is_identifier(letter) {
                return Err((Reason::BadLetter, format!("{letter:?} is not a letter")));
            }
            let expected = at(*i).substitute(letter, with);
            if f != &expected {
                return Err((
                    Reason::BadSubResult,
                    format!("substitution yields {}", expected.render()),
                ));
            }
        }
        Justification::Theorem(name) => match db.get(name) {
            None => return Err((Reason::UnknownTheorem, name.clone())),
            Some(t) if t != f => {
                return Err((
                    Reason::TheoremMismatch,
                    format!("{name} is {}", t.render()),
                ))
            }
            Some(_) => {}
        },
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn line(f: &str, just: Justification) -> Line {
        Line {
            formula: parse(f).unwrap(),
            just,
        }
    }

    fn deriv(lines: Vec<Line>) -> Derivation {
        Derivation {
            name: "t".to_string(),
            lines,
        }
    }

    fn reason(d: &Derivation) -> (usize, Reason) {
        let e = check_derivation(d, &TheoremDb::new()).unwrap_err();
        (e.line, e.reason)
    }

    #[test]
    fn necessitated_tu_instance() {
        let d = deriv(vec![
            line("U(p) -> p", Justification::Axiom(AxiomSchema::TU)),
            line("U(U(p) -> p)", Justification::NecU(1)),
            line("U(U(q) -> q)", Justification::Sub(2, "p".into(), parse("q").unwrap())),
        ]);
        assert_eq!(check_derivation(&d, &TheoremDb::new()), Ok(()));
    }

    #[test]
    fn modus_ponens() {
        let ok = deriv(vec![
            line("p -> p", Justification::Taut),
            line("(p -> p) -> (q -> q)", Justification::Taut),
            line("q -> q", Justification::Mp(1, 2)),
        ]);
        assert_eq!(check_derivation(&ok, &TheoremDb::new()), Ok(()));
        let swapped = deriv(vec![
            line("p -> p", Justification::Taut),
            line("(p -> p) -> (q -> q)", Justification::Taut),
            line("q -> q", Justification::Mp(2, 1)),
        ]);
        assert_eq!(reason(&swapped), (3, Reason::BadMpShape));
    }

    #[test]
    fn rejections() {
        assert_eq!(reason(&deriv(vec![line("p -> q", Justification::Taut)])), (1, Reason::NotATautology));
        assert_eq!(
            reason(&deriv(vec![line("U(q) -> q", Justification::Axiom(AxiomSchema::TU))])),
            (1, Reason::SchemaMismatch)
        );
        assert_eq!(
            reason(&deriv(vec![line("p", Justification::Theorem("nope".into()))])),
            (1, Reason::UnknownTheorem)
        );
        assert_eq!(
            reason(&deriv(vec![line("U(p)", Justification::NecU(1))])),
            (1, Reason::ForwardReference)
        );
        assert_eq!(
            reason(&deriv(vec![
                line("p -> p", Justification::Taut),
                line("U(p)", Justification::NecU(1)),
            ])),
            (2, Reason::BadNecuShape)
        );
        assert_eq!(
            reason(&deriv(vec![
                line("p -> p", Justification::Taut),
                line("q -> p", Justification::Sub(1, "p".into(), parse("q").unwrap())),
            ])),
            (2, Reason::BadSubResult)
        );
        assert_eq!(reason(&deriv(vec![])), (0, Reason::EmptyDerivation));
    }

    #[test]
    fn theorem_db_admission() {
        let mut db = TheoremDb::new();
        let d = deriv(vec![line("p -> p", Justification::Taut)]);
        assert_eq!(db.admit(&d).unwrap(), &parse("p -> p").unwrap());
        assert_eq!(db.admit(&d).unwrap_err().reason, Reason::DuplicateTheorem);
        let uses = Derivation {
            name: "u".into(),
            lines: vec![
                line("p -> p", Justification::Theorem("t".into())),
                line("U(p -> p)", Justification::NecU(1)),
            ],
        };
        assert!(db.admit(&uses).is_ok());
        let wrong = Derivation {
            name: "w".into(),
            lines: vec![line("q -> q", Justification::Theorem("t".into()))],
        };
        assert_eq!(db.admit(&wrong).unwrap_err().reason, Reason::TheoremMismatch);
        assert!(!db.contains("w"));
    }
}
