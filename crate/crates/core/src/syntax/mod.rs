//! Formula language: AST, concrete grammar, rendering and uniform substitution.
//!
//! Only negation, conjunction, the ternary `Khm` modality and the universal
//! modality `U` are AST nodes. Disjunction, implication, biconditional and the
//! binary `Kh` are desugared by the parser, so two formulas that differ only
//! in sugar compare equal.

mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use parse::{parse, SyntaxError};

/// A formula of the knowing-how language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// `Khm(pre, mid, goal)`: a uniform plan takes every `pre` state to `goal`
    /// while every intermediate state satisfies `mid`.
    Khm(Box<Formula>, Box<Formula>, Box<Formula>),
    /// Universal modality.
    Univ(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    /// `a | b` as `!(!a & !b)`.
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::neg(Formula::and(Formula::neg(a), Formula::neg(b)))
    }

    /// `a -> b` as `!(a & !b)`.
    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::neg(Formula::and(a, Formula::neg(b)))
    }

    /// `a <-> b` as `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn khm(pre: Formula, mid: Formula, goal: Formula) -> Self {
        Formula::Khm(Box::new(pre), Box::new(mid), Box::new(goal))
    }

    /// Binary knowing-how: `Kh(pre, goal)` is `Khm(pre, true, goal)`.
    pub fn kh(pre: Formula, goal: Formula) -> Self {
        Formula::khm(pre, Formula::Top, goal)
    }

    pub fn univ(f: Formula) -> Self {
        Formula::Univ(Box::new(f))
    }

    /// If this formula is the desugared form of `a -> b`, returns `(a, b)`.
    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Neg(inner) => match inner.as_ref() {
                Formula::And(a, nb) => match nb.as_ref() {
                    Formula::Neg(b) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// The set of atom names occurring in the formula.
    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::Neg(f) | Formula::Univ(f) => f.collect_letters(out),
            Formula::And(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
            Formula::Khm(a, b, c) => {
                a.collect_letters(out);
                b.collect_letters(out);
                c.collect_letters(out);
            }
        }
    }

    /// Replaces every occurrence of the atom `letter` with `with`.
    pub fn substitute(&self, letter: &str, with: &Formula) -> Formula {
        self.map_atoms(&|name| (name == letter).then(|| with.clone()))
    }

    /// Simultaneous substitution: every atom in the map's domain is replaced
    /// by its image in one pass.
    pub fn substitute_all(&self, map: &BTreeMap<String, Formula>) -> Formula {
        self.map_atoms(&|name| map.get(name).cloned())
    }

    fn map_atoms(&self, f: &dyn Fn(&str) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(name) => f(name).unwrap_or_else(|| self.clone()),
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Neg(a) => Formula::neg(a.map_atoms(f)),
            Formula::Univ(a) => Formula::univ(a.map_atoms(f)),
            Formula::And(a, b) => Formula::and(a.map_atoms(f), b.map_atoms(f)),
            Formula::Khm(a, b, c) => Formula::khm(a.map_atoms(f), b.map_atoms(f), c.map_atoms(f)),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 1,
            Formula::Neg(a) | Formula::Univ(a) => 1 + a.size(),
            Formula::And(a, b) => 1 + a.size() + b.size(),
            Formula::Khm(a, b, c) => 1 + a.size() + b.size() + c.size(),
        }
    }

    /// Renders the formula in the ASCII surface syntax.
    pub fn render(&self) -> String {
        render::render(self)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Whether `name` is a legal atom name.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    if chars.any(|c| !(c.is_ascii_alphanumeric() || c == '_' || c == '\'')) {
        return false;
    }
    !matches!(name, "true" | "false")
}
