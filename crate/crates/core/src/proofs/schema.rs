use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::syntax::{parse, Formula};

use super::ProofError;

/// The axiom schemas of the proof system. TAUT is not listed; it is decided
/// by [`super::is_tautology`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomSchema {
    DistU,
    TU,
    FourKhmU,
    FiveKhmU,
    EmpKhm,
    CompKhm,
    OneKhm,
    UKhm,
    /// `U(p) <-> Khm(!p, true, false)`: ties the primitive `U` to its
    /// definition through `Khm`.
    DefU,
}

impl AxiomSchema {
    /// The eight schemas besides TAUT, in table order.
    pub const TABLE: [AxiomSchema; 8] = [
        AxiomSchema::DistU,
        AxiomSchema::TU,
        AxiomSchema::FourKhmU,
        AxiomSchema::FiveKhmU,
        AxiomSchema::EmpKhm,
        AxiomSchema::CompKhm,
        AxiomSchema::OneKhm,
        AxiomSchema::UKhm,
    ];

    /// [`Self::TABLE`] plus the definitional `DEFU`.
    pub const ALL: [AxiomSchema; 9] = [
        AxiomSchema::DistU,
        AxiomSchema::TU,
        AxiomSchema::FourKhmU,
        AxiomSchema::FiveKhmU,
        AxiomSchema::EmpKhm,
        AxiomSchema::CompKhm,
        AxiomSchema::OneKhm,
        AxiomSchema::UKhm,
        AxiomSchema::DefU,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomSchema::DistU => "DISTU",
            AxiomSchema::TU => "TU",
            AxiomSchema::FourKhmU => "4KhmU",
            AxiomSchema::FiveKhmU => "5KhmU",
            AxiomSchema::EmpKhm => "EMPKhm",
            AxiomSchema::CompKhm => "COMPKhm",
            AxiomSchema::OneKhm => "ONEKhm",
            AxiomSchema::UKhm => "UKhm",
            AxiomSchema::DefU => "DEFU",
        }
    }

    /// The template in surface syntax.
    pub fn source(self) -> &'static str {
        match self {
            AxiomSchema::DistU => "U(p) & U(p -> q) -> U(q)",
            AxiomSchema::TU => "U(p) -> p",
            AxiomSchema::FourKhmU => "Khm(p, o, q) -> U(Khm(p, o, q))",
            AxiomSchema::FiveKhmU => "!Khm(p, o, q) -> U(!Khm(p, o, q))",
            AxiomSchema::EmpKhm => "U(p -> q) -> Khm(p, false, q)",
            AxiomSchema::CompKhm => "Khm(p, o, r) & Khm(r, o, q) & U(r -> o) -> Khm(p, o, q)",
            AxiomSchema::OneKhm => "Khm(p, o, q) & !Khm(p, false, q) -> Khm(p, false, o)",
            AxiomSchema::UKhm => {
                "U(p' -> p) & U(o -> o') & U(q -> q') & Khm(p, o, q) -> Khm(p', o', q')"
            }
            AxiomSchema::DefU => "U(p) <-> Khm(!p, true, false)",
        }
    }

    pub fn template(self) -> &'static Formula {
        static TEMPLATES: OnceLock<Vec<Formula>> = OnceLock::new();
        let all = TEMPLATES.get_or_init(|| {
            AxiomSchema::ALL
                .iter()
                .map(|s| parse(s.source()).expect("axiom templates parse"))
                .collect()
        });
        &all[AxiomSchema::ALL.iter().position(|s| *s == self).unwrap()]
    }

    /// Simultaneous substitution of `map` into the template.
    ///
    /// Carried out as single-letter substitutions: each mapped letter is
    /// first renamed to a fresh letter, then each fresh letter is replaced
    /// by its image, so no image is rewritten by a later step.
    pub fn instantiate(self, map: &BTreeMap<String, Formula>) -> Result<Formula, ProofError> {
        let template = self.template();
        let letters = template.letters();
        if let Some(foreign) = map.keys().find(|k| !letters.contains(*k)) {
            return Err(ProofError::ForeignLetter {
                schema: self.name().to_string(),
                letter: foreign.clone(),
            });
        }
        let mut used: BTreeSet<String> = letters;
        for image in map.values() {
            used.extend(image.letters());
        }
        let mut fresh_names = (0..).map(|i| format!("v{i}")).filter(|v| !used.contains(v));
        let renaming: Vec<(&String, String, &Formula)> = map
            .iter()
            .map(|(letter, image)| (letter, fresh_names.next().unwrap(), image))
            .collect();

        let mut f = template.clone();
        for (letter, fresh, _) in &renaming {
            f = f.substitute(letter, &Formula::atom(fresh.as_str()));
        }
        for (_, fresh, image) in &renaming {
            f = f.substitute(fresh, image);
        }
        Ok(f)
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomSchema {
    type Err = ProofError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomSchema::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| ProofError::UnknownSchema(s.to_string()))
    }
}
