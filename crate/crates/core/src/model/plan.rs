use std::convert::Infallible;
use std::fmt;
use std::str::FromStr;

/// A finite sequence of action labels. The empty plan is ε.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plan {
    actions: Vec<String>,
}

impl Plan {
    pub fn new<S: Into<String>>(actions: impl IntoIterator<Item = S>) -> Self {
        Plan {
            actions: actions.into_iter().map(Into::into).collect(),
        }
    }

    pub fn empty() -> Self {
        Plan::default()
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Plan) -> Plan {
        let mut actions = self.actions.clone();
        actions.extend(other.actions.iter().cloned());
        Plan { actions }
    }

    /// Compact text: labels concatenated when all are single characters,
    /// space separated otherwise. ε is the empty string.
    pub fn to_compact(&self) -> String {
        if self.actions.iter().all(|a| a.chars().count() == 1) {
            self.actions.concat()
        } else {
            self.actions.join(" ")
        }
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.to_compact())
        }
    }
}

/// Inverse of [`Plan::to_compact`] and `Display`: whitespace separated labels,
/// or one label per character when there is no whitespace. `""` and `"ε"`
/// are the empty plan.
impl FromStr for Plan {
    type Err = Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Plan::empty());
        }
        if s.contains(char::is_whitespace) {
            Ok(Plan::new(s.split_whitespace()))
        } else {
            Ok(Plan::new(s.chars().map(String::from)))
        }
    }
}
