//! JSON model format.
//!
//! ```json
//! { "states": { "s1": ["p"], "s2": [] },
//!   "transitions": [["s1", "a", "s2"]],
//!   "alphabet": ["a"] }
//! ```
//!
//! `states` keeps file order; `alphabet` is optional.

use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Model, ModelError};

/// On-disk shape of a model, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(serialize_with = "ser_states", deserialize_with = "de_states")]
    pub states: Vec<(String, Vec<String>)>,
    #[serde(default)]
    pub transitions: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
}

fn ser_states<S: Serializer>(states: &[(String, Vec<String>)], ser: S) -> Result<S::Ok, S::Error> {
    let mut map = ser.serialize_map(Some(states.len()))?;
    for (id, props) in states {
        map.serialize_entry(id, props)?;
    }
    map.end()
}

/// Keeps entry order and duplicate keys so validation can reject them.
fn de_states<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<(String, Vec<String>)>, D::Error> {
    struct Entries;

    impl<'de> Visitor<'de> for Entries {
        type Value = Vec<(String, Vec<String>)>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an object mapping state ids to proposition lists")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
            let mut out = Vec::new();
            while let Some(entry) = access.next_entry::<String, Vec<String>>()? {
                out.push(entry);
            }
            Ok(out)
        }
    }

    de.deserialize_map(Entries)
}

impl ModelFile {
    pub fn into_model(self) -> Result<Model, ModelError> {
        Model::new(self.states, self.transitions, self.alphabet)
    }

    pub fn from_model(model: &Model) -> ModelFile {
        let states = (0..model.num_states())
            .map(|i| {
                let props = model.props_at(i).into_iter().map(String::from).collect();
                (model.state_name(i).to_string(), props)
            })
            .collect();
        let transitions = model
            .transitions()
            .into_iter()
            .map(|(s, a, t)| {
                (
                    model.state_name(s).to_string(),
                    model.alphabet()[a].clone(),
                    model.state_name(t).to_string(),
                )
            })
            .collect();
        ModelFile {
            states,
            transitions,
            alphabet: Some(model.alphabet().to_vec()),
        }
    }
}

/// Parses and validates a model file.
pub fn load_model(bytes: &[u8]) -> Result<Model, ModelError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ModelError::Format(e.to_string()))?;
    let file: ModelFile = serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
    file.into_model()
}

impl Model {
    pub fn to_file(&self) -> ModelFile {
        ModelFile::from_model(self)
    }

    /// Pretty-printed JSON in the model file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serialization cannot fail")
    }
}
