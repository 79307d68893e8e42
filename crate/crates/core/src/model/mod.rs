//! Labeled transition systems, plan execution and strong executability.
//!
//! States and actions are addressed by index internally, in file order. The
//! name-based methods are the public surface used by the CLI and tests; the
//! index-based ones serve the search code.

mod file;
mod plan;
mod state_set;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::syntax::is_identifier;

pub use file::{load_model, ModelFile};
pub use plan::Plan;
pub use state_set::{BeliefState, StateSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed model file: {0}")]
    Format(String),
    #[error("invalid model: {0}")]
    Validation(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
}

/// Result of advancing a belief state by one action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Progress {
    Reached(BeliefState),
    /// Some member state has no successor for the action.
    Blocked,
}

/// A finite labeled transition system with a valuation.
#[derive(Debug, Clone)]
pub struct Model {
    states: Vec<String>,
    state_index: HashMap<String, usize>,
    alphabet: Vec<String>,
    action_index: HashMap<String, usize>,
    /// proposition -> states where it holds
    valuation: BTreeMap<String, StateSet>,
    /// `succ[action][state]`
    succ: Vec<Vec<StateSet>>,
}

impl Model {
    /// Builds and validates a model. `states` pairs each id with the
    /// propositions true there; when `alphabet` is `None` it is the set of
    /// labels used by `transitions`, in order of first use.
    pub fn new(
        states: Vec<(String, Vec<String>)>,
        transitions: Vec<(String, String, String)>,
        alphabet: Option<Vec<String>>,
    ) -> Result<Model, ModelError> {
        if states.is_empty() {
            return Err(ModelError::Validation("the state set is empty".into()));
        }
        let n = states.len();
        let mut state_index = HashMap::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        let mut valuation: BTreeMap<String, StateSet> = BTreeMap::new();
        for (i, (id, props)) in states.into_iter().enumerate() {
            if state_index.insert(id.clone(), i).is_some() {
                return Err(ModelError::Validation(format!("duplicate state id `{id}`")));
            }
            for prop in props {
                if !is_identifier(&prop) {
                    return Err(ModelError::Validation(format!(
                        "state `{id}`: `{prop}` is not a proposition name"
                    )));
                }
                valuation
                    .entry(prop)
                    .or_insert_with(|| StateSet::empty(n))
                    .insert(i);
            }
            names.push(id);
        }

        let explicit = alphabet.is_some();
        let alphabet = match alphabet {
            Some(labels) => labels,
            None => {
                let mut seen = BTreeSet::new();
                transitions
                    .iter()
                    .filter(|(_, a, _)| seen.insert(a.clone()))
                    .map(|(_, a, _)| a.clone())
                    .collect()
            }
        };
        if alphabet.is_empty() {
            return Err(ModelError::Validation("the alphabet is empty".into()));
        }
        let mut action_index = HashMap::with_capacity(alphabet.len());
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() {
                return Err(ModelError::Validation("empty action label".into()));
            }
            if action_index.insert(a.clone(), i).is_some() {
                return Err(ModelError::Validation(format!("duplicate action `{a}`")));
            }
        }

        let mut succ = vec![vec![StateSet::empty(n); n]; alphabet.len()];
        for (from, a, to) in &transitions {
            let s = *state_index.get(from).ok_or_else(|| {
                ModelError::Validation(format!("transition from undeclared state `{from}`"))
            })?;
            let t = *state_index.get(to).ok_or_else(|| {
                ModelError::Validation(format!("transition to undeclared state `{to}`"))
            })?;
            let ai = *action_index.get(a).ok_or_else(|| {
                debug_assert!(explicit);
                ModelError::Validation(format!("transition label `{a}` is not in the alphabet"))
            })?;
            succ[ai][s].insert(t);
        }

        Ok(Model {
            states: names,
            state_index,
            alphabet,
            action_index,
            valuation,
            succ,
        })
    }

    /// A model over states `names` and `alphabet` with no transitions and an
    /// empty valuation. Used by the enumerators, which fill it in place.
    pub(crate) fn blank(names: Vec<String>, alphabet: Vec<String>) -> Model {
        let n = names.len();
        Model {
            state_index: names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect(),
            action_index: alphabet.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect(),
            succ: vec![vec![StateSet::empty(n); n]; alphabet.len()],
            states: names,
            alphabet,
            valuation: BTreeMap::new(),
        }
    }

    pub(crate) fn set_successors(&mut self, action: usize, state: usize, to: StateSet) {
        self.succ[action][state] = to;
    }

    /// Sets where `prop` holds. An empty set is kept as an entry so that
    /// enumeration can overwrite it without reallocating the key.
    pub(crate) fn set_valuation(&mut self, prop: &str, states: StateSet) {
        match self.valuation.get_mut(prop) {
            Some(slot) => *slot = states,
            None => {
                self.valuation.insert(prop.to_string(), states);
            }
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_name(&self, index: usize) -> &str {
        &self.states[index]
    }

    pub fn state_index(&self, id: &str) -> Result<usize, ModelError> {
        self.state_index
            .get(id)
            .copied()
            .ok_or_else(|| ModelError::UnknownState(id.to_string()))
    }

    pub fn action_index(&self, label: &str) -> Result<usize, ModelError> {
        self.action_index
            .get(label)
            .copied()
            .ok_or_else(|| ModelError::UnknownAction(label.to_string()))
    }

    pub fn action_ids(&self, plan: &Plan) -> Result<Vec<usize>, ModelError> {
        plan.actions().iter().map(|a| self.action_index(a)).collect()
    }

    pub fn plan_from_ids(&self, ids: &[usize]) -> Plan {
        Plan::new(ids.iter().map(|&a| self.alphabet[a].clone()))
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.num_states())
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    /// The state set named by `ids`.
    pub fn set<S: AsRef<str>>(&self, ids: &[S]) -> Result<StateSet, ModelError> {
        let mut out = self.empty_set();
        for id in ids {
            out.insert(self.state_index(id.as_ref())?);
        }
        Ok(out)
    }

    /// State ids of `set`, in file order.
    pub fn names(&self, set: &StateSet) -> Vec<&str> {
        set.iter().map(|i| self.states[i].as_str()).collect()
    }

    /// States where `prop` holds.
    pub fn valuation(&self, prop: &str) -> StateSet {
        self.valuation
            .get(prop)
            .cloned()
            .unwrap_or_else(|| self.empty_set())
    }

    /// Propositions true at `state`, sorted.
    pub fn props_at(&self, state: usize) -> Vec<&str> {
        self.valuation
            .iter()
            .filter(|(_, set)| set.contains(state))
            .map(|(p, _)| p.as_str())
            .collect()
    }

    /// All transitions as index triples, ordered by source, action, target.
    pub fn transitions(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.num_states() {
            for (a, by_state) in self.succ.iter().enumerate() {
                out.extend(by_state[s].iter().map(|t| (s, a, t)));
            }
        }
        out
    }

    pub fn successors_of(&self, state: usize, action: usize) -> &StateSet {
        &self.succ[action][state]
    }

    pub fn successors(&self, state: &str, action: &str) -> Result<StateSet, ModelError> {
        let s = self.state_index(state)?;
        let a = self.action_index(action)?;
        Ok(self.succ[a][s].clone())
    }

    /// One uniform step from every state of `belief`.
    pub fn progress_by(&self, belief: &BeliefState, action: usize) -> Progress {
        let mut next = self.empty_set();
        for s in belief.iter() {
            let out = &self.succ[action][s];
            if out.is_empty() {
                return Progress::Blocked;
            }
            next.union_with(out);
        }
        Progress::Reached(next)
    }

    pub fn progress(&self, belief: &BeliefState, action: &str) -> Result<Progress, ModelError> {
        Ok(self.progress_by(belief, self.action_index(action)?))
    }

    /// Image of `from` under `action`, ignoring states without successors.
    pub fn image(&self, from: &StateSet, action: usize) -> StateSet {
        let mut next = self.empty_set();
        for s in from.iter() {
            next.union_with(&self.succ[action][s]);
        }
        next
    }

    /// All `t` with `state --plan--> t`.
    pub fn run_plan(&self, state: &str, plan: &Plan) -> Result<StateSet, ModelError> {
        let s = self.state_index(state)?;
        let actions = self.action_ids(plan)?;
        let mut current = StateSet::singleton(self.num_states(), s);
        for a in actions {
            current = self.image(&current, a);
        }
        Ok(current)
    }

    pub fn strongly_executable(&self, state: &str, plan: &Plan) -> Result<bool, ModelError> {
        let all = self.all_states();
        self.strongly_chi_executable(state, plan, &all)
    }

    /// Strong executability where every state reached after a proper,
    /// nonempty prefix lies in `chi`. The start and end are unconstrained.
    pub fn strongly_chi_executable(
        &self,
        state: &str,
        plan: &Plan,
        chi: &StateSet,
    ) -> Result<bool, ModelError> {
        let s = self.state_index(state)?;
        let actions = self.action_ids(plan)?;
        Ok(self.strongly_chi_executable_by(s, &actions, chi))
    }

    pub(crate) fn strongly_chi_executable_by(
        &self,
        state: usize,
        actions: &[usize],
        chi: &StateSet,
    ) -> bool {
        let mut current = StateSet::singleton(self.num_states(), state);
        for (k, &a) in actions.iter().enumerate() {
            if k > 0 && !current.is_subset(chi) {
                return false;
            }
            if current.iter().any(|t| self.succ[a][t].is_empty()) {
                return false;
            }
            current = self.image(&current, a);
        }
        true
    }
}

/// Structural equality; propositions true nowhere are ignored.
impl PartialEq for Model {
    fn eq(&self, other: &Model) -> bool {
        let props = |m: &Model| -> Vec<(String, StateSet)> {
            m.valuation
                .iter()
                .filter(|(_, set)| !set.is_empty())
                .map(|(p, set)| (p.clone(), set.clone()))
                .collect()
        };
        self.states == other.states
            && self.alphabet == other.alphabet
            && self.succ == other.succ
            && props(self) == props(other)
    }
}

impl Eq for Model {}
