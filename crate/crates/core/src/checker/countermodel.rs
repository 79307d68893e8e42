//! Exhaustive search for small models falsifying a formula.
//!
//! Models are enumerated in this order:
//!
//! 1. number of states `n` ascending (states `s1..sn`),
//! 2. number of actions `k` ascending (actions `a, b, ...`),
//! 3. transition relation code ascending, where bit `(a·n + s)·n + t` is the
//!    edge `s -a-> t`,
//! 4. valuation code ascending over `letters(f)` in sorted order, where bit
//!    `l·n + s` puts letter `l` at state `s`.
//!
//! The first model whose extension of `f` is not total is returned with its
//! lowest falsifying state. Formulas without `Khm` ignore transitions, so only
//! the empty relation over one action is tried for them. There is no
//! isomorphism reduction.

use thiserror::Error;

use crate::model::{Model, StateSet};
use crate::syntax::Formula;

use super::eval::{Evaluation, Program};
use super::random::{action_label, state_label};

/// Number of candidate models tried before giving up.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_states: usize,
    pub max_actions: usize,
    /// Longest plan considered when evaluating `Khm` during the search.
    /// A reported countermodel is always confirmed with unbounded plans.
    pub max_plan_len: usize,
}

impl SearchBounds {
    /// Bounds whose plan length cap never cuts off a shortest witness: a
    /// breadth-first search cannot go deeper than the number of belief states.
    pub fn new(max_states: usize, max_actions: usize) -> Self {
        SearchBounds {
            max_states,
            max_actions,
            max_plan_len: 1usize.checked_shl(max_states as u32).unwrap_or(usize::MAX),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search bounds must all be at least 1")]
    InvalidBounds,
    #[error("{0} states and {1} actions exceed the enumerable transition space")]
    TooLarge(usize, usize),
    #[error("budget of {budget} candidate models exhausted before the bounds were")]
    BudgetExceeded { budget: u64 },
}

/// A model together with a state where the formula fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub model: Model,
    pub state: String,
}

/// [`find_countermodel_within`] with [`DEFAULT_BUDGET`].
pub fn find_countermodel(f: &Formula, bounds: &SearchBounds) -> Result<Option<Countermodel>, SearchError> {
    find_countermodel_within(f, bounds, DEFAULT_BUDGET)
}

/// First countermodel in enumeration order, `None` when every model within
/// the bounds validates `f`.
pub fn find_countermodel_within(
    f: &Formula,
    bounds: &SearchBounds,
    budget: u64,
) -> Result<Option<Countermodel>, SearchError> {
    if bounds.max_states == 0 || bounds.max_actions == 0 || bounds.max_plan_len == 0 {
        return Err(SearchError::InvalidBounds);
    }
    let program = Program::compile(f);
    let letters: Vec<String> = f.letters().into_iter().collect();
    let uses_transitions = program.uses_transitions();
    let max_actions = if uses_transitions { bounds.max_actions } else { 1 };
    let mut eval = Evaluation::default();
    let mut explored: u64 = 0;

    for n in 1..=bounds.max_states {
        let val_bits = n * letters.len();
        if val_bits >= 128 {
            return Err(SearchError::TooLarge(n, max_actions));
        }
        for k in 1..=max_actions {
            let edge_bits = if uses_transitions { k * n * n } else { 0 };
            if edge_bits >= 128 {
                return Err(SearchError::TooLarge(n, k));
            }
            let mut model = Model::blank(
                (0..n).map(state_label).collect(),
                (0..k).map(action_label).collect(),
            );
            let state_mask = 1u128.checked_shl(n as u32).map_or(u128::MAX, |b| b - 1);
            for edge_code in 0..(1u128 << edge_bits) {
                if uses_transitions {
                    for a in 0..k {
                        for s in 0..n {
                            let row = (edge_code >> ((a * n + s) * n)) & state_mask;
                            model.set_successors(a, s, StateSet::from_mask(n, row));
                        }
                    }
                }
                for val_code in 0..(1u128 << val_bits) {
                    for (l, letter) in letters.iter().enumerate() {
                        let mask = (val_code >> (l * n)) & state_mask;
                        model.set_valuation(letter, StateSet::from_mask(n, mask));
                    }
                    explored += 1;
                    if explored > budget {
                        return Err(SearchError::BudgetExceeded { budget });
                    }
                    program.run_into(&model, Some(bounds.max_plan_len), &mut eval);
                    if eval.extension().is_full() {
                        continue;
                    }
                    let exact = program.run(&model);
                    if let Some(s) = exact.extension().complement().iter().next() {
                        let model = model
                            .to_file()
                            .into_model()
                            .expect("enumerated models are well formed");
                        let state = model.state_name(s).to_string();
                        return Ok(Some(Countermodel { model, state }));
                    }
                }
            }
        }
    }
    Ok(None)
}
