//! Semantic evaluation and the searches built on it.
//!
//! `Khm(pre, mid, goal)` holds (everywhere, or nowhere) iff [`synthesize`]
//! finds a uniform plan for the extensions of its arguments. Around that sit
//! an independent witness checker and enumeration oracle, bounded countermodel
//! search, random generators and the soundness fuzzer.

mod countermodel;
mod eval;
mod fuzz;
mod random;
mod synth;

pub use countermodel::{
    find_countermodel, find_countermodel_within, Countermodel, SearchBounds, SearchError,
    DEFAULT_BUDGET,
};
pub use eval::{eval, extension, valid_on, Evaluation, Program};
pub use fuzz::{fuzz_soundness, FuzzFailure, FuzzReport, ModelParams, FUZZ_DEPTH, FUZZ_LETTERS};
pub use random::{action_label, random_formula, random_model, state_label};
pub use synth::{all_plans, brute_force, synthesize, verify_witness};
