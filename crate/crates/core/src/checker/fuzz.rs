//! Randomized soundness check of the axiom schemas.
//!
//! Each trial draws a model and one substitution (a random formula for every
//! schema letter), instantiates every schema with it and checks the instance
//! at every state. Trial `i` is seeded from `(seed, i)` alone, so reports are
//! reproducible trial by trial.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::model::ModelFile;
use crate::proofs::AxiomSchema;

use super::eval::Program;
use super::random::{random_formula, random_model};

/// Letters the substituted formulas range over.
pub const FUZZ_LETTERS: [&str; 3] = ["p", "q", "r"];
/// Maximum depth of substituted formulas.
pub const FUZZ_DEPTH: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub max_states: usize,
    pub max_actions: usize,
    pub edge_prob: f64,
    pub prop_prob: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            max_states: 6,
            max_actions: 3,
            edge_prob: 0.3,
            prop_prob: 0.5,
        }
    }
}

/// One falsified axiom instance, with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzFailure {
    pub trial: usize,
    pub axiom: String,
    pub instance: String,
    pub model: ModelFile,
    pub substitution: BTreeMap<String, String>,
    pub state: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    pub params: ModelParams,
    pub axioms: Vec<String>,
    pub instances_checked: usize,
    pub failures: Vec<FuzzFailure>,
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Runs `trials` independent trials over all schemas in [`AxiomSchema::ALL`].
pub fn fuzz_soundness(trials: usize, params: ModelParams, seed: u64) -> FuzzReport {
    let schemas = AxiomSchema::ALL;
    let mut report = FuzzReport {
        seed,
        trials,
        params,
        axioms: schemas.iter().map(|s| s.name().to_string()).collect(),
        instances_checked: 0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let num_states = rng.gen_range(1..=params.max_states.max(1));
        let num_actions = rng.gen_range(1..=params.max_actions.max(1));
        let model_seed = rng.gen();
        let model = random_model(
            num_states,
            num_actions,
            params.edge_prob,
            &FUZZ_LETTERS,
            params.prop_prob,
            model_seed,
        );

        let mut letters: Vec<String> = schemas
            .iter()
            .flat_map(|s| s.template().letters())
            .collect();
        letters.sort();
        letters.dedup();
        let substitution: BTreeMap<String, _> = letters
            .into_iter()
            .map(|l| {
                let depth = rng.gen_range(0..=FUZZ_DEPTH);
                (l, random_formula(&mut rng, &FUZZ_LETTERS, depth))
            })
            .collect();

        for schema in schemas {
            let instance = schema.template().substitute_all(&substitution);
            let eval = Program::compile(&instance).run(&model);
            report.instances_checked += 1;
            if let Some(s) = eval.extension().complement().iter().next() {
                report.failures.push(FuzzFailure {
                    trial,
                    axiom: schema.name().to_string(),
                    instance: instance.render(),
                    model: model.to_file(),
                    substitution: substitution
                        .iter()
                        .map(|(k, v)| (k.clone(), v.render()))
                        .collect(),
                    state: model.state_name(s).to_string(),
                });
            }
        }
    }
    report
}
