#![allow(dead_code)]

use std::path::PathBuf;

use khm::checker::{random_formula, random_model};
use khm::model::{load_model, Model, Plan, StateSet};
use khm::proofs::{read_derivation, read_manifest, Derivation, Justification};
use khm::syntax::{parse, Formula};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture_path(name: &str) -> PathBuf {
    repo_root().join("fixtures").join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Model {
    load_model(&std::fs::read(fixture_path(name)).unwrap()).unwrap()
}

pub fn manifest_path() -> PathBuf {
    repo_root().join("corpus/manifest.txt")
}

pub fn corpus() -> Vec<Derivation> {
    read_manifest(&manifest_path())
        .unwrap()
        .iter()
        .map(|p| read_derivation(p).unwrap())
        .collect()
}

pub fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

pub fn plan(text: &str) -> Plan {
    text.parse().unwrap()
}

pub fn ext(model: &Model, text: &str) -> StateSet {
    khm::checker::extension(model, &f(text))
}

pub fn names(model: &Model, set: &StateSet) -> Vec<String> {
    model.names(set).into_iter().map(String::from).collect()
}

/// A random model with `1..=max_states` states and `1..=max_actions`
/// actions over `p, q, r`, determined by `seed`.
pub fn model_from_seed(seed: u64, max_states: usize, max_actions: usize) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::Rng;
    let n = rng.gen_range(1..=max_states);
    let k = rng.gen_range(1..=max_actions);
    let edge_prob = [0.2, 0.35, 0.5][rng.gen_range(0..3)];
    random_model(n, k, edge_prob, &["p", "q", "r"], 0.5, rng.gen())
}

pub fn formula_from_seed(seed: u64, depth: u32) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula(&mut rng, &["p", "q", "r"], depth)
}

/// A random subset of the model's states.
pub fn subset_from_bits(model: &Model, bits: u64) -> StateSet {
    StateSet::from_indices(
        model.num_states(),
        (0..model.num_states()).filter(|i| bits >> i & 1 == 1),
    )
}

pub fn arb_formula(depth: u32) -> impl Strategy<Value = Formula> {
    any::<u64>().prop_map(move |seed| formula_from_seed(seed, depth))
}

/// Every derivation obtained by changing one line reference of one line to
/// another in-range value.
pub fn index_mutants(d: &Derivation) -> Vec<(usize, Derivation)> {
    let mut out = Vec::new();
    for (idx, line) in d.lines.iter().enumerate() {
        let refs = line.just.references();
        for slot in 0..refs.len() {
            for other in 1..=idx {
                if other == refs[slot] {
                    continue;
                }
                let mut new_refs = refs.clone();
                new_refs[slot] = other;
                let mut m = d.clone();
                m.lines[idx].just = line.just.with_references(&new_refs);
                out.push((idx + 1, m));
            }
        }
        if let Justification::Mp(i, j) = line.just {
            if i != j {
                let mut m = d.clone();
                m.lines[idx].just = Justification::Mp(j, i);
                if !out.iter().any(|(_, o)| o == &m) {
                    out.push((idx + 1, m));
                }
            }
        }
    }
    out
}

/// Sets drawn for one semantic case: a model and `count` random subsets.
pub fn model_and_sets(seed: u64, max_states: usize, max_actions: usize, count: usize) -> (Model, Vec<StateSet>) {
    use rand::Rng;
    let m = model_from_seed(seed, max_states, max_actions);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let sets = (0..count).map(|_| subset_from_bits(&m, rng.gen())).collect();
    (m, sets)
}

/// Composition: witnesses for (pre, mid, r) and (r, mid, goal) with
/// r inside mid concatenate to a witness for (pre, mid, goal). `None` when
/// the premises fail.
pub fn comp_case(seed: u64) -> Option<bool> {
    use khm::checker::{synthesize, verify_witness};
    let (m, sets) = model_and_sets(seed, 5, 2, 4);
    let (pre, mid, goal) = (&sets[0], &sets[1], &sets[2]);
    let mut r = sets[3].clone();
    r.intersect_with(mid);
    let p1 = synthesize(&m, pre, mid, &r)?;
    let p2 = synthesize(&m, &r, mid, goal)?;
    Some(verify_witness(&m, pre, mid, goal, &p1.concat(&p2)))
}

/// Monotonicity: a witness for (pre, mid, goal) also witnesses any
/// (pre', mid', goal') with pre' ⊆ pre, mid ⊆ mid', goal ⊆ goal'.
pub fn ukhm_case(seed: u64) -> Option<bool> {
    use khm::checker::{synthesize, verify_witness};
    let (m, sets) = model_and_sets(seed, 5, 2, 6);
    let (pre, mid, goal) = (&sets[0], &sets[1], &sets[2]);
    let p = synthesize(&m, pre, mid, goal)?;
    let mut pre2 = pre.clone();
    pre2.intersect_with(&sets[3]);
    let mut mid2 = mid.clone();
    mid2.union_with(&sets[4]);
    let mut goal2 = goal.clone();
    goal2.union_with(&sets[5]);
    Some(verify_witness(&m, &pre2, &mid2, &goal2, &p))
}

/// Necessity of intermediates: if (pre, mid, goal) has a witness but
/// (pre, ∅, goal) has none, then (pre, ∅, mid) has one of length ≤ 1.
pub fn one_case(seed: u64) -> Option<bool> {
    use khm::checker::synthesize;
    let (m, sets) = model_and_sets(seed, 5, 2, 3);
    let (pre, mid, goal) = (&sets[0], &sets[1], &sets[2]);
    synthesize(&m, pre, mid, goal)?;
    if synthesize(&m, pre, &m.empty_set(), goal).is_some() {
        return None;
    }
    Some(matches!(synthesize(&m, pre, &m.empty_set(), mid), Some(p) if p.len() <= 1))
}

/// `Khm` and `U` formulas have the same value at every state.
pub fn global_case(seed: u64) -> bool {
    let m = model_from_seed(seed, 6, 3);
    let g = formula_from_seed(seed ^ 1, 3);
    let h = formula_from_seed(seed ^ 2, 3);
    let k = formula_from_seed(seed ^ 3, 3);
    [Formula::khm(g.clone(), h, k), Formula::univ(g)].iter().all(|x| {
        let e = khm::checker::extension(&m, x);
        e.is_empty() || e.is_full()
    })
}

/// `U(φ)` and `Khm(!φ, true, false)` have the same extension.
pub fn udef_case(seed: u64) -> bool {
    let m = model_from_seed(seed, 6, 3);
    let g = formula_from_seed(seed ^ 7, 4);
    let u = khm::checker::extension(&m, &Formula::univ(g.clone()));
    let k = khm::checker::extension(&m, &Formula::khm(Formula::neg(g), Formula::Top, Formula::Bot));
    u == k
}
