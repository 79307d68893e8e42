use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{Model, StateSet};
use crate::syntax::Formula;

/// Label of the `i`-th generated action: `a`..`z`, then `a26`, `a27`, ...
pub fn action_label(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("a{i}")
    }
}

/// Name of the `i`-th generated state, counting from `s1`.
pub fn state_label(i: usize) -> String {
    format!("s{}", i + 1)
}

/// A random model over states `s1..sN` and actions `a, b, ...`.
///
/// Each edge `(s, a, t)` is drawn independently with `edge_prob`, then each
/// `(state, prop)` pair with `prop_prob`, in a fixed order; the result is a
/// function of the arguments alone.
pub fn random_model(
    num_states: usize,
    num_actions: usize,
    edge_prob: f64,
    props: &[&str],
    prop_prob: f64,
    seed: u64,
) -> Model {
    assert!(num_states >= 1 && num_actions >= 1, "model needs a state and an action");
    assert!((0.0..=1.0).contains(&edge_prob) && (0.0..=1.0).contains(&prop_prob));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut model = Model::blank(
        (0..num_states).map(state_label).collect(),
        (0..num_actions).map(action_label).collect(),
    );
    for s in 0..num_states {
        for a in 0..num_actions {
            let mut out = StateSet::empty(num_states);
            for t in 0..num_states {
                if rng.gen_bool(edge_prob) {
                    out.insert(t);
                }
            }
            model.set_successors(a, s, out);
        }
    }
    let mut valuation = vec![StateSet::empty(num_states); props.len()];
    for s in 0..num_states {
        for set in valuation.iter_mut() {
            if rng.gen_bool(prop_prob) {
                set.insert(s);
            }
        }
    }
    for (prop, set) in props.iter().zip(valuation) {
        model.set_valuation(prop, set);
    }
    model
}

/// A random formula of depth at most `depth` over `letters`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, letters: &[&str], depth: u32) -> Formula {
    let leaf = |rng: &mut R| match rng.gen_range(0..10) {
        0 => Formula::Top,
        1 => Formula::Bot,
        _ => Formula::atom(letters[rng.gen_range(0..letters.len())]),
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..20) {
        0..=3 => leaf(rng),
        4..=7 => Formula::neg(random_formula(rng, letters, depth - 1)),
        8..=11 => Formula::and(
            random_formula(rng, letters, depth - 1),
            random_formula(rng, letters, depth - 1),
        ),
        12..=16 => Formula::khm(
            random_formula(rng, letters, depth - 1),
            random_formula(rng, letters, depth - 1),
            random_formula(rng, letters, depth - 1),
        ),
        _ => Formula::univ(random_formula(rng, letters, depth - 1)),
    }
}
