//! Uniform plan synthesis for `Khm(pre, mid, goal)`.
//!
//! [`synthesize`] searches belief states breadth first. [`verify_witness`]
//! follows the satisfaction clause literally, one start state at a time, and
//! [`brute_force`] enumerates plans in length-then-lex order against it; the
//! two routes share no search code.

use std::collections::HashSet;

use crate::model::{BeliefState, Model, Plan, Progress, StateSet};

/// Belief states with at most this many model states are tracked in a
/// fixed bitmap instead of a hash set.
const DENSE_LIMIT: usize = 8;

enum Visited {
    Dense([u64; 4]),
    Sparse(HashSet<BeliefState>),
}

impl Visited {
    fn new(universe: usize) -> Self {
        if universe <= DENSE_LIMIT {
            Visited::Dense([0; 4])
        } else {
            Visited::Sparse(HashSet::new())
        }
    }

    /// Returns true when `b` was not seen before.
    fn insert(&mut self, b: &BeliefState) -> bool {
        match self {
            Visited::Dense(bits) => {
                let key = b.low_word() as usize;
                let (word, bit) = (key / 64, 1u64 << (key % 64));
                let fresh = bits[word] & bit == 0;
                bits[word] |= bit;
                fresh
            }
            Visited::Sparse(set) => set.insert(b.clone()),
        }
    }
}

struct SearchNode {
    belief: BeliefState,
    parent: usize,
    action: usize,
    depth: usize,
}

/// Shortest, then alphabet-lexicographically least, uniform plan taking every
/// state of `pre` into `goal` with all intermediate belief states inside
/// `mid`. `None` when no plan exists.
pub fn synthesize(model: &Model, pre: &StateSet, mid: &StateSet, goal: &StateSet) -> Option<Plan> {
    synthesize_ids(model, pre, mid, goal, None).map(|ids| model.plan_from_ids(&ids))
}

/// Breadth-first search over belief states, returning action indices.
///
/// The start belief `pre` is depth 0 and is expanded regardless of `mid`.
/// A successor is accepted as soon as it lies inside `goal`; otherwise it is
/// expanded only when it lies inside `mid`. Belief states reached at depth
/// ≥ 1 are pruned on revisit; the start is not in that set, since it is
/// subject to `mid` when reached again.
pub(crate) fn synthesize_ids(
    model: &Model,
    pre: &StateSet,
    mid: &StateSet,
    goal: &StateSet,
    max_len: Option<usize>,
) -> Option<Vec<usize>> {
    if pre.is_subset(goal) {
        return Some(Vec::new());
    }
    let max_len = max_len.unwrap_or(usize::MAX);
    if max_len == 0 {
        return None;
    }
    let mut visited = Visited::new(model.num_states());
    let mut nodes = vec![SearchNode {
        belief: pre.clone(),
        parent: usize::MAX,
        action: 0,
        depth: 0,
    }];
    let mut head = 0;
    while head < nodes.len() {
        let current = head;
        head += 1;
        let depth = nodes[current].depth + 1;
        for action in 0..model.alphabet().len() {
            let Progress::Reached(next) = model.progress_by(&nodes[current].belief, action) else {
                continue;
            };
            if !visited.insert(&next) {
                continue;
            }
            if next.is_subset(goal) {
                let mut plan = vec![action];
                let mut at = current;
                while at != 0 {
                    plan.push(nodes[at].action);
                    at = nodes[at].parent;
                }
                plan.reverse();
                return Some(plan);
            }
            if depth < max_len && next.is_subset(mid) {
                nodes.push(SearchNode {
                    belief: next,
                    parent: current,
                    action,
                    depth,
                });
            }
        }
    }
    None
}

/// Checks a candidate witness directly: from every `pre` state the plan is
/// strongly `mid`-executable and ends inside `goal`.
pub fn verify_witness(
    model: &Model,
    pre: &StateSet,
    mid: &StateSet,
    goal: &StateSet,
    plan: &Plan,
) -> bool {
    match model.action_ids(plan) {
        Ok(actions) => verify_ids(model, pre, mid, goal, &actions),
        Err(_) => false,
    }
}

fn verify_ids(model: &Model, pre: &StateSet, mid: &StateSet, goal: &StateSet, actions: &[usize]) -> bool {
    pre.iter().all(|s| {
        if !model.strongly_chi_executable_by(s, actions, mid) {
            return false;
        }
        let mut reached = StateSet::singleton(model.num_states(), s);
        for &a in actions {
            reached = model.image(&reached, a);
        }
        reached.is_subset(goal)
    })
}

/// Enumerates plans of length `0..=max_len` in length-then-lex order (by
/// alphabet position) and returns the first one [`verify_witness`] accepts.
///
/// Prefixes that can no longer be extended into a witness are dropped: ones
/// where some reached state lacks the next action, and nonempty ones that
/// reach a state outside `mid`. A prefix is also dropped when the tuple of
/// per-start reached sets already occurred for a shorter or lex-smaller
/// prefix; such a prefix has exactly the same completions, so the first
/// accepted plan is unchanged.
pub fn brute_force(
    model: &Model,
    pre: &StateSet,
    mid: &StateSet,
    goal: &StateSet,
    max_len: usize,
) -> Option<Plan> {
    let n = model.num_states();
    let start: Vec<StateSet> = pre.iter().map(|s| StateSet::singleton(n, s)).collect();
    let mut seen: HashSet<Vec<StateSet>> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier: Vec<(Vec<usize>, Vec<StateSet>)> = vec![(Vec::new(), start)];

    for len in 0..=max_len {
        if let Some((plan, _)) = frontier
            .iter()
            .find(|(plan, _)| verify_ids(model, pre, mid, goal, plan))
        {
            return Some(model.plan_from_ids(plan));
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (plan, reached) in frontier {
            if !plan.is_empty() && reached.iter().any(|r| !r.is_subset(mid)) {
                continue;
            }
            for a in 0..model.alphabet().len() {
                let blocked = reached
                    .iter()
                    .any(|r| r.iter().any(|t| model.successors_of(t, a).is_empty()));
                if blocked {
                    continue;
                }
                let extended: Vec<StateSet> = reached.iter().map(|r| model.image(r, a)).collect();
                if seen.insert(extended.clone()) {
                    let mut p = plan.clone();
                    p.push(a);
                    next.push((p, extended));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    None
}

/// All plans over the alphabet of length `0..=max_len`, length-then-lex.
/// Exponential; for tests on tiny alphabets.
pub fn all_plans(model: &Model, max_len: usize) -> Vec<Plan> {
    let k = model.alphabet().len();
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|p| {
                (0..k).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out.iter().map(|ids| model.plan_from_ids(ids)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::load_model;

    fn chain() -> Model {
        // s1 -a-> s2 -a-> s3, s1 -b-> s3
        load_model(
            br#"{"states": {"s1": ["p"], "s2": [], "s3": ["q"]},
                 "transitions": [["s1","a","s2"], ["s2","a","s3"], ["s1","b","s3"]]}"#,
        )
        .unwrap()
    }

    #[test]
    fn empty_pre_is_epsilon() {
        let m = chain();
        let e = m.empty_set();
        assert_eq!(synthesize(&m, &e, &e, &e), Some(Plan::empty()));
        assert_eq!(brute_force(&m, &e, &e, &e, 0), Some(Plan::empty()));
    }

    #[test]
    fn prefers_shorter_then_lex() {
        let m = chain();
        let pre = m.set(&["s1"]).unwrap();
        let goal = m.set(&["s3"]).unwrap();
        let all = m.all_states();
        assert_eq!(synthesize(&m, &pre, &all, &goal).unwrap().to_string(), "b");
        let none = m.empty_set();
        assert_eq!(synthesize(&m, &pre, &none, &m.set(&["s2"]).unwrap()).unwrap().to_string(), "a");
    }

    #[test]
    fn depth_cap() {
        let m = chain();
        let pre = m.set(&["s1"]).unwrap();
        let goal = m.set(&["s3"]).unwrap();
        let mid = m.set(&["s2"]).unwrap();
        assert_eq!(synthesize_ids(&m, &pre, &mid, &goal, Some(0)), None);
        assert_eq!(synthesize_ids(&m, &pre, &mid, &goal, Some(1)), Some(vec![1]));
        let no_b = load_model(
            br#"{"states": {"s1": ["p"], "s2": [], "s3": ["q"]},
                 "transitions": [["s1","a","s2"], ["s2","a","s3"]]}"#,
        )
        .unwrap();
        assert_eq!(synthesize_ids(&no_b, &pre, &mid, &goal, Some(1)), None);
        assert_eq!(synthesize_ids(&no_b, &pre, &mid, &goal, Some(2)), Some(vec![0, 0]));
    }

    #[test]
    fn start_reached_again_is_subject_to_mid() {
        // s1 -a-> s2 -a-> s1 -b-> s3; s1 is the only p state
        let m = load_model(
            br#"{"states": {"s1": ["p"], "s2": ["o"], "s3": ["q"]},
                 "transitions": [["s1","a","s2"], ["s2","a","s1"], ["s2","b","s3"]]}"#,
        )
        .unwrap();
        let pre = m.set(&["s1"]).unwrap();
        let goal = m.set(&["s3"]).unwrap();
        let o = m.set(&["s2"]).unwrap();
        assert_eq!(synthesize(&m, &pre, &o, &goal).unwrap().to_string(), "ab");
        assert_eq!(synthesize(&m, &m.set(&["s2"]).unwrap(), &o, &goal).unwrap().to_string(), "b");
        // from s2 with mid = {s1} the route a·a·b would revisit s2 as an intermediate
        let s1 = m.set(&["s1"]).unwrap();
        let goal2 = m.set(&["s3"]).unwrap();
        let pre2 = m.set(&["s2"]).unwrap();
        assert_eq!(synthesize(&m, &pre2, &s1, &goal2).unwrap().to_string(), "b");
        assert!(verify_witness(&m, &pre2, &s1, &goal2, &"b".parse().unwrap()));
        assert!(!verify_witness(&m, &pre2, &s1, &goal2, &"aab".parse().unwrap()));
    }

    #[test]
    fn all_plans_order() {
        let m = chain();
        let text: Vec<String> = all_plans(&m, 2).iter().map(|p| p.to_compact()).collect();
        assert_eq!(text, vec!["", "a", "b", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn unknown_labels_are_rejected() {
        let m = chain();
        let all = m.all_states();
        assert!(!verify_witness(&m, &all, &all, &all, &"z".parse().unwrap()));
    }
}
