use std::collections::HashMap;

use crate::model::{Model, ModelError, Plan, StateSet};
use crate::syntax::Formula;

use super::synth::synthesize_ids;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Atom(String),
    Top,
    Bot,
    Neg(usize),
    And(usize, usize),
    Khm(usize, usize, usize),
    Univ(usize),
}

/// A formula flattened into a DAG of distinct subformulas, children first.
///
/// Running it against a model computes each subformula's extension once.
#[derive(Debug, Clone)]
pub struct Program {
    nodes: Vec<Node>,
    subformulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
    root: usize,
}

impl Program {
    pub fn compile(f: &Formula) -> Program {
        let mut program = Program {
            nodes: Vec::new(),
            subformulas: Vec::new(),
            index: HashMap::new(),
            root: 0,
        };
        program.root = program.intern(f);
        program
    }

    fn intern(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.index.get(f) {
            return i;
        }
        let node = match f {
            Formula::Atom(name) => Node::Atom(name.clone()),
            Formula::Top => Node::Top,
            Formula::Bot => Node::Bot,
            Formula::Neg(a) => Node::Neg(self.intern(a)),
            Formula::Univ(a) => Node::Univ(self.intern(a)),
            Formula::And(a, b) => {
                let a = self.intern(a);
                Node::And(a, self.intern(b))
            }
            Formula::Khm(a, b, c) => {
                let a = self.intern(a);
                let b = self.intern(b);
                Node::Khm(a, b, self.intern(c))
            }
        };
        let i = self.nodes.len();
        self.nodes.push(node);
        self.subformulas.push(f.clone());
        self.index.insert(f.clone(), i);
        i
    }

    pub fn formula(&self) -> &Formula {
        &self.subformulas[self.root]
    }

    /// Whether any subformula looks at transitions or other states.
    pub fn is_modal(&self) -> bool {
        self.nodes
            .iter()
            .any(|n| matches!(n, Node::Khm(..) | Node::Univ(_)))
    }

    /// Whether truth depends on the transition relation.
    pub fn uses_transitions(&self) -> bool {
        self.nodes.iter().any(|n| matches!(n, Node::Khm(..)))
    }

    pub fn run(&self, model: &Model) -> Evaluation {
        self.run_bounded(model, None)
    }

    /// Like [`Program::run`] but `Khm` only considers plans of at most
    /// `max_plan_len` actions.
    pub fn run_bounded(&self, model: &Model, max_plan_len: Option<usize>) -> Evaluation {
        let mut eval = Evaluation {
            root: self.root,
            sets: Vec::with_capacity(self.nodes.len()),
            witnesses: vec![None; self.nodes.len()],
        };
        self.run_into(model, max_plan_len, &mut eval);
        eval
    }

    /// Evaluates into `eval`, reusing its buffers.
    pub(crate) fn run_into(&self, model: &Model, max_plan_len: Option<usize>, eval: &mut Evaluation) {
        let n = model.num_states();
        eval.root = self.root;
        eval.sets.clear();
        eval.witnesses.clear();
        eval.witnesses.resize(self.nodes.len(), None);
        for (i, node) in self.nodes.iter().enumerate() {
            let set = match node {
                Node::Atom(name) => model.valuation(name),
                Node::Top => StateSet::full(n),
                Node::Bot => StateSet::empty(n),
                Node::Neg(a) => eval.sets[*a].complement(),
                Node::And(a, b) => {
                    let mut s = eval.sets[*a].clone();
                    s.intersect_with(&eval.sets[*b]);
                    s
                }
                Node::Univ(a) => {
                    if eval.sets[*a].is_full() {
                        StateSet::full(n)
                    } else {
                        StateSet::empty(n)
                    }
                }
                Node::Khm(pre, mid, goal) => {
                    let plan = synthesize_ids(
                        model,
                        &eval.sets[*pre],
                        &eval.sets[*mid],
                        &eval.sets[*goal],
                        max_plan_len,
                    );
                    let holds = plan.is_some();
                    eval.witnesses[i] = plan;
                    if holds {
                        StateSet::full(n)
                    } else {
                        StateSet::empty(n)
                    }
                }
            };
            eval.sets.push(set);
        }
    }
}

/// Extensions of every subformula of a [`Program`] on one model.
#[derive(Debug, Clone, Default)]
pub struct Evaluation {
    root: usize,
    sets: Vec<StateSet>,
    witnesses: Vec<Option<Vec<usize>>>,
}

impl Evaluation {
    pub fn extension(&self) -> &StateSet {
        &self.sets[self.root]
    }

    /// Every `Khm` subformula with its witness plan, `None` when false.
    pub fn khm_witnesses(&self, program: &Program, model: &Model) -> Vec<(Formula, Option<Plan>)> {
        program
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| matches!(n, Node::Khm(..)))
            .map(|(i, _)| {
                let plan = self.witnesses[i].as_ref().map(|ids| model.plan_from_ids(ids));
                (program.subformulas[i].clone(), plan)
            })
            .collect()
    }
}

/// `{ s | model, s ⊨ f }`.
pub fn extension(model: &Model, f: &Formula) -> StateSet {
    Program::compile(f).run(model).extension().clone()
}

/// Truth of `f` at the state named `state`.
pub fn eval(model: &Model, state: &str, f: &Formula) -> Result<bool, ModelError> {
    let s = model.state_index(state)?;
    Ok(extension(model, f).contains(s))
}

/// Truth of `f` at every state of `model`.
pub fn valid_on(model: &Model, f: &Formula) -> bool {
    extension(model, f).is_full()
}
