use std::collections::HashMap;

use crate::syntax::Formula;

/// Whether `f` is a substitution instance of a propositional tautology.
///
/// Atoms, `Khm(..)` and `U(..)` subformulas are opaque variables (equal
/// subformulas share a variable); `true` and `false` are constants. Decided
/// by truth table.
pub fn is_tautology(f: &Formula) -> bool {
    let mut vars: HashMap<&Formula, usize> = HashMap::new();
    collect_vars(f, &mut vars);
    let k = vars.len();
    assert!(k < 64, "{k} propositional variables is beyond truth-table range");
    (0..1u64 << k).all(|assignment| truth(f, &vars, assignment))
}

fn collect_vars<'f>(f: &'f Formula, vars: &mut HashMap<&'f Formula, usize>) {
    match f {
        Formula::Top | Formula::Bot => {}
        Formula::Neg(a) => collect_vars(a, vars),
        Formula::And(a, b) => {
            collect_vars(a, vars);
            collect_vars(b, vars);
        }
        Formula::Atom(_) | Formula::Khm(..) | Formula::Univ(_) => {
            let next = vars.len();
            vars.entry(f).or_insert(next);
        }
    }
}

fn truth(f: &Formula, vars: &HashMap<&Formula, usize>, assignment: u64) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Neg(a) => !truth(a, vars, assignment),
        Formula::And(a, b) => truth(a, vars, assignment) && truth(b, vars, assignment),
        _ => assignment & (1 << vars[f]) != 0,
    }
}
