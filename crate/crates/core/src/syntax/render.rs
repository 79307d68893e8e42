use super::Formula;

/// Renders with minimal parentheses. `Khm(a, true, b)` is printed as
/// `Kh(a, b)`; desugared connectives stay desugared.
pub(super) fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::And(a, b) => {
            // `&` is left associative: only a conjunction on the right needs parens.
            write_formula(a, out);
            out.push_str(" & ");
            write_operand(b, out);
        }
        _ => write_operand(f, out),
    }
}

fn write_operand(f: &Formula, out: &mut String) {
    match f {
        Formula::Atom(name) => out.push_str(name),
        Formula::Top => out.push_str("true"),
        Formula::Bot => out.push_str("false"),
        Formula::Neg(inner) => {
            out.push('!');
            write_operand(inner, out);
        }
        Formula::Univ(inner) => {
            out.push_str("U(");
            write_formula(inner, out);
            out.push(')');
        }
        Formula::Khm(pre, mid, goal) if **mid == Formula::Top => {
            out.push_str("Kh(");
            write_formula(pre, out);
            out.push_str(", ");
            write_formula(goal, out);
            out.push(')');
        }
        Formula::Khm(pre, mid, goal) => {
            out.push_str("Khm(");
            write_formula(pre, out);
            out.push_str(", ");
            write_formula(mid, out);
            out.push_str(", ");
            write_formula(goal, out);
            out.push(')');
        }
        Formula::And(..) => {
            out.push('(');
            write_formula(f, out);
            out.push(')');
        }
    }
}
