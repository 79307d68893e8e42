mod common;

use std::collections::BTreeSet;

use common::{arb_formula, f};
use khm::syntax::{parse, Formula};
use proptest::prelude::*;

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

#[test]
fn parse_examples() {
    assert_eq!(f("Khm(p, o, q)"), Formula::khm(atom("p"), atom("o"), atom("q")));
    assert_eq!(f("Kh(p, q)"), Formula::khm(atom("p"), Formula::Top, atom("q")));
    assert_eq!(f("U(!p)"), Formula::univ(Formula::neg(atom("p"))));
    assert_eq!(
        f("p -> q & r"),
        Formula::neg(Formula::and(
            atom("p"),
            Formula::neg(Formula::and(atom("q"), atom("r")))
        ))
    );
}

#[test]
fn parse_precedence_and_associativity() {
    assert_eq!(f("p -> q -> r"), f("p -> (q -> r)"));
    assert_eq!(f("p | q & r"), f("p | (q & r)"));
    assert_eq!(f("!p & q"), f("(!p) & q"));
    assert_eq!(f("U(p) & q"), f("(U(p)) & q"));
    assert_eq!(f("p <-> q -> r"), f("p <-> (q -> r)"));
    assert_eq!(
        f("p | q"),
        Formula::neg(Formula::and(Formula::neg(atom("p")), Formula::neg(atom("q"))))
    );
    assert_eq!(
        f("p <-> q"),
        Formula::and(Formula::imp(atom("p"), atom("q")), Formula::imp(atom("q"), atom("p")))
    );
    assert_eq!(f("p'"), atom("p'"));
}

#[test]
fn parse_errors_carry_offset_and_expectations() {
    let e = parse("p & ").unwrap_err();
    assert_eq!(e.offset, 4);
    assert!(!e.expected.is_empty());
    let e = parse("Khm(p, q)").unwrap_err();
    assert_eq!(e.offset, 8);
    assert!(parse("true2 & U").is_err());
    assert!(parse("P").is_err());
    assert!(parse("p q").is_err());
    assert!(parse("").is_err());
}

#[test]
fn render_examples() {
    assert_eq!(Formula::khm(atom("p"), Formula::Top, atom("q")).render(), "Kh(p, q)");
    assert_eq!(Formula::neg(Formula::and(atom("p"), atom("q"))).render(), "!(p & q)");
    assert_eq!(Formula::univ(atom("p")).render(), "U(p)");
}

#[test]
fn substitute_examples() {
    assert_eq!(
        f("Khm(p, false, q)").substitute("q", &f("p & q")),
        f("Khm(p, false, p & q)")
    );
    assert_eq!(atom("r").substitute("p", &Formula::Top), atom("r"));
    assert_eq!(f("U(p)").substitute("p", &f("!p")), f("U(!p)"));
}

#[test]
fn letters_examples() {
    let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    assert_eq!(f("Khm(p, o, q)").letters(), set(&["p", "o", "q"]));
    assert_eq!(Formula::Top.letters(), set(&[]));
    assert_eq!(f("!(p & p)").letters(), set(&["p"]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn render_parse_round_trip(g in arb_formula(5)) {
        prop_assert_eq!(parse(&g.render()).unwrap(), g);
    }

    #[test]
    fn substitution_homomorphism(g in arb_formula(4), h in arb_formula(2), which in 0usize..3) {
        let x = ["p", "q", "r"][which];
        let direct = g.substitute(x, &h);
        let via_text = parse(&g.render()).unwrap().substitute(x, &h);
        prop_assert_eq!(parse(&direct.render()).unwrap(), via_text);
    }

    #[test]
    fn substitution_removes_the_letter(g in arb_formula(4)) {
        let out = g.substitute("p", &f("q & r"));
        prop_assert!(!out.letters().contains("p"));
    }
}
