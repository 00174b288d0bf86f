mod support;

const CASES: u32 = 1000;

fn check(name: &str, result: Result<(), String>) {
    if let Err(e) = result {
        panic!("{name}: {e}");
    }
}

#[test]
fn ring_axioms() {
    check("ring axioms", support::run(CASES, support::polys(3, 4, 5), support::ring_axioms));
}

#[test]
fn leibniz_rule() {
    check("leibniz", support::run(CASES, (support::polys(2, 4, 5), 0usize..4), support::leibniz));
}

#[test]
fn mixed_partials_commute() {
    check("schwarz", support::run(CASES, (support::polys(1, 4, 6), 0usize..4, 0usize..4), support::schwarz));
}

#[test]
fn chain_rule() {
    check("chain rule", support::run(CASES, support::chain_rule_strategy(), support::chain_rule));
}

#[test]
fn substitution_is_a_ring_map() {
    check(
        "substitution",
        support::run(CASES, support::substitution_strategy(), support::substitution_homomorphism),
    );
}

#[test]
fn leading_term_of_jacobian_determinant() {
    check("lex law", support::run(CASES, support::lex_strategy(), support::lex_law));
}

#[test]
fn parse_print_round_trip() {
    check("round trip", support::run(CASES, support::polys(1, 4, 6), support::roundtrip));
}
