// End-to-end runs through the public API: parse, synthesize, format, verify.

use sumsynth::{
    format_canonical, parse_poly, synth_fact_sum, synth_poly_sum, sum_oracle, verify_closed_form,
    BigInt, DegreeBounds, Rational, SynthesisResult,
};

fn closed(expr: &str) -> String {
    let p = parse_poly(expr).unwrap();
    match synth_fact_sum(&p, DegreeBounds::default_for(&p)).unwrap() {
        SynthesisResult::ClosedForm { q, .. } => format_canonical(&q),
        other => panic!("{expr}: {other:?}"),
    }
}

#[test]
fn factorial_identities() {
    assert_eq!(closed("n*n!"), "n*n! + n! - 1");
    assert_eq!(closed("n^2*n! + n!"), "n^2*n! + n*n!");
    // A purely polynomial summand goes through the same ansatz.
    assert_eq!(closed("n"), "1/2*n^2 + 1/2*n");
    assert_eq!(closed("0"), "0");
}

#[test]
fn polynomial_path_agrees_with_ansatz_path() {
    for expr in ["n^3", "2*n^2 - 3*n + 7", "(n - 4)^4"] {
        let p = parse_poly(expr).unwrap();
        let g = synth_poly_sum(&p.to_uni().unwrap()).unwrap();
        assert_eq!(format_canonical(&g.to_bi()), closed(expr), "{expr}");
    }
}

#[test]
fn oracle_checks_what_was_printed() {
    let p = parse_poly("n^2*n!").unwrap();
    let SynthesisResult::NoSolutionWithinBounds { .. } =
        synth_fact_sum(&p, DegreeBounds::new(1, 1)).unwrap()
    else {
        panic!("box (1,1) is too small for n^2*n!");
    };
    // The oracle does not care about bounds.
    assert_eq!(sum_oracle(&p, 3), Rational::from_integer(BigInt::from(1 + 8 + 54)));

    let q = parse_poly(&closed("n*n!")).unwrap();
    assert!(verify_closed_form(&parse_poly("n*n!").unwrap(), &q, 30).is_match());
}
