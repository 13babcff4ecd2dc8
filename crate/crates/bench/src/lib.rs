//! Inputs shared by the criterion benchmarks.

use sumsynth::{parse_poly, BiPoly, UniPoly};

/// Factorial-polynomial terms with known closed forms, paired with the
/// smallest degree box that contains the answer.
pub const FACTORIAL_CASES: &[(&str, (u32, u32))] = &[
    ("n*n!", (1, 1)),
    ("n^2*n! + n!", (2, 1)),
    ("n", (2, 0)),
];

pub fn factorial_case(expr: &str) -> BiPoly {
    parse_poly(expr).expect("benchmark fixture parses")
}

/// A dense integer polynomial of the given degree with small coefficients.
pub fn dense_poly(degree: u32) -> UniPoly {
    let coeffs: Vec<i64> = (0..=degree as i64).map(|k| (k * 7 % 11) - 5).collect();
    UniPoly::from_ints(&coeffs)
}
