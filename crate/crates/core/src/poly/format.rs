use std::fmt::Write;

use num_traits::{One, Signed};

use super::BiPoly;
use crate::exactnum::Rational;

/// Renders `q` in the canonical text form, e.g. `n*n! + n! - 1`.
///
/// Terms are ordered by `n!`-degree, then `n`-degree, both descending. This
/// output is an interchange format: [`super::parse_poly`] reads it back to the
/// same polynomial.
pub fn format_canonical(q: &BiPoly) -> String {
    if q.is_zero() {
        return "0".to_owned();
    }
    let mut terms: Vec<_> = q.terms().collect();
    terms.sort_by(|((a1, b1), _), ((a2, b2), _)| b2.cmp(b1).then(a2.cmp(a1)));

    let mut out = String::new();
    for (i, ((a, b), c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let mono = monomial_text(a, b);
        if mono.is_empty() {
            write_rational(&mut out, &mag);
        } else {
            if !mag.is_one() {
                write_rational(&mut out, &mag);
                out.push('*');
            }
            out.push_str(&mono);
        }
    }
    out
}

fn write_rational(out: &mut String, r: &Rational) {
    if r.is_integer() {
        let _ = write!(out, "{}", r.numer());
    } else {
        let _ = write!(out, "{}/{}", r.numer(), r.denom());
    }
}

fn monomial_text(a: u32, b: u32) -> String {
    let mut parts = Vec::with_capacity(2);
    match a {
        0 => {}
        1 => parts.push("n".to_owned()),
        _ => parts.push(format!("n^{a}")),
    }
    match b {
        0 => {}
        1 => parts.push("n!".to_owned()),
        _ => parts.push(format!("n!^{b}")),
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    #[test]
    fn canonical_examples() {
        let q = BiPoly::from_terms([
            ((1, 1), rat_int(1)),
            ((0, 1), rat_int(1)),
            ((0, 0), rat_int(-1)),
        ]);
        assert_eq!(format_canonical(&q), "n*n! + n! - 1");
        let g = BiPoly::from_terms([((2, 0), rat(1, 2)), ((1, 0), rat(1, 2))]);
        assert_eq!(format_canonical(&g), "1/2*n^2 + 1/2*n");
        assert_eq!(format_canonical(&BiPoly::zero()), "0");
    }

    #[test]
    fn signs_and_units() {
        let q = BiPoly::from_terms([
            ((3, 2), rat_int(-1)),
            ((0, 2), rat(-7, 3)),
            ((5, 0), rat_int(1)),
            ((0, 0), rat_int(1)),
        ]);
        assert_eq!(format_canonical(&q), "-n^3*n!^2 - 7/3*n!^2 + n^5 + 1");
        assert_eq!(format_canonical(&BiPoly::constant(rat(-1, 2))), "-1/2");
        assert_eq!(format_canonical(&BiPoly::constant(rat_int(-1))), "-1");
    }
}
