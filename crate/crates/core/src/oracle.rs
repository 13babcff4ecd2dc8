//! Brute-force ground truth. Nothing here uses a closed form: sums are
//! accumulated term by term with a running factorial.

use num_traits::{One, Zero};

use crate::exactnum::{BigInt, Rational};
use crate::poly::BiPoly;

/// Verification range for inputs without factorials.
pub const DEFAULT_N_MAX_POLY: u64 = 100;
/// Verification range when `n!` appears.
pub const DEFAULT_N_MAX_FACT: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationStatus {
    AllMatch,
    FirstMismatch {
        n: u64,
        expected: Rational,
        got: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked_upto: u64,
    pub status: VerificationStatus,
}

impl VerificationReport {
    pub fn is_match(&self) -> bool {
        self.status == VerificationStatus::AllMatch
    }
}

/// `1^k + 2^k + … + n^k` by direct summation.
pub fn power_sum(k: u32, n: u64) -> BigInt {
    (1..=n).map(|i| BigInt::from(i).pow(k)).sum()
}

/// `p(1, 1!) + p(2, 2!) + … + p(n, n!)`.
pub fn sum_oracle(p: &BiPoly, n: u64) -> Rational {
    FactorialWalk::new()
        .take(n as usize)
        .map(|(i, fact)| p.eval_with_factorial(i, &fact))
        .sum()
}

/// Compares `q(n, n!)` against the running sum of `p` for `n = 1..=n_max`,
/// stopping at the first disagreement.
pub fn verify_closed_form(p: &BiPoly, q: &BiPoly, n_max: u64) -> VerificationReport {
    let mut running = Rational::zero();
    for (n, fact) in FactorialWalk::new().take(n_max as usize) {
        running += p.eval_with_factorial(n, &fact);
        let got = q.eval_with_factorial(n, &fact);
        if got != running {
            return VerificationReport {
                checked_upto: n_max,
                status: VerificationStatus::FirstMismatch {
                    n,
                    expected: running,
                    got,
                },
            };
        }
    }
    VerificationReport {
        checked_upto: n_max,
        status: VerificationStatus::AllMatch,
    }
}

/// Default verification depth for a candidate identity between `p` and `q`.
pub fn default_n_max(p: &BiPoly, q: &BiPoly) -> u64 {
    if p.is_univariate() && q.is_univariate() {
        DEFAULT_N_MAX_POLY
    } else {
        DEFAULT_N_MAX_FACT
    }
}

/// Yields `(n, n!)` for `n = 1, 2, 3, …`.
#[derive(Debug, Clone)]
pub struct FactorialWalk {
    n: u64,
    fact: BigInt,
}

impl FactorialWalk {
    pub fn new() -> Self {
        Self {
            n: 0,
            fact: BigInt::one(),
        }
    }
}

impl Default for FactorialWalk {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for FactorialWalk {
    type Item = (u64, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        self.n += 1;
        self.fact *= self.n;
        Some((self.n, self.fact.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int_factorial, rat, rat_int};
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> BiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn sum_examples() {
        assert_eq!(sum_oracle(&p("n"), 100), rat_int(5050));
        assert_eq!(sum_oracle(&p("n!"), 3), rat_int(9));
        assert_eq!(sum_oracle(&p("n*n!"), 3), rat_int(23));
    }

    #[test]
    fn verify_examples() {
        let r = verify_closed_form(&p("n"), &p("1/2*n^2 + 1/2*n"), 100);
        assert_eq!(r, VerificationReport { checked_upto: 100, status: VerificationStatus::AllMatch });

        let r = verify_closed_form(&p("n!"), &p("n!"), 5);
        assert_eq!(
            r.status,
            VerificationStatus::FirstMismatch { n: 2, expected: rat_int(3), got: rat_int(2) }
        );

        assert!(verify_closed_form(&p("n*n!"), &p("n*n! + n! - 1"), 30).is_match());
    }

    #[test]
    fn mismatch_is_first_failure() {
        // agrees for n = 1, 2 and fails from n = 3 on
        let q = &p("1/2*n^2 + 1/2*n") + &p("(n-1)*(n-2)");
        let r = verify_closed_form(&p("n"), &q, 50);
        assert!(matches!(r.status, VerificationStatus::FirstMismatch { n: 3, .. }));
    }

    #[test]
    fn factorial_walk_matches_direct() {
        for (n, f) in FactorialWalk::new().take(25) {
            assert_eq!(f, int_factorial(n));
        }
    }

    #[test]
    fn default_depths() {
        assert_eq!(default_n_max(&p("n"), &p("n^2")), 100);
        assert_eq!(default_n_max(&p("n"), &p("n!")), 30);
    }

    #[test]
    fn power_sums_small() {
        assert_eq!(power_sum(2, 3), BigInt::from(14));
        assert_eq!(power_sum(0, 7), BigInt::from(7));
        assert_eq!(power_sum(5, 0), BigInt::from(0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn incremental_consistency(
            terms in proptest::collection::vec(((0u32..3, 0u32..3), -9i64..9, 1i64..4), 0..5)
        ) {
            let q = BiPoly::from_terms(terms.into_iter().map(|(e, a, b)| (e, rat(a, b))));
            let mut prev = sum_oracle(&q, 1);
            for n in 2..=60u64 {
                let cur = sum_oracle(&q, n);
                prop_assert_eq!(&cur, &(prev + q.eval_fact(n)));
                prev = cur;
            }
        }
    }
}
