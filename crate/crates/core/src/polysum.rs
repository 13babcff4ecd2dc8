//! Closed forms for sums of polynomials, the difference operator, and the
//! decision procedure for "is `g` the running sum of an integer polynomial".

use num_traits::{One, Zero};

use crate::exactnum::Rational;
use crate::faulhaber::{faulhaber_row, FaulhaberError};
use crate::poly::UniPoly;

/// Returns `g` with `g(n) = f(1) + … + f(n)` for every `n ≥ 1` and `g(0) = 0`.
///
/// The constant term contributes `a_0·n`; each `a_k·x^k` contributes `a_k`
/// times the power-sum row for `k`.
pub fn synth_poly_sum(f: &UniPoly) -> Result<UniPoly, FaulhaberError> {
    let mut g = UniPoly::zero();
    for (k, a) in f.terms() {
        let part = if k == 0 {
            UniPoly::x()
        } else {
            faulhaber_row(k)?.poly()
        };
        g = &g + &part.scale(a);
    }
    Ok(g)
}

/// `g(x) - g(x - 1)`.
pub fn delta(g: &UniPoly) -> UniPoly {
    g - &g.shift_x()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    /// `delta(g)` has a non-integer coefficient at this exponent.
    NonIntegralDelta { exponent: u32, delta: UniPoly },
    /// `g(1)` differs from `f(1)`, so the sum cannot start at `f(1)`.
    BaseCaseMismatch { g1: Rational, f1: Rational },
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::NonIntegralDelta { exponent, delta } => write!(
                f,
                "non-integral delta coefficient at n^{exponent} (delta = {delta})"
            ),
            RejectReason::BaseCaseMismatch { g1, f1 } => {
                write!(f, "base case mismatch g(1) = {g1}, f(1) = {f1}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipVerdict {
    Accepted { witness_f: UniPoly },
    Rejected(RejectReason),
}

impl MembershipVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, MembershipVerdict::Accepted { .. })
    }
}

/// Decides whether some `f ∈ Z[x]` has `g(n) = f(1) + … + f(n)` for all `n ≥ 1`.
///
/// The only candidate is `f = delta(g)`; it works exactly when its
/// coefficients are integers and `g(1) = f(1)`, after which telescoping
/// carries the identity to every `n`.
pub fn membership_sz(g: &UniPoly) -> MembershipVerdict {
    let f = delta(g);
    let bad = f.terms().find(|(_, c)| !c.is_integer()).map(|(k, _)| k);
    if let Some(exponent) = bad {
        return MembershipVerdict::Rejected(RejectReason::NonIntegralDelta {
            exponent,
            delta: f,
        });
    }
    let one = Rational::one();
    let (g1, f1) = (g.eval(&one), f.eval(&one));
    if g1 != f1 {
        return MembershipVerdict::Rejected(RejectReason::BaseCaseMismatch { g1, f1 });
    }
    MembershipVerdict::Accepted { witness_f: f }
}

/// `g(0) = 0`: the equivalent single-point form of the base-case check.
pub fn vanishes_at_zero(g: &UniPoly) -> bool {
    g.coeff(0).is_zero()
}
