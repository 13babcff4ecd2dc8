//! Exact closed-form synthesis for running sums.
//!
//! Given a term `f(n)` that is a polynomial in `n`, or in `n` and `n!`, the
//! engine looks for a `g` of the same shape with `f(1) + … + f(n) = g(n)` for
//! every `n ≥ 1`. Polynomial terms always have one ([`polysum`]); factorial
//! terms are searched for inside a degree box and either yield a verified
//! closed form or an exact certificate that the box contains none
//! ([`factsum`]). All arithmetic is exact.

pub mod exactnum;
pub mod factsum;
pub mod faulhaber;
pub mod oracle;
pub mod poly;
pub mod polysum;
pub mod weighted;

pub use exactnum::{BigInt, ExactError, ExactMatrix, LinearSolution, Rational};
pub use factsum::{synth_fact_sum, DegreeBounds, FactSumError, SynthesisResult};
pub use faulhaber::{faulhaber_row, FaulhaberError, FaulhaberRow};
pub use oracle::{sum_oracle, verify_closed_form, VerificationReport, VerificationStatus};
pub use poly::{format_canonical, parse_poly, BiPoly, ParseError, UniPoly};
pub use polysum::{delta, membership_sz, synth_poly_sum, MembershipVerdict, RejectReason};
pub use weighted::{
    synth_weighted, synth_weighted_periodic, synth_weighted_polynomial, weighted_sum_oracle,
    ResidueClosedForms, WeightError, WeightSpec,
};
