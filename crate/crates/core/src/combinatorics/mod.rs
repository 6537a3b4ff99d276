//! Binomial and Stirling primitives, the sums `M_{u,n}`, nice polynomial
//! families with their functionals `T_w`, and verifiers for the binomial-sum
//! identities.

mod bigm;
mod binom;
mod family;
mod identities;
mod poly;
mod stirling;

pub use bigm::{bigM, bigm_from_row, less, more};
pub use binom::{
    binom_int, binom_rat, binom_row, dbinom_rat, factorial, falling, falling_int, PascalTable,
};
pub use family::{binomial_moment, CoefficientFamily, FamilyRule, NiceFamily, T_functional};
pub use identities::{
    first_order_deviation, congruent_pairs, kill_moments, verify_identity, verify_span_invariant,
    IdentityGrid, IdentityId, IdentityReport, SpanReport,
};
pub use poly::{BinomPolynomial, QPoly};
pub use stirling::{stirling1, stirling1_table, stirling2, stirling2_table};
