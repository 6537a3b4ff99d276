//! Number kernel: exact rationals with p-adic valuation, truncated p-adic
//! integers, totally ramified extensions, prime fields and Teichmüller lifts.

mod eisenstein;
mod fp;
mod padic;
mod rational;
mod residue;
mod teichmuller;

pub use eisenstein::{eisenstein_make_a, EisensteinElement};
pub use fp::PrimeFieldElement;
pub use padic::{PadicValuation, TruncatedPadic};
pub use rational::{
    is_p_integral, rat, reduce_mod_pk, val_p, val_p_int, ExactRational, Valuation,
};
pub use residue::ResidueRing;
pub use teichmuller::{teichmuller, teichmuller_padic};

use num_bigint::BigInt;
use std::fmt::Debug;

/// Commutative ring operations used by the generic polynomial containers.
///
/// Elements carry their ring parameters (prime, precision, ...), so the
/// constructors take an existing element as a template.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: &BigInt) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Whether `other` lives in the same ring (same prime, ramification, ...).
    fn same_ring(&self, other: &Self) -> bool;
}

/// `p^k` as a big integer.
pub fn pow_p(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// Deterministic primality test for the small primes used as parameters.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
