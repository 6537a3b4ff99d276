//! Exact rationals and their p-adic valuations.

use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use super::{pow_p, Ring};

/// Arbitrary-precision rational number in lowest terms.
pub type ExactRational = BigRational;

/// A p-adic valuation: an integer, or `+∞` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// Whether the valuation is at least `bound`.
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// p-adic valuation of an integer (`Infinite` for zero).
pub fn val_p_int(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a rational number.
///
/// `val_p(50/3, 5) = 2`, `val_p(-20/4, 5) = 1`, `val_p(0, p) = ∞`.
pub fn val_p(x: &ExactRational, p: u64) -> Valuation {
    if Zero::is_zero(x) {
        return Valuation::Infinite;
    }
    let vn = val_p_int(x.numer(), p).finite().unwrap_or(0);
    let vd = val_p_int(x.denom(), p).finite().unwrap_or(0);
    Valuation::Finite(vn - vd)
}

/// Whether `x` lies in `Z_(p)`.
pub fn is_p_integral(x: &ExactRational, p: u64) -> bool {
    val_p(x, p).at_least(0)
}

/// Image of a p-integral rational in `Z/p^k`, as a residue in `[0, p^k)`.
pub fn reduce_mod_pk(x: &ExactRational, p: u64, k: u32) -> Result<BigInt> {
    if !is_p_integral(x, p) {
        return invalid(format!("{x} is not {p}-integral"));
    }
    let m = pow_p(p, k);
    let d = x.denom().mod_floor(&m);
    let inv = mod_inverse(&d, &m).expect("denominator is a unit");
    Ok((x.numer() * inv).mod_floor(&m))
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn same_ring(&self, _: &Self) -> bool {
        true
    }
}
