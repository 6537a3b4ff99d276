//! Truncated p-adic integers `Z/p^M`.

use crate::error::{invalid, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

use super::rational::{mod_inverse, reduce_mod_pk, val_p_int, ExactRational};
use super::{pow_p, Ring};

/// An element of `Z_p` known modulo `p^precision`.
///
/// Binary operations return a result whose precision is the minimum of the
/// operands' precisions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedPadic {
    p: u64,
    precision: u32,
    residue: BigInt,
}

/// Valuation of a truncated p-adic integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PadicValuation {
    /// The valuation is known exactly.
    Exact(i64),
    /// The element vanishes modulo `p^M`; only `v ≥ M` is known.
    AtLeast(i64),
}

impl PadicValuation {
    /// The largest integer known to be `≤` the valuation.
    pub fn lower_bound(self) -> i64 {
        match self {
            PadicValuation::Exact(v) | PadicValuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for PadicValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicValuation::Exact(v) => write!(f, "{v}"),
            PadicValuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

impl TruncatedPadic {
    pub fn new(p: u64, precision: u32, value: &BigInt) -> Self {
        let residue = value.mod_floor(&pow_p(p, precision));
        TruncatedPadic { p, precision, residue }
    }

    pub fn from_i64(p: u64, precision: u32, value: i64) -> Self {
        Self::new(p, precision, &BigInt::from(value))
    }

    /// Embeds a p-integral rational; fails if the denominator is divisible by `p`.
    pub fn from_rational(x: &ExactRational, p: u64, precision: u32) -> Result<Self> {
        let residue = reduce_mod_pk(x, p, precision)?;
        Ok(TruncatedPadic { p, precision, residue })
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        Self::from_i64(p, precision, 0)
    }

    pub fn one(p: u64, precision: u32) -> Self {
        Self::from_i64(p, precision, 1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Canonical representative in `[0, p^M)`.
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    /// Representative in `(-p^M/2, p^M/2]`.
    pub fn symmetric_residue(&self) -> BigInt {
        let m = pow_p(self.p, self.precision);
        if &self.residue * 2 > m {
            &self.residue - m
        } else {
            self.residue.clone()
        }
    }

    /// Reduces to a lower precision (or keeps the current one if `m` is larger).
    pub fn truncate(&self, m: u32) -> Self {
        let m = m.min(self.precision);
        Self::new(self.p, m, &self.residue)
    }

    pub fn valuation(&self) -> PadicValuation {
        match val_p_int(&self.residue, self.p).finite() {
            Some(v) => PadicValuation::Exact(v),
            None => PadicValuation::AtLeast(self.precision as i64),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.precision > 0 && !(&self.residue % self.p).is_zero()
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "p-adic operands over different primes");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(self.p, self.precision.min(o.precision), &(&self.residue + &o.residue))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(self.p, self.precision.min(o.precision), &(&self.residue - &o.residue))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(self.p, self.precision.min(o.precision), &(&self.residue * &o.residue))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.precision, &-&self.residue)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.precision);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnitDivision);
        }
        let m = pow_p(self.p, self.precision);
        let inv = mod_inverse(&self.residue, &m).ok_or(Error::NonUnitDivision)?;
        Ok(TruncatedPadic { p: self.p, precision: self.precision, residue: inv })
    }

    /// Division by a unit; dividing by a non-unit is an error.
    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o);
        let m = self.precision.min(o.precision);
        Ok(self.truncate(m).mul(&o.truncate(m).inverse()?))
    }

    /// Exact division by `p^k`, losing `k` digits of precision.
    pub fn div_p_pow(&self, k: u32) -> Result<Self> {
        if k > self.precision {
            return invalid("cannot divide by more powers of p than the precision");
        }
        let pk = pow_p(self.p, k);
        let (q, r) = self.residue.div_rem(&pk);
        if !r.is_zero() {
            return Err(Error::NotDivisible(format!("residue not divisible by {}^{k}", self.p)));
        }
        Ok(Self::new(self.p, self.precision - k, &q))
    }

    /// Multiplication by `p^k`, gaining `k` digits of absolute precision.
    pub fn mul_p_pow(&self, k: u32) -> Self {
        Self::new(self.p, self.precision + k, &(&self.residue * pow_p(self.p, k)))
    }

    /// Residue modulo `p`.
    pub fn mod_p(&self) -> u64 {
        let r = &self.residue % self.p;
        r.try_into().expect("small residue")
    }
}

impl fmt::Display for TruncatedPadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.precision)
    }
}

impl Ring for TruncatedPadic {
    fn zero_like(&self) -> Self {
        Self::zero(self.p, self.precision)
    }
    fn one_like(&self) -> Self {
        Self::one(self.p, self.precision)
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::new(self.p, self.precision, n)
    }
    fn add(&self, o: &Self) -> Self {
        TruncatedPadic::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TruncatedPadic::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TruncatedPadic::mul(self, o)
    }
    fn neg(&self) -> Self {
        TruncatedPadic::neg(self)
    }
    fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
    fn same_ring(&self, o: &Self) -> bool {
        self.p == o.p
    }
}
