//! The prime field `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::fmt;

use super::Ring;

/// Element of `F_p`, stored as a residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeFieldElement {
    p: u64,
    value: u64,
}

impl PrimeFieldElement {
    pub fn new(p: u64, value: i64) -> Self {
        PrimeFieldElement { p, value: value.rem_euclid(p as i64) as u64 }
    }

    pub fn from_bigint(p: u64, value: &BigInt) -> Self {
        let v = value.mod_floor(&BigInt::from(p)).to_u64().expect("small residue");
        PrimeFieldElement { p, value: v }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        PrimeFieldElement { p: self.p, value: (self.value + o.value) % self.p }
    }

    pub fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        PrimeFieldElement { p: self.p, value: (self.value + self.p - o.value) % self.p }
    }

    pub fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        PrimeFieldElement { p: self.p, value: self.value * o.value % self.p }
    }

    pub fn neg(self) -> Self {
        PrimeFieldElement { p: self.p, value: (self.p - self.value) % self.p }
    }

    pub fn pow(self, mut k: u64) -> Self {
        let mut base = self;
        let mut acc = PrimeFieldElement { p: self.p, value: 1 % self.p };
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.p - 2))
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for PrimeFieldElement {
    fn zero_like(&self) -> Self {
        PrimeFieldElement { p: self.p, value: 0 }
    }
    fn one_like(&self) -> Self {
        PrimeFieldElement { p: self.p, value: 1 }
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::from_bigint(self.p, n)
    }
    fn add(&self, o: &Self) -> Self {
        PrimeFieldElement::add(*self, *o)
    }
    fn sub(&self, o: &Self) -> Self {
        PrimeFieldElement::sub(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        PrimeFieldElement::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        PrimeFieldElement::neg(*self)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn same_ring(&self, o: &Self) -> bool {
        self.p == o.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_inverse() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p as i64 {
                let x = PrimeFieldElement::new(p, a);
                assert_eq!(x.mul(x.inverse().unwrap()).value(), 1);
            }
            assert!(PrimeFieldElement::new(p, 0).inverse().is_none());
        }
    }
}
