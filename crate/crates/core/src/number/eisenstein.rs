//! Totally ramified extensions `(Z/p^M)[π]/(π^e − p)`.

use crate::error::{invalid, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

use super::padic::TruncatedPadic;
use super::rational::val_p_int;
use super::{pow_p, Ring};

/// Element `Σ_{i<e} c_i π^i` of the ring of integers of `Q_p(p^{1/e})`,
/// with every `c_i` known modulo `p^precision`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EisensteinElement {
    p: u64,
    e: u32,
    precision: u32,
    coeffs: Vec<BigInt>,
}

impl EisensteinElement {
    /// Builds an element from its coordinates in the basis `1, π, …, π^{e-1}`.
    pub fn new(p: u64, e: u32, precision: u32, coeffs: &[BigInt]) -> Result<Self> {
        if e < 1 {
            return invalid("ramification index must be at least 1");
        }
        if coeffs.len() > e as usize {
            return invalid("more coordinates than the ramification index");
        }
        let m = pow_p(p, precision);
        let mut c: Vec<BigInt> = coeffs.iter().map(|x| x.mod_floor(&m)).collect();
        c.resize(e as usize, BigInt::zero());
        Ok(EisensteinElement { p, e, precision, coeffs: c })
    }

    pub fn from_padic(x: &TruncatedPadic, e: u32) -> Result<Self> {
        Self::new(x.prime(), e, x.precision(), std::slice::from_ref(x.residue()))
    }

    pub fn from_int(p: u64, e: u32, precision: u32, n: &BigInt) -> Self {
        Self::new(p, e, precision, std::slice::from_ref(n)).expect("e >= 1")
    }

    pub fn zero(p: u64, e: u32, precision: u32) -> Self {
        Self::from_int(p, e, precision, &BigInt::zero())
    }

    /// The uniformiser `π`.
    pub fn pi(p: u64, e: u32, precision: u32) -> Result<Self> {
        eisenstein_make_a(p, e, precision, 1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ramification(&self) -> u32 {
        self.e
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// For `e = 1`, the underlying truncated p-adic integer.
    pub fn to_padic(&self) -> Option<TruncatedPadic> {
        (self.e == 1).then(|| TruncatedPadic::new(self.p, self.precision, &self.coeffs[0]))
    }

    /// Exact valuation in `(1/e)Z`, or `None` if the element vanishes to the
    /// working precision.
    pub fn valuation(&self) -> Option<Ratio<i64>> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                val_p_int(c, self.p)
                    .finite()
                    .map(|v| Ratio::new(v * self.e as i64 + i as i64, self.e as i64))
            })
            .min()
    }

    /// Largest value known to be `≤` the valuation: the exact valuation, or
    /// the precision when the element vanishes to the working precision.
    pub fn valuation_lower_bound(&self) -> Ratio<i64> {
        self.valuation()
            .unwrap_or_else(|| Ratio::from_integer(self.precision as i64))
    }

    /// Reduces the working precision to `min(precision, m)`.
    pub fn truncate_to(&self, m: u32) -> Self {
        self.with(self.precision.min(m), self.coeffs.clone())
    }

    pub fn is_unit(&self) -> bool {
        self.precision > 0 && !(&self.coeffs[0] % self.p).is_zero()
    }

    fn check(&self, o: &Self) {
        assert!(self.p == o.p && self.e == o.e, "Eisenstein operands in different rings");
    }

    fn with(&self, precision: u32, coeffs: Vec<BigInt>) -> Self {
        let m = pow_p(self.p, precision);
        EisensteinElement {
            p: self.p,
            e: self.e,
            precision,
            coeffs: coeffs.into_iter().map(|c| c.mod_floor(&m)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        self.with(self.precision.min(o.precision), c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        self.with(self.precision.min(o.precision), c)
    }

    pub fn neg(&self) -> Self {
        self.with(self.precision, self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let e = self.e as usize;
        let mut c = vec![BigInt::zero(); e];
        let pb = BigInt::from(self.p);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                if i + j >= e {
                    c[i + j - e] += t * &pb;
                } else {
                    c[i + j] += t;
                }
            }
        }
        self.with(self.precision.min(o.precision), c)
    }

    /// Product with a truncated p-adic integer.
    pub fn scale(&self, x: &TruncatedPadic) -> Self {
        assert_eq!(self.p, x.prime());
        let c = self.coeffs.iter().map(|a| a * x.residue()).collect();
        self.with(self.precision.min(x.precision()), c)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Inverse of a unit (Newton iteration); non-units are rejected.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnitDivision);
        }
        let c0 = TruncatedPadic::new(self.p, self.precision, &self.coeffs[0]).inverse()?;
        let mut z = Self::from_padic(&c0, self.e)?;
        let two = self.from_int_like(&BigInt::from(2));
        // Each step doubles the π-adic precision of the approximation.
        let target = (self.e as u64) * (self.precision as u64) + 1;
        let mut known = 1u64;
        while known < target {
            z = z.mul(&two.sub(&self.mul(&z)));
            known *= 2;
        }
        Ok(z)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }
}

/// The element `a = π^j`, of valuation `j/e`.
pub fn eisenstein_make_a(p: u64, e: u32, precision: u32, j: i64) -> Result<EisensteinElement> {
    if e < 1 {
        return invalid("ramification index must be at least 1");
    }
    if j < 0 {
        return invalid("exponent of the uniformiser must be non-negative");
    }
    let (q, r) = (j / e as i64, (j % e as i64) as usize);
    let mut c = vec![BigInt::zero(); e as usize];
    if q < precision as i64 {
        c[r] = pow_p(p, q as u32);
    }
    EisensteinElement::new(p, e, precision, &c)
}

impl fmt::Display for EisensteinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}*pi^{i}") })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "{body} + O({}^{})", self.p, self.precision)
    }
}

impl Ring for EisensteinElement {
    fn zero_like(&self) -> Self {
        Self::zero(self.p, self.e, self.precision)
    }
    fn one_like(&self) -> Self {
        Self::from_int(self.p, self.e, self.precision, &BigInt::from(1))
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::from_int(self.p, self.e, self.precision, n)
    }
    fn add(&self, o: &Self) -> Self {
        EisensteinElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        EisensteinElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        EisensteinElement::mul(self, o)
    }
    fn neg(&self) -> Self {
        EisensteinElement::neg(self)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn same_ring(&self, o: &Self) -> bool {
        self.p == o.p && self.e == o.e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniformiser_power_has_fractional_valuation() {
        let a = eisenstein_make_a(5, 2, 6, 3).unwrap();
        assert_eq!(a.valuation(), Some(Ratio::new(3, 2)));
        let pi = EisensteinElement::pi(5, 2, 6).unwrap();
        assert_eq!(pi.pow(3), a);
        assert_eq!(pi.pow(2), EisensteinElement::from_int(5, 2, 6, &BigInt::from(5)));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(eisenstein_make_a(5, 0, 6, 1).is_err());
        assert!(eisenstein_make_a(5, 2, 6, -1).is_err());
    }

    #[test]
    fn unit_inverse() {
        let x = EisensteinElement::new(7, 3, 5, &[BigInt::from(3), BigInt::from(2), BigInt::from(1)])
            .unwrap();
        let y = x.inverse().unwrap();
        assert_eq!(x.mul(&y), x.one_like());
        assert_eq!(EisensteinElement::pi(7, 3, 5).unwrap().inverse(), Err(Error::NonUnitDivision));
    }
}
