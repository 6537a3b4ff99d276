//! Elements of `Q_p` known to finite absolute precision, for the entries of
//! group elements.

use crate::error::{Error, Result};
use crate::number::{teichmuller_padic, PadicValuation, TruncatedPadic};
use num_bigint::BigInt;
use std::fmt;

/// `p^shift · digits`, with `digits ∈ Z/p^P`; the absolute precision is
/// `shift + P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpNum {
    shift: i64,
    digits: TruncatedPadic,
}

impl QpNum {
    pub fn from_padic(x: TruncatedPadic) -> Self {
        QpNum { shift: 0, digits: x }
    }

    pub fn from_i64(p: u64, precision: u32, n: i64) -> Self {
        Self::from_padic(TruncatedPadic::from_i64(p, precision, n))
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        Self::from_i64(p, precision, 0)
    }

    pub fn one(p: u64, precision: u32) -> Self {
        Self::from_i64(p, precision, 1)
    }

    /// `p^k`, exactly up to relative precision `precision`.
    pub fn p_pow(p: u64, precision: u32, k: i64) -> Self {
        QpNum { shift: k, digits: TruncatedPadic::one(p, precision) }
    }

    /// The Teichmüller lift `[μ]`.
    pub fn teichmuller(p: u64, precision: u32, mu: i64) -> Result<Self> {
        Ok(Self::from_padic(teichmuller_padic(mu, p, precision)?))
    }

    pub fn prime(&self) -> u64 {
        self.digits.prime()
    }

    /// Absolute precision: the value is known modulo `p^{abs_precision}`.
    pub fn abs_precision(&self) -> i64 {
        self.shift + self.digits.precision() as i64
    }

    /// The valuation, or `None` if the value vanishes to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        match self.digits.valuation() {
            PadicValuation::Exact(v) => Some(self.shift + v),
            PadicValuation::AtLeast(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Moves all factors of `p` from the digits into the shift.
    fn normalize(&self) -> Self {
        match self.digits.valuation() {
            PadicValuation::Exact(v) if v > 0 => QpNum {
                shift: self.shift + v,
                digits: self.digits.div_p_pow(v as u32).expect("divisible"),
            },
            _ => self.clone(),
        }
    }

    fn align(&self, s: i64) -> TruncatedPadic {
        debug_assert!(s <= self.shift);
        self.digits.mul_p_pow((self.shift - s) as u32)
    }

    pub fn add(&self, o: &Self) -> Self {
        let s = self.shift.min(o.shift);
        QpNum { shift: s, digits: self.align(s).add(&o.align(s)) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let s = self.shift.min(o.shift);
        QpNum { shift: s, digits: self.align(s).sub(&o.align(s)) }
    }

    pub fn neg(&self) -> Self {
        QpNum { shift: self.shift, digits: self.digits.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self.normalize(), o.normalize());
        QpNum { shift: a.shift + b.shift, digits: a.digits.mul(&b.digits) }
    }

    pub fn inverse(&self) -> Result<Self> {
        let a = self.normalize();
        if !a.digits.is_unit() {
            return Err(Error::PrecisionTooSmall {
                needed: "a nonzero entry".into(),
                have: format!("{self}"),
            });
        }
        Ok(QpNum { shift: -a.shift, digits: a.digits.inverse()? })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Multiplies by `p^k`.
    pub fn mul_p_pow(&self, k: i64) -> Self {
        QpNum { shift: self.shift + k, digits: self.digits.clone() }
    }

    /// The element as a truncated p-adic integer at its absolute precision,
    /// or an error if it is not known to be integral.
    pub fn to_integral(&self) -> Result<TruncatedPadic> {
        let a = self.normalize();
        if a.shift >= 0 {
            return Ok(a.digits.mul_p_pow(a.shift as u32));
        }
        if a.digits.valuation().lower_bound() >= -a.shift && a.abs_precision() >= 0 {
            // Zero to the known precision, which is non-negative.
            return Ok(TruncatedPadic::zero(a.prime(), a.abs_precision() as u32));
        }
        Err(Error::InvalidInput(format!("{self} is not integral")))
    }

    /// Digits `d_lo, …, d_{n−1}` of the Teichmüller expansion
    /// `x = Σ_k [d_k] p^k` modulo `p^n`, with `d_lo ≠ 0`; `None` for `x ≡ 0`.
    pub fn teichmuller_digits(&self, n: i64) -> Result<Option<(i64, Vec<u8>)>> {
        let p = self.prime();
        if self.abs_precision() < n {
            return Err(Error::PrecisionTooSmall {
                needed: format!("absolute precision {n}"),
                have: self.abs_precision().to_string(),
            });
        }
        let a = self.normalize();
        let lo = match a.digits.valuation() {
            PadicValuation::Exact(_) => a.shift,
            PadicValuation::AtLeast(_) => return Ok(None),
        };
        if lo >= n {
            return Ok(None);
        }
        let mut x = a.digits;
        let mut digits = Vec::with_capacity((n - lo) as usize);
        for _ in lo..n {
            let d = x.mod_p();
            digits.push(d as u8);
            let t = teichmuller_padic(d as i64, p, x.precision())?;
            x = x.sub(&t).div_p_pow(1)?;
        }
        Ok(Some((lo, digits)))
    }
}

impl fmt::Display for QpNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} * ({})", self.prime(), self.shift, self.digits)
    }
}

/// 2×2 matrix over `Q_p`, row-major `[g1, g2, g3, g4]`.
pub type QpMatrix = [QpNum; 4];

pub fn mat_mul(a: &QpMatrix, b: &QpMatrix) -> QpMatrix {
    [
        a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
        a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
        a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
        a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
    ]
}

pub fn mat_det(a: &QpMatrix) -> QpNum {
    a[0].mul(&a[3]).sub(&a[1].mul(&a[2]))
}

pub fn mat_inverse(a: &QpMatrix) -> Result<QpMatrix> {
    let d = mat_det(a).inverse()?;
    Ok([a[3].mul(&d), a[1].neg().mul(&d), a[2].neg().mul(&d), a[0].mul(&d)])
}

/// A matrix with integer entries scaled by `p^shift`.
pub fn mat_from_ints(p: u64, precision: u32, entries: [i64; 4], shift: i64) -> QpMatrix {
    entries.map(|e| QpNum::from_padic(TruncatedPadic::new(p, precision, &BigInt::from(e))).mul_p_pow(shift))
}
