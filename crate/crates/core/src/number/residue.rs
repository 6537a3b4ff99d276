//! Fast arithmetic in `Z/p^M` on machine integers, for sums over long
//! binomial rows.

use crate::error::{invalid, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::padic::PadicValuation;
use super::rational::reduce_mod_pk;

/// The ring `Z/p^M`, with `p^M < 2^64` so that products fit in `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueRing {
    p: u64,
    precision: u32,
    modulus: u128,
}

impl ResidueRing {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if p < 2 || precision == 0 {
            return invalid(format!("need p >= 2 and precision >= 1, got p={p}, M={precision}"));
        }
        let mut modulus: u128 = 1;
        for _ in 0..precision {
            modulus = modulus.saturating_mul(p as u128);
        }
        if modulus >= 1u128 << 64 {
            return invalid(format!("p^M = {p}^{precision} does not fit in 64 bits"));
        }
        Ok(ResidueRing { p, precision, modulus })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn from_i64(&self, n: i64) -> u128 {
        (n as i128).rem_euclid(self.modulus as i128) as u128
    }

    pub fn from_bigint(&self, n: &BigInt) -> u128 {
        n.mod_floor(&BigInt::from(self.modulus)).to_u128().expect("residue below modulus")
    }

    /// Image of a p-integral rational.
    pub fn from_rational(&self, x: &BigRational) -> Result<u128> {
        Ok(self.from_bigint(&reduce_mod_pk(x, self.p, self.precision)?))
    }

    /// Parses a canonical residue: a decimal integer in `[0, p^M)`.
    pub fn parse_canonical(&self, s: &str) -> Result<u128> {
        let x: u128 = s.parse().map_err(|_| Error::InvalidInput(format!("not a residue: {s:?}")))?;
        if x >= self.modulus {
            return invalid(format!("{x} is not reduced modulo {}", self.modulus));
        }
        Ok(x)
    }

    pub fn add(&self, a: u128, b: u128) -> u128 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u128, b: u128) -> u128 {
        (a + self.modulus - b) % self.modulus
    }

    pub fn neg(&self, a: u128) -> u128 {
        (self.modulus - a) % self.modulus
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        a * b % self.modulus
    }

    pub fn pow(&self, mut a: u128, mut k: u64) -> u128 {
        let mut acc = 1 % self.modulus;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: u128) -> Result<u128> {
        let e = (a as i128).extended_gcd(&(self.modulus as i128));
        if e.gcd != 1 {
            return Err(Error::NonUnitDivision);
        }
        Ok(e.x.rem_euclid(self.modulus as i128) as u128)
    }

    /// Valuation of a residue; zero only certifies `v ≥ M`.
    pub fn valuation(&self, a: u128) -> PadicValuation {
        if a == 0 {
            return PadicValuation::AtLeast(self.precision as i64);
        }
        let (mut a, mut v) = (a, 0);
        while a % self.p as u128 == 0 {
            a /= self.p as u128;
            v += 1;
        }
        PadicValuation::Exact(v)
    }

    /// `binom(n, k) mod p^M` for `k = 0..=n`, tracking the p-part separately
    /// so that only units are inverted.
    pub fn binom_row(&self, n: u64) -> Vec<u128> {
        let p = self.p as u128;
        let split = |mut x: u128| {
            let mut v = 0u32;
            while x.is_multiple_of(p) {
                x /= p;
                v += 1;
            }
            (x % self.modulus, v)
        };
        let mut row = Vec::with_capacity(n as usize + 1);
        let (mut unit, mut exp) = (1 % self.modulus, 0u32);
        row.push(unit);
        for k in 1..=n {
            let (un, vn) = split((n - k + 1) as u128);
            let (ud, vd) = split(k as u128);
            unit = self.mul(unit, un);
            unit = self.mul(unit, self.inverse(ud).expect("unit"));
            exp = exp + vn - vd;
            row.push(if exp >= self.precision { 0 } else { self.mul(unit, p.pow(exp)) });
        }
        row
    }

    /// `binom(n, k) mod p^M` for `n ≥ 0` and small `k`.
    pub fn binom_small(&self, n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        self.from_bigint(&crate::combinatorics::binom_int(n as i64, k as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom_row;

    #[test]
    fn rows_match_exact_binomials() {
        for (p, m) in [(5u64, 6u32), (7, 4), (13, 12), (2, 20)] {
            let ring = ResidueRing::new(p, m).unwrap();
            for n in [0u64, 1, 24, 97, 300] {
                let fast = ring.binom_row(n);
                let exact = binom_row(n);
                for k in 0..=n as usize {
                    assert_eq!(fast[k], ring.from_bigint(&exact[k]), "p={p} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn canonical_residues_and_inverses() {
        let ring = ResidueRing::new(5, 3).unwrap();
        assert_eq!(ring.parse_canonical("124").unwrap(), 124);
        assert!(ring.parse_canonical("125").is_err());
        assert!(ring.parse_canonical("-1").is_err());
        assert_eq!(ring.mul(ring.inverse(3).unwrap(), 3), 1);
        assert!(ring.inverse(10).is_err());
        assert_eq!(ring.valuation(50), PadicValuation::Exact(2));
        assert_eq!(ring.valuation(0), PadicValuation::AtLeast(3));
        assert_eq!(ring.from_i64(-25), 100);
        assert!(ResidueRing::new(13, 20).is_err());
    }
}
