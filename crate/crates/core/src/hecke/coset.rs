//! Canonical representatives of `G/KZ`: the vertices `[[p^n, b], [0, 1]]` of
//! the Bruhat–Tits tree.

use crate::error::{Error, Result};
use crate::number::TruncatedPadic;
use serde::{Deserialize, Serialize};
use std::fmt;

use super::qp::{mat_mul, QpMatrix, QpNum};

/// The coset of `[[p^n, b], [0, 1]]` modulo `KZ`, with `b mod p^n` stored as
/// Teichmüller digits: `b = Σ_{k=lo}^{n−1} [d_k] p^k` and `d_lo ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetRep {
    pub n: i64,
    pub lo: i64,
    pub digits: Vec<u8>,
}

impl CosetRep {
    /// The coset of the identity.
    pub fn root() -> Self {
        CosetRep { n: 0, lo: 0, digits: Vec::new() }
    }

    pub fn new(n: i64, lo: i64, digits: Vec<u8>) -> Result<Self> {
        if digits.is_empty() {
            return Ok(CosetRep { n, lo: 0, digits });
        }
        if digits[0] == 0 || lo + digits.len() as i64 != n {
            return Err(Error::InvalidInput("non-canonical digit expansion".into()));
        }
        Ok(CosetRep { n, lo, digits })
    }

    /// The matrix `[[p^n, b], [0, 1]]` with Teichmüller digits lifted at the
    /// given relative precision.
    pub fn matrix(&self, p: u64, precision: u32) -> Result<QpMatrix> {
        let mut b = QpNum::zero(p, precision).mul_p_pow(self.n);
        for (k, d) in self.digits.iter().enumerate() {
            if *d != 0 {
                let t = QpNum::teichmuller(p, precision, *d as i64)?.mul_p_pow(self.lo + k as i64);
                b = b.add(&t);
            }
        }
        Ok([
            QpNum::p_pow(p, precision, self.n),
            b,
            QpNum::zero(p, precision),
            QpNum::one(p, precision),
        ])
    }
}

impl fmt::Display for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "[n={}, b=({})@{}]", self.n, digits.join(","), self.lo)
    }
}

/// Decomposition `g = c · k · p^e` with `c` canonical and `k ∈ GL_2(Z_p)`.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub coset: CosetRep,
    pub k: [TruncatedPadic; 4],
    pub central_exponent: i64,
}

/// Canonicalises `g`: column reduction to upper-triangular form, stripping
/// of central powers of `p`, and Teichmüller-digit normalisation of `b`.
pub fn canonicalize(g: &QpMatrix, precision: u32) -> Result<Canonical> {
    let p = g[0].prime();
    let exhausted = |what: &str| Error::PrecisionTooSmall {
        needed: what.to_string(),
        have: format!("relative precision {precision}"),
    };
    // Column operations g ↦ g·h, h ∈ GL_2(Z_p), until the lower-left entry vanishes.
    let (c, d) = (&g[2], &g[3]);
    let (a_up, b_up, d_up) = match (c.valuation(), d.valuation()) {
        (None, None) => return Err(exhausted("a nonsingular bottom row")),
        (_, Some(vd)) if c.valuation().is_none_or(|vc| vc >= vd) => {
            let x = c.div(d)?;
            (g[0].sub(&x.mul(&g[1])), g[1].clone(), d.clone())
        }
        _ => {
            // Swap columns, then clear.
            let x = d.div(c)?;
            (g[1].sub(&x.mul(&g[0])), g[0].clone(), c.clone())
        }
    };
    let e = d_up.valuation().ok_or_else(|| exhausted("a nonzero diagonal entry"))?;
    let va = a_up.valuation().ok_or_else(|| exhausted("a nonzero diagonal entry"))?;
    let n = va - e;
    let b = b_up.div(&d_up)?;
    let coset = match b.teichmuller_digits(n)? {
        None => CosetRep { n, lo: 0, digits: Vec::new() },
        Some((lo, digits)) => CosetRep { n, lo, digits },
    };
    // k = c^{-1} g p^{-e}
    let cm = coset.matrix(p, precision)?;
    let inv = [
        QpNum::p_pow(p, precision, -n),
        cm[1].mul(&QpNum::p_pow(p, precision, -n)).neg(),
        QpNum::zero(p, precision),
        QpNum::one(p, precision),
    ];
    let h = mat_mul(&inv, g);
    let mut k = Vec::with_capacity(4);
    for entry in h.iter() {
        k.push(entry.mul_p_pow(-e).to_integral().map_err(|_| exhausted("an integral KZ-factor"))?);
    }
    let k: [TruncatedPadic; 4] = k.try_into().expect("four entries");
    let det = k[0].mul(&k[3]).sub(&k[1].mul(&k[2]));
    if !det.is_unit() {
        return Err(exhausted("a unit determinant for the KZ-factor"));
    }
    Ok(Canonical { coset, k, central_exponent: e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::qp::mat_from_ints;

    #[test]
    fn neighbours_of_the_root() {
        let p = 5;
        for mu in 0..p as i64 {
            let g = [
                QpNum::p_pow(p, 10, 1),
                QpNum::teichmuller(p, 10, mu).unwrap(),
                QpNum::zero(p, 10),
                QpNum::one(p, 10),
            ];
            let c = canonicalize(&g, 10).unwrap();
            let digits = if mu == 0 { vec![] } else { vec![mu as u8] };
            assert_eq!(c.coset, CosetRep { n: 1, lo: 0, digits });
            assert_eq!(c.central_exponent, 0);
        }
        let g = mat_from_ints(p, 10, [1, 0, 0, 5], 0);
        let c = canonicalize(&g, 10).unwrap();
        assert_eq!(c.coset, CosetRep { n: -1, lo: 0, digits: vec![] });
        assert_eq!(c.central_exponent, 1);
    }

    #[test]
    fn central_and_integral_matrices_fix_the_root() {
        let p = 7;
        let g = mat_from_ints(p, 8, [3, 1, 2, 5], 0);
        assert_eq!(canonicalize(&g, 8).unwrap().coset, CosetRep::root());
        let z = mat_from_ints(p, 8, [1, 0, 0, 1], 3);
        let c = canonicalize(&z, 8).unwrap();
        assert_eq!(c.coset, CosetRep::root());
        assert_eq!(c.central_exponent, 3);
        // An anti-diagonal matrix needs a column swap and lands on diag(1, p).
        let s = mat_from_ints(p, 8, [0, 1, 7, 0], 0);
        assert_eq!(canonicalize(&s, 8).unwrap().coset, CosetRep { n: -1, lo: 0, digits: vec![] });
    }
}
