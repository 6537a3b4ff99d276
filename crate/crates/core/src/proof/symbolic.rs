//! Exact symbolic checks: the vector `Mc` over `Q(X, Y)` and the change of
//! basis `L_α(λ, μ)` between `binom(λX, ·)` and `binom(μX, ·)`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bivar::{big, int, BivarPoly, BivarRational};
use crate::combinatorics::{binom_int, factorial, stirling1, stirling2, QPoly};
use crate::error::{invalid, Result};
use crate::linalg::QMatrix;

/// Outcome of the `Mc` check at one `α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McReport {
    pub alpha: usize,
    /// Indices `w < α` where `(Mc)_w` fails to vanish.
    pub nonzero_entries: Vec<usize>,
    /// `(Mc)_α = (Y−X)_{α+1}/(Y−α)`.
    pub last_entry_matches: bool,
    /// Leading `Y^{α+1}` coefficient of `(Y−α)(Mc)_α` is `1`.
    pub leading_coefficient_is_one: bool,
}

impl McReport {
    pub fn passed(&self) -> bool {
        self.nonzero_entries.is_empty() && self.last_entry_matches && self.leading_coefficient_is_one
    }
}

/// `c_j = (−1)^j α! ((X+j+1)/(j+1) binom(Y, α−j−1) + binom(Y, α−j))`.
pub fn c_poly(alpha: usize, j: usize) -> BivarPoly {
    let x = BivarPoly::x();
    let y = BivarPoly::y();
    let (a, j) = (alpha as i64, j as i64);
    let first = x
        .add(&int(j + 1))
        .scale(&BigRational::new(1.into(), (j + 1).into()))
        .mul(&y.binom(a - j - 1));
    let sum = first.add(&y.binom(a - j));
    let sign = if j % 2 == 0 { 1 } else { -1 };
    sum.scale(&BigRational::from_integer(factorial(alpha as u64) * sign))
}

/// The matrix `M` over `Q(X, Y)`.
pub fn m_matrix(alpha: usize) -> Vec<Vec<BivarRational>> {
    let x = BivarPoly::x();
    let y = BivarPoly::y();
    let a = alpha as i64;
    let mut out = vec![vec![BivarRational::zero(); alpha + 1]; alpha + 1];
    for w in 0..=a {
        let sign = if w % 2 == 0 { 1 } else { -1 };
        let num = y.sub(&x).mul(&x.falling(w)).scale(&BigRational::from_integer(sign.into()));
        out[w as usize][0] = BivarRational::new(num, y.falling(w + 1)).expect("nonzero falling factorial");
        for j in 1..=a {
            let mut entry = BivarPoly::zero();
            for v in 0..=w {
                let s = if (w - v) % 2 == 0 { 1 } else { -1 };
                let c = binom_int(j + w - v - 1, w - v) * s;
                let diff = y.add(&int(j - v)).binom(j - v).sub(&x.add(&int(j - v)).binom(j - v));
                entry = entry.add(&big(c).mul(&x.add(&int(j)).binom(v)).mul(&diff));
            }
            out[w as usize][j as usize] = BivarRational::from_poly(entry);
        }
    }
    out
}

/// Checks that `M (Y_α, c_1, …, c_α)^T` vanishes in entries `0..α−1` and
/// has last entry `(Y−X)_{α+1}/(Y−α)`.
#[allow(non_snake_case)]
pub fn verify_Mc_identity(alpha: usize) -> Result<McReport> {
    if alpha < 1 {
        return invalid("alpha must be at least 1");
    }
    let m = m_matrix(alpha);
    let y = BivarPoly::y();
    let x = BivarPoly::x();
    let mut c = vec![BivarRational::from_poly(y.falling(alpha as i64))];
    c.extend((1..=alpha).map(|j| BivarRational::from_poly(c_poly(alpha, j))));
    let d: Vec<BivarRational> = m
        .iter()
        .map(|row| row.iter().zip(&c).fold(BivarRational::zero(), |acc, (mij, cj)| acc.add(&mij.mul(cj))))
        .collect();
    let nonzero_entries = (0..alpha).filter(|&w| !d[w].is_zero()).collect();
    let target_num = y.sub(&x).falling(alpha as i64 + 1);
    let y_minus = y.sub(&int(alpha as i64));
    let target = BivarRational::new(target_num, y_minus.clone()).expect("nonzero");
    let last_entry_matches = d[alpha] == target;
    // Y^{α+1} coefficient of (Y−α) d_α, read off on the line X = 0 as the
    // ratio of top coefficients of numerator and denominator.
    let scaled = d[alpha].mul_poly(&y_minus);
    let top = |p: &BivarPoly| -> Option<(u32, BigRational)> {
        (0..=p.total_degree()?).rev().map(|j| (j, p.coeff(0, j))).find(|(_, c)| !c.is_zero())
    };
    let leading_coefficient_is_one = match (top(scaled.numer()), top(scaled.denom())) {
        (Some((dn, cn)), Some((dd, cd))) => dn == dd + alpha as u32 + 1 && cn / cd == BigRational::one(),
        _ => false,
    };
    Ok(McReport { alpha, nonzero_entries, last_entry_matches, leading_coefficient_is_one })
}

/// `L_{l,j} = Σ_k (j!/l!) (μ/λ)^k s_1(l,k) s_2(k,j)`.
pub fn l_matrix(alpha: usize, lambda: &BigRational, mu: &BigRational) -> Result<QMatrix> {
    if lambda.is_zero() {
        return invalid("lambda must be nonzero");
    }
    let ratio = mu / lambda;
    Ok(QMatrix::from_fn(alpha + 1, alpha + 1, |l, j| {
        let mut acc = BigRational::zero();
        for k in 0..=alpha {
            let s = stirling1(l, k) * stirling2(k, j);
            if !s.is_zero() {
                acc += num_traits::pow(ratio.clone(), k) * BigRational::from_integer(s);
            }
        }
        acc * BigRational::new(factorial(j as u64), factorial(l as u64))
    }))
}

/// Checks `L_α(λ, μ) (binom(λX, 0), …, binom(λX, α))^T = (binom(μX, 0), …)^T`
/// coefficient-wise, together with the factorisation
/// `L = (μ^j s_1(i,j)/i!) · (j! s_2(i,j)/λ^i)`.
#[allow(non_snake_case)]
pub fn verify_L_matrix(alpha: usize, lambda: &BigRational, mu: &BigRational) -> Result<bool> {
    let l = l_matrix(alpha, lambda, mu)?;
    let binoms = |c: &BigRational| -> Vec<QPoly> {
        let x = QPoly::linear(c.clone(), BigRational::zero());
        let mut out = vec![QPoly::constant(BigRational::one())];
        for k in 1..=alpha {
            let prev = out[k - 1].clone();
            let factor = x
                .sub(&QPoly::constant(BigRational::from_integer((k as i64 - 1).into())))
                .scale(&BigRational::new(1.into(), (k as i64).into()));
            out.push(prev.mul(&factor));
        }
        out
    };
    let from = binoms(lambda);
    let to = binoms(mu);
    let mut ok = true;
    for i in 0..=alpha {
        let mut acc = QPoly::zero();
        for (j, f) in from.iter().enumerate() {
            acc = acc.add(&f.scale(l.get(i, j)));
        }
        ok &= acc == to[i];
    }
    let left = QMatrix::from_fn(alpha + 1, alpha + 1, |i, j| {
        BigRational::from_integer(stirling1(i, j)) * num_traits::pow(mu.clone(), j)
            / BigRational::from_integer(factorial(i as u64))
    });
    let right = QMatrix::from_fn(alpha + 1, alpha + 1, |i, j| {
        BigRational::from_integer(factorial(j as u64) * stirling2(i, j)) / num_traits::pow(lambda.clone(), i)
    });
    ok &= left.mul(&right) == l;
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    #[test]
    fn alpha_one_by_hand() {
        let rep = verify_Mc_identity(1).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn mc_identity_up_to_eight() {
        for alpha in 1..=8 {
            assert!(verify_Mc_identity(alpha).unwrap().passed(), "alpha={alpha}");
        }
    }

    #[test]
    fn perturbed_c_breaks_identity() {
        // Guard against a vacuous check: changing one c_j must break it.
        let alpha = 3;
        let m = m_matrix(alpha);
        let mut c = vec![BivarRational::from_poly(BivarPoly::y().falling(alpha as i64))];
        c.extend((1..=alpha).map(|j| BivarRational::from_poly(c_poly(alpha, j))));
        c[2] = c[2].add(&BivarRational::from_poly(BivarPoly::from_int(1)));
        let d0 = m[0].iter().zip(&c).fold(BivarRational::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
        assert!(!d0.is_zero());
    }

    #[test]
    fn l_matrix_cases() {
        for alpha in 0..=8 {
            assert!(verify_L_matrix(alpha, &rat(3, 1), &rat(3, 1)).unwrap());
            assert_eq!(l_matrix(alpha, &rat(3, 1), &rat(3, 1)).unwrap(), QMatrix::from_fn(alpha + 1, alpha + 1, |i, j| {
                if i == j { rat(1, 1) } else { rat(0, 1) }
            }));
            for p in [5i64, 7] {
                assert!(verify_L_matrix(alpha, &rat(p - 1, 1), &rat(1, 1)).unwrap());
            }
            assert!(verify_L_matrix(alpha, &rat(2, 1), &rat(3, 1)).unwrap());
        }
        assert!(verify_L_matrix(2, &rat(0, 1), &rat(1, 1)).is_err());
    }
}
