//! Generalised binomial coefficients, falling factorials and binomial rows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `binom(m, k) = m(m−1)…(m−k+1)/k!` for any integer `m`; zero when `k < 0`.
pub fn binom_int(m: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if m >= 0 {
        if k > m {
            return BigInt::zero();
        }
        let k = k.min(m - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
        }
        acc
    } else {
        // binom(m, k) = (−1)^k binom(k − m − 1, k)
        let b = binom_int(k - m - 1, k);
        if k % 2 == 0 {
            b
        } else {
            -b
        }
    }
}

/// `binom(x, k)` for rational `x`.
pub fn binom_rat(x: &BigRational, k: i64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    for i in 0..k {
        acc = acc * (x - BigRational::from_integer(BigInt::from(i)))
            / BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Falling factorial `(x)_k = x(x−1)…(x−k+1)`.
pub fn falling(x: &BigRational, k: i64) -> BigRational {
    (0..k.max(0)).fold(BigRational::one(), |acc, i| {
        acc * (x - BigRational::from_integer(BigInt::from(i)))
    })
}

/// Falling factorial of an integer.
pub fn falling_int(x: i64, k: i64) -> BigInt {
    (0..k.max(0)).fold(BigInt::one(), |acc, i| acc * BigInt::from(x - i))
}

/// `k!`.
pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Value at `y` of the derivative of `binom(X, w)`:
/// `Σ_i Π_{k≠i} (y − k) / w!`.
pub fn dbinom_rat(y: &BigRational, w: i64) -> BigRational {
    if w <= 0 {
        return BigRational::zero();
    }
    let mut total = BigRational::zero();
    for i in 0..w {
        let mut prod = BigRational::one();
        for k in 0..w {
            if k != i {
                prod *= y - BigRational::from_integer(BigInt::from(k));
            }
        }
        total += prod;
    }
    total / BigRational::from_integer(factorial(w as u64))
}

/// The row `binom(n, 0), …, binom(n, n)` for `n ≥ 0`.
pub fn binom_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}

/// Pascal's triangle for rows `0..=n`, with generalised lookup.
#[derive(Debug, Clone)]
pub struct PascalTable {
    rows: Vec<Vec<BigInt>>,
}

impl PascalTable {
    pub fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut row = vec![BigInt::one(); m + 1];
            for k in 1..m {
                row[k] = &rows[m - 1][k - 1] + &rows[m - 1][k];
            }
            rows.push(row);
        }
        PascalTable { rows }
    }

    /// `binom(m, k)` for any integer `m`, falling back to direct evaluation
    /// outside the table.
    pub fn get(&self, m: i64, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        if m >= 0 {
            if k > m {
                return BigInt::zero();
            }
            match self.rows.get(m as usize) {
                Some(row) => row[k as usize].clone(),
                None => binom_int(m, k),
            }
        } else {
            let b = self.get(k - m - 1, k);
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    #[test]
    fn generalised_binomials() {
        assert_eq!(binom_int(24, 4), BigInt::from(10626));
        assert_eq!(binom_int(5, -2), BigInt::zero());
        for w in 0..12 {
            let expected = if w % 2 == 0 { 1 } else { -1 };
            assert_eq!(binom_int(-1, w), BigInt::from(expected));
        }
        assert_eq!(binom_int(-3, 2), BigInt::from(6));
        assert_eq!(binom_rat(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let t = PascalTable::new(30);
        for m in -20..40 {
            for k in -2..25 {
                assert_eq!(t.get(m, k), binom_int(m, k), "binom({m},{k})");
            }
        }
        let row = binom_row(17);
        for k in 0..=17 {
            assert_eq!(row[k as usize], binom_int(17, k));
        }
    }

    #[test]
    fn derivative_values() {
        // d/dX binom(X,1) = 1, d/dX binom(X,2) = X − 1/2.
        assert_eq!(dbinom_rat(&rat(5, 1), 1), rat(1, 1));
        assert_eq!(dbinom_rat(&rat(5, 1), 2), rat(9, 2));
        assert_eq!(dbinom_rat(&rat(5, 1), 0), rat(0, 1));
    }
}
