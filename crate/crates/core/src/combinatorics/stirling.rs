//! Stirling numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Signed Stirling number of the first kind: the coefficient of `X^k` in the
/// falling factorial `X_n = X(X−1)…(X−n+1)`.
pub fn stirling1(n: usize, k: usize) -> BigInt {
    stirling1_table(n)[n].get(k).cloned().unwrap_or_else(BigInt::zero)
}

/// Stirling number of the second kind: `X^n = Σ_k s_2(n,k) X_k`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    stirling2_table(n)[n].get(k).cloned().unwrap_or_else(BigInt::zero)
}

/// Rows `0..=n` of the signed first-kind triangle.
pub fn stirling1_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    t[0][0] = BigInt::one();
    for m in 1..=n {
        for k in 1..=m {
            // X_m = X_{m-1} (X − (m−1))
            t[m][k] = &t[m - 1][k - 1] - BigInt::from(m - 1) * &t[m - 1][k];
        }
    }
    t
}

/// Rows `0..=n` of the second-kind triangle.
pub fn stirling2_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    t[0][0] = BigInt::one();
    for m in 1..=n {
        for k in 1..=m {
            t[m][k] = &t[m - 1][k - 1] + BigInt::from(k) * &t[m - 1][k];
        }
    }
    t
}
