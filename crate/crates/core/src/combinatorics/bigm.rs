//! The sums `M_{u,n} = Σ_i binom(u, i(p−1)+n)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::binom::binom_row;

/// `⟨u⟩`: the representative of `u mod (p−1)` in `{1, …, p−1}`.
pub fn more(u: i64, p: u64) -> i64 {
    let q = p as i64 - 1;
    let r = u.rem_euclid(q);
    if r == 0 {
        q
    } else {
        r
    }
}

/// `⌊n⌋`: the representative of `n mod (p−1)` in `{0, …, p−2}`.
pub fn less(n: i64, p: u64) -> i64 {
    n.rem_euclid(p as i64 - 1)
}

/// `M_{u,n}`: the sum of `binom(u, k)` over `0 ≤ k ≤ u` with `k ≡ n mod (p−1)`.
///
/// `bigM(24, 0, 5) = 4196352`, `bigM(0, 0, p) = 1`.
#[allow(non_snake_case)]
pub fn bigM(u: u64, n: i64, p: u64) -> BigInt {
    bigm_from_row(&binom_row(u), n, p)
}

/// `M_{u,n}` from a precomputed row `binom(u, 0..=u)`.
pub fn bigm_from_row(row: &[BigInt], n: i64, p: u64) -> BigInt {
    let q = p as i64 - 1;
    let mut k = n.rem_euclid(q);
    let mut acc = BigInt::zero();
    while (k as usize) < row.len() {
        acc += &row[k as usize];
        k += q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom::binom_int;

    fn oracle(u: i64, n: i64, p: i64) -> BigInt {
        // Sum over every integer i; terms outside 0..=u vanish.
        (-(u + n.abs()) - 2..=u + n.abs() + 2)
            .map(|i| binom_int(u, i * (p - 1) + n))
            .sum()
    }

    #[test]
    fn anchor_values() {
        assert_eq!(bigM(4, 0, 5), BigInt::from(2));
        assert_eq!(bigM(24, 0, 5), BigInt::from(4196352u64));
        assert_eq!(bigM(8, 0, 5), BigInt::from(72));
        for p in [3, 5, 7] {
            assert_eq!(bigM(0, 0, p), BigInt::from(1));
        }
    }

    #[test]
    fn agrees_with_direct_summation() {
        for p in [3u64, 5, 7, 11] {
            for u in 0..40u64 {
                for n in -8..8 {
                    assert_eq!(bigM(u, n, p), oracle(u as i64, n, p as i64));
                }
            }
        }
    }

    #[test]
    fn residue_representatives() {
        assert_eq!(more(8, 5), 4);
        assert_eq!(more(9, 5), 1);
        assert_eq!(less(-1, 5), 3);
        assert_eq!(less(8, 5), 0);
    }
}
