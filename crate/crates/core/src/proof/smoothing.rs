//! Smoothing constants: a family `Δ` supported on `1..=α+1` with the same
//! `T_α` as a given `D` and vanishing lower functionals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom_int, factorial, CoefficientFamily, NiceFamily, T_functional};
use crate::error::Result;
use crate::number::{val_p, Valuation};

/// `Δ_j = ((−1)^{α+j−1}/(c_α α!)) binom(α, j−1) T_α(D)` for `j = 1..=α+1`.
pub fn smoothing_constants(d: &CoefficientFamily, family: &NiceFamily, alpha: usize) -> Result<CoefficientFamily> {
    let t = T_functional(family, d, alpha)?;
    let scale = family.leading_coeff(alpha)? * BigRational::from_integer(factorial(alpha as u64));
    let a = alpha as i64;
    let mut delta = CoefficientFamily::new();
    for j in 1..=a + 1 {
        let sign = if (a + j - 1) % 2 == 0 { 1 } else { -1 };
        let c = BigRational::from_integer(binom_int(a, j - 1) * BigInt::from(sign));
        delta.set(j, c * &t / &scale);
    }
    Ok(delta)
}

/// Valuations around one application of [`smoothing_constants`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingReport {
    pub alpha: usize,
    /// `v_p(T_α(D))`.
    pub source: String,
    /// `v_p(T_α(Δ))`.
    pub smoothed: String,
    /// `min_j v_p(Δ_j)`.
    pub constants: String,
    /// `T_α(Δ) = T_α(D)` and `T_w(Δ) = 0` for `w < α`.
    pub functionals_match: bool,
    pub passed: bool,
}

/// Checks `v_p(T_α(D)) ≤ v_p(T_α(Δ)) ≤ v_p(Δ_j)` for all `j`, together with
/// the exact functional identities behind it.
pub fn check_smoothing(d: &CoefficientFamily, family: &NiceFamily, alpha: usize, p: u64) -> Result<SmoothingReport> {
    let delta = smoothing_constants(d, family, alpha)?;
    let t_d = T_functional(family, d, alpha)?;
    let t_delta = T_functional(family, &delta, alpha)?;
    let mut functionals_match = t_d == t_delta;
    for w in 0..alpha {
        functionals_match &= T_functional(family, &delta, w)?.is_zero();
    }
    let (vd, vt, vc) = (val_p(&t_d, p), val_p(&t_delta, p), delta.valuation(p));
    let le = |a: Valuation, b: Valuation| match (a, b) {
        (_, Valuation::Infinite) => true,
        (Valuation::Infinite, _) => false,
        (Valuation::Finite(x), Valuation::Finite(y)) => x <= y,
    };
    Ok(SmoothingReport {
        alpha,
        source: vd.to_string(),
        smoothed: vt.to_string(),
        constants: vc.to_string(),
        functionals_match,
        passed: functionals_match && le(vd, vt) && le(vt, vc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_functional_gives_zero_constants() {
        let family = NiceFamily::default_for(5);
        // T_1 of D = δ_0 vanishes: f_1(0) = 0.
        let d = CoefficientFamily::from_pairs([(0, rat(7, 1))]);
        assert!(smoothing_constants(&d, &family, 1).unwrap().is_empty());
    }

    #[test]
    fn alpha_zero_has_a_single_index() {
        let family = NiceFamily::default_for(7);
        let d = CoefficientFamily::from_pairs([(1, rat(3, 1)), (4, rat(-2, 1))]);
        let delta = smoothing_constants(&d, &family, 0).unwrap();
        assert_eq!(delta.len(), 1);
        let t0 = T_functional(&family, &d, 0).unwrap();
        assert_eq!(delta.get(1), t0 / family.leading_coeff(0).unwrap());
    }

    #[test]
    fn valuations_are_monotone_on_random_families() {
        let p = 5;
        let family = NiceFamily::default_for(p);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let alpha = rng.random_range(0..4usize);
            let d = CoefficientFamily::from_pairs(
                (0..8).map(|i| (i, rat(rng.random_range(-50..50) * 5i64.pow(rng.random_range(0..3)), 1))),
            );
            let rep = check_smoothing(&d, &family, alpha, p).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
    }
}
