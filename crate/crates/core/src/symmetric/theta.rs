//! `θ = x y^p − x^p y`, division by `θ^α` over `F_p`, and the functional
//! criterion for `θ^α`-divisibility.

use crate::combinatorics::{CoefficientFamily, NiceFamily, T_functional};
use crate::error::{invalid, Result};
use crate::number::{is_p_integral, PrimeFieldElement as Fp};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::homog::HomogPoly;

/// `θ` over `F_p`.
pub fn theta(p: u64) -> HomogPoly<Fp> {
    let mut t = HomogPoly::zero(p as usize + 1, &Fp::new(p, 0));
    t.set_coeff(1, Fp::new(p, 1));
    t.set_coeff(p as usize, Fp::new(p, -1));
    t
}

/// `θ^α` over `F_p`.
pub fn theta_pow(p: u64, alpha: usize) -> HomogPoly<Fp> {
    let th = theta(p);
    let mut acc = HomogPoly::monomial(0, 0, Fp::new(p, 1));
    for _ in 0..alpha {
        acc = acc.mul(&th).expect("same field");
    }
    acc
}

/// Exact division of `f` by `θ^α` in `F_p[x, y]`.
///
/// Returns the quotient and a flag that is `true` iff the division fails
/// (then the quotient is meaningless).
pub fn theta_pow_divide(f: &HomogPoly<Fp>, alpha: usize) -> (HomogPoly<Fp>, bool) {
    let p = f.template().prime();
    if alpha == 0 {
        return (f.clone(), false);
    }
    let r = f.degree();
    let step = alpha * (p as usize + 1);
    if r < step {
        return (HomogPoly::zero(0, f.template()), !f.is_zero());
    }
    let d = r - step;
    let th = theta_pow(p, alpha);
    // The highest x-power of θ^α is x^{pα} y^α with coefficient (−1)^α.
    let lead = p as usize * alpha;
    let lead_inv = th.coeff(lead).inverse().expect("unit leading coefficient");
    let mut rem: Vec<Fp> = f.coeffs().to_vec();
    let mut q = HomogPoly::zero(d, f.template());
    for j in (lead..=r).rev() {
        if rem[j].is_zero() {
            continue;
        }
        let k = j - lead;
        if k > d {
            return (q, true);
        }
        let c = rem[j].mul(lead_inv);
        q.set_coeff(k, c);
        for (i, t) in th.coeffs().iter().enumerate() {
            if !t.is_zero() {
                rem[k + i] = rem[k + i].sub(c.mul(*t));
            }
        }
    }
    let failed = rem.iter().any(|c| !c.is_zero());
    (q, failed)
}

/// Both routes of the `θ^α` criterion for `Σ_i D_i x^{i(p−1)+α} y^{r−i(p−1)−α}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaCriterion {
    /// `T_w(D) ≡ 0 mod p` for every `0 ≤ w < α` (default family).
    pub functionals_vanish: bool,
    /// The reduction mod `p` of the polynomial is divisible by `θ^α`.
    pub divisible: bool,
}

impl ThetaCriterion {
    pub fn agree(&self) -> bool {
        self.functionals_vanish == self.divisible
    }
}

/// The polynomial `Σ_i D_i x^{i(p−1)+α} y^{r−i(p−1)−α}` reduced mod `p`.
pub fn family_polynomial(d: &CoefficientFamily, alpha: usize, r: usize, p: u64) -> Result<HomogPoly<Fp>> {
    let mut f = HomogPoly::zero(r, &Fp::new(p, 0));
    for (i, v) in d.iter() {
        if i < 0 || i as usize * (p as usize - 1) + alpha > r {
            return invalid(format!("D_{i} lies outside the support [0, (r-alpha)/(p-1)]"));
        }
        if !is_p_integral(v, p) {
            return invalid(format!("D_{i} = {v} is not {p}-integral"));
        }
        let j = i as usize * (p as usize - 1) + alpha;
        let c = reduce_fp(v, p);
        f.set_coeff(j, f.coeff(j).add(c));
    }
    Ok(f)
}

fn reduce_fp(v: &BigRational, p: u64) -> Fp {
    let n = Fp::from_bigint(p, v.numer());
    let d = Fp::from_bigint(p, v.denom());
    n.mul(d.inverse().expect("p-integral"))
}

/// Evaluates the functional criterion and the division oracle.
///
/// `D` must vanish outside `[0, (r−α)/(p−1)]`. The two routes are guaranteed
/// to agree when the support lies in `[0, (r−2α)/(p−1)]`; on the boundary strip
/// `(r−2α, r−α]` the functional condition alone does not force divisibility.
pub fn theta_criterion(d: &CoefficientFamily, alpha: usize, r: usize, p: u64) -> Result<ThetaCriterion> {
    let f = family_polynomial(d, alpha, r, p)?;
    let family = NiceFamily::default_for(p);
    let mut functionals_vanish = true;
    for w in 0..alpha {
        let t = T_functional(&family, d, w)?;
        if !(t.is_zero() || crate::number::val_p(&t, p).at_least(1)) {
            functionals_vanish = false;
            break;
        }
    }
    let (_, failed) = theta_pow_divide(&f, alpha);
    Ok(ThetaCriterion { functionals_vanish, divisible: !failed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom_int;
    use crate::number::rat;

    #[test]
    fn theta_divides_itself() {
        for p in [3u64, 5, 7] {
            let (q, failed) = theta_pow_divide(&theta(p), 1);
            assert!(!failed);
            assert_eq!(q, HomogPoly::monomial(0, 0, Fp::new(p, 1)));
            let (q0, f0) = theta_pow_divide(&theta(p), 0);
            assert!(!f0);
            assert_eq!(q0, theta(p));
        }
    }

    #[test]
    fn alternating_binomial_sum_is_a_theta_power() {
        // Σ_j (−1)^j binom(n,j) x^{α+j(p−1)} y^{r−j(p−1)−α} = θ^n x^{α−n} y^{r−np−α}
        let (p, r) = (5u64, 40usize);
        for alpha in 0..4usize {
            for n in 0..=alpha {
                let mut f = HomogPoly::zero(r, &Fp::new(p, 0));
                for j in 0..=n {
                    let c = binom_int(n as i64, j as i64) * if j % 2 == 0 { 1 } else { -1 };
                    f.set_coeff(alpha + j * (p as usize - 1), Fp::from_bigint(p, &c));
                }
                let (q, failed) = theta_pow_divide(&f, n);
                assert!(!failed);
                assert_eq!(q, HomogPoly::monomial(r - n * (p as usize + 1), alpha - n, Fp::new(p, 1)));
            }
        }
    }

    #[test]
    fn criterion_examples() {
        let d = CoefficientFamily::from_pairs([(0, rat(1, 1)), (1, rat(-1, 1))]);
        let c = theta_criterion(&d, 1, 20, 5).unwrap();
        assert!(c.functionals_vanish && c.divisible);
        let d = CoefficientFamily::from_pairs([(0, rat(1, 1))]);
        let c = theta_criterion(&d, 1, 20, 5).unwrap();
        assert!(!c.functionals_vanish && !c.divisible);
        let c = theta_criterion(&d, 0, 20, 5).unwrap();
        assert!(c.functionals_vanish && c.divisible);
        let out = CoefficientFamily::from_pairs([(6, rat(1, 1))]);
        assert!(theta_criterion(&out, 1, 20, 5).is_err());
    }

    #[test]
    fn boundary_strip_breaks_the_criterion() {
        // Support index 5 has 5(p−1) = 20 ∈ (r−2α, r−α] for p = 5, r = 21, α = 1.
        let d = CoefficientFamily::from_pairs([(0, rat(1, 1)), (5, rat(-1, 1))]);
        let c = theta_criterion(&d, 1, 21, 5).unwrap();
        assert!(c.functionals_vanish);
        assert!(!c.divisible);
    }
}
