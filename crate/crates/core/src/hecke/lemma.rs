//! Executable forms of the two statements about the image of `T − a`: the
//! expansion of `(T − a)(1[θ^n x^{α−n} y^{r−np−α}])`, and the construction of
//! image elements with an explicit error ledger.

use crate::combinatorics::{binom_int, CoefficientFamily};
use crate::error::{invalid, Error, Result};
use crate::number::{pow_p, val_p, EisensteinElement, Ring, TruncatedPadic, Valuation};
use crate::symmetric::HomogPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::coset::CosetRep;
use super::induction::{act, group_precision, hecke_T, hecke_T_part, HeckePart, InductionElement};
use super::qp::QpNum;

fn ratio_string(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `ν` with `ν − 1 < v_p(a) < ν` (or `ν = v_p(a) + 1` when integral).
pub fn nu_of(a: &EisensteinElement) -> Result<i64> {
    let v = a.valuation().ok_or_else(|| Error::InvalidInput("a vanishes to the working precision".into()))?;
    Ok(v.floor().to_integer() + 1)
}

/// `Σ_j (−1)^j binom(n,j) x^{α+j(p−1)} y^{r−j(p−1)−α} = θ^n x^{α−n} y^{r−np−α}`
/// over `Z`.
pub fn theta_power_monomial(p: u64, n: usize, alpha: usize, r: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); r + 1];
    for j in 0..=n {
        let idx = alpha + j * (p as usize - 1);
        let s = if j % 2 == 0 { 1 } else { -1 };
        c[idx] += binom_int(n as i64, j as i64) * s;
    }
    c
}

/// Integer coefficients of `θ^α x^{j(p−1)} y^{r−j(p−1)−α(p+1)}`.
fn theta_alpha_times_monomial(p: u64, alpha: usize, j: usize, r: usize) -> Vec<BigInt> {
    // θ^α = Σ_i (−1)^i binom(α,i) x^{α+i(p−1)} y^{pα−i(p−1)}
    let mut c = vec![BigInt::zero(); r + 1];
    for i in 0..=alpha {
        let idx = alpha + i * (p as usize - 1) + j * (p as usize - 1);
        let s = if i % 2 == 0 { 1 } else { -1 };
        c[idx] += binom_int(alpha as i64, i as i64) * s;
    }
    c
}

/// Outcome of checking the expansion of `(T − a)(1[θ^n x^{α−n} y^{r−np−α}])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub p: u64,
    pub alpha: usize,
    pub n: usize,
    pub r: usize,
    pub nu: i64,
    pub precision: u32,
    pub a_valuation: String,
    /// Minimum coefficient valuation of LHS − RHS (or the precision).
    pub difference_valuation: String,
    /// Bound the difference must meet.
    pub required: usize,
    /// The `[[1,0],[0,p]]`-part of `T` reproduces the first displayed sum.
    pub diagonal_part_matches: bool,
    /// `−a·e` equals the second displayed sum exactly.
    pub a_part_matches: bool,
    pub support_size: usize,
    pub passed: bool,
}

/// Checks the expansion at one parameter point.
///
/// Regime: `α < ν`, `n ≥ 2ν + 2`, `r ≥ np + α + p`, where `ν` is determined by
/// `v_p(a)`.
#[allow(non_snake_case)]
pub fn verify_lemma_Tma(alpha: usize, n: usize, r: usize, p: u64, a: &EisensteinElement, m: u32) -> Result<LemmaReport> {
    let nu = nu_of(a)?;
    if a.prime() != p {
        return Err(Error::RingMismatch("a lives over a different prime".into()));
    }
    if alpha as i64 >= nu {
        return Err(Error::Degenerate(format!("alpha={alpha} must be < nu={nu}")));
    }
    if (n as i64) < 2 * nu + 2 {
        return Err(Error::Degenerate(format!("n={n} must be >= 2nu+2={}", 2 * nu + 2)));
    }
    if r < n * p as usize + alpha + p as usize {
        return Err(Error::Degenerate(format!("r={r} must be >= np+alpha+p")));
    }
    if m as usize <= n {
        return Err(Error::PrecisionTooSmall { needed: format!("> {n}"), have: m.to_string() });
    }
    let ram = a.ramification();
    let t = EisensteinElement::zero(p, ram, m);
    let a = a.truncate_to(m);
    let v = HomogPoly::from_ints(&t, &theta_power_monomial(p, n, alpha, r));
    let e = InductionElement::single(CosetRep::root(), v);
    let te = hecke_T(&e)?;
    let lhs = te.sub(&e.scale(&a))?;

    // First displayed sum: Σ_j (−1)^j binom(n,j) p^{j(p−1)+α} [[1,0],[0,p]][x^{j(p−1)+α} y^{…}].
    let mut diag = HomogPoly::zero(r, &t);
    for j in 0..=n {
        let idx = alpha + j * (p as usize - 1);
        let s = if j % 2 == 0 { 1 } else { -1 };
        let c = binom_int(n as i64, j as i64) * s * pow_p(p, idx as u32);
        diag.set_coeff(idx, t.from_int_like(&c));
    }
    let diag_coset = CosetRep { n: -1, lo: 0, digits: Vec::new() };
    let rhs1 = InductionElement::single(diag_coset, diag);
    // Second displayed sum: −a Σ_j (−1)^j binom(n−α,j) [θ^α x^{j(p−1)} y^{…}].
    let mut second = HomogPoly::zero(r, &t);
    for j in 0..=(n - alpha) {
        let s = if j % 2 == 0 { 1 } else { -1 };
        let b = binom_int((n - alpha) as i64, j as i64) * s;
        let term = HomogPoly::from_ints(&t, &theta_alpha_times_monomial(p, alpha, j, r)).scale(&t.from_int_like(&b));
        second = second.add(&term)?;
    }
    let rhs2 = InductionElement::single(CosetRep::root(), second.scale(&a.neg()));

    let diag_part = hecke_T_part(&e, HeckePart::Diagonal)?;
    let diagonal_part_matches = diag_part.sub(&rhs1)?.is_zero();
    let a_part_matches = e.scale(&a.neg()).sub(&rhs2)?.is_zero();

    let diff = lhs.sub(&rhs1)?.sub(&rhs2)?;
    let prec = diff.min_precision().min(lhs.min_precision());
    if prec as usize <= n {
        return Err(Error::PrecisionTooSmall { needed: format!("> {n}"), have: prec.to_string() });
    }
    let dv = diff.valuation_lower_bound();
    let passed = dv >= Ratio::from_integer(n as i64) && diagonal_part_matches && a_part_matches;
    Ok(LemmaReport {
        p,
        alpha,
        n,
        r,
        nu,
        precision: m,
        a_valuation: ratio_string(a.valuation().unwrap_or_else(|| Ratio::from_integer(m as i64))),
        difference_valuation: ratio_string(dv),
        required: n,
        diagonal_part_matches,
        a_part_matches,
        support_size: te.support_size(),
        passed,
    })
}

/// One explicit error term of an image construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub tag: String,
    /// The term itself (scaled by `p^scale` to keep coefficients integral),
    /// or `None` for a bucket that is only bounded.
    pub element: Option<InductionElement>,
    /// Power of `p` by which `element` is scaled.
    pub scale: u32,
    /// Claimed lower bound for the valuation of the unscaled term.
    pub bound: Ratio<i64>,
    /// Achieved valuation of the unscaled term.
    pub achieved: Ratio<i64>,
}

impl LedgerEntry {
    pub fn holds(&self) -> bool {
        self.achieved >= self.bound
    }
}

/// The `O(·)` terms of an image construction, made explicit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ErrorLedger {
    pub entries: Vec<LedgerEntry>,
}

impl ErrorLedger {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(LedgerEntry::holds)
    }
}

/// Minimal `r ≥ r_min` with `r ≡ s mod (p−1)`.
pub fn minimal_r(s: usize, r_min: usize, p: u64) -> usize {
    let q = p as usize - 1;
    let mut r = s;
    while r < r_min {
        r += q;
    }
    r
}

/// Builds `E = Σ_i (Σ_l C_l binom(r−β+l, i(p−1)+l)) [x^{i(p−1)+β} y^{r−i(p−1)−β}]`
/// together with the ledger certifying that `E` lies in `Img(T − a)` up to
/// the recorded terms.
///
/// The certificate is the preimage
/// `P = Σ_{α=0}^{γ} (C_{β−α} p^{−α}/(p−1)) Σ_{μ≠0} [μ]^{α−β} [[p,[μ]],[0,1]]·1[θ^n x^{α−n} y^{r−np−α}]`:
/// the ledger records `−aP` exactly and bounds `(T − a)P − E + aP` by
/// `p^{p−1}`. Internally everything is scaled by `p^γ`.
pub fn build_image_element(
    beta: usize,
    gamma: usize,
    c: &CoefficientFamily,
    r: usize,
    p: u64,
    a: &EisensteinElement,
    m: u32,
) -> Result<(InductionElement, ErrorLedger)> {
    let nu = nu_of(a)?;
    if beta > gamma || gamma as i64 >= nu {
        return Err(Error::Degenerate(format!("need 0 <= beta <= gamma < nu, got beta={beta} gamma={gamma} nu={nu}")));
    }
    if let Some((lo, hi)) = c.support_bounds() {
        if lo < beta as i64 - gamma as i64 || hi > beta as i64 {
            return invalid("C must be supported on [beta-gamma, beta]");
        }
    }
    if c.iter().any(|(_, v)| !val_p(v, p).at_least(0)) {
        return invalid("C must take p-integral values");
    }
    let n = ((2 * nu + 2) as usize).max(p as usize - 1 + gamma);
    if r < n * p as usize + gamma + p as usize {
        return Err(Error::Degenerate(format!("r={r} must be >= np+gamma+p with n={n}")));
    }
    let bound_main = p as usize - 1 + gamma;
    let mw = m + gamma as u32;
    if (m as usize) < p as usize {
        return Err(Error::PrecisionTooSmall { needed: format!("> {}", p - 1), have: m.to_string() });
    }
    let ram = a.ramification();
    let t = EisensteinElement::zero(p, ram, mw);
    let a = a.truncate_to(mw);
    let coeff = |x: &num_rational::BigRational| -> Result<EisensteinElement> {
        EisensteinElement::from_padic(&TruncatedPadic::from_rational(x, p, mw)?, ram)
    };

    // E, unscaled.
    let mut e_poly = HomogPoly::zero(r, &t);
    for (l, cl) in c.iter() {
        let cl = coeff(cl)?;
        let mut i = 0usize;
        while i * (p as usize - 1) + beta <= r {
            let b = binom_int(r as i64 - beta as i64 + l, (i * (p as usize - 1)) as i64 + l);
            if !b.is_zero() {
                let j = i * (p as usize - 1) + beta;
                e_poly.set_coeff(j, e_poly.coeff(j).add(&cl.mul(&t.from_int_like(&b))));
            }
            i += 1;
        }
    }
    let e_elem = InductionElement::single(CosetRep::root(), e_poly);

    // p^γ P.
    let gp = group_precision(mw);
    let inv_pm1 = TruncatedPadic::from_i64(p, mw, p as i64 - 1).inverse()?;
    let mut preimage = InductionElement::zero(&t, r);
    for alpha in 0..=gamma {
        let cl = c.get(beta as i64 - alpha as i64);
        if Zero::is_zero(&cl) {
            continue;
        }
        let base = HomogPoly::from_ints(&t, &theta_power_monomial(p, n, alpha, r));
        let scalar = TruncatedPadic::from_rational(&cl, p, mw)?
            .mul(&inv_pm1)
            .mul(&TruncatedPadic::new(p, mw, &pow_p(p, (gamma - alpha) as u32)));
        for mu in 1..p as i64 {
            let tm = crate::number::teichmuller_padic(mu, p, mw)?;
            // [μ]^{α−β} = [μ]^{(α−β) mod (p−1)}
            let ex = (alpha as i64 - beta as i64).mod_floor(&(p as i64 - 1)) as u64;
            let s = EisensteinElement::from_padic(&scalar.mul(&tm.pow(ex)), ram)?;
            let g = [
                QpNum::p_pow(p, gp, 1),
                QpNum::teichmuller(p, gp, mu)?,
                QpNum::zero(p, gp),
                QpNum::one(p, gp),
            ];
            let moved = act(&g, &InductionElement::single(CosetRep::root(), base.scale(&s)))?;
            preimage = preimage.add(&moved)?;
        }
    }
    let tp = hecke_T(&preimage)?;
    let a_term = preimage.scale(&a.neg());
    // (T − a)(p^γ P) − p^γ E − (−a p^γ P) = T(p^γ P) − p^γ E.
    let pg = t.from_int_like(&pow_p(p, gamma as u32));
    let rest = tp.add(&a_term)?.sub(&e_elem.scale(&pg))?.sub(&a_term)?;
    let prec = rest.min_precision();
    if prec as usize <= bound_main {
        return Err(Error::PrecisionTooSmall { needed: format!("> {bound_main}"), have: prec.to_string() });
    }
    let g = Ratio::from_integer(gamma as i64);
    let v_c = c
        .iter()
        .map(|(l, v)| match val_p(v, p) {
            Valuation::Finite(x) => Ratio::from_integer(x + l),
            Valuation::Infinite => Ratio::from_integer(i64::MAX / 4),
        })
        .min();
    let va = a.valuation().unwrap_or_else(|| Ratio::from_integer(mw as i64));
    let mut ledger = ErrorLedger::default();
    if let Some(v_c) = v_c {
        ledger.entries.push(LedgerEntry {
            tag: "a-term".into(),
            bound: va - Ratio::from_integer(beta as i64) + v_c,
            achieved: a_term.valuation_lower_bound() - g,
            element: Some(a_term),
            scale: gamma as u32,
        });
    }
    ledger.entries.push(LedgerEntry {
        tag: format!("O(p^{})", p - 1),
        bound: Ratio::from_integer(p as i64 - 1),
        achieved: rest.valuation_lower_bound() - g,
        element: None,
        scale: gamma as u32,
    });
    Ok((e_elem.map_precision(m), ledger))
}

impl InductionElement {
    fn map_precision(&self, m: u32) -> InductionElement {
        let t = EisensteinElement::zero(self.prime(), self.template().ramification(), m);
        let mut out = InductionElement::zero(&t, self.degree());
        for (c, v) in self.terms() {
            let w = v.map(|x| x.truncate_to(m));
            if !w.is_zero() {
                out.add_term(c.clone(), w).expect("same ring");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::eisenstein_make_a;

    fn a_model(p: u64, nu: i64, m: u32) -> EisensteinElement {
        eisenstein_make_a(p, 2, m, 2 * nu - 1).unwrap()
    }

    #[test]
    fn expansion_holds_at_r_40() {
        let a = a_model(5, 2, 8);
        let rep = verify_lemma_Tma(0, 6, 40, 5, &a, 8).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.diagonal_part_matches);
    }

    #[test]
    fn degenerate_alpha_rejected() {
        let a = a_model(5, 2, 8);
        assert!(matches!(verify_lemma_Tma(6, 6, 60, 5, &a, 8), Err(Error::Degenerate(_))));
        assert!(matches!(verify_lemma_Tma(0, 5, 60, 5, &a, 8), Err(Error::Degenerate(_))));
        assert!(matches!(verify_lemma_Tma(0, 6, 30, 5, &a, 8), Err(Error::Degenerate(_))));
    }

    #[test]
    fn zero_family_gives_zero_element() {
        let (p, nu, m) = (5, 2, 8);
        let a = a_model(p, nu, m);
        let c = CoefficientFamily::default();
        let (e, ledger) = build_image_element(0, 0, &c, 40, p, &a, m).unwrap();
        assert!(e.is_zero());
        assert!(ledger.holds());
    }

    #[test]
    fn first_step_element() {
        let (p, nu, m) = (5, 2, 8);
        let a = a_model(p, nu, m);
        let mut c = CoefficientFamily::default();
        c.set(0, crate::number::rat(1, 1));
        let r = 40;
        let (e, ledger) = build_image_element(0, 0, &c, r, p, &a, m).unwrap();
        let v = e.get(&CosetRep::root()).unwrap();
        for i in 0..=(r / 4) {
            let expected = EisensteinElement::from_int(p, 2, m, &binom_int(r as i64, 4 * i as i64));
            assert_eq!(v.coeff(4 * i), &expected);
        }
        assert!(ledger.holds(), "{ledger:?}");
    }

    #[test]
    fn second_step_ledger() {
        let (p, nu, m) = (5, 2, 8);
        let a = a_model(p, nu, m);
        let mut c = CoefficientFamily::default();
        c.set(0, crate::number::rat(1, 1));
        c.set(1, crate::number::rat(5, 3));
        let r = minimal_r(1, 6 * 5 + 1 + 5, p);
        let (_, ledger) = build_image_element(1, 1, &c, r, p, &a, m).unwrap();
        assert!(ledger.holds(), "{ledger:?}");
    }

    #[test]
    fn listed_points_pass_at_minimal_r() {
        let points: &[(u64, i64, usize, usize)] =
            &[(5, 2, 0, 6), (5, 2, 1, 6), (7, 3, 0, 8), (7, 3, 1, 8), (7, 3, 2, 8), (11, 2, 0, 6), (11, 2, 1, 6)];
        for &(p, nu, alpha, n) in points {
            let m = n as u32 + 2;
            let r = n * p as usize + alpha + p as usize;
            let rep = verify_lemma_Tma(alpha, n, r, p, &a_model(p, nu, m), m).unwrap();
            assert!(rep.passed, "{rep:?}");
            assert!(rep.support_size < 10_000);
        }
    }
}
