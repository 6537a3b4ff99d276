//! Finitely supported elements of `ind_{KZ}^G Sym^r` over a ramified
//! coefficient ring, the `G`-action and the Hecke operator `T`.

use crate::error::{Error, Result};
use crate::number::{EisensteinElement, Ring, TruncatedPadic};
use crate::symmetric::{kz_act, HomogPoly};
use num_rational::Ratio;
use std::collections::BTreeMap;

use super::coset::{canonicalize, CosetRep};
use super::qp::{mat_mul, QpMatrix, QpNum};

/// Extra relative precision carried by group-element entries, so that
/// digit expansions never limit the coefficient precision.
const GROUP_GUARD: u32 = 6;

/// `Σ_c [c, v_c]`: a finite map from vertices to polynomials of degree `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionElement {
    template: EisensteinElement,
    r: usize,
    terms: BTreeMap<CosetRep, HomogPoly<EisensteinElement>>,
}

impl InductionElement {
    /// The zero element; `template` fixes the coefficient ring and precision.
    pub fn zero(template: &EisensteinElement, r: usize) -> Self {
        InductionElement { template: template.zero_like(), r, terms: BTreeMap::new() }
    }

    /// The single term `[c, v]`.
    pub fn single(coset: CosetRep, v: HomogPoly<EisensteinElement>) -> Self {
        let mut e = Self::zero(v.template(), v.degree());
        e.add_term(coset, v).expect("matching degree");
        e
    }

    pub fn prime(&self) -> u64 {
        self.template.prime()
    }

    pub fn precision(&self) -> u32 {
        self.template.precision()
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn template(&self) -> &EisensteinElement {
        &self.template
    }

    pub fn terms(&self) -> &BTreeMap<CosetRep, HomogPoly<EisensteinElement>> {
        &self.terms
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, c: &CosetRep) -> Option<&HomogPoly<EisensteinElement>> {
        self.terms.get(c)
    }

    /// Adds `[c, v]`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, c: CosetRep, v: HomogPoly<EisensteinElement>) -> Result<()> {
        if v.degree() != self.r {
            return Err(Error::InvalidInput("polynomial degree differs from the module's".into()));
        }
        if !v.template().same_ring(&self.template) {
            return Err(Error::RingMismatch("coefficient rings differ".into()));
        }
        let sum = match self.terms.remove(&c) {
            Some(old) => old.add(&v)?,
            None => v,
        };
        if !sum.is_zero() {
            self.terms.insert(c, sum);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (c, v) in &o.terms {
            out.add_term(c.clone(), v.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|v| v.neg())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: &EisensteinElement) -> Self {
        self.map_coeffs(|v| v.scale(a))
    }

    fn map_coeffs(&self, f: impl Fn(&HomogPoly<EisensteinElement>) -> HomogPoly<EisensteinElement>) -> Self {
        let mut out = Self::zero(&self.template, self.r);
        for (c, v) in &self.terms {
            let w = f(v);
            if !w.is_zero() {
                out.terms.insert(c.clone(), w);
            }
        }
        out
    }

    /// Smallest coefficient precision over the support (the module precision
    /// if the support is empty).
    pub fn min_precision(&self) -> u32 {
        self.terms
            .values()
            .flat_map(|v| v.coeffs().iter().map(|c| c.precision()))
            .min()
            .unwrap_or(self.template.precision())
    }

    /// Lower bound for the valuation of every coefficient: the exact minimum
    /// valuation, or the precision where everything vanishes.
    pub fn valuation_lower_bound(&self) -> Ratio<i64> {
        self.terms
            .values()
            .flat_map(|v| v.coeffs().iter().map(|c| c.valuation_lower_bound()))
            .min()
            .unwrap_or_else(|| Ratio::from_integer(self.template.precision() as i64))
    }
}

/// Transports `v` by `k ∈ GL_2(Z_p)` through plain substitution.
fn transport(k: &[TruncatedPadic; 4], v: &HomogPoly<EisensteinElement>) -> Result<HomogPoly<EisensteinElement>> {
    let e = v.template().ramification();
    let is_identity = k[0].residue() == &1.into()
        && k[1].residue() == &0.into()
        && k[2].residue() == &0.into()
        && k[3].residue() == &1.into();
    let prec = k.iter().map(|x| x.precision()).min().expect("four entries");
    if is_identity {
        let t = EisensteinElement::from_padic(&TruncatedPadic::one(v.template().prime(), prec), e)?;
        return Ok(v.scale(&t));
    }
    let g = [
        EisensteinElement::from_padic(&k[0], e)?,
        EisensteinElement::from_padic(&k[1], e)?,
        EisensteinElement::from_padic(&k[2], e)?,
        EisensteinElement::from_padic(&k[3], e)?,
    ];
    kz_act(&g, v)
}

/// Group precision used for an element of coefficient precision `m`.
pub fn group_precision(m: u32) -> u32 {
    m + GROUP_GUARD
}

/// Left translation `g · Σ [c, v] = Σ [g c, v]`, renormalised so that every
/// vertex is canonical and the `KZ`-factor acts on `v`.
pub fn act(g: &QpMatrix, e: &InductionElement) -> Result<InductionElement> {
    let p = e.prime();
    let gp = group_precision(e.precision());
    let mut out = InductionElement::zero(&e.template, e.r);
    for (c, v) in &e.terms {
        let gc = mat_mul(g, &c.matrix(p, gp)?);
        let canon = canonicalize(&gc, gp)?;
        out.add_term(canon.coset, transport(&canon.k, v)?)?;
    }
    Ok(out)
}

/// Adds `[γ h, w]` to `out`, where `γ` is the matrix of `c`.
fn push_translate(
    out: &mut InductionElement,
    gamma: &QpMatrix,
    h: &QpMatrix,
    w: HomogPoly<EisensteinElement>,
    gp: u32,
) -> Result<()> {
    let canon = canonicalize(&mat_mul(gamma, h), gp)?;
    out.add_term(canon.coset, transport(&canon.k, &w)?)
}

/// Which parts of the Hecke operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeckePart {
    /// The full operator.
    All,
    /// Only the terms `γ[[p, [μ]], [0, 1]][[[1, −[μ]], [0, p]]·v]`.
    Mu,
    /// Only the term `γ[[1, 0], [0, p]][[[p, 0], [0, 1]]·v]`.
    Diagonal,
}

/// `T(γ[v]) = Σ_μ γ[[p,[μ]],[0,1]][v(x, −[μ]x + p y)] + γ[[1,0],[0,p]][v(p x, y)]`.
#[allow(non_snake_case)]
pub fn hecke_T(e: &InductionElement) -> Result<InductionElement> {
    hecke_T_part(e, HeckePart::All)
}

#[allow(non_snake_case)]
pub fn hecke_T_part(e: &InductionElement, part: HeckePart) -> Result<InductionElement> {
    let p = e.prime();
    let m = e.precision();
    let ram = e.template.ramification();
    let gp = group_precision(m);
    let mut out = InductionElement::zero(&e.template, e.r);
    let coeff = |x: TruncatedPadic| EisensteinElement::from_padic(&x, ram);
    let zero = coeff(TruncatedPadic::zero(p, m))?;
    let one = coeff(TruncatedPadic::one(p, m))?;
    let pp = coeff(TruncatedPadic::from_i64(p, m, p as i64))?;
    for (c, v) in &e.terms {
        let gamma = c.matrix(p, gp)?;
        if part != HeckePart::Diagonal {
            for mu in 0..p as i64 {
                let t = crate::number::teichmuller_padic(mu, p, m)?;
                let sub = [one.clone(), coeff(t.neg())?, zero.clone(), pp.clone()];
                let w = kz_act(&sub, v)?;
                let h = [
                    QpNum::p_pow(p, gp, 1),
                    QpNum::teichmuller(p, gp, mu)?,
                    QpNum::zero(p, gp),
                    QpNum::one(p, gp),
                ];
                push_translate(&mut out, &gamma, &h, w, gp)?;
            }
        }
        if part != HeckePart::Mu {
            let sub = [pp.clone(), zero.clone(), zero.clone(), one.clone()];
            let w = kz_act(&sub, v)?;
            let h = [QpNum::one(p, gp), QpNum::zero(p, gp), QpNum::zero(p, gp), QpNum::p_pow(p, gp, 1)];
            push_translate(&mut out, &gamma, &h, w, gp)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::qp::mat_from_ints;
    use num_bigint::BigInt;

    fn poly(p: u64, m: u32, r: usize, f: impl Fn(usize) -> i64) -> HomogPoly<EisensteinElement> {
        let t = EisensteinElement::zero(p, 2, m);
        HomogPoly::from_ints(&t, &(0..=r).map(|j| BigInt::from(f(j))).collect::<Vec<_>>())
    }

    #[test]
    fn identity_and_centre_act_trivially() {
        let (p, m, r) = (5, 6, 8);
        let e = InductionElement::single(CosetRep::root(), poly(p, m, r, |j| j as i64 + 1));
        let id = mat_from_ints(p, m + 6, [1, 0, 0, 1], 0);
        assert_eq!(act(&id, &e).unwrap(), e);
        let z = mat_from_ints(p, m + 6, [1, 0, 0, 1], 1);
        assert_eq!(act(&z, &e).unwrap(), e);
    }

    #[test]
    fn hecke_support_bound() {
        let (p, m, r) = (5, 6, 8);
        let e = InductionElement::single(CosetRep::root(), poly(p, m, r, |j| (j * j) as i64));
        let t = hecke_T(&e).unwrap();
        assert!(t.support_size() <= (p as usize + 1) * e.support_size());
        assert_eq!(t.support_size(), p as usize + 1);
    }
}
