//! Nice polynomial families `{f_w}`, coefficient families `{D_i}` and the
//! functionals `T_w(D) = Σ_i D_i f_w(i)`.

use crate::error::{invalid, Result};
use crate::number::{val_p, Valuation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

use super::binom::{binom_int, factorial};
use super::poly::{BinomPolynomial, QPoly};

/// How the members `f_w` of a family are generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyRule {
    /// `f_w(X) = binom(λX, w)`.
    ScaledBinomial { scale: i64 },
    /// Explicitly listed polynomials `f_0, f_1, …`.
    Explicit(Vec<QPoly>),
}

/// A family of polynomials with `deg f_w = w` and unit leading coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceFamily {
    pub name: String,
    pub rule: FamilyRule,
}

impl NiceFamily {
    /// The default family `f_w(X) = binom(X(p−1), w)`.
    pub fn default_for(p: u64) -> Self {
        NiceFamily {
            name: format!("binom(X({}),w)", p - 1),
            rule: FamilyRule::ScaledBinomial { scale: p as i64 - 1 },
        }
    }

    pub fn explicit(name: &str, polys: Vec<QPoly>) -> Self {
        NiceFamily { name: name.to_string(), rule: FamilyRule::Explicit(polys) }
    }

    /// `f_w` as a polynomial.
    pub fn poly(&self, w: usize) -> Result<QPoly> {
        match &self.rule {
            FamilyRule::ScaledBinomial { scale } => Ok(BinomPolynomial::new(w)
                .poly()
                .compose(&QPoly::linear(BigRational::from_integer(BigInt::from(*scale)), BigRational::zero()))),
            FamilyRule::Explicit(ps) => match ps.get(w) {
                Some(p) => Ok(p.clone()),
                None => invalid(format!("family {} has no member of degree {w}", self.name)),
            },
        }
    }

    /// `f_w(i)`.
    pub fn eval(&self, w: usize, i: i64) -> Result<BigRational> {
        match &self.rule {
            FamilyRule::ScaledBinomial { scale } => {
                Ok(BigRational::from_integer(binom_int(scale * i, w as i64)))
            }
            FamilyRule::Explicit(_) => Ok(self.poly(w)?.eval_int(i)),
        }
    }

    /// The leading coefficient `c_w` of `f_w`.
    pub fn leading_coeff(&self, w: usize) -> Result<BigRational> {
        match &self.rule {
            FamilyRule::ScaledBinomial { scale } => Ok(BigRational::new(
                num_traits::pow(BigInt::from(*scale), w),
                factorial(w as u64),
            )),
            FamilyRule::Explicit(_) => Ok(self.poly(w)?.leading_coeff()),
        }
    }

    /// Checks `deg f_w = w` and `v_p(c_w) = 0` for `w ≤ max_w`.
    pub fn validate(&self, p: u64, max_w: usize) -> Result<()> {
        for w in 0..=max_w {
            let f = self.poly(w)?;
            if f.degree() != Some(w) {
                return invalid(format!("f_{w} of family {} has the wrong degree", self.name));
            }
            if val_p(&f.leading_coeff(), p) != Valuation::Finite(0) {
                return invalid(format!(
                    "leading coefficient of f_{w} in family {} is not a {p}-adic unit",
                    self.name
                ));
            }
        }
        Ok(())
    }
}

/// A finitely supported family `i ↦ D_i` of rationals; reads outside the
/// support return zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoefficientFamily {
    entries: BTreeMap<i64, BigRational>,
}

impl CoefficientFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut f = Self::new();
        for (i, v) in pairs {
            f.set(i, v);
        }
        f
    }

    pub fn get(&self, i: i64) -> BigRational {
        self.entries.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Sets `D_i`; zero values are removed from the support.
    pub fn set(&mut self, i: i64, v: BigRational) {
        if v.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    /// Smallest and largest index of the support.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        Some((*self.entries.keys().next()?, *self.entries.keys().next_back()?))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &BigRational, other: &Self, b: &BigRational) -> Self {
        let mut out = Self::new();
        for i in self.entries.keys().chain(other.entries.keys()) {
            out.set(*i, a * self.get(*i) + b * other.get(*i));
        }
        out
    }

    /// Minimum valuation over the support (`Infinite` if empty).
    pub fn valuation(&self, p: u64) -> Valuation {
        self.entries.values().map(|v| val_p(v, p)).min().unwrap_or(Valuation::Infinite)
    }
}

/// `T_w(D) = Σ_i D_i f_w(i)`.
#[allow(non_snake_case)]
pub fn T_functional(family: &NiceFamily, d: &CoefficientFamily, w: usize) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (i, v) in d.iter() {
        acc += v * family.eval(w, i)?;
    }
    Ok(acc)
}

/// `Σ_i D_i binom(i, w)`, the functionals in the plain binomial basis.
pub fn binomial_moment(d: &CoefficientFamily, w: usize) -> BigRational {
    d.iter()
        .map(|(i, v)| v * BigRational::from_integer(binom_int(i, w as i64)))
        .fold(BigRational::zero(), |a, b| a + b)
}
