//! Exact polynomials and rational functions in two formal variables `X`, `Y`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::combinatorics::factorial;

/// Polynomial in `X`, `Y` over `Q`, stored sparsely by exponent pair
/// `(deg_X, deg_Y)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term((0, 0), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    pub fn x() -> Self {
        Self::monomial(1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), BigRational::one());
        p
    }

    fn add_term(&mut self, e: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&e).map_or(c.clone(), |old| old + c);
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree (`None` for the zero polynomial).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Coefficient of the largest monomial in the order `(total degree, deg_X)`.
    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .iter()
            .max_by_key(|((i, j), _)| (i + j, *i))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BivarPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivarPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, ((i, j), c)| {
            acc + c * num_traits::pow(x.clone(), *i as usize) * num_traits::pow(y.clone(), *j as usize)
        })
    }

    /// Falling factorial `L (L−1) ⋯ (L−k+1)`.
    pub fn falling(&self, k: i64) -> Self {
        let mut out = Self::from_int(1);
        for t in 0..k.max(0) {
            out = out.mul(&self.sub(&Self::from_int(t)));
        }
        out
    }

    /// `binom(L, k) = L_k / k!` (zero for `k < 0`).
    pub fn binom(&self, k: i64) -> Self {
        if k < 0 {
            return Self::zero();
        }
        let f = BigRational::from_integer(factorial(k as u64));
        self.falling(k).scale(&(BigRational::one() / f))
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|((i, j), c)| format!("({c})*X^{i}*Y^{j}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Quotient `num / den` of bivariate polynomials. The pair is kept with a
/// denominator whose leading coefficient is `1`; equality is decided by
/// cross-multiplication, so no multivariate gcd is needed.
#[derive(Debug, Clone)]
pub struct BivarRational {
    num: BivarPoly,
    den: BivarPoly,
}

impl BivarRational {
    pub fn new(num: BivarPoly, den: BivarPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let lc = den.leading_coeff();
        let inv = BigRational::one() / lc;
        Some(BivarRational { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: BivarPoly) -> Self {
        BivarRational { num: p, den: BivarPoly::from_int(1) }
    }

    pub fn zero() -> Self {
        Self::from_poly(BivarPoly::zero())
    }

    pub fn numer(&self) -> &BivarPoly {
        &self.num
    }

    pub fn denom(&self) -> &BivarPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return BivarRational { num: self.num.add(&o.num), den: self.den.clone() };
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        BivarRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn mul_poly(&self, p: &BivarPoly) -> Self {
        Self::new(self.num.mul(p), self.den.clone()).expect("nonzero")
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    /// Evaluates at a point where the denominator does not vanish.
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x, y);
        (!d.is_zero()).then(|| self.num.eval(x, y) / d)
    }
}

impl PartialEq for BivarRational {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Eq for BivarRational {}

impl fmt::Display for BivarRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

/// Integer-valued shorthand used when building polynomial entries.
pub(crate) fn int(n: i64) -> BivarPoly {
    BivarPoly::from_int(n)
}

pub(crate) fn big(n: BigInt) -> BivarPoly {
    BivarPoly::constant(BigRational::from_integer(n))
}
