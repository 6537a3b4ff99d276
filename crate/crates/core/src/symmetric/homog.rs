//! Homogeneous polynomials `Σ c_j x^j y^{r−j}` and the substitution action of
//! 2×2 matrices.

use crate::error::{Error, Result};
use crate::number::Ring;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// A 2×2 matrix `[[g1, g2], [g3, g4]]`, stored row-major as `[g1, g2, g3, g4]`.
pub type Mat2<R> = [R; 4];

/// Homogeneous polynomial of degree `r` in `x, y`; index `j` holds the
/// coefficient of `x^j y^{r−j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomogPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> HomogPoly<R> {
    /// Builds a polynomial from exactly `r + 1` coefficients.
    pub fn new(coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a homogeneous polynomial needs r+1 >= 1 coefficients".into()));
        }
        if coeffs.iter().any(|c| !c.same_ring(&coeffs[0])) {
            return Err(Error::RingMismatch("coefficients from different rings".into()));
        }
        Ok(HomogPoly { coeffs })
    }

    pub fn zero(degree: usize, template: &R) -> Self {
        HomogPoly { coeffs: vec![template.zero_like(); degree + 1] }
    }

    /// The monomial `c · x^j y^{r−j}`.
    pub fn monomial(degree: usize, j: usize, c: R) -> Self {
        let mut p = Self::zero(degree, &c);
        p.coeffs[j] = c;
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &R {
        &self.coeffs[j]
    }

    pub fn set_coeff(&mut self, j: usize, c: R) {
        self.coeffs[j] = c;
    }

    pub fn template(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if !self.template().same_ring(o.template()) {
            return Err(Error::RingMismatch("polynomials over different rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.degree() != o.degree() {
            return Err(Error::InvalidInput("adding polynomials of different degrees".into()));
        }
        Ok(HomogPoly { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.degree() != o.degree() {
            return Err(Error::InvalidInput("subtracting polynomials of different degrees".into()));
        }
        Ok(HomogPoly { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        HomogPoly { coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        HomogPoly { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(self.degree() + o.degree(), self.template());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(out)
    }

    /// Product with the linear form `a x + b y`.
    pub fn mul_linear(&self, a: &R, b: &R) -> Self {
        let r = self.degree();
        let mut out = Self::zero(r + 1, self.template());
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.coeffs[j + 1] = out.coeffs[j + 1].add(&c.mul(a));
            out.coeffs[j] = out.coeffs[j].add(&c.mul(b));
        }
        out
    }

    pub fn eval(&self, x: &R, y: &R) -> R {
        let mut acc = self.template().zero_like();
        let mut xp = x.one_like();
        let ypows = powers(y, self.degree());
        for (j, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&xp).mul(&ypows[self.degree() - j]));
            xp = xp.mul(x);
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> HomogPoly<S> {
        HomogPoly { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// `(x^j y^{r−j})` lifted from integers.
    pub fn from_ints(template: &R, ints: &[BigInt]) -> Self {
        HomogPoly { coeffs: ints.iter().map(|n| template.from_int_like(n)).collect() }
    }
}

fn powers<R: Ring>(x: &R, n: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = x.one_like();
    for _ in 0..=n {
        out.push(cur.clone());
        cur = cur.mul(x);
    }
    out
}

/// `g · v = v(g1 x + g3 y, g2 x + g4 y)`.
///
/// Evaluated by homogeneous Horner: `S_k = S_{k−1}·X + c_{r−k} Y^k`, so the
/// cost is quadratic in the degree.
pub fn kz_act<R: Ring>(g: &Mat2<R>, v: &HomogPoly<R>) -> Result<HomogPoly<R>> {
    if g.iter().any(|e| !e.same_ring(v.template())) {
        return Err(Error::RingMismatch("matrix and polynomial over different rings".into()));
    }
    let r = v.degree();
    let t = v.template();
    let (g1, g2, g3, g4) = (&g[0], &g[1], &g[2], &g[3]);
    // Y^k = (g2 x + g4 y)^k, built incrementally.
    let mut ypow = HomogPoly::new(vec![t.one_like()])?;
    let mut acc = HomogPoly::new(vec![v.coeffs[r].clone()])?;
    for k in 1..=r {
        ypow = ypow.mul_linear(g2, g4);
        acc = acc.mul_linear(g1, g3).add(&ypow.scale(&v.coeffs[r - k]))?;
    }
    Ok(acc)
}

/// Formal twist `⊗ det^m`; composition adds exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Twist(pub i64);

impl Twist {
    pub fn compose(self, o: Twist) -> Twist {
        Twist(self.0 + o.0)
    }
}

/// A polynomial in a twisted module `Sym^d ⊗ det^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedPoly<R> {
    pub poly: HomogPoly<R>,
    pub twist: Twist,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom_int;
    use crate::number::PrimeFieldElement as Fp;

    fn fp(v: i64) -> Fp {
        Fp::new(101, v)
    }

    #[test]
    fn substitution_examples() {
        let r = 6;
        let y_r = HomogPoly::monomial(r, 0, fp(1));
        let g = [fp(1), fp(1), fp(0), fp(1)];
        let out = kz_act(&g, &y_r).unwrap();
        for j in 0..=r {
            assert_eq!(out.coeff(j).value() as i64, binom_int(r as i64, j as i64).to_string().parse::<i64>().unwrap());
        }
        let v = HomogPoly::new((0..=r as i64).map(|j| fp(j * j + 1)).collect()).unwrap();
        let id = [fp(1), fp(0), fp(0), fp(1)];
        assert_eq!(kz_act(&id, &v).unwrap(), v);
        let lam = [fp(3), fp(0), fp(0), fp(3)];
        assert_eq!(kz_act(&lam, &v).unwrap(), v.scale(&fp(3).pow(r as u64)));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let v = HomogPoly::monomial(2, 1, Fp::new(5, 1));
        let g = [Fp::new(7, 1), Fp::new(7, 0), Fp::new(7, 0), Fp::new(7, 1)];
        assert!(matches!(kz_act(&g, &v), Err(Error::RingMismatch(_))));
    }
}
