//! The function spaces `I_h`, the quotient map onto `σ_{⌊−h⌋}(h)`, and
//! classes in the subquotients `N_α`.

use crate::combinatorics::less;
use crate::error::{invalid, Error, Result};
use crate::number::PrimeFieldElement as Fp;
use serde::{Deserialize, Serialize};

use super::homog::{HomogPoly, Mat2, Twist, TwistedPoly};
use super::theta::theta_pow_divide;

/// A degree-`h` homogeneous function `F_p² → F_p` vanishing at the origin,
/// stored as its `p² − 1` values on `F_p² ∖ {0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionSpaceElement {
    p: u64,
    h: i64,
    values: Vec<Fp>,
}

fn index(p: u64, u: u64, v: u64) -> usize {
    (u * p + v) as usize - 1
}

impl FunctionSpaceElement {
    /// Builds an element from a value function, checking homogeneity.
    pub fn from_fn(p: u64, h: i64, f: impl Fn(u64, u64) -> Fp) -> Result<Self> {
        let mut values = Vec::with_capacity((p * p - 1) as usize);
        for u in 0..p {
            for v in 0..p {
                if u == 0 && v == 0 {
                    continue;
                }
                values.push(f(u, v));
            }
        }
        let e = FunctionSpaceElement { p, h, values };
        e.check_homogeneous()?;
        Ok(e)
    }

    /// The function attached to a homogeneous polynomial.
    pub fn from_poly(f: &HomogPoly<Fp>) -> Self {
        let p = f.template().prime();
        let h = f.degree() as i64;
        Self::from_fn(p, h, |u, v| f.eval(&Fp::new(p, u as i64), &Fp::new(p, v as i64)))
            .expect("polynomial functions are homogeneous")
    }

    /// The basis function supported on the line through `(u, v)`, equal to
    /// `λ^h` at `λ(u, v)`.
    pub fn line_indicator(p: u64, h: i64, u: u64, v: u64) -> Result<Self> {
        if (u, v) == (0, 0) {
            return invalid("the origin is not a point of the projective line");
        }
        let mut values = vec![Fp::new(p, 0); (p * p - 1) as usize];
        for lam in 1..p {
            let l = Fp::new(p, lam as i64);
            values[index(p, u * lam % p, v * lam % p)] = l.pow(h.rem_euclid(p as i64 - 1) as u64);
        }
        Ok(FunctionSpaceElement { p, h, values })
    }

    fn check_homogeneous(&self) -> Result<()> {
        let p = self.p;
        let e = self.h.rem_euclid(p as i64 - 1) as u64;
        for u in 0..p {
            for v in 0..p {
                if u == 0 && v == 0 {
                    continue;
                }
                for lam in 2..p {
                    let lhs = self.value(u * lam % p, v * lam % p);
                    let rhs = Fp::new(p, lam as i64).pow(e).mul(self.value(u, v));
                    if lhs != rhs {
                        return invalid(format!("function is not homogeneous of degree {}", self.h));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> i64 {
        self.h
    }

    pub fn value(&self, u: u64, v: u64) -> Fp {
        self.values[index(self.p, u % self.p, v % self.p)]
    }

    pub fn values(&self) -> &[Fp] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        FunctionSpaceElement {
            p: self.p,
            h: self.h,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a.add(*b)).collect(),
        }
    }

    pub fn scale(&self, c: Fp) -> Self {
        FunctionSpaceElement { p: self.p, h: self.h, values: self.values.iter().map(|a| a.mul(c)).collect() }
    }

    /// `(g·f)(u, v) = f(g1 u + g3 v, g2 u + g4 v)`.
    pub fn act(&self, g: &Mat2<Fp>) -> Self {
        let p = self.p;
        let mut values = Vec::with_capacity(self.values.len());
        for u in 0..p {
            for v in 0..p {
                if u == 0 && v == 0 {
                    continue;
                }
                let (uf, vf) = (Fp::new(p, u as i64), Fp::new(p, v as i64));
                let nu = g[0].mul(uf).add(g[2].mul(vf));
                let nv = g[1].mul(uf).add(g[3].mul(vf));
                values.push(if nu.is_zero() && nv.is_zero() {
                    Fp::new(p, 0)
                } else {
                    self.value(nu.value(), nv.value())
                });
            }
        }
        FunctionSpaceElement { p, h: self.h, values }
    }
}

/// `f ↦ Σ_{(u,v)≠0} f(u,v) (vX − uY)^{⌊−h⌋}`, landing in `σ_{⌊−h⌋}(h)`.
pub fn club_map(f: &FunctionSpaceElement) -> TwistedPoly<Fp> {
    let p = f.p;
    let d = less(-f.h, p) as usize;
    let zero = Fp::new(p, 0);
    let mut out = HomogPoly::zero(d, &zero);
    for u in 0..p {
        for v in 0..p {
            if u == 0 && v == 0 {
                continue;
            }
            let c = f.value(u, v);
            if c.is_zero() {
                continue;
            }
            // (vX − uY)^d
            let mut term = HomogPoly::monomial(0, 0, c);
            for _ in 0..d {
                term = term.mul_linear(&Fp::new(p, v as i64), &Fp::new(p, -(u as i64)));
            }
            out = out.add(&term).expect("same degree");
        }
    }
    TwistedPoly { poly: out, twist: Twist(f.h) }
}

/// The reference generator `θ^α x^{p−1} y^{r−α(p+1)−p+1}` of `N_α`, after
/// division by `θ^α`: the monomial `x^{p−1} y^{d−p+1}` with `d = r − α(p+1)`.
fn reference_quotient(p: u64, alpha: usize, r: usize) -> Result<HomogPoly<Fp>> {
    let step = alpha * (p as usize + 1);
    if r < step + p as usize - 1 {
        return invalid("r is too small for the reference generator of N_alpha");
    }
    Ok(HomogPoly::monomial(r - step, p as usize - 1, Fp::new(p, 1)))
}

/// The class of `f ∈ θ^α Σ_{r−α(p+1)}` in `N_α ≅ I_{r−2α}(α)`, compared with
/// the reference generator.
///
/// Returns `(true, c)` when the class is `c` times the reference class with
/// `c ≠ 0`, and `(false, 0)` otherwise.
pub fn n_alpha_class(f: &HomogPoly<Fp>, alpha: usize, r: usize) -> Result<(bool, Fp)> {
    let p = f.template().prime();
    if f.degree() != r {
        return invalid("polynomial degree differs from r");
    }
    let (h, failed) = theta_pow_divide(f, alpha);
    if failed {
        return Err(Error::NotDivisible(format!("polynomial is not divisible by theta^{alpha}")));
    }
    let reference = FunctionSpaceElement::from_poly(&reference_quotient(p, alpha, r)?);
    let class = FunctionSpaceElement::from_poly(&h);
    let zero = Fp::new(p, 0);
    // Find the scalar from a point where the reference is nonzero.
    let (pos, rv) = reference
        .values()
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, *v))
        .expect("reference class is nonzero");
    let c = class.values()[pos].mul(rv.inverse().expect("nonzero"));
    if c.is_zero() || reference.scale(c) != class {
        return Ok((false, zero));
    }
    Ok((true, c))
}
