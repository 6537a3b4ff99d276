//! Executable verifiers for the eleven binomial-sum identities
//! over explicit finite grids.

use crate::error::{invalid, Result};
use crate::number::{is_prime, pow_p, rat, val_p, val_p_int, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

use super::bigm::{bigm_from_row, less, more};
use super::binom::{binom_int, binom_row, PascalTable};
use super::family::{binomial_moment, CoefficientFamily, NiceFamily, T_functional};
use super::poly::{BinomPolynomial, QPoly};

/// The eleven binomial-sum identities, named by what they state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    Periodicity,
    FirstOrder,
    NegativeIndex,
    ClosedFormModP,
    DifferenceMoment,
    ProductExpansion,
    WeightedSum,
    DerivativeSum,
    AlternatingConvolution,
    NegativeConvolution,
    DoubleAlternating,
}

impl IdentityId {
    pub const ALL: [IdentityId; 11] = [
        IdentityId::Periodicity,
        IdentityId::FirstOrder,
        IdentityId::NegativeIndex,
        IdentityId::ClosedFormModP,
        IdentityId::DifferenceMoment,
        IdentityId::ProductExpansion,
        IdentityId::WeightedSum,
        IdentityId::DerivativeSum,
        IdentityId::AlternatingConvolution,
        IdentityId::NegativeConvolution,
        IdentityId::DoubleAlternating,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::Periodicity => "periodicity",
            IdentityId::FirstOrder => "first-order",
            IdentityId::NegativeIndex => "negative-index",
            IdentityId::ClosedFormModP => "closed-form-mod-p",
            IdentityId::DifferenceMoment => "difference-moment",
            IdentityId::ProductExpansion => "product-expansion",
            IdentityId::WeightedSum => "weighted-sum",
            IdentityId::DerivativeSum => "derivative-sum",
            IdentityId::AlternatingConvolution => "alternating-convolution",
            IdentityId::NegativeConvolution => "negative-convolution",
            IdentityId::DoubleAlternating => "double-alternating",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            IdentityId::Periodicity => "M_{u,n} = M_{v,n} mod p^m when u = v mod (p-1)p^(m-1)",
            IdentityId::FirstOrder => "v_p(M_u - 1 - [u=0 mod p-1] - (t_u/s_u)p) >= v_p(t_u) + 2",
            IdentityId::NegativeIndex => "M_{u,n} = sum_i (-1)^i binom(-n,i) M_{u-n-i,0} for n <= 0",
            IdentityId::ClosedFormModP => "M_{u,n} = (1+delta) binom(<u>,floor(n)) mod p for n >= 0",
            IdentityId::DifferenceMoment => "sum_j (-1)^(j-b) binom(l,j-b) binom(u-nj,w) = [w=l] n^l",
            IdentityId::ProductExpansion => "binom(X,t+l) binom(t,w) = sum_v (-1)^(w-v) binom(l+w-v-1,w-v) binom(X,v) binom(X-v,t+l-v)",
            IdentityId::WeightedSum => "sum_i binom(u-m+l,i(p-1)+l) binom(i(p-1),w) = sum_v (-1)^(w-v) binom(l+w-v-1,w-v) binom(u-m+l,v) M_{u-m+l-v,l-v}",
            IdentityId::DerivativeSum => "sum_w (-1)^w binom(y,w)' binom(y+u-w,v-w) = -sum_{w>0} binom(u-w,v-w)/w",
            IdentityId::AlternatingConvolution => "sum_w (-1)^w binom(y,w) binom(y+u-w,v-w) = (-1)^v binom(v-u-1,v)",
            IdentityId::NegativeConvolution => "sum_w binom(l-1,w-1) binom(-j,w-v) = (-1)^(l-v) binom(j-v,l-v)",
            IdentityId::DoubleAlternating => "sum_l (-1)^l binom(l,i) binom(u,l-v) = (-1)^(u+v) binom(v,u+v-i)",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.tag() == tag)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Parameter ranges for the identity sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityGrid {
    /// Primes used by the identities that involve `p`.
    pub primes: Vec<u64>,
    /// Upper bound for `u` in the negative-index identity and the seven identities from difference-moment on.
    pub max_u: i64,
    /// Upper bound for every other free parameter of those seven identities.
    pub max_param: i64,
    /// Upper bound for `u, v` in the periodicity identity and for `u` in the first-order expansion.
    pub congruence_max_u: i64,
    /// Upper bound for `u` in the closed-form-mod-p identity.
    pub residue_max_u: i64,
    /// Exponents `m` for the periodicity identity.
    pub periodicity_exponents: Vec<u32>,
    /// Range of `n` for the periodicity identity.
    pub periodicity_n: (i64, i64),
    /// Number of `(u, v)` pairs per class in the periodicity identity.
    pub periodicity_pairs: usize,
    /// Range of negative `n` for the negative-index identity.
    pub negative_n: (i64, i64),
}

impl Default for IdentityGrid {
    fn default() -> Self {
        IdentityGrid {
            primes: vec![3, 5, 7, 11, 13],
            max_u: 60,
            max_param: 10,
            congruence_max_u: 400,
            residue_max_u: 200,
            periodicity_exponents: vec![1, 2, 3],
            periodicity_n: (-6, 6),
            periodicity_pairs: 20,
            negative_n: (-6, -1),
        }
    }
}

impl IdentityGrid {
    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.primes.iter().find(|p| !is_prime(**p) || **p < 3) {
            return invalid(format!("{p} is not an odd prime"));
        }
        if self.max_u < 0 || self.max_param < 0 || self.congruence_max_u < 1 || self.residue_max_u < 1 {
            return invalid("identity grid bounds must be non-negative");
        }
        if self.periodicity_n.0 > self.periodicity_n.1 || self.negative_n.0 > self.negative_n.1 || self.negative_n.1 > 0 {
            return invalid("malformed n-range in identity grid");
        }
        if self.periodicity_exponents.contains(&0) {
            return invalid("the periodicity identity needs m >= 1");
        }
        Ok(())
    }
}

/// Outcome of sweeping one identity over a grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub statement: String,
    /// Human-readable description of the grid that was swept.
    pub grid: String,
    /// Number of grid points checked.
    pub checked: u64,
    /// Number of grid points where the identity failed.
    pub failures: u64,
    /// Parameters and values at the first failing point.
    pub first_counterexample: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

struct Tally {
    checked: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: 0, first: None }
    }

    fn record(&mut self, ok: bool, point: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(point());
            }
        }
    }

    fn finish(self, id: IdentityId, grid: String) -> IdentityReport {
        IdentityReport {
            id,
            statement: id.statement().to_string(),
            grid,
            checked: self.checked,
            failures: self.failures,
            first_counterexample: self.first,
        }
    }
}

/// Cache of binomial rows, so each `M_{u,·}` costs one row.
struct RowCache(HashMap<u64, Vec<BigInt>>);

impl RowCache {
    fn new() -> Self {
        RowCache(HashMap::new())
    }

    fn m(&mut self, u: u64, n: i64, p: u64) -> BigInt {
        let row = self.0.entry(u).or_insert_with(|| binom_row(u));
        bigm_from_row(row, n, p)
    }
}

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sweeps identity `id` over `grid`.
pub fn verify_identity(id: IdentityId, grid: &IdentityGrid) -> Result<IdentityReport> {
    grid.validate()?;
    Ok(match id {
        IdentityId::Periodicity => verify_periodicity(grid),
        IdentityId::FirstOrder => verify_first_order(grid),
        IdentityId::NegativeIndex => verify_negative_index(grid),
        IdentityId::ClosedFormModP => verify_closed_form_mod_p(grid),
        IdentityId::DifferenceMoment => verify_difference_moment(grid),
        IdentityId::ProductExpansion => verify_product_expansion(grid),
        IdentityId::WeightedSum => verify_weighted_sum(grid),
        IdentityId::DerivativeSum => verify_derivative_sum(grid),
        IdentityId::AlternatingConvolution => verify_alternating_convolution(grid),
        IdentityId::NegativeConvolution => verify_negative_convolution(grid),
        IdentityId::DoubleAlternating => verify_double_alternating(grid),
    })
}

/// Deterministic `(u, v)` pairs with `u ≡ v mod q`, `1 ≤ u ≤ cap`.
///
/// `v` stays within `cap` whenever the class allows a distinct partner; if
/// `q ≥ cap` the partner `u + q` necessarily exceeds `cap`.
pub fn congruent_pairs(q: i64, cap: i64, count: usize) -> Vec<(i64, i64)> {
    (0..count as i64)
        .map(|k| {
            let u = 1 + (k * 19 + 7) % cap;
            let mult = 1 + k % 2;
            let v = if u + mult * q <= cap {
                u + mult * q
            } else if u - q >= 1 {
                u - q
            } else {
                u + q
            };
            (u, v)
        })
        .collect()
}

fn verify_periodicity(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let mut rows = RowCache::new();
    for &p in &g.primes {
        for &m in &g.periodicity_exponents {
            let q = (p as i64 - 1) * (p as i64).pow(m - 1);
            let pm = pow_p(p, m);
            for n in g.periodicity_n.0..=g.periodicity_n.1 {
                for (u, v) in congruent_pairs(q, g.congruence_max_u, g.periodicity_pairs) {
                    let d = rows.m(u as u64, n, p) - rows.m(v as u64, n, p);
                    t.record(d.is_multiple_of(&pm), || format!("p={p} m={m} n={n} u={u} v={v}"));
                }
            }
        }
    }
    let grid = format!(
        "p in {:?}, m in {:?}, n in [{}, {}], {} pairs per class, u <= {}",
        g.primes, g.periodicity_exponents, g.periodicity_n.0, g.periodicity_n.1, g.periodicity_pairs, g.congruence_max_u
    );
    t.finish(IdentityId::Periodicity, grid)
}

/// The deviation `M_u − 1 − δ − (t_u/s_u)p` whose valuation the first-order identity bounds.
pub fn first_order_deviation(u: u64, p: u64) -> (BigRational, BigInt) {
    let s = more(u as i64, p);
    let t = (u as i64 - s) / (p as i64 - 1);
    let delta = if s == p as i64 - 1 { 2 } else { 1 };
    let m = super::bigm::bigM(u, 0, p);
    let dev = BigRational::from_integer(m - bi(delta)) - rat(t * p as i64, s);
    (dev, bi(t))
}

fn verify_first_order(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let mut rows = RowCache::new();
    for &p in &g.primes {
        for u in 1..=g.congruence_max_u {
            let s = more(u, p);
            let tu = (u - s) / (p as i64 - 1);
            let delta = if s == p as i64 - 1 { 2 } else { 1 };
            let dev = BigRational::from_integer(rows.m(u as u64, 0, p) - bi(delta)) - rat(tu * p as i64, s);
            let bound = match val_p_int(&bi(tu), p) {
                Valuation::Finite(v) => v + 2,
                Valuation::Infinite => i64::MAX,
            };
            let ok = match val_p(&dev, p) {
                Valuation::Infinite => true,
                Valuation::Finite(v) => v >= bound,
            };
            t.record(ok, || format!("p={p} u={u} deviation={dev}"));
        }
    }
    let grid = format!("p in {:?}, 1 <= u <= {}", g.primes, g.congruence_max_u);
    t.finish(IdentityId::FirstOrder, grid)
}

fn verify_negative_index(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let mut rows = RowCache::new();
    for &p in &g.primes {
        for u in 0..=g.max_u {
            for n in g.negative_n.0..=g.negative_n.1 {
                let lhs = rows.m(u as u64, n, p);
                let rhs: BigInt = (0..=-n)
                    .map(|i| bi(sign(i)) * binom_int(-n, i) * rows.m((u - n - i) as u64, 0, p))
                    .sum();
                t.record(lhs == rhs, || format!("p={p} u={u} n={n} lhs={lhs} rhs={rhs}"));
            }
        }
    }
    let grid = format!("p in {:?}, 0 <= u <= {}, n in [{}, {}]", g.primes, g.max_u, g.negative_n.0, g.negative_n.1);
    t.finish(IdentityId::NegativeIndex, grid)
}

fn verify_closed_form_mod_p(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let mut rows = RowCache::new();
    for &p in &g.primes {
        let q = p as i64 - 1;
        for u in 1..=g.residue_max_u {
            for n in 0..=2 * q {
                let lhs = rows.m(u as u64, n, p);
                let factor = if u % q == 0 && n % q == 0 { 2 } else { 1 };
                let rhs = bi(factor) * binom_int(more(u, p), less(n, p));
                let ok = (&lhs - &rhs).is_multiple_of(&bi(p as i64));
                t.record(ok, || format!("p={p} u={u} n={n}"));
            }
        }
    }
    let grid = format!("p in {:?}, 1 <= u <= {}, 0 <= n <= 2(p-1)", g.primes, g.residue_max_u);
    t.finish(IdentityId::ClosedFormModP, grid)
}

fn verify_difference_moment(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let k = g.max_param;
    let table = PascalTable::new((g.max_u.max(2 * k) + 1) as usize);
    for b in 0..=k {
        for l in 0..=k {
            for w in 0..=l {
                for n in 0..=k {
                    for u in (b + l) * n..=g.max_u {
                        let lhs: BigInt = (b..=b + l)
                            .map(|j| bi(sign(j - b)) * table.get(l, j - b) * table.get(u - n * j, w))
                            .sum();
                        let rhs = if w == l { num_traits::pow(bi(n), l as usize) } else { BigInt::zero() };
                        t.record(lhs == rhs, || format!("b={b} l={l} w={w} n={n} u={u}"));
                    }
                }
            }
        }
    }
    let grid = format!("0 <= b,l,n <= {k}, w <= l, (b+l)n <= u <= {}", g.max_u);
    t.finish(IdentityId::DifferenceMoment, grid)
}

/// `binom(X − v, k)` as a polynomial in `X`, memoised.
struct ShiftedBinoms {
    base: Vec<QPoly>,
    cache: HashMap<(i64, i64), QPoly>,
}

impl ShiftedBinoms {
    fn new(max_k: usize) -> Self {
        ShiftedBinoms {
            base: (0..=max_k).map(|k| BinomPolynomial::new(k).poly().clone()).collect(),
            cache: HashMap::new(),
        }
    }

    /// `binom(X + shift, k)`; zero for `k < 0`.
    fn get(&mut self, shift: i64, k: i64) -> QPoly {
        if k < 0 {
            return QPoly::zero();
        }
        if let Some(p) = self.cache.get(&(shift, k)) {
            return p.clone();
        }
        let inner = QPoly::linear(BigRational::one(), BigRational::from_integer(bi(shift)));
        let p = self.base[k as usize].compose(&inner);
        self.cache.insert((shift, k), p.clone());
        p
    }
}

fn verify_product_expansion(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let k = g.max_param;
    let mut sb = ShiftedBinoms::new((3 * k) as usize);
    for tt in -k..=k {
        for l in 0..=k {
            for w in 0..=k {
                let lhs = sb.get(0, tt + l).scale(&BigRational::from_integer(binom_int(tt, w)));
                let mut rhs = QPoly::zero();
                for v in 0..=w {
                    let c = bi(sign(w - v)) * binom_int(l + w - v - 1, w - v);
                    if c.is_zero() {
                        continue;
                    }
                    let term = sb.get(0, v).mul(&sb.get(-v, tt + l - v));
                    rhs = rhs.add(&term.scale(&BigRational::from_integer(c)));
                }
                t.record(lhs == rhs, || format!("t={tt} l={l} w={w}"));
            }
        }
    }
    let grid = format!("-{k} <= t <= {k}, 0 <= l,w <= {k}, as polynomials in X");
    t.finish(IdentityId::ProductExpansion, grid)
}

fn verify_weighted_sum(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let k = g.max_param;
    let top = (g.max_u + k + 1) as usize;
    let table = PascalTable::new(top + 1);
    for &p in &g.primes {
        let q = p as i64 - 1;
        // M_{a,b} for 0 <= a <= top, by residue of b.
        let mtab: Vec<Vec<BigInt>> = (0..=top as i64)
            .map(|a| (0..q).map(|b| (0..=a).filter(|x| (x - b) % q == 0).map(|x| table.get(a, x)).sum()).collect())
            .collect();
        for u in 0..=g.max_u {
            for m in 0..=k {
                for l in 0..=k {
                    for w in 0..=k {
                        if u + l < m + w {
                            continue;
                        }
                        let a = u - m + l;
                        let i_lo = Integer::div_floor(&(-l), &q);
                        let i_hi = Integer::div_floor(&(a - l), &q);
                        let lhs: BigInt = (i_lo..=i_hi)
                            .map(|i| table.get(a, i * q + l) * table.get(i * q, w))
                            .sum();
                        let rhs: BigInt = (0..=w)
                            .map(|v| {
                                bi(sign(w - v))
                                    * table.get(l + w - v - 1, w - v)
                                    * table.get(a, v)
                                    * &mtab[(a - v) as usize][(l - v).rem_euclid(q) as usize]
                            })
                            .sum();
                        t.record(lhs == rhs, || format!("p={p} u={u} m={m} l={l} w={w}"));
                    }
                }
            }
        }
    }
    let grid = format!("p in {:?}, 0 <= u <= {}, 0 <= m,l,w <= {k}, u+l >= m+w", g.primes, g.max_u);
    t.finish(IdentityId::WeightedSum, grid)
}

fn verify_derivative_sum(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let k = g.max_param;
    let mut sb = ShiftedBinoms::new(k as usize);
    for u in 0..=g.max_u {
        for v in 0..=k {
            let mut lhs = QPoly::zero();
            for w in 0..=v {
                let d = sb.get(0, w).derivative();
                let term = d.mul(&sb.get(u - w, v - w));
                lhs = if w % 2 == 0 { lhs.add(&term) } else { lhs.sub(&term) };
            }
            let rhs: BigRational = (1..=v)
                .map(|w| BigRational::new(-binom_int(u - w, v - w), bi(w)))
                .fold(BigRational::zero(), |a, b| a + b);
            t.record(lhs == QPoly::constant(rhs.clone()), || format!("u={u} v={v} rhs={rhs}"));
        }
    }
    let grid = format!("0 <= u <= {}, 0 <= v <= {k}, as polynomials in y", g.max_u);
    t.finish(IdentityId::DerivativeSum, grid)
}

fn verify_alternating_convolution(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let k = g.max_param;
    let mut sb = ShiftedBinoms::new(k as usize);
    for u in 0..=g.max_u {
        for v in 0..=k {
            let mut lhs = QPoly::zero();
            for w in 0..=v {
                let term = sb.get(0, w).mul(&sb.get(u - w, v - w));
                lhs = if w % 2 == 0 { lhs.add(&term) } else { lhs.sub(&term) };
            }
            let rhs = BigRational::from_integer(bi(sign(v)) * binom_int(v - u - 1, v));
            t.record(lhs == QPoly::constant(rhs), || format!("u={u} v={v}"));
        }
    }
    let grid = format!("0 <= u <= {}, 0 <= v <= {k}, as polynomials in y", g.max_u);
    t.finish(IdentityId::AlternatingConvolution, grid)
}

fn verify_negative_convolution(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let k = g.max_param;
    for l in 1..=k {
        for j in 0..=k {
            for v in 0..=k {
                let lhs: BigInt = (1..=l).map(|w| binom_int(l - 1, w - 1) * binom_int(-j, w - v)).sum();
                let rhs = bi(sign(l - v)) * binom_int(j - v, l - v);
                t.record(lhs == rhs, || format!("l={l} j={j} v={v}"));
            }
        }
    }
    let grid = format!("1 <= l <= {k}, 0 <= j,v <= {k}");
    t.finish(IdentityId::NegativeConvolution, grid)
}

fn verify_double_alternating(g: &IdentityGrid) -> IdentityReport {
    let mut t = Tally::new();
    let k = g.max_param;
    let table = PascalTable::new((g.max_u + k + 1) as usize);
    for i in 0..=k {
        for u in 0..=g.max_u {
            for v in 0..=k {
                let lhs: BigInt = (v..=u + v).map(|l| bi(sign(l)) * table.get(l, i) * table.get(u, l - v)).sum();
                let rhs = bi(sign(u + v)) * table.get(v, u + v - i);
                t.record(lhs == rhs, || format!("i={i} u={u} v={v}"));
            }
        }
    }
    let grid = format!("0 <= i,v <= {k}, 0 <= u <= {}", g.max_u);
    t.finish(IdentityId::DoubleAlternating, grid)
}

/// Outcome of the change-of-basis check between `T_w` and binomial moments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanReport {
    pub checked: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

/// Checks that `{T_0, …, T_{α−1}}` vanish on `D` iff the binomial moments
/// `Σ_i D_i binom(i, w)`, `w < α`, vanish, for the default family.
///
/// Half of the random families are adjusted on `D_0, …, D_{α−1}` so that the
/// moments vanish, exercising both directions.
pub fn verify_span_invariant(p: u64, max_alpha: usize, trials: usize, seed: u64) -> Result<SpanReport> {
    if !is_prime(p) || p < 3 {
        return invalid(format!("{p} is not an odd prime"));
    }
    let family = NiceFamily::default_for(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut t = Tally::new();
    for alpha in 1..=max_alpha.min(p as usize - 1) {
        for trial in 0..trials {
            let len = alpha as i64 + rng.random_range(0..6);
            let mut d = CoefficientFamily::from_pairs(
                (0..len).map(|i| (i, BigRational::from_integer(bi(rng.random_range(-20..=20))))),
            );
            if trial % 2 == 0 {
                kill_moments(&mut d, alpha);
            }
            let t_zero = (0..alpha).all(|w| T_functional(&family, &d, w).map(|x| x.is_zero()).unwrap_or(false));
            let m_zero = (0..alpha).all(|w| binomial_moment(&d, w).is_zero());
            t.record(t_zero == m_zero, || format!("p={p} alpha={alpha} trial={trial}"));
        }
    }
    Ok(SpanReport { checked: t.checked, failures: t.failures, first_counterexample: t.first })
}

/// Adjusts `D_0, …, D_{α−1}` so that `Σ_i D_i binom(i, w) = 0` for `w < α`.
///
/// The system is unitriangular: `binom(i, w)` for `i, w < α` vanishes above
/// the diagonal and is `1` on it, so solve from `w = α−1` down.
pub fn kill_moments(d: &mut CoefficientFamily, alpha: usize) {
    for w in (0..alpha).rev() {
        let m = binomial_moment(d, w);
        let cur = d.get(w as i64);
        d.set(w as i64, cur - m);
    }
}
