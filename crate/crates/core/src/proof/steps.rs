//! The four constructions of constants `C_{−1}, …, C_α` whose coefficient
//! family `D` meets the hypotheses of the image-element lemma, each emitted
//! as a self-contained certificate.
//!
//! Constants and functionals are stored as canonical residues modulo `p^M`;
//! every valuation below `M` is therefore exact, and a zero residue only
//! certifies `v ≥ M`. [`recheck`] recomputes everything from the stored
//! constants and parameters and never re-runs a construction.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::matrices::{build_Q_bar, build_b, build_n, build_s, close_weight, reduce_fp, step4_degeneracy};
use super::symbolic::c_poly;
use crate::combinatorics::{binom_int, binom_row, falling_int, CoefficientFamily};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, QMatrix};
use crate::number::{is_prime, pow_p, val_p, PadicValuation, PrimeFieldElement, ResidueRing, Valuation};

/// A trace parameter `a = π^j` in the ramified extension `π^e = p`, so that
/// `v_p(a) = j/e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeModel {
    pub ramification: u32,
    pub pi_exponent: i64,
}

impl SlopeModel {
    /// `a = π^{2ν−1}` with `π² = p`: slope `ν − 1/2`.
    pub fn for_nu(nu: i64) -> Self {
        SlopeModel { ramification: 2, pi_exponent: 2 * nu - 1 }
    }

    pub fn valuation(&self) -> Ratio<i64> {
        Ratio::new(self.pi_exponent, self.ramification as i64)
    }
}

/// One parameter point of one step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepParams {
    pub step: u8,
    pub p: u64,
    /// Weight `k = r + 2`.
    pub k: i64,
    pub r: i64,
    pub s: i64,
    pub nu: i64,
    pub alpha: usize,
    pub beta: Option<usize>,
    pub m: Option<u32>,
    pub iota: Option<i64>,
    /// Residues are taken modulo `p^precision`.
    pub precision: u32,
    pub slope: SlopeModel,
}

/// Default working precision `2(ν + α) + 4`.
pub fn default_precision(nu: i64, alpha: usize) -> u32 {
    (2 * (nu + alpha as i64) + 4) as u32
}

impl StepParams {
    fn base(step: u8, p: u64, nu: i64, s: i64, r: i64, alpha: usize, precision: Option<u32>) -> Self {
        StepParams {
            step,
            p,
            k: r + 2,
            r,
            s,
            nu,
            alpha,
            beta: None,
            m: None,
            iota: None,
            precision: precision.unwrap_or_else(|| default_precision(nu, alpha)),
            slope: SlopeModel::for_nu(nu),
        }
    }

    /// Step one (`α = 0`) at a given weight.
    pub fn first(p: u64, nu: i64, s: i64, r: i64, precision: Option<u32>) -> Self {
        Self::base(1, p, nu, s, r, 0, precision)
    }

    /// Step two at the smallest `r ≥ 2p` with `r ≡ s mod (p−1)` and
    /// `(s−r)_{α+1}` a unit.
    pub fn second(p: u64, nu: i64, s: i64, alpha: usize, precision: Option<u32>) -> Self {
        let mut r = first_weight(p, s);
        while (falling_int(s - r, alpha as i64 + 1) % BigInt::from(p)).is_zero() {
            r += p as i64 - 1;
        }
        Self::base(2, p, nu, s, r, alpha, precision)
    }

    /// Step three at the smallest `r ≥ 2p` with `r ≡ s + ιp^m mod p^{m+1}`.
    pub fn third(p: u64, nu: i64, s: i64, alpha: usize, m: u32, iota: i64, precision: Option<u32>) -> Self {
        let r = close_weight(s, 0, iota, m, p, 2 * p as i64);
        StepParams { m: Some(m), iota: Some(iota), ..Self::base(3, p, nu, s, r, alpha, precision) }
    }

    /// Step four at the smallest `r ≥ 2p` with `r ≡ s + β(p−1) + ιp^m mod p^{m+1}`.
    pub fn fourth(p: u64, nu: i64, s: i64, alpha: usize, beta: usize, m: u32, iota: i64, precision: Option<u32>) -> Self {
        let r = close_weight(s, beta, iota, m, p, 2 * p as i64);
        StepParams {
            beta: Some(beta),
            m: Some(m),
            iota: Some(iota),
            ..Self::base(4, p, nu, s, r, alpha, precision)
        }
    }

    /// `(p, ν, s, step, α, β, m, ι, r)`, the sweep ordering key.
    pub fn sort_key(&self) -> (u64, i64, i64, u8, usize, usize, u32, i64, i64) {
        (
            self.p,
            self.nu,
            self.s,
            self.step,
            self.alpha,
            self.beta.unwrap_or(0),
            self.m.unwrap_or(0),
            self.iota.unwrap_or(0),
            self.r,
        )
    }

    /// Short human-readable label.
    pub fn label(&self) -> String {
        let mut out = format!("step{} p={} nu={} s={} r={} alpha={}", self.step, self.p, self.nu, self.s, self.r, self.alpha);
        if let Some(b) = self.beta {
            out += &format!(" beta={b}");
        }
        if let (Some(m), Some(i)) = (self.m, self.iota) {
            out += &format!(" m={m} iota={i}");
        }
        out
    }
}

fn first_weight(p: u64, s: i64) -> i64 {
    let mut r = s;
    while r < 2 * p as i64 {
        r += p as i64 - 1;
    }
    r
}

/// Every step point at `(p, ν, s)`, in sweep order: step one at the smallest
/// weight and at `r = s + p(p−1)`, then for each `0 < α < ν−1` steps two,
/// three and four over the given `m` and unit `ι`.
pub fn step_points(p: u64, nu: i64, s: i64, ms: &[u32], iotas: &[i64], precision: Option<u32>) -> Vec<StepParams> {
    let mut out = Vec::new();
    let r0 = first_weight(p, s);
    let r1 = s + (p * (p - 1)) as i64;
    out.push(StepParams::first(p, nu, s, r0, precision));
    if r1 != r0 {
        out.push(StepParams::first(p, nu, s, r1, precision));
    }
    let units: Vec<i64> = iotas.iter().copied().filter(|i| i.rem_euclid(p as i64) != 0).collect();
    for alpha in 1..(nu - 1).max(1) as usize {
        out.push(StepParams::second(p, nu, s, alpha, precision));
        for &m in ms {
            for &iota in &units {
                out.push(StepParams::third(p, nu, s, alpha, m, iota, precision));
            }
        }
        for beta in 1..=alpha {
            for &m in ms {
                for &iota in &units {
                    out.push(StepParams::fourth(p, nu, s, alpha, beta, m, iota, precision));
                }
            }
        }
    }
    out
}

/// One verified statement of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub description: String,
    pub required: String,
    pub achieved: String,
    pub holds: bool,
}

/// A stored residue modulo `p^M`, indexed by `j` (constants) or `w`
/// (functionals).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredResidue {
    pub index: i64,
    pub residue: String,
}

/// Self-contained record of one construction at one parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCertificate {
    pub params: StepParams,
    /// `C_{−1}, C_0, …, C_α` modulo `p^M`.
    pub constants: Vec<StoredResidue>,
    /// `T_w(D)` modulo `p^M` for `0 ≤ w < 2ν − α`, with `f_w = binom(X(p−1), w)`.
    pub functionals: Vec<StoredResidue>,
    pub assertions: Vec<Assertion>,
    /// Which alternative of the lemma's dichotomy applies.
    pub route: String,
    /// SHA-256 of the certificate serialised with an empty digest.
    pub digest: String,
}

impl StepCertificate {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.holds)
    }

    fn compute_digest(&self) -> String {
        let mut blank = self.clone();
        blank.digest.clear();
        let bytes = serde_json::to_vec(&blank).expect("certificate serialises");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn degenerate(msg: impl Into<String>) -> Error {
    Error::Degenerate(msg.into())
}

fn falsified(check: &str, detail: impl Into<String>) -> Error {
    Error::CheckFailed { check: check.into(), detail: detail.into() }
}

fn v_int(x: i64, p: u64) -> Valuation {
    val_p(&BigRational::from_integer(BigInt::from(x)), p)
}

fn bound_for(params: &StepParams) -> i64 {
    match params.step {
        1 => v_int(params.s - params.r, params.p).finite().unwrap_or(i64::MAX / 4) + 2,
        2 => 2,
        _ => params.m.unwrap_or(0) as i64 + 2,
    }
}

/// Checks that a parameter point lies in the regime of its step.
pub fn check_regime(params: &StepParams) -> Result<()> {
    let StepParams { step, p, k, r, s, nu, alpha, beta, m, iota, precision, slope } = params.clone();
    let a = alpha as i64;
    if !is_prime(p) || p < 3 {
        return Err(Error::InvalidInput(format!("p={p} is not an odd prime")));
    }
    if k != r + 2 {
        return Err(Error::InvalidInput(format!("k={k} differs from r+2={}", r + 2)));
    }
    if nu < 1 || 2 * nu > p as i64 - 1 {
        return Err(degenerate(format!("nu={nu} outside [1, (p-1)/2]")));
    }
    if !(1..p as i64).contains(&s) || s < 2 * nu {
        return Err(degenerate(format!("s={s} outside [2nu, p-1]")));
    }
    if (r - s).rem_euclid(p as i64 - 1) != 0 || r <= 2 * a + s {
        return Err(degenerate(format!("r={r} is not a weight above s={s} in its class mod p-1")));
    }
    let va = slope.valuation();
    if slope.ramification == 0 || va.is_integer() || va <= Ratio::from(nu - 1) || va >= Ratio::from(nu) {
        return Err(degenerate(format!("slope {va} is not a fraction in (nu-1, nu)")));
    }
    let unit = |x: i64| x.rem_euclid(p as i64) != 0;
    let p_pow = |e: u32| pow_p(p, e);
    match step {
        1 => {
            if alpha != 0 || beta.is_some() || m.is_some() || iota.is_some() {
                return Err(degenerate("step one has alpha = 0 and no beta, m, iota"));
            }
        }
        2 => {
            if !(1..nu - 1).contains(&a) || beta.is_some() || m.is_some() || iota.is_some() {
                return Err(degenerate("step two needs 0 < alpha < nu-1 and no beta, m, iota"));
            }
            if (falling_int(s - r, a + 1) % BigInt::from(p)).is_zero() {
                return Err(degenerate("(s-r)_(alpha+1) is not a unit"));
            }
        }
        3 | 4 => {
            let (Some(m), Some(iota)) = (m, iota) else {
                return Err(degenerate("steps three and four need m and iota"));
            };
            if m < 1 || !unit(iota) || !(1..nu - 1).contains(&a) {
                return Err(degenerate("need m >= 1, iota a unit and 0 < alpha < nu-1"));
            }
            let b = if step == 3 {
                if beta.is_some() {
                    return Err(degenerate("step three has no beta"));
                }
                0
            } else {
                let b = beta.ok_or_else(|| degenerate("step four needs beta"))?;
                if let Some(why) = step4_degeneracy(p, s, alpha, b) {
                    return Err(degenerate(why));
                }
                b as i64
            };
            let target = BigInt::from(s + b * (p as i64 - 1)) + BigInt::from(iota) * p_pow(m);
            if !((BigInt::from(r) - target) % p_pow(m + 1)).is_zero() {
                return Err(degenerate(format!("r={r} is not congruent to s+beta(p-1)+iota p^m mod p^(m+1)")));
            }
            if step == 4 && !(falling_int(s - r - 1, a) % BigInt::from(p)).is_zero() {
                unreachable!("r = s + beta(p-1) mod p forces p | (s-r-1)_alpha");
            }
        }
        _ => return Err(Error::InvalidInput(format!("no step {step}"))),
    }
    if (precision as i64) <= bound_for(params) {
        return Err(Error::PrecisionTooSmall {
            needed: format!("M > {}", bound_for(params)),
            have: format!("M = {precision}"),
        });
    }
    ResidueRing::new(p, precision).map(|_| ())
}

/// Exact coefficient family
/// `D_i = δ_{i=0} C_{−1} + δ_{0<i(p−1)<r−2α} Σ_{l=0}^{α} C_l binom(r−α+l, i(p−1)+l)`,
/// with `constants = [C_{−1}, C_0, …, C_α]`.
pub fn coefficient_family(r: i64, alpha: usize, p: u64, constants: &[BigRational]) -> CoefficientFamily {
    let (a, q1) = (alpha as i64, p as i64 - 1);
    let rows: Vec<Vec<BigInt>> = (0..=a).map(|l| binom_row((r - a + l) as u64)).collect();
    let mut d = CoefficientFamily::new();
    d.set(0, constants[0].clone());
    let mut i = 1;
    while i * q1 < r - 2 * a {
        let mut acc = BigRational::zero();
        for l in 0..=a {
            acc += &constants[l as usize + 1] * BigRational::from_integer(rows[l as usize][(i * q1 + l) as usize].clone());
        }
        d.set(i, acc);
        i += 1;
    }
    d
}

/// `T_w(D) mod p^M` for `0 ≤ w < count`, from residues `[C_{−1}, …, C_α]`.
fn functionals_mod(ring: &ResidueRing, r: i64, alpha: usize, constants: &[u128], count: usize) -> Vec<u128> {
    let (a, q1) = (alpha as i64, ring.prime() as i64 - 1);
    let rows: Vec<Vec<u128>> = (0..=a).map(|l| ring.binom_row((r - a + l) as u64)).collect();
    let mut t = vec![0u128; count];
    t[0] = constants[0];
    let mut i = 1;
    while i * q1 < r - 2 * a {
        let mut d = 0u128;
        for l in 0..=a {
            d = ring.add(d, ring.mul(constants[l as usize + 1], rows[l as usize][(i * q1 + l) as usize]));
        }
        if d != 0 {
            for (w, tw) in t.iter_mut().enumerate() {
                *tw = ring.add(*tw, ring.mul(d, ring.binom_small((i * q1) as u64, w as u64)));
            }
        }
        i += 1;
    }
    t
}

fn functional_count(params: &StepParams) -> usize {
    (2 * params.nu - params.alpha as i64) as usize
}

struct Judge {
    precision: i64,
    out: Vec<Assertion>,
}

impl Judge {
    fn push(&mut self, description: String, required: String, achieved: String, holds: bool) {
        self.out.push(Assertion { description, required, achieved, holds });
    }

    fn at_least(&mut self, description: String, v: PadicValuation, bound: i64) {
        self.push(description, format!(">= {bound}"), v.to_string(), v.lower_bound() >= bound);
    }

    fn exactly(&mut self, description: String, v: PadicValuation, bound: i64) {
        self.push(description, format!("= {bound}"), v.to_string(), v == PadicValuation::Exact(bound));
    }

    /// `v ≥ q` (or `v > q` when strict), sound for truncated valuations.
    fn above(&mut self, description: String, v: PadicValuation, q: Ratio<i64>, strict: bool) {
        let x = Ratio::from(v.lower_bound());
        let holds = if strict { x > q } else { x >= q };
        let rel = if strict { ">" } else { ">=" };
        self.push(description, format!("{rel} {q}"), v.to_string(), holds);
    }

    fn truncated(&self, v: PadicValuation) -> Option<i64> {
        match v {
            PadicValuation::Exact(x) => Some(x),
            PadicValuation::AtLeast(_) => None,
        }
        .filter(|x| *x < self.precision)
    }
}

/// Recomputes every assertion of a certificate from its residues.
fn assess(params: &StepParams, ring: &ResidueRing, c: &[u128], t: &[u128]) -> Result<(Vec<Assertion>, String)> {
    let p = params.p;
    let a = params.alpha;
    let (s, r) = (params.s, params.r);
    let mut j = Judge { precision: params.precision as i64, out: Vec::new() };
    let val = |x: u128| ring.valuation(x);

    let c0 = c[1];
    j.exactly("C_0 is a unit".into(), val(c0), 0);

    let v: i64 = match params.step {
        1 => {
            let vsr = v_int(s - r, p).finite().expect("r != s");
            let expected = ring.from_rational(&BigRational::new(BigInt::from((s - r) * p as i64), BigInt::from(s)))?;
            j.at_least(
                "T_0 - (s-r)p/s vanishes to order v(s-r)+2".into(),
                val(ring.sub(t[0], expected)),
                vsr + 2,
            );
            j.exactly("v(T_0) = v(s-r)+1".into(), val(t[0]), vsr + 1);
            for (w, tw) in t.iter().enumerate().skip(1) {
                j.at_least(format!("v(T_{w}) >= v(s-r)+1"), val(*tw), vsr + 1);
            }
            vsr + 1
        }
        2 | 3 => {
            let shift = if params.step == 2 { 0 } else { params.m.expect("m") as i64 };
            let expected = ring.from_rational(&BigRational::new(
                falling_int(s - r, a as i64 + 1) * BigInt::from(p),
                falling_int(s - a as i64, a as i64 + 1),
            ))?;
            for (w, tw) in t.iter().enumerate().take(a) {
                j.at_least(format!("v(T_{w}) >= {}", shift + 2), val(*tw), shift + 2);
            }
            j.exactly(format!("v(T_{a}) = {}", shift + 1), val(t[a]), shift + 1);
            j.at_least(
                format!("T_{a} - p(s-r)_(alpha+1)/(s-alpha)_(alpha+1) vanishes to order {}", shift + 2),
                val(ring.sub(t[a], expected)),
                shift + 2,
            );
            for (w, tw) in t.iter().enumerate().skip(a + 1) {
                j.at_least(format!("v(T_{w}) >= {}", shift + 1), val(*tw), shift + 1);
            }
            shift + 1
        }
        _ => {
            let m = params.m.expect("m") as i64;
            for (w, tw) in t.iter().enumerate().take(a + 1) {
                j.at_least(format!("v(T_{w}) >= m+2"), val(*tw), m + 2);
            }
            for (w, tw) in t.iter().enumerate().skip(a + 1) {
                j.at_least(format!("v(T_{w}) >= m+1"), val(*tw), m + 1);
            }
            j.exactly("v(C_-1) = m+1".into(), val(c[0]), m + 1);
            m + 1
        }
    };

    // Hypotheses of the smoothing step with v' = min(v(a) − α, v).
    let va = params.slope.valuation();
    let v_prime = (va - Ratio::from(a as i64)).min(Ratio::from(v));
    j.above(format!("v <= v(T_{a}) with v = {v}"), val(t[a]), Ratio::from(v), false);
    for (w, tw) in t.iter().enumerate() {
        if w < a {
            j.above(format!("v(T_{w}) > v'"), val(*tw), v_prime, true);
        } else if w > a {
            j.above(format!("v(T_{w}) >= v'"), val(*tw), v_prime, false);
        }
    }

    // Smoothing constants Δ_j = (−1)^{α+j−1} binom(α, j−1) T_α/(p−1)^α.
    let q1 = p as i64 - 1;
    let scale = ring.inverse(ring.pow(ring.from_i64(q1), a as u64))?;
    let t_a = t[a];
    let mut delta_min = PadicValuation::AtLeast(params.precision as i64);
    let mut t_delta = vec![0u128; a + 1];
    for jj in 1..=a as i64 + 1 {
        let sign = if (a as i64 + jj - 1) % 2 == 0 { 1 } else { -1 };
        let coeff = ring.from_bigint(&(binom_int(a as i64, jj - 1) * sign));
        let dj = ring.mul(ring.mul(coeff, scale), t_a);
        if val(dj).lower_bound() < delta_min.lower_bound() {
            delta_min = val(dj);
        }
        for (w, tw) in t_delta.iter_mut().enumerate() {
            *tw = ring.add(*tw, ring.mul(dj, ring.binom_small((jj * q1) as u64, w as u64)));
        }
    }
    let same = t_delta[a] == t_a && t_delta[..a].iter().all(|x| *x == 0);
    j.push(
        "smoothing constants reproduce T_alpha and kill T_w for w < alpha".into(),
        "true".into(),
        same.to_string(),
        same,
    );
    j.above("v(Delta_j) >= v(T_alpha(Delta)) >= v".into(), delta_min, Ratio::from(v), false);

    // T' = ((−1)^α/(c_α α!)) T_α − C_{−1} with c_α α! = (p−1)^α.
    let signed = if a.is_multiple_of(2) { t_a } else { ring.neg(t_a) };
    let t_prime = ring.sub(ring.mul(signed, scale), c[0]);
    let vt = val(t_prime);
    j.above("v(C_-1) >= v(T')".into(), val(c[0]), Ratio::from(vt.lower_bound()), false);
    let route_one = j.truncated(vt).is_some_and(|x| Ratio::from(x) <= v_prime);
    let route_two = va - Ratio::from(a as i64) < Ratio::from(v);
    let route = match (route_one, route_two) {
        (true, false) => "part 1: v(T') <= v'".to_string(),
        (false, true) => "part 2: v(a) - alpha < v".to_string(),
        _ => "ambiguous".to_string(),
    };
    j.push(
        "exactly one of v(T') <= v' and v(a) - alpha < v".into(),
        "exactly one".into(),
        format!("v(T')={vt}, v'={v_prime}, v(a)-alpha={}, v={v}", va - Ratio::from(a as i64)),
        route_one != route_two,
    );
    Ok((j.out, route))
}

fn step_constants(params: &StepParams, ring: &ResidueRing) -> Result<Vec<u128>> {
    let (p, s, r, a) = (params.p, params.s, params.r, params.alpha);
    let ai = a as i64;
    let exact: Vec<BigRational> = match params.step {
        1 => vec![BigRational::zero(), BigRational::one()],
        2 | 3 => {
            let (x, y) = (BigRational::from_integer((r - ai).into()), BigRational::from_integer((s - ai).into()));
            let scale = BigRational::new(BigInt::from(p), falling_int(s - ai, ai));
            let mut c = vec![BigRational::zero(), BigRational::one()];
            c.extend((1..=a).map(|jj| c_poly(a, jj).eval(&x, &y) * &scale));
            c
        }
        _ => fourth_step_constants(params)?,
    };
    let mut c = exact.iter().map(|x| ring.from_rational(x)).collect::<Result<Vec<u128>>>()?;
    if params.step == 4 {
        let t0 = functionals_mod(ring, r, a, &c, 1)[0];
        c[0] = ring.neg(t0);
    }
    Ok(c)
}

/// `[0, C_0, …, C_α]` with `(C_0, C_1/p, …, C_α/p) = u + ηv̄`.
fn fourth_step_constants(params: &StepParams) -> Result<Vec<BigRational>> {
    let (p, s, a) = (params.p, params.s, params.alpha);
    let beta = params.beta.expect("beta");
    let n = a + 1;
    let qb = build_Q_bar(p, s, a, beta)?;
    let fp = |x: i64| PrimeFieldElement::new(p, x);
    let mut e0 = vec![fp(0); n];
    e0[0] = fp(1);
    let z = qb.definition.solve(&e0).map_err(|e| falsified("Q-bar z = e_0 is solvable", e.to_string()))?;
    if z[0].is_zero() {
        return Err(falsified("z_0 != 0", format!("{} has z_0 = 0", params.label())));
    }
    let b = build_b(a, p).entries;
    let bs = b.mul(&build_s(s, beta, a, p).entries);
    let bn = b.mul(&build_n(s, beta, a, p).entries);
    let reduce = |m: &QMatrix, rows: std::ops::RangeInclusive<usize>| -> Result<FpMatrix> {
        let rows: Vec<usize> = rows.collect();
        let mut out = FpMatrix::zeros(p, rows.len(), n);
        for (i, &ri) in rows.iter().enumerate() {
            for jj in 0..n {
                out.set(i, jj, reduce_fp(m.get(ri, jj), p)?);
            }
        }
        Ok(out)
    };
    let p_bar = reduce(&bs, 1..=beta)?;
    let bnz = reduce(&bn, 1..=beta)?.mul_vec(&z);
    let rhs: Vec<PrimeFieldElement> = bnz.into_iter().map(|x| x.neg()).collect();
    let (v_bar, pivots) = p_bar
        .solve_particular(&rhs)
        .ok_or_else(|| falsified("rows 1..beta of BS solve for the correction", params.label()))?;
    if pivots.len() != beta {
        return Err(falsified("rows 1..beta of BS are independent mod p", params.label()));
    }
    // Exact u with P u = 0, free coordinates equal to z.
    let mut u = vec![BigRational::zero(); n];
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    for &c in &free {
        u[c] = BigRational::from_integer(BigInt::from(z[c].value()));
    }
    let aug = QMatrix::from_fn(beta, beta + 1, |i, jj| {
        if jj < beta {
            bs.get(i + 1, pivots[jj]).clone()
        } else {
            -free.iter().map(|&c| bs.get(i + 1, c) * &u[c]).fold(BigRational::zero(), |x, y| x + y)
        }
    });
    let (rref, piv) = aug.rref();
    if piv != (0..beta).collect::<Vec<_>>() {
        return Err(falsified("pivot block of BS is invertible", params.label()));
    }
    for (i, &c) in pivots.iter().enumerate() {
        u[c] = rref.get(i, beta).clone();
    }
    let eta = BigRational::from_integer(BigInt::from(params.iota.expect("iota")) * pow_p(p, params.m.expect("m")));
    let mut c = vec![BigRational::zero()];
    for jj in 0..n {
        let x = &u[jj] + &eta * BigRational::from_integer(BigInt::from(v_bar[jj].value()));
        c.push(if jj == 0 { x } else { x * BigRational::from_integer(BigInt::from(p)) });
    }
    Ok(c)
}

/// Runs one construction and records its certificate.
pub fn run_step(params: &StepParams) -> Result<StepCertificate> {
    check_regime(params)?;
    let ring = ResidueRing::new(params.p, params.precision)?;
    let c = step_constants(params, &ring)?;
    let t = functionals_mod(&ring, params.r, params.alpha, &c, functional_count(params));
    let (assertions, route) = assess(params, &ring, &c, &t)?;
    let mut cert = StepCertificate {
        params: params.clone(),
        constants: c
            .iter()
            .enumerate()
            .map(|(i, x)| StoredResidue { index: i as i64 - 1, residue: x.to_string() })
            .collect(),
        functionals: t
            .iter()
            .enumerate()
            .map(|(w, x)| StoredResidue { index: w as i64, residue: x.to_string() })
            .collect(),
        assertions,
        route,
        digest: String::new(),
    };
    cert.digest = cert.compute_digest();
    Ok(cert)
}

fn parse_indexed(ring: &ResidueRing, stored: &[StoredResidue], first: i64, count: usize, what: &str) -> Result<Vec<u128>> {
    if stored.len() != count {
        return Err(falsified(what, format!("expected {count} entries, found {}", stored.len())));
    }
    stored
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let idx = first + i as i64;
            if x.index != idx {
                return Err(falsified(what, format!("entry {i} has index {}, expected {idx}", x.index)));
            }
            ring.parse_canonical(&x.residue)
                .map_err(|e| falsified(&format!("{what} {idx} is a canonical residue"), e.to_string()))
        })
        .collect()
}

/// Re-verifies a certificate from its stored constants: parameter regime,
/// canonical residues, stored functionals, every assertion, the route and
/// the digest. The first failing check is named in the error.
pub fn recheck(cert: &StepCertificate) -> Result<()> {
    let params = &cert.params;
    check_regime(params).map_err(|e| falsified("parameter regime", e.to_string()))?;
    let ring = ResidueRing::new(params.p, params.precision)?;
    let c = parse_indexed(&ring, &cert.constants, -1, params.alpha + 2, "constant C_j")?;
    let count = functional_count(params);
    let t_stored = parse_indexed(&ring, &cert.functionals, 0, count, "functional T_w")?;
    let t = functionals_mod(&ring, params.r, params.alpha, &c, count);
    for (w, (x, y)) in t_stored.iter().zip(&t).enumerate() {
        if x != y {
            return Err(falsified(&format!("functional T_{w}"), format!("stored {x}, recomputed {y}")));
        }
    }
    let (assertions, route) = assess(params, &ring, &c, &t)?;
    if assertions.len() != cert.assertions.len() {
        return Err(falsified(
            "assertion list",
            format!("stored {} assertions, recomputed {}", cert.assertions.len(), assertions.len()),
        ));
    }
    for (stored, fresh) in cert.assertions.iter().zip(&assertions) {
        if stored != fresh {
            return Err(falsified(
                &fresh.description,
                format!("stored {stored:?} differs from recomputed {fresh:?}"),
            ));
        }
        if !fresh.holds {
            return Err(falsified(
                &fresh.description,
                format!("required {}, achieved {}", fresh.required, fresh.achieved),
            ));
        }
    }
    if route != cert.route {
        return Err(falsified("dichotomy route", format!("stored {:?}, recomputed {route:?}", cert.route)));
    }
    if cert.compute_digest() != cert.digest {
        return Err(falsified("certificate digest", "stored digest does not match the contents"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{NiceFamily, T_functional};

    #[test]
    fn first_step_anchor() {
        let params = StepParams::first(5, 2, 4, 24, None);
        let cert = run_step(&params).unwrap();
        assert!(cert.passed(), "{:#?}", cert.assertions);
        let modulus = pow_p(5, params.precision);
        let expected = BigInt::from(4196350) % &modulus;
        assert_eq!(cert.functionals[0].residue, expected.to_string());
        assert_eq!((BigInt::from(4196350) % 125u32), BigInt::from(100));
        recheck(&cert).unwrap();
    }

    #[test]
    fn residues_match_exact_functionals() {
        for params in step_points(7, 3, 6, &[1], &[1], None) {
            let cert = run_step(&params).unwrap();
            let ring = ResidueRing::new(params.p, params.precision).unwrap();
            if params.step == 4 {
                continue;
            }
            let exact: Vec<BigRational> = match params.step {
                1 => vec![BigRational::zero(), BigRational::one()],
                _ => {
                    let (x, y) = (
                        BigRational::from_integer((params.r - 1).into()),
                        BigRational::from_integer((params.s - 1).into()),
                    );
                    let scale = BigRational::new(BigInt::from(7), falling_int(params.s - 1, 1));
                    vec![BigRational::zero(), BigRational::one(), c_poly(1, 1).eval(&x, &y) * scale]
                }
            };
            let d = coefficient_family(params.r, params.alpha, 7, &exact);
            let family = NiceFamily::default_for(7);
            for (w, stored) in cert.functionals.iter().enumerate() {
                let t = T_functional(&family, &d, w).unwrap();
                assert_eq!(ring.from_rational(&t).unwrap().to_string(), stored.residue, "{} w={w}", params.label());
            }
        }
    }

    #[test]
    fn all_steps_pass_at_p7() {
        let points = step_points(7, 3, 6, &[1, 2], &[1, 2], None);
        assert_eq!(points.iter().filter(|p| p.step == 4).count(), 4);
        for params in points {
            let cert = run_step(&params).unwrap();
            assert!(cert.passed(), "{}: {:#?}", params.label(), cert.assertions);
            recheck(&cert).unwrap();
        }
    }

    #[test]
    fn recheck_rejects_tampering() {
        let params = StepParams::fourth(11, 3, 7, 1, 1, 1, 2, None);
        let cert = run_step(&params).unwrap();
        recheck(&cert).unwrap();
        let modulus = pow_p(11, params.precision);
        let mut bumped = cert.clone();
        let c0: BigInt = bumped.constants[1].residue.parse().unwrap();
        bumped.constants[1].residue = (c0 + &modulus).to_string();
        assert!(matches!(recheck(&bumped), Err(Error::CheckFailed { .. })));
        let mut wrong_t = cert.clone();
        wrong_t.functionals[1].residue = "1".into();
        assert!(recheck(&wrong_t).is_err());
        let mut wrong_r = cert.clone();
        wrong_r.params.r += 10;
        wrong_r.params.k += 10;
        assert!(recheck(&wrong_r).is_err());
    }

    #[test]
    fn regime_violations_are_rejected() {
        let mut params = StepParams::first(5, 2, 4, 24, None);
        params.alpha = 1;
        assert!(run_step(&params).is_err());
        assert!(run_step(&StepParams::second(7, 3, 6, 2, None)).is_err());
        assert!(run_step(&StepParams::first(5, 2, 4, 24, Some(2))).is_err());
        assert!(run_step(&StepParams::fourth(7, 3, 8, 1, 1, 1, 1, None)).is_err());
    }
}
