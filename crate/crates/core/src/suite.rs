//! Parameter sweeps over every verification suite, aggregated into a
//! deterministic report.
//!
//! Work items are evaluated in parallel and collected in parameter order, so
//! the report depends only on the configuration and seed. Reports carry no
//! timestamps or timings.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::str::FromStr;

use crate::combinatorics::{
    bigM, kill_moments, verify_identity, verify_span_invariant, CoefficientFamily, IdentityGrid, IdentityId,
};
use crate::error::{invalid, Error, Result};
use crate::hecke::verify_lemma_Tma;
use crate::number::{eisenstein_make_a, is_prime, pow_p};
use crate::proof::{
    build_Q_bar, check_smoothing, recheck, run_step, step4_degeneracy, step_points, verify_L_matrix,
    verify_Mc_identity, verify_claim_one, verify_claim_two, verify_det_Q, StepCertificate, StepParams,
};
use crate::combinatorics::NiceFamily;
use crate::symmetric::theta_criterion;

/// Version of the report and certificate layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Which suites a run covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Identities,
    Lemmas,
    Matrices,
    Steps,
    All,
}

impl Target {
    fn covers(self, t: Target) -> bool {
        self == Target::All || self == t
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Target::Identities),
            "lemmas" => Ok(Target::Lemmas),
            "matrices" => Ok(Target::Matrices),
            "steps" => Ok(Target::Steps),
            "all" => Ok(Target::All),
            _ => invalid(format!("unknown target {s:?}")),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Target::Identities => "identities",
            Target::Lemmas => "lemmas",
            Target::Matrices => "matrices",
            Target::Steps => "steps",
            Target::All => "all",
        };
        f.write_str(s)
    }
}

/// An inclusive integer range, written `lo..hi` or `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        IntRange { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad range {s:?}")));
        match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                Ok(IntRange::new(parse(a)?, parse(b)?))
            }
            None => {
                let n = parse(s)?;
                Ok(IntRange::new(n, n))
            }
        }
    }
}

/// Effective configuration of a sweep. Absent ranges default to the
/// theorem's regime for each prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub primes: Vec<u64>,
    /// `ν` range; default `1..min(3, (p−1)/2)`.
    pub nu: Option<IntRange>,
    /// `s` range; default `2ν..2ν+p−2`.
    pub s: Option<IntRange>,
    /// `α` range; default `1..ν−2`.
    pub alpha: Option<IntRange>,
    /// `β` range; default `1..α`.
    pub beta: Option<IntRange>,
    pub m: Vec<u32>,
    pub iota: Vec<i64>,
    /// Precision `M` of step certificates; default `2(ν+α)+4`.
    pub precision: Option<u32>,
    /// Upper bound for `u` in the identity sweeps.
    pub max_u: i64,
    /// Random instances of the θ-criterion per prime.
    pub theta_samples: usize,
    /// Worker threads; `0` uses every core. Not serialised: results do not
    /// depend on it.
    #[serde(skip_serializing)]
    pub jobs: usize,
    pub seed: u64,
    /// Accept ranges outside the theorem's regime; such points are reported
    /// as excluded rather than rejected up front.
    pub allow_degenerate: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            primes: vec![3, 5, 7, 11, 13],
            nu: None,
            s: None,
            alpha: None,
            beta: None,
            m: vec![1, 2],
            iota: vec![1, 2],
            precision: None,
            max_u: 60,
            theta_samples: 500,
            jobs: 0,
            seed: 0,
            allow_degenerate: false,
        }
    }
}

impl SweepConfig {
    fn nu_range(&self, p: u64) -> IntRange {
        self.nu.unwrap_or(IntRange::new(1, 3.min((p as i64 - 1) / 2)))
    }

    fn s_range(&self, p: u64, nu: i64) -> IntRange {
        self.s.unwrap_or(IntRange::new(2 * nu, 2 * nu + p as i64 - 2))
    }

    fn alpha_range(&self, nu: i64) -> IntRange {
        self.alpha.unwrap_or(IntRange::new(1, nu - 2))
    }

    fn beta_range(&self, alpha: i64) -> IntRange {
        self.beta.unwrap_or(IntRange::new(1, alpha))
    }

    /// Rejects malformed values, and ranges outside the theorem's regime
    /// unless `allow_degenerate` is set.
    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.primes.iter().find(|p| !is_prime(**p) || **p < 3) {
            return invalid(format!("{p} is not an odd prime"));
        }
        if self.m.contains(&0) {
            return invalid("m must be >= 1");
        }
        if self.max_u < 0 {
            return invalid("max_u must be >= 0");
        }
        if self.precision == Some(0) {
            return invalid("precision must be >= 1");
        }
        for (name, r) in [("nu", self.nu), ("s", self.s), ("alpha", self.alpha), ("beta", self.beta)] {
            if let Some(r) = r {
                if r.lo > r.hi {
                    return invalid(format!("empty {name} range {}..{}", r.lo, r.hi));
                }
            }
        }
        if self.allow_degenerate {
            return Ok(());
        }
        for &p in &self.primes {
            if let Some(nu) = self.nu {
                if nu.lo < 1 || 2 * nu.hi > p as i64 - 1 {
                    return invalid(format!("nu range {}..{} leaves [1, (p-1)/2] for p={p}", nu.lo, nu.hi));
                }
            }
            if let Some(s) = self.s {
                if s.lo < 2 * self.nu_range(p).hi {
                    return invalid(format!("s range starts below 2nu for p={p}"));
                }
            }
        }
        if let Some(a) = self.alpha {
            if a.lo < 1 {
                return invalid("alpha range must start at >= 1");
            }
        }
        if let Some(b) = self.beta {
            if b.lo < 1 {
                return invalid("beta range must start at >= 1");
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        hex(&Sha256::digest(serde_json::to_vec(self).expect("config serialises")))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The point violates a hypothesis of the statement being checked.
    Excluded,
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: Target,
    pub check: String,
    pub parameters: String,
    pub status: Status,
    pub required: Option<String>,
    pub achieved: Option<String>,
    pub detail: String,
}

impl CheckRecord {
    fn new(suite: Target, check: &str, parameters: String, passed: bool) -> Self {
        CheckRecord {
            suite,
            check: check.into(),
            parameters,
            status: if passed { Status::Pass } else { Status::Fail },
            required: None,
            achieved: None,
            detail: String::new(),
        }
    }

    fn with_bounds(mut self, required: impl ToString, achieved: impl ToString) -> Self {
        self.required = Some(required.to_string());
        self.achieved = Some(achieved.to_string());
        self
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    fn excluded(suite: Target, check: &str, parameters: String, why: String) -> Self {
        CheckRecord { status: Status::Excluded, ..Self::new(suite, check, parameters, false) }.with_detail(why)
    }

    /// An error from a check: hypothesis violations are exclusions, anything
    /// else is a failure.
    fn from_error(suite: Target, check: &str, parameters: String, e: Error) -> Self {
        match e {
            Error::Degenerate(why) => Self::excluded(suite, check, parameters, why),
            e => Self::new(suite, check, parameters, false).with_detail(e.to_string()),
        }
    }
}

/// Counts by status.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub excluded: usize,
}

/// The document written by one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub target: Target,
    pub config: SweepConfig,
    pub config_hash: String,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
    /// The failing records again, as minimal reproducers.
    pub failures: Vec<CheckRecord>,
    pub certificates: Vec<StepCertificate>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }
}

#[derive(Debug, Clone)]
enum Job {
    Identity(IdentityId),
    Span(u64),
    Anchor,
    Mc(usize),
    LMatrix(usize, i64, i64),
    Theta(u64),
    Hecke(u64, i64, usize, usize),
    Smoothing(u64),
    Matrices { p: u64, nu: i64, s: i64, alpha: usize, beta: usize },
    Step(Box<StepParams>),
    StepExcluded(String, String),
}

/// Hecke-lemma points `(p, ν, α, n)`.
pub const HECKE_POINTS: &[(u64, i64, usize, usize)] =
    &[(5, 2, 0, 6), (5, 2, 1, 6), (7, 3, 0, 8), (7, 3, 1, 8), (7, 3, 2, 8), (11, 2, 0, 6), (11, 2, 1, 6)];

fn jobs_for(target: Target, cfg: &SweepConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    if target.covers(Target::Identities) {
        jobs.extend(IdentityId::ALL.into_iter().map(Job::Identity));
        jobs.extend(cfg.primes.iter().map(|&p| Job::Span(p)));
        jobs.push(Job::Anchor);
    }
    if target.covers(Target::Lemmas) {
        jobs.extend((1..=8).map(Job::Mc));
        let mut pairs = vec![(2, 3)];
        for &p in &cfg.primes {
            pairs.extend([(p as i64 - 1, 1), (1, p as i64 - 1)]);
        }
        pairs.sort();
        pairs.dedup();
        for alpha in 0..=8 {
            jobs.extend(pairs.iter().map(|&(l, m)| Job::LMatrix(alpha, l, m)));
        }
        jobs.extend(cfg.primes.iter().map(|&p| Job::Theta(p)));
        jobs.extend(
            HECKE_POINTS
                .iter()
                .filter(|pt| cfg.primes.contains(&pt.0))
                .map(|&(p, nu, a, n)| Job::Hecke(p, nu, a, n)),
        );
        jobs.extend(cfg.primes.iter().map(|&p| Job::Smoothing(p)));
    }
    if target.covers(Target::Matrices) {
        for &p in &cfg.primes {
            for nu in cfg.nu_range(p).iter() {
                for alpha in cfg.alpha_range(nu).iter().filter(|a| *a >= 1) {
                    for beta in cfg.beta_range(alpha).iter().filter(|b| *b >= 1) {
                        for s in cfg.s_range(p, nu).iter() {
                            jobs.push(Job::Matrices { p, nu, s, alpha: alpha as usize, beta: beta as usize });
                        }
                    }
                }
            }
        }
    }
    if target.covers(Target::Steps) {
        for &p in &cfg.primes {
            for nu in cfg.nu_range(p).iter() {
                for s in cfg.s_range(p, nu).iter() {
                    let params = format!("p={p} nu={nu} s={s}");
                    if s > p as i64 - 1 || s < 2 * nu || 2 * nu > p as i64 - 1 {
                        jobs.push(Job::StepExcluded(params, format!("s={s} outside [2nu, p-1] or nu > (p-1)/2")));
                        continue;
                    }
                    let mut points = step_points(p, nu, s, &cfg.m, &cfg.iota, cfg.precision);
                    if cfg.alpha.is_some() || cfg.beta.is_some() {
                        points.retain(|pt| {
                            pt.step == 1
                                || (cfg.alpha_range(nu).iter().any(|a| a == pt.alpha as i64)
                                    && pt.beta.is_none_or(|b| cfg.beta_range(pt.alpha as i64).iter().any(|x| x == b as i64)))
                        });
                    }
                    jobs.extend(points.into_iter().map(|pt| Job::Step(Box::new(pt))));
                }
            }
        }
    }
    jobs
}

fn theta_instance(rng: &mut ChaCha8Rng, p: u64) -> (CoefficientFamily, usize, usize) {
    let alpha = rng.random_range(0..=4.min(p as usize));
    let r = alpha * (p as usize + 1) + rng.random_range(0..3 * p as usize);
    let top = (r - 2 * alpha) / (p as usize - 1);
    let bound = (p * p) as i64;
    let mut d = CoefficientFamily::from_pairs(
        (0..=top as i64).map(|i| (i, BigRational::from_integer(BigInt::from(rng.random_range(-bound..=bound))))),
    );
    if rng.random_bool(0.5) {
        kill_moments(&mut d, alpha);
        if rng.random_bool(0.5) {
            let i = rng.random_range(0..=top as i64);
            let noise = BigRational::from_integer(BigInt::from(p * rng.random_range(1..10u64)));
            d.set(i, d.get(i) + noise);
        }
    }
    (d, alpha, r)
}

fn run_job(job: &Job, cfg: &SweepConfig) -> (Vec<CheckRecord>, Vec<StepCertificate>) {
    use Target::*;
    let one = |r: CheckRecord| (vec![r], Vec::new());
    match job {
        Job::Identity(id) => {
            let grid = IdentityGrid { primes: cfg.primes.clone(), max_u: cfg.max_u, ..IdentityGrid::default() };
            let params = format!("grid: primes {:?}, max_u {}", cfg.primes, cfg.max_u);
            match verify_identity(*id, &grid) {
                Ok(rep) => one(
                    CheckRecord::new(Identities, id.tag(), rep.grid.clone(), rep.passed())
                        .with_bounds(format!("0 failures of {}", rep.checked), format!("{} failures", rep.failures))
                        .with_detail(rep.first_counterexample.unwrap_or_default()),
                ),
                Err(e) => one(CheckRecord::from_error(Identities, id.tag(), params, e)),
            }
        }
        Job::Span(p) => {
            let params = format!("p={p} alpha<=4 trials=50");
            match verify_span_invariant(*p, 4, 50, cfg.seed) {
                Ok(rep) => one(
                    CheckRecord::new(Identities, "functionals-span-moments", params, rep.failures == 0)
                        .with_bounds(format!("0 failures of {}", rep.checked), format!("{} failures", rep.failures))
                        .with_detail(rep.first_counterexample.unwrap_or_default()),
                ),
                Err(e) => one(CheckRecord::from_error(Identities, "functionals-span-moments", params, e)),
            }
        }
        Job::Anchor => {
            let m = bigM(24, 0, 5);
            let t0 = &m - BigInt::from(2);
            let modulus = pow_p(5, 3);
            let residue = ((&t0 % &modulus) + &modulus) % &modulus;
            let ok = m == BigInt::from(4196352) && t0 == BigInt::from(4196350) && residue == BigInt::from(100);
            one(CheckRecord::new(Identities, "anchor", "p=5 s=4 r=24".into(), ok)
                .with_bounds("M=4196352, T_0=4196350 = -25 mod 125", format!("M={m}, T_0={t0} = {residue} mod 125")))
        }
        Job::Mc(alpha) => {
            let params = format!("alpha={alpha}");
            match verify_Mc_identity(*alpha) {
                Ok(rep) => one(
                    CheckRecord::new(Lemmas, "Mc-identity", params, rep.passed())
                        .with_detail(format!("nonzero entries below alpha: {:?}", rep.nonzero_entries)),
                ),
                Err(e) => one(CheckRecord::from_error(Lemmas, "Mc-identity", params, e)),
            }
        }
        Job::LMatrix(alpha, l, m) => {
            let params = format!("alpha={alpha} lambda={l} mu={m}");
            let q = |n: i64| BigRational::from_integer(BigInt::from(n));
            match verify_L_matrix(*alpha, &q(*l), &q(*m)) {
                Ok(ok) => one(CheckRecord::new(Lemmas, "L-matrix", params, ok)),
                Err(e) => one(CheckRecord::from_error(Lemmas, "L-matrix", params, e)),
            }
        }
        Job::Theta(p) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (p << 32) ^ 0x7e7a);
            let (mut agree, mut divisible, mut first) = (0usize, 0usize, None);
            for k in 0..cfg.theta_samples {
                let (d, alpha, r) = theta_instance(&mut rng, *p);
                match theta_criterion(&d, alpha, r, *p) {
                    Ok(c) if c.agree() => {
                        agree += 1;
                        divisible += c.divisible as usize;
                    }
                    outcome => {
                        first.get_or_insert(format!("sample {k}: alpha={alpha} r={r}: {outcome:?}"));
                    }
                }
            }
            let n = cfg.theta_samples;
            one(CheckRecord::new(Lemmas, "theta-criterion", format!("p={p} samples={n}"), agree == n)
                .with_bounds(format!("{n} agreements"), format!("{agree} agreements"))
                .with_detail(first.unwrap_or_else(|| format!("{divisible} divisible, {} not", n - divisible))))
        }
        Job::Hecke(p, nu, alpha, n) => {
            let m = *n as u32 + 2;
            let r = n * *p as usize + alpha + *p as usize;
            let params = format!("p={p} nu={nu} alpha={alpha} n={n} r={r} M={m}");
            let result = eisenstein_make_a(*p, 2, m, 2 * nu - 1).and_then(|a| verify_lemma_Tma(*alpha, *n, r, *p, &a, m));
            match result {
                Ok(rep) => one(
                    CheckRecord::new(Lemmas, "hecke-expansion", params, rep.passed)
                        .with_bounds(format!(">= {}", rep.required), &rep.difference_valuation)
                        .with_detail(format!("support size {}", rep.support_size)),
                ),
                Err(e) => one(CheckRecord::from_error(Lemmas, "hecke-expansion", params, e)),
            }
        }
        Job::Smoothing(p) => {
            let family = NiceFamily::default_for(*p);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (p << 40) ^ 0x5300);
            let mut failures = Vec::new();
            let trials = 50;
            for k in 0..trials {
                let alpha = rng.random_range(0..(*p as usize).min(5));
                let d = CoefficientFamily::from_pairs((0..8).map(|i| {
                    let scale = num_traits::pow(BigInt::from(*p), rng.random_range(0..3usize));
                    (i, BigRational::from_integer(scale * BigInt::from(rng.random_range(-50..50i64))))
                }));
                match check_smoothing(&d, &family, alpha, *p) {
                    Ok(rep) if rep.passed => {}
                    outcome => failures.push(format!("trial {k}: {outcome:?}")),
                }
            }
            one(CheckRecord::new(Lemmas, "smoothing-valuations", format!("p={p} trials={trials}"), failures.is_empty())
                .with_detail(failures.into_iter().next().unwrap_or_default()))
        }
        Job::Matrices { p, nu, s, alpha, beta } => matrix_checks(*p, *nu, *s, *alpha, *beta, cfg),
        Job::Step(params) => {
            let label = params.label();
            match run_step(params) {
                Ok(cert) => {
                    let failing: Vec<&str> =
                        cert.assertions.iter().filter(|a| !a.holds).map(|a| a.description.as_str()).collect();
                    let rec = CheckRecord::new(Steps, "step-certificate", label, failing.is_empty())
                        .with_bounds(format!("{} assertions", cert.assertions.len()), format!("{} hold", cert.assertions.len() - failing.len()))
                        .with_detail(if failing.is_empty() { cert.route.clone() } else { failing.join("; ") });
                    (vec![rec], vec![cert])
                }
                Err(e) => one(CheckRecord::from_error(Steps, "step-certificate", label, e)),
            }
        }
        Job::StepExcluded(params, why) => one(CheckRecord::excluded(Steps, "step-certificate", params.clone(), why.clone())),
    }
}

fn matrix_checks(p: u64, nu: i64, s: i64, alpha: usize, beta: usize, cfg: &SweepConfig) -> (Vec<CheckRecord>, Vec<StepCertificate>) {
    use Target::Matrices as M;
    let params = format!("p={p} nu={nu} s={s} alpha={alpha} beta={beta}");
    let mut why = None;
    if 2 * nu > p as i64 - 1 {
        why = Some(format!("nu={nu} > (p-1)/2"));
    } else if s < 2 * nu {
        why = Some(format!("s={s} < 2nu"));
    } else if !(1..nu - 1).contains(&(alpha as i64)) {
        why = Some(format!("alpha={alpha} outside (0, nu-1)"));
    } else if let Some(w) = step4_degeneracy(p, s, alpha, beta) {
        why = Some(w);
    }
    if let Some(why) = why {
        return (vec![CheckRecord::excluded(M, "step-four-point", params, why)], Vec::new());
    }
    let mut out = Vec::new();
    for &m in &cfg.m {
        for &iota in &cfg.iota {
            let pm = format!("{params} m={m} iota={iota}");
            if iota.rem_euclid(p as i64) == 0 {
                out.push(CheckRecord::excluded(M, "claim-one", pm, "iota is not a unit".into()));
                continue;
            }
            out.push(match verify_claim_one(p, s, alpha, beta, m, iota) {
                Ok(rep) => CheckRecord::new(M, "claim-one", format!("{pm} r={}", rep.r.unwrap_or(0)), rep.passed)
                    .with_bounds(format!(">= {}", m + 1), rep.achieved.unwrap_or_default())
                    .with_detail(rep.detail),
                Err(e) => CheckRecord::from_error(M, "claim-one", pm, e),
            });
        }
    }
    out.push(match verify_claim_two(p, s, alpha, beta) {
        Ok(rep) => CheckRecord::new(M, "claim-two", params.clone(), rep.passed).with_detail(rep.detail),
        Err(e) => CheckRecord::from_error(M, "claim-two", params.clone(), e),
    });
    out.push(match build_Q_bar(p, s, alpha, beta) {
        Ok(qb) => {
            let diag = qb.diagonal_matches().unwrap_or(false);
            let (agree, tri) = (qb.agree(), qb.triangular_shape());
            CheckRecord::new(M, "qbar-closed-form", params.clone(), agree && tri && diag)
                .with_detail(format!("definition = closed form: {agree}; triangular: {tri}; diagonal: {diag}"))
        }
        Err(e) => CheckRecord::from_error(M, "qbar-closed-form", params.clone(), e),
    });
    out.push(match verify_det_Q(p, s, alpha, beta) {
        Ok(rep) => CheckRecord::new(M, "qbar-determinant", params.clone(), rep.passed())
            .with_bounds(format!("closed form {} (nonzero), z_0 != 0", rep.det_closed_form), format!("elimination {}, z = {:?}", rep.det_elimination, rep.z)),
        Err(e) => CheckRecord::from_error(M, "qbar-determinant", params, e),
    });
    (out, Vec::new())
}

/// Runs a target. Only configuration errors are returned as `Err`; failing
/// checks are recorded in the report.
pub fn run(target: Target, cfg: &SweepConfig) -> Result<Report> {
    cfg.validate()?;
    let jobs = jobs_for(target, cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let results: Vec<(Vec<CheckRecord>, Vec<StepCertificate>)> =
        pool.install(|| jobs.par_iter().map(|j| run_job(j, cfg)).collect());
    let mut checks = Vec::new();
    let mut certificates = Vec::new();
    for (c, cert) in results {
        checks.extend(c);
        certificates.extend(cert);
    }
    certificates.sort_by_key(|c| c.params.sort_key());
    let mut summary = Summary { checks: checks.len(), ..Summary::default() };
    for c in &checks {
        match c.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Excluded => summary.excluded += 1,
        }
    }
    let failures = checks.iter().filter(|c| c.status == Status::Fail).cloned().collect();
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool: format!("slopecert {}", env!("CARGO_PKG_VERSION")),
        target,
        config: cfg.clone(),
        config_hash: cfg.hash(),
        summary,
        checks,
        failures,
        certificates,
    })
}

/// Reads certificates from a report, from `{"certificates": [...]}`, or from
/// a bare array.
pub fn certificates_from_json(text: &str) -> Result<Vec<StepCertificate>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("not JSON: {e}")))?;
    let list = match value {
        serde_json::Value::Array(_) => value,
        serde_json::Value::Object(mut map) => map
            .remove("certificates")
            .ok_or_else(|| Error::InvalidInput("no \"certificates\" field".into()))?,
        _ => return invalid("expected an object or an array of certificates"),
    };
    serde_json::from_value(list).map_err(|e| Error::InvalidInput(format!("malformed certificate: {e}")))
}

/// Rechecks every certificate; the first failure is returned with the index
/// of its certificate.
pub fn recheck_all(certs: &[StepCertificate]) -> std::result::Result<usize, (usize, Error)> {
    for (i, c) in certs.iter().enumerate() {
        recheck(c).map_err(|e| (i, e))?;
    }
    Ok(certs.len())
}
