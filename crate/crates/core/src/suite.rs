//! The batch verification suite: every named check over a configured range,
//! executed on a work pool and assembled into a deterministic report.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{gcd, is_prime, primes_up_to};
use crate::checks::{self, CheckOutcome};
use crate::error::{Error, Result};
use crate::formal::{Beta, CheckMode, FormalSum, Seed, Status};
use crate::hecke::{LowerCoefficient, Relation};
use crate::stern::psi_vector;

pub const TOOL_NAME: &str = "hecke-lab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable that overrides the number of worker threads.
pub const THREADS_ENV: &str = "HECKE_LAB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub n_max: u64,
    pub m_max: u64,
    pub p_set: Vec<u64>,
    pub e_max: u32,
    pub depth_cap: usize,
    /// Rational points per component in the route comparison.
    pub sample_points: usize,
    pub mode: CheckMode,
    pub betas: Vec<Beta>,
    pub format: OutputFormat,
    /// Worker threads; `None` lets the pool decide.
    pub threads: Option<usize>,
    pub seed: u64,
    pub fail_fast: bool,
    /// Include per-check wall time (makes the report run dependent).
    pub timings: bool,
    /// Test hook: drop one term of ψ before the residual checks.
    pub corrupt_psi: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 10,
            m_max: 6,
            p_set: vec![2, 3, 5],
            e_max: 3,
            depth_cap: 10_000,
            sample_points: 20,
            mode: CheckMode::Exact,
            betas: vec![Beta::Int(1), Beta::Int(2)],
            format: OutputFormat::Text,
            threads: None,
            seed: 20_240_601,
            fail_fast: false,
            timings: false,
            corrupt_psi: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 || self.m_max == 0 || self.e_max == 0 || self.depth_cap == 0 || self.sample_points == 0 {
            return Err(Error::Usage("all suite bounds must be at least 1".into()));
        }
        if self.n_max > 60 || self.m_max > 12 || self.e_max > 6 {
            return Err(Error::Usage("suite bounds are limited to nMax ≤ 60, mMax ≤ 12, eMax ≤ 6".into()));
        }
        if self.p_set.is_empty() || self.p_set.iter().any(|&p| !is_prime(p)) {
            return Err(Error::Usage(format!("pSet must be a nonempty list of primes, got {:?}", self.p_set)));
        }
        if self.betas.is_empty() {
            return Err(Error::Usage("at least one beta is required".into()));
        }
        match self.mode {
            CheckMode::Float => {
                if self.betas.iter().any(|b| b.as_complex().re <= 0.0) {
                    return Err(Error::Usage("floating mode needs Re beta > 0".into()));
                }
            }
            _ => {
                if self.betas.iter().any(|b| !matches!(b, Beta::Int(k) if *k >= 1)) {
                    return Err(Error::Usage("exact mode needs positive integer betas".into()));
                }
            }
        }
        if self.threads == Some(0) {
            return Err(Error::Usage("thread count must be positive".into()));
        }
        Ok(())
    }

    /// Reads a config in the shape of [`SuiteConfig::to_json`]. Missing keys
    /// keep their defaults; unknown keys are rejected. The result is validated.
    pub fn from_json(v: &Value) -> Result<SuiteConfig> {
        let obj = v.as_object().ok_or_else(|| Error::Usage("suite config must be a JSON object".into()))?;
        let bad = |key: &str| Error::Usage(format!("invalid value for config key \"{key}\""));
        let uint = |key: &str, x: &Value| x.as_u64().ok_or_else(|| bad(key));
        let flag = |key: &str, x: &Value| x.as_bool().ok_or_else(|| bad(key));
        let text = |key: &str, x: &Value| x.as_str().map(str::to_owned).ok_or_else(|| bad(key));
        let mut cfg = SuiteConfig::default();
        for (key, x) in obj {
            match key.as_str() {
                "nMax" => cfg.n_max = uint(key, x)?,
                "mMax" => cfg.m_max = uint(key, x)?,
                "pSet" => {
                    cfg.p_set =
                        x.as_array().ok_or_else(|| bad(key))?.iter().map(|p| uint(key, p)).collect::<Result<_>>()?
                }
                "eMax" => cfg.e_max = u32::try_from(uint(key, x)?).map_err(|_| bad(key))?,
                "depthCap" => cfg.depth_cap = uint(key, x)? as usize,
                "samplePointCount" => cfg.sample_points = uint(key, x)? as usize,
                "mode" => cfg.mode = CheckMode::parse(&text(key, x)?)?,
                "betas" => {
                    cfg.betas = x
                        .as_array()
                        .ok_or_else(|| bad(key))?
                        .iter()
                        .map(|b| match b {
                            Value::Number(_) => Ok(Beta::Int(u32::try_from(uint(key, b)?).map_err(|_| bad(key))?)),
                            _ => Beta::parse(&text(key, b)?),
                        })
                        .collect::<Result<_>>()?
                }
                "format" => {
                    cfg.format = match text(key, x)?.as_str() {
                        "text" => OutputFormat::Text,
                        "json" => OutputFormat::Json,
                        _ => return Err(bad(key)),
                    }
                }
                "threads" => cfg.threads = if x.is_null() { None } else { Some(uint(key, x)? as usize) },
                "seed" => {
                    cfg.seed = match x {
                        Value::String(s) => s.parse().map_err(|_| bad(key))?,
                        _ => uint(key, x)?,
                    }
                }
                "failFast" => cfg.fail_fast = flag(key, x)?,
                "timings" => cfg.timings = flag(key, x)?,
                "corruptPsi" => cfg.corrupt_psi = flag(key, x)?,
                _ => return Err(Error::Usage(format!("unknown config key \"{key}\""))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nMax": self.n_max,
            "mMax": self.m_max,
            "pSet": self.p_set,
            "eMax": self.e_max,
            "depthCap": self.depth_cap,
            "samplePointCount": self.sample_points,
            "mode": self.mode.name(),
            "betas": self.betas.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "format": match self.format { OutputFormat::Text => "text", OutputFormat::Json => "json" },
            "threads": self.threads,
            "failFast": self.fail_fast,
            "corruptPsi": self.corrupt_psi,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub check_id: String,
    pub paper_anchor: &'static str,
    pub parameters: Value,
    pub status: Status,
    pub payload: Value,
    pub wall_ms: Option<f64>,
}

impl CheckRecord {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "checkId": self.check_id,
            "paperAnchor": self.paper_anchor,
            "parameters": self.parameters,
            "status": self.status.name(),
            "payload": self.payload,
        });
        if let Some(ms) = self.wall_ms {
            v["wallTimeMs"] = json!(ms);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub config: SuiteConfig,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    /// Passes iff no record failed; inconclusive records do not fail the run
    /// but are counted separately.
    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "seed": self.config.seed.to_string(),
            "config": self.config.to_json(),
            "overall": if self.passed() { "pass" } else { "fail" },
            "counts": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "inconclusive": self.count(Status::Inconclusive),
                "total": self.records.len(),
            },
            "records": self.records.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            out.push_str(&format!("{tag:<12} {:<48} [{}]", r.check_id, r.paper_anchor));
            if let Some(ms) = r.wall_ms {
                out.push_str(&format!(" {ms:.1} ms"));
            }
            if r.status != Status::Pass {
                out.push_str(&format!(" {}", r.payload));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "overall: {} ({} pass, {} fail, {} inconclusive, {} total; seed {})\n",
            if self.passed() { "pass" } else { "fail" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive),
            self.records.len(),
            self.config.seed,
        ));
        out
    }
}

type CheckFn = Box<dyn Fn(&mut ChaCha8Rng) -> Result<CheckOutcome> + Send + Sync>;

struct Job {
    id: String,
    anchor: &'static str,
    params: Value,
    run: CheckFn,
}

fn job(
    id: String,
    anchor: &'static str,
    params: Value,
    run: impl Fn(&mut ChaCha8Rng) -> Result<CheckOutcome> + Send + Sync + 'static,
) -> Job {
    Job { id, anchor, params, run: Box::new(run) }
}

/// Per-check RNG seed: the suite seed mixed with an FNV-1a hash of the id, so
/// results do not depend on scheduling.
fn job_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}

/// ψ at level n, with the last term of the first component removed when
/// the corruption hook is on.
fn psi_for(n: u64, corrupt: bool) -> Result<Vec<FormalSum>> {
    let mut psi = psi_vector(n)?;
    if corrupt {
        if let Some(m) = psi[0].support().last().cloned() {
            psi[0] = &psi[0] - &FormalSum::from_mat(m);
        }
    }
    Ok(psi)
}

fn seeds_for(cfg: &SuiteConfig) -> Vec<(Seed, Beta)> {
    let mut out = Vec::new();
    for &b in &cfg.betas {
        if b == Beta::Int(1) {
            out.push((Seed::InverseZ, b));
        }
        out.push((Seed::Eisenstein, b));
    }
    out
}

fn beta_tag(b: &Beta) -> String {
    b.to_string().replace('+', "p").replace('-', "m")
}

fn build_jobs(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    let n_max = cfg.n_max;
    let m_max = cfg.m_max;
    let levels = || 1..=n_max;
    let pairs = |cap: u64| {
        let mut v = Vec::new();
        for n in 1..=n_max {
            for m in 2..=m_max {
                if n * m <= cap {
                    v.push((n, m));
                }
            }
        }
        v
    };

    for n in levels() {
        let p = json!({"n": n});
        jobs.push(job(format!("cosets.index_formula.n{n:02}"), "B5c", p.clone(), move |_| checks::index_formula(n)));
        jobs.push(job(format!("cosets.index_bijection.n{n:02}"), "map Pn In", p.clone(), move |_| {
            checks::index_bijection(n)
        }));
        jobs.push(job(format!("cosets.h_bijection.n{n:02}"), "def of hn", p.clone(), move |_| checks::h_bijection(n)));
        jobs.push(job(format!("cosets.rho_equivalence.n{n:02}"), "Hn", p.clone(), move |r| {
            checks::rho_equivalence(n, 20, r)
        }));
        jobs.push(job(format!("cosets.rho_homomorphism.n{n:02}"), "representation", p.clone(), move |r| {
            checks::rho_homomorphism(n, 30, r)
        }));
        jobs.push(job(format!("gl2.coset_key.n{n:02}"), "pi map", p.clone(), move |r| {
            checks::coset_key_invariance(n, 40, r)
        }));
        jobs.push(job(format!("stern.farey_k.n{n:02}"), "mr K", p.clone(), move |_| checks::farey_k_coherence(n)));
        jobs.push(job(format!("stern.farey_path.b{n:02}"), "M(q)", json!({"denominator": n}), move |_| {
            checks::farey_invariants(n)
        }));
        let (depth, corrupt) = (cfg.depth_cap, cfg.corrupt_psi);
        jobs.push(job(
            format!("formal.psi_residual.n{n:02}"),
            "three-term 3",
            json!({"n": n, "depthCap": depth}),
            move |_| checks::psi_residual(n, depth, &psi_for(n, corrupt)?),
        ));
        jobs.push(job(format!("hecke.lemma_fr.n{n:02}"), "lemma Fr", p.clone(), move |_| checks::lemma_fr(n)));
    }
    for p in primes_up_to(n_max.max(13)) {
        jobs.push(job(format!("stern.psi_prime.p{p:02}"), "matrix psi(m) 2", json!({"p": p}), move |_| {
            checks::psi_total_prime(p)
        }));
    }
    for (seed, beta) in seeds_for(cfg) {
        let mode = if cfg.mode == CheckMode::Float { CheckMode::Float } else { CheckMode::Exact };
        let params = json!({"seed": seed.name(), "beta": beta.to_string()});
        jobs.push(job(
            format!("formal.scalar_seed.{}.b{}", seed.name(), beta_tag(&beta)),
            "Lewis equation",
            params,
            move |_| checks::scalar_seed(seed, beta, mode),
        ));
        if let Some(b) = beta.as_int() {
            jobs.push(job(
                format!("formal.slash_action.{}.b{b}", seed.name()),
                "slash action",
                json!({"seed": seed.name(), "beta": b}),
                move |r| checks::slash_right_action(seed, b, 30, r),
            ));
        }
    }

    for (n, m) in pairs(60) {
        let p = json!({"n": n, "m": m});
        jobs.push(job(format!("cosets.h_sigma.n{n:02}.m{m:02}"), "h sigma", p.clone(), move |_| checks::h_sigma(n, m)));
        jobs.push(job(
            format!("cosets.rep_system.n{n:02}.m{m:02}"),
            "2 system of representatives",
            p.clone(),
            move |_| checks::rep_disjoint(n, m),
        ));
        jobs.push(job(format!("hecke.uniqueness.n{n:02}.m{m:02}"), "uniqueness", p.clone(), move |_| {
            checks::uniqueness(n, m)
        }));
        jobs.push(job(format!("hecke.lemma2.n{n:02}.m{m:02}"), "lemma2", p.clone(), move |_| checks::lemma2(n, m)));
        jobs.push(job(format!("hecke.la.n{n:02}.m{m:02}"), "lA", p.clone(), move |_| checks::lemma_la(n, m)));
        if gcd(n, m) == 1 {
            jobs.push(job(format!("gl2.b7.n{n:02}.m{m:02}"), "B7", p.clone(), move |r| checks::b7(n, m, 200, r)));
            jobs.push(job(format!("hecke.prime_route.n{n:02}.m{m:02}"), "2 prop prim p", p.clone(), move |_| {
                checks::h_hat_prime_route(n, m)
            }));
        }
    }
    for (n, m) in pairs(36) {
        let p = json!({"n": n, "m": m});
        jobs.push(job(format!("hecke.l_index.n{n:02}.m{m:02}"), "lemma 1", p.clone(), move |_| {
            checks::l_index_unique(n, m)
        }));
        jobs.push(job(format!("hecke.uniqueness1.n{n:02}.m{m:02}"), "uniqueness 1", p.clone(), move |_| {
            checks::uniqueness1(n, m)
        }));
        jobs.push(job(format!("hecke.rhotilde.n{n:02}.m{m:02}"), "rhotilde", p.clone(), move |_| {
            checks::rhotilde(n, m)
        }));
        let m2 = if m == 2 { 3 } else { 2 };
        let pp = json!({"n": n, "m": m, "m2": m2});
        jobs.push(job(format!("hecke.rep_independence.n{n:02}.m{m:02}"), "2 def Hecke operators", pp, move |r| {
            checks::rep_independence(n, m, m2, 5, r)
        }));
        for seed in [Seed::InverseZ, Seed::Eisenstein] {
            let ps = json!({"n": n, "m": m, "seed": seed.name()});
            jobs.push(job(format!("hecke.lift.n{n:02}.m{m:02}.{}", seed.name()), "theorem 2", ps.clone(), move |_| {
                checks::lift_solution(n, m, seed)
            }));
            jobs.push(job(format!("hecke.project_inflate.n{n:02}.m{m:02}.{}", seed.name()), "prop 1", ps, move |_| {
                checks::project_inflate(n, m, seed)
            }));
        }
    }
    for (n, m) in pairs(12) {
        let points = cfg.sample_points;
        jobs.push(job(
            format!("hecke.induce.n{n:02}.m{m:02}"),
            "TH",
            json!({"n": n, "m": m, "points": points}),
            move |_| checks::induce_route(n, m, points),
        ));
    }

    // Bar images of representative systems.
    for n in levels() {
        for &p in &cfg.p_set {
            for e in 1..=cfg.e_max {
                if n % p == 0 && p.pow(e + 1) * n <= 200 {
                    jobs.push(job(
                        format!("cosets.b3.n{n:02}.p{p}.e{e}"),
                        "B3",
                        json!({"n": n, "p": p, "e": e}),
                        move |_| checks::bar_rep_b3(n, p, e),
                    ));
                }
            }
        }
        for m in 2..=m_max {
            for m2 in 2..=m_max {
                if m != m2 && gcd(m, m2) == 1 && m * m2 * n <= 200 {
                    jobs.push(job(
                        format!("cosets.b5.n{n:02}.m{m}.mm{m2}"),
                        "B5",
                        json!({"n": n, "m": m, "m2": m2}),
                        move |_| checks::bar_rep_b5(n, m, m2),
                    ));
                }
            }
        }
    }

    // Coset sum relations.
    for &p in &cfg.p_set {
        for e in 1..=cfg.e_max {
            let anchor = if e == 1 { "lemma e=1" } else { "lemma e>2" };
            jobs.push(job(format!("hecke.x_star.p{p}.e{e}"), anchor, json!({"p": p, "e": e}), move |_| {
                checks::x_star_lemma(p, e)
            }));
        }
    }
    for n in levels() {
        for &p in &cfg.p_set {
            for e in 1..=cfg.e_max {
                let rel = if n % p == 0 {
                    if p.pow(e + 1) * n > 200 {
                        continue;
                    }
                    Relation::PrimeDivides { p, e }
                } else {
                    Relation::PrimeCoprime { p, e }
                };
                jobs.push(job(
                    format!("hecke.relation.n{n:02}.{rel}"),
                    "2 main theorem",
                    json!({"n": n, "relation": rel.to_string()}),
                    move |_| checks::coset_relation(n, rel),
                ));
            }
        }
        for m1 in 2..=m_max {
            for m2 in m1 + 1..=m_max {
                if gcd(m1, m2) == 1 && m1 * m2 * n <= 200 {
                    let rel = Relation::Multiplicative { m1, m2 };
                    jobs.push(job(
                        format!("hecke.relation.n{n:02}.{rel}"),
                        "2 main theorem",
                        json!({"n": n, "relation": rel.to_string()}),
                        move |_| checks::coset_relation(n, rel),
                    ));
                }
            }
        }
    }
    {
        // Twenty commuting pairs drawn from the suite seed.
        let mut rng = ChaCha8Rng::seed_from_u64(job_seed(cfg.seed, "hecke.commute"));
        let mut drawn = std::collections::BTreeSet::new();
        let mut attempts = 0;
        while drawn.len() < 20 && attempts < 1000 {
            attempts += 1;
            let n = rand::Rng::gen_range(&mut rng, 1..=n_max.min(6));
            let m1 = rand::Rng::gen_range(&mut rng, 2..=m_max.max(2));
            let m2 = rand::Rng::gen_range(&mut rng, 2..=m_max.max(2));
            if m1 < m2 && m1 * m2 * n <= 120 {
                drawn.insert((n, m1, m2));
            }
        }
        for (n, m1, m2) in drawn {
            let rel = Relation::Commute { m1, m2 };
            jobs.push(job(
                format!("hecke.relation.n{n:02}.{rel}"),
                "cor1",
                json!({"n": n, "relation": rel.to_string()}),
                move |_| checks::coset_relation(n, rel),
            ));
        }
    }

    // Operators on period vectors.
    for p in primes_up_to(m_max.max(7)) {
        jobs.push(job(format!("hecke.eigenvalue.p{p}"), "Hecke operator 2", json!({"m": p}), move |_| {
            checks::eigenvalue(p, p as i64 + 1)
        }));
    }
    let mode = cfg.mode;
    for n in 1..=n_max.min(6) {
        for m in 2..=m_max.min(6) {
            for (seed, beta) in seeds_for(cfg) {
                let params =
                    json!({"n": n, "m": m, "seed": seed.name(), "beta": beta.to_string(), "mode": mode.name()});
                jobs.push(job(
                    format!("hecke.closure.n{n:02}.m{m:02}.{}.b{}", seed.name(), beta_tag(&beta)),
                    "theorem 3",
                    params,
                    move |_| checks::t_closure(n, m, seed, beta, mode),
                ));
            }
        }
    }
    for (n, m) in [(1, 2), (2, 2), (2, 3)] {
        let beta = Complex64::new(0.5, 14.0);
        jobs.push(job(
            format!("hecke.closure_float.n{n:02}.m{m:02}"),
            "theorem 3",
            json!({"n": n, "m": m, "beta": "0.5+14i"}),
            move |_| checks::t_closure_float(n, m, beta),
        ));
    }
    for n in 1..=n_max.min(4) {
        for &p in cfg.p_set.iter().filter(|&&p| p <= 3) {
            for e in 1..=cfg.e_max.min(2) {
                for (seed, beta) in seeds_for(cfg).into_iter().filter(|(_, b)| b.as_int().is_some()) {
                    let params = json!({"n": n, "p": p, "e": e, "seed": seed.name(), "beta": beta.to_string()});
                    jobs.push(job(
                        format!("hecke.t_relation.n{n:02}.p{p}.e{e}.{}.b{}", seed.name(), beta_tag(&beta)),
                        "main theorem",
                        params,
                        move |_| checks::t_relation(n, p, e, seed, beta, LowerCoefficient::CosetSum),
                    ));
                }
            }
        }
    }
    jobs
}

/// Reads the worker count from the environment. Unset means no override;
/// anything other than a positive integer is a usage error.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Error::Usage(format!("{THREADS_ENV} must be a positive integer, got \"{s}\""))),
        },
    }
}

/// Runs every check in the configured ranges and returns the report with
/// records sorted by check id.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let jobs = build_jobs(cfg);
    let threads = match cfg.threads {
        Some(t) => Some(t),
        None => threads_from_env()?,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
    let stop = AtomicBool::new(false);
    let mut records: Vec<CheckRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|j| {
                if cfg.fail_fast && stop.load(Ordering::Relaxed) {
                    return CheckRecord {
                        check_id: j.id.clone(),
                        paper_anchor: j.anchor,
                        parameters: j.params.clone(),
                        status: Status::Inconclusive,
                        payload: json!({"skipped": "an earlier check failed"}),
                        wall_ms: None,
                    };
                }
                let mut rng = ChaCha8Rng::seed_from_u64(job_seed(cfg.seed, &j.id));
                let start = Instant::now();
                let outcome = (j.run)(&mut rng).unwrap_or_else(|e| CheckOutcome {
                    status: Status::Fail,
                    payload: json!({"error": e.to_string()}),
                });
                let wall = start.elapsed().as_secs_f64() * 1e3;
                if outcome.status == Status::Fail {
                    stop.store(true, Ordering::Relaxed);
                }
                CheckRecord {
                    check_id: j.id.clone(),
                    paper_anchor: j.anchor,
                    parameters: j.params.clone(),
                    status: outcome.status,
                    payload: outcome.payload,
                    wall_ms: cfg.timings.then_some(wall),
                }
            })
            .collect()
    });
    records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(VerificationReport { config: cfg.clone(), records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_json_round_trip() {
        let cfg = SuiteConfig {
            n_max: 4,
            p_set: vec![2, 7],
            betas: vec![Beta::Int(3)],
            threads: Some(2),
            ..Default::default()
        };
        assert_eq!(SuiteConfig::from_json(&cfg.to_json()).unwrap(), cfg);
        assert_eq!(SuiteConfig::from_json(&json!({})).unwrap(), SuiteConfig::default());
    }

    #[test]
    fn config_json_rejects_bad_input() {
        for bad in [json!([]), json!({"nMax": 0}), json!({"pSet": [4]}), json!({"bogus": 1}), json!({"mode": "fast"})] {
            assert!(matches!(SuiteConfig::from_json(&bad), Err(Error::Usage(_))), "{bad}");
        }
    }
}
