use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hecke_lab::arith::primes_up_to;
use hecke_lab::cosets::CosetTable;
use hecke_lab::formal::{lewis_check_function, Beta, CheckMode, PeriodVector, Representation, Seed};
use hecke_lab::hecke::{detect_eigenvalue, h_hat_coset_sum, relation_sides, t_tilde_apply, Relation};
use hecke_lab::json::{
    coset_sum_from_json, coset_sum_to_json, farey_from_json, farey_to_json, formal_sum_from_json, formal_sum_to_json,
    lewis_report_to_json, mat_to_json, parse_rational, table_from_json, table_to_json, to_canonical_string,
    weights_from_json, weights_to_json,
};
use hecke_lab::stern::{farey_path, matrix_sets, psi_total, psi_vector};
use hecke_lab::suite::{run_suite, OutputFormat, SuiteConfig};
use hecke_lab::{Error, Result};

#[derive(Parser)]
#[command(name = "hecke-lab", version, about = "Exact coset, Farey and Hecke operator computations for Γ₀(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Index table of Γ₀(n)\SL(2,Z): (c, b), dₙ, A_i, R_i, hₙ.
    Index {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// The matrix sets S, X, Y and X* of determinant n.
    Sets {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// The ψ-vector of level n (K-orbit sums).
    Psi {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// The Farey path of a rational in [0, 1).
    Farey {
        #[arg(long)]
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// Ĥₙ,ₘ as a multiset of left cosets of Γ₀(n).
    Cosets {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        json: bool,
    },
    /// Applies T̃ₙ,ₘ to the ψ solution of level n built on a seed.
    Apply {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_parser = Seed::parse)]
        seed: Seed,
        #[arg(long, value_parser = Beta::parse, default_value = "1")]
        beta: Beta,
        #[arg(long)]
        json: bool,
    },
    /// Verification commands.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Writes a canonical JSON artifact.
    Export(ExportArgs),
    /// Reads an exported artifact, validates it and writes it back canonically.
    Import {
        #[arg(value_enum)]
        entity: Entity,
        /// Input file, or - for standard input.
        file: String,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Checks the three-term equation for the ψ solution of level n.
    Lewis {
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = Seed::parse)]
        seed: Seed,
        #[arg(long, value_parser = Beta::parse, default_value = "1")]
        beta: Beta,
        #[arg(long, value_parser = CheckMode::parse, default_value = "exact")]
        mode: CheckMode,
        #[arg(long)]
        json: bool,
    },
    /// Checks a family of coset sum relations at level n.
    Hecke {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        family: Family,
        /// Largest prime (divides, coprime) or largest m (mult, commute).
        #[arg(long, default_value_t = 5)]
        pmax: u64,
        #[arg(long, default_value_t = 2)]
        emax: u32,
        #[arg(long)]
        json: bool,
    },
    /// Runs the full verification suite.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Divides,
    Coprime,
    Mult,
    Commute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Entity {
    Table,
    Psi,
    Farey,
    Cosetsum,
    Weights,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(value_enum)]
    entity: Entity,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long, value_parser = Seed::parse, default_value = "inversez")]
    seed: Seed,
    #[arg(long, value_parser = Beta::parse, default_value = "1")]
    beta: Beta,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value_t = 10)]
    n_max: u64,
    #[arg(long, default_value_t = 6)]
    m_max: u64,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    p_set: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    e_max: u32,
    #[arg(long, default_value_t = 10_000)]
    depth_cap: usize,
    #[arg(long, default_value_t = 20)]
    sample_points: usize,
    #[arg(long, value_parser = CheckMode::parse, default_value = "exact")]
    mode: CheckMode,
    #[arg(long, value_delimiter = ',', value_parser = Beta::parse, default_value = "1,2")]
    betas: Vec<Beta>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    rng_seed: u64,
    #[arg(long)]
    fail_fast: bool,
    /// Adds per-check wall time to the report.
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    json: bool,
    /// Test hook: corrupts one ψ component before the residual checks.
    #[arg(long, hide = true)]
    corrupt_psi: bool,
}

/// Output plus whether the verification it reports passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn render(json: bool, value: Value, text: impl FnOnce() -> String) -> String {
    if json {
        to_canonical_string(&value)
    } else {
        text()
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Index { n, json } => {
            let t = CosetTable::get(positive(n)?)?;
            Ok(Outcome::ok(render(json, table_to_json(&t), || {
                let mut s = format!("level {} index {}\n", t.n, t.mu);
                for e in &t.entries {
                    s.push_str(&format!(
                        "{:>4}  (c,b)=({},{})  d={}  A={}  R={}  h={}\n",
                        e.ordinal, e.c, e.b, e.d, e.a_mat, e.r, t.h[e.ordinal]
                    ));
                }
                s
            })))
        }
        Command::Sets { n, json } => {
            let sets = matrix_sets(n)?;
            let list = |v: &[hecke_lab::Mat2]| v.iter().map(mat_to_json).collect::<Vec<_>>();
            let value = json!({"n": n, "S": list(&sets.s), "X": list(&sets.x), "Y": list(&sets.y), "Xstar": list(&sets.x_star)});
            Ok(Outcome::ok(render(json, value, || {
                let line = |name: &str, v: &[hecke_lab::Mat2]| {
                    format!(
                        "{name} ({}): {}\n",
                        v.len(),
                        v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
                    )
                };
                [line("S", &sets.s), line("X", &sets.x), line("Y", &sets.y), line("X*", &sets.x_star)].concat()
            })))
        }
        Command::Psi { n, json } => {
            let psi = psi_vector(n)?;
            let value = json!({"n": n, "components": psi.iter().map(formal_sum_to_json).collect::<Vec<_>>()});
            Ok(Outcome::ok(render(json, value, || {
                psi.iter().enumerate().map(|(i, w)| format!("ψ[{i}] = {w}\n")).collect()
            })))
        }
        Command::Farey { q, json } => {
            let path = farey_path(&parse_rational(&q)?)?;
            Ok(Outcome::ok(render(json, farey_to_json(&path), || {
                let mut s = format!("q = {}  L = {}\n", path.q, path.len());
                for (r, m) in path.m.iter().enumerate() {
                    s.push_str(&format!("m_{} = {m}  y_{} = {}/{}\n", r + 1, r + 1, path.num[r + 1], path.den[r + 1]));
                }
                s
            })))
        }
        Command::Cosets { n, m, json } => {
            let cs = h_hat_coset_sum(n, m)?;
            Ok(Outcome::ok(render(json, coset_sum_to_json(&cs), || {
                let mut s = format!("Ĥ({n},{m}): {} cosets\n", cs.total());
                for (k, mult) in &cs.keys {
                    s.push_str(&format!("{mult} × [{}:{}] {}\n", k.class.0, k.class.1, k.hnf));
                }
                s
            })))
        }
        Command::Apply { n, m, seed, beta, json } => {
            let v = PeriodVector::new(n, seed, beta, psi_vector(n)?);
            let out = t_tilde_apply(n, m, &v)?;
            let eigen = match beta {
                Beta::Int(_) => detect_eigenvalue(&v, &out)?.map(|l| l.to_string()),
                Beta::Complex(_) => None,
            };
            let mut value = weights_to_json(&out);
            value["eigenvalue"] = json!(eigen);
            Ok(Outcome::ok(render(json, value, || {
                let mut s: String = out.weights.iter().enumerate().map(|(i, w)| format!("[{i}] {w}\n")).collect();
                if let Some(l) = &eigen {
                    s.push_str(&format!("eigenvalue: {l}\n"));
                }
                s
            })))
        }
        Command::Verify { what: Verify::Lewis { n, seed, beta, mode, json } } => {
            let v = PeriodVector::new(n, seed, beta, psi_vector(n)?);
            let rep = lewis_check_function(&v, Representation::RhoTilde, mode)?;
            let passed = rep.passed();
            let text = render(json, lewis_report_to_json(&rep), || {
                let mut s: String = rep
                    .components
                    .iter()
                    .map(|c| format!("[{}] {} {}\n", c.index, c.status.name(), c.fail_points.join(" ")))
                    .collect();
                s.push_str(&format!("overall: {}\n", if passed { "pass" } else { "fail" }));
                s
            });
            Ok(Outcome { text, passed })
        }
        Command::Verify { what: Verify::Hecke { n, family, pmax, emax, json } } => {
            let mut rels = Vec::new();
            match family {
                Family::Divides | Family::Coprime => {
                    for p in primes_up_to(pmax) {
                        for e in 1..=emax {
                            match family {
                                Family::Divides if n % p == 0 => rels.push(Relation::PrimeDivides { p, e }),
                                Family::Coprime if n % p != 0 => rels.push(Relation::PrimeCoprime { p, e }),
                                _ => {}
                            }
                        }
                    }
                }
                Family::Mult | Family::Commute => {
                    for m1 in 2..=pmax {
                        for m2 in m1 + 1..=pmax {
                            match family {
                                Family::Mult if hecke_lab::arith::gcd(m1, m2) == 1 => {
                                    rels.push(Relation::Multiplicative { m1, m2 })
                                }
                                Family::Commute => rels.push(Relation::Commute { m1, m2 }),
                                _ => {}
                            }
                        }
                    }
                }
            }
            let mut rows = Vec::new();
            let mut passed = true;
            for rel in rels {
                let sides = relation_sides(n, rel)?;
                passed &= sides.holds();
                rows.push(json!({
                    "relation": rel.to_string(),
                    "status": if sides.holds() { "pass" } else { "fail" },
                    "lhsTotal": sides.lhs.total(),
                    "rhsTotal": sides.rhs.total(),
                }));
            }
            let value = json!({"n": n, "relations": rows, "overall": if passed { "pass" } else { "fail" }});
            let text = render(json, value, || {
                let mut s: String = rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{} {} ({} = {})\n",
                            r["status"].as_str().unwrap_or(""),
                            r["relation"].as_str().unwrap_or(""),
                            r["lhsTotal"],
                            r["rhsTotal"]
                        )
                    })
                    .collect();
                s.push_str(&format!("overall: {}\n", if passed { "pass" } else { "fail" }));
                s
            });
            Ok(Outcome { text, passed })
        }
        Command::Verify { what: Verify::Suite(a) } => {
            let cfg = SuiteConfig {
                n_max: a.n_max,
                m_max: a.m_max,
                p_set: a.p_set,
                e_max: a.e_max,
                depth_cap: a.depth_cap,
                sample_points: a.sample_points,
                mode: a.mode,
                betas: a.betas,
                format: if a.json { OutputFormat::Json } else { OutputFormat::Text },
                threads: a.threads,
                seed: a.rng_seed,
                fail_fast: a.fail_fast,
                timings: a.timings,
                corrupt_psi: a.corrupt_psi,
            };
            let report = run_suite(&cfg)?;
            let text = if a.json { to_canonical_string(&report.to_json()) } else { report.to_text() };
            Ok(Outcome { text, passed: report.passed() })
        }
        Command::Export(a) => {
            let need_n = || a.n.ok_or_else(|| Error::Usage("this export needs --n".into()));
            let value = match a.entity {
                Entity::Table => table_to_json(&*CosetTable::get(positive(need_n()?)?)?),
                Entity::Psi => formal_sum_to_json(&psi_total(need_n()?)?),
                Entity::Farey => {
                    let q = a.q.as_deref().ok_or_else(|| Error::Usage("farey export needs --q".into()))?;
                    farey_to_json(&farey_path(&parse_rational(q)?)?)
                }
                Entity::Cosetsum => {
                    let m = a.m.ok_or_else(|| Error::Usage("cosetsum export needs --m".into()))?;
                    coset_sum_to_json(&h_hat_coset_sum(need_n()?, m)?)
                }
                Entity::Weights => {
                    let n = need_n()?;
                    let v = PeriodVector::new(n, a.seed, a.beta, psi_vector(n)?);
                    match a.m {
                        Some(m) => weights_to_json(&t_tilde_apply(n, m, &v)?),
                        None => weights_to_json(&v),
                    }
                }
            };
            Ok(Outcome::ok(to_canonical_string(&value)))
        }
        Command::Import { entity, file } => {
            let raw = if file == "-" {
                std::io::read_to_string(std::io::stdin())
                    .map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?
            } else {
                std::fs::read_to_string(&file).map_err(|e| Error::Usage(format!("cannot read {file}: {e}")))?
            };
            let v: Value = serde_json::from_str(&raw).map_err(|e| Error::Parse(e.to_string()))?;
            let value = match entity {
                Entity::Table => table_to_json(&*table_from_json(&v)?),
                Entity::Psi => formal_sum_to_json(&formal_sum_from_json(&v)?),
                Entity::Farey => farey_to_json(&farey_from_json(&v)?),
                Entity::Cosetsum => coset_sum_to_json(&coset_sum_from_json(&v)?),
                Entity::Weights => weights_to_json(&weights_from_json(&v)?),
            };
            Ok(Outcome::ok(to_canonical_string(&value)))
        }
    }
}

fn positive(n: u64) -> Result<u64> {
    if n == 0 {
        Err(Error::Usage("n must be positive".into()))
    } else {
        Ok(n)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("hecke-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
