mod render;
mod selftest;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use xyhecke_core::brandt::{brandt_matrix, brandt_t_prime, gamma_matrix};
use xyhecke_core::cochain::{phi_infinity_level, phi_infinity_quaternion, EdgeLabel};
use xyhecke_core::eisenstein::{edge_spec, evaluate_on_edge, generator_combination, level_series, sigma, sigma_level, sigma_prime};
use xyhecke_core::ffpoly::MonicPoly;
use xyhecke_core::hecke::{discriminant, eisenstein_quotient, eta_combination, gekeler_matrix, gorenstein_search, prime_divisors};
use xyhecke_core::invariants::{component_group_pq, cuspidal_group, jl_kernel_conjecture, shimura_group};
use xyhecke_core::jl::{build_and_verify_conjugator, find_alpha};
use xyhecke_core::level::LevelParams;
use xyhecke_core::search::Exec;
use xyhecke_core::zlinalg::charpoly;
use xyhecke_core::Error;

use render::{cyclic_product, group, group_text, int, ints, level_fields, matrix, matrix_text, pretty_value};

#[derive(Parser)]
#[command(name = "xyhecke", version, about = "Hecke algebras, Brandt matrices and Eisenstein data for level xy over F_q[T]")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for searches; 1 forces the sequential path.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Level,
    Quaternion,
}

#[derive(Args, Clone, Copy)]
struct LevelArgs {
    #[arg(long)]
    q: u32,
    /// Linear coefficient of y = T^2 + aT + b.
    #[arg(long)]
    a: u32,
    /// Constant coefficient of y.
    #[arg(long)]
    b: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gekeler matrix G(x - s), s in F_q^x.
    Gekeler {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        s: u32,
    },
    /// Brandt matrix B(T' - 1/s); s = 0 gives B(T').
    Brandt {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        s: u32,
    },
    /// Transferred matrix B'(x - s), s in F_q.
    Bprime {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        s: u32,
    },
    /// Trace-form discriminant of the Hecke algebra.
    Disc {
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Search for a Gorenstein witness at primes dividing (q+1)(q^2+1).
    Gorenstein {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Unimodular pairing and the conjugator between the two Hecke actions.
    Jl {
        #[command(flatten)]
        level: LevelArgs,
        /// Comma-separated pairing vector; searched for when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<i64>>,
        #[arg(long, default_value_t = 1)]
        search_bound: u32,
        #[arg(long, default_value_t = 1)]
        witness_bound: u32,
    },
    /// Component group at infinity.
    PhiInfinity {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Side::Level)]
        side: Side,
    },
    /// Quotient of the Hecke algebra by the Eisenstein ideal.
    HeckeQuotient {
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Cuspidal, Shimura and component groups for n = p q with the given degrees.
    Invariants {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        degp: u32,
        #[arg(long)]
        degq: u32,
    },
    /// Eisenstein series on an edge, or divisor sums of a monic polynomial.
    #[command(group(clap::ArgGroup::new("what").required(true).args(["edge", "sigma"])))]
    Eisenstein {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        edge: Option<String>,
        /// Coefficients of a monic polynomial, constant term first, leading 1 included.
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<u32>>,
    },
    /// Internal consistency checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = selftest::Scope::Default)]
        scope: selftest::Scope,
    },
}

/// Report plus an exit code: 0 success, 1 mismatch, 3 inconclusive.
type Outcome = Result<(Value, u8), Error>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::StructureMismatch(_) | Error::NotIntegral | Error::NonIntegral(_) => 1,
        Error::NotFound | Error::NoIntertwiner => 3,
        _ => 2,
    }
}

fn ok(v: Value) -> Outcome {
    Ok((v, 0))
}

fn with_level(lp: &LevelParams, extra: Value) -> Value {
    let mut m = level_fields(lp);
    if let Value::Object(e) = extra {
        m.extend(e);
    }
    Value::Object(m)
}

fn rational(r: &num_rational::BigRational) -> Value {
    if r.is_integer() {
        int(&r.to_integer())
    } else {
        json!(r.to_string())
    }
}

fn level(a: &LevelArgs) -> Result<LevelParams, Error> {
    LevelParams::new(a.q, a.a, a.b)
}

fn run(cmd: &Cmd, exec: Exec) -> Outcome {
    match cmd {
        Cmd::Gekeler { level: l, s } => {
            let lp = level(l)?;
            let g = gekeler_matrix(&lp, *s)?;
            ok(with_level(&lp, json!({"s": s, "matrix": matrix(&g), "charpoly": ints(charpoly(&g)?.coeffs())})))
        }
        Cmd::Brandt { level: l, s } => {
            let lp = level(l)?;
            let m = if *s == 0 { brandt_t_prime(&lp)? } else { brandt_matrix(&lp, *s)? };
            ok(with_level(&lp, json!({"s": s, "matrix": matrix(&m), "gamma": matrix(&gamma_matrix(&lp)?)})))
        }
        Cmd::Bprime { level: l, s } => {
            let lp = level(l)?;
            let m = xyhecke_core::brandt::bprime_matrix(&lp, *s)?;
            ok(with_level(&lp, json!({"s": s, "matrix": matrix(&m), "charpoly": ints(charpoly(&m)?.coeffs())})))
        }
        Cmd::Disc { level: l } => {
            let lp = level(l)?;
            ok(with_level(&lp, json!({"discriminant": int(&discriminant(&lp)?), "table": "discriminants"})))
        }
        Cmd::Gorenstein { level: l, ell, bound } => {
            let lp = level(l)?;
            let q = lp.q() as u64;
            let n = (q + 1) * (q * q + 1);
            let primes = match ell {
                Some(e) if *e < 2 || n % e != 0 || prime_divisors(*e) != vec![*e] => {
                    return Err(Error::Invalid(format!("{} is not a prime divisor of {}", e, n)))
                }
                Some(e) => vec![*e],
                None => prime_divisors(n),
            };
            let mut rows = Vec::new();
            let mut missing = false;
            for p in primes {
                match gorenstein_search(&lp, p, *bound, exec) {
                    Ok(c) => {
                        let eta = eta_combination(&lp, &c)?;
                        rows.push(json!({"ell": p, "found": true, "coefficients": c, "eta": matrix(&eta)}));
                    }
                    Err(Error::NotFound) => {
                        missing = true;
                        rows.push(json!({"ell": p, "found": false}));
                    }
                    Err(e) => return Err(e),
                }
            }
            let code = if missing { 3 } else { 0 };
            Ok((with_level(&lp, json!({"bound": bound, "primes": rows})), code))
        }
        Cmd::Jl { level: l, alpha, search_bound, witness_bound } => {
            let lp = level(l)?;
            let (alpha, searched) = match alpha {
                Some(a) => (a.clone(), false),
                None => (find_alpha(&lp, *search_bound, exec)?, true),
            };
            let r = build_and_verify_conjugator(&lp, &alpha, *witness_bound, exec)?;
            let checks: Vec<Value> = r.checks.iter().map(|(s, ok)| json!({"s": s, "holds": ok})).collect();
            let verified = r.verified();
            let v = with_level(
                &lp,
                json!({
                    "alpha": r.alpha,
                    "searched": searched,
                    "det": int(&r.det),
                    "gram": matrix(&r.gram),
                    "conjugator": r.conjugator.as_ref().map_or(Value::Null, matrix),
                    "variant": r.variant,
                    "witness": r.witness,
                    "checks": checks,
                    "verified": verified,
                    "table": "alphas",
                }),
            );
            Ok((v, if verified { 0 } else { 1 }))
        }
        Cmd::PhiInfinity { q, side } => {
            let (g, name) = match side {
                Side::Level => (phi_infinity_level(*q)?, "level"),
                Side::Quaternion => (phi_infinity_quaternion(*q)?, "quaternion"),
            };
            ok(json!({"q": q, "side": name, "group": group(&g)}))
        }
        Cmd::HeckeQuotient { level: l } => {
            let lp = level(l)?;
            ok(with_level(&lp, json!({"quotient": group(&eisenstein_quotient(&lp)?)})))
        }
        Cmd::Invariants { q, degp, degq } => invariants(*q, *degp, *degq),
        Cmd::Eisenstein { level: l, edge, sigma: coeffs } => {
            let lp = level(l)?;
            if let Some(name) = edge {
                let label = EdgeLabel::parse(name).ok_or_else(|| Error::Invalid(format!("unknown edge label {}", name)))?;
                let e = edge_spec(&lp, label)?;
                let (ex, ey, exy) = level_series(&lp);
                ok(with_level(
                    &lp,
                    json!({
                        "edge": label.name(),
                        "e_x": rational(&evaluate_on_edge(&ex, &e)?),
                        "e_y": rational(&evaluate_on_edge(&ey, &e)?),
                        "e_xy": rational(&evaluate_on_edge(&exy, &e)?),
                        "generator": rational(&generator_combination(&lp, label)?),
                    }),
                ))
            } else {
                let c = coeffs.as_deref().unwrap_or_default();
                if c.last() != Some(&1) {
                    return Err(Error::Invalid("polynomial must be monic: last coefficient 1".into()));
                }
                let m = MonicPoly::new(&lp.field(), c)?;
                ok(with_level(
                    &lp,
                    json!({
                        "poly": c,
                        "sigma": int(&sigma(&m)?),
                        "sigma_x": int(&sigma_level(&m, &lp.x())?),
                        "sigma_y": int(&sigma_level(&m, &lp.y())?),
                        "sigma_xy": int(&sigma_prime(&m, &lp.x(), &lp.y())?),
                    }),
                ))
            }
        }
        Cmd::Selftest { scope } => {
            let mut rows = Vec::new();
            let mut failed = 0;
            for (name, check) in selftest::checks(*scope) {
                match check(exec) {
                    Ok(()) => rows.push(json!({"name": name, "pass": true})),
                    Err(d) => {
                        failed += 1;
                        rows.push(json!({"name": name, "pass": false, "detail": d}));
                    }
                }
            }
            let passed = rows.len() - failed;
            let v = json!({"checks": rows, "passed": passed, "failed": failed});
            Ok((v, if failed == 0 { 0 } else { 1 }))
        }
    }
}

fn invariants(q: u32, dp: u32, dq: u32) -> Outcome {
    let c = cuspidal_group(q, dp, dq)?;
    let mut cusp = if c.full == c.sub { cyclic_product(&c.sub_orders) } else { group(&c.full) };
    cusp["order_c_p"] = int(&c.order_c_p);
    cusp["order_c_q"] = int(&c.order_c_q);
    cusp["sub"] = cyclic_product(&c.sub_orders);
    let (ap, apf) = component_group_pq(q, dp, dq)?;
    let (aq, aqf) = component_group_pq(q, dq, dp)?;
    let conjecture = if dp <= 2 {
        let k = jl_kernel_conjecture(q, dp, dq)?;
        json!({
            "m_q": int(&k.m_q),
            "n_q": int(&k.n_q),
            "kernel": group(&k.kernel),
            "phi_prime_q": group(&k.phi_prime_q),
            "phi_tilde_q": group(&k.phi_tilde_q),
        })
    } else {
        Value::Null
    };
    ok(json!({
        "q": q,
        "degp": dp,
        "degq": dq,
        "cuspidal": cusp,
        "shimura": group(&shimura_group(q, &[dp, dq])?),
        "component": {
            "p": {"group": group(&ap), "rational": group(&apf)},
            "q": {"group": group(&aq), "rational": group(&aqf)},
        },
        "conjecture": conjecture,
    }))
}

fn pretty(cmd: &Cmd, v: &Value) -> String {
    let Value::Object(m) = v else { return pretty_value(v, 0) };
    match cmd {
        Cmd::Disc { .. } => format!("{:>3} {:>3} {:>3} | {}", m["q"], m["a"], m["b"], m["discriminant"]),
        Cmd::Selftest { .. } => {
            let mut out: Vec<String> = m["checks"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|c| match c["detail"].as_str() {
                    None => format!("PASS {}", c["name"].as_str().unwrap_or("")),
                    Some(d) => format!("FAIL {}: {}", c["name"].as_str().unwrap_or(""), d),
                })
                .collect();
            out.push(format!("{} passed, {} failed", m["passed"], m["failed"]));
            out.join("\n")
        }
        _ => pretty_fields(m),
    }
}

fn pretty_fields(m: &Map<String, Value>) -> String {
    let mut out = Vec::new();
    for (k, v) in m {
        if let Some(mat) = as_matrix(v) {
            out.push(format!("{}:\n{}", k, matrix_text(&mat)));
        } else if let Some(g) = as_group(v) {
            out.push(format!("{}: {}", k, group_text(&g)));
        } else {
            match v {
                Value::Object(inner) => out.push(format!("{}:\n{}", k, indent(&pretty_fields(inner)))),
                Value::Array(a) if a.iter().all(Value::is_object) && !a.is_empty() => {
                    out.push(format!("{}:", k));
                    out.extend(a.iter().map(|e| format!("  - {}", e)));
                }
                _ => out.push(pretty_value(&json!({ k.clone(): v }), 0)),
            }
        }
    }
    out.join("\n")
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {}", l)).collect::<Vec<_>>().join("\n")
}

fn big(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn as_matrix(v: &Value) -> Option<xyhecke_core::zlinalg::IntMatrix> {
    let rows = v.as_array()?;
    if rows.is_empty() || !rows.iter().all(Value::is_array) {
        return None;
    }
    let cells: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(big).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let cols = cells[0].len();
    if cells.iter().any(|r| r.len() != cols) {
        return None;
    }
    Some(xyhecke_core::zlinalg::IntMatrix::from_fn(cells.len(), cols, |i, j| cells[i][j].clone()))
}

fn as_group(v: &Value) -> Option<xyhecke_core::zlinalg::AbelianGroup> {
    let f = v.get("invariant_factors")?.as_array()?;
    let f: Vec<BigInt> = f.iter().map(big).collect::<Option<_>>()?;
    Some(xyhecke_core::zlinalg::AbelianGroup::from_invariant_factors(f))
}

fn exec_for(jobs: Option<usize>) -> Exec {
    if jobs == Some(1) || !cfg!(feature = "parallel") {
        return Exec::Sequential;
    }
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Exec::Parallel
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = exec_for(cli.jobs);
    match run(&cli.cmd, exec) {
        Ok((v, code)) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&v).expect("serializable"),
                Format::Pretty => pretty(&cli.cmd, &v),
            };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{}", text);
            ExitCode::from(code)
        }
        Err(e) => {
            let v = json!({"error": e.to_string()});
            match cli.format {
                Format::Json => {
                    let _ = writeln!(std::io::stdout().lock(), "{}", v);
                }
                Format::Pretty => {}
            }
            eprintln!("xyhecke: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
