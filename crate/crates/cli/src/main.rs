use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qmink::algebra::{Coord, Element};
use qmink::derivative::{grad_closed, COMPONENT_NAMES};
use qmink::json::to_json;
use qmink::matrix::{
    char_check_b0, char_check_l0, l_matrix, l_pow_closed, mat_pow_naive, AlgMatrix,
};
use qmink::syntax::{parse_element, parse_scalar, ParseError};
use qmink::verify::{
    calculus_suite, structure_suite, waves_suite, SuiteReport, DEFAULT_MAX_DEGREE,
};
use qmink::waves::{
    massive_rest_state, massless_state, verify_klein_gordon, verify_massive, verify_massless,
    TruncatedSeries, WaveReport, DEFAULT_MASSIVE_DEGREE, DEFAULT_MASSLESS_DEGREE,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "qmink",
    version,
    about = "Exact calculus on q-deformed Minkowski space"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an expression in normal order
    Normalize { expr: String },
    /// Print the gradient of an expression
    Derive { expr: String },
    /// Print the n-th power of an L-matrix (four-vector basis)
    Lpow { gen: String, n: u32 },
    /// Run verification suites
    Verify {
        suite: Suite,
        /// Degree bound; defaults to QMINK_MAX_DEGREE or 6
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Build a plane-wave solution as a truncated series
    Solve {
        kind: WaveKind,
        #[arg(long)]
        degree: Option<u32>,
        /// Eigenvalue parameter, any scalar expression (default k or m)
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Check the characteristic identities of L_x0 and B_x0
    CharCheck,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Structure,
    Calculus,
    Waves,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum WaveKind {
    Massless,
    Massive,
}

enum Failure {
    Usage(String),
    Check(String),
}

fn parse_error(input: &str, e: ParseError) -> Failure {
    let caret = format!("{}^", " ".repeat(e.pos));
    Failure::Usage(format!("parse error: {e}\n  {input}\n  {caret}"))
}

fn element_arg(s: &str) -> Result<Element, Failure> {
    parse_element(s).map_err(|e| parse_error(s, e))
}

fn coord_arg(s: &str) -> Result<Coord, Failure> {
    Coord::from_name(s).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown generator {s:?}; expected x0, xm, xp, x3 or x30"
        ))
    })
}

fn matrix_json(m: &AlgMatrix) -> Value {
    let n = m.dim();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match m.get(i, j).try_clear() {
                    Ok(e) => to_json(&e),
                    Err(_) => Value::String(m.get(i, j).to_string()),
                })
                .collect()
        })
        .collect();
    json!({ "basis": ["0", "-", "+", "3"], "rows": rows })
}

fn series_json(psi: &TruncatedSeries) -> Value {
    json!({
        "param": psi.param().to_string(),
        "degree": psi.degree(),
        "slices": psi.slices().iter().map(to_json).collect::<Vec<_>>(),
    })
}

fn report_json(name: &str, r: &WaveReport) -> Value {
    json!({
        "check": name,
        "passed": r.passed(),
        "checked_through": r.checked_through,
        "failure": r.failure.as_ref().map(|(d, res)| json!({ "degree": d, "residual": res })),
    })
}

fn suite_json(s: &SuiteReport) -> Value {
    json!({
        "suite": s.suite,
        "passed": s.passed(),
        "checks": s.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
    })
}

fn default_degree() -> Result<u32, Failure> {
    match std::env::var("QMINK_MAX_DEGREE") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "QMINK_MAX_DEGREE={v:?} is not a non-negative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Normalize { expr } => {
            let e = element_arg(&expr)?;
            Ok(if json {
                to_json(&e).to_string()
            } else {
                e.to_string()
            })
        }
        Command::Derive { expr } => {
            let e = element_arg(&expr)?;
            let g = grad_closed(&e).map_err(|err| Failure::Check(err.to_string()))?;
            let comps = g
                .try_clear()
                .map_err(|err| Failure::Check(err.to_string()))?;
            if json {
                let obj: serde_json::Map<String, Value> = COMPONENT_NAMES
                    .iter()
                    .zip(&comps)
                    .map(|(n, c)| (n.to_string(), to_json(c)))
                    .collect();
                Ok(json!({ "input": e.to_string(), "gradient": obj }).to_string())
            } else {
                Ok(COMPONENT_NAMES
                    .iter()
                    .zip(&comps)
                    .map(|(n, c)| format!("d^{n}: {c}"))
                    .collect::<Vec<_>>()
                    .join("\n"))
            }
        }
        Command::Lpow { gen, n } => {
            let alpha = coord_arg(&gen)?;
            let m = match l_pow_closed(alpha, n) {
                Ok(m) => m,
                Err(_) => mat_pow_naive(l_matrix(alpha), n),
            };
            Ok(if json {
                matrix_json(&m).to_string()
            } else {
                m.to_string()
            })
        }
        Command::Verify { suite, max_degree } => {
            let d = match max_degree {
                Some(d) => d,
                None => default_degree()?,
            };
            let reports: Vec<SuiteReport> = match suite {
                Suite::Structure => vec![structure_suite(d)],
                Suite::Calculus => vec![calculus_suite(d)],
                Suite::Waves => vec![waves_suite(d)],
                Suite::All => vec![structure_suite(d), calculus_suite(d), waves_suite(d)],
            };
            let out = if json {
                Value::Array(reports.iter().map(suite_json).collect()).to_string()
            } else {
                reports
                    .iter()
                    .map(ToString::to_string)
                    .collect::<String>()
                    .trim_end()
                    .to_string()
            };
            if reports.iter().all(SuiteReport::passed) {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
        Command::Solve {
            kind,
            degree,
            param,
            verify,
        } => {
            let param = match &param {
                Some(p) => parse_scalar(p).map_err(|e| parse_error(p, e))?,
                None => match kind {
                    WaveKind::Massless => qmink::scalar::Scalar::k(),
                    WaveKind::Massive => qmink::scalar::Scalar::m(),
                },
            };
            let (psi, checks) = match kind {
                WaveKind::Massless => {
                    let psi = massless_state(&param, degree.unwrap_or(DEFAULT_MASSLESS_DEGREE));
                    let checks = if verify {
                        vec![("massless", verify_massless(&psi))]
                    } else {
                        vec![]
                    };
                    (psi, checks)
                }
                WaveKind::Massive => {
                    let psi = massive_rest_state(&param, degree.unwrap_or(DEFAULT_MASSIVE_DEGREE));
                    let checks = if verify {
                        vec![
                            ("rest state", verify_massive(&psi)),
                            ("Klein-Gordon", verify_klein_gordon(&psi)),
                        ]
                    } else {
                        vec![]
                    };
                    (psi, checks)
                }
            };
            let mut reports = Vec::new();
            for (name, r) in checks {
                reports.push((name, r.map_err(|e| Failure::Check(e.to_string()))?));
            }
            let ok = reports.iter().all(|(_, r)| r.passed());
            let out = if json {
                let mut v = series_json(&psi);
                if verify {
                    v["verification"] =
                        Value::Array(reports.iter().map(|(n, r)| report_json(n, r)).collect());
                }
                v.to_string()
            } else {
                let mut s = psi.to_string();
                for (n, r) in &reports {
                    s.push_str(&format!("{n}: {r}\n"));
                }
                s.trim_end().to_string()
            };
            if ok {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
        Command::CharCheck => {
            let l = char_check_l0();
            let b = char_check_b0();
            let ok = l.is_ok() && b.is_ok();
            let out = if json {
                json!({ "L_x0": l.is_ok(), "B_x0": b.is_ok() }).to_string()
            } else {
                let tag = |r: bool| if r { "PASS" } else { "FAIL" };
                format!("{} L_x0\n{} B_x0", tag(l.is_ok()), tag(b.is_ok()))
            };
            if ok {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            println!("{out}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
