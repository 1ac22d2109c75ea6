//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain error
//! (precondition violation), 3 internal consistency failure.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dice::{self, DiceError, DieSpec};
use crate::gasolver::{self, GASolution, GaError};
use crate::laurent::LaurentPoly;
use crate::ratfun::format_all;
use crate::rational::{self, Rational};
use crate::tales::{self, GeorgeReport, Tale, TaleError, TaleSearch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "residuegf",
    version,
    about = "Exact generating functions for residue-class sums of Laurent polynomial powers"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock time in JSON output (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generating functions f_{k,a}(t) for every residue a.
    Ga {
        #[arg(short = 'P', long = "poly", allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
    },
    /// As `ga`, for symmetric P (solves half the classes and mirrors).
    Gas {
        #[arg(short = 'P', long = "poly", allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
    },
    /// Coefficient of x^j in P^n.
    Coeff {
        #[arg(short = 'P', long = "poly", allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: i64,
        #[arg(short = 'j', allow_hyphen_values = true)]
        j: i64,
    },
    /// A(n,k,a) by direct expansion.
    Sum {
        #[arg(short = 'P', long = "poly", allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: i64,
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: i64,
    },
    /// A(0..=N,k,a) from the generating function.
    Series {
        #[arg(short = 'P', long = "poly", allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: i64,
        #[arg(short = 'N', allow_hyphen_values = true)]
        big_n: i64,
    },
    /// Check the corrected (ten-fold) trinomial identity rigorously.
    VerifyGeorge,
    /// Reproduce Euler's misleading induction.
    EulerTale,
    /// Search for a cautionary tale in A(n,k,a).
    Tale {
        #[arg(short = 'P', long = "poly", allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        fit_window: i64,
        #[arg(long, allow_hyphen_values = true)]
        horizon: i64,
    },
    /// Residue-class probabilities of a loaded die.
    Dice {
        /// Die as JSON: {"faces": [{"value": -1, "prob": "1/3"}, ...]}
        #[arg(long)]
        faces: String,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: Option<i64>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<GaError> for CliError {
    fn from(e: GaError) -> Self {
        match e {
            GaError::Internal(_) => CliError::Internal(e.to_string()),
            GaError::ZeroPolynomial | GaError::NotSymmetric => {
                CliError::Domain(format!("-P: {e}"))
            }
            GaError::ZeroModulus => CliError::Domain(format!("-k: {e}")),
            GaError::ResidueOutOfRange { .. } => CliError::Domain(format!("-a: {e}")),
        }
    }
}

/// Envelope around every JSON result. The command name is deliberately
/// absent so that `ga` and `gas` print identical bytes.
#[derive(Serialize)]
struct Envelope<I: Serialize, R: Serialize> {
    inputs: I,
    result: R,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

#[derive(Serialize, Default)]
struct Inputs {
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<i64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    big_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit_window: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    horizon: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    die: Option<DieSpec>,
}

/// A finished command: JSON payload plus its text rendering.
struct Output {
    inputs: Inputs,
    json: serde_json::Value,
    text: String,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let started = Instant::now();
    match execute(&cli.command) {
        Ok(output) => {
            let rendered = match cli.format {
                Format::Text => output.text,
                Format::Json => {
                    let env = Envelope {
                        inputs: output.inputs,
                        result: output.json,
                        timing_ms: cli.timing.then(|| started.elapsed().as_millis()),
                    };
                    serde_json::to_string_pretty(&env).expect("serializable")
                }
            };
            if writeln!(out, "{rendered}").is_err() {
                return 3;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn parse_poly(text: &str) -> Result<LaurentPoly, CliError> {
    LaurentPoly::parse(text).map_err(|e| CliError::Usage(format!("-P: {e}")))
}

fn positive(flag: &str, v: i64) -> Result<usize, CliError> {
    if v < 1 {
        return Err(CliError::Domain(format!("{flag} must be a positive integer, got {v}")));
    }
    Ok(v as usize)
}

fn nonnegative(flag: &str, v: i64) -> Result<usize, CliError> {
    if v < 0 {
        return Err(CliError::Domain(format!("{flag} must be non-negative, got {v}")));
    }
    Ok(v as usize)
}

fn residue(v: i64, k: usize) -> Result<usize, CliError> {
    if v < 0 || v as usize >= k {
        return Err(CliError::Domain(format!("-a must lie in [0, {k}), got {v}")));
    }
    Ok(v as usize)
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn execute(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Ga { p, k } | Command::Gas { p, k } => {
            let poly = parse_poly(p)?;
            let k = positive("-k", *k)?;
            let sol = if matches!(cmd, Command::Ga { .. }) {
                gasolver::ga(&poly, k)?
            } else {
                gasolver::gas(&poly, k)?
            };
            Ok(Output {
                inputs: Inputs {
                    p: Some(poly.to_string()),
                    k: Some(k),
                    ..Default::default()
                },
                json: to_json(&sol),
                text: solution_text(&sol),
            })
        }
        Command::Coeff { p, n, j } => {
            let poly = parse_poly(p)?;
            let n = nonnegative("-n", *n)? as u64;
            let c = poly.pow(n).coeff(*j);
            Ok(scalar_output(
                Inputs {
                    p: Some(poly.to_string()),
                    n: Some(n),
                    j: Some(*j),
                    ..Default::default()
                },
                &c,
            ))
        }
        Command::Sum { p, k, a, n } => {
            let poly = parse_poly(p)?;
            let k = positive("-k", *k)?;
            let a = residue(*a, k)?;
            let n = nonnegative("-n", *n)? as u64;
            let v = gasolver::residue_sum(&poly, k, a, n)?;
            Ok(scalar_output(
                Inputs {
                    p: Some(poly.to_string()),
                    k: Some(k),
                    a: Some(a),
                    n: Some(n),
                    ..Default::default()
                },
                &v,
            ))
        }
        Command::Series { p, k, a, big_n } => {
            let poly = parse_poly(p)?;
            let k = positive("-k", *k)?;
            let a = residue(*a, k)?;
            let big_n = nonnegative("-N", *big_n)?;
            let sol = gasolver::ga(&poly, k)?;
            let terms = format_all(&sol.series(a, big_n));
            Ok(Output {
                inputs: Inputs {
                    p: Some(poly.to_string()),
                    k: Some(k),
                    a: Some(a),
                    big_n: Some(big_n),
                    ..Default::default()
                },
                text: terms.join(", "),
                json: to_json(&terms),
            })
        }
        Command::VerifyGeorge => {
            let report = tales::george_check();
            if !report.all_confirmed() {
                return Err(CliError::Internal(format!(
                    "identity check failed: {}",
                    serde_json::to_string(&report).expect("serializable")
                )));
            }
            Ok(Output {
                inputs: Inputs::default(),
                text: george_text(&report),
                json: to_json(&report),
            })
        }
        Command::EulerTale => {
            let tale = tales::euler_tale();
            Ok(Output {
                inputs: Inputs::default(),
                text: tale_text(&tale),
                json: to_json(&tale),
            })
        }
        Command::Tale {
            p,
            k,
            a,
            fit_window,
            horizon,
        } => {
            let poly = parse_poly(p)?;
            let k = positive("-k", *k)?;
            let a = residue(*a, k)?;
            let fit_window = nonnegative("--fit-window", *fit_window)?;
            let horizon = nonnegative("--horizon", *horizon)?;
            let search = tales::find_tale(&poly, k, a, fit_window, horizon).map_err(|e| match e {
                TaleError::FitWindow(_) => CliError::Domain(format!("--fit-window: {e}")),
                TaleError::Horizon { .. } => CliError::Domain(format!("--horizon: {e}")),
                TaleError::Ga(g) => g.into(),
            })?;
            let inputs = Inputs {
                p: Some(poly.to_string()),
                k: Some(k),
                a: Some(a),
                fit_window: Some(fit_window),
                horizon: Some(horizon),
                ..Default::default()
            };
            Ok(tale_search_output(inputs, search))
        }
        Command::Dice { faces, k, n } => {
            let die: DieSpec = serde_json::from_str(faces).map_err(|e| {
                if e.is_data() {
                    CliError::Domain(format!("--faces: {e}"))
                } else {
                    CliError::Usage(format!("--faces: {e}"))
                }
            })?;
            let k = positive("-k", *k)?;
            let n = n.map(|n| nonnegative("-n", n)).transpose()?.map(|n| n as u64);
            dice_output(die, k, n)
        }
    }
}

fn scalar_output(inputs: Inputs, v: &Rational) -> Output {
    let s = rational::format(v);
    Output {
        inputs,
        json: serde_json::Value::String(s.clone()),
        text: s,
    }
}

fn solution_text(sol: &GASolution) -> String {
    let mut s = format!(
        "P = {}, k = {}{}\ncommon denominator (degree {}): {}\n",
        sol.p(),
        sol.k(),
        if sol.symmetric() { " (symmetric)" } else { "" },
        sol.common_den().degree().unwrap_or(0),
        sol.common_den()
    );
    for (a, f) in sol.gfs().iter().enumerate() {
        s.push_str(&format!("f[{a}] = {f}\n"));
    }
    s.push_str(&format!("distinct: {}", sol.distinct_count()));
    s
}

fn tale_text(t: &Tale) -> String {
    let mut s = format!("{}\n", t.label);
    s.push_str(&format!("P = {}", t.p));
    if let (Some(k), Some(a)) = (t.k, t.a) {
        s.push_str(&format!(", k = {k}, a = {a}"));
    }
    s.push('\n');
    let last_ok = t.first_failure_n - 1;
    s.push_str(&format!(
        "agrees for {} <= n <= {} ({} values)\n",
        t.first_index, last_ok, t.prefix_len
    ));
    s.push_str(&format!(
        "first failure at n = {}: law gives {}, truth is {}\n",
        t.first_failure_n,
        rational::format(&t.expected),
        rational::format(&t.actual)
    ));
    s.push_str(&format!(
        "candidate: order {}, s(n) = {}",
        t.candidate.order(),
        recurrence_rhs(t.candidate.rec_coeffs())
    ));
    s
}

fn recurrence_rhs(d: &[Rational]) -> String {
    if d.is_empty() {
        return "0".into();
    }
    d.iter()
        .enumerate()
        .map(|(j, c)| format!("({})*s(n-{})", rational::format(c), j + 1))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn george_text(r: &GeorgeReport) -> String {
    let yes = |b: bool| if b { "yes" } else { "NO" };
    let mut s = String::new();
    s.push_str(&format!(
        "rewriting identity C(n+2,0) = C(n+1,-1) + C(n+1,0) + C(n+1,1), 0 <= n <= {}: {}\n",
        r.rewriting_checked_upto,
        yes(r.rewriting_holds)
    ));
    s.push_str(&format!("only j = 0 summands for n < {}", r.only_j0_below));
    if let Some((n, j, c)) = &r.first_outer_summand {
        s.push_str(&format!(" (first other: n = {n}, j = {j}, value {c})"));
    }
    s.push('\n');
    s.push_str(&format!(
        "direct check 0 <= n <= {}: {}\n",
        r.window_terms - 1,
        yes(r.window_agrees)
    ));
    s.push_str(&format!(
        "rigorous check: orders {} and {}, proof window {} terms, checked {}: {}",
        r.left.order(),
        r.right.order(),
        r.proof_window,
        r.checked_terms,
        if r.rigorous_equal { "equal" } else { "DIFFERENT" }
    ));
    s
}

fn tale_search_output(inputs: Inputs, search: TaleSearch) -> Output {
    let outcome = match &search {
        TaleSearch::Found(_) => "found",
        TaleSearch::NoCandidate => "no-candidate",
        TaleSearch::Theorem(_) => "theorem",
        TaleSearch::EarlyFailure { .. } => "early-failure",
        TaleSearch::SurvivesHorizon(_) => "survives-horizon",
    };
    let detail = search.describe();
    let (tale_json, text) = match &search {
        TaleSearch::Found(t) => (to_json(t.as_ref()), tale_text(t)),
        _ => (serde_json::Value::String("none".into()), detail.clone()),
    };
    #[derive(Serialize)]
    struct Payload {
        outcome: &'static str,
        detail: String,
        tale: serde_json::Value,
        note: &'static str,
    }
    Output {
        inputs,
        json: to_json(&Payload {
            outcome,
            detail,
            tale: tale_json,
            note: "fit window, order cap floor(fit_window/2)-1 and the fit_window+2 survival threshold are this tool's search choices",
        }),
        text,
    }
}

fn dice_output(die: DieSpec, k: usize, n: Option<u64>) -> Result<Output, CliError> {
    let sol = dice::modular_prob_gf(&die, k).map_err(|e| match e {
        DiceError::Ga(g) => CliError::from(g),
        other => CliError::Domain(format!("-k: {other}")),
    })?;
    #[derive(Serialize)]
    struct Payload {
        gf: GASolution,
        #[serde(skip_serializing_if = "Option::is_none")]
        residue_probs: Option<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        break_even: Option<String>,
    }
    let mut text = solution_text(&sol);
    let (probs, even) = match n {
        Some(n) => {
            let probs: Vec<Rational> = (0..k).map(|a| sol.series(a, n as usize).pop().unwrap()).collect();
            let even = dice::break_even_prob(&die, n);
            text.push_str(&format!(
                "\nafter n = {n} throws: P(total = a mod {k}) = [{}]\nP(break even) = {}",
                format_all(&probs).join(", "),
                rational::format(&even)
            ));
            (Some(format_all(&probs)), Some(rational::format(&even)))
        }
        None => (None, None),
    };
    Ok(Output {
        inputs: Inputs {
            k: Some(k),
            n,
            die: Some(die),
            ..Default::default()
        },
        json: to_json(&Payload {
            gf: sol,
            residue_probs: probs,
            break_even: even,
        }),
        text,
    })
}
