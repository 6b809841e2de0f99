//! Subcommand implementations for the `tribquat` binary.
//!
//! Every command produces an [`OutputDoc`] plus an exit code; `main.rs` only
//! parses flags and prints.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use tribquat::binet::{self, Tolerance};
use tribquat::identities::{self, NumericTolerance, VerifyConfig, IDENTITY_GROUPS};
use tribquat::matrixrep::{corollary_decomposition, qs_product_theorem, s_matrix, s_power_closed};
use tribquat::ring::{format_rational, parse_rational, rational_to_f64};
use tribquat::sequences::{SeqKind, Term};
use tribquat::series::{gf_shifted, gf_trib, gf_trib_lucas, gf_trib_lucas_quat, gf_trib_quat};
use tribquat::{Error, QuatKind, Sequences};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "tribquat", version, about = "Tribonacci quaternion polynomials: generate, expand, verify")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Relative tolerance for numeric comparisons
    #[arg(long, default_value_t = 1e-8, global = true)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a range of T, t, QT or Qt terms
    Gen(GenArgs),
    /// Check identities and report pass/fail
    Verify(VerifyArgs),
    /// Expand a generating function to a given order
    Series(SeriesArgs),
    /// Characteristic roots and Binet values against exact terms
    Binet(BinetArgs),
    /// Powers of S(x) and the Q_S(x) product identity
    Matrix(MatrixArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// One of T, t, QT, Qt
    pub kind: SeqKind,
    #[arg(allow_negative_numbers = true)]
    pub lo: i64,
    #[arg(allow_negative_numbers = true)]
    pub hi: i64,
    /// Evaluate at an exact rational point ("p/q" or decimal)
    #[arg(long, allow_negative_numbers = true)]
    pub at: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identity group, or "all"
    #[arg(long, default_value = "all")]
    pub identity: String,
    #[arg(long, default_value_t = 20)]
    pub n_max: i64,
    /// Comma-separated positive x values for the numeric checks; empty for none
    #[arg(long, default_value = "0.5,1,2")]
    pub x_grid: String,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    /// One of T, t, QT, Qt
    #[arg(long)]
    pub gf: SeqKind,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
    /// Expand the shifted series starting at index m (quaternion kinds, m >= 2)
    #[arg(long)]
    pub shift: Option<i64>,
}

#[derive(Args, Debug)]
pub struct BinetArgs {
    /// Positive parameter x ("p/q" or decimal)
    #[arg(long, allow_negative_numbers = true)]
    pub x: String,
    /// Table runs over 0..=n
    #[arg(long, default_value_t = 10)]
    pub n: u32,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[arg(long, default_value_t = 5)]
    pub n: u64,
}

/// Envelope for every emission.
#[derive(Debug, Serialize)]
pub struct OutputDoc {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub payload: Value,
}

/// Result of one command: document, text rendering and exit code.
#[derive(Debug)]
pub struct Outcome {
    pub doc: OutputDoc,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(command: &'static str, payload: Value, text: String, passed: bool) -> Self {
        Outcome {
            doc: OutputDoc { schema_version: SCHEMA_VERSION, command, payload },
            text,
            code: if passed { EXIT_OK } else { EXIT_IDENTITY_FAILURE },
        }
    }

    pub fn error(command: &'static str, message: String) -> Self {
        let payload = json!({ "error": { "message": message } });
        Outcome {
            doc: OutputDoc { schema_version: SCHEMA_VERSION, command, payload },
            text: format!("error: {message}\n"),
            code: EXIT_USAGE,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string(&self.doc).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn run(cli: &Cli) -> Outcome {
    let seq = Sequences::standard();
    let (name, result) = match &cli.command {
        Command::Gen(a) => ("gen", cmd_gen(seq, a)),
        Command::Verify(a) => ("verify", cmd_verify(seq, a, cli.tol)),
        Command::Series(a) => ("series", cmd_series(seq, a)),
        Command::Binet(a) => ("binet", cmd_binet(seq, a, cli.tol)),
        Command::Matrix(a) => ("matrix", cmd_matrix(seq, a)),
    };
    result.unwrap_or_else(|e| Outcome::error(name, e.to_string()))
}

pub fn cmd_gen(seq: &Sequences, a: &GenArgs) -> Result<Outcome, Error> {
    let terms = seq.range(a.kind, a.lo, a.hi)?;
    let mut text = String::new();
    let payload = match &a.at {
        None => {
            for (n, t) in (a.lo..).zip(&terms) {
                let _ = match t {
                    Term::Poly(p) => writeln!(text, "{}[{n}] = {p}", a.kind.label()),
                    Term::Quat(q) => writeln!(text, "{}[{n}] = {q}", a.kind.label()),
                };
            }
            to_json(&terms)
        }
        Some(at) => {
            let x0 = parse_rational(at)?;
            let values: Vec<Value> = terms
                .iter()
                .map(|t| match t {
                    Term::Poly(p) => json!(format_rational(&p.eval_exact(&x0))),
                    Term::Quat(q) => to_json(&q.map(|p| format_rational(&p.eval_exact(&x0)))),
                })
                .collect();
            for (n, v) in (a.lo..).zip(&values) {
                let _ = writeln!(text, "{}[{n}]({at}) = {v}", a.kind.label());
            }
            Value::Array(values)
        }
    };
    Ok(Outcome::ok("gen", payload, text, true))
}

pub fn parse_grid(csv: &str) -> Result<Vec<f64>, Error> {
    csv.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let v = rational_to_f64(&parse_rational(s)?);
            if v > 0.0 {
                Ok(v)
            } else {
                Err(Error::InvalidParameter(v))
            }
        })
        .collect()
}

pub fn cmd_verify(seq: &Sequences, a: &VerifyArgs, tol: f64) -> Result<Outcome, Error> {
    let cfg = VerifyConfig {
        n_max: a.n_max.max(0),
        x_grid: parse_grid(&a.x_grid)?,
        tol: NumericTolerance {
            base: Tolerance { rel: tol, ..Tolerance::default() },
            ..NumericTolerance::default()
        },
        ..VerifyConfig::default()
    };
    let reports = if a.identity == "all" {
        identities::verify_all(seq, &cfg)
    } else {
        match identities::verify_group(seq, &a.identity, &cfg) {
            Some(r) => r,
            None => {
                return Ok(Outcome::error(
                    "verify",
                    format!("unknown identity {:?}; expected all or one of {}", a.identity, IDENTITY_GROUPS.join(", ")),
                ))
            }
        }
    };
    let passed = reports.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let _ = write!(text, "{status}  {:<20} [{}..={}]", r.identity_id, r.range_checked[0], r.range_checked[1]);
        if let Some(f) = &r.first_failure {
            let _ = write!(text, "  first failure at {}", f.index);
        }
        text.push('\n');
    }
    let payload = json!({
        "identity": a.identity,
        "n_max": cfg.n_max,
        "x_grid": cfg.x_grid,
        "passed": passed,
        "reports": reports,
    });
    Ok(Outcome::ok("verify", payload, text, passed))
}

pub fn cmd_series(seq: &Sequences, a: &SeriesArgs) -> Result<Outcome, Error> {
    let coefficients: Value = match (a.gf, a.shift) {
        (SeqKind::Trib, None) => to_json(&gf_trib(a.order)),
        (SeqKind::Lucas, None) => to_json(&gf_trib_lucas(a.order)),
        (SeqKind::TribQuat, None) => to_json(&gf_trib_quat(a.order)),
        (SeqKind::LucasQuat, None) => to_json(&gf_trib_lucas_quat(a.order)),
        (SeqKind::TribQuat, Some(m)) => to_json(&gf_shifted(seq, QuatKind::Trib, m, a.order)?),
        (SeqKind::LucasQuat, Some(m)) => to_json(&gf_shifted(seq, QuatKind::Lucas, m, a.order)?),
        (_, Some(_)) => {
            return Ok(Outcome::error("series", "--shift applies to QT and Qt only".into()));
        }
    };
    let mut text = String::new();
    if let Value::Array(items) = &coefficients {
        for (m, c) in items.iter().enumerate() {
            let _ = writeln!(text, "y^{m}: {c}");
        }
    }
    let payload = json!({
        "gf": a.gf.label(),
        "order": a.order,
        "shift": a.shift,
        "coefficients": coefficients,
    });
    Ok(Outcome::ok("series", payload, text, true))
}

fn pair(c: Complex64) -> Value {
    json!([c.re, c.im])
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

pub fn cmd_binet(seq: &Sequences, a: &BinetArgs, tol: f64) -> Result<Outcome, Error> {
    let x_exact = parse_rational(&a.x)?;
    let x0 = rational_to_f64(&x_exact);
    let roots = binet::solve_cubic(x0, 1e-10)?;
    let check = Tolerance { rel: tol, ..Tolerance::default() };
    let z = Complex64::new(x0, 0.0);
    let mut rows = Vec::new();
    let mut text = format!(
        "x = {}\nalpha  = {:.15}\nomega1 = {:.15} {:+.15}i\nomega2 = {:.15} {:+.15}i\n\n{:>4} {:>24} {:>24} {:>24} {:>24}\n",
        a.x, roots.alpha.re, roots.omega1.re, roots.omega1.im, roots.omega2.re, roots.omega2.im,
        "n", "T exact", "T binet", "t exact", "t binet"
    );
    let mut all_agree = true;
    for n in 0..=a.n {
        let ni = n as i64;
        let t_exact = seq.trib_poly(ni)?.eval_exact(&x_exact);
        let l_exact = seq.trib_lucas_poly(ni)?.eval_exact(&x_exact);
        let t_b = binet::binet_trib(n, &roots)?;
        let l_b = binet::binet_trib_lucas(n, &roots)?;
        let t_f = Complex64::new(rational_to_f64(&t_exact), 0.0);
        let l_f = Complex64::new(rational_to_f64(&l_exact), 0.0);
        let qt = binet::binet_quat(QuatKind::Trib, n, &roots)?;
        let ql = binet::binet_quat(QuatKind::Lucas, n, &roots)?;
        let qt_exact = seq.trib_quat(ni)?.eval(z);
        let ql_exact = seq.trib_lucas_quat(ni)?.eval(z);
        let agree = check.close(t_f, t_b)
            && check.close(l_f, l_b)
            && check.close_quat(&qt, &qt_exact)
            && check.close_quat(&ql, &ql_exact);
        all_agree &= agree;
        let _ = writeln!(
            text,
            "{n:>4} {:>24} {:>24.12} {:>24} {:>24.12}{}",
            format_rational(&t_exact),
            t_b.re,
            format_rational(&l_exact),
            l_b.re,
            if agree { "" } else { "  MISMATCH" }
        );
        rows.push(json!({
            "n": n,
            "T_exact": format_rational(&t_exact),
            "T_binet": pair(t_b),
            "T_rel_err": rel_err(t_f, t_b),
            "t_exact": format_rational(&l_exact),
            "t_binet": pair(l_b),
            "t_rel_err": rel_err(l_f, l_b),
            "QT_binet": to_json(&qt),
            "QT_max_err": qt.max_dist(&qt_exact),
            "Qt_binet": to_json(&ql),
            "Qt_max_err": ql.max_dist(&ql_exact),
            "agree": agree,
        }));
    }
    let payload = json!({
        "x": a.x,
        "roots": {
            "alpha": pair(roots.alpha),
            "omega1": pair(roots.omega1),
            "omega2": pair(roots.omega2),
            "sum_error": roots.sum_error(),
            "product_error": roots.product_error(),
        },
        "tol": tol,
        "rows": rows,
        "agree": all_agree,
    });
    Ok(Outcome::ok("binet", payload, text, all_agree))
}

pub fn cmd_matrix(seq: &Sequences, a: &MatrixArgs) -> Result<Outcome, Error> {
    let power = s_matrix().pow(a.n);
    let closed_equal = if a.n >= 1 {
        Some(s_power_closed(seq, a.n as i64)? == power)
    } else {
        None
    };
    let (lhs, rhs) = qs_product_theorem(seq, a.n)?;
    let (direct, combo) = corollary_decomposition(seq, a.n as i64)?;
    let theorem_equal = lhs == rhs;
    let corollary_equal = direct == combo;
    let passed = closed_equal.unwrap_or(true) && theorem_equal && corollary_equal;
    let mut text = format!("S^{}(x):\n", a.n);
    for row in &power.entries {
        let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(text, "  [{}]", cells.join(", "));
    }
    let flag = |b: bool| if b { "equal" } else { "DIFFERENT" };
    if let Some(c) = closed_equal {
        let _ = writeln!(text, "closed form vs power: {}", flag(c));
    }
    let _ = writeln!(text, "Q_S * S^n vs shifted window: {}", flag(theorem_equal));
    let _ = writeln!(text, "corollary decomposition: {}", flag(corollary_equal));
    let payload = json!({
        "n": a.n,
        "s_power": to_json(&power),
        "closed_form_equal": closed_equal,
        "theorem": {
            "lhs": to_json(&lhs),
            "rhs": to_json(&rhs),
            "equal": theorem_equal,
        },
        "corollary_equal": corollary_equal,
    });
    Ok(Outcome::ok("matrix", payload, text, passed))
}
