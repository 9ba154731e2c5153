//! Command-line front end: `eval` tabulates an operator chain applied to a
//! function, `selftest` runs the seeded self-checks.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 domain or unsupported
//! error, 3 if any point failed to converge. A failing selftest exits 1.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::error::Error;
use crate::function::{parse_function, LowerLimit};
use crate::lexer::format_f64;
use crate::operator::{apply, EvalResult, Method, Operand, OperatorExpr, Status};
use crate::quadrature::QuadConfig;
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
/// `selftest` with at least one failing (or no matching) check.
pub const EXIT_CHECK_FAILED: i32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "fracops",
    version,
    about = "Complex-order fractional integrals and derivatives"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an operator chain applied to a function on a set of points.
    Eval(EvalArgs),
    /// Run the seeded self-checks and print a pass/fail table.
    Selftest(SelftestArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Numeric,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args, Debug)]
#[command(group(clap::ArgGroup::new("points").required(true).args(["at", "grid"])))]
struct EvalArgs {
    /// Operator chain, e.g. "D^(0.5).J^(1+1i)" (applied right to left).
    #[arg(long)]
    op: String,
    /// Function, e.g. "x^(1+1i) - 2*x^0.5" or "exp(x)".
    #[arg(long = "fn")]
    function: String,
    /// Lower limit: a float or -inf. Defaults to 0 for power sums and -inf
    /// for exp(x).
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// Evaluation point; may be repeated.
    #[arg(long, allow_negative_numbers = true)]
    at: Vec<f64>,
    /// Evenly spaced points a:b:n, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// Starting Chebyshev degree of the quadrature.
    #[arg(long)]
    degree: Option<usize>,
    /// Relative tolerance between successive quadrature estimates.
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accepted for symmetry with selftest; evaluation is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(clap::Args, Debug)]
struct SelftestArgs {
    /// Run only checks whose name contains this text.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Runs the command line `argv` (including the program name) and returns
/// the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Eval(args) => eval(args),
        Command::Selftest(args) => run_selftest(args),
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Convergence { .. } => EXIT_CONVERGENCE,
        _ => EXIT_DOMAIN,
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    error_code(e)
}

/// `a:b:n`, n >= 1 points from a to b inclusive.
fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid '{text}' must look like a:b:n"));
    }
    let a: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad grid start '{}'", parts[0]))?;
    let b: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad grid end '{}'", parts[1]))?;
    let n: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("bad grid count '{}'", parts[2]))?;
    if n == 0 {
        return Err("grid count must be at least 1".into());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let step = (b - a) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
        .collect())
}

fn eval(args: EvalArgs) -> i32 {
    let mut f = match parse_function(&args.function) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    if let Some(text) = &args.x0 {
        let x0 = match LowerLimit::parse(text) {
            Ok(x0) => x0,
            Err(e) => return fail(&e),
        };
        f = match f.with_lower_limit(x0) {
            Ok(f) => f,
            Err(e) => return fail(&e),
        };
    }
    let op = match OperatorExpr::parse(&args.op, f.lower_limit()) {
        Ok(op) => op,
        Err(e) => return fail(&e),
    };
    let mut xs = args.at.clone();
    if let Some(grid) = &args.grid {
        match parse_grid(grid) {
            Ok(g) => xs.extend(g),
            Err(msg) => {
                eprintln!("error: {msg}");
                return EXIT_PARSE;
            }
        }
    }
    let mut cfg = QuadConfig::default();
    if let Some(d) = args.degree {
        cfg.degree = d;
        cfg.max_degree = cfg.max_degree.max(d);
    }
    if let Some(t) = args.rel_tol {
        cfg.rel_tol = t;
    }
    if let Err(e) = cfg.validate() {
        return fail(&e);
    }
    let method = match args.method {
        MethodArg::Closed => Method::Closed,
        MethodArg::Numeric => Method::Numeric,
        MethodArg::Both => Method::Both,
    };

    let rows = apply(&op, &Operand::Causal(f), &xs, method, &cfg);
    for r in &rows {
        if let Some(m) = &r.message {
            eprintln!("x = {}: {m}", format_f64(r.x));
        }
    }
    let text = match args.format {
        Format::Csv => render_csv(&rows, method),
        Format::Json => render_json(&rows, method),
    };
    if let Err(e) = write_output(&text, args.out.as_deref()) {
        eprintln!("error: {e}");
        return EXIT_DOMAIN;
    }
    exit_code(&rows)
}

fn exit_code(rows: &[EvalResult]) -> i32 {
    if rows.iter().any(|r| r.status == Status::ConvergenceError) {
        EXIT_CONVERGENCE
    } else if rows.iter().any(|r| r.status != Status::Ok) {
        EXIT_DOMAIN
    } else {
        EXIT_OK
    }
}

fn write_output(text: &str, out: Option<&std::path::Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// Column names and values of one row; `None` marks a missing value.
fn columns(r: &EvalResult, method: Method) -> Vec<(&'static str, Option<Value>)> {
    let num = |v: f64| Some(Value::from(v));
    let mut cols = vec![
        ("x", num(r.x)),
        ("re", r.value.and_then(|v| num(v.re))),
        ("im", r.value.and_then(|v| num(v.im))),
    ];
    if method == Method::Both {
        cols.extend([
            ("ref_re", r.reference.and_then(|v| num(v.re))),
            ("ref_im", r.reference.and_then(|v| num(v.im))),
            ("abs_err", r.abs_err.and_then(num)),
            ("rel_err", r.rel_err.and_then(num)),
            ("status", Some(Value::from(r.status.to_string()))),
        ]);
    }
    cols
}

fn csv_field(v: &Option<Value>) -> String {
    match v {
        Some(Value::Number(n)) => format_f64(n.as_f64().unwrap_or(f64::NAN)),
        Some(Value::String(s)) => s.clone(),
        _ => String::new(),
    }
}

fn render_csv(rows: &[EvalResult], method: Method) -> String {
    let header: Vec<&str> = match rows.first() {
        Some(r) => columns(r, method).into_iter().map(|(k, _)| k).collect(),
        None => columns(&placeholder(), method)
            .into_iter()
            .map(|(k, _)| k)
            .collect(),
    };
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        let fields: Vec<String> = columns(r, method)
            .iter()
            .map(|(_, v)| csv_field(v))
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn render_json(rows: &[EvalResult], method: Method) -> String {
    let array: Vec<Value> = rows
        .iter()
        .map(|r| {
            let obj: Map<String, Value> = columns(r, method)
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.unwrap_or(Value::Null)))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let mut text =
        serde_json::to_string_pretty(&Value::Array(array)).expect("plain values serialize");
    text.push('\n');
    text
}

fn placeholder() -> EvalResult {
    EvalResult {
        x: 0.0,
        value: None,
        reference: None,
        abs_err: None,
        rel_err: None,
        status: Status::Ok,
        message: None,
    }
}

fn run_selftest(args: SelftestArgs) -> i32 {
    let reports = selftest::run(args.filter.as_deref(), args.seed);
    print!("{}", selftest::render_table(&reports));
    if !reports.is_empty() && reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0.5:2:4").unwrap(), vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("1:5:1").unwrap(), vec![1.0]);
        assert!(parse_grid("1:5").is_err());
        assert!(parse_grid("1:5:0").is_err());
        assert!(parse_grid("a:5:3").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        let argv = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
        assert_eq!(
            run(argv("fracops eval --op J^(1) --fn x --bogus 1 --at 1")),
            EXIT_PARSE
        );
        assert_eq!(run(argv("fracops eval --op J^(1) --fn x")), EXIT_PARSE);
        assert_eq!(
            run(argv("fracops eval --op K^(1) --fn x --at 1")),
            EXIT_PARSE
        );
        assert_eq!(run(argv("fracops --help")), EXIT_OK);
    }
}
