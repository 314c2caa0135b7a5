//! Command-line surface: argument parsing and verb dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hv_twist_core::scalar::{parse_rational, to_pq};
use hv_twist_core::verifier::{check_ids, Report, Verifier};
use hv_twist_core::{Algebra, AlgebraError, AlgebraMode, Element, QParams, Quantizer, Scalar};
use serde_json::json;
use thiserror::Error;

use crate::output::{combination_json, series_json};
use crate::parser::{parse, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hv-twist",
    version,
    about = "Exact twisted Hopf structure on U(centerless generalized Heisenberg-Virasoro)[[t]]"
)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Run identity checks and report pass/fail
    Check(Options),
    /// Evaluate an expression to PBW normal form
    Eval(Options),
    /// Twisted coproduct Δ of an expression, mod t^(N+1)
    Coproduct(Options),
    /// Twisted antipode S of an expression, mod t^(N+1)
    Antipode(Options),
    /// The twist 𝓕, or 𝓕Δ₀(x)F by direct conjugation when --expr is given
    Twist(Options),
    /// Read commands from stdin, one per line
    Repl(Options),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Debug)]
pub struct Options {
    /// Grading element α of e = I(α), h = α⁻¹L(0)
    #[arg(long, default_value = "1", value_parser = scalar_arg, allow_hyphen_values = true)]
    pub alpha: Scalar,
    /// Truncation order N: series are computed mod t^(N+1)
    #[arg(long, default_value_t = 5)]
    pub order: usize,
    #[arg(long, default_value = "centerless", value_parser = mode_arg)]
    pub mode: AlgebraMode,
    /// Check id, or `all`
    #[arg(long, default_value = "all")]
    pub check: String,
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Comma-separated β grid for the checks
    #[arg(long, value_delimiter = ',', value_parser = scalar_arg, allow_hyphen_values = true)]
    pub betas: Vec<Scalar>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn scalar_arg(s: &str) -> Result<Scalar, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn mode_arg(s: &str) -> Result<AlgebraMode, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Rendered command output and the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

/// Parses `args` (program name first), executes, and writes the result.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let opts = cli.verb.options().clone();
    let result = match &cli.verb {
        Verb::Repl(opts) => repl(opts, stdin, stdout).map(|()| None),
        verb => execute(verb).map(Some),
    };
    match result {
        Ok(None) => EXIT_OK,
        Ok(Some(out)) => match emit(&opts, &out.text, stdout) {
            Ok(()) => out.code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(opts: &Options, text: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match &opts.out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

impl Verb {
    pub fn options(&self) -> &Options {
        match self {
            Verb::Check(o)
            | Verb::Eval(o)
            | Verb::Coproduct(o)
            | Verb::Antipode(o)
            | Verb::Twist(o)
            | Verb::Repl(o) => o,
        }
    }
}

/// Runs a non-interactive verb.
pub fn execute(verb: &Verb) -> Result<Output, CliError> {
    match verb {
        Verb::Check(o) => check(o),
        Verb::Eval(o) => eval(o),
        Verb::Coproduct(o) => coproduct(o),
        Verb::Antipode(o) => antipode(o),
        Verb::Twist(o) => twist(o),
        Verb::Repl(_) => Err(CliError::Usage("repl reads from stdin".into())),
    }
}

fn params(o: &Options) -> Result<QParams, CliError> {
    Ok(QParams::with_mode(o.alpha.clone(), o.order, o.mode)?)
}

fn required_expr(o: &Options) -> Result<&str, CliError> {
    o.expr
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs --expr <expression>".into()))
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn json_text(v: serde_json::Value) -> String {
    with_newline(serde_json::to_string_pretty(&v).expect("json serializes"))
}

pub fn check(o: &Options) -> Result<Output, CliError> {
    let mut verifier = Verifier::new(params(o)?, o.seed);
    if !o.betas.is_empty() {
        verifier = verifier.with_betas(o.betas.clone());
    }
    let report = if o.check == "all" {
        verifier.run_all()
    } else {
        let ids: Vec<&str> = o.check.split(',').map(str::trim).collect();
        verifier.run(&ids).map_err(|e| match e {
            AlgebraError::UnknownCheck(id) => CliError::Usage(format!(
                "unknown check id `{id}`; known ids: all, {}",
                check_ids().join(", ")
            )),
            other => other.into(),
        })?
    };
    let text = match o.format {
        Format::Json => with_newline(report.to_json()),
        Format::Text => report_text(&report),
    };
    let code = if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Output { text, code })
}

fn report_text(report: &Report) -> String {
    let mut s = String::new();
    let width = report.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in &report.checks {
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{tag}  {:width$}  {}  ({} ms)", c.id, c.details, c.elapsed_ms);
        if let Some(cx) = &c.counterexample {
            let _ = writeln!(s, "      lhs: {}", cx.lhs);
            let _ = writeln!(s, "      rhs: {}", cx.rhs);
        }
    }
    let cfg = &report.config;
    let _ = writeln!(
        s,
        "{}/{} checks passed (alpha = {}, order = {}, mode = {}, seed = {})",
        report.summary.passed, report.summary.total, cfg.alpha, cfg.order, cfg.mode, cfg.seed
    );
    s
}

pub fn eval(o: &Options) -> Result<Output, CliError> {
    let alg = Algebra::new(o.mode);
    let x = parse(required_expr(o)?, &alg, &o.alpha)?;
    Ok(Output::ok(render_element(o, &x)))
}

fn render_element(o: &Options, x: &Element) -> String {
    match o.format {
        Format::Text => with_newline(x.to_string()),
        Format::Json => json_text(json!({ "kind": "element", "terms": combination_json(x) })),
    }
}

fn quantizer(o: &Options) -> Result<Quantizer, CliError> {
    Ok(Quantizer::new(&params(o)?)?)
}

fn series_output<K: hv_twist_core::Basis>(o: &Options, kind: &str, s: &hv_twist_core::Series<K>) -> Output {
    Output::ok(match o.format {
        Format::Text => with_newline(s.to_string()),
        Format::Json => {
            let mut v = series_json(s);
            v["kind"] = json!(kind);
            v["alpha"] = json!(to_pq(&o.alpha));
            json_text(v)
        }
    })
}

pub fn coproduct(o: &Options) -> Result<Output, CliError> {
    let q = quantizer(o)?;
    let x = parse(required_expr(o)?, q.algebra(), &o.alpha)?;
    Ok(series_output(o, "tensor2_series", &q.hopf_extend_coproduct(&x)?))
}

pub fn antipode(o: &Options) -> Result<Output, CliError> {
    let q = quantizer(o)?;
    let x = parse(required_expr(o)?, q.algebra(), &o.alpha)?;
    Ok(series_output(o, "element_series", &q.hopf_extend_antipode(&x)?))
}

pub fn twist(o: &Options) -> Result<Output, CliError> {
    let q = quantizer(o)?;
    match &o.expr {
        None => Ok(series_output(o, "tensor2_series", &q.twist_fcal(&Scalar::from_integer(0.into())))),
        Some(src) => {
            let x = parse(src, q.algebra(), &o.alpha)?;
            Ok(series_output(o, "tensor2_series", &q.twisted_coproduct_direct(&x)?))
        }
    }
}

const REPL_HELP: &str = "\
commands:
  <expr>                 evaluate to PBW normal form
  coproduct <expr>       twisted coproduct
  antipode <expr>        twisted antipode
  twist [<expr>]         the twist, or direct conjugation of <expr>
  check <id|all>         run checks
  :alpha <q>  :order <n>  :mode <full|centerless>  :format <text|json>
  :help  :quit
";

/// Line-oriented session over `input`. Settings persist between lines; errors
/// are reported and the session continues.
pub fn repl(opts: &Options, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
    let mut o = opts.clone();
    o.out = None;
    let mut line = String::new();
    loop {
        line.clear();
        if input.read_line(&mut line)? == 0 {
            return Ok(());
        }
        let cmd = line.trim();
        if cmd.is_empty() {
            continue;
        }
        if cmd == ":quit" || cmd == ":q" {
            return Ok(());
        }
        match repl_line(&mut o, cmd) {
            Ok(text) => out.write_all(text.as_bytes())?,
            Err(e) => writeln!(out, "error: {e}")?,
        }
    }
}

fn repl_line(o: &mut Options, cmd: &str) -> Result<String, CliError> {
    let (head, rest) = match cmd.split_once(char::is_whitespace) {
        Some((h, r)) => (h, r.trim()),
        None => (cmd, ""),
    };
    let setting = |what: &str| CliError::Usage(format!("bad value for {what}: `{rest}`"));
    match head {
        ":help" => Ok(REPL_HELP.to_string()),
        ":alpha" => {
            let a = parse_rational(rest)?;
            // validates α ≠ 0 before committing
            QParams::with_mode(a.clone(), o.order, o.mode)?;
            o.alpha = a;
            Ok(String::new())
        }
        ":order" => {
            o.order = rest.parse().map_err(|_| setting(":order"))?;
            Ok(String::new())
        }
        ":mode" => {
            o.mode = rest.parse().map_err(|_| setting(":mode"))?;
            Ok(String::new())
        }
        ":format" => {
            o.format = Format::from_str(rest, true).map_err(|_| setting(":format"))?;
            Ok(String::new())
        }
        "coproduct" | "antipode" | "twist" => {
            let mut o2 = o.clone();
            o2.expr = (!rest.is_empty()).then(|| rest.to_string());
            let out = match head {
                "coproduct" => coproduct(&o2),
                "antipode" => antipode(&o2),
                _ => twist(&o2),
            }?;
            Ok(out.text)
        }
        "check" => {
            let mut o2 = o.clone();
            o2.check = if rest.is_empty() { "all".into() } else { rest.to_string() };
            Ok(check(&o2)?.text)
        }
        _ => {
            let mut o2 = o.clone();
            o2.expr = Some(cmd.to_string());
            Ok(eval(&o2)?.text)
        }
    }
}
