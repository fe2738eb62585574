//! `murank` command-line tool.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 mu invariant
//! violation, 3 classifier/factorization inconsistency, 4 I/O error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use murank::factor::classify_and_factor;
use murank::oracle::{differential_suite, InstanceSpec, SuiteOptions};
use murank::parser::parse_terms;
use murank::prelude::*;
use murank::rankcore::all_d_values;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "murank", version, about = "mu-rank of noncommutative quadratic forms on 3 or 4 generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a form by mu-rank and cross-check against the factor search.
    Classify(FormArgs),
    /// Factor a form as a square or a product of two linear forms.
    Factor(FormArgs),
    /// Print the determinant table D1..D27 (four generators) or D1..D8 (three).
    Minors(FormArgs),
    /// Multiply two linear forms in the skew ring.
    Expand(ExpandArgs),
    /// Check that factors expand to a form.
    Verify(VerifyArgs),
    /// Run the randomized differential suite.
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Complex,
}

#[derive(Args)]
struct Common {
    /// Number of generators. Inferred from the form when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Multipliers: "mu12=2, mu13=1/3" or a JSON matrix. Defaults to all ones.
    #[arg(long)]
    mu: Option<String>,
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
    /// Zero-test tolerance for the complex backend.
    #[arg(long)]
    tol: Option<f64>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FormArgs {
    #[command(flatten)]
    common: Common,
    /// The form, e.g. "z1^2 + 4z1*z2". Use "-" to read stdin.
    #[arg(long)]
    form: Option<String>,
    /// JSON file with "form" and optionally "n", "mu", "factorization".
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    common: Common,
    /// Left and right linear factors, e.g. "z1 + z2" "z1 - 2z3".
    #[arg(num_args = 2, required = true)]
    factors: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    form: FormArgs,
    /// One factor (square) or two (product). Defaults to the file's
    /// "factorization".
    #[arg(num_args = 0..=2)]
    factors: Vec<String>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long)]
    tol: Option<f64>,
    /// Also run the exhaustive grid search (exact backend only).
    #[arg(long)]
    grid_oracle: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Mu(String),
    Inconsistent(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Mu(_) => 2,
            Failure::Inconsistent(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Mu(m) | Failure::Inconsistent(m) | Failure::Io(m) => m,
        }
    }
}

impl From<murank::Error> for Failure {
    fn from(e: murank::Error) -> Self {
        match e {
            murank::Error::MuInvariant(_) => Failure::Mu(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Invalid(format!("invalid JSON: {e}"))
    }
}

type CliResult<T> = Result<T, Failure>;

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

trait Backendish: Scalar + Serialize + DeserializeOwned {}
impl<S: Scalar + Serialize + DeserializeOwned> Backendish for S {}

struct Inputs<S> {
    mu: MuParams<S>,
    q: QuadraticForm<S>,
    factorization: Option<Value>,
}

fn read_stdin() -> CliResult<String> {
    let mut s = String::new();
    io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
    Ok(s)
}

fn infer_n(text: &str) -> CliResult<usize> {
    let terms = parse_terms(text).map_err(murank::Error::from)?;
    terms
        .iter()
        .flat_map(|t| t.word.iter().copied())
        .max()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Invalid("cannot infer the number of generators; pass --n".into()))
}

fn parse_mu_value<S: Backendish>(v: &Value, n: usize) -> CliResult<MuParams<S>> {
    match v {
        Value::String(s) => Ok(parse_mu(s, n)?),
        other => Ok(parse_mu(&other.to_string(), n)?),
    }
}

fn with_tol<S: Backendish>(mu: MuParams<S>, q: QuadraticForm<S>, tol: Option<f64>) -> (MuParams<S>, QuadraticForm<S>) {
    match tol {
        Some(t) => (mu.map(|c| c.clone().with_tol(t)), q.map(|c| c.clone().with_tol(t))),
        None => (mu, q),
    }
}

fn check_tol(common: &Common) -> CliResult<()> {
    if common.tol.is_some() && common.backend == Backend::Exact {
        return Err(Failure::Invalid("--tol only applies to --backend complex".into()));
    }
    Ok(())
}

fn load<S: Backendish>(args: &FormArgs) -> CliResult<Inputs<S>> {
    let file: Value = match &args.file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)?
        }
        None => Value::Null,
    };
    let form_text = match args.form.as_deref() {
        Some("-") => Some(read_stdin()?),
        Some(t) => Some(t.to_string()),
        None => match file.get("form") {
            Some(Value::String(s)) => Some(s.clone()),
            _ => None,
        },
    };
    let form_obj = if form_text.is_none() { file.get("form").cloned() } else { None };
    let n = match (args.common.n, file.get("n").and_then(Value::as_u64), &form_text, &form_obj) {
        (Some(n), ..) => n,
        (None, Some(n), ..) => n as usize,
        (None, None, Some(t), _) => infer_n(t)?,
        (None, None, None, Some(obj)) => obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Failure::Invalid("form object has no \"n\"".into()))? as usize,
        (None, None, None, None) => return Err(Failure::Invalid("no form given; use --form or --file".into())),
    };
    let mu: MuParams<S> = match (&args.common.mu, file.get("mu")) {
        (Some(text), _) => parse_mu(text, n)?,
        (None, Some(v)) => parse_mu_value(v, n)?,
        (None, None) => parse_mu("", n)?,
    };
    let q = match (form_text, form_obj) {
        (Some(t), _) => parse_form(&t, n, &mu)?,
        (None, Some(obj)) => {
            let q: QuadraticForm<S> = serde_json::from_value(obj)?;
            if q.n() != n {
                return Err(Failure::Invalid(format!("form has {} generators, expected {n}", q.n())));
            }
            q
        }
        (None, None) => return Err(Failure::Invalid("no form given; use --form or --file".into())),
    };
    let (mu, q) = with_tol(mu, q, args.common.tol);
    Ok(Inputs {
        mu,
        q,
        factorization: file.get("factorization").cloned(),
    })
}

fn push_json<T: Serialize>(out: &mut String, v: &T) -> CliResult<()> {
    out.push_str(&serde_json::to_string_pretty(v)?);
    out.push('\n');
    Ok(())
}

fn classify<S: Backendish>(args: &FormArgs, out: &mut String) -> CliResult<()> {
    let Inputs { mu, q, .. } = load::<S>(args)?;
    let check = classify_and_factor(&q, &mu)?;
    if args.common.json {
        push_json(out, &json!({
            "n": q.n(),
            "mu": mu,
            "form": q,
            "report": check.report,
            "factorization": check.factorization,
            "inconsistency": check.inconsistency,
        }))?;
    } else {
        outln!(out, "mu-rank: {}", check.report.rank);
        if let Some(s) = check.report.witness_signs {
            outln!(out, "root signs: {s}");
        }
        if let Some(f) = &check.factorization {
            outln!(out, "factorization: {f}");
        }
    }
    match check.inconsistency {
        Some(msg) => Err(Failure::Inconsistent(msg)),
        None => Ok(()),
    }
}

fn factor<S: Backendish>(args: &FormArgs, out: &mut String) -> CliResult<()> {
    let Inputs { mu, q, .. } = load::<S>(args)?;
    let check = classify_and_factor(&q, &mu)?;
    if args.common.json {
        push_json(out, &json!({
            "n": q.n(),
            "mu": mu,
            "form": q,
            "factorization": check.factorization,
        }))?;
    } else {
        match &check.factorization {
            Some(f) => outln!(out, "{f}"),
            None => outln!(out, "none"),
        }
    }
    match check.inconsistency {
        Some(msg) => Err(Failure::Inconsistent(msg)),
        None => Ok(()),
    }
}

fn minors<S: Backendish>(args: &FormArgs, out: &mut String) -> CliResult<()> {
    let Inputs { mu, q, .. } = load::<S>(args)?;
    let d = all_d_values(&q, &mu)?;
    if args.common.json {
        #[derive(Serialize)]
        struct Table<'a, S> {
            n: usize,
            d: &'a std::collections::BTreeMap<usize, S>,
        }
        push_json(out, &Table { n: q.n(), d: &d })?;
    } else {
        for (k, v) in &d {
            outln!(out, "D{k} = {v}");
        }
    }
    Ok(())
}

fn expand<S: Backendish>(args: &ExpandArgs, out: &mut String) -> CliResult<()> {
    check_tol(&args.common)?;
    let n = match args.common.n {
        Some(n) => n,
        None => args.factors.iter().map(|f| infer_n(f)).collect::<CliResult<Vec<_>>>()?.into_iter().max().unwrap_or(0),
    };
    let mu: MuParams<S> = parse_mu(args.common.mu.as_deref().unwrap_or(""), n)?;
    let l1: LinearForm<S> = parse_linear(&args.factors[0], n)?;
    let l2: LinearForm<S> = parse_linear(&args.factors[1], n)?;
    let q = multiply_linear(&l1, &l2, &mu)?;
    if args.common.json {
        push_json(out, &json!({ "n": n, "mu": mu, "form": q, "text": q.to_string() }))?;
    } else {
        outln!(out, "{q}");
    }
    Ok(())
}

fn verify<S: Backendish>(args: &VerifyArgs, out: &mut String) -> CliResult<()> {
    let Inputs { mu, q, factorization } = load::<S>(&args.form)?;
    let n = q.n();
    let f: Factorization<S> = match (&args.factors[..], factorization) {
        ([l], _) => Factorization {
            kind: FactorKind::Square,
            prefactor: S::one(),
            factors: vec![parse_linear(l, n)?],
            provenance: "given".into(),
            signs: None,
            verified: false,
        },
        ([l1, l2], _) => Factorization {
            kind: FactorKind::Product,
            prefactor: S::one(),
            factors: vec![parse_linear(l1, n)?, parse_linear(l2, n)?],
            provenance: "given".into(),
            signs: None,
            verified: false,
        },
        (_, Some(Value::Null)) | (_, None) => {
            return Err(Failure::Invalid("no factorization to verify".into()))
        }
        (_, Some(v)) => serde_json::from_value(v)?,
    };
    let ok = verify_factorization(&q, &f, &mu);
    if args.form.common.json {
        push_json(out, &json!({ "verified": ok }))?;
    } else {
        outln!(out, "{ok}");
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Invalid("factorization does not expand to the form".into()))
    }
}

fn fuzz(args: &FuzzArgs, out: &mut String) -> CliResult<()> {
    if args.tol.is_some() && args.backend == Backend::Exact {
        return Err(Failure::Invalid("--tol only applies to --backend complex".into()));
    }
    let spec = match args.backend {
        Backend::Exact => InstanceSpec::grid(args.n, args.seed),
        Backend::Complex => InstanceSpec::complex(args.n, args.seed),
    };
    let opts = SuiteOptions {
        grid_oracle: args.grid_oracle,
        tol: args.tol,
        ..SuiteOptions::default()
    };
    let report = differential_suite(args.trials, &spec, &opts)?;
    if args.json {
        push_json(out, &report)?;
    } else {
        outln!(out, "trials: {} (n = {}, seed = {})", report.trials, report.n, report.seed);
        for (k, v) in &report.counts {
            outln!(out, "  {k}: {v}");
        }
        outln!(out, "backend comparisons: {}", report.backend_comparisons);
        if args.grid_oracle {
            outln!(out, "grid oracle factorizations: {}", report.grid_found);
        }
        outln!(out, "findings: {}", report.findings.len());
        for f in &report.findings {
            outln!(out, "  trial {} [{}] {}: {}", f.trial, f.category, f.form, f.detail);
        }
    }
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Inconsistent(format!("{} findings", report.findings.len())))
    }
}

fn form_command<S: Backendish>(cmd: &Command, out: &mut String) -> CliResult<()> {
    match cmd {
        Command::Classify(a) => classify::<S>(a, out),
        Command::Factor(a) => factor::<S>(a, out),
        Command::Minors(a) => minors::<S>(a, out),
        Command::Expand(a) => expand::<S>(a, out),
        Command::Verify(a) => verify::<S>(a, out),
        Command::Fuzz(a) => fuzz(a, out),
    }
}

fn run(cli: &Cli, out: &mut String) -> CliResult<()> {
    let common = match &cli.command {
        Command::Classify(a) | Command::Factor(a) | Command::Minors(a) => &a.common,
        Command::Verify(a) => &a.form.common,
        Command::Expand(a) => &a.common,
        Command::Fuzz(a) => return fuzz(a, out),
    };
    check_tol(common)?;
    match common.backend {
        Backend::Exact => form_command::<QuadExt>(&cli.command, out),
        Backend::Complex => form_command::<ComplexF>(&cli.command, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(4);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
