//! mbasym: evaluate Mathieu–Bessel series, regenerate the error tables and
//! run the self-checks.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mbasym_core::tables::{self, TableId};
use mbasym_core::verify::{self, Suite};
use mbasym_core::{
    alternating_expansion, direct_sum_with, theorem1_series, theorem2_series, theorem3_expsmall, y_series_expansion,
    Error, ExpansionReport, OracleConfig, Params, PrecisionCtx, Real, Regime, SeriesKind, Truncation,
};

#[derive(Parser)]
#[command(name = "mbasym", version, about = "Mathieu-Bessel series: direct sums and large-a expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one series by direct summation or an expansion.
    Eval(EvalArgs),
    /// Regenerate one of the error tables.
    Table(TableArgs),
    /// Run a self-check suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Working precision in decimal digits (at least 20).
    #[arg(long, env = "MBASYM_DIGITS")]
    digits: Option<u32>,
    /// key=value file with digits, oracle_cap, kappa_safety.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    J,
    Alt,
    Y,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Thm1,
    Thm2,
    Thm3,
    Auto,
}

#[derive(Args)]
struct EvalArgs {
    /// Parameters; decimals or fractions such as 1/3.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, value_enum, default_value = "j")]
    kind: Kind,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    /// Absolute tolerance of the direct sum.
    #[arg(long, default_value = "1e-30")]
    tol: String,
    /// Number of expansion terms to keep; optimal truncation if absent.
    #[arg(long)]
    terms: Option<usize>,
    /// Print every term of the expansion.
    #[arg(long)]
    verbose: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Args)]
struct TableArgs {
    /// Table number: 1, 2 or 3.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    which: u32,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Residues,
    Coeffs,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[command(flatten)]
    common: Common,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_) | Error::Domain(_) | Error::IntegerNu(_) | Error::Strip(_) => 2,
            Error::Regime(_) | Error::Unimplemented(_) => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: 2, message }
}

struct Settings {
    ctx: PrecisionCtx,
    oracle: OracleConfig,
}

fn settings(common: &Common, default_digits: u32) -> Result<Settings, Failure> {
    let file = match &common.config {
        Some(path) => config::load(path).map_err(usage)?,
        None => config::FileConfig::default(),
    };
    let digits = common.digits.or(file.digits).unwrap_or(default_digits);
    let ctx = PrecisionCtx::new(digits).map_err(|e| usage(e.to_string()))?;
    let mut oracle = OracleConfig::default();
    if let Some(cap) = file.oracle_cap {
        oracle.cap = cap;
    }
    if let Some(k) = file.kappa_safety {
        oracle.kappa = k;
    }
    Ok(Settings { ctx, oracle })
}

fn sci(x: &Real) -> String {
    x.to_sci_string(20)
}

fn print_report(r: &ExpansionReport, method: &str, verbose: bool) {
    println!("method: {method}");
    println!("regime: {}", r.regime);
    println!("value: {}", sci(&r.approximation()));
    println!("leading: {}", sci(&r.leading));
    println!("series: {}", sci(&r.value));
    match r.last_retained_k() {
        Some(k) => println!("truncation: k = {k} ({} terms from k = {})", r.k_used, r.k_start),
        None => println!("truncation: no terms"),
    }
    println!("err_est: {}", r.err_est.to_sci_string(6));
    if verbose {
        for (i, t) in r.terms.iter().enumerate() {
            let mark = if i < r.k_used { ' ' } else { '*' };
            println!("  term {:>3}{mark} {}", r.k_start as usize + i, sci(t));
        }
    }
}

fn eval(args: &EvalArgs) -> Result<(), Failure> {
    let s = settings(&args.common, PrecisionCtx::DEFAULT_DIGITS)?;
    let bits = s.ctx.bits();
    let p = Params::parse(&args.a, &args.b, &args.gamma, &args.nu, &args.mu, bits)?;
    let kind = match args.kind {
        Kind::J => SeriesKind::JSeries,
        Kind::Alt => SeriesKind::AlternatingJ,
        Kind::Y => SeriesKind::YSeries,
    };
    p.check_kind(kind)?;
    let trunc = args.terms.map_or(Truncation::Optimal, Truncation::Terms);
    if args.method == Method::Direct {
        let tol = Real::parse(&args.tol, bits)?;
        let d = direct_sum_with(&p, kind, &tol, &s.oracle)?;
        println!("method: direct");
        println!("value: {}", sci(&d.value));
        println!("terms: {}", d.terms);
        println!("tail_bound: {}", d.tail_bound.to_sci_string(6));
        println!("tol: {}", d.tol.to_sci_string(6));
        return Ok(());
    }
    let (report, name) = match (kind, args.method) {
        (SeriesKind::AlternatingJ, Method::Thm2) | (SeriesKind::YSeries, Method::Thm2) => {
            return Err(Error::Regime("no double-pole expansion for this series kind".into()).into())
        }
        (SeriesKind::AlternatingJ, _) => (alternating_expansion(&p, trunc)?, "alternating"),
        (SeriesKind::YSeries, _) => (y_series_expansion(&p, trunc)?, "y-series"),
        (_, Method::Thm1) => (theorem1_series(&p, trunc)?, "thm1"),
        (_, Method::Thm2) => (theorem2_series(&p, trunc)?, "thm2"),
        (_, Method::Thm3) => (expsmall(&p, args.terms)?, "thm3"),
        (_, _) => match p.regime() {
            Regime::Generic => (theorem1_series(&p, trunc)?, "thm1"),
            Regime::DoublePole => (theorem2_series(&p, trunc)?, "thm2"),
            Regime::ExpSmall { .. } => (expsmall(&p, args.terms)?, "thm3"),
        },
    };
    print_report(&report, name, args.verbose);
    Ok(())
}

fn expsmall(p: &Params, terms: Option<usize>) -> Result<ExpansionReport, Error> {
    let j = terms.map_or(tables::J_MAX, |t| t as u32);
    theorem3_expsmall(p, j)
}

fn table(args: &TableArgs) -> Result<(), Failure> {
    let which = TableId::from_number(args.which)?;
    let s = settings(&args.common, which.default_digits())?;
    let rows = tables::compute_table(which, &s.ctx, &s.oracle)?;
    let out = match args.format {
        Format::Csv => tables::to_csv(&rows),
        Format::Md => tables::to_markdown(&rows),
    };
    print!("{out}");
    Ok(())
}

fn verify_cmd(args: &VerifyArgs) -> Result<(), Failure> {
    let s = settings(&args.common, PrecisionCtx::DEFAULT_DIGITS)?;
    let suite = match args.suite {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Residues => Suite::Residues,
        SuiteArg::Coeffs => Suite::Coeffs,
        SuiteArg::All => Suite::All,
    };
    let checks = verify::run(suite, &s.ctx)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    println!("{} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        return Err(Failure { code: 1, message: format!("{failed} checks failed") });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => eval(a),
        Command::Table(a) => table(a),
        Command::Verify(a) => verify_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
