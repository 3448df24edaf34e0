//! Command-line front end: bound evaluation, coverage certification,
//! certificate verification, and brute-force image exploration, all with
//! machine-readable output.
//!
//! Exit codes: 0 success/certified, 2 not-certified (or verification
//! mismatch), 3 resource limit, 64 usage error, 1 internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cantor_waring::bounds::{
    finalcor_bound, fmt_bound, smt_bound, ternary_ab_bound, ternary_mresult_bound, tmt_bound,
};
use cantor_waring::certifier::{certify_coverage, default_k, verify_certificate};
use cantor_waring::explorer::{coverage_report, product_measure_series};
use cantor_waring::scalar::{from_uint, Scalar};
use cantor_waring::{
    CantorParams, Certificate, Conclusion, Error, ExponentSpec, Interval, Limits, Rational,
};

const EXIT_NOT_CERTIFIED: u8 = 2;
const EXIT_RESOURCE_LIMIT: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 1;

const MAX_INTERVALS_ENV: &str = "CANTOR_WARING_MAX_INTERVALS";

#[derive(Parser)]
#[command(
    name = "cantor-waring",
    version,
    about = "Exact bounds, certificates, and images for non-diagonal power-sum forms on generalized Cantor sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an explicit bound on k and print the report as JSON
    Bound(BoundArgs),
    /// Run the inequality pipeline for a form and emit a certificate
    Certify(CertifyArgs),
    /// Re-check a stored certificate bit-exactly
    Verify(VerifyArgs),
    /// Brute-force exploration of form images on finite approximants
    Explore(ExploreArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BoundModeArg {
    Fmt,
    Smt,
    Tmt,
    TernaryMresult,
    TernaryAb,
    Finalcor,
}

#[derive(Args)]
struct BoundArgs {
    /// Cantor parameter alpha as an integer or "p/q"
    #[arg(long, default_value = "3")]
    alpha: String,
    #[arg(long, value_enum)]
    mode: BoundModeArg,
    /// Odd-position exponent (fmt, ternary-ab)
    #[arg(long)]
    a: Option<u32>,
    /// Even-position exponent (fmt, ternary-ab)
    #[arg(long)]
    b: Option<u32>,
    /// Common pair sum (smt, tmt, ternary-mresult)
    #[arg(long)]
    s: Option<u32>,
    /// Flat exponent list a1,a2,...,ak (finalcor)
    #[arg(long, value_delimiter = ',')]
    exponents: Option<Vec<u32>>,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long, default_value = "3")]
    alpha: String,
    /// Flat exponent list; used as a cyclic pattern when k asks for more pairs
    #[arg(long, value_delimiter = ',', required = true)]
    exponents: Vec<u32>,
    /// Number of variables (defaults to the pipeline's own bound)
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Path to a certificate JSON file
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Args)]
struct ExploreArgs {
    #[command(subcommand)]
    what: ExploreCommand,
}

#[derive(Subcommand)]
enum ExploreCommand {
    /// Exact image of a form on the level-n approximant, with gaps and measure
    Image(ImageArgs),
    /// Measures of the xy-images for n = 1..max-level
    ProductMeasure(ProductMeasureArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct ImageArgs {
    #[arg(long, default_value = "3")]
    alpha: String,
    #[arg(long, value_delimiter = ',', required = true)]
    exponents: Vec<u32>,
    #[arg(long)]
    level: u32,
    /// Coverage target "lo,hi" (defaults to 0,k/2)
    #[arg(long)]
    target: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Override the per-union interval cap
    #[arg(long)]
    max_intervals: Option<usize>,
    /// Override the per-term box cap
    #[arg(long)]
    max_boxes: Option<u64>,
}

#[derive(Args)]
struct ProductMeasureArgs {
    #[arg(long, default_value = "3")]
    alpha: String,
    #[arg(long)]
    max_level: u32,
    #[arg(long)]
    max_intervals: Option<usize>,
    #[arg(long)]
    max_boxes: Option<u64>,
}

enum Failure {
    Usage(String),
    Run(Error),
    Internal(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Run(Error::ResourceLimit(_)) => EXIT_RESOURCE_LIMIT,
            Failure::Run(_) | Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Run(e) => e.to_string(),
            Failure::Internal(m) => m.clone(),
        }
    }
}

/// Input-construction failures are usage errors; anything raised later is a
/// runtime failure with the library's own classification.
fn usage(err: Error) -> Failure {
    Failure::Usage(err.to_string())
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, Failure> {
    Rational::parse_wire(text).map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

fn parse_params(alpha: &str) -> Result<CantorParams<Rational>, Failure> {
    let alpha = parse_rational(alpha, "--alpha")?;
    CantorParams::new(alpha).map_err(usage)
}

fn parse_spec(exponents: &[u32]) -> Result<ExponentSpec, Failure> {
    ExponentSpec::from_flat(exponents).map_err(usage)
}

fn require_ternary(params: &CantorParams<Rational>, mode: &str) -> Result<(), Failure> {
    if params.alpha() != &from_uint::<Rational>(3) {
        return Err(Failure::Usage(format!(
            "--mode {mode} is specific to the ternary set; use --alpha 3"
        )));
    }
    Ok(())
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Internal(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn limits_from(max_intervals: Option<usize>, max_boxes: Option<u64>) -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    if let Ok(value) = std::env::var(MAX_INTERVALS_ENV) {
        limits.max_union_parts = value
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_INTERVALS_ENV}={value} is not a count")))?;
    }
    if let Some(cap) = max_intervals {
        limits.max_union_parts = cap;
    }
    if let Some(cap) = max_boxes {
        limits.max_term_boxes = cap;
    }
    Ok(limits)
}

fn run_bound(args: &BoundArgs) -> Result<u8, Failure> {
    let params = parse_params(&args.alpha)?;
    let r = params.r();

    let need = |opt: Option<u32>, name: &str, mode: &str| {
        opt.ok_or_else(|| Failure::Usage(format!("--mode {mode} requires --{name}")))
    };

    let report = match args.mode {
        BoundModeArg::Fmt => {
            let a = need(args.a, "a", "fmt")?;
            let b = need(args.b, "b", "fmt")?;
            fmt_bound(r, a, b).map_err(usage)?
        }
        BoundModeArg::Smt => {
            let s = need(args.s, "s", "smt")?;
            smt_bound(r, s).map_err(usage)?
        }
        BoundModeArg::Tmt => {
            let s = need(args.s, "s", "tmt")?;
            tmt_bound(r, s).map_err(usage)?
        }
        BoundModeArg::TernaryMresult => {
            require_ternary(&params, "ternary-mresult")?;
            let s = need(args.s, "s", "ternary-mresult")?;
            ternary_mresult_bound::<Rational>(s).map_err(usage)?
        }
        BoundModeArg::TernaryAb => {
            require_ternary(&params, "ternary-ab")?;
            let a = need(args.a, "a", "ternary-ab")?;
            let b = need(args.b, "b", "ternary-ab")?;
            ternary_ab_bound::<Rational>(a, b).map_err(usage)?
        }
        BoundModeArg::Finalcor => {
            let exponents = args
                .exponents
                .as_deref()
                .ok_or_else(|| Failure::Usage("--mode finalcor requires --exponents".into()))?;
            finalcor_bound(r, &parse_spec(exponents)?).map_err(usage)?
        }
    };
    print_json(&report)?;
    Ok(0)
}

/// Extends the pattern cyclically to exactly `k/2` pairs.
fn tile_spec(pattern: &ExponentSpec, k: u64) -> Result<ExponentSpec, Failure> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Failure::Usage(format!(
            "k must be a positive even integer, got {k}"
        )));
    }
    if k < pattern.k() {
        return Err(Failure::Usage(format!(
            "exponent pattern has {} pairs but k = {k} allows only {}",
            pattern.pairs().len(),
            k / 2
        )));
    }
    if k == pattern.k() {
        return Ok(pattern.clone());
    }
    let pairs: Vec<(u32, u32)> = (0..k / 2)
        .map(|i| pattern.pairs()[(i as usize) % pattern.pairs().len()])
        .collect();
    ExponentSpec::new(pairs).map_err(usage)
}

fn run_certify(args: &CertifyArgs) -> Result<u8, Failure> {
    let params = parse_params(&args.alpha)?;
    let pattern = parse_spec(&args.exponents)?;
    let k = match args.k {
        Some(k) => k,
        None => default_k(&params, &pattern).map_err(Failure::Run)?,
    };
    let spec = tile_spec(&pattern, k)?;
    let cert = certify_coverage(&params, &spec, k).map_err(Failure::Run)?;
    print_json(&cert)?;
    match &cert.conclusion {
        Conclusion::Certified(_) => Ok(0),
        Conclusion::NotCertified { failing_check } => {
            eprintln!("not certified: check {failing_check} fails");
            Ok(EXIT_NOT_CERTIFIED)
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(&args.cert)
        .map_err(|e| Failure::Internal(format!("cannot read {}: {e}", args.cert.display())))?;
    let cert: Certificate<Rational> = serde_json::from_str(&text)
        .map_err(|e| Failure::Internal(format!("certificate does not parse: {e}")))?;
    match verify_certificate(&cert).map_err(Failure::Run)? {
        true => {
            println!("true");
            Ok(0)
        }
        false => {
            println!("false");
            Ok(EXIT_NOT_CERTIFIED)
        }
    }
}

fn parse_target(text: &str) -> Result<Interval<Rational>, Failure> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| Failure::Usage(format!("--target expects \"lo,hi\", got {text:?}")))?;
    let lo = parse_rational(lo, "--target lo")?;
    let hi = parse_rational(hi, "--target hi")?;
    Interval::new(lo, hi).map_err(usage)
}

fn run_image(args: &ImageArgs) -> Result<u8, Failure> {
    let params = parse_params(&args.alpha)?;
    let spec = parse_spec(&args.exponents)?;
    let limits = limits_from(args.max_intervals, args.max_boxes)?;
    let target = match &args.target {
        Some(text) => parse_target(text)?,
        None => Interval::new(from_uint::<Rational>(0), from_uint(spec.k() / 2))
            .map_err(Failure::Run)?,
    };
    let report =
        coverage_report(&params, &spec, args.level, target, &limits).map_err(Failure::Run)?;
    match args.format {
        OutputFormat::Json => print_json(&report)?,
        OutputFormat::Csv => {
            println!("lo,hi");
            for part in report.image.parts() {
                println!("{},{}", part.lo().to_wire(), part.hi().to_wire());
            }
        }
    }
    Ok(0)
}

fn run_product_measure(args: &ProductMeasureArgs) -> Result<u8, Failure> {
    let params = parse_params(&args.alpha)?;
    let limits = limits_from(args.max_intervals, args.max_boxes)?;
    let series = product_measure_series(&params, args.max_level, &limits).map_err(Failure::Run)?;
    let rows: Vec<serde_json::Value> = series
        .iter()
        .enumerate()
        .map(|(i, m)| serde_json::json!({ "level": i as u32 + 1, "measure": m.to_wire() }))
        .collect();
    print_json(&serde_json::json!({
        "version": "measure-series/1",
        "alpha": params.alpha().to_wire(),
        "r": params.r().to_wire(),
        "maxLevel": args.max_level,
        "series": rows,
    }))?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Bound(args) => run_bound(args),
        Command::Certify(args) => run_certify(args),
        Command::Verify(args) => run_verify(args),
        Command::Explore(args) => match &args.what {
            ExploreCommand::Image(image) => run_image(image),
            ExploreCommand::ProductMeasure(pm) => run_product_measure(pm),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("{}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
