//! `shapiro`: classify polynomials, cross-check predictions, fuzz, and emit plot data.
//!
//! Exit codes: 0 success, 1 predicted and actual verdicts differ, 2 input
//! could not be parsed, 3 input parsed but is outside the domain (odd degree,
//! `Δ ≡ 0` under `verify`, empty range, bad fuzz configuration).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use shapiro_core::harness::{
    coverage_report, find_class_example, run_fuzz, FuzzConfig, FuzzSummary, Search, Strategy,
};
use shapiro_core::plot::{plot_rows, to_csv};
use shapiro_core::poly::parse_coefficients;
use shapiro_core::report::{Outcome, Report};
use shapiro_core::shapiro::{ClassLabel, ShapiroInstance};
use shapiro_core::{Error, Polynomial, Rational};

#[derive(Parser)]
#[command(
    name = "shapiro",
    version,
    about = "Exact classifier and checker for Shapiro's Conjecture 12"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the JSON report for one polynomial.
    Classify(PolyArg),
    /// Exit 0 if the predicted verdict matches direct root counting, 1 otherwise.
    Verify(PolyArg),
    /// Run a seeded batch and print the summary as JSON.
    Fuzz(FuzzArgs),
    /// Print `x,K,delta,parity,is_event` CSV for plotting.
    Plotdata {
        #[command(flatten)]
        poly: PolyArg,
        /// Inclusive range `lo:hi` with rational endpoints.
        #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Print a polynomial with the given class label, or NOT_FOUND.
    Example {
        /// ASCII code such as `G121` or the symbol `Γ₁₂₁`.
        label: String,
        /// Generated candidates to try when no fixture carries the label.
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search every class label and print found/NOT_FOUND per label.
    Coverage {
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct PolyArg {
    /// Comma-separated coefficients, constant term first, e.g. `1,0,1` for x^2+1.
    #[arg(allow_hyphen_values = true)]
    coefficients: String,
    /// Read the coefficients leading term first instead.
    #[arg(long)]
    descending: bool,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    /// Inclusive degree range `lo:hi`; odd degrees inside it are skipped.
    #[arg(long, default_value = "2:8")]
    degrees: String,
    #[arg(long, default_value_t = 10)]
    bound: u32,
    /// `uniform`, `positive-only`, or `targeted:<label>`.
    #[arg(long, default_value = "uniform")]
    strategy: String,
}

enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownLabel(_) => Failure::Parse(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type CliResult = Result<ExitCode, Failure>;

impl PolyArg {
    fn polynomial(&self) -> Result<Polynomial, Failure> {
        let mut c = parse_coefficients(&self.coefficients)?;
        if self.descending {
            c.reverse();
        }
        Ok(Polynomial::from_coefficients(c))
    }
}

fn parse_pair<T: std::str::FromStr>(s: &str, what: &str) -> Result<(T, T), Failure> {
    let bad = || Failure::Parse(format!("{what} must look like `lo:hi`, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Writes to stdout, ignoring a closed pipe (`shapiro ... | head`).
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("serializable") + "\n"));
}

fn classify(arg: &PolyArg) -> CliResult {
    print_json(&Report::new(&arg.polynomial()?)?);
    Ok(ExitCode::SUCCESS)
}

fn verify(arg: &PolyArg) -> CliResult {
    let r = Report::new(&arg.polynomial()?)?;
    let status = match r.actual {
        Outcome::DeltaZero => return Err(Error::DeltaIdenticallyZero.into()),
        Outcome::Verdict(_) if r.agree => "agree",
        Outcome::Verdict(_) => "MISMATCH",
    };
    emit(&format!(
        "{status}: {} {} predicted {} actual {}\n",
        r.input, r.label, r.predicted, r.actual
    ));
    Ok(if r.agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct FuzzOutput {
    config: FuzzConfig,
    #[serde(flatten)]
    summary: FuzzSummary,
}

fn fuzz(args: &FuzzArgs) -> CliResult {
    let config = FuzzConfig {
        seed: args.seed,
        cases: args.cases,
        degree_range: parse_pair(&args.degrees, "--degrees")?,
        coeff_bound: args.bound,
        strategy: args
            .strategy
            .parse::<Strategy>()
            .map_err(|e| Failure::Parse(e.to_string()))?,
    };
    let summary = run_fuzz(&config)?;
    let clean = summary.disagreements.is_empty();
    print_json(&FuzzOutput { config, summary });
    Ok(if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn plotdata(arg: &PolyArg, range: &str, samples: usize) -> CliResult {
    let p = arg.polynomial()?;
    let (lo, hi): (Rational, Rational) = parse_pair(range, "--range")?;
    let inst = ShapiroInstance::build(&p)?;
    emit(&to_csv(&plot_rows(&inst, &lo, &hi, samples)?));
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ExampleOutput {
    label: ClassLabel,
    symbol: String,
    #[serde(flatten)]
    search: Search,
}

fn example(label: &str, budget: usize, seed: u64) -> CliResult {
    let label: ClassLabel = label.parse()?;
    print_json(&ExampleOutput {
        label,
        symbol: label.symbol(),
        search: find_class_example(label, budget, seed),
    });
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(arg) => classify(arg),
        Command::Verify(arg) => verify(arg),
        Command::Fuzz(args) => fuzz(args),
        Command::Plotdata {
            poly,
            range,
            samples,
        } => plotdata(poly, range, *samples),
        Command::Example {
            label,
            budget,
            seed,
        } => example(label, *budget, *seed),
        Command::Coverage { budget, seed } => {
            print_json(&coverage_report(*budget, *seed));
            Ok(ExitCode::SUCCESS)
        }
    };
    match result {
        Ok(code) => code,
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
