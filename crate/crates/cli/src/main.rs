//! `wps`: count points of bounded height on weighted projective spaces over
//! rational function fields, by enumeration and from height zeta functions.

mod commands;
mod config;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Columns;
use config::{Format, RunConfig};
use wps_core::{CurveModel, Error, WeightVector};

#[derive(Parser)]
#[command(name = "wps", version, about = "Points of bounded height on weighted projective spaces over F_q(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field order: a prime power such as 5, 9 or 3^2
    #[arg(long)]
    q: String,
    /// Ascending coefficients of the defining polynomial of an extension field
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Seed for randomized polynomial factoring
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct RunArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// "genus0" or "elliptic:a=A,b=B"
    #[arg(long, default_value = "genus0")]
    curve: String,
    /// Comma-separated positive weights, e.g. 1,2
    #[arg(long)]
    weights: String,
    /// A height d or an inclusive range A..B
    #[arg(long)]
    d: String,
    /// Largest search space to enumerate (default: $WPS_CAP or 1e9)
    #[arg(long)]
    cap: Option<u128>,
}

#[derive(Subcommand)]
enum Command {
    /// Count points by brute-force enumeration
    Count(RunArgs),
    /// Exact counts and main terms from the height zeta function
    Predict(RunArgs),
    /// Enumeration against the exact formula; exit status 1 on disagreement
    Compare(RunArgs),
    /// Print the zeta functions and main-term coefficients
    Zeta {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "genus0")]
        curve: String,
        #[arg(long)]
        weights: String,
    },
    /// Factor a polynomial given by ascending coefficients, e.g. 1,0,1
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        poly: String,
    },
    /// Weighted height of a tuple of rational functions, e.g. "t;1"
    Height {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        coords: String,
    },
    /// List the monic irreducible polynomials of degree at most max-deg
    Irr {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        max_deg: usize,
    },
}

enum Failure {
    Core(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn run_config(args: &RunArgs) -> Result<RunConfig, Error> {
    let field = config::parse_field(&args.field.q, args.field.modulus.as_deref())?;
    Ok(RunConfig {
        curve: CurveModel::parse(&field, &args.curve)?,
        weights: WeightVector::parse(&args.weights)?,
        d: config::parse_d_range(&args.d)?,
        format: args.field.format,
        cap: config::resolve_cap(args.cap)?,
        field,
    })
}

fn field_of(args: &FieldArgs) -> Result<wps_core::Field, Error> {
    config::parse_field(&args.q, args.modulus.as_deref())
}

fn run(cli: Cli) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::Count(args) => {
            let c = run_config(&args)?;
            commands::count_report(&c, Columns::Oracle)?.render(c.format)
        }
        Command::Predict(args) => {
            let c = run_config(&args)?;
            commands::count_report(&c, Columns::Predict)?.render(c.format)
        }
        Command::Compare(args) => {
            let c = run_config(&args)?;
            let report = commands::count_report(&c, Columns::Both)?;
            let out = report.render(c.format);
            if let Some(msg) = commands::first_mismatch(&report) {
                print!("{out}");
                return Err(Failure::Mismatch(msg));
            }
            out
        }
        Command::Zeta { field, curve, weights } => {
            let f = field_of(&field)?;
            let c = RunConfig {
                curve: CurveModel::parse(&f, &curve)?,
                weights: WeightVector::parse(&weights)?,
                d: 0..=0,
                format: field.format,
                cap: 0,
                field: f,
            };
            commands::zeta_report(&c)?.render(c.format)
        }
        Command::Factor { field, poly } => commands::factor(&field_of(&field)?, &poly, field.seed, field.format)?,
        Command::Height { field, weights, coords } => {
            commands::height_of(&field_of(&field)?, &WeightVector::parse(&weights)?, &coords, field.format)?
        }
        Command::Irr { field, max_deg } => commands::irreducibles(&field_of(&field)?, max_deg, field.format),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::TooLarge { .. } => 3,
                Error::InvariantViolation(_) => 1,
                _ => 2,
            })
        }
    }
}
