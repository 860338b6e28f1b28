//! `finfiber`: command-line access to projections, rate isomorphisms,
//! section traces, financial transport and connection quantities.
//!
//! Exit codes: 0 success, 1 domain or numeric failure, 2 usage error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use finfiber_core::LawKind;

use crate::output::Format;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<finfiber_core::Error> for CliError {
    fn from(e: finfiber_core::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "finfiber", version, about = "Fibrations of the plane of financial events")]
struct Cli {
    /// Output format; scalar commands default to json, streams to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct LawChoice {
    /// Compound interest rate i > -1
    #[arg(long, allow_negative_numbers = true)]
    rate: Option<f64>,

    /// Registry law: compound, simple or exp-force (needs --param)
    #[arg(long)]
    law: Option<String>,
}

#[derive(Debug, Args)]
struct RegistryLaw {
    /// Registry law: compound, simple or exp-force
    #[arg(long)]
    law: String,

    /// Rate i for compound and simple laws, force δ for exp-force
    #[arg(long, allow_negative_numbers = true)]
    param: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Base capital of an event: compound projection, or the projection
    /// induced by a registry law
    Project {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[command(flatten)]
        law: LawChoice,
        #[arg(long, allow_negative_numbers = true)]
        param: Option<f64>,
    },
    /// Samples a compound fiber t ↦ (1+i)^t c₀ on a uniform grid
    Fiber {
        #[arg(long, allow_negative_numbers = true)]
        rate: f64,
        #[arg(long, allow_negative_numbers = true)]
        base: f64,
        #[arg(long = "t-min", allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long = "t-max", allow_negative_numbers = true)]
        t_max: f64,
        /// Number of intervals; steps + 1 rows are emitted
        #[arg(long, allow_negative_numbers = true)]
        steps: i64,
    },
    /// Tests whether sampled (t, M) data is the trace of a section
    SectionCheck {
        /// CSV with header `t,M` and strictly increasing t
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        rate: f64,
        /// Target capitals as `lo,hi`
        #[arg(long, allow_hyphen_values = true)]
        targets: String,
        /// Where to write the witness samples (t, v) when the test passes
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Financial translation of an event by h under the discount law a
    /// registry law induces at the event's time
    Transport {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[command(flatten)]
        law: RegistryLaw,
    },
    /// Christoffel coefficient F′(0) of the discount law induced at time t
    Christoffel {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[command(flatten)]
        law: RegistryLaw,
    },
    /// Force of interest u′(t)/u(t)
    Force {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[command(flatten)]
        law: RegistryLaw,
    },
    /// Rate-change isomorphism (t, c) ↦ (t, ((1+to)/(1+from))^t c)
    Isomap {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
    },
}

fn parse_law(id: &str) -> Result<LawKind, CliError> {
    id.parse().map_err(|_| CliError::Usage(format!("unknown law `{id}` (expected compound, simple or exp-force)")))
}

fn tolerance() -> Result<f64, CliError> {
    match std::env::var("FINFIBER_TOL") {
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(tol) if tol.is_finite() && tol >= 0.0 => Ok(tol),
            _ => Err(CliError::Usage(format!("FINFIBER_TOL must be a non-negative number, got `{raw}`"))),
        },
        Err(_) => Ok(finfiber_core::DEFAULT_TOL),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let scalar = cli.format.unwrap_or(Format::Json);
    let record = match cli.command {
        Command::Project { t, c, law, param } => match (law.rate, law.law) {
            (Some(rate), None) => {
                if param.is_some() {
                    return Err(CliError::Usage("--param only applies with --law".into()));
                }
                commands::project_rate(t, c, rate)?
            }
            (None, Some(id)) => {
                let param = param.ok_or_else(|| CliError::Usage("--law requires --param".into()))?;
                commands::project_law(t, c, parse_law(&id)?, param)?
            }
            _ => return Err(CliError::Usage("project needs either --rate or --law".into())),
        },
        Command::Fiber { rate, base, t_min, t_max, steps } => {
            if steps < 1 {
                return Err(CliError::Usage(format!("--steps must be at least 1, got {steps}")));
            }
            if !(t_min <= t_max) {
                return Err(CliError::Usage(format!("--t-min {t_min} exceeds --t-max {t_max}")));
            }
            let format = cli.format.unwrap_or(Format::Csv);
            return commands::fiber(rate, base, t_min, t_max, steps as usize, format, &mut out);
        }
        Command::SectionCheck { input, rate, targets, witness_out } => {
            let (lo, hi) = targets
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<f64>().ok()?, b.trim().parse::<f64>().ok()?)))
                .ok_or_else(|| CliError::Usage(format!("--targets expects `lo,hi`, got `{targets}`")))?;
            if !(lo <= hi) {
                return Err(CliError::Usage(format!("--targets: {lo} exceeds {hi}")));
            }
            commands::section_check(&input, rate, lo, hi, tolerance()?, witness_out.as_deref())?
        }
        Command::Transport { t, c, h, law } => commands::transport(t, c, h, parse_law(&law.law)?, law.param)?,
        Command::Christoffel { t, law } => commands::christoffel(t, parse_law(&law.law)?, law.param)?,
        Command::Force { t, law } => commands::force(t, parse_law(&law.law)?, law.param)?,
        Command::Isomap { t, c, from, to } => commands::isomap(t, c, from, to)?,
    };
    record.write(scalar, &mut out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
