//! `layerdent`: batch indentation curves, inversions, stiffness and
//! self-checks for a coated transversely isotropic half-space.

mod commands;
mod config;
mod error;
mod output;
mod setup;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Run;
use config::{Format, RunConfig};
use error::CliError;

#[derive(Parser)]
#[command(name = "layerdent", version, about = "Indentation of a coated transversely isotropic half-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Material parameters, kernel summary and asymptotic constants.
    Coeffs(Common),
    /// Force, displacement and contact radius along the sweep.
    Curve(Common),
    /// Series inversions against numeric root finding.
    Invert(Common),
    /// Incremental stiffness against contact area.
    Stiffness(Common),
    /// Truncation, round-trip and convergence-order checks.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Quadrature tolerance for the asymptotic constants.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: Common,
    /// Relative error injected into a1 in the forward force relation.
    #[arg(long, hide = true, default_value_t = 0.0)]
    perturb_a1: f64,
}

fn run_with(common: &Common, default: Format, f: impl FnOnce(&Run) -> Result<(), CliError>) -> Result<(), CliError> {
    let cfg = RunConfig::load(&common.config)?;
    let tol = common.tol.unwrap_or(cfg.tolerances.quadrature);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::config(format!("--tol {tol} must lie in (0, 1)")));
    }
    let out = common.out.clone().or_else(|| cfg.output.path.clone());
    let run = Run {
        cfg: &cfg,
        format: common.format.or(cfg.output.format).unwrap_or(default),
        out: out.as_deref(),
        tol,
    };
    f(&run)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Coeffs(c) => run_with(c, Format::Json, commands::coeffs),
        Command::Curve(c) => run_with(c, Format::Csv, commands::curve),
        Command::Invert(c) => run_with(c, Format::Csv, commands::invert),
        Command::Stiffness(c) => run_with(c, Format::Csv, commands::stiffness),
        Command::Validate(v) => run_with(&v.common, Format::Csv, |r| commands::validate(r, v.perturb_a1)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::ValidationFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
