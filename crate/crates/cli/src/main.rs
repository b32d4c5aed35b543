//! `squeezelab`: wave functions, densities, moments and cross-formalism
//! verification for displaced and squeezed number states.

mod commands;
mod config;
mod error;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{Command, Format, RunConfig, Settings};
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "squeezelab",
    version,
    about = "Displaced and squeezed number states of the harmonic oscillator"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArg,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum CommandArg {
    /// Complex amplitude Psi(x, t0) on the position grid.
    State,
    /// Density rho(x, t) on the full (t, x) grid.
    Density,
    /// Closed-form means and variances of x and p over the time grid.
    Moments,
    /// Uncertainty product over the time grid.
    Uncertainty,
    /// Compare the closed form with the truncated Fock construction.
    Verify,
    /// Density surface for one of the four reference figures.
    Figure {
        /// Figure index, 1-4.
        k: usize,
    },
}

#[derive(Args, Debug)]
struct Flags {
    /// Number-state index.
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x0: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    p0: Option<f64>,
    /// Squeeze magnitude.
    #[arg(long, global = true, allow_hyphen_values = true)]
    r: Option<f64>,
    /// Squeeze phase.
    #[arg(long, global = true, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    t0: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    t1: Option<f64>,
    #[arg(long, global = true)]
    nt: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    xmin: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    xmax: Option<f64>,
    #[arg(long, global = true)]
    nx: Option<usize>,
    /// Fock-space truncation (default 128, or 256 when |alpha| > 2).
    #[arg(long = "N", global = true)]
    truncation: Option<usize>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// fig1-fig4, x1, p1, or `all` (verify only).
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Flat key=value file with the same keys as the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

impl Flags {
    fn settings(&self) -> Settings {
        Settings {
            n: self.n,
            x0: self.x0,
            p0: self.p0,
            r: self.r,
            phi: self.phi,
            t0: self.t0,
            t1: self.t1,
            nt: self.nt,
            xmin: self.xmin,
            xmax: self.xmax,
            nx: self.nx,
            truncation: self.truncation,
            out: self.out.clone(),
            format: self.format,
            preset: self.preset.clone(),
        }
    }
}

/// Caps the rayon pool from `SQUEEZELAB_THREADS`; 0 or unset leaves the default.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SQUEEZELAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        CliError::Config(format!(
            "SQUEEZELAB_THREADS must be a non-negative integer, got '{raw}'"
        ))
    })?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let command = match cli.command {
        CommandArg::State => Command::State,
        CommandArg::Density => Command::Density,
        CommandArg::Moments => Command::Moments,
        CommandArg::Uncertainty => Command::Uncertainty,
        CommandArg::Verify => Command::Verify,
        CommandArg::Figure { k } => Command::Figure(k),
    };
    let file = match &cli.flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            Settings::from_config_text(&text)?
        }
        None => Settings::default(),
    };
    let cfg = RunConfig::resolve(command, file, cli.flags.settings())?;
    let outcome = commands::run(&cfg)?;

    let bytes = outcome.table.render(cfg.format)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &bytes)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        }
    }
    if cfg.command == Command::Verify {
        let total = outcome.table.rows.len();
        eprintln!(
            "verify: {} of {total} reports passed",
            total - outcome.failed
        );
        if outcome.failed > 0 {
            return Err(CliError::Verification {
                failed: outcome.failed,
                total,
            });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("squeezelab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
