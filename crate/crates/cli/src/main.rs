//! `qwlab`: simulations, closed forms and cross-checks for the one-defect
//! Hadamard walk.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qwlab_core::verify::VerifyOptions;

use crate::commands::SeriesKind;
use crate::config::{Common, ConfigError, Format, RunConfig};
use crate::output::emit;

#[derive(Debug, Parser)]
#[command(name = "qwlab", version, about = "Hadamard walk with one defect coin at the origin")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve the walk and print the position measure (n, x, mu).
    Simulate {
        /// Also emit the profile at every K-th time step, including n = 0.
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        every: Option<u64>,
    },
    /// Cesaro average of the first N position measures.
    Cesaro,
    /// Stationary measure at |c| = 1, its normalization, and the limit measure.
    Stationary,
    /// Time-averaged limit measure: closed form, residue sum and Cesaro average.
    Limit,
    /// Return probability at the origin for n = 0..=N (time 2n).
    ReturnProb,
    /// Exact rational coefficients of a first-return series.
    Series {
        #[arg(long, value_enum, default_value = "rstar")]
        kind: SeriesKind,
        /// Highest power of z.
        #[arg(long, default_value_t = 64)]
        order: usize,
    },
    /// Run every cross-check and print a pass/fail table.
    Verify {
        /// Horizon of the long-time checks.
        #[arg(long, default_value_t = 2000)]
        horizon: usize,
        /// Perturb one eigenvalue so that its check fails.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Limits and a Cesaro average at the origin over a grid of xi.
    Sweep {
        #[arg(long, default_value_t = 0.05)]
        from: f64,
        #[arg(long, default_value_t = 1.5)]
        to: f64,
        #[arg(long, default_value_t = 30)]
        count: usize,
    },
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(text) = std::env::var("QWLAB_THREADS") {
        let n: usize = text
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| config::config_error(anyhow::anyhow!("QWLAB_THREADS must be a positive integer, got {text:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    init_threads()?;
    let cfg = RunConfig::load(&cli.common)?;
    let table = match cli.command {
        Command::Simulate { every } => {
            commands::check_window(&cfg)?;
            commands::simulate(&cfg, every.map(|k| k as usize))?
        }
        Command::Cesaro => commands::cesaro(&cfg)?,
        Command::Stationary => commands::stationary(&cfg)?,
        Command::Limit => commands::limit(&cfg)?,
        Command::ReturnProb => commands::return_prob(&cfg)?,
        Command::Series { kind, order } => commands::series(&cfg, kind, order)?,
        Command::Verify { horizon, inject_fault } => {
            let options = VerifyOptions { horizon, inject_fault };
            let report = commands::verify(&options);
            let text = match (cli.common.format, cfg.out.is_some()) {
                (Format::Csv, false) => commands::verify_text(&report),
                (format, _) => commands::verify_table(&report, &options).render(format),
            };
            emit(&text, cfg.out.as_deref())?;
            return Ok(report.all_passed());
        }
        Command::Sweep { from, to, count } => commands::sweep(&cfg, from, to, count)?,
    };
    emit(&table.render(cfg.format), cfg.out.as_deref())?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ConfigError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
