//! `evi`: extreme value index estimation from the command line.

mod commands;
mod config;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::commands::Failure;
use crate::config::KGrid;

#[derive(Debug, Parser)]
#[command(
    name = "evi",
    version,
    about = "Estimate the extreme value index and run simulation studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate ξ from a data file.
    Estimate(EstimateArgs),
    /// Run a Monte Carlo study and write per-k mean and MSE.
    Simulate(SimulateArgs),
    /// Compare the normalized root estimator with its limit law.
    CheckAsymptotic(CheckArgs),
    /// Print the supported distribution families.
    ListDistributions,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("ks").required(true).args(["k", "k_grid"])))]
struct EstimateArgs {
    /// Data file.
    #[arg(long)]
    input: PathBuf,
    /// `plain` (one number per line, `#` comments) or `csv:<column>`.
    #[arg(long, default_value = "plain")]
    format: String,
    /// gg, gg_star, hill, pickands, moment, zipf, a comma list, or all.
    #[arg(long, default_value = "gg")]
    estimator: String,
    #[arg(long)]
    k: Option<usize>,
    /// start:stop:step
    #[arg(long = "k-grid")]
    k_grid: Option<KGrid>,
    /// Ratio k/k' for gg and gg_star.
    #[arg(long, default_value_t = 4.0)]
    c: f64,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// `key = value` file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// e.g. `frechet(xi=3)` or `burr(w=1, tau=1, lambda=1)`.
    #[arg(long)]
    distribution: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Number of replicates.
    #[arg(long = "N")]
    replicates: Option<usize>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma list of estimators, or all.
    #[arg(long)]
    estimators: Option<String>,
    /// start:stop:step
    #[arg(long = "k-grid")]
    k_grid: Option<KGrid>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    distribution: String,
    #[arg(long)]
    n: usize,
    /// Number of replicates.
    #[arg(long = "N", default_value_t = 100)]
    replicates: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 4.0)]
    c: f64,
    #[arg(long, default_value_t = config::DEFAULT_SEED)]
    seed: u64,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match cli.command {
        Command::Estimate(args) => commands::estimate(&args, &mut out)?,
        Command::Simulate(args) => commands::simulate(&args, &mut out)?,
        Command::CheckAsymptotic(args) => commands::check_asymptotic(&args, &mut out)?,
        Command::ListDistributions => commands::list_distributions(&mut out)?,
    }
    out.flush().map_err(Failure::output)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::USAGE),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
