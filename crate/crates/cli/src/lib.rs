//! Command-line front-end binding the pricing, market, mortality and
//! screening layers; emits tables and plot-ready CSV.

pub mod commands;
pub mod config;
pub mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

use output::CliError;

/// Joint vs. stand-alone premium loading analysis for two business lines.
#[derive(Debug, Parser)]
#[command(name = "jointprice", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Joint-loading curve, competitiveness region and monitoring interval.
    Region(commands::region::RegionArgs),
    /// Demand-aware pricing decision at a single market configuration.
    Decide(commands::decide::DecideArgs),
    /// Collected-premium comparison swept over the demand share.
    Sweep(commands::sweep::SweepArgs),
    /// Mortality fit, scenario simulation, product moments and calibration.
    Simulate(commands::simulate::SimulateArgs),
    /// Loss-series screening: detrend, KPSS, pairwise b*rho matrix.
    Screen(commands::screen::ScreenArgs),
}

/// Flags shared by every subcommand. Any flag left unset falls back to
/// the config file (same key with `-` as `_`), then to the built-in
/// default.
#[derive(Debug, Clone, Args, Default)]
pub struct CommonArgs {
    /// Flat key-value config file; flags override file entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output layout for summaries: csv or text.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Seed for the mortality simulation.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Risk reduction factor in (0, 1).
    #[arg(long, global = true)]
    pub zeta: Option<f64>,
    /// MSD loading weight.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Grid size for curves and sweeps.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
}

/// Parses argv and runs; returns the process exit code.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Region(args) => commands::region::run(args),
        Command::Decide(args) => commands::decide::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
        Command::Simulate(args) => commands::simulate::run(args),
        Command::Screen(args) => commands::screen::run(args),
    }
}
