//! Subcommand implementations.

pub mod decide;
pub mod region;
pub mod screen;
pub mod simulate;
pub mod sweep;

use std::path::PathBuf;

use clap::Args;

use jointprice_core::market::DemandModel;
use jointprice_core::pricing::{BusinessLine, LinePair, RiskSpec};

use crate::config::{load_config, load_stats, Resolver};
use crate::output::{CliError, OutputFormat};
use crate::CommonArgs;

/// Resolved values every command needs.
pub(crate) struct Resolved {
    pub out: PathBuf,
    pub format: OutputFormat,
    pub seed: u64,
    pub risk: RiskSpec,
}

/// Applies flag-over-config resolution to the shared flags.
pub(crate) fn resolve_common(common: &CommonArgs) -> Result<(Resolver, Resolved), CliError> {
    let config = load_config(common.config.as_deref())?;
    let resolver = Resolver::new(config);
    let out: PathBuf = resolver.get("out", common.out.clone(), PathBuf::from("."))?;
    let format_name: String = resolver.get("format", common.format.clone(), "csv".to_string())?;
    let format = OutputFormat::parse(&format_name)?;
    let seed: u64 = resolver.get("seed", common.seed, 0)?;
    let zeta: f64 = resolver.get("zeta", common.zeta, 0.5)?;
    let gamma: f64 = resolver.get("gamma", common.gamma, 1.686)?;
    let risk = RiskSpec::new(zeta, gamma)?;
    Ok((
        resolver,
        Resolved {
            out,
            format,
            seed,
            risk,
        },
    ))
}

/// Pair statistics supplied inline or via a stats file.
#[derive(Debug, Clone, Args, Default)]
pub struct PairArgs {
    /// Key-value stats file carrying pi_a, sigma_a, pi_b, sigma_b, rho.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Expected present value per policy, line A.
    #[arg(long)]
    pub pi_a: Option<f64>,
    /// Standard deviation per policy, line A.
    #[arg(long)]
    pub sigma_a: Option<f64>,
    /// Expected present value per policy, line B.
    #[arg(long)]
    pub pi_b: Option<f64>,
    /// Standard deviation per policy, line B.
    #[arg(long)]
    pub sigma_b: Option<f64>,
    /// Correlation of the per-policy present values, in [-1, 1).
    #[arg(long)]
    pub rho: Option<f64>,
}

/// Builds the line pair: explicit flags beat the stats file, which beats
/// the config file.
pub(crate) fn resolve_pair(
    resolver: Resolver,
    args: &PairArgs,
) -> Result<(Resolver, LinePair), CliError> {
    let stats_path: Option<PathBuf> = resolver.optional("stats", args.stats.clone())?;
    let resolver = match stats_path {
        Some(path) => {
            let kv = load_stats(&path)?;
            resolver.with_stats(kv)
        }
        None => resolver,
    };
    let pi_a: f64 = resolver.require("pi_a", args.pi_a)?;
    let sigma_a: f64 = resolver.require("sigma_a", args.sigma_a)?;
    let pi_b: f64 = resolver.require("pi_b", args.pi_b)?;
    let sigma_b: f64 = resolver.require("sigma_b", args.sigma_b)?;
    let rho: f64 = resolver.require("rho", args.rho)?;
    let line_a = BusinessLine::new("A", pi_a, sigma_a)?;
    let line_b = BusinessLine::new("B", pi_b, sigma_b)?;
    let pair = LinePair::new(line_a, line_b, rho)?;
    Ok((resolver, pair))
}

pub(crate) fn parse_demand_model(name: &str) -> Result<DemandModel, CliError> {
    match name {
        "logistic" => Ok(DemandModel::Logistic),
        "linear" | "linearized" => Ok(DemandModel::Linearized),
        other => Err(CliError::Validation(format!(
            "demand model must be `logistic` or `linear`, got `{other}`"
        ))),
    }
}

pub(crate) fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
