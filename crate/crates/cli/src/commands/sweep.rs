//! `sweep`: relative collected-premium difference over the demand share,
//! one CSV per reaction-factor scenario.

use std::fmt::Write as _;

use clap::Args;

use jointprice_core::market::{sweep_demand_share, MarketSpec};

use super::{csv_quote, parse_demand_model, resolve_common, resolve_pair, PairArgs};
use crate::output::{fmt_f64, write_output, CliError};
use crate::CommonArgs;

/// The four reaction-factor scenarios shipped as a preset.
pub const PRESET_SCENARIOS: &str = "0.5:0.5,3:3,0.5:3,3:0.5";

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Providers of line A.
    #[arg(long)]
    pub insurers_a: Option<u32>,
    /// Providers of line B.
    #[arg(long)]
    pub insurers_b: Option<u32>,
    /// Total market demand split across the two lines by each grid point.
    #[arg(long)]
    pub total_market: Option<f64>,
    /// Comma-separated reaction-factor scenarios `qa:qb`.
    #[arg(long)]
    pub scenarios: Option<String>,
    /// Demand response: logistic or linear.
    #[arg(long)]
    pub demand_model: Option<String>,
}

fn parse_scenarios(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (qa, qb) = part.split_once(':').ok_or_else(|| {
            CliError::Validation(format!("scenario `{part}` does not match `qa:qb`"))
        })?;
        let parse = |s: &str| -> Result<f64, CliError> {
            s.trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("reaction factor `{s}` is not a number")))
        };
        out.push((parse(qa)?, parse(qb)?));
    }
    if out.is_empty() {
        return Err(CliError::Validation("no scenarios given".to_string()));
    }
    Ok(out)
}

pub fn run(args: SweepArgs) -> Result<(), CliError> {
    let (resolver, resolved) = resolve_common(&args.common)?;
    let grid_size: usize = resolver.get("grid", args.common.grid, 19)?;
    if grid_size < 1 {
        return Err(CliError::Validation("grid must be at least 1".to_string()));
    }
    let (resolver, pair) = resolve_pair(resolver, &args.pair)?;
    let insurers_a: u32 = resolver.get("insurers_a", args.insurers_a, 10)?;
    let insurers_b: u32 = resolver.get("insurers_b", args.insurers_b, 10)?;
    let total_market: f64 = resolver.get("total_market", args.total_market, 2000.0)?;
    let scenario_text: String =
        resolver.get("scenarios", args.scenarios.clone(), PRESET_SCENARIOS.to_string())?;
    let scenarios = parse_scenarios(&scenario_text)?;
    let model_name: String =
        resolver.get("demand_model", args.demand_model.clone(), "linear".to_string())?;
    let model = parse_demand_model(&model_name)?;

    // w^d grid: interior points 1/(g+1) .. g/(g+1) for grid size g, so the
    // default 19 spans 0.05 .. 0.95
    let grid: Vec<f64> = (1..=grid_size)
        .map(|k| k as f64 / (grid_size + 1) as f64)
        .collect();

    for (qa, qb) in scenarios {
        let template = MarketSpec::new(
            total_market / 2.0,
            total_market / 2.0,
            insurers_a,
            insurers_b,
            qa,
            qb,
        )?;
        let points = sweep_demand_share(&pair, &resolved.risk, &template, model, &grid, total_market);
        let mut csv = String::from("w_d,psi_star,rel_d_ptf,status\n");
        for point in &points {
            match &point.outcome {
                Ok(value) => writeln!(
                    csv,
                    "{},{},{},ok",
                    fmt_f64(point.w_d),
                    fmt_f64(value.psi_star),
                    fmt_f64(value.relative_d_ptf)
                )
                .expect("string write"),
                Err(err) => writeln!(
                    csv,
                    "{},,,{}",
                    fmt_f64(point.w_d),
                    csv_quote(&err.to_string())
                )
                .expect("string write"),
            }
        }
        let path = write_output(
            &resolved.out,
            &format!("sweep_qa{qa}_qb{qb}.csv"),
            &csv,
        )?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
