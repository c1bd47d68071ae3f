//! `simulate`: mortality fit, scenario simulation, product moments,
//! optional value-at-risk calibration, and the region outputs for the
//! simulated statistics.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;

use jointprice_core::mortality::{
    calibrate_gamma, fit_li_lee, present_value, simulate_scenarios, summarize, var_loading_curve,
    MortalityDataset, ProductKind, ProductSpec,
};
use jointprice_core::pricing::{BusinessLine, LinePair, RiskSpec};

use super::{resolve_common, region::write_region_outputs};
use crate::output::{fmt_f64, write_output, CliError, Summary};
use crate::CommonArgs;

/// Fixed proportion grid for value-at-risk calibration and its curve.
const CALIBRATION_GRID: usize = 21;

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Mortality CSV for the annuity population.
    #[arg(long)]
    pub data_a: Option<PathBuf>,
    /// Mortality CSV for the assurance population.
    #[arg(long)]
    pub data_b: Option<PathBuf>,
    /// Number of simulated scenarios.
    #[arg(long)]
    pub n_sims: Option<u32>,
    /// Entry age of annuitants.
    #[arg(long)]
    pub entry_age_a: Option<u32>,
    /// Entry age of the assured.
    #[arg(long)]
    pub entry_age_b: Option<u32>,
    /// Contract term in years (both products).
    #[arg(long)]
    pub term: Option<u32>,
    /// Yearly annuity benefit.
    #[arg(long)]
    pub benefit_a: Option<f64>,
    /// Death benefit.
    #[arg(long)]
    pub benefit_b: Option<f64>,
    /// Flat yearly discount factor v.
    #[arg(long)]
    pub discount_factor: Option<f64>,
    /// Calibrate gamma to the value-at-risk loading at this level.
    #[arg(long)]
    pub calibrate_var: Option<f64>,
    /// Also export every scenario's present values.
    #[arg(long)]
    pub dump_scenarios: bool,
}

pub fn run(args: SimulateArgs) -> Result<(), CliError> {
    let (resolver, resolved) = resolve_common(&args.common)?;
    let grid: usize = resolver.get("grid", args.common.grid, 201)?;
    let data_a: PathBuf = resolver.require("data_a", args.data_a.clone())?;
    let data_b: PathBuf = resolver.require("data_b", args.data_b.clone())?;
    let n_sims: u32 = resolver.get("n_sims", args.n_sims, 10_000)?;
    let entry_age_a: u32 = resolver.get("entry_age_a", args.entry_age_a, 60)?;
    let entry_age_b: u32 = resolver.get("entry_age_b", args.entry_age_b, 30)?;
    let term: u32 = resolver.get("term", args.term, 30)?;
    let benefit_a: f64 = resolver.get("benefit_a", args.benefit_a, 1.0)?;
    let benefit_b: f64 = resolver.get("benefit_b", args.benefit_b, 1.0)?;
    let discount: f64 = resolver.get("discount_factor", args.discount_factor, 1.0 / 1.02)?;
    let calibrate_var: Option<f64> = resolver.optional(
        "calibrate_var",
        args.calibrate_var,
    )?;
    let dump_scenarios: bool = if args.dump_scenarios {
        true
    } else {
        resolver.get("dump_scenarios", None, false)?
    };

    let read_dataset = |path: &PathBuf| -> Result<MortalityDataset, CliError> {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "population".to_string());
        let file = std::fs::File::open(path).map_err(|e| {
            CliError::Validation(format!("cannot open {}: {e}", path.display()))
        })?;
        Ok(MortalityDataset::from_csv(id, file)?)
    };
    let ds_a = read_dataset(&data_a)?;
    let ds_b = read_dataset(&data_b)?;

    let params = fit_li_lee(&ds_a, &ds_b)?;
    let annuity = ProductSpec::new(ProductKind::TermAnnuity, entry_age_a, term, benefit_a, discount)?;
    let assurance =
        ProductSpec::new(ProductKind::TermAssurance, entry_age_b, term, benefit_b, discount)?;
    let set = simulate_scenarios(&params, term, n_sims, resolved.seed)?;

    let mut values_a = Vec::with_capacity(set.len());
    let mut values_b = Vec::with_capacity(set.len());
    for scenario in set.iter() {
        values_a.push(present_value(&scenario, &annuity)?);
        values_b.push(present_value(&scenario, &assurance)?);
    }
    let summary_stats = summarize(&values_a, &values_b, resolved.seed)?;

    let gamma_calibrated = match calibrate_var {
        Some(level) => Some(calibrate_gamma(
            &values_a,
            &values_b,
            resolved.risk.zeta(),
            level,
            CALIBRATION_GRID,
        )?),
        None => None,
    };
    let effective_risk = match gamma_calibrated {
        Some(gamma) => RiskSpec::new(resolved.risk.zeta(), gamma)?,
        None => resolved.risk,
    };

    let mut written = Vec::new();

    let mut summary = Summary::new();
    summary.push("population_a", ds_a.population_id());
    summary.push("population_b", ds_b.population_id());
    summary.push("sample_count", summary_stats.sample_count);
    summary.push("seed", summary_stats.seed);
    summary.push_f64("pi_a", summary_stats.pi_a);
    summary.push_f64("sigma_a", summary_stats.sigma_a);
    summary.push_f64("pi_b", summary_stats.pi_b);
    summary.push_f64("sigma_b", summary_stats.sigma_b);
    summary.push_f64("rho", summary_stats.rho);
    summary.push_f64("psi_a_unit", summary_stats.sigma_a / summary_stats.pi_a);
    summary.push_f64("psi_b_unit", summary_stats.sigma_b / summary_stats.pi_b);
    summary.push_f64("discount_factor", discount);
    summary.push("specific_drift_zeroed_a", params.specific_drift_zeroed[0]);
    summary.push("specific_drift_zeroed_b", params.specific_drift_zeroed[1]);
    if let Some(level) = calibrate_var {
        summary.push_f64("var_level", level);
        summary.push_f64("gamma_calibrated", gamma_calibrated.expect("calibrated above"));
    }
    written.push(write_output(
        &resolved.out,
        &format!("simulation_summary.{}", resolved.format.extension()),
        &summary.render(resolved.format),
    )?);

    // stats file consumable by `region`, `decide` and `sweep`
    let stats = format!(
        "pi_a = {}\nsigma_a = {}\npi_b = {}\nsigma_b = {}\nrho = {}\n",
        fmt_f64(summary_stats.pi_a),
        fmt_f64(summary_stats.sigma_a),
        fmt_f64(summary_stats.pi_b),
        fmt_f64(summary_stats.sigma_b),
        fmt_f64(summary_stats.rho)
    );
    written.push(write_output(&resolved.out, "simulated_stats.conf", &stats)?);

    // region outputs at the simulated statistics
    let line_a = BusinessLine::new(ds_a.population_id(), summary_stats.pi_a, summary_stats.sigma_a)?;
    let line_b = BusinessLine::new(ds_b.population_id(), summary_stats.pi_b, summary_stats.sigma_b)?;
    let pair = LinePair::new(line_a, line_b, summary_stats.rho)?;
    written.extend(write_region_outputs(
        &resolved.out,
        resolved.format,
        &pair,
        &effective_risk,
        grid,
        None,
        "region",
    )?);

    if let Some(level) = calibrate_var {
        let curve = var_loading_curve(
            &values_a,
            &values_b,
            effective_risk.zeta(),
            level,
            CALIBRATION_GRID,
        )?;
        let mut csv = String::from("n,psi_var,psi_msd\n");
        for (n, psi_var) in curve {
            let oriented = if pair.swapped() { 1.0 - n } else { n };
            let psi_msd = pair.joint_loading(&effective_risk, oriented)?;
            writeln!(csv, "{},{},{}", fmt_f64(n), fmt_f64(psi_var), fmt_f64(psi_msd))
                .expect("string write");
        }
        written.push(write_output(&resolved.out, "var_curve.csv", &csv)?);
    }

    if dump_scenarios {
        let mut csv = String::from("scenario_id,product,present_value\n");
        for (i, (a, b)) in values_a.iter().zip(&values_b).enumerate() {
            writeln!(csv, "{i},annuity,{}", fmt_f64(*a)).expect("string write");
            writeln!(csv, "{i},assurance,{}", fmt_f64(*b)).expect("string write");
        }
        written.push(write_output(&resolved.out, "scenarios.csv", &csv)?);
    }

    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}
