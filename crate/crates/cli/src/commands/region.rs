//! `region`: joint-loading curve, competitiveness summary, monitoring
//! interval.

use std::fmt::Write as _;
use std::path::Path;

use clap::Args;

use jointprice_core::pricing::{LinePair, RiskSpec};

use super::{resolve_common, resolve_pair, PairArgs};
use crate::output::{fmt_f64, write_output, CliError, OutputFormat, Summary};
use crate::CommonArgs;

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RegionArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Actual loading for which to report the monitoring interval.
    #[arg(long)]
    pub psi_star: Option<f64>,
}

pub fn run(args: RegionArgs) -> Result<(), CliError> {
    let (resolver, resolved) = resolve_common(&args.common)?;
    let grid: usize = resolver.get("grid", args.common.grid, 1001)?;
    let (resolver, pair) = resolve_pair(resolver, &args.pair)?;
    let psi_star: Option<f64> = resolver.optional("psi_star", args.psi_star)?;
    let paths = write_region_outputs(
        &resolved.out,
        resolved.format,
        &pair,
        &resolved.risk,
        grid,
        psi_star,
        "region",
    )?;
    for p in paths {
        println!("wrote {}", p.display());
    }
    Ok(())
}

/// Emits `<prefix>_curve.csv` and `<prefix>_summary.{csv,txt}`; shared
/// with the `simulate` pipeline.
pub(crate) fn write_region_outputs(
    out: &Path,
    format: OutputFormat,
    pair: &LinePair,
    risk: &RiskSpec,
    grid: usize,
    psi_star: Option<f64>,
    prefix: &str,
) -> Result<Vec<std::path::PathBuf>, CliError> {
    if grid < 2 {
        return Err(CliError::Validation(format!(
            "curve grid needs at least 2 points, got {grid}"
        )));
    }
    let report = pair.competitiveness_region(risk);

    let mut curve = String::from("n,psi_joint,psi_a_ref,psi_b_ref\n");
    for k in 0..grid {
        let n = k as f64 / (grid - 1) as f64;
        let psi = pair.joint_loading(risk, n)?;
        writeln!(
            curve,
            "{},{},{},{}",
            fmt_f64(n),
            fmt_f64(psi),
            fmt_f64(report.psi_a),
            fmt_f64(report.psi_b)
        )
        .expect("string write");
    }

    let mut summary = Summary::new();
    summary.push("line_a", pair.line_a().label());
    summary.push("line_b", pair.line_b().label());
    summary.push("swapped", pair.swapped());
    summary.push_f64("zeta", risk.zeta());
    summary.push_f64("gamma", risk.gamma());
    summary.push_f64("rho", pair.rho());
    summary.push_f64("b", pair.b());
    summary.push_f64("b_rho", pair.b() * pair.rho());
    summary.push_f64("lambda1", pair.lambda1());
    summary.push_f64("lambda2", pair.lambda2());
    summary.push("region_exists", report.exists);
    summary.push_f64("psi_a", report.psi_a);
    summary.push_f64("psi_b", report.psi_b);
    summary.push_f64("n_min", report.n_min);
    summary.push_f64("psi_min", report.psi_min);
    match report.n_ct {
        Some(n_ct) => summary.push_f64("n_ct", n_ct),
        None => summary.push("n_ct", "none"),
    }
    if let Some(psi_star) = psi_star {
        let (n_l, n_u) = pair.monitoring_interval(risk, psi_star)?;
        summary.push_f64("psi_star", psi_star);
        summary.push_f64("monitor_lower", n_l);
        summary.push_f64("monitor_upper", n_u);
    }

    let curve_path = write_output(out, &format!("{prefix}_curve.csv"), &curve)?;
    let summary_path = write_output(
        out,
        &format!("{prefix}_summary.{}", format.extension()),
        &summary.render(format),
    )?;
    Ok(vec![curve_path, summary_path])
}
