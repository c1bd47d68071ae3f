//! `screen`: ingest loss series, detrend, KPSS, pairwise screening
//! matrix, and an optional region curve for one screened pair.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;

use jointprice_core::screen::{
    ingest_losses, pairwise_screen, region_curve, render_report, ReportFormat,
};

use super::resolve_common;
use crate::output::{fmt_f64, write_output, CliError};
use crate::CommonArgs;

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ScreenArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Long-format loss CSV (period,line_id,line_name,loss).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// KPSS Bartlett bandwidth override.
    #[arg(long)]
    pub bandwidth: Option<usize>,
    /// Emit the joint-pricing curve for one pair, `ID_A,ID_B`.
    #[arg(long)]
    pub curve_pair: Option<String>,
}

pub fn run(args: ScreenArgs) -> Result<(), CliError> {
    let (resolver, resolved) = resolve_common(&args.common)?;
    let grid: usize = resolver.get("grid", args.common.grid, 201)?;
    let input: PathBuf = resolver.require("input", args.input.clone())?;
    let bandwidth: Option<usize> = resolver.optional("bandwidth", args.bandwidth)?;
    let curve_pair: Option<String> = resolver.optional("curve_pair", args.curve_pair.clone())?;

    let file = std::fs::File::open(&input)
        .map_err(|e| CliError::Validation(format!("cannot open {}: {e}", input.display())))?;
    let ingested = ingest_losses(file)?;
    for warning in &ingested.warnings {
        eprintln!("warning: {warning}");
    }
    for rejected in &ingested.rejected {
        eprintln!(
            "warning: line {} excluded: {}",
            rejected.line_id, rejected.reason
        );
    }

    let report = pairwise_screen(&ingested.series, bandwidth)?;
    let text = render_report(&report, ReportFormat::Text);
    let csv = render_report(&report, ReportFormat::Csv);
    let mut written = vec![
        write_output(&resolved.out, "screen_report.txt", &text)?,
        write_output(&resolved.out, "screen_report.csv", &csv)?,
    ];

    if let Some(pair_text) = curve_pair {
        let (id_a, id_b) = pair_text.split_once(',').ok_or_else(|| {
            CliError::Validation(format!("curve pair `{pair_text}` does not match `ID_A,ID_B`"))
        })?;
        let curve = region_curve(&report, id_a.trim(), id_b.trim(), &resolved.risk, grid)?;
        let mut csv = String::from("n,one_plus_psi,ref_a,ref_b,n_ct\n");
        let n_ct_cell = curve.n_ct.map(fmt_f64).unwrap_or_default();
        for (n, price) in &curve.points {
            writeln!(
                csv,
                "{},{},{},{},{}",
                fmt_f64(*n),
                fmt_f64(*price),
                fmt_f64(curve.ref_a),
                fmt_f64(curve.ref_b),
                n_ct_cell
            )
            .expect("string write");
        }
        written.push(write_output(&resolved.out, "screen_curve.csv", &csv)?);
    }

    println!(
        "screened {} lines, {} pairs, {} with a competitiveness region",
        report.n_lines(),
        report.total_pairs,
        report.positive_pairs
    );
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}
