//! Pairwise competitiveness screening and report rendering.

use std::fmt::Write as _;

use super::ingest::{LossSeries, MIN_OBSERVATIONS};
use super::stats::{detrend, kpss_statistic};
use super::ScreenError;
use crate::pricing::{BusinessLine, LinePair, RiskSpec};

/// Per-line screening statistics. `pi` is the raw-series mean, `sigma`
/// the standard deviation of the detrended residuals, `psi = sigma / pi`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineStats {
    pub line_id: String,
    pub name: String,
    pub pi: f64,
    pub sigma: f64,
    pub psi: f64,
    pub kpss_statistic: f64,
    pub kpss_pass: bool,
}

/// One off-diagonal cell of the screening matrix, oriented so `b >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCell {
    pub rho: f64,
    pub b: f64,
    pub b_rho: f64,
    pub region_exists: bool,
}

/// Screening matrix over all pairs, lines ordered by descending `psi`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenReport {
    pub lines: Vec<LineStats>,
    /// Row-major `n * n` cells; `None` on the diagonal.
    cells: Vec<Option<PairCell>>,
    pub positive_pairs: usize,
    pub total_pairs: usize,
}

impl ScreenReport {
    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<&PairCell> {
        self.cells[row * self.lines.len() + col].as_ref()
    }

    pub fn positive_fraction(&self) -> f64 {
        self.positive_pairs as f64 / self.total_pairs as f64
    }

    fn index_of(&self, line_id: &str) -> Option<usize> {
        self.lines.iter().position(|l| l.line_id == line_id)
    }
}

/// Detrends every series, annotates KPSS stationarity, and assesses
/// `b * rho < 1` for every pair.
///
/// All series must share the same period coverage. `pi` comes from the
/// raw values and `sigma`, `rho` from the detrended residuals; a failing
/// KPSS check annotates the line but does not exclude it.
pub fn pairwise_screen(
    series: &[LossSeries],
    bandwidth: Option<usize>,
) -> Result<ScreenReport, ScreenError> {
    if series.len() < 2 {
        return Err(ScreenError::NotEnoughData(format!(
            "at least 2 series, got {}",
            series.len()
        )));
    }
    let reference = &series[0].periods;
    for s in series {
        if s.len() < MIN_OBSERVATIONS {
            return Err(ScreenError::DegenerateSeries {
                line_id: s.line_id.clone(),
                reason: format!("needs at least {MIN_OBSERVATIONS} observations, has {}", s.len()),
            });
        }
        if &s.periods != reference {
            return Err(ScreenError::NotEnoughData(format!(
                "common period coverage (line {} differs)",
                s.line_id
            )));
        }
    }

    let mut stats = Vec::with_capacity(series.len());
    let mut residuals = Vec::with_capacity(series.len());
    for s in series {
        let (res, _) = detrend(&s.values);
        let n = res.len();
        let pi = s.values.iter().sum::<f64>() / n as f64;
        let sigma = (res.iter().map(|r| r * r).sum::<f64>() / (n - 1) as f64).sqrt();
        if sigma <= 0.0 {
            return Err(ScreenError::DegenerateSeries {
                line_id: s.line_id.clone(),
                reason: "zero variance after detrending".to_string(),
            });
        }
        let (kpss, pass) = kpss_statistic(&res, bandwidth).map_err(|e| match e {
            ScreenError::DegenerateSeries { reason, .. } => ScreenError::DegenerateSeries {
                line_id: s.line_id.clone(),
                reason,
            },
            other => other,
        })?;
        stats.push(LineStats {
            line_id: s.line_id.clone(),
            name: s.name.clone(),
            pi,
            sigma,
            psi: sigma / pi,
            kpss_statistic: kpss,
            kpss_pass: pass,
        });
        residuals.push(res);
    }

    // descending psi, ties broken by id for a deterministic layout
    let mut order: Vec<usize> = (0..stats.len()).collect();
    order.sort_by(|&i, &j| {
        stats[j]
            .psi
            .partial_cmp(&stats[i].psi)
            .expect("finite psi")
            .then_with(|| stats[i].line_id.cmp(&stats[j].line_id))
    });
    let lines: Vec<LineStats> = order.iter().map(|&i| stats[i].clone()).collect();
    let residuals: Vec<Vec<f64>> = order.iter().map(|&i| residuals[i].clone()).collect();

    let n = lines.len();
    let mut cells = vec![None; n * n];
    let mut positive = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            let rho = pearson(&residuals[i], &residuals[j]);
            // within a pair, A is the line with the smaller psi
            let (psi_hi, psi_lo) = (lines[i].psi, lines[j].psi);
            let b = psi_hi / psi_lo;
            let b_rho = b * rho;
            let cell = PairCell {
                rho,
                b,
                b_rho,
                region_exists: b_rho < 1.0,
            };
            if cell.region_exists {
                positive += 1;
            }
            cells[i * n + j] = Some(cell);
            cells[j * n + i] = Some(cell);
        }
    }

    Ok(ScreenReport {
        lines,
        cells,
        positive_pairs: positive,
        total_pairs: n * (n - 1) / 2,
    })
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    (cov / (va * vb).sqrt()).clamp(-1.0, 1.0)
}

/// Joint-pricing price curve `1 + psi(n)` for one screened pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionCurve {
    /// Safer line (smaller psi) of the pair.
    pub line_a: String,
    pub line_b: String,
    pub points: Vec<(f64, f64)>,
    /// Stand-alone reference level `1 + psi_a`.
    pub ref_a: f64,
    /// Stand-alone reference level `1 + psi_b`.
    pub ref_b: f64,
    /// Critical-threshold marker, present when `b > 1` and the region
    /// exists.
    pub n_ct: Option<f64>,
}

/// Evaluates the loaded-premium curve for the pair `(id_a, id_b)` from a
/// screening report on a grid of `grid` proportions.
pub fn region_curve(
    report: &ScreenReport,
    id_a: &str,
    id_b: &str,
    risk: &RiskSpec,
    grid: usize,
) -> Result<RegionCurve, ScreenError> {
    if grid < 2 {
        return Err(ScreenError::NotEnoughData(
            "a curve grid of at least 2 points".to_string(),
        ));
    }
    let i = report
        .index_of(id_a)
        .ok_or_else(|| ScreenError::NotEnoughData(format!("line {id_a} in the report")))?;
    let j = report
        .index_of(id_b)
        .ok_or_else(|| ScreenError::NotEnoughData(format!("line {id_b} in the report")))?;
    if i == j {
        return Err(ScreenError::NotEnoughData(
            "two distinct lines for a pair curve".to_string(),
        ));
    }
    let cell = report.cell(i, j).expect("off-diagonal cell");
    let first = BusinessLine::new(&report.lines[i].line_id, report.lines[i].pi, report.lines[i].sigma)?;
    let second =
        BusinessLine::new(&report.lines[j].line_id, report.lines[j].pi, report.lines[j].sigma)?;
    let pair = LinePair::new(first, second, cell.rho)?;
    let points: Vec<(f64, f64)> = (0..grid)
        .map(|k| {
            let n = k as f64 / (grid - 1) as f64;
            let psi = pair.joint_loading(risk, n).expect("grid in [0, 1]");
            (n, 1.0 + psi)
        })
        .collect();
    let n_ct = if pair.b() > 1.0 {
        pair.critical_threshold().ok()
    } else {
        None
    };
    Ok(RegionCurve {
        line_a: pair.line_a().label().to_string(),
        line_b: pair.line_b().label().to_string(),
        points,
        ref_a: 1.0 + pair.psi_a(risk),
        ref_b: 1.0 + pair.psi_b(risk),
        n_ct,
    })
}

/// Output layout of [`render_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
}

fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders the screening report.
///
/// Text: per-line table plus the `+`/`-` matrix with a bullet diagonal.
/// CSV: a per-line block, an upper-triangle pair block, and a summary
/// block, separated by blank lines; numbers carry full double precision.
pub fn render_report(report: &ScreenReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Csv => render_csv(report),
    }
}

fn render_text(report: &ScreenReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<8} {:<34} {:>14} {:>14} {:>10} {:>8} {:>6}",
        "line", "name", "pi", "sigma", "psi", "kpss", "pass"
    )
    .unwrap();
    for l in &report.lines {
        writeln!(
            out,
            "{:<8} {:<34} {:>14.6e} {:>14.6e} {:>10.6} {:>8.4} {:>6}",
            l.line_id,
            if l.name.len() > 34 { &l.name[..34] } else { &l.name },
            l.pi,
            l.sigma,
            l.psi,
            l.kpss_statistic,
            if l.kpss_pass { "yes" } else { "NO" }
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    write!(out, "{:<8}", "").unwrap();
    for l in &report.lines {
        write!(out, " {:>6}", l.line_id).unwrap();
    }
    writeln!(out).unwrap();
    for (i, l) in report.lines.iter().enumerate() {
        write!(out, "{:<8}", l.line_id).unwrap();
        for j in 0..report.n_lines() {
            let mark = match report.cell(i, j) {
                None => "\u{2022}",
                Some(c) if c.region_exists => "+",
                Some(_) => "-",
            };
            write!(out, " {mark:>6}").unwrap();
        }
        writeln!(out).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(
        out,
        "positive pairs: {} of {} ({:.2}%)",
        report.positive_pairs,
        report.total_pairs,
        100.0 * report.positive_fraction()
    )
    .unwrap();
    out
}

fn render_csv(report: &ScreenReport) -> String {
    let mut out = String::new();
    writeln!(out, "line_id,name,pi,sigma,psi,kpss_statistic,kpss_pass").unwrap();
    for l in &report.lines {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            l.line_id,
            csv_quote(&l.name),
            fmt_full(l.pi),
            fmt_full(l.sigma),
            fmt_full(l.psi),
            fmt_full(l.kpss_statistic),
            l.kpss_pass
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "line_hi,line_lo,rho,b,b_rho,region_exists").unwrap();
    for i in 0..report.n_lines() {
        for j in (i + 1)..report.n_lines() {
            let c = report.cell(i, j).expect("off-diagonal cell");
            writeln!(
                out,
                "{},{},{},{},{},{}",
                report.lines[i].line_id,
                report.lines[j].line_id,
                fmt_full(c.rho),
                fmt_full(c.b),
                fmt_full(c.b_rho),
                c.region_exists
            )
            .unwrap();
        }
    }
    writeln!(out).unwrap();
    writeln!(out, "positive_pairs,total_pairs,positive_fraction").unwrap();
    writeln!(
        out,
        "{},{},{}",
        report.positive_pairs,
        report.total_pairs,
        fmt_full(report.positive_fraction())
    )
    .unwrap();
    out
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Parses the per-line block of a CSV report back into
/// `(line_id, pi, sigma, psi)` rows; the format contract for downstream
/// tooling.
pub fn parse_per_line_block(csv_text: &str) -> Result<Vec<(String, f64, f64, f64)>, ScreenError> {
    let mut rows = Vec::new();
    for (idx, line) in csv_text.lines().enumerate() {
        let row = idx + 1;
        if idx == 0 {
            if !line.starts_with("line_id,") {
                return Err(ScreenError::MalformedRow {
                    row,
                    message: "expected the per-line header".to_string(),
                });
            }
            continue;
        }
        if line.is_empty() {
            break; // end of the per-line block
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 7 {
            return Err(ScreenError::MalformedRow {
                row,
                message: format!("expected 7 cells, got {}", cells.len()),
            });
        }
        let parse = |s: &str| -> Result<f64, ScreenError> {
            s.parse().map_err(|_| ScreenError::MalformedRow {
                row,
                message: format!("`{s}` is not a number"),
            })
        };
        rows.push((
            cells[0].to_string(),
            parse(cells[2])?,
            parse(cells[3])?,
            parse(cells[4])?,
        ));
    }
    Ok(rows)
}
