//! Long-format loss CSV ingestion.
//!
//! Contract: UTF-8 CSV with header `period,line_id,line_name,loss`, one
//! row per observation, periods as half-year labels like `2006-H2`.
//! Lines missing any period covered by the file (introduced or removed
//! during the observation window) are rejected with a per-line
//! diagnostic rather than failing the whole ingestion.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use super::ScreenError;

/// Minimum observations a series needs to be screened.
pub(crate) const MIN_OBSERVATIONS: usize = 8;

/// Half-year period label, ordered by year then half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Period {
    pub year: i32,
    /// 1 or 2.
    pub half: u8,
}

impl FromStr for Period {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || format!("period `{s}` does not match YYYY-H1/YYYY-H2");
        let (year, half) = s.split_once("-H").ok_or_else(err)?;
        if year.len() != 4 {
            return Err(err());
        }
        let year: i32 = year.parse().map_err(|_| err())?;
        let half: u8 = half.parse().map_err(|_| err())?;
        if half != 1 && half != 2 {
            return Err(err());
        }
        Ok(Period { year, half })
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-H{}", self.year, self.half)
    }
}

/// One business line's aggregate-loss series, sorted by period.
#[derive(Debug, Clone, PartialEq)]
pub struct LossSeries {
    pub line_id: String,
    pub name: String,
    pub periods: Vec<Period>,
    pub values: Vec<f64>,
}

impl LossSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A line excluded from screening, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectedLine {
    pub line_id: String,
    pub reason: String,
}

/// Ingestion output: accepted series plus per-line diagnostics.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IngestReport {
    pub series: Vec<LossSeries>,
    pub rejected: Vec<RejectedLine>,
    pub warnings: Vec<String>,
}

/// Parses long-format loss CSV.
///
/// Hard errors name the offending row: malformed cells, non-positive
/// losses, duplicate (period, line) pairs. Gaps relative to the file's
/// full period coverage demote a line to [`IngestReport::rejected`].
pub fn ingest_losses<R: Read>(reader: R) -> Result<IngestReport, ScreenError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);

    // line_id -> (name, period -> loss), insertion-ordered by first appearance
    let mut order: Vec<String> = Vec::new();
    let mut lines: BTreeMap<String, (String, BTreeMap<Period, f64>)> = BTreeMap::new();
    let mut all_periods: BTreeMap<Period, ()> = BTreeMap::new();

    let mut saw_header = false;
    for (idx, record) in csv_reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| ScreenError::MalformedRow {
            row,
            message: e.to_string(),
        })?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if !saw_header {
            let expected = ["period", "line_id", "line_name", "loss"];
            let ok = record.len() == 4
                && record
                    .iter()
                    .zip(expected)
                    .all(|(cell, name)| cell.eq_ignore_ascii_case(name));
            if !ok {
                return Err(ScreenError::MalformedRow {
                    row,
                    message: format!(
                        "header must be `period,line_id,line_name,loss`, got `{}`",
                        record.iter().collect::<Vec<_>>().join(",")
                    ),
                });
            }
            saw_header = true;
            continue;
        }
        if record.len() != 4 {
            return Err(ScreenError::MalformedRow {
                row,
                message: format!("expected 4 cells, got {}", record.len()),
            });
        }
        let period: Period = record[0].parse().map_err(|message| ScreenError::MalformedRow {
            row,
            message,
        })?;
        let line_id = record[1].to_string();
        if line_id.is_empty() {
            return Err(ScreenError::MalformedRow {
                row,
                message: "empty line_id".to_string(),
            });
        }
        let name = record[2].to_string();
        let loss: f64 = record[3].parse().map_err(|_| ScreenError::MalformedRow {
            row,
            message: format!("loss `{}` is not a number", &record[3]),
        })?;
        if !loss.is_finite() || loss <= 0.0 {
            return Err(ScreenError::NonPositiveLoss {
                row,
                line_id,
                value: loss,
            });
        }
        all_periods.insert(period, ());
        let entry = lines.entry(line_id.clone()).or_insert_with(|| {
            order.push(line_id.clone());
            (name.clone(), BTreeMap::new())
        });
        if entry.1.insert(period, loss).is_some() {
            return Err(ScreenError::DuplicatePeriod {
                line_id,
                period: period.to_string(),
            });
        }
    }

    let mut report = IngestReport::default();
    if !saw_header {
        report.warnings.push("empty input: no rows ingested".to_string());
        return Ok(report);
    }
    if lines.is_empty() {
        report.warnings.push("no data rows after the header".to_string());
        return Ok(report);
    }

    let full_coverage = all_periods.len();
    for line_id in order {
        let (name, cells) = lines.remove(&line_id).expect("ordered ids exist");
        if cells.len() < full_coverage {
            let missing: Vec<String> = all_periods
                .keys()
                .filter(|p| !cells.contains_key(p))
                .take(3)
                .map(Period::to_string)
                .collect();
            report.rejected.push(RejectedLine {
                line_id,
                reason: format!(
                    "covers {} of {} periods (missing {}{})",
                    cells.len(),
                    full_coverage,
                    missing.join(", "),
                    if cells.len() + 3 < full_coverage { ", ..." } else { "" }
                ),
            });
            continue;
        }
        if cells.len() < MIN_OBSERVATIONS {
            report.rejected.push(RejectedLine {
                line_id,
                reason: format!(
                    "needs at least {MIN_OBSERVATIONS} observations, has {}",
                    cells.len()
                ),
            });
            continue;
        }
        let (periods, values) = cells.into_iter().unzip();
        report.series.push(LossSeries {
            line_id,
            name,
            periods,
            values,
        });
    }
    Ok(report)
}
