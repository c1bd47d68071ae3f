//! Screening of aggregate-loss time series for joint-pricing candidates.
//!
//! The pipeline ingests long-format loss data, removes a linear trend
//! from each series, checks level stationarity of the residuals with the
//! KPSS statistic, computes per-line loadings `psi = sigma / pi` and
//! pairwise correlations, and assesses the competitiveness condition
//! `b * rho < 1` for every pair.

mod ingest;
mod report;
mod stats;

pub use ingest::{ingest_losses, IngestReport, LossSeries, Period, RejectedLine};
pub use report::{
    pairwise_screen, parse_per_line_block, region_curve, render_report, LineStats, PairCell,
    RegionCurve, ReportFormat, ScreenReport,
};
pub use stats::{detrend, kpss_statistic, Trend, KPSS_5PCT_CRITICAL};

use thiserror::Error;

use crate::pricing::PricingError;

/// Errors from loss-series ingestion and screening.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScreenError {
    /// A CSV row could not be parsed; `row` is 1-based including the
    /// header.
    #[error("losses csv row {row}: {message}")]
    MalformedRow { row: usize, message: String },
    /// Aggregate losses must be strictly positive.
    #[error("losses csv row {row}: non-positive loss {value} for line {line_id}")]
    NonPositiveLoss {
        row: usize,
        line_id: String,
        value: f64,
    },
    /// The same (period, line) cell appeared twice.
    #[error("duplicate period {period} for line {line_id}")]
    DuplicatePeriod { line_id: String, period: String },
    /// A series is too short or constant where variation is required.
    #[error("degenerate series {line_id}: {reason}")]
    DegenerateSeries { line_id: String, reason: String },
    /// Fewer than two usable series, or no common period coverage.
    #[error("screening needs {0}")]
    NotEnoughData(String),
    #[error(transparent)]
    Pricing(#[from] PricingError),
}
