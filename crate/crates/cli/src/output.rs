//! Error-to-exit-code mapping and deterministic file output helpers.

use std::fmt;
use std::path::{Path, PathBuf};

use jointprice_core::market::MarketError;
use jointprice_core::mortality::MortalityError;
use jointprice_core::pricing::PricingError;
use jointprice_core::screen::ScreenError;

/// Exit status 1: configuration or input validation failed.
/// Exit status 2: a computation failed (non-convergence, degenerate data).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Computation(_) => 2,
        }
    }

    pub fn validation(err: impl fmt::Display) -> Self {
        CliError::Validation(err.to_string())
    }

    pub fn computation(err: impl fmt::Display) -> Self {
        CliError::Computation(err.to_string())
    }
}

impl From<PricingError> for CliError {
    fn from(err: PricingError) -> Self {
        CliError::Validation(err.to_string())
    }
}

impl From<MarketError> for CliError {
    fn from(err: MarketError) -> Self {
        match err {
            MarketError::NoConvergence { .. } | MarketError::InfeasibleDemand { .. } => {
                CliError::Computation(err.to_string())
            }
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl From<MortalityError> for CliError {
    fn from(err: MortalityError) -> Self {
        match err {
            MortalityError::DegenerateFactor(_) | MortalityError::DegenerateSample(_) => {
                CliError::Computation(err.to_string())
            }
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl From<ScreenError> for CliError {
    fn from(err: ScreenError) -> Self {
        match err {
            ScreenError::DegenerateSeries { .. } => CliError::Computation(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Validation(format!("io error: {err}"))
    }
}

/// Full-precision float formatting (17 significant digits) so emitted
/// CSVs round-trip exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `contents` under `dir`, creating the directory first.
pub fn write_output(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    Ok(path)
}

/// Summary table layout selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Text,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(CliError::Validation(format!(
                "format must be `csv` or `text`, got `{other}`"
            ))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "txt",
        }
    }
}

/// Key-value summary rendered as a two-column CSV or an aligned text
/// table, preserving insertion order.
#[derive(Debug, Default)]
pub struct Summary {
    rows: Vec<(String, String)>,
}

impl Summary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        self.rows.push((key.to_string(), value.to_string()));
    }

    pub fn push_f64(&mut self, key: &str, value: f64) {
        self.rows.push((key.to_string(), fmt_f64(value)));
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut out = String::new();
        match format {
            OutputFormat::Csv => {
                out.push_str("key,value\n");
                for (k, v) in &self.rows {
                    out.push_str(&format!("{k},{v}\n"));
                }
            }
            OutputFormat::Text => {
                let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.rows {
                    out.push_str(&format!("{k:<width$}  {v}\n"));
                }
            }
        }
        out
    }
}
