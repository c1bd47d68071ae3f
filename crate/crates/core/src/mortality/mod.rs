//! Two-population stochastic mortality: fitting, simulation, present
//! values and loading-weight calibration.
//!
//! Central death rates follow the two-population model
//!
//! ```text
//! m_i(x, t) = exp(alpha_i[x] + beta_i[x]*kappa_i[t] + beta[x]*kappa[t])
//! ```
//!
//! with a shared period factor `beta*kappa` and population-specific
//! factors, estimated by singular value decomposition. The three period
//! indices `(kappa_a, kappa_b, kappa)` advance as a correlated random
//! walk; each simulated scenario yields survival paths, per-policy
//! present values for a term annuity and a term assurance, and sample
//! moments feeding the pricing layer.
//!
//! Identification follows the usual convention: every `beta` sums to 1
//! and every `kappa` sums to 0 over the fitting window.

mod calibrate;
mod fit;
mod simulate;
pub mod synthetic;

pub use calibrate::{calibrate_gamma, empirical_quantile, summarize, var_loading_curve};
pub use fit::fit_li_lee;
pub use simulate::{present_value, simulate_scenarios, Scenario, ScenarioSet};

use std::io::{Read, Write};

use thiserror::Error;

use crate::pricing::PricingError;

/// Errors from mortality data handling, fitting, simulation or
/// calibration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MortalityError {
    /// Malformed mortality CSV; `row` is 1-based including the header.
    #[error("mortality csv row {row}: {message}")]
    CsvFormat { row: usize, message: String },
    /// Dataset contents violate an invariant (positivity, shape).
    #[error("invalid mortality data: {0}")]
    InvalidData(String),
    /// The two datasets cannot be fitted together.
    #[error("dataset mismatch: {0}")]
    DataMismatch(String),
    /// A factor matrix is numerically rank-0 where structure is required,
    /// or cannot be normalized to the identification constraints.
    #[error("degenerate factor: {0}")]
    DegenerateFactor(String),
    /// Parameter outside its domain (counts, levels, product terms).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A product needs ages or years the fitted range does not cover.
    #[error("product out of fitted range: {0}")]
    OutOfRange(String),
    /// Sample sets too small or with zero variance.
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error(transparent)]
    Pricing(#[from] PricingError),
}

/// The two fitted populations; A backs the annuity line, B the assurance
/// line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Population {
    A,
    B,
}

impl Population {
    pub(crate) fn index(self) -> usize {
        match self {
            Population::A => 0,
            Population::B => 1,
        }
    }
}

/// One population's central death rates on a full age-by-year grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MortalityDataset {
    population_id: String,
    first_age: u32,
    first_year: i32,
    /// `rates[age_index][year_index]`, all strictly positive.
    rates: Vec<Vec<f64>>,
}

impl MortalityDataset {
    /// Validates a full positive matrix over contiguous ages and years.
    pub fn new(
        population_id: impl Into<String>,
        first_age: u32,
        first_year: i32,
        rates: Vec<Vec<f64>>,
    ) -> Result<Self, MortalityError> {
        if rates.is_empty() || rates[0].is_empty() {
            return Err(MortalityError::InvalidData(
                "empty rate matrix".to_string(),
            ));
        }
        let n_years = rates[0].len();
        for (i, row) in rates.iter().enumerate() {
            if row.len() != n_years {
                return Err(MortalityError::InvalidData(format!(
                    "age {} has {} rates, expected {}",
                    first_age + i as u32,
                    row.len(),
                    n_years
                )));
            }
            for (j, &m) in row.iter().enumerate() {
                if !m.is_finite() || m <= 0.0 {
                    return Err(MortalityError::InvalidData(format!(
                        "rate at age {}, year {} must be positive and finite, got {m}",
                        first_age + i as u32,
                        first_year + j as i32
                    )));
                }
            }
        }
        Ok(Self {
            population_id: population_id.into(),
            first_age,
            first_year,
            rates,
        })
    }

    /// Reads the age-by-year CSV: header `age,<year>,<year>,...`, one row
    /// per age with strictly increasing contiguous ages, cells holding
    /// central death rates.
    pub fn from_csv<R: Read>(
        population_id: impl Into<String>,
        reader: R,
    ) -> Result<Self, MortalityError> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let mut records = csv_reader.records();

        let header = records
            .next()
            .ok_or_else(|| MortalityError::CsvFormat {
                row: 1,
                message: "missing header".to_string(),
            })?
            .map_err(|e| MortalityError::CsvFormat {
                row: 1,
                message: e.to_string(),
            })?;
        if header.len() < 2 {
            return Err(MortalityError::CsvFormat {
                row: 1,
                message: "header needs an age column and at least one year".to_string(),
            });
        }
        if !header[0].eq_ignore_ascii_case("age") {
            return Err(MortalityError::CsvFormat {
                row: 1,
                message: format!("first header column must be `age`, got `{}`", &header[0]),
            });
        }
        let mut first_year = 0i32;
        for (j, cell) in header.iter().skip(1).enumerate() {
            let year: i32 = cell.parse().map_err(|_| MortalityError::CsvFormat {
                row: 1,
                message: format!("year column `{cell}` is not an integer"),
            })?;
            if j == 0 {
                first_year = year;
            } else if year != first_year + j as i32 {
                return Err(MortalityError::CsvFormat {
                    row: 1,
                    message: format!(
                        "years must be contiguous and increasing; expected {}, got {year}",
                        first_year + j as i32
                    ),
                });
            }
        }
        let n_years = header.len() - 1;

        let mut first_age = 0u32;
        let mut rates: Vec<Vec<f64>> = Vec::new();
        for (idx, record) in records.enumerate() {
            let row = idx + 2;
            let record = record.map_err(|e| MortalityError::CsvFormat {
                row,
                message: e.to_string(),
            })?;
            if record.len() == 1 && record[0].is_empty() {
                continue; // trailing blank line
            }
            if record.len() != n_years + 1 {
                return Err(MortalityError::CsvFormat {
                    row,
                    message: format!("expected {} cells, got {}", n_years + 1, record.len()),
                });
            }
            let age: u32 = record[0].parse().map_err(|_| MortalityError::CsvFormat {
                row,
                message: format!("age `{}` is not a nonnegative integer", &record[0]),
            })?;
            if rates.is_empty() {
                first_age = age;
            } else if age != first_age + rates.len() as u32 {
                return Err(MortalityError::CsvFormat {
                    row,
                    message: format!(
                        "ages must be contiguous and increasing; expected {}, got {age}",
                        first_age + rates.len() as u32
                    ),
                });
            }
            let mut row_rates = Vec::with_capacity(n_years);
            for cell in record.iter().skip(1) {
                let m: f64 = cell.parse().map_err(|_| MortalityError::CsvFormat {
                    row,
                    message: format!("rate `{cell}` is not a number"),
                })?;
                row_rates.push(m);
            }
            rates.push(row_rates);
        }
        Self::new(population_id, first_age, first_year, rates)
    }

    /// Writes the same CSV layout [`from_csv`](Self::from_csv) reads.
    pub fn write_csv<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        write!(writer, "age")?;
        for j in 0..self.n_years() {
            write!(writer, ",{}", self.first_year + j as i32)?;
        }
        writeln!(writer)?;
        for (i, row) in self.rates.iter().enumerate() {
            write!(writer, "{}", self.first_age + i as u32)?;
            for &m in row {
                write!(writer, ",{:.16e}", m)?;
            }
            writeln!(writer)?;
        }
        Ok(())
    }

    pub fn population_id(&self) -> &str {
        &self.population_id
    }

    pub fn first_age(&self) -> u32 {
        self.first_age
    }

    pub fn last_age(&self) -> u32 {
        self.first_age + (self.rates.len() - 1) as u32
    }

    pub fn first_year(&self) -> i32 {
        self.first_year
    }

    pub fn last_year(&self) -> i32 {
        self.first_year + (self.n_years() - 1) as i32
    }

    pub fn n_ages(&self) -> usize {
        self.rates.len()
    }

    pub fn n_years(&self) -> usize {
        self.rates[0].len()
    }

    /// Central death rate by grid index.
    pub fn rate(&self, age_index: usize, year_index: usize) -> f64 {
        self.rates[age_index][year_index]
    }
}

/// Fitted two-population model with random-walk dynamics for the period
/// indices, ordered `(kappa_a, kappa_b, kappa_common)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiLeeParams {
    pub(crate) first_age: u32,
    pub(crate) first_year: i32,
    /// Per population: age profile of log rates.
    pub alpha: [Vec<f64>; 2],
    /// Per population: age loadings of the specific factor, each summing to 1.
    pub beta_specific: [Vec<f64>; 2],
    /// Per population: specific period index, each summing to 0.
    pub kappa_specific: [Vec<f64>; 2],
    /// Shared age loadings, summing to 1.
    pub beta_common: Vec<f64>,
    /// Shared period index, summing to 0.
    pub kappa_common: Vec<f64>,
    /// Random-walk drift of `(kappa_a, kappa_b, kappa_common)`.
    pub drift: [f64; 3],
    /// Innovation covariance of the same triple; symmetric PSD.
    pub covariance: [[f64; 3]; 3],
    /// Whether an insignificant specific drift was zeroed during fitting.
    pub specific_drift_zeroed: [bool; 2],
}

impl LiLeeParams {
    pub fn first_age(&self) -> u32 {
        self.first_age
    }

    pub fn last_age(&self) -> u32 {
        self.first_age + (self.n_ages() - 1) as u32
    }

    pub fn first_year(&self) -> i32 {
        self.first_year
    }

    pub fn n_ages(&self) -> usize {
        self.beta_common.len()
    }

    pub fn n_years(&self) -> usize {
        self.kappa_common.len()
    }

    /// Fitted central death rate on the estimation window.
    pub fn fitted_rate(&self, pop: Population, age_index: usize, year_index: usize) -> f64 {
        let i = pop.index();
        (self.alpha[i][age_index]
            + self.beta_specific[i][age_index] * self.kappa_specific[i][year_index]
            + self.beta_common[age_index] * self.kappa_common[year_index])
            .exp()
    }

    /// Checks the identification constraints (`sum beta = 1`,
    /// `sum kappa = 0`) to `tol`.
    pub fn identification_residual(&self) -> f64 {
        let sum = |v: &[f64]| v.iter().sum::<f64>();
        let mut worst: f64 = (sum(&self.beta_common) - 1.0).abs();
        worst = worst.max(sum(&self.kappa_common).abs());
        for i in 0..2 {
            worst = worst.max((sum(&self.beta_specific[i]) - 1.0).abs());
            worst = worst.max(sum(&self.kappa_specific[i]).abs());
        }
        worst
    }
}

/// Kind of life contingency product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    /// Pays `benefit` at the end of each survived year for `term` years.
    TermAnnuity,
    /// Pays `benefit` at the end of the year of death within `term` years.
    TermAssurance,
}

/// A priced product: entry age, term, benefit level and flat yearly
/// discount factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpec {
    pub kind: ProductKind,
    pub entry_age: u32,
    pub term: u32,
    pub benefit: f64,
    pub discount_factor: f64,
}

impl ProductSpec {
    pub fn new(
        kind: ProductKind,
        entry_age: u32,
        term: u32,
        benefit: f64,
        discount_factor: f64,
    ) -> Result<Self, MortalityError> {
        if term < 1 {
            return Err(MortalityError::InvalidParameter(
                "term must be at least 1 year".to_string(),
            ));
        }
        if !benefit.is_finite() || benefit <= 0.0 {
            return Err(MortalityError::InvalidParameter(format!(
                "benefit must be positive, got {benefit}"
            )));
        }
        if !discount_factor.is_finite() || discount_factor <= 0.0 || discount_factor > 1.0 {
            return Err(MortalityError::InvalidParameter(format!(
                "discount factor must lie in (0, 1], got {discount_factor}"
            )));
        }
        Ok(Self {
            kind,
            entry_age,
            term,
            benefit,
            discount_factor,
        })
    }

    /// Which population's mortality drives this product.
    pub fn population(&self) -> Population {
        match self.kind {
            ProductKind::TermAnnuity => Population::A,
            ProductKind::TermAssurance => Population::B,
        }
    }
}

/// Sample moments of paired present-value simulations.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSummary {
    pub pi_a: f64,
    pub sigma_a: f64,
    pub pi_b: f64,
    pub sigma_b: f64,
    pub rho: f64,
    pub sample_count: usize,
    pub seed: u64,
}
