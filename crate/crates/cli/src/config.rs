//! Flat key-value config files mirroring the CLI flags.
//!
//! One `key = value` pair per line, `#` comments, keys use `_` or `-`
//! interchangeably. Flags override file entries; file entries override
//! built-in defaults. The same format carries pair-statistics files
//! (written by `simulate`, consumed by `region`, `decide` and `sweep`).

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::output::CliError;

/// Every key any subcommand understands; unknown keys are rejected so
/// typos surface instead of silently using defaults.
pub const KNOWN_KEYS: &[&str] = &[
    "out",
    "format",
    "seed",
    "zeta",
    "gamma",
    "grid",
    "pi_a",
    "sigma_a",
    "pi_b",
    "sigma_b",
    "rho",
    "stats",
    "psi_star",
    "demand_a",
    "demand_b",
    "insurers_a",
    "insurers_b",
    "reaction_a",
    "reaction_b",
    "demand_model",
    "total_market",
    "scenarios",
    "data_a",
    "data_b",
    "n_sims",
    "entry_age_a",
    "entry_age_b",
    "term",
    "benefit_a",
    "benefit_b",
    "discount_factor",
    "calibrate_var",
    "dump_scenarios",
    "input",
    "bandwidth",
    "curve_pair",
];

/// Parsed key-value file with normalized keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues {
    entries: BTreeMap<String, String>,
}

impl KeyValues {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

/// Parses the flat key-value format. Duplicate keys are an error so a
/// recipe cannot silently contradict itself.
pub fn parse_key_values(text: &str) -> Result<KeyValues, String> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`, got `{line}`", idx + 1))?;
        let key = normalize_key(key.trim());
        if key.is_empty() {
            return Err(format!("line {}: empty key", idx + 1));
        }
        let value = value.trim().to_string();
        if entries.insert(key.clone(), value).is_some() {
            return Err(format!("line {}: duplicate key `{key}`", idx + 1));
        }
    }
    Ok(KeyValues { entries })
}

pub fn normalize_key(key: &str) -> String {
    key.to_ascii_lowercase().replace('-', "_")
}

/// Loads a config file and rejects keys no subcommand understands.
pub fn load_config(path: Option<&Path>) -> Result<KeyValues, CliError> {
    let Some(path) = path else {
        return Ok(KeyValues::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Validation(format!("cannot read config {}: {e}", path.display()))
    })?;
    let kv = parse_key_values(&text)
        .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))?;
    for key in kv.keys() {
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::Validation(format!(
                "config {}: unknown key `{key}`",
                path.display()
            )));
        }
    }
    Ok(kv)
}

/// Loads a pair-statistics file (pi_a, sigma_a, pi_b, sigma_b, rho).
pub fn load_stats(path: &Path) -> Result<KeyValues, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read stats {}: {e}", path.display())))?;
    parse_key_values(&text)
        .map_err(|e| CliError::Validation(format!("stats {}: {e}", path.display())))
}

/// Flag-over-file-over-default resolution for one subcommand.
pub struct Resolver {
    config: KeyValues,
    stats: KeyValues,
}

impl Resolver {
    pub fn new(config: KeyValues) -> Self {
        Self {
            config,
            stats: KeyValues::default(),
        }
    }

    /// Adds a secondary key-value source consulted after the config file
    /// (used for pair-statistics files).
    pub fn with_stats(mut self, stats: KeyValues) -> Self {
        self.stats = stats;
        self
    }

    fn lookup(&self, key: &str) -> Option<&str> {
        self.stats.get(key).or_else(|| self.config.get(key))
    }

    /// Flag value, else file value, else default.
    pub fn get<T>(&self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        match self.optional(key, flag)? {
            Some(v) => Ok(v),
            None => Ok(default),
        }
    }

    /// Flag value, else file value, else an error naming the key.
    pub fn require<T>(&self, key: &str, flag: Option<T>) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        self.optional(key, flag)?.ok_or_else(|| {
            CliError::Validation(format!("missing required parameter `{key}`"))
        })
    }

    /// Flag value, else file value, else `None`.
    pub fn optional<T>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(Some(v));
        }
        match self.lookup(key) {
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                CliError::Validation(format!("parameter `{key}` = `{raw}`: {e}"))
            }),
            None => Ok(None),
        }
    }
}
