//! Sample moments of paired present values, empirical value-at-risk
//! loading curves, and calibration of the MSD weight `gamma` against
//! them.

use super::{MortalityError, SimulationSummary};
use crate::pricing::{BusinessLine, LinePair, RiskSpec};

/// Sample means, standard deviations (denominator `n - 1`) and Pearson
/// correlation of scenario-paired value sets.
pub fn summarize(
    values_a: &[f64],
    values_b: &[f64],
    seed: u64,
) -> Result<SimulationSummary, MortalityError> {
    if values_a.len() != values_b.len() {
        return Err(MortalityError::DegenerateSample(format!(
            "sample sets must be paired: {} vs {} values",
            values_a.len(),
            values_b.len()
        )));
    }
    let n = values_a.len();
    if n < 2 {
        return Err(MortalityError::DegenerateSample(format!(
            "need at least 2 paired samples, got {n}"
        )));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let pi_a = mean(values_a);
    let pi_b = mean(values_b);
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    let mut cov = 0.0;
    for (&a, &b) in values_a.iter().zip(values_b) {
        var_a += (a - pi_a) * (a - pi_a);
        var_b += (b - pi_b) * (b - pi_b);
        cov += (a - pi_a) * (b - pi_b);
    }
    let denom = (n - 1) as f64;
    let sigma_a = (var_a / denom).sqrt();
    let sigma_b = (var_b / denom).sqrt();
    if sigma_a == 0.0 || sigma_b == 0.0 {
        return Err(MortalityError::DegenerateSample(
            "constant sample set has undefined standard deviation".to_string(),
        ));
    }
    Ok(SimulationSummary {
        pi_a,
        sigma_a,
        pi_b,
        sigma_b,
        rho: cov / denom / (sigma_a * sigma_b),
        sample_count: n,
        seed,
    })
}

/// Empirical quantile with linear interpolation between order statistics
/// (the `h = (n-1)p` convention).
pub fn empirical_quantile(values: &[f64], p: f64) -> Result<f64, MortalityError> {
    if values.is_empty() {
        return Err(MortalityError::DegenerateSample(
            "quantile of an empty sample".to_string(),
        ));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(MortalityError::InvalidParameter(format!(
            "quantile level {p} outside [0, 1]"
        )));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(MortalityError::DegenerateSample(
            "quantile of a sample containing NaN".to_string(),
        ));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo + 1 >= sorted.len() {
        return Ok(sorted[sorted.len() - 1]);
    }
    Ok(sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]))
}

fn validate_levels(zeta: f64, var_level: f64, n_grid: usize) -> Result<(), MortalityError> {
    if !zeta.is_finite() || zeta <= 0.0 || zeta >= 1.0 {
        return Err(MortalityError::InvalidParameter(format!(
            "zeta must lie in (0, 1), got {zeta}"
        )));
    }
    if !var_level.is_finite() || var_level <= 0.0 || var_level >= 1.0 {
        return Err(MortalityError::InvalidParameter(format!(
            "var level must lie in (0, 1), got {var_level}"
        )));
    }
    if n_grid < 2 {
        return Err(MortalityError::InvalidParameter(
            "grid needs at least 2 points".to_string(),
        ));
    }
    Ok(())
}

/// Empirical value-at-risk joint loading over a grid of portfolio
/// proportions `n`.
///
/// At each `n`, the per-unit portfolio value is
/// `w = ((1-n)*v_a + n*v_b) / ((1-n)*pi_a + n*pi_b)` and the loading is
/// `zeta * (VaR_p[w] - 1)`, mirroring the risk-reduction equation solved
/// by the MSD loading.
pub fn var_loading_curve(
    values_a: &[f64],
    values_b: &[f64],
    zeta: f64,
    var_level: f64,
    n_grid: usize,
) -> Result<Vec<(f64, f64)>, MortalityError> {
    validate_levels(zeta, var_level, n_grid)?;
    let summary = summarize(values_a, values_b, 0)?;
    if summary.pi_a <= 0.0 || summary.pi_b <= 0.0 {
        return Err(MortalityError::DegenerateSample(
            "per-unit portfolio needs positive mean values".to_string(),
        ));
    }
    let mut curve = Vec::with_capacity(n_grid);
    let mut portfolio = vec![0.0f64; values_a.len()];
    for j in 0..n_grid {
        let n = j as f64 / (n_grid - 1) as f64;
        let denom = (1.0 - n) * summary.pi_a + n * summary.pi_b;
        for (w, (&a, &b)) in portfolio.iter_mut().zip(values_a.iter().zip(values_b)) {
            *w = ((1.0 - n) * a + n * b) / denom;
        }
        let q = empirical_quantile(&portfolio, var_level)?;
        curve.push((n, zeta * (q - 1.0)));
    }
    Ok(curve)
}

/// Calibrates the MSD weight `gamma` so the closed-form joint loading
/// tracks the empirical value-at-risk loading curve.
///
/// Minimizes the maximum absolute deviation over the `n` grid; the MSD
/// curve is linear in `gamma`, so the objective is convex and a ternary
/// search is exact to floating precision. Returns an error when the
/// samples are degenerate (zero variance, perfectly correlated, or a
/// nonpositive optimum).
pub fn calibrate_gamma(
    values_a: &[f64],
    values_b: &[f64],
    zeta: f64,
    var_level: f64,
    n_grid: usize,
) -> Result<f64, MortalityError> {
    validate_levels(zeta, var_level, n_grid)?;
    let summary = summarize(values_a, values_b, 0)?;
    if summary.rho >= 1.0 - 1e-12 {
        return Err(MortalityError::DegenerateSample(
            "samples are numerically perfectly correlated".to_string(),
        ));
    }
    let line_a = BusinessLine::new("a", summary.pi_a, summary.sigma_a)?;
    let line_b = BusinessLine::new("b", summary.pi_b, summary.sigma_b)?;
    let pair = LinePair::new(line_a, line_b, summary.rho)?;
    let unit_risk = RiskSpec::new(zeta, 1.0)?;

    let var_curve = var_loading_curve(values_a, values_b, zeta, var_level, n_grid)?;
    // per-grid MSD loadings at gamma = 1; keep the caller's orientation
    // (n is the proportion of the second sample set) even if the pair
    // constructor swapped the lines
    let msd_unit: Vec<f64> = var_curve
        .iter()
        .map(|&(n, _)| {
            let oriented = if pair.swapped() { 1.0 - n } else { n };
            pair.joint_loading(&unit_risk, oriented)
                .expect("grid proportions lie in [0, 1]")
        })
        .collect();

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (&f, &(_, g)) in msd_unit.iter().zip(&var_curve) {
        if f > 0.0 {
            let r = g / f;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(MortalityError::DegenerateSample(
            "MSD loading vanishes on the whole grid".to_string(),
        ));
    }
    let objective = |gamma: f64| -> f64 {
        msd_unit
            .iter()
            .zip(&var_curve)
            .map(|(&f, &(_, g))| (gamma * f - g).abs())
            .fold(0.0, f64::max)
    };
    let (mut a, mut b) = (lo, hi);
    for _ in 0..300 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if objective(m1) <= objective(m2) {
            b = m2;
        } else {
            a = m1;
        }
    }
    let gamma = 0.5 * (a + b);
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(MortalityError::DegenerateSample(format!(
            "calibrated gamma {gamma} is not positive"
        )));
    }
    Ok(gamma)
}
