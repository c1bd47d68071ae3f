//! Linear detrending and the KPSS level-stationarity statistic.

use super::ScreenError;

/// 5% critical value of the KPSS level-stationarity statistic.
pub const KPSS_5PCT_CRITICAL: f64 = 0.463;

/// Fitted linear trend `value ~ intercept + slope * t` on the 0-based
/// time index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trend {
    pub slope: f64,
    pub intercept: f64,
}

/// Ordinary-least-squares detrending; residuals sum to ~0 by
/// construction.
pub fn detrend(values: &[f64]) -> (Vec<f64>, Trend) {
    let n = values.len();
    if n < 2 {
        let trend = Trend {
            slope: 0.0,
            intercept: values.first().copied().unwrap_or(0.0),
        };
        return (vec![0.0; n], trend);
    }
    let t_mean = (n - 1) as f64 / 2.0;
    let y_mean = values.iter().sum::<f64>() / n as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (t, &y) in values.iter().enumerate() {
        let dt = t as f64 - t_mean;
        sxy += dt * (y - y_mean);
        sxx += dt * dt;
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * t_mean;
    let residuals = values
        .iter()
        .enumerate()
        .map(|(t, &y)| y - (intercept + slope * t as f64))
        .collect();
    (residuals, Trend { slope, intercept })
}

/// Default Bartlett bandwidth `floor(4 * (T/100)^(1/4))`.
pub fn default_bandwidth(n: usize) -> usize {
    (4.0 * (n as f64 / 100.0).powf(0.25)).floor() as usize
}

/// KPSS level-stationarity statistic of a residual series.
///
/// `eta = T^-2 * sum_t S_t^2 / s2(l)` with `S_t` the partial sums of the
/// demeaned series and `s2(l)` the Bartlett-kernel long-run variance at
/// bandwidth `l` (defaulting to `floor(4 * (T/100)^(1/4))`). The null
/// hypothesis is stationarity; `pass_5pct` is true when the statistic
/// stays below the 5% critical value 0.463.
pub fn kpss_statistic(
    residuals: &[f64],
    bandwidth: Option<usize>,
) -> Result<(f64, bool), ScreenError> {
    let n = residuals.len();
    if n < 8 {
        return Err(ScreenError::NotEnoughData(format!(
            "at least 8 observations for the KPSS statistic, got {n}"
        )));
    }
    let mean = residuals.iter().sum::<f64>() / n as f64;
    let demeaned: Vec<f64> = residuals.iter().map(|v| v - mean).collect();
    let gamma0 = demeaned.iter().map(|e| e * e).sum::<f64>() / n as f64;
    if gamma0 <= 0.0 {
        return Err(ScreenError::DegenerateSeries {
            line_id: String::new(),
            reason: "zero-variance residuals".to_string(),
        });
    }
    let bandwidth = bandwidth.unwrap_or_else(|| default_bandwidth(n)).min(n - 1);
    let mut long_run = gamma0;
    for j in 1..=bandwidth {
        let mut gamma_j = 0.0;
        for t in j..n {
            gamma_j += demeaned[t] * demeaned[t - j];
        }
        gamma_j /= n as f64;
        let weight = 1.0 - j as f64 / (bandwidth + 1) as f64;
        long_run += 2.0 * weight * gamma_j;
    }
    // rounded-off or pathological long-run variance floors at a tiny
    // positive multiple of gamma0
    let long_run = long_run.max(1e-12 * gamma0);

    let mut partial = 0.0;
    let mut sum_sq = 0.0;
    for e in &demeaned {
        partial += e;
        sum_sq += partial * partial;
    }
    let statistic = sum_sq / (n as f64 * n as f64 * long_run);
    Ok((statistic, statistic < KPSS_5PCT_CRITICAL))
}
