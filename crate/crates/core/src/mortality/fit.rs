//! Singular-value-decomposition fit of the two-population model.

use nalgebra::DMatrix;

use super::{LiLeeParams, MortalityDataset, MortalityError};

/// Relative singular-value floor below which a residual factor is treated
/// as rank-0 (identical populations leave no specific signal).
const RANK0_REL_TOL: f64 = 1e-10;

/// Fits the two-population model on the overlapping year range.
///
/// Per population, `alpha[x]` is the row mean of the log rates. The
/// common `(beta, kappa)` is the rank-1 factorization of the average of
/// the two centered log-rate matrices; each population's specific factor
/// is the rank-1 factorization of its residual. Identification (`sum
/// beta = 1`, `sum kappa = 0`) is enforced by rescaling, with kappa
/// shifts absorbed into `alpha`. Random-walk drift and innovation
/// covariance are estimated from first differences of the three kappa
/// series; a specific drift smaller than twice its standard error is
/// zeroed and flagged.
pub fn fit_li_lee(
    data_a: &MortalityDataset,
    data_b: &MortalityDataset,
) -> Result<LiLeeParams, MortalityError> {
    if data_a.first_age() != data_b.first_age() || data_a.n_ages() != data_b.n_ages() {
        return Err(MortalityError::DataMismatch(format!(
            "age ranges differ: {}-{} vs {}-{}",
            data_a.first_age(),
            data_a.last_age(),
            data_b.first_age(),
            data_b.last_age()
        )));
    }
    let first_year = data_a.first_year().max(data_b.first_year());
    let last_year = data_a.last_year().min(data_b.last_year());
    if last_year - first_year + 1 < 3 {
        return Err(MortalityError::DataMismatch(format!(
            "need at least 3 overlapping years, got {}",
            (last_year - first_year + 1).max(0)
        )));
    }
    let n_ages = data_a.n_ages();
    let n_years = (last_year - first_year + 1) as usize;

    let log_rates = |data: &MortalityDataset| -> DMatrix<f64> {
        let offset = (first_year - data.first_year()) as usize;
        DMatrix::from_fn(n_ages, n_years, |x, t| data.rate(x, t + offset).ln())
    };
    let la = log_rates(data_a);
    let lb = log_rates(data_b);

    let row_means = |m: &DMatrix<f64>| -> Vec<f64> {
        (0..n_ages)
            .map(|x| m.row(x).iter().sum::<f64>() / n_years as f64)
            .collect()
    };
    let mut alpha = [row_means(&la), row_means(&lb)];

    let centered = |m: &DMatrix<f64>, alpha: &[f64]| -> DMatrix<f64> {
        DMatrix::from_fn(n_ages, n_years, |x, t| m[(x, t)] - alpha[x])
    };
    let za = centered(&la, &alpha[0]);
    let zb = centered(&lb, &alpha[1]);

    let pooled = (&za + &zb) * 0.5;
    let common_scale = pooled.norm();
    let (mut beta_common, mut kappa_common) = rank1(&pooled, "common", None)?;
    absorb_kappa_shift(&mut beta_common, &mut kappa_common, &mut alpha, &[0, 1]);

    let common = DMatrix::from_fn(n_ages, n_years, |x, t| beta_common[x] * kappa_common[t]);
    let mut beta_specific = Vec::with_capacity(2);
    let mut kappa_specific = Vec::with_capacity(2);
    for (i, z) in [&za, &zb].into_iter().enumerate() {
        let residual = z - &common;
        let (mut beta, mut kappa) = rank1(&residual, "specific", Some(common_scale))?;
        absorb_kappa_shift(&mut beta, &mut kappa, &mut alpha, &[i]);
        beta_specific.push(beta);
        kappa_specific.push(kappa);
    }
    let [beta_s_a, beta_s_b]: [Vec<f64>; 2] = beta_specific.try_into().unwrap();
    let [kappa_s_a, kappa_s_b]: [Vec<f64>; 2] = kappa_specific.try_into().unwrap();

    // random-walk dynamics from first differences of the kappa triple
    let series = [&kappa_s_a, &kappa_s_b, &kappa_common];
    let n_diffs = n_years - 1;
    let mut diffs = vec![[0.0f64; 3]; n_diffs];
    for (t, d) in diffs.iter_mut().enumerate() {
        for (j, s) in series.iter().enumerate() {
            d[j] = s[t + 1] - s[t];
        }
    }
    let mut drift = [0.0f64; 3];
    for d in &diffs {
        for j in 0..3 {
            drift[j] += d[j];
        }
    }
    for dj in &mut drift {
        *dj /= n_diffs as f64;
    }
    let mut covariance = [[0.0f64; 3]; 3];
    if n_diffs > 1 {
        for d in &diffs {
            for j in 0..3 {
                for k in 0..3 {
                    covariance[j][k] += (d[j] - drift[j]) * (d[k] - drift[k]);
                }
            }
        }
        for row in &mut covariance {
            for v in row.iter_mut() {
                *v /= (n_diffs - 1) as f64;
            }
        }
    }

    // an insignificant specific drift is indistinguishable from noise
    let mut specific_drift_zeroed = [false; 2];
    for j in 0..2 {
        let se = (covariance[j][j] / n_diffs as f64).sqrt();
        if drift[j].abs() < 2.0 * se {
            drift[j] = 0.0;
            specific_drift_zeroed[j] = true;
        }
    }

    Ok(LiLeeParams {
        first_age: data_a.first_age(),
        first_year,
        alpha,
        beta_specific: [beta_s_a, beta_s_b],
        kappa_specific: [kappa_s_a, kappa_s_b],
        beta_common,
        kappa_common,
        drift,
        covariance,
        specific_drift_zeroed,
    })
}

/// Best rank-1 factorization `z ~ beta * kappa'` normalized to
/// `sum(beta) = 1`.
///
/// With `reference_scale` given, a factor whose singular value is
/// negligible against it collapses to uniform loadings and a zero index
/// instead of erroring (identical populations leave an empty residual).
fn rank1(
    z: &DMatrix<f64>,
    which: &str,
    reference_scale: Option<f64>,
) -> Result<(Vec<f64>, Vec<f64>), MortalityError> {
    let n_ages = z.nrows();
    let n_years = z.ncols();
    let svd = z.clone().svd(true, true);
    let u = svd.u.as_ref().expect("svd requested u");
    let vt = svd.v_t.as_ref().expect("svd requested v_t");
    let s0 = svd.singular_values[0];

    if let Some(scale) = reference_scale {
        if s0 <= RANK0_REL_TOL * scale.max(1e-300) {
            return Ok((vec![1.0 / n_ages as f64; n_ages], vec![0.0; n_years]));
        }
    } else if s0 <= 0.0 {
        return Err(MortalityError::DegenerateFactor(format!(
            "{which} factor matrix is numerically rank-0"
        )));
    }

    let f: Vec<f64> = (0..n_ages).map(|x| u[(x, 0)] * s0).collect();
    let g: Vec<f64> = (0..n_years).map(|t| vt[(0, t)]).collect();
    let total: f64 = f.iter().sum();
    if !total.is_finite() || total.abs() <= 1e-12 * s0.max(1e-300) {
        return Err(MortalityError::DegenerateFactor(format!(
            "{which} factor loadings sum to ~0; cannot normalize to sum 1"
        )));
    }
    let beta = f.iter().map(|v| v / total).collect();
    let kappa = g.iter().map(|v| v * total).collect();
    Ok((beta, kappa))
}

/// Shifts `kappa` to zero mean, absorbing `beta * mean` into the listed
/// populations' alpha profiles.
fn absorb_kappa_shift(
    beta: &mut [f64],
    kappa: &mut [f64],
    alpha: &mut [Vec<f64>; 2],
    populations: &[usize],
) {
    let mean = kappa.iter().sum::<f64>() / kappa.len() as f64;
    for k in kappa.iter_mut() {
        *k -= mean;
    }
    for &i in populations {
        for (a, b) in alpha[i].iter_mut().zip(beta.iter()) {
            *a += b * mean;
        }
    }
}
