//! Deterministic synthetic mortality fixtures for tests and demos.
//!
//! Builds fully identified parameter sets with known factors, then
//! renders rate datasets from them (optionally with Gaussian noise on
//! the log rates). The mirrored variant makes the two populations'
//! specific components exact opposites, which cancels them in the pooled
//! average so a fit recovers every factor exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{LiLeeParams, MortalityDataset};

/// Shape of a synthetic parameter set.
#[derive(Debug, Clone)]
pub struct SyntheticSpec {
    pub first_age: u32,
    pub n_ages: usize,
    pub first_year: i32,
    pub n_years: usize,
    /// Yearly drift of the common period index.
    pub common_drift: f64,
    /// Innovation standard deviation of the common index.
    pub common_sd: f64,
    /// Innovation standard deviation of the specific indices.
    pub specific_sd: f64,
    /// Make population B's specific component the exact opposite of A's.
    pub mirrored: bool,
}

impl SyntheticSpec {
    /// Ages 30-90, years 1950-2018, mirrored specifics.
    pub fn mirrored() -> Self {
        Self {
            first_age: 30,
            n_ages: 61,
            first_year: 1950,
            n_years: 69,
            common_drift: -0.5,
            common_sd: 0.8,
            specific_sd: 0.3,
            mirrored: true,
        }
    }

    /// Independent specific factors with the same geometry.
    pub fn independent() -> Self {
        Self {
            mirrored: false,
            ..Self::mirrored()
        }
    }

    /// Common factor dominates the specifics; drives annuity and
    /// assurance values in opposite directions.
    pub fn common_dominant() -> Self {
        Self {
            common_sd: 1.2,
            specific_sd: 0.05,
            mirrored: false,
            ..Self::mirrored()
        }
    }

    /// Single shared period factor, no specific dynamics at all.
    pub fn common_only() -> Self {
        Self {
            specific_sd: 0.0,
            mirrored: false,
            ..Self::mirrored()
        }
    }
}

/// Builds an identified parameter set from the shape; `seed` drives the
/// period-index paths.
pub fn synthetic_params(spec: &SyntheticSpec, seed: u64) -> LiLeeParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.n_ages;
    let t = spec.n_years;

    // Gompertz-like log-level, slightly offset per population.
    let alpha_profile = |offset: f64| -> Vec<f64> {
        (0..n).map(|x| -9.5 + 0.085 * x as f64 + offset).collect()
    };
    let alpha = [alpha_profile(0.0), alpha_profile(0.12)];

    // smooth positive loadings normalized to sum 1
    let bump = |phase: f64| -> Vec<f64> {
        let raw: Vec<f64> = (0..n)
            .map(|x| 0.6 + (std::f64::consts::PI * (x as f64 + 0.5) / n as f64 + phase).sin().powi(2))
            .collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|v| v / total).collect()
    };
    let beta_common = bump(0.0);
    let beta_a = bump(0.7);
    let beta_b = if spec.mirrored { beta_a.clone() } else { bump(1.9) };

    let walk = |rng: &mut ChaCha8Rng, drift: f64, sd: f64| -> Vec<f64> {
        let mut path = Vec::with_capacity(t);
        let mut level = 0.0;
        for _ in 0..t {
            path.push(level);
            let z: f64 = rng.sample(StandardNormal);
            level += drift + sd * z;
        }
        let mean = path.iter().sum::<f64>() / t as f64;
        path.into_iter().map(|v| v - mean).collect()
    };
    let kappa_common = walk(&mut rng, spec.common_drift, spec.common_sd);
    let kappa_a = walk(&mut rng, 0.0, spec.specific_sd);
    let kappa_b = if spec.mirrored {
        kappa_a.iter().map(|v| -v).collect()
    } else {
        walk(&mut rng, 0.0, spec.specific_sd)
    };

    let s2 = spec.specific_sd * spec.specific_sd;
    let cross = if spec.mirrored { -s2 } else { 0.0 };
    LiLeeParams {
        first_age: spec.first_age,
        first_year: spec.first_year,
        alpha,
        beta_specific: [beta_a, beta_b],
        kappa_specific: [kappa_a, kappa_b],
        beta_common,
        kappa_common,
        drift: [0.0, 0.0, spec.common_drift],
        covariance: [
            [s2, cross, 0.0],
            [cross, s2, 0.0],
            [0.0, 0.0, spec.common_sd * spec.common_sd],
        ],
        specific_drift_zeroed: [false, false],
    }
}

/// Renders the two populations' datasets from a parameter set, with
/// optional i.i.d. Gaussian noise (standard deviation `noise_sd`) on the
/// log rates.
pub fn datasets_from_params(
    params: &LiLeeParams,
    noise_sd: f64,
    noise_seed: u64,
) -> (MortalityDataset, MortalityDataset) {
    let mut rng = ChaCha8Rng::seed_from_u64(noise_seed);
    let mut render = |pop: super::Population, id: &str| -> MortalityDataset {
        let rates: Vec<Vec<f64>> = (0..params.n_ages())
            .map(|x| {
                (0..params.n_years())
                    .map(|t| {
                        let noise: f64 = if noise_sd > 0.0 {
                            let z: f64 = rng.sample(StandardNormal);
                            noise_sd * z
                        } else {
                            0.0
                        };
                        params.fitted_rate(pop, x, t) * noise.exp()
                    })
                    .collect()
            })
            .collect();
        MortalityDataset::new(id, params.first_age(), params.first_year(), rates)
            .expect("synthetic rates are positive")
    };
    let ds_a = render(super::Population::A, "synthetic-a");
    let ds_b = render(super::Population::B, "synthetic-b");
    (ds_a, ds_b)
}
