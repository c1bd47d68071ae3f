//! Scenario generation from the fitted random walk, and present values
//! of the term products on each scenario.

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{LiLeeParams, MortalityError, Population, ProductKind, ProductSpec};

/// Simulated period-index paths for every scenario.
///
/// Holds the flat `(scenario, factor, step)` array of kappa values plus
/// the generating parameters; survival probabilities and rates are
/// derived on demand, so memory stays at three values per scenario-year.
#[derive(Debug, Clone)]
pub struct ScenarioSet {
    params: LiLeeParams,
    horizon: usize,
    seed: u64,
    /// Layout: `((scenario * 3) + factor) * horizon + step`, factor 0/1
    /// the specifics, factor 2 the common index.
    paths: Vec<f64>,
}

impl ScenarioSet {
    pub fn len(&self) -> usize {
        self.paths.len() / (3 * self.horizon)
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn params(&self) -> &LiLeeParams {
        &self.params
    }

    pub fn scenario(&self, index: usize) -> Scenario<'_> {
        assert!(index < self.len(), "scenario index out of range");
        Scenario { set: self, index }
    }

    pub fn iter(&self) -> impl Iterator<Item = Scenario<'_>> {
        (0..self.len()).map(|index| Scenario { set: self, index })
    }

    fn kappa(&self, scenario: usize, factor: usize, step: usize) -> f64 {
        self.paths[(scenario * 3 + factor) * self.horizon + step]
    }
}

/// One scenario's view: survival probabilities derived from its kappa
/// path and the fitted age profiles.
#[derive(Debug, Clone, Copy)]
pub struct Scenario<'a> {
    set: &'a ScenarioSet,
    index: usize,
}

impl Scenario<'_> {
    pub fn index(&self) -> usize {
        self.index
    }

    /// Simulated central death rate at `age` in projection step `step`
    /// (1-based: step 1 is the first year after the fitting window).
    pub fn central_rate(&self, pop: Population, age: u32, step: usize) -> Result<f64, MortalityError> {
        let params = &self.set.params;
        if age < params.first_age() || age > params.last_age() {
            return Err(MortalityError::OutOfRange(format!(
                "age {age} outside fitted range {}-{}",
                params.first_age(),
                params.last_age()
            )));
        }
        if step < 1 || step > self.set.horizon {
            return Err(MortalityError::OutOfRange(format!(
                "projection step {step} outside 1-{}",
                self.set.horizon
            )));
        }
        let x = (age - params.first_age()) as usize;
        let i = pop.index();
        let kappa_s = self.set.kappa(self.index, i, step - 1);
        let kappa_c = self.set.kappa(self.index, 2, step - 1);
        Ok((params.alpha[i][x]
            + params.beta_specific[i][x] * kappa_s
            + params.beta_common[x] * kappa_c)
            .exp())
    }

    /// One-year survival probability under a constant force of mortality
    /// within the year: `p = exp(-m)`.
    pub fn one_year_survival(
        &self,
        pop: Population,
        age: u32,
        step: usize,
    ) -> Result<f64, MortalityError> {
        Ok((-self.central_rate(pop, age, step)?).exp())
    }

    /// Cohort one-year survival probabilities for someone aged
    /// `entry_age` at issue: entry `j` covers age `entry_age + j` in
    /// projection step `j + 1`.
    pub fn cohort_survival(
        &self,
        pop: Population,
        entry_age: u32,
        term: u32,
    ) -> Result<Vec<f64>, MortalityError> {
        (0..term)
            .map(|j| self.one_year_survival(pop, entry_age + j, j as usize + 1))
            .collect()
    }
}

/// Simulates `n_sims` correlated random-walk paths of the kappa triple
/// over `horizon` years past the fitting window.
///
/// Scenario `i` draws from its own deterministic substream (stream `i`
/// of a counter-based generator seeded with `seed`), so outputs are
/// bit-identical for a given seed regardless of evaluation order.
pub fn simulate_scenarios(
    params: &LiLeeParams,
    horizon: u32,
    n_sims: u32,
    seed: u64,
) -> Result<ScenarioSet, MortalityError> {
    if horizon < 1 {
        return Err(MortalityError::InvalidParameter(
            "horizon must be at least 1".to_string(),
        ));
    }
    if n_sims < 1 {
        return Err(MortalityError::InvalidParameter(
            "n_sims must be at least 1".to_string(),
        ));
    }
    let root = innovation_root(&params.covariance)?;
    let horizon = horizon as usize;
    let n = params.n_years();
    let start = Vector3::new(
        params.kappa_specific[0][n - 1],
        params.kappa_specific[1][n - 1],
        params.kappa_common[n - 1],
    );
    let drift = Vector3::from_column_slice(&params.drift);

    let mut paths = vec![0.0f64; n_sims as usize * 3 * horizon];
    for i in 0..n_sims as usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let mut level = start;
        for t in 0..horizon {
            let z = Vector3::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            );
            level += drift + root * z;
            for f in 0..3 {
                paths[(i * 3 + f) * horizon + t] = level[f];
            }
        }
    }
    Ok(ScenarioSet {
        params: params.clone(),
        horizon,
        seed,
        paths,
    })
}

/// Symmetric square root of the innovation covariance: Cholesky when
/// positive definite, spectral square root with clamped eigenvalues when
/// only semidefinite.
fn innovation_root(covariance: &[[f64; 3]; 3]) -> Result<Matrix3<f64>, MortalityError> {
    let m = Matrix3::from_fn(|r, c| covariance[r][c]);
    if (m - m.transpose()).amax() > 1e-12 * m.amax().max(1.0) {
        return Err(MortalityError::InvalidParameter(
            "innovation covariance must be symmetric".to_string(),
        ));
    }
    if let Some(chol) = m.cholesky() {
        return Ok(chol.l());
    }
    let eig = m.symmetric_eigen();
    let scale = eig.eigenvalues.amax();
    let mut root = Matrix3::zeros();
    for k in 0..3 {
        let lambda = eig.eigenvalues[k];
        if lambda < -1e-9 * scale.max(1.0) {
            return Err(MortalityError::InvalidParameter(format!(
                "innovation covariance has negative eigenvalue {lambda}"
            )));
        }
        let col = eig.eigenvectors.column(k) * lambda.max(0.0).sqrt();
        root.set_column(k, &col);
    }
    Ok(root)
}

/// Per-policy present value of `spec` on one scenario.
///
/// Term annuity: `C * sum_{k=1..T} kp_x * v^k`. Term assurance:
/// `C * sum_{k=1..T} (k-1)p_y * (1 - p_{y+k-1}) * v^k`.
pub fn present_value(scenario: &Scenario<'_>, spec: &ProductSpec) -> Result<f64, MortalityError> {
    let survival = scenario.cohort_survival(spec.population(), spec.entry_age, spec.term)?;
    Ok(match spec.kind {
        ProductKind::TermAnnuity => annuity_pv(&survival, spec.benefit, spec.discount_factor),
        ProductKind::TermAssurance => assurance_pv(&survival, spec.benefit, spec.discount_factor),
    })
}

/// Annuity present value from a cohort one-year survival vector.
pub(crate) fn annuity_pv(survival: &[f64], benefit: f64, v: f64) -> f64 {
    let mut cumulative = 1.0;
    let mut discount = 1.0;
    let mut total = 0.0;
    for &p in survival {
        cumulative *= p;
        discount *= v;
        total += cumulative * discount;
    }
    benefit * total
}

/// Assurance present value from a cohort one-year survival vector.
pub(crate) fn assurance_pv(survival: &[f64], benefit: f64, v: f64) -> f64 {
    let mut cumulative = 1.0;
    let mut discount = 1.0;
    let mut total = 0.0;
    for &p in survival {
        discount *= v;
        total += cumulative * (1.0 - p) * discount;
        cumulative *= p;
    }
    benefit * total
}
