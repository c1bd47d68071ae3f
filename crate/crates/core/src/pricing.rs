//! Closed-form loadings for a two-line portfolio under the
//! mean–standard-deviation (MSD) risk measure.
//!
//! Premiums are `(1 + psi) * pi` where `pi` is the pure premium and `psi`
//! the proportional safety loading. Priced stand-alone, each line carries
//! `psi = zeta * gamma * sigma / pi`. Priced jointly, both lines carry the
//! common loading
//!
//! ```text
//! psi(n) = psi_a * sqrt(lambda1 * nt^2 - 2 * lambda2 * nt + 1)
//! nt     = n * pi_b / ((1 - n) * pi_a + n * pi_b)
//! ```
//!
//! with `n` the portfolio proportion of line B policies,
//! `b = (sigma_b * pi_a) / (sigma_a * pi_b) >= 1`,
//! `lambda1 = 1 + b^2 - 2*b*rho` and `lambda2 = 1 - b*rho`.
//!
//! A competitiveness region (`psi(n) < psi_a` for some `n`) exists iff
//! `b * rho < 1`; its floor is `psi_min = psi_a * sqrt((lambda1 -
//! lambda2^2) / lambda1)` attained at `n_min`. Holding a loading
//! `psi_star` requires keeping `n` inside a monitoring interval
//! `[n_l, n_u]`, and for `b > 1` the safer line subsidizes the riskier
//! one beyond the critical threshold `n_ct`.

use thiserror::Error;

/// Errors from constructing pricing inputs or evaluating loadings.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PricingError {
    /// A business line failed validation (non-finite or non-positive moments).
    #[error("invalid business line `{label}`: {reason}")]
    InvalidLine { label: String, reason: String },
    /// Risk-specification parameters outside their domain.
    #[error("invalid risk spec: {0}")]
    InvalidRiskSpec(String),
    /// Correlation outside `[-1, 1)`.
    #[error("correlation {rho} outside [-1, 1)")]
    InvalidCorrelation { rho: f64 },
    /// Portfolio proportion outside `[0, 1]`.
    #[error("portfolio proportion {n} outside [0, 1]")]
    ProportionOutOfRange { n: f64 },
    /// Requested an operation that needs `b * rho < 1`.
    #[error("no competitiveness region: b*rho = {b_rho} >= 1")]
    NoCompetitivenessRegion { b_rho: f64 },
    /// Target loading below the attainable minimum.
    #[error("loading {psi_star} below the minimum {psi_min}: no real roots")]
    NoRealRoots { psi_star: f64, psi_min: f64 },
    /// Target loading above the attainable maximum `psi_b`.
    #[error("loading {psi_star} above the maximum {psi_max}")]
    AboveMaximum { psi_star: f64, psi_max: f64 },
    /// Policy counts must be strictly positive.
    #[error("policy count must be positive and finite, got {count}")]
    NonPositiveCount { count: f64 },
}

/// One business line's per-policy liability summary: expected present value
/// `pi` and standard deviation `sigma` of the per-policy present value.
#[derive(Debug, Clone, PartialEq)]
pub struct BusinessLine {
    label: String,
    pi: f64,
    sigma: f64,
}

impl BusinessLine {
    /// Validates `pi > 0`, `sigma > 0`, both finite.
    pub fn new(label: impl Into<String>, pi: f64, sigma: f64) -> Result<Self, PricingError> {
        let label = label.into();
        let check = |name: &str, v: f64| -> Result<(), PricingError> {
            if !v.is_finite() || v <= 0.0 {
                return Err(PricingError::InvalidLine {
                    label: label.clone(),
                    reason: format!("{name} must be positive and finite, got {v}"),
                });
            }
            Ok(())
        };
        check("pi", pi)?;
        check("sigma", sigma)?;
        Ok(Self { label, pi, sigma })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn pi(&self) -> f64 {
        self.pi
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Standard deviation per unit of expected payout, `sigma / pi`.
    pub fn risk_ratio(&self) -> f64 {
        self.sigma / self.pi
    }

    /// Stand-alone loading `zeta * gamma * sigma / pi`.
    ///
    /// Scale-invariant: multiplying `pi` and `sigma` by the same factor
    /// leaves it unchanged.
    pub fn standalone_loading(&self, risk: &RiskSpec) -> f64 {
        risk.scale() * self.risk_ratio()
    }
}

/// Risk-reduction factor `zeta` and MSD weight `gamma`.
///
/// The loaded premium reduces the insurer's measured loss by the factor
/// `zeta` relative to the unloaded case; `gamma` weights the standard
/// deviation in the risk measure `pi + gamma * sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskSpec {
    zeta: f64,
    gamma: f64,
}

impl RiskSpec {
    /// Validates `0 < zeta < 1` and `gamma > 0`.
    pub fn new(zeta: f64, gamma: f64) -> Result<Self, PricingError> {
        if !zeta.is_finite() || zeta <= 0.0 || zeta >= 1.0 {
            return Err(PricingError::InvalidRiskSpec(format!(
                "zeta must lie in (0, 1), got {zeta}"
            )));
        }
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(PricingError::InvalidRiskSpec(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        Ok(Self { zeta, gamma })
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Combined loading scale `zeta * gamma`.
    pub fn scale(&self) -> f64 {
        self.zeta * self.gamma
    }
}

/// An ordered pair of business lines plus the correlation of their
/// per-policy present values.
///
/// The constructor reorders the lines so that line B is the riskier one
/// (`sigma_b / pi_b >= sigma_a / pi_a`, hence `b >= 1`); [`swapped`]
/// records whether the caller's order was flipped so reports can keep the
/// original labels.
///
/// [`swapped`]: LinePair::swapped
#[derive(Debug, Clone, PartialEq)]
pub struct LinePair {
    line_a: BusinessLine,
    line_b: BusinessLine,
    rho: f64,
    swapped: bool,
    b: f64,
    lambda1: f64,
    lambda2: f64,
}

impl LinePair {
    /// Builds a pair, reordering so line B is riskier. Requires
    /// `rho` in `[-1, 1)`.
    pub fn new(first: BusinessLine, second: BusinessLine, rho: f64) -> Result<Self, PricingError> {
        if !rho.is_finite() || !(-1.0..1.0).contains(&rho) {
            return Err(PricingError::InvalidCorrelation { rho });
        }
        let swapped = first.risk_ratio() > second.risk_ratio();
        let (line_a, line_b) = if swapped {
            (second, first)
        } else {
            (first, second)
        };
        let b = line_b.risk_ratio() / line_a.risk_ratio();
        let lambda1 = 1.0 + b * b - 2.0 * b * rho;
        let lambda2 = 1.0 - b * rho;
        debug_assert!(lambda1 > 0.0);
        Ok(Self {
            line_a,
            line_b,
            rho,
            swapped,
            b,
            lambda1,
            lambda2,
        })
    }

    pub fn line_a(&self) -> &BusinessLine {
        &self.line_a
    }

    pub fn line_b(&self) -> &BusinessLine {
        &self.line_b
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Whether the constructor flipped the caller's order.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Riskiness ratio `b = (sigma_b * pi_a) / (sigma_a * pi_b) >= 1`.
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    /// Stand-alone loading of the safer line A.
    pub fn psi_a(&self, risk: &RiskSpec) -> f64 {
        self.line_a.standalone_loading(risk)
    }

    /// Stand-alone loading of the riskier line B.
    pub fn psi_b(&self, risk: &RiskSpec) -> f64 {
        self.line_b.standalone_loading(risk)
    }

    /// Benefit-weighted proportion `nt = n*pi_b / ((1-n)*pi_a + n*pi_b)`.
    pub fn n_tilde(&self, n: f64) -> f64 {
        let pa = self.line_a.pi();
        let pb = self.line_b.pi();
        n * pb / ((1.0 - n) * pa + n * pb)
    }

    /// Inverse of [`n_tilde`](Self::n_tilde) on `[0, 1]`.
    pub fn n_from_tilde(&self, nt: f64) -> f64 {
        let pa = self.line_a.pi();
        let pb = self.line_b.pi();
        nt * pa / (nt * pa + (1.0 - nt) * pb)
    }

    /// The quadratic `lambda1*nt^2 - 2*lambda2*nt + 1`, clamped at zero
    /// against rounding (its exact minimum `b^2(1-rho^2)/lambda1` is
    /// nonnegative).
    fn quad(&self, nt: f64) -> f64 {
        (self.lambda1 * nt * nt - 2.0 * self.lambda2 * nt + 1.0).max(0.0)
    }

    /// Joint loading `psi(n)`, the common loading both lines carry when a
    /// fraction `n` of policies is in line B.
    ///
    /// `psi(0) = psi_a` and `psi(1) = psi_b` exactly.
    pub fn joint_loading(&self, risk: &RiskSpec, n: f64) -> Result<f64, PricingError> {
        if !n.is_finite() || !(0.0..=1.0).contains(&n) {
            return Err(PricingError::ProportionOutOfRange { n });
        }
        Ok(self.psi_a(risk) * self.quad(self.n_tilde(n)).sqrt())
    }

    /// Competitiveness-region summary: existence (`b*rho < 1`), the
    /// minimizing proportion and minimum loading, the stand-alone
    /// endpoints, and the critical threshold when one exists.
    pub fn competitiveness_region(&self, risk: &RiskSpec) -> CompetitivenessReport {
        let psi_a = self.psi_a(risk);
        let psi_b = self.psi_b(risk);
        let exists = self.b * self.rho < 1.0;
        if !exists {
            // lambda2 <= 0: psi is nondecreasing, the minimum sits at n = 0.
            return CompetitivenessReport {
                exists,
                n_min: 0.0,
                psi_min: psi_a,
                psi_a,
                psi_b,
                n_ct: None,
            };
        }
        let (l1, l2) = (self.lambda1, self.lambda2);
        let pa = self.line_a.pi();
        let pb = self.line_b.pi();
        let n_min = l2 * pa / (l2 * pa + (l1 - l2) * pb);
        let psi_min = psi_a * ((l1 - l2 * l2).max(0.0) / l1).sqrt();
        let n_ct = 2.0 * l2 * pa / (2.0 * l2 * pa + (l1 - 2.0 * l2) * pb);
        CompetitivenessReport {
            exists,
            n_min,
            psi_min,
            psi_a,
            psi_b,
            n_ct: Some(n_ct.min(1.0)),
        }
    }

    /// Critical threshold `n_ct` with `psi(n_ct) = psi_a`: below it the
    /// joint pricer undercuts both stand-alone prices, beyond it the safer
    /// line subsidizes the riskier one. Equals 1 when `b = 1`.
    pub fn critical_threshold(&self) -> Result<f64, PricingError> {
        let b_rho = self.b * self.rho;
        if b_rho >= 1.0 {
            return Err(PricingError::NoCompetitivenessRegion { b_rho });
        }
        let (l1, l2) = (self.lambda1, self.lambda2);
        let pa = self.line_a.pi();
        let pb = self.line_b.pi();
        // l1 - 2*l2 = b^2 - 1 >= 0, so n_ct <= 1 with equality iff b = 1.
        let n_ct = 2.0 * l2 * pa / (2.0 * l2 * pa + (l1 - 2.0 * l2) * pb);
        Ok(n_ct.min(1.0))
    }

    /// Monitoring interval `[n_l, n_u]` on which `psi(n) <= psi_star`.
    ///
    /// Solves `psi(nt)^2 = psi_star^2` for `nt` and maps the roots back to
    /// `n`. The lower root is clamped to 0 once `psi_star > psi_a` (it
    /// leaves `[0, 1]`), and `psi_star = psi_b` returns upper endpoint 1.
    pub fn monitoring_interval(
        &self,
        risk: &RiskSpec,
        psi_star: f64,
    ) -> Result<(f64, f64), PricingError> {
        let region = self.competitiveness_region(risk);
        let psi_a = region.psi_a;
        if !psi_star.is_finite() || psi_star < region.psi_min * (1.0 - 1e-12) {
            return Err(PricingError::NoRealRoots {
                psi_star,
                psi_min: region.psi_min,
            });
        }
        if psi_star > region.psi_b * (1.0 + 1e-12) {
            return Err(PricingError::AboveMaximum {
                psi_star,
                psi_max: region.psi_b,
            });
        }
        let (l1, l2) = (self.lambda1, self.lambda2);
        let r2 = (psi_star / psi_a).powi(2);
        let disc = (l2 / l1).powi(2) - (1.0 - r2) / l1;
        // disc >= 0 in exact arithmetic for psi_star >= psi_min; absorb
        // rounding at the collapse point.
        let disc = if disc < 0.0 { 0.0 } else { disc };
        let half_width = disc.sqrt();
        let nt_l = l2 / l1 - half_width;
        let nt_u = l2 / l1 + half_width;
        let n_l = if nt_l <= 0.0 {
            0.0
        } else {
            self.n_from_tilde(nt_l)
        };
        let n_u = if nt_u >= 1.0 {
            1.0
        } else {
            self.n_from_tilde(nt_u)
        };
        Ok((n_l.clamp(0.0, 1.0), n_u.clamp(0.0, 1.0)))
    }

    /// Portfolio risk reduction of joint over stand-alone pricing,
    /// `(1 - zeta) * gamma * (N_a*sigma_a + N_b*sigma_b - sigma_ptf)`.
    ///
    /// Nonnegative by subadditivity of the standard deviation; rounding
    /// residue at `rho = 1` is clamped to zero.
    pub fn risk_reduction_gap(
        &self,
        risk: &RiskSpec,
        count_a: f64,
        count_b: f64,
    ) -> Result<f64, PricingError> {
        for count in [count_a, count_b] {
            if !count.is_finite() || count <= 0.0 {
                return Err(PricingError::NonPositiveCount { count });
            }
        }
        let sa = count_a * self.line_a.sigma();
        let sb = count_b * self.line_b.sigma();
        let sigma_ptf = (sa * sa + sb * sb + 2.0 * self.rho * sa * sb).max(0.0).sqrt();
        let gap = (1.0 - risk.zeta()) * risk.gamma() * (sa + sb - sigma_ptf);
        if gap < 0.0 {
            debug_assert!(gap > -1e-9 * (1.0 - risk.zeta()) * risk.gamma() * (sa + sb));
            return Ok(0.0);
        }
        Ok(gap)
    }
}

/// Output of [`LinePair::competitiveness_region`].
///
/// `n_ct` is `None` when no competitiveness region exists (`b*rho >= 1`),
/// in which case `psi(n) >= psi_a` everywhere and `psi_min = psi_a` at
/// `n_min = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompetitivenessReport {
    pub exists: bool,
    pub n_min: f64,
    pub psi_min: f64,
    pub psi_a: f64,
    pub psi_b: f64,
    pub n_ct: Option<f64>,
}
