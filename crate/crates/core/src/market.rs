//! Demand-aware pricing decisions: equilibrium loading, collected-premium
//! comparison, and the sufficient decision rules.
//!
//! A single joint pricer competes with `k_a - 1` and `k_b - 1` stand-alone
//! providers per line. Setting the common loading `psi_star` moves its
//! prices relative to the stand-alone ones by
//! `c_i = (1 + psi_star) / (1 + psi_i) - 1`, which feeds a demand model
//! and so changes the portfolio mix `n_star` that `psi_star` itself must
//! price: the equilibrium loading solves
//! `psi_star = psi(n_star(psi_star))` on `[psi_min, psi_b]`.
//!
//! The decision criterion is the difference `d_ptf` between total
//! premiums collected jointly vs. stand-alone. Under the linearized
//! demand it is a concave quadratic in `1 + psi_star` (theta form) with
//! an equivalent reaction-factor form (nbar form); both are computed and
//! cross-checked here.

use thiserror::Error;

use crate::pricing::{LinePair, PricingError, RiskSpec};

/// Relative fixed-point residual required of a converged equilibrium.
pub const EQUILIBRIUM_TOL: f64 = 1e-10;

const MAX_FIXED_POINT_ITERS: usize = 10_000;
const SCAN_POINTS: usize = 1024;

/// Errors from market-model operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarketError {
    /// Market-specification parameters outside their domain.
    #[error("invalid market spec: {0}")]
    InvalidSpec(String),
    /// Demand model produced nonpositive counts on both lines.
    #[error("demand model yields no policyholders on either line at loading {psi}")]
    InfeasibleDemand { psi: f64 },
    /// Fixed-point iteration and bisection both failed to meet tolerance.
    #[error("equilibrium solver did not converge: residual {residual} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },
    /// Underlying pricing input was invalid.
    #[error(transparent)]
    Pricing(#[from] PricingError),
}

/// Market environment: total demands, provider counts and reaction
/// factors per line.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketSpec {
    demand_a: f64,
    demand_b: f64,
    insurers_a: u32,
    insurers_b: u32,
    reaction_a: f64,
    reaction_b: f64,
}

impl MarketSpec {
    /// Validates `2 <= k < N^T` per line and positive reaction factors.
    pub fn new(
        demand_a: f64,
        demand_b: f64,
        insurers_a: u32,
        insurers_b: u32,
        reaction_a: f64,
        reaction_b: f64,
    ) -> Result<Self, MarketError> {
        for (name, demand, k) in [("a", demand_a, insurers_a), ("b", demand_b, insurers_b)] {
            if !demand.is_finite() || demand <= 0.0 {
                return Err(MarketError::InvalidSpec(format!(
                    "demand_{name} must be positive and finite, got {demand}"
                )));
            }
            if k < 2 {
                return Err(MarketError::InvalidSpec(format!(
                    "insurers_{name} must be at least 2, got {k}"
                )));
            }
            if (k as f64) >= demand {
                return Err(MarketError::InvalidSpec(format!(
                    "insurers_{name} = {k} must be smaller than demand_{name} = {demand}"
                )));
            }
        }
        for (name, q) in [("a", reaction_a), ("b", reaction_b)] {
            if !q.is_finite() || q <= 0.0 {
                return Err(MarketError::InvalidSpec(format!(
                    "reaction_{name} must be positive and finite, got {q}"
                )));
            }
        }
        Ok(Self {
            demand_a,
            demand_b,
            insurers_a,
            insurers_b,
            reaction_a,
            reaction_b,
        })
    }

    pub fn demand_a(&self) -> f64 {
        self.demand_a
    }

    pub fn demand_b(&self) -> f64 {
        self.demand_b
    }

    pub fn insurers_a(&self) -> u32 {
        self.insurers_a
    }

    pub fn insurers_b(&self) -> u32 {
        self.insurers_b
    }

    pub fn reaction_a(&self) -> f64 {
        self.reaction_a
    }

    pub fn reaction_b(&self) -> f64 {
        self.reaction_b
    }

    /// Market proportion of demand for line B, `w^d`.
    pub fn demand_share_b(&self) -> f64 {
        self.demand_b / (self.demand_a + self.demand_b)
    }

    /// Same provider counts and reaction factors with demands replaced.
    pub fn with_demands(&self, demand_a: f64, demand_b: f64) -> Result<Self, MarketError> {
        Self::new(
            demand_a,
            demand_b,
            self.insurers_a,
            self.insurers_b,
            self.reaction_a,
            self.reaction_b,
        )
    }
}

/// Demand response of policyholders to the joint pricer's discount.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DemandModel {
    /// Logistic share: bounded in `(0, total)`, equal split at zero
    /// discount.
    Logistic,
    /// First-order expansion of the logistic, clamped at zero from below.
    #[default]
    Linearized,
}

/// Policyholders attracted at relative price change `discount`
/// (negative = cheaper than the stand-alone price).
///
/// Both variants return `total / competitors` at zero discount.
/// `competitors` must be at least 2 (the [`MarketSpec`] invariant);
/// smaller values are outside the model.
pub fn demand(
    model: DemandModel,
    total: f64,
    competitors: u32,
    reaction: f64,
    discount: f64,
) -> f64 {
    let k = competitors as f64;
    match model {
        DemandModel::Logistic => {
            let e = (-reaction * discount).exp();
            total * (1.0 - (k - 1.0) / (k - 1.0 + e))
        }
        DemandModel::Linearized => {
            (total / k * (1.0 - (k - 1.0) / k * reaction * discount)).max(0.0)
        }
    }
}

/// Solved market equilibrium.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumResult {
    /// Self-consistent portfolio loading.
    pub psi_star: f64,
    /// Joint pricer's proportion of line-B policies at `psi_star`.
    pub n_star: f64,
    /// Policyholders attracted on line A.
    pub count_a: f64,
    /// Policyholders attracted on line B.
    pub count_b: f64,
    /// Relative price change on line A, `(1+psi_star)/(1+psi_a) - 1`.
    pub discount_a: f64,
    /// Relative price change on line B.
    pub discount_b: f64,
    /// Residual met [`EQUILIBRIUM_TOL`].
    pub converged: bool,
    /// Fixed-point plus bisection iterations spent.
    pub iterations: usize,
    /// The residual changed sign more than once on a 1024-point scan; the
    /// smallest (most competitive) root is reported.
    pub multiple_roots: bool,
}

struct EquilibriumMap<'a> {
    pair: &'a LinePair,
    market: &'a MarketSpec,
    model: DemandModel,
    psi_a: f64,
    psi_b: f64,
}

impl EquilibriumMap<'_> {
    fn counts(&self, psi: f64) -> (f64, f64, f64, f64) {
        let c_a = (1.0 + psi) / (1.0 + self.psi_a) - 1.0;
        let c_b = (1.0 + psi) / (1.0 + self.psi_b) - 1.0;
        let n_a = demand(
            self.model,
            self.market.demand_a,
            self.market.insurers_a,
            self.market.reaction_a,
            c_a,
        );
        let n_b = demand(
            self.model,
            self.market.demand_b,
            self.market.insurers_b,
            self.market.reaction_b,
            c_b,
        );
        (n_a, n_b, c_a, c_b)
    }

    /// The map `G(psi) = psi(n_star(psi))` whose fixed point is the
    /// equilibrium loading.
    fn apply(&self, risk: &RiskSpec, psi: f64) -> Result<f64, MarketError> {
        let (n_a, n_b, _, _) = self.counts(psi);
        if n_a <= 0.0 && n_b <= 0.0 {
            return Err(MarketError::InfeasibleDemand { psi });
        }
        let n_star = n_b / (n_a + n_b);
        Ok(self.pair.joint_loading(risk, n_star.clamp(0.0, 1.0))?)
    }
}

/// Solves the fixed-point equation for the equilibrium loading.
///
/// Damped iteration `psi <- (1-w)*psi + w*G(psi)` with `w = 0.5` from
/// `psi_a`; if it stalls or exhausts its budget, falls back to bisection
/// of the residual `psi - G(psi)` over `[psi_min, psi_b]`, where a sign
/// change always exists because `G` maps the bracket into itself. A
/// 1024-point scan flags multiple sign changes; the smallest root wins.
pub fn solve_equilibrium(
    pair: &LinePair,
    risk: &RiskSpec,
    market: &MarketSpec,
    model: DemandModel,
) -> Result<EquilibriumResult, MarketError> {
    let region = pair.competitiveness_region(risk);
    let map = EquilibriumMap {
        pair,
        market,
        model,
        psi_a: region.psi_a,
        psi_b: region.psi_b,
    };
    let lo = region.psi_min;
    let hi = region.psi_b;
    let tol = |psi: f64| EQUILIBRIUM_TOL * (1.0 + psi);

    let mut psi = region.psi_a;
    let mut iterations = 0usize;
    let mut best_residual = f64::INFINITY;
    let mut stalled = 0usize;
    let mut converged = false;
    while iterations < MAX_FIXED_POINT_ITERS {
        iterations += 1;
        let g = map.apply(risk, psi)?;
        let residual = (psi - g).abs();
        if residual <= tol(psi) {
            converged = true;
            break;
        }
        if residual < best_residual {
            best_residual = residual;
            stalled = 0;
        } else {
            stalled += 1;
            // oscillating or diverging; hand over to bisection
            if stalled >= 256 {
                break;
            }
        }
        psi = (0.5 * psi + 0.5 * g).clamp(lo, hi);
    }

    let mut multiple_roots = false;
    if !converged {
        let residual_at = |p: f64| -> Result<f64, MarketError> { Ok(p - map.apply(risk, p)?) };
        let mut brackets = Vec::new();
        let mut prev = (lo, residual_at(lo)?);
        for i in 1..=SCAN_POINTS {
            let p = lo + (hi - lo) * i as f64 / SCAN_POINTS as f64;
            let r = residual_at(p)?;
            iterations += 1;
            if prev.1 == 0.0 || prev.1 * r <= 0.0 {
                brackets.push((prev.0, p));
            }
            prev = (p, r);
        }
        multiple_roots = brackets.len() > 1;
        let (mut blo, mut bhi) = *brackets.first().ok_or(MarketError::NoConvergence {
            residual: best_residual,
            iterations,
        })?;
        let rlo = residual_at(blo)?;
        for _ in 0..200 {
            iterations += 1;
            let mid = 0.5 * (blo + bhi);
            let rmid = residual_at(mid)?;
            if rmid.abs() <= tol(mid) {
                blo = mid;
                bhi = mid;
                break;
            }
            if rlo * rmid <= 0.0 {
                bhi = mid;
            } else {
                blo = mid;
            }
        }
        psi = 0.5 * (blo + bhi);
        converged = residual_at(psi)?.abs() <= tol(psi);
        if !converged {
            return Err(MarketError::NoConvergence {
                residual: residual_at(psi)?.abs(),
                iterations,
            });
        }
    }

    let (count_a, count_b, discount_a, discount_b) = map.counts(psi);
    let n_star = count_b / (count_a + count_b);
    Ok(EquilibriumResult {
        psi_star: psi,
        n_star,
        count_a,
        count_b,
        discount_a,
        discount_b,
        converged,
        iterations,
        multiple_roots,
    })
}

/// Per-line premium volume at equal sharing, `(N^T/k) * pi`.
fn volumes(pair: &LinePair, market: &MarketSpec) -> (f64, f64) {
    let va = market.demand_a / market.insurers_a as f64 * pair.line_a().pi();
    let vb = market.demand_b / market.insurers_b as f64 * pair.line_b().pi();
    (va, vb)
}

fn elasticity_factors(market: &MarketSpec) -> (f64, f64) {
    let ka = market.insurers_a as f64;
    let kb = market.insurers_b as f64;
    (
        market.reaction_a * (ka - 1.0) / ka,
        market.reaction_b * (kb - 1.0) / kb,
    )
}

/// Difference in total collected premiums, joint minus stand-alone, at
/// the loading `psi_star` (theta form).
///
/// Exact for the linearized demand; the sign is the decision-relevant
/// output.
pub fn premium_difference(
    pair: &LinePair,
    risk: &RiskSpec,
    market: &MarketSpec,
    psi_star: f64,
) -> f64 {
    premium_difference_forms(pair, risk, market, psi_star).0
}

/// Both algebraic forms of the collected-premium difference: the
/// quadratic theta form and the reaction-factor nbar form. They agree up
/// to rounding; tests pin the agreement.
pub fn premium_difference_forms(
    pair: &LinePair,
    risk: &RiskSpec,
    market: &MarketSpec,
    psi_star: f64,
) -> (f64, f64) {
    let psi_a = pair.psi_a(risk);
    let psi_b = pair.psi_b(risk);
    let (va, vb) = volumes(pair, market);
    let (ma, mb) = elasticity_factors(market);
    let u = 1.0 + psi_star;

    let theta1 = va * ma / (1.0 + psi_a) + vb * mb / (1.0 + psi_b);
    let theta2 = (va * ma + vb * mb) + (va + vb);
    let theta3 = va * (1.0 + psi_a) + vb * (1.0 + psi_b);
    let theta_form = -theta1 * u * u + theta2 * u - theta3;

    let nbar = vb / (va + vb);
    let per_unit = ma * u / (1.0 + psi_a) * (1.0 - nbar) * (psi_a - psi_star)
        + mb * u / (1.0 + psi_b) * nbar * (psi_b - psi_star)
        - ((1.0 - nbar) * (psi_a - psi_star) + nbar * (psi_b - psi_star));
    let nbar_form = per_unit * (va + vb);

    (theta_form, nbar_form)
}

/// Premium-volume weight of line B in the collected-premium difference.
///
/// `eta = vb*(psi_b - psi_min) / (va*(psi_a - psi_min) + vb*(psi_b -
/// psi_min))`; requires a competitiveness region so the denominator is
/// positive. Collapses to the volume share `nbar` when `psi_a = psi_b`.
pub fn eta(pair: &LinePair, risk: &RiskSpec, market: &MarketSpec) -> Result<f64, MarketError> {
    let region = pair.competitiveness_region(risk);
    if !region.exists {
        return Err(MarketError::Pricing(PricingError::NoCompetitivenessRegion {
            b_rho: pair.b() * pair.rho(),
        }));
    }
    let (va, vb) = volumes(pair, market);
    let num = vb * (region.psi_b - region.psi_min);
    Ok(num / (va * (region.psi_a - region.psi_min) + num))
}

/// Critical threshold `w_ct` in the market-demand proportion of line B:
/// the demand share at which the equilibrium loading equals `psi_a`.
///
/// `w_ct = n_ct / (n_ct + (1 - n_ct) * (k_a/k_b) * g)` with
/// `g = 1 + ((k_b-1)/k_b) * q_b * (psi_b - psi_a)/(1 + psi_b)`, the
/// demand re-weighting of line B at that loading. Equals 1 when `b = 1`
/// (no interior threshold).
pub fn demand_critical_threshold(
    pair: &LinePair,
    risk: &RiskSpec,
    market: &MarketSpec,
) -> Result<f64, MarketError> {
    let n_ct = pair.critical_threshold()?;
    let psi_a = pair.psi_a(risk);
    let psi_b = pair.psi_b(risk);
    let ka = market.insurers_a as f64;
    let kb = market.insurers_b as f64;
    let g = 1.0 + (kb - 1.0) / kb * market.reaction_b * (psi_b - psi_a) / (1.0 + psi_b);
    Ok(n_ct / (n_ct + (1.0 - n_ct) * ka / kb * g))
}

/// Verdict of a pricing-decision rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The sufficient conditions for joint pricing to collect more hold.
    JointFavored,
    /// The sufficient conditions for stand-alone pricing to collect more hold.
    SeparateFavored,
    /// Neither set of sufficient conditions holds.
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::JointFavored => "joint-favored",
            Verdict::SeparateFavored => "separate-favored",
            Verdict::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// Which rule produced a [`PricingDecision`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionRule {
    Theorem1,
    Corollary1,
}

impl std::fmt::Display for DecisionRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DecisionRule::Theorem1 => "theorem-1",
            DecisionRule::Corollary1 => "corollary-1",
        })
    }
}

/// Outcome of a decision rule, with each condition's name and truth value
/// and the advisory equilibrium evidence attached when indeterminate.
#[derive(Debug, Clone, PartialEq)]
pub struct PricingDecision {
    pub verdict: Verdict,
    pub rule: DecisionRule,
    pub conditions_checked: Vec<(String, bool)>,
    pub eta: f64,
    pub w_ct: f64,
    /// Collected-premium difference at the solved equilibrium; attached
    /// as advisory evidence when the verdict is indeterminate.
    pub advisory_d_ptf: Option<f64>,
}

struct DecisionContext {
    psi_a: f64,
    psi_b: f64,
    psi_min: f64,
    eta: f64,
    w_ct: f64,
    w_d: f64,
}

impl DecisionContext {
    fn build(pair: &LinePair, risk: &RiskSpec, market: &MarketSpec) -> Result<Self, MarketError> {
        let region = pair.competitiveness_region(risk);
        if !region.exists {
            return Err(MarketError::Pricing(PricingError::NoCompetitivenessRegion {
                b_rho: pair.b() * pair.rho(),
            }));
        }
        Ok(Self {
            psi_a: region.psi_a,
            psi_b: region.psi_b,
            psi_min: region.psi_min,
            eta: eta(pair, risk, market)?,
            w_ct: demand_critical_threshold(pair, risk, market)?,
            w_d: market.demand_share_b(),
        })
    }
}

fn advisory_evidence(
    pair: &LinePair,
    risk: &RiskSpec,
    market: &MarketSpec,
    verdict: Verdict,
) -> Option<f64> {
    if verdict != Verdict::Indeterminate {
        return None;
    }
    solve_equilibrium(pair, risk, market, DemandModel::Linearized)
        .ok()
        .map(|eq| premium_difference(pair, risk, market, eq.psi_star))
}

/// Sufficient-condition decision rule on the reaction factors, exact
/// branch structure on the demand share `w^d` relative to `w_ct`.
///
/// Joint pricing is favored when line B is elastic enough at the
/// stand-alone price gap and the `w^d`-branch condition holds; stand-alone
/// pricing is favored when both lines are inelastic (or A over-elastic
/// beyond the threshold). Neither set holding yields
/// [`Verdict::Indeterminate`] with the signed equilibrium
/// collected-premium difference attached.
pub fn decide_theorem1(
    pair: &LinePair,
    risk: &RiskSpec,
    market: &MarketSpec,
) -> Result<PricingDecision, MarketError> {
    let ctx = DecisionContext::build(pair, risk, market)?;
    let (qa, qb) = (market.reaction_a, market.reaction_b);
    let ka = market.insurers_a as f64;
    let kb = market.insurers_b as f64;
    let (ma, mb) = elasticity_factors(market);

    let joint_qb = qb > kb / (kb - 1.0) * (1.0 + ctx.psi_b) / (1.0 + ctx.psi_a);
    let joint_branch = if ctx.w_d < ctx.w_ct {
        (1.0 - ctx.eta) * ma * (1.0 + ctx.psi_min) / (1.0 + ctx.psi_a)
            + ctx.eta * mb * (1.0 + ctx.psi_min) / (1.0 + ctx.psi_b)
            > 1.0
    } else if ctx.w_d > ctx.w_ct {
        qa < ka / (ka - 1.0) * (1.0 + ctx.psi_a) / (1.0 + ctx.psi_b)
    } else {
        true // the first condition alone is sufficient at w_d = w_ct
    };

    let separate_qb = qb < kb / (kb - 1.0);
    let separate_branch = if ctx.w_d < ctx.w_ct {
        qa < ka / (ka - 1.0)
    } else if ctx.w_d > ctx.w_ct {
        qa > ka / (ka - 1.0)
    } else {
        true
    };

    let verdict = if joint_qb && joint_branch {
        Verdict::JointFavored
    } else if separate_qb && separate_branch {
        Verdict::SeparateFavored
    } else {
        Verdict::Indeterminate
    };
    let advisory_d_ptf = advisory_evidence(pair, risk, market, verdict);
    Ok(PricingDecision {
        verdict,
        rule: DecisionRule::Theorem1,
        conditions_checked: vec![
            ("joint: q_b elastic".into(), joint_qb),
            ("joint: w_d branch".into(), joint_branch),
            ("separate: q_b inelastic".into(), separate_qb),
            ("separate: w_d branch".into(), separate_branch),
        ],
        eta: ctx.eta,
        w_ct: ctx.w_ct,
        advisory_d_ptf,
    })
}

/// Simpler sufficient rule with provider-count-free thresholds; decisive
/// only on a subset of the cases the full rule decides.
pub fn decide_corollary(
    pair: &LinePair,
    risk: &RiskSpec,
    market: &MarketSpec,
) -> Result<PricingDecision, MarketError> {
    let ctx = DecisionContext::build(pair, risk, market)?;
    let (qa, qb) = (market.reaction_a, market.reaction_b);

    let joint_qb = qb > 2.0 * (1.0 + ctx.psi_b) / (1.0 + ctx.psi_min);
    let joint_branch = if ctx.w_d < ctx.w_ct {
        qa > 2.0 * (1.0 + ctx.psi_a) / (1.0 + ctx.psi_min)
    } else if ctx.w_d > ctx.w_ct {
        qa < (1.0 + ctx.psi_a) / (1.0 + ctx.psi_b)
    } else {
        true // implies the full rule's sufficient condition at w_d = w_ct
    };

    let separate_qb = qb < 1.0;
    let separate_branch = if ctx.w_d < ctx.w_ct {
        qa < 1.0
    } else if ctx.w_d > ctx.w_ct {
        qa > 2.0
    } else {
        true
    };

    let verdict = if joint_qb && joint_branch {
        Verdict::JointFavored
    } else if separate_qb && separate_branch {
        Verdict::SeparateFavored
    } else {
        Verdict::Indeterminate
    };
    let advisory_d_ptf = advisory_evidence(pair, risk, market, verdict);
    Ok(PricingDecision {
        verdict,
        rule: DecisionRule::Corollary1,
        conditions_checked: vec![
            ("joint: q_b elastic".into(), joint_qb),
            ("joint: w_d branch".into(), joint_branch),
            ("separate: q_b inelastic".into(), separate_qb),
            ("separate: w_d branch".into(), separate_branch),
        ],
        eta: ctx.eta,
        w_ct: ctx.w_ct,
        advisory_d_ptf,
    })
}

/// One evaluated grid point of a demand-share sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    /// Market proportion of demand for line B.
    pub w_d: f64,
    /// Solved equilibrium and relative collected-premium difference, or
    /// the per-point failure.
    pub outcome: Result<SweepValue, MarketError>,
}

/// Solved values at one sweep grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepValue {
    pub psi_star: f64,
    /// `d_ptf` divided by the stand-alone total collected premiums.
    pub relative_d_ptf: f64,
}

/// Sweeps the demand share `w^d` over `grid`, splitting `total_market`
/// into `N^T_b = w^d * total` and `N^T_a = (1 - w^d) * total` around the
/// template's provider counts and reaction factors.
///
/// Positive relative differences indicate joint pricing collects more.
pub fn sweep_demand_share(
    pair: &LinePair,
    risk: &RiskSpec,
    template: &MarketSpec,
    model: DemandModel,
    grid: &[f64],
    total_market: f64,
) -> Vec<SweepPoint> {
    grid.iter()
        .map(|&w_d| {
            let outcome = sweep_point(pair, risk, template, model, w_d, total_market);
            SweepPoint { w_d, outcome }
        })
        .collect()
}

fn sweep_point(
    pair: &LinePair,
    risk: &RiskSpec,
    template: &MarketSpec,
    model: DemandModel,
    w_d: f64,
    total_market: f64,
) -> Result<SweepValue, MarketError> {
    if !(0.0..1.0).contains(&w_d) || w_d == 0.0 {
        return Err(MarketError::InvalidSpec(format!(
            "demand share {w_d} outside (0, 1)"
        )));
    }
    let market = template.with_demands((1.0 - w_d) * total_market, w_d * total_market)?;
    let eq = solve_equilibrium(pair, risk, &market, model)?;
    let d_ptf = premium_difference(pair, risk, &market, eq.psi_star);
    let (va, vb) = volumes(pair, &market);
    let standalone_total = va * (1.0 + pair.psi_a(risk)) + vb * (1.0 + pair.psi_b(risk));
    Ok(SweepValue {
        psi_star: eq.psi_star,
        relative_d_ptf: d_ptf / standalone_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pricing::BusinessLine;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn table_pair_benefit10() -> LinePair {
        let annuity = BusinessLine::new("annuity", 19.84, 0.1821759).unwrap();
        let assurance = BusinessLine::new("assurance", 0.6091786, 0.04535378).unwrap();
        LinePair::new(annuity, assurance, -0.8282).unwrap()
    }

    fn risk() -> RiskSpec {
        RiskSpec::new(0.5, 1.686).unwrap()
    }

    #[test]
    fn demand_equal_split_at_zero_discount() {
        for model in [DemandModel::Logistic, DemandModel::Linearized] {
            assert_relative_eq!(demand(model, 1000.0, 10, 3.7, 0.0), 100.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn demand_linearized_hand_value() {
        assert_relative_eq!(
            demand(DemandModel::Linearized, 1000.0, 10, 2.0, -0.05),
            109.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn demand_logistic_bounds() {
        let total = 500.0;
        assert!(demand(DemandModel::Logistic, total, 5, 2.0, 1e6) < 1e-9);
        let huge_discount = demand(DemandModel::Logistic, total, 5, 2.0, -1e6);
        assert!(huge_discount <= total && huge_discount > total * 0.999999);
        for c in [-0.5, -0.1, 0.0, 0.1, 0.5] {
            let n = demand(DemandModel::Logistic, total, 5, 2.0, c);
            assert!(n > 0.0 && n < total);
        }
    }

    #[test]
    fn demand_linearized_clamps_at_zero() {
        assert_eq!(demand(DemandModel::Linearized, 100.0, 2, 10.0, 0.9), 0.0);
    }

    #[test]
    fn demand_models_agree_to_first_order() {
        // |lin - log| <= K * c^2 for |c| <= 0.1
        let (total, k, q) = (1000.0, 10u32, 3.0);
        let base = total / k as f64;
        for i in 0..=40 {
            let c = -0.1 + 0.005 * i as f64;
            let lin = demand(DemandModel::Linearized, total, k, q, c);
            let log = demand(DemandModel::Logistic, total, k, q, c);
            assert!(
                (lin - log).abs() <= 2.0 * base * q * q * c * c + 1e-9,
                "c = {c}: lin = {lin}, log = {log}"
            );
        }
    }

    #[test]
    fn equilibrium_residual_small_and_in_bracket() {
        let pair = table_pair_benefit10();
        let risk = risk();
        let region = pair.competitiveness_region(&risk);
        for model in [DemandModel::Linearized, DemandModel::Logistic] {
            let market = MarketSpec::new(1000.0, 1000.0, 10, 10, 3.0, 3.0).unwrap();
            let eq = solve_equilibrium(&pair, &risk, &market, model).unwrap();
            assert!(eq.converged);
            let g = pair.joint_loading(&risk, eq.n_star).unwrap();
            assert!((eq.psi_star - g).abs() <= EQUILIBRIUM_TOL * (1.0 + eq.psi_star));
            assert!(eq.psi_star >= region.psi_min - 1e-12 && eq.psi_star <= region.psi_b + 1e-12);
            // w^d = 0.5 sits below w_ct here, so the joint pricer undercuts line A
            assert!(eq.psi_star < region.psi_a);
            assert!(eq.psi_star > region.psi_min);
        }
    }

    #[test]
    fn equilibrium_limits_in_demand_share() {
        let pair = table_pair_benefit10();
        let risk = risk();
        let region = pair.competitiveness_region(&risk);
        // w^d -> 0: all-A portfolio, psi* -> psi_a
        let market = MarketSpec::new(1e9, 3.0, 10, 2, 2.0, 2.0).unwrap();
        let eq = solve_equilibrium(&pair, &risk, &market, DemandModel::Linearized).unwrap();
        assert_abs_diff_eq!(eq.psi_star, region.psi_a, epsilon = 1e-6);
        // w^d -> 1: all-B portfolio, psi* -> psi_b
        let market = MarketSpec::new(11.0, 1e9, 10, 10, 2.0, 2.0).unwrap();
        let eq = solve_equilibrium(&pair, &risk, &market, DemandModel::Linearized).unwrap();
        assert_abs_diff_eq!(eq.psi_star, region.psi_b, epsilon = 1e-6);
        assert!(eq.n_star > 0.999999);
    }

    #[test]
    fn equilibrium_at_critical_demand_share_hits_psi_a() {
        let pair = table_pair_benefit10();
        let risk = risk();
        let market = MarketSpec::new(1000.0, 1000.0, 10, 10, 3.0, 0.5).unwrap();
        let w_ct = demand_critical_threshold(&pair, &risk, &market).unwrap();
        assert_relative_eq!(w_ct, 0.8835250693974581, max_relative = 1e-12);
        let total = 2000.0;
        let at_ct = market
            .with_demands((1.0 - w_ct) * total, w_ct * total)
            .unwrap();
        let eq = solve_equilibrium(&pair, &risk, &at_ct, DemandModel::Linearized).unwrap();
        assert!((eq.psi_star - pair.psi_a(&risk)).abs() <= 1e-8);
    }

    #[test]
    fn critical_demand_share_limits() {
        let pair = table_pair_benefit10();
        let risk = risk();
        // q_b -> 0 with k_a = k_b collapses w_ct to n_ct
        let market = MarketSpec::new(100.0, 100.0, 6, 6, 1.0, 1e-12).unwrap();
        let w_ct = demand_critical_threshold(&pair, &risk, &market).unwrap();
        assert_relative_eq!(w_ct, pair.critical_threshold().unwrap(), max_relative = 1e-9);
        // b = 1: no interior threshold
        let a = BusinessLine::new("a", 2.0, 0.2).unwrap();
        let b = BusinessLine::new("b", 4.0, 0.4).unwrap();
        let flat = LinePair::new(a, b, -0.2).unwrap();
        let market = MarketSpec::new(100.0, 100.0, 4, 4, 1.0, 2.0).unwrap();
        assert_relative_eq!(
            demand_critical_threshold(&flat, &risk, &market).unwrap(),
            1.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn eta_symmetry_and_volume_share() {
        let risk = risk();
        // psi_a = psi_b with symmetric market halves: eta = 1/2
        let a = BusinessLine::new("a", 2.0, 0.2).unwrap();
        let b = BusinessLine::new("b", 2.0, 0.2).unwrap();
        let pair = LinePair::new(a, b, -0.5).unwrap();
        let market = MarketSpec::new(500.0, 500.0, 5, 5, 1.0, 1.0).unwrap();
        assert_relative_eq!(eta(&pair, &risk, &market).unwrap(), 0.5, max_relative = 1e-12);
        // psi_a = psi_b generally: eta equals the premium-volume share nbar
        let a = BusinessLine::new("a", 2.0, 0.2).unwrap();
        let b = BusinessLine::new("b", 6.0, 0.6).unwrap();
        let pair = LinePair::new(a, b, -0.5).unwrap();
        let market = MarketSpec::new(700.0, 300.0, 5, 8, 1.0, 1.0).unwrap();
        let (va, vb) = volumes(&pair, &market);
        assert_relative_eq!(
            eta(&pair, &risk, &market).unwrap(),
            vb / (va + vb),
            max_relative = 1e-12
        );
    }

    #[test]
    fn eta_direct_formula_cross_check() {
        let pair = table_pair_benefit10();
        let risk = risk();
        let market = MarketSpec::new(1000.0, 1000.0, 10, 10, 2.0, 2.0).unwrap();
        let region = pair.competitiveness_region(&risk);
        let va = 1000.0 / 10.0 * 19.84;
        let vb = 1000.0 / 10.0 * 0.6091786;
        let expected = vb * (region.psi_b - region.psi_min)
            / (va * (region.psi_a - region.psi_min) + vb * (region.psi_b - region.psi_min));
        assert_relative_eq!(eta(&pair, &risk, &market).unwrap(), expected, max_relative = 1e-12);
        assert!((0.0..1.0).contains(&expected));
    }

    #[test]
    fn premium_difference_zero_without_price_moves() {
        // psi_a = psi_b and psi_star equal to both: zero discounts, equal
        // sharing, no difference
        let a = BusinessLine::new("a", 2.0, 0.2).unwrap();
        let b = BusinessLine::new("b", 3.0, 0.3).unwrap();
        let pair = LinePair::new(a, b, -0.4).unwrap();
        let risk = risk();
        let market = MarketSpec::new(400.0, 600.0, 4, 7, 1.3, 0.8).unwrap();
        let psi = pair.psi_a(&risk);
        let (theta, nbar) = premium_difference_forms(&pair, &risk, &market, psi);
        assert_abs_diff_eq!(theta, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(nbar, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn theorem_and_corollary_on_the_demo_configuration() {
        let pair = table_pair_benefit10();
        let risk = risk();
        let region = pair.competitiveness_region(&risk);
        // reference corollary thresholds for this configuration
        assert_relative_eq!(
            2.0 * (1.0 + region.psi_b) / (1.0 + region.psi_min),
            2.1172067867479747,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            2.0 * (1.0 + region.psi_a) / (1.0 + region.psi_min),
            2.0075947598389376,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            (1.0 + region.psi_a) / (1.0 + region.psi_b),
            0.9482280013482288,
            max_relative = 1e-12
        );

        // q_a = q_b = 0.5 below the threshold: stand-alone favored
        let market = MarketSpec::new(1400.0, 600.0, 10, 10, 0.5, 0.5).unwrap();
        let decision = decide_corollary(&pair, &risk, &market).unwrap();
        assert_eq!(decision.verdict, Verdict::SeparateFavored);
        let decision = decide_theorem1(&pair, &risk, &market).unwrap();
        assert_eq!(decision.verdict, Verdict::SeparateFavored);

        // q_a = q_b = 3 below the threshold: joint favored (corollary bands)
        let market = MarketSpec::new(1400.0, 600.0, 10, 10, 3.0, 3.0).unwrap();
        let decision = decide_corollary(&pair, &risk, &market).unwrap();
        assert_eq!(decision.verdict, Verdict::JointFavored);

        // between the bands: indeterminate, with advisory evidence attached
        let market = MarketSpec::new(1400.0, 600.0, 10, 10, 1.5, 1.5).unwrap();
        let decision = decide_corollary(&pair, &risk, &market).unwrap();
        assert_eq!(decision.verdict, Verdict::Indeterminate);
        assert!(decision.advisory_d_ptf.is_some());
    }

    #[test]
    fn sweep_vanishes_with_the_demand_share() {
        // w^d -> 0: the portfolio effect on B disappears, psi* -> psi_a,
        // both discounts -> 0, and the relative difference -> 0
        let pair = table_pair_benefit10();
        let risk = risk();
        let template = MarketSpec::new(100.0, 100.0, 10, 10, 2.0, 2.0).unwrap();
        let grid = [1e-4, 1e-3, 1e-2];
        let points = sweep_demand_share(
            &pair,
            &risk,
            &template,
            DemandModel::Linearized,
            &grid,
            1e7,
        );
        let rels: Vec<f64> = points
            .iter()
            .map(|p| p.outcome.as_ref().unwrap().relative_d_ptf.abs())
            .collect();
        assert!(rels[0] < rels[2], "smaller shares give smaller effects: {rels:?}");
        assert!(rels[0] <= 1e-6, "rel d_ptf at w=1e-4: {}", rels[0]);
    }

    #[test]
    fn sweep_matches_single_point_and_reports_errors() {
        let pair = table_pair_benefit10();
        let risk = risk();
        let template = MarketSpec::new(100.0, 100.0, 10, 10, 3.0, 3.0).unwrap();
        let points = sweep_demand_share(
            &pair,
            &risk,
            &template,
            DemandModel::Linearized,
            &[0.5],
            2000.0,
        );
        assert_eq!(points.len(), 1);
        let value = points[0].outcome.as_ref().unwrap();
        let market = template.with_demands(1000.0, 1000.0).unwrap();
        let eq = solve_equilibrium(&pair, &risk, &market, DemandModel::Linearized).unwrap();
        assert_relative_eq!(value.psi_star, eq.psi_star, max_relative = 1e-12);
        // a grid point that breaks the k < N^T invariant carries its own error
        let points = sweep_demand_share(
            &pair,
            &risk,
            &template,
            DemandModel::Linearized,
            &[0.001],
            2000.0,
        );
        assert!(points[0].outcome.is_err());
    }
}
