//! Acceptance suite: one test per shipped criterion, each printing a
//! PASS line with its measured numbers (run with `--nocapture` to see
//! them).

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use jointprice_core::market::{
    decide_corollary, decide_theorem1, demand_critical_threshold, premium_difference_forms,
    solve_equilibrium, sweep_demand_share, DemandModel, MarketSpec, Verdict,
};
use jointprice_core::mortality::synthetic::{
    datasets_from_params, synthetic_params, SyntheticSpec,
};
use jointprice_core::mortality::{
    calibrate_gamma, fit_li_lee, present_value, simulate_scenarios, summarize, ProductKind,
    ProductSpec,
};
use jointprice_core::pricing::{BusinessLine, LinePair, RiskSpec};
use jointprice_core::screen::kpss_statistic;

/// Reference pure premiums and standard deviations per unit of benefit
/// for the annuity (A) and assurance (B) lines, with their correlation.
const PI_A: f64 = 19.84;
const SIGMA_A: f64 = 0.1821759;
const PI_B: f64 = 0.06091786;
const SIGMA_B: f64 = 0.004535378;
const RHO: f64 = -0.8282;

fn table_pair() -> LinePair {
    LinePair::new(
        BusinessLine::new("annuity", PI_A, SIGMA_A).unwrap(),
        BusinessLine::new("assurance", PI_B, SIGMA_B).unwrap(),
        RHO,
    )
    .unwrap()
}

/// Same lines with the assurance benefit scaled tenfold (the sweep
/// demo configuration).
fn table_pair_benefit10() -> LinePair {
    LinePair::new(
        BusinessLine::new("annuity", PI_A, SIGMA_A).unwrap(),
        BusinessLine::new("assurance", PI_B * 10.0, SIGMA_B * 10.0).unwrap(),
        RHO,
    )
    .unwrap()
}

fn risk() -> RiskSpec {
    RiskSpec::new(0.5, 1.686).unwrap()
}

/// Random pair draw over a wide domain; loadings psi = zeta*gamma*cv.
fn draw_pair(rng: &mut ChaCha8Rng) -> LinePair {
    let pi_a = 10f64.powf(rng.random_range(-2.0..2.0));
    let pi_b = 10f64.powf(rng.random_range(-2.0..2.0));
    let cv_a = rng.random_range(1e-3..0.5);
    let cv_b = rng.random_range(1e-3..0.5);
    let rho = rng.random_range(-1.0 + 1e-9..1.0 - 1e-6);
    LinePair::new(
        BusinessLine::new("a", pi_a, pi_a * cv_a).unwrap(),
        BusinessLine::new("b", pi_b, pi_b * cv_b).unwrap(),
        rho,
    )
    .unwrap()
}

fn draw_risk(rng: &mut ChaCha8Rng) -> RiskSpec {
    RiskSpec::new(rng.random_range(0.05..0.95), rng.random_range(0.1..4.0)).unwrap()
}

/// Independent minimizer: golden-section search plus an exact
/// parabolic-vertex polish in the benefit-weighted coordinate (the
/// squared loading is a quadratic there). Plain comparison-based search
/// bottoms out near sqrt(machine eps) in the argument on flat basins, so
/// the polish is required to certify 1e-8.
fn golden_section_min(pair: &LinePair, risk: &RiskSpec) -> f64 {
    let f = |x: f64| pair.joint_loading(risk, x).unwrap();
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-10 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let coarse = 0.5 * (lo + hi);
    let nt = pair.n_tilde(coarse);
    let delta = 0.05f64.min(nt.min(1.0 - nt)).max(1e-6);
    let sq = |nt: f64| f(pair.n_from_tilde(nt)).powi(2);
    let (fa, fb, fc) = (sq(nt - delta), sq(nt), sq(nt + delta));
    let denom = fa - 2.0 * fb + fc;
    if denom <= 0.0 {
        return coarse;
    }
    let vertex = nt + delta * (fa - fc) / (2.0 * denom);
    let polished = pair.n_from_tilde(vertex.clamp(0.0, 1.0));
    if f(polished) <= f(coarse) * (1.0 + 1e-12) {
        polished
    } else {
        coarse
    }
}

#[test]
fn criterion_01_corollary_thresholds() {
    let started = Instant::now();
    let pair = table_pair();
    let region = pair.competitiveness_region(&risk());
    let high = 2.0 * (1.0 + region.psi_b) / (1.0 + region.psi_min);
    let mid = 2.0 * (1.0 + region.psi_a) / (1.0 + region.psi_min);
    let low = (1.0 + region.psi_a) / (1.0 + region.psi_b);
    let elapsed = started.elapsed();
    assert!((high - 2.12).abs() <= 0.01, "2(1+psi_b)/(1+psi_min) = {high}");
    assert!((mid - 2.01).abs() <= 0.01, "2(1+psi_a)/(1+psi_min) = {mid}");
    assert!((low - 0.95).abs() <= 0.005, "(1+psi_a)/(1+psi_b) = {low}");
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    println!(
        "criterion 01 PASS corollary thresholds {high:.4}, {mid:.4}, {low:.4} in {elapsed:?}"
    );
}

#[test]
fn criterion_02_minimum_matches_golden_section_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut checked = 0usize;
    let mut worst_dn = 0f64;
    let mut worst_dpsi = 0f64;
    while checked < 10_000 {
        let pair = draw_pair(&mut rng);
        if pair.b() * pair.rho() >= 1.0 {
            continue;
        }
        let risk = draw_risk(&mut rng);
        let report = pair.competitiveness_region(&risk);
        let oracle_n = golden_section_min(&pair, &risk);
        let oracle_psi = pair.joint_loading(&risk, oracle_n).unwrap();
        let dn = (oracle_n - report.n_min).abs();
        let dpsi = (oracle_psi - report.psi_min).abs() / report.psi_min.max(1e-300);
        worst_dn = worst_dn.max(dn);
        worst_dpsi = worst_dpsi.max(dpsi);
        assert!(dn <= 1e-8, "draw {checked}: |dn| = {dn}");
        assert!(dpsi <= 1e-10, "draw {checked}: |dpsi|/psi = {dpsi}");
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!(
        "criterion 02 PASS 10000 draws, worst |dn| {worst_dn:.2e}, worst rel dpsi {worst_dpsi:.2e} in {elapsed:?}"
    );
}

#[test]
fn criterion_03_critical_threshold_is_the_break_even() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut checked = 0usize;
    let mut worst = 0f64;
    while checked < 10_000 {
        let pair = draw_pair(&mut rng);
        if pair.b() * pair.rho() >= 1.0 || pair.b() <= 1.0 + 1e-9 {
            continue;
        }
        let risk = draw_risk(&mut rng);
        let psi_a = pair.psi_a(&risk);
        let n_ct = pair.critical_threshold().unwrap();
        let at = pair.joint_loading(&risk, n_ct).unwrap();
        let rel = (at - psi_a).abs() / psi_a;
        worst = worst.max(rel);
        assert!(rel <= 1e-10, "draw {checked}: psi(n_ct) off by {rel}");
        // sign flips across n_ct (samples clamped inside (0, 1))
        let below = (n_ct - 1e-4).max(0.5 * n_ct);
        let above = if n_ct + 1e-4 <= 1.0 {
            n_ct + 1e-4
        } else {
            0.5 * (n_ct + 1.0)
        };
        assert!(pair.joint_loading(&risk, below).unwrap() < psi_a);
        assert!(pair.joint_loading(&risk, above).unwrap() > psi_a);
        checked += 1;
    }
    println!("criterion 03 PASS 10000 draws, worst rel |psi(n_ct) - psi_a| {worst:.2e}");
}

#[test]
fn criterion_04_monitoring_interval_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut checked = 0usize;
    let mut worst = 0f64;
    while checked < 10_000 {
        let pair = draw_pair(&mut rng);
        if pair.b() * pair.rho() >= 1.0 {
            continue;
        }
        let risk = draw_risk(&mut rng);
        let report = pair.competitiveness_region(&risk);
        // psi_star in (psi_min, psi_a]
        let mix: f64 = rng.random_range(1e-6..=1.0);
        let psi_star = report.psi_min + mix * (report.psi_a - report.psi_min);
        let (n_l, n_u) = pair.monitoring_interval(&risk, psi_star).unwrap();
        for n in [n_l, n_u] {
            let at = pair.joint_loading(&risk, n).unwrap();
            let err = (at - psi_star).abs() / (1.0 + psi_star);
            worst = worst.max(err);
            assert!(err <= 1e-10, "draw {checked}: psi({n}) off by {err}");
        }
        assert!(n_l <= report.n_min + 1e-12 && report.n_min <= n_u + 1e-12);
        checked += 1;
    }
    // collapse at the minimum
    let pair = table_pair();
    let report = pair.competitiveness_region(&risk());
    let (n_l, n_u) = pair.monitoring_interval(&risk(), report.psi_min).unwrap();
    assert!((n_l - report.n_min).abs() <= 1e-6 && (n_u - report.n_min).abs() <= 1e-6);
    assert!(n_u - n_l <= 1e-6, "interval should collapse, got {}", n_u - n_l);
    println!("criterion 04 PASS 10000 draws, worst root residual {worst:.2e}; collapse verified");
}

#[test]
fn criterion_05_two_forms_of_premium_difference_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut worst = 0f64;
    for draw in 0..10_000 {
        let pair = draw_pair(&mut rng);
        let risk = draw_risk(&mut rng);
        let market = MarketSpec::new(
            rng.random_range(1e2..1e6),
            rng.random_range(1e2..1e6),
            rng.random_range(2..100),
            rng.random_range(2..100),
            rng.random_range(0.05..5.0),
            rng.random_range(0.05..5.0),
        )
        .unwrap();
        let region = pair.competitiveness_region(&risk);
        let psi_star =
            region.psi_min + rng.random_range(0.0..=1.0) * (region.psi_b - region.psi_min);
        let (theta, nbar) = premium_difference_forms(&pair, &risk, &market, psi_star);
        let scale = market.demand_a() / market.insurers_a() as f64 * pair.line_a().pi()
            + market.demand_b() / market.insurers_b() as f64 * pair.line_b().pi();
        let rel = (theta - nbar).abs() / (scale + theta.abs());
        worst = worst.max(rel);
        assert!(rel <= 1e-9, "draw {draw}: forms differ by {rel}");
    }
    println!("criterion 05 PASS 10000 draws, worst relative gap {worst:.2e}");
}

#[test]
fn criterion_06_decision_rules_never_contradict_the_equilibrium() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut checked = 0usize;
    let mut decisive = 0usize;
    while checked < 10_000 {
        // moderate loadings keep the linearized demand positive over the
        // whole bracket (q * |c| < 1)
        let pi_a = 10f64.powf(rng.random_range(-1.0..2.0));
        let pi_b = 10f64.powf(rng.random_range(-1.0..2.0));
        let cv_a = rng.random_range(5e-3..0.1);
        let cv_b = rng.random_range(5e-3..0.1);
        let rho = rng.random_range(-0.99..0.99);
        let pair = LinePair::new(
            BusinessLine::new("a", pi_a, pi_a * cv_a).unwrap(),
            BusinessLine::new("b", pi_b, pi_b * cv_b).unwrap(),
            rho,
        )
        .unwrap();
        if pair.b() * pair.rho() >= 1.0 {
            continue;
        }
        let risk = RiskSpec::new(
            rng.random_range(0.1..0.8),
            rng.random_range(0.25..2.5),
        )
        .unwrap();
        let market = MarketSpec::new(
            rng.random_range(1e2..1e6),
            rng.random_range(1e2..1e6),
            rng.random_range(2..100),
            rng.random_range(2..100),
            rng.random_range(0.05..4.9),
            rng.random_range(0.05..4.9),
        )
        .unwrap();
        let theorem = decide_theorem1(&pair, &risk, &market).unwrap();
        let corollary = decide_corollary(&pair, &risk, &market).unwrap();
        if corollary.verdict != Verdict::Indeterminate {
            assert_eq!(
                corollary.verdict, theorem.verdict,
                "draw {checked}: the simple rule contradicts the full rule"
            );
        }
        if theorem.verdict != Verdict::Indeterminate {
            decisive += 1;
            let eq = solve_equilibrium(&pair, &risk, &market, DemandModel::Linearized).unwrap();
            assert!(eq.converged && !eq.multiple_roots, "draw {checked}: irregular equilibrium");
            let d_ptf = premium_difference_forms(&pair, &risk, &market, eq.psi_star).0;
            match theorem.verdict {
                Verdict::JointFavored => {
                    assert!(d_ptf > 0.0, "draw {checked}: joint verdict but d_ptf = {d_ptf}")
                }
                Verdict::SeparateFavored => {
                    assert!(d_ptf < 0.0, "draw {checked}: separate verdict but d_ptf = {d_ptf}")
                }
                Verdict::Indeterminate => unreachable!(),
            }
        }
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 06 PASS 10000 draws ({decisive} decisive), zero contradictions in {elapsed:?}"
    );
}

#[test]
fn criterion_07_swept_sign_patterns() {
    let pair = table_pair_benefit10();
    let risk = risk();
    let grid: Vec<f64> = (1..=19).map(|k| k as f64 * 0.05).collect();
    let total = 2000.0;

    let run = |qa: f64, qb: f64| -> Vec<f64> {
        let template = MarketSpec::new(1000.0, 1000.0, 10, 10, qa, qb).unwrap();
        sweep_demand_share(&pair, &risk, &template, DemandModel::Linearized, &grid, total)
            .into_iter()
            .map(|p| p.outcome.expect("grid point solves").relative_d_ptf)
            .collect()
    };

    // both lines inelastic: stand-alone collects more everywhere
    let low_low = run(0.5, 0.5);
    assert!(low_low.iter().all(|&d| d < 0.0), "(0.5, 0.5): {low_low:?}");
    // both elastic: joint collects more everywhere
    let high_high = run(3.0, 3.0);
    assert!(high_high.iter().all(|&d| d > 0.0), "(3, 3): {high_high:?}");
    // elastic riskier line: joint collects more for all demand shares
    let low_high = run(0.5, 3.0);
    assert!(low_high.iter().all(|&d| d > 0.0), "(0.5, 3): {low_high:?}");

    // elastic safer line only: the verdict flips near the critical
    // demand share (exactly at it the riskier side's inelasticity already
    // loses money, so the crossing sits just below w_ct)
    let high_low = run(3.0, 0.5);
    let market = MarketSpec::new(1000.0, 1000.0, 10, 10, 3.0, 0.5).unwrap();
    let w_ct = demand_critical_threshold(&pair, &risk, &market).unwrap();
    let sign_changes: Vec<usize> = high_low
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].signum() != w[1].signum())
        .map(|(i, _)| i)
        .collect();
    assert_eq!(
        sign_changes.len(),
        1,
        "(3, 0.5) must flip exactly once: {high_low:?}"
    );
    let flip = sign_changes[0];
    assert!(high_low[flip] > 0.0 && high_low[flip + 1] < 0.0);
    let (w_lo, w_hi) = (grid[flip], grid[flip + 1]);
    assert!(
        w_hi <= w_ct + 1e-9 && w_lo >= w_ct - 0.1,
        "flip bracket ({w_lo}, {w_hi}) vs w_ct = {w_ct}"
    );
    println!(
        "criterion 07 PASS four sweep patterns match; (3,0.5) flips in ({w_lo}, {w_hi}], w_ct = {w_ct:.4}"
    );
}

#[test]
fn criterion_08_risk_reduction_gap_is_subadditive() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for draw in 0..10_000 {
        // force the correlation extremes onto the boundary draws
        let rho = match draw % 100 {
            0 => -1.0 + 1e-9,
            1 => 0.999999,
            _ => rng.random_range(-1.0 + 1e-9..1.0 - 1e-6),
        };
        let pi_a = 10f64.powf(rng.random_range(-2.0..2.0));
        let pi_b = 10f64.powf(rng.random_range(-2.0..2.0));
        let pair = LinePair::new(
            BusinessLine::new("a", pi_a, pi_a * rng.random_range(1e-3..0.5)).unwrap(),
            BusinessLine::new("b", pi_b, pi_b * rng.random_range(1e-3..0.5)).unwrap(),
            rho,
        )
        .unwrap();
        let risk = draw_risk(&mut rng);
        let gap = pair
            .risk_reduction_gap(
                &risk,
                rng.random_range(1e-2..1e4),
                rng.random_range(1e-2..1e4),
            )
            .unwrap();
        assert!(gap >= 0.0, "draw {draw}: gap = {gap}");
    }
    println!("criterion 08 PASS 10000 draws including correlation extremes, gap >= 0");
}

#[test]
fn criterion_09_mortality_pipeline() {
    let started = Instant::now();

    // exact recovery on the mirrored noiseless fixture
    let params = synthetic_params(&SyntheticSpec::mirrored(), 7);
    let (ds_a, ds_b) = datasets_from_params(&params, 0.0, 0);
    let fitted = fit_li_lee(&ds_a, &ds_b).unwrap();
    let max_abs = |xs: &[f64], ys: &[f64]| -> f64 {
        xs.iter()
            .zip(ys)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    };
    let mut worst_fit = max_abs(&fitted.beta_common, &params.beta_common);
    worst_fit = worst_fit.max(max_abs(&fitted.kappa_common, &params.kappa_common));
    for i in 0..2 {
        worst_fit = worst_fit.max(max_abs(&fitted.alpha[i], &params.alpha[i]));
        worst_fit = worst_fit.max(max_abs(&fitted.beta_specific[i], &params.beta_specific[i]));
        worst_fit = worst_fit.max(max_abs(&fitted.kappa_specific[i], &params.kappa_specific[i]));
    }
    assert!(worst_fit <= 1e-8, "exact recovery off by {worst_fit}");

    // determinism of a fixed seed
    let set1 = simulate_scenarios(&fitted, 30, 2_000, 42).unwrap();
    let set2 = simulate_scenarios(&fitted, 30, 2_000, 42).unwrap();
    let annuity = ProductSpec::new(ProductKind::TermAnnuity, 60, 30, 1.0, 1.0 / 1.02).unwrap();
    let assurance = ProductSpec::new(ProductKind::TermAssurance, 30, 30, 1.0, 1.0 / 1.02).unwrap();
    let values = |set: &jointprice_core::mortality::ScenarioSet| {
        let a: Vec<f64> = set.iter().map(|s| present_value(&s, &annuity).unwrap()).collect();
        let b: Vec<f64> = set.iter().map(|s| present_value(&s, &assurance).unwrap()).collect();
        (a, b)
    };
    let (a1, b1) = values(&set1);
    let (a2, b2) = values(&set2);
    assert_eq!(a1, a2);
    assert_eq!(b1, b2);

    // opposite exposures under a dominant common factor
    let params_cd = synthetic_params(&SyntheticSpec::common_dominant(), 17);
    let (ds_a, ds_b) = datasets_from_params(&params_cd, 0.0, 0);
    let fitted_cd = fit_li_lee(&ds_a, &ds_b).unwrap();
    let set = simulate_scenarios(&fitted_cd, 30, 5_000, 99).unwrap();
    let (va, vb) = values(&set);
    let summary = summarize(&va, &vb, 99).unwrap();
    assert!(summary.rho < 0.0, "rho = {}", summary.rho);

    // Gaussian oracle: calibrated gamma ~ the 95% normal quantile
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let n = 100_000;
    let (mut ga, mut gb) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let rho: f64 = -0.6;
    for _ in 0..n {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        ga.push(10.0 + 0.8 * z1);
        gb.push(2.0 + 0.5 * (rho * z1 + (1.0 - rho * rho).sqrt() * z2));
    }
    let gamma = calibrate_gamma(&ga, &gb, 0.5, 0.95, 21).unwrap();
    let z95 = 1.6448536269514722;
    let rel = (gamma - z95).abs() / z95;
    assert!(rel <= 0.02, "gamma = {gamma}, off the normal quantile by {rel}");

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!(
        "criterion 09 PASS fit residual {worst_fit:.2e}, rho {:.3}, gamma {gamma:.4} in {elapsed:?}",
        summary.rho
    );
}

#[test]
fn criterion_10_kpss_size_and_power() {
    let started = Instant::now();
    let t = 200;
    let mut size_rejections = 0usize;
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let series: Vec<f64> = (0..t).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        if !kpss_statistic(&series, None).unwrap().1 {
            size_rejections += 1;
        }
    }
    let mut power_rejections = 0usize;
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + seed);
        let mut level = 0.0f64;
        let series: Vec<f64> = (0..t)
            .map(|_| {
                level += rng.sample::<f64, _>(StandardNormal);
                level
            })
            .collect();
        if !kpss_statistic(&series, None).unwrap().1 {
            power_rejections += 1;
        }
    }
    let size = size_rejections as f64 / 1000.0;
    let power = power_rejections as f64 / 1000.0;
    let elapsed = started.elapsed();
    assert!(size <= 0.08, "null rejection rate {size}");
    assert!(power >= 0.95, "random-walk rejection rate {power}");
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 10 PASS size {size:.3}, power {power:.3} in {elapsed:?}");
}

#[test]
fn criterion_11_screening_matrix_structure() {
    // run the actual screening command on the bundled 10-line fixture
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/losses_10lines.csv");
    let out_dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance_screen");
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_jointprice"))
        .args([
            "screen",
            "--input",
            fixture,
            "--out",
            out_dir.to_str().unwrap(),
        ])
        .output()
        .expect("run the screen command");
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );

    let text = std::fs::read_to_string(out_dir.join("screen_report.txt")).unwrap();
    // 10x10 matrix: ten bullet diagonal cells
    assert_eq!(text.matches('\u{2022}').count(), 10, "matrix is not 10x10");
    let csv = std::fs::read_to_string(out_dir.join("screen_report.csv")).unwrap();
    let pair_rows = csv
        .split("\n\n")
        .nth(1)
        .expect("pair block")
        .lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .count();
    assert_eq!(pair_rows, 45, "expected 45 evaluated pairs");
    // Reference values for a real regulator extract (34/45
    // positive, extreme correlations -0.34 and 0.86) are data-dependent
    // and reproduced only when that extract is supplied by the user; the
    // bundled fixture checks structure, not those values.
    println!("criterion 11 PASS 10x10 matrix with 45 evaluated pairs from the bundled fixture");
}
