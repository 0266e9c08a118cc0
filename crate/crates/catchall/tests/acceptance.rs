//! Acceptance gate: ten numbered criteria covering reduction exactness, the
//! bias-constant identity, plim behavior, Monte Carlo bias and variance,
//! estimator route equivalence, the spectral sandwich, the noise bound,
//! feature identification, and byte-level reproducibility.
//!
//! Each test prints one line, `acceptance N: PASS ...` or
//! `acceptance N: FAIL ...`, before asserting, so a full report survives
//! partial failure. Run with `cargo test --test acceptance -- --nocapture`.
//!
//! Criteria 8 and 9 each pair an exact population check with a statistical
//! check at a pinned tuning (T=4096, half-width 32, R=100). The statistical
//! halves fail at that tuning: a minimum over ~2k noisy ordinates sits well
//! below its population target, and the population peak at lambda=0 is a
//! ~70-bin-wide plateau, so the smoothed argmax lands outside 2 bins most of
//! the time. The thresholds are asserted as stated rather than retuned; see
//! examples/spectral_coverage.rs for the half-width sweep that maps the
//! trade-off.

use std::path::Path;
use std::process::Command;

use catchall::{
    estimate_catchall, estimate_closed_form, find_features, identification_bounds, observe,
    run_bias_experiment, run_spectral_coverage, run_variance_experiment, simulate_latent,
    spectrum_ar1, spectrum_y, ExperimentConfig, Method, SearchOptions, SimConfig,
    StructuralParams, WeightScheme,
};

const GRID_THETA: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const GRID_RATIO: [f64; 3] = [0.1, 1.0, 10.0];

const TOL_IDENTITY: f64 = 1e-10;
const TOL_SANDWICH: f64 = 1e-12;
const TOL_ROUTE_EQUIV: f64 = 1e-6;
const TOL_PLIM_200: f64 = 0.0015;
const MCSE_MULTIPLE: f64 = 3.0;
const BOUND_RATE_MIN: f64 = 0.90;
const PEAK_RATE_MIN: f64 = 0.60;
const PEAK_TOL_BINS: usize = 2;

const MC_SEED: u64 = 3;
const SPECTRAL_SEED: u64 = 5;
const SPECTRAL_T: usize = 4096;
const SPECTRAL_HALF_WIDTH: usize = 32;
const SPECTRAL_REPS: usize = 100;

fn grid_dgps() -> Vec<StructuralParams> {
    let mut out = Vec::new();
    for &theta in &GRID_THETA {
        for &ratio in &GRID_RATIO {
            out.push(StructuralParams::new(theta, 1.0, ratio).unwrap());
        }
    }
    out
}

fn report(n: usize, pass: bool, detail: &str) {
    println!(
        "acceptance {n}: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

#[test]
fn acceptance_01_reduction_exactness() {
    let mut worst = 0.0f64;
    for p in grid_dgps() {
        let arma = p.reduce_to_arma().unwrap();
        let cross = (arma.alpha * arma.sigma2_u - p.theta * p.sigma2_eta).abs();
        let g0 = (arma.gamma0() - p.autocov_y(0)).abs();
        let g1 = (arma.gamma1() - p.autocov_y(1)).abs();
        worst = worst.max(cross).max(g0).max(g1);
    }
    let pass = worst < TOL_IDENTITY;
    report(
        1,
        pass,
        &format!("(reduction identities, 15 DGPs, worst abs error {worst:.2e} vs {TOL_IDENTITY:.0e})"),
    );
    assert!(pass);
}

#[test]
fn acceptance_02_bias_constant_identity() {
    let mut worst = 0.0f64;
    for p in grid_dgps() {
        let m = p.bias_constant().unwrap();
        // c comes from the ARMA side, the ratio from structural variances
        let gap = ((1.0 - m.c) - p.latent_variance() / p.observed_variance()).abs();
        worst = worst.max(gap);
    }
    let pass = worst < TOL_IDENTITY;
    report(
        2,
        pass,
        &format!("(1-c vs variance ratio, 15 DGPs, worst abs error {worst:.2e})"),
    );
    assert!(pass);
}

#[test]
fn acceptance_03_plim_convergence() {
    let p = StructuralParams::new(0.9, 1.0, 1.0).unwrap();
    let plims: Vec<f64> = (1..=50).map(|k| p.plim_k(k).unwrap()).collect();
    let increasing = plims.windows(2).all(|w| w[0] < w[1]);
    let tail_gap = (p.plim_k(200).unwrap() - 0.9).abs();
    let pass = increasing && tail_gap < TOL_PLIM_200;
    report(
        3,
        pass,
        &format!("(plim strictly increasing k=1..50: {increasing}; |plim_200 - 0.9| = {tail_gap:.2e} vs {TOL_PLIM_200})"),
    );
    assert!(pass);
}

#[test]
fn acceptance_04_bias_matches_plim() {
    let dgp = StructuralParams::new(0.9, 1.0, 1.0).unwrap();
    let cfg = ExperimentConfig::new(dgp, 5000, 500, vec![1, 2, 5, 10], MC_SEED)
        .unwrap()
        .with_parallel(true);
    let table = run_bias_experiment(&cfg).unwrap();

    let zs: Vec<f64> = table
        .rows
        .iter()
        .map(|r| r.mean_minus_plim / r.mcse)
        .collect();
    let within = zs.iter().all(|z| z.abs() < MCSE_MULTIPLE);
    let gap_1 = (table.rows[0].mean - 0.9).abs();
    let gap_10 = (table.rows[3].mean - 0.9).abs();
    let shrinks = gap_10 < gap_1;
    let pass = within && shrinks;
    report(
        4,
        pass,
        &format!(
            "(z-scores {:?} all within {MCSE_MULTIPLE} MCSE: {within}; |mean_10 - 0.9| = {gap_10:.4} < |mean_1 - 0.9| = {gap_1:.4}: {shrinks})",
            zs.iter().map(|z| (z * 100.0).round() / 100.0).collect::<Vec<_>>()
        ),
    );
    assert!(pass);
}

#[test]
fn acceptance_05_closed_form_matches_minimizer() {
    let dgp = StructuralParams::new(0.9, 1.0, 1.0).unwrap();
    let opts = SearchOptions::default();
    let mut compared = 0usize;
    let mut worst = 0.0f64;
    for rep in 0..100u64 {
        let x = simulate_latent(&dgp, &SimConfig::new(2000, 0, rep).unwrap()).unwrap();
        let y = observe(&x, dgp.sigma2_eta, rep).unwrap();
        for k in [1usize, 5] {
            let cf = estimate_closed_form(&y, k).unwrap();
            if !cf.interior {
                continue;
            }
            let w = WeightScheme::point_mass(k).unwrap();
            let mn = estimate_catchall(&y, &w, &opts).unwrap();
            assert_eq!(mn.method, Method::Minimizer);
            worst = worst.max((cf.theta_hat - mn.theta_hat).abs());
            compared += 1;
        }
    }
    let pass = compared > 0 && worst < TOL_ROUTE_EQUIV;
    report(
        5,
        pass,
        &format!("(closed form vs minimizer on {compared} interior cases, worst gap {worst:.2e} vs {TOL_ROUTE_EQUIV:.0e})"),
    );
    assert!(pass);
}

#[test]
fn acceptance_06_variance_growth() {
    let dgp = StructuralParams::new(0.9, 1.0, 1.0).unwrap();
    let cfg = ExperimentConfig::new(dgp, 5000, 500, vec![10, 20, 30], MC_SEED)
        .unwrap()
        .with_parallel(true);
    let table = run_variance_experiment(&cfg).unwrap();

    let t_vars: Vec<f64> = table.rows.iter().map(|r| r.t_var).collect();
    let increasing = t_vars.windows(2).all(|w| w[0] < w[1]);
    let ratios: Vec<f64> = table.rows.iter().map(|r| r.ratio).collect();
    report(
        6,
        increasing,
        &format!(
            "(T*var strictly increasing over k=10,20,30: {:?}; empirical/oracle ratios {:?} reported, not asserted)",
            t_vars.iter().map(|v| (v * 1000.0).round() / 1000.0).collect::<Vec<_>>(),
            ratios.iter().map(|v| (v * 100.0).round() / 100.0).collect::<Vec<_>>()
        ),
    );
    assert!(increasing);
}

#[test]
fn acceptance_07_spectral_sandwich() {
    let grid = catchall::theory_grid(2048).unwrap();
    let mut worst = 0.0f64;
    let mut width_exact = true;
    for p in grid_dgps() {
        let fx = spectrum_ar1(&p, &grid).unwrap();
        let fy = spectrum_y(&p, &grid).unwrap();
        let b = identification_bounds(&fy).unwrap();
        for i in 0..grid.len() {
            worst = worst.max(b.lower()[i] - fx.values()[i]);
            worst = worst.max(fx.values()[i] - b.upper()[i]);
            // the lower endpoint is the upper endpoint minus f_bar, bit for bit
            width_exact &= b.lower()[i] == b.upper()[i] - b.f_bar();
        }
    }
    let pass = worst < TOL_SANDWICH && width_exact;
    report(
        7,
        pass,
        &format!("(f_x within bounds, 15 DGPs x 2048 points, worst violation {worst:.2e} vs {TOL_SANDWICH:.0e}; width exactly f_bar: {width_exact})"),
    );
    assert!(pass);
}

#[test]
fn acceptance_08_noise_variance_bound() {
    let grid = catchall::theory_grid(2048).unwrap();
    let mut theory_ok = true;
    for p in grid_dgps() {
        let fy = spectrum_y(&p, &grid).unwrap();
        let b = identification_bounds(&fy).unwrap();
        theory_ok &= b.f_bar() >= p.sigma2_eta;
    }

    let dgp = StructuralParams::new(0.9, 1.0, 1.0).unwrap();
    let cfg = ExperimentConfig::new(dgp, SPECTRAL_T, SPECTRAL_REPS, vec![1], SPECTRAL_SEED)
        .unwrap()
        .with_parallel(true);
    let rep = run_spectral_coverage(&cfg, SPECTRAL_HALF_WIDTH).unwrap();
    let rate = rep.bound_rate();

    let pass = theory_ok && rate >= BOUND_RATE_MIN;
    report(
        8,
        pass,
        &format!("(theoretical f_bar >= sigma2_eta on 15 DGPs: {theory_ok}; smoothed bound held in {:.0}/{SPECTRAL_REPS} reps at half-width {SPECTRAL_HALF_WIDTH}, need >= {:.0})",
            rate * SPECTRAL_REPS as f64, BOUND_RATE_MIN * SPECTRAL_REPS as f64),
    );
    assert!(pass);
}

#[test]
fn acceptance_09_feature_identification() {
    let grid = catchall::theory_grid(2048).unwrap();
    let mut coincide = true;
    for p in grid_dgps() {
        let fy = spectrum_y(&p, &grid).unwrap();
        let b = identification_bounds(&fy).unwrap();
        let up = find_features(&b.upper_curve()).unwrap();
        let lo = find_features(&b.lower_curve()).unwrap();
        coincide &= up.peaks.iter().map(|e| e.index).collect::<Vec<_>>()
            == lo.peaks.iter().map(|e| e.index).collect::<Vec<_>>();
        coincide &= up.troughs.iter().map(|e| e.index).collect::<Vec<_>>()
            == lo.troughs.iter().map(|e| e.index).collect::<Vec<_>>();
    }

    let dgp = StructuralParams::new(0.9, 1.0, 1.0).unwrap();
    let cfg = ExperimentConfig::new(dgp, SPECTRAL_T, SPECTRAL_REPS, vec![1], SPECTRAL_SEED)
        .unwrap()
        .with_parallel(true);
    let rep = run_spectral_coverage(&cfg, SPECTRAL_HALF_WIDTH).unwrap();
    let rate = rep.peak_rate(PEAK_TOL_BINS);

    let pass = coincide && rate >= PEAK_RATE_MIN;
    report(
        9,
        pass,
        &format!("(upper/lower extremum locations coincide on 15 DGPs: {coincide}; estimated peak within {PEAK_TOL_BINS} bins of 0 in {:.0}/{SPECTRAL_REPS} reps, need >= {:.0})",
            rate * SPECTRAL_REPS as f64, PEAK_RATE_MIN * SPECTRAL_REPS as f64),
    );
    assert!(pass);
}

#[test]
fn acceptance_10_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_catchall");

    let run = |sub: &str, extra: &[&str], out: &Path, parallel: bool| {
        let mut cmd = Command::new(bin);
        cmd.args(["mc", sub, "--seed", "17", "--out", out.to_str().unwrap()]);
        cmd.args(extra);
        if parallel {
            cmd.arg("--parallel");
        }
        let st = cmd.output().unwrap();
        assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
        std::fs::read(out).unwrap()
    };

    let cases: [(&str, &[&str]); 3] = [
        ("bias", &["-T", "1000", "-R", "50", "--horizons", "1,5"]),
        ("variance", &["-T", "1000", "-R", "50", "--horizons", "10,20"]),
        ("spectral", &["-T", "512", "-R", "20", "--half-width", "11"]),
    ];
    let mut pass = true;
    for (sub, extra) in cases {
        let serial = run(sub, extra, &dir.path().join(format!("{sub}_s.csv")), false);
        let par = run(sub, extra, &dir.path().join(format!("{sub}_p.csv")), true);
        let again = run(sub, extra, &dir.path().join(format!("{sub}_p2.csv")), true);
        pass &= serial == par && par == again;
    }
    report(
        10,
        pass,
        "(mc bias/variance/spectral CSVs byte-identical across reruns and parallel on/off)",
    );
    assert!(pass);
}
