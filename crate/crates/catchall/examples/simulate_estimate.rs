//! Simulate one noisy AR(1) path and estimate theta at several horizons.
//!
//! The lag-1 fit is badly biased toward zero by the measurement noise; the
//! k-step estimators land near their plims, which approach theta as k grows.
//! A catch-all fit with equal weights over k = 1..10 sits in between.

use catchall::{
    estimate_catchall, estimate_closed_form, observe, simulate_latent, SearchOptions, SimConfig,
    StructuralParams, WeightScheme,
};

fn main() -> catchall::Result<()> {
    let p = StructuralParams::new(0.9, 1.0, 1.0)?;
    let seed = 20260814;
    let cfg = SimConfig::new(5000, 0, seed)?;
    let x = simulate_latent(&p, &cfg)?;
    let y = observe(&x, p.sigma2_eta, seed)?;

    println!("one path, T = {}, seed = {seed}\n", y.len());
    println!("{:>4} {:>12} {:>12} {:>10}", "k", "theta_hat_k", "plim_k", "hat-plim");
    for k in [1usize, 2, 5, 10, 20] {
        let est = estimate_closed_form(&y, k)?;
        let plim = p.plim_k(k)?;
        println!(
            "{:>4} {:>12.6} {:>12.6} {:>+10.6}",
            k,
            est.theta_hat,
            plim,
            est.theta_hat - plim
        );
    }

    let w = WeightScheme::equal(1..=10)?;
    let cat = estimate_catchall(&y, &w, &SearchOptions::default())?;
    println!(
        "\ncatch-all (equal weights k=1..10): theta_hat = {:.6}, interior = {}",
        cat.theta_hat, cat.interior
    );
    println!("true theta = {}", p.theta);
    Ok(())
}
