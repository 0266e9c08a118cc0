//! Monte Carlo bias table: the k-step estimator's mean against its plim.
//!
//! 500 replications of T = 5000. Each row's mean should sit within Monte
//! Carlo noise of the plim oracle, and the distance from theta itself
//! shrinks as the horizon grows.

use catchall::{run_bias_experiment, ExperimentConfig, StructuralParams};

fn main() -> catchall::Result<()> {
    let p = StructuralParams::new(0.9, 1.0, 1.0)?;
    let cfg = ExperimentConfig::new(p, 5000, 500, vec![1, 2, 5, 10, 20], 3)?.with_parallel(true);
    let table = run_bias_experiment(&cfg)?;

    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>10} {:>9} {:>9}",
        "k", "mean", "plim", "mean-plim", "mcse", "|z|", "failures"
    );
    for r in &table.rows {
        println!(
            "{:>4} {:>10.6} {:>10.6} {:>+10.6} {:>10.6} {:>9.2} {:>9}",
            r.k,
            r.mean,
            r.plim,
            r.mean_minus_plim,
            r.mcse,
            (r.mean_minus_plim / r.mcse).abs(),
            r.failure_count
        );
    }
    println!("\ntrue theta = 0.9; the k=1 mean is ~0.14 below it, the k=20 mean ~0.01.");
    println!("plim is an asymptotic mean: at long horizons the finite-T mean can");
    println!("drift from it by more than Monte Carlo noise, as the k=20 row shows.");
    Ok(())
}
