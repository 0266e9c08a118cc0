//! Finite-sample behavior of the spectral bounds from smoothed periodograms.
//!
//! The population bounds always hold; estimated ones inherit smoothing noise.
//! The minimum of a noisy curve is biased downward, so narrow Daniell
//! windows make f_bar undershoot and the noise bound fail often. Widening
//! the window restores the bound at the cost of flattening the spectral
//! peak, which pushes the estimated peak location away from zero: the same
//! smoothing knob trades level accuracy against location accuracy.

use catchall::{run_spectral_coverage, ExperimentConfig, StructuralParams};

fn main() -> catchall::Result<()> {
    let p = StructuralParams::new(0.9, 1.0, 1.0)?;
    let cfg = ExperimentConfig::new(p, 4096, 100, vec![1], 5)?.with_parallel(true);

    println!("T = 4096, R = 100, DGP (0.9, 1, 1), true sigma2_eta = 1\n");
    println!(
        "{:>6} {:>15} {:>18} {:>22}",
        "m", "mean coverage", "bound >= 1 rate", "peak within 2 bins"
    );
    for m in [16usize, 32, 64, 128, 256] {
        let report = run_spectral_coverage(&cfg, m)?;
        println!(
            "{:>6} {:>15.3} {:>18.2} {:>22.2}",
            m,
            report.mean_coverage(),
            report.bound_rate(),
            report.peak_rate(2)
        );
    }
    println!("\nwide windows make the noise bound reliable; no window makes the");
    println!("peak land within 2 bins often, because the true peak is a plateau");
    println!("roughly 70 bins wide at this persistence and sample size.");
    Ok(())
}
