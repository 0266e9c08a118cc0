//! Monte Carlo variance growth: T*var(theta_hat_k) rises with the horizon.
//!
//! The asymptotic scale is (1/(k theta^k))^2, eventually increasing in k
//! because theta^(-k) outruns 1/k. The empirical column shows the same
//! growth; the ratio to the oracle is reported but carries unspecified
//! constants, so only orderings are meaningful. Failed replications
//! (nonpositive moment ratio, increasingly common at long horizons) are
//! excluded and counted.

use catchall::{run_variance_experiment, ExperimentConfig, StructuralParams};

fn main() -> catchall::Result<()> {
    let p = StructuralParams::new(0.9, 1.0, 1.0)?;
    println!(
        "variance turning point: -1/ln(theta) = {:.2}\n",
        -1.0 / p.theta.ln()
    );

    let cfg =
        ExperimentConfig::new(p, 5000, 500, vec![10, 15, 20, 25, 30], 3)?.with_parallel(true);
    let table = run_variance_experiment(&cfg)?;

    println!(
        "{:>4} {:>12} {:>14} {:>8} {:>9}",
        "k", "T*var", "oracle factor", "ratio", "failures"
    );
    for r in &table.rows {
        println!(
            "{:>4} {:>12.4} {:>14.4} {:>8.2} {:>9}",
            r.k, r.t_var, r.oracle_factor, r.ratio, r.failure_count
        );
    }
    Ok(())
}
