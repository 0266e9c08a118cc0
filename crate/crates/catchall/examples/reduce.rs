//! Closed-form reduction of the latent-AR(1)-plus-noise model.
//!
//! Prints the ARMA(1,1) parameters of the observed series, the bias constant
//! c, the plim of the k-step estimator, and the asymptotic variance factor,
//! showing the bias/variance trade-off across horizons.

use catchall::{asy_variance_factor, StructuralParams};

fn main() -> catchall::Result<()> {
    let p = StructuralParams::new(0.9, 1.0, 1.0)?;
    let arma = p.reduce_to_arma()?;
    let m = p.bias_constant()?;

    println!("DGP: x_t = {} x_(t-1) + eps_t,  y_t = x_t + eta_t", p.theta);
    println!("     var(eps) = {},  var(eta) = {}\n", p.sigma2_eps, p.sigma2_eta);

    println!("observed ARMA(1,1): y_t = {} y_(t-1) + u_t - {} u_(t-1)", arma.theta, arma.alpha);
    println!("  sigma2_u          = {}", arma.sigma2_u);
    println!("  alpha * sigma2_u  = {}   (= theta * sigma2_eta)", arma.alpha * arma.sigma2_u);
    println!("  gamma_0           = {}   (= sigma2_y = {})", arma.gamma0(), m.sigma2_y);
    println!("  gamma_1           = {}   (= theta * sigma2_x)\n", arma.gamma1());

    println!("bias constant c = sigma2_eta / sigma2_y = {}\n", m.c);

    println!("{:>4} {:>20} {:>20}", "k", "plim theta_hat_k", "variance factor");
    for k in [1usize, 2, 5, 10, 20, 50] {
        println!(
            "{:>4} {:>20.12} {:>20.6}",
            k,
            p.plim_k(k)?,
            asy_variance_factor(p.theta, k)?
        );
    }
    println!(
        "\nthe plim column climbs toward theta = {}, while the variance factor",
        p.theta
    );
    println!(
        "is eventually increasing (turning point near -1/ln(theta) = {:.2}):",
        -1.0 / p.theta.ln()
    );
    println!("longer horizons buy less bias at the price of more variance.");
    Ok(())
}
