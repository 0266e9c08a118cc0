//! Population-level model: structural parameters, the ARMA(1,1) reduction of
//! the observed process, and the closed-form oracles (autocovariances, bias
//! constant, horizon-k probability limits, asymptotic variance factor).
//!
//! The observation model is a latent AR(1) plus independent white measurement
//! noise:
//!
//! ```text
//! x_t = theta * x_{t-1} + eps_t      Var(eps) = sigma2_eps
//! y_t = x_t + eta_t                  Var(eta) = sigma2_eta
//! ```
//!
//! `y_t` is then an ARMA(1,1): `y_t = theta * y_{t-1} + u_t - alpha * u_{t-1}`
//! with `0 <= alpha < 1`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Truth of the latent model: (theta, sigma2_eps, sigma2_eta).
///
/// `theta` is restricted to (0, 1): the k-th-root estimator and its limit
/// formulas are sign-ambiguous for negative `theta` at even horizons, so
/// negative values are rejected up front. `sigma2_eps = 0` is allowed and
/// produces a degenerate (identically zero) latent process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StructuralParams {
    pub theta: f64,
    pub sigma2_eps: f64,
    pub sigma2_eta: f64,
}

/// Reduced observable model of the same process: `y_t = theta*y_{t-1} + u_t - alpha*u_{t-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arma11Params {
    pub theta: f64,
    pub alpha: f64,
    pub sigma2_u: f64,
}

/// Second moments of the reduction plus the bias constant
/// `c = alpha*sigma2_u / (theta*sigma2_y)`, which also equals
/// `sigma2_eta / sigma2_y`, so `1 - c = sigma2_x / sigma2_y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedMoments {
    pub sigma2_x: f64,
    pub sigma2_y: f64,
    pub c: f64,
}

fn check_variance(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidParam {
            name,
            reason: format!("{v} is not a finite nonnegative variance"),
        });
    }
    Ok(())
}

impl StructuralParams {
    pub fn new(theta: f64, sigma2_eps: f64, sigma2_eta: f64) -> Result<Self> {
        if !theta.is_finite() || theta <= 0.0 || theta >= 1.0 {
            return Err(Error::InvalidParam {
                name: "theta",
                reason: format!("{theta} is outside (0, 1)"),
            });
        }
        check_variance("sigma2_eps", sigma2_eps)?;
        check_variance("sigma2_eta", sigma2_eta)?;
        Ok(Self {
            theta,
            sigma2_eps,
            sigma2_eta,
        })
    }

    /// Stationary variance of the latent process, `sigma2_x = sigma2_eps / (1 - theta^2)`.
    pub fn latent_variance(&self) -> f64 {
        self.sigma2_eps / (1.0 - self.theta * self.theta)
    }

    /// `sigma2_y = sigma2_x + sigma2_eta`.
    pub fn observed_variance(&self) -> f64 {
        self.latent_variance() + self.sigma2_eta
    }

    /// Population autocovariance of the observed series.
    ///
    /// The i.i.d. measurement noise contributes only at lag 0:
    /// `gamma_y(0) = sigma2_x + sigma2_eta`, `gamma_y(h) = theta^h * sigma2_x` for `h >= 1`.
    pub fn autocov_y(&self, h: usize) -> f64 {
        if h == 0 {
            self.observed_variance()
        } else {
            self.theta.powi(h as i32) * self.latent_variance()
        }
    }

    /// The unique invertible ARMA(1,1) representation of the observed series.
    ///
    /// `alpha` and `sigma2_u` jointly satisfy `alpha*sigma2_u = theta*sigma2_eta`
    /// and match `gamma_y` at lags 0 and 1. Eliminating `sigma2_u` leaves the
    /// quadratic
    ///
    /// ```text
    /// theta*sigma2_eta * alpha^2 - [sigma2_eps + (1+theta^2)*sigma2_eta] * alpha + theta*sigma2_eta = 0
    /// ```
    ///
    /// whose two roots are reciprocal; the invertible one has `|alpha| < 1`.
    /// `sigma2_eta = 0` short-circuits to `alpha = 0` exactly.
    pub fn reduce_to_arma(&self) -> Result<Arma11Params> {
        if self.sigma2_eta == 0.0 {
            return Ok(Arma11Params {
                theta: self.theta,
                alpha: 0.0,
                sigma2_u: self.sigma2_eps,
            });
        }
        let a = self.theta * self.sigma2_eta;
        let b = -(self.sigma2_eps + (1.0 + self.theta * self.theta) * self.sigma2_eta);
        let disc = b * b - 4.0 * a * a; // constant term equals a
        if disc < 0.0 {
            return Err(Error::NoInvertibleRoot { disc });
        }
        // b < 0, so -b + sqrt(disc) is the numerically stable large root q/1;
        // the roots of the quadratic are q/a (large) and a/q (invertible).
        let q = 0.5 * (-b + disc.sqrt());
        Ok(Arma11Params {
            theta: self.theta,
            alpha: a / q,
            // sigma2_u = theta*sigma2_eta / alpha, and a/alpha = q
            sigma2_u: q,
        })
    }

    /// Bias constant of the horizon-k estimator along with the variances it
    /// is built from. Requires a nondegenerate observed process.
    pub fn bias_constant(&self) -> Result<ReducedMoments> {
        let sigma2_x = self.latent_variance();
        let sigma2_y = sigma2_x + self.sigma2_eta;
        if sigma2_y <= 0.0 {
            return Err(Error::InvalidParam {
                name: "sigma2_y",
                reason: "observed process has zero variance".into(),
            });
        }
        let arma = self.reduce_to_arma()?;
        let c = arma.alpha * arma.sigma2_u / (self.theta * sigma2_y);
        Ok(ReducedMoments {
            sigma2_x,
            sigma2_y,
            c,
        })
    }

    /// Probability limit of the horizon-k estimator: `theta * (1-c)^(1/k)`.
    ///
    /// Strictly increasing in `k` toward `theta` when `c > 0`; identically
    /// `theta` when `c = 0`.
    pub fn plim_k(&self, k: usize) -> Result<f64> {
        check_horizon(k)?;
        let c = self.bias_constant()?.c;
        Ok(self.theta * (1.0 - c).powf(1.0 / k as f64))
    }
}

impl Arma11Params {
    pub fn new(theta: f64, alpha: f64, sigma2_u: f64) -> Result<Self> {
        if !theta.is_finite() || theta <= 0.0 || theta >= 1.0 {
            return Err(Error::InvalidParam {
                name: "theta",
                reason: format!("{theta} is outside (0, 1)"),
            });
        }
        if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidParam {
                name: "alpha",
                reason: format!("{alpha} is outside [0, 1)"),
            });
        }
        if !sigma2_u.is_finite() || sigma2_u <= 0.0 {
            return Err(Error::InvalidParam {
                name: "sigma2_u",
                reason: format!("{sigma2_u} is not a positive variance"),
            });
        }
        Ok(Self {
            theta,
            alpha,
            sigma2_u,
        })
    }

    /// `gamma_0 = sigma2_u * (1 + alpha^2 - 2*theta*alpha) / (1 - theta^2)`.
    pub fn gamma0(&self) -> f64 {
        let num = 1.0 + self.alpha * self.alpha - 2.0 * self.theta * self.alpha;
        self.sigma2_u * num / (1.0 - self.theta * self.theta)
    }

    /// `gamma_1 = theta*gamma_0 - alpha*sigma2_u`.
    pub fn gamma1(&self) -> f64 {
        self.theta * self.gamma0() - self.alpha * self.sigma2_u
    }
}

fn check_horizon(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParam {
            name: "k",
            reason: "horizon must be at least 1".into(),
        });
    }
    Ok(())
}

/// Leading factor of the estimator's asymptotic variance,
/// `T * var(theta_hat_k) ~ (1 / (k * theta^k))^2`.
///
/// Strictly increasing in `k` once `k > -1/ln(theta)` (about 9.49 for
/// `theta = 0.9`), and unbounded.
pub fn asy_variance_factor(theta: f64, k: usize) -> Result<f64> {
    if !theta.is_finite() || theta <= 0.0 || theta >= 1.0 {
        return Err(Error::InvalidParam {
            name: "theta",
            reason: format!("{theta} is outside (0, 1)"),
        });
    }
    check_horizon(k)?;
    let d = k as f64 * theta.powi(k as i32);
    Ok(1.0 / (d * d))
}
