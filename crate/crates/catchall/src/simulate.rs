//! Seed-reproducible path generation: latent AR(1), noisy observation, and
//! the reduced ARMA(1,1) recursion for cross-checks.
//!
//! Paths start from the exact stationary distribution, so `burn_in = 0` is
//! unbiased; the field exists for non-stationary-start experiments. The first
//! stored value is t = 1.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::model::{Arma11Params, StructuralParams};
use crate::seed::{stream_rng, STREAM_ARMA, STREAM_LATENT, STREAM_NOISE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Latent,
    Observed,
    Arma,
    Ingested,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPath {
    values: Vec<f64>,
    origin: Origin,
    seed: Option<u64>,
}

impl SeriesPath {
    /// Wraps externally supplied data (e.g. a parsed CSV column).
    pub fn ingested(values: Vec<f64>) -> Result<Self> {
        Self::build(values, Origin::Ingested, None)
    }

    fn build(values: Vec<f64>, origin: Origin, seed: Option<u64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::SeriesTooShort {
                len: values.len(),
                min: 2,
            });
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParam {
                name: "values",
                reason: format!("non-finite observation {bad}"),
            });
        }
        Ok(Self {
            values,
            origin,
            seed,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Sample autocovariance at lag `h` about the sample mean, divisor `T`.
    pub fn sample_autocov(&self, h: usize) -> f64 {
        let n = self.len();
        assert!(h < n, "lag {h} out of range for length {n}");
        let m = self.mean();
        let s: f64 = self.values[..n - h]
            .iter()
            .zip(&self.values[h..])
            .map(|(a, b)| (a - m) * (b - m))
            .sum();
        s / n as f64
    }

    /// Subtracts the sample mean in place.
    pub fn demean(&mut self) {
        let m = self.mean();
        for v in &mut self.values {
            *v -= m;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InnovationDist {
    #[default]
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub length: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub dist: InnovationDist,
}

impl SimConfig {
    pub fn new(length: usize, burn_in: usize, seed: u64) -> Result<Self> {
        if length < 2 {
            return Err(Error::InvalidConfig(format!(
                "length {length} must be at least 2"
            )));
        }
        Ok(Self {
            length,
            burn_in,
            seed,
            dist: InnovationDist::Gaussian,
        })
    }
}

/// Latent AR(1) path `x_t = theta*x_{t-1} + eps_t`, stationary start.
pub fn simulate_latent(p: &StructuralParams, cfg: &SimConfig) -> Result<SeriesPath> {
    let mut rng = stream_rng(cfg.seed, STREAM_LATENT);
    let sd_eps = p.sigma2_eps.sqrt();
    let mut x = p.latent_variance().sqrt() * rng.sample::<f64, _>(StandardNormal);
    for _ in 0..cfg.burn_in {
        x = p.theta * x + sd_eps * rng.sample::<f64, _>(StandardNormal);
    }
    let mut values = Vec::with_capacity(cfg.length);
    values.push(x);
    for _ in 1..cfg.length {
        x = p.theta * x + sd_eps * rng.sample::<f64, _>(StandardNormal);
        values.push(x);
    }
    SeriesPath::build(values, Origin::Latent, Some(cfg.seed))
}

/// Adds i.i.d. N(0, sigma2_eta) measurement noise on a stream independent of
/// the latent one, so `observe(simulate_latent(p, cfg), s, cfg.seed)` is still
/// reproducible from the single seed.
pub fn observe(x: &SeriesPath, sigma2_eta: f64, seed: u64) -> Result<SeriesPath> {
    if !sigma2_eta.is_finite() || sigma2_eta < 0.0 {
        return Err(Error::InvalidParam {
            name: "sigma2_eta",
            reason: format!("{sigma2_eta} is not a finite nonnegative variance"),
        });
    }
    let mut rng = stream_rng(seed, STREAM_NOISE);
    let sd = sigma2_eta.sqrt();
    let values = x
        .values()
        .iter()
        .map(|&xv| xv + sd * rng.sample::<f64, _>(StandardNormal))
        .collect();
    SeriesPath::build(values, Origin::Observed, Some(seed))
}

/// ARMA(1,1) path `y_t = theta*y_{t-1} + u_t - alpha*u_{t-1}`.
///
/// The joint state (y_0, u_0) is drawn from its stationary law: u_0 is
/// N(0, sigma2_u) and y_0 = u_0 + w with w independent of variance
/// gamma_0 - sigma2_u (nonnegative since gamma_0 >= sigma2_u).
pub fn simulate_arma(a: &Arma11Params, cfg: &SimConfig) -> Result<SeriesPath> {
    let mut rng = stream_rng(cfg.seed, STREAM_ARMA);
    let sd_u = a.sigma2_u.sqrt();
    let sd_extra = (a.gamma0() - a.sigma2_u).max(0.0).sqrt();
    let mut u = sd_u * rng.sample::<f64, _>(StandardNormal);
    let mut y = u + sd_extra * rng.sample::<f64, _>(StandardNormal);
    let step = |y_prev: f64, u_prev: f64, rng: &mut rand_chacha::ChaCha8Rng| {
        let u_new = sd_u * rng.sample::<f64, _>(StandardNormal);
        (a.theta * y_prev + u_new - a.alpha * u_prev, u_new)
    };
    for _ in 0..cfg.burn_in {
        let (y_new, u_new) = step(y, u, &mut rng);
        y = y_new;
        u = u_new;
    }
    let mut values = Vec::with_capacity(cfg.length);
    values.push(y);
    for _ in 1..cfg.length {
        let (y_new, u_new) = step(y, u, &mut rng);
        y = y_new;
        u = u_new;
        values.push(y);
    }
    SeriesPath::build(values, Origin::Arma, Some(cfg.seed))
}
