//! The catch-all estimator.
//!
//! For horizon k the observed series satisfies `y_{s+k} = theta^k * y_s + e(k)`,
//! so a single-horizon fit minimizes `sum_s (y_{s+k} - theta^k * y_s)^2` and has
//! the explicit solution
//!
//! ```text
//! theta_hat_k = ( sum_s y_s*y_{s+k} / sum_s y_s^2 )^(1/k),    s = 1..T-k
//! ```
//!
//! The general estimator minimizes a weighted sum of those squared residuals
//! over several horizons at once. Expanding each square reduces the objective
//! to three moments per horizon,
//!
//! ```text
//! Q(theta) = sum_k w_k * (A_k - 2*theta^k*B_k + theta^(2k)*C_k)
//! ```
//!
//! which makes every evaluation O(#horizons) after one pass over the data.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::simulate::SeriesPath;

/// Nonnegative weights over forecast horizons. Zero-weight entries are
/// dropped on construction; at least one weight must be strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightScheme {
    weights: BTreeMap<usize, f64>,
}

impl WeightScheme {
    pub fn new(pairs: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (k, w) in pairs {
            if k == 0 {
                return Err(Error::InvalidParam {
                    name: "k",
                    reason: "horizon must be at least 1".into(),
                });
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidParam {
                    name: "weight",
                    reason: format!("weight {w} at k={k} is not finite and nonnegative"),
                });
            }
            if w > 0.0 {
                *weights.entry(k).or_insert(0.0) += w;
            }
        }
        if weights.is_empty() {
            return Err(Error::NoPositiveWeight);
        }
        Ok(Self { weights })
    }

    pub fn point_mass(k: usize) -> Result<Self> {
        Self::new([(k, 1.0)])
    }

    pub fn equal(horizons: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(horizons.into_iter().map(|k| (k, 1.0)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.weights.iter().map(|(&k, &w)| (k, w))
    }

    pub fn max_horizon(&self) -> usize {
        *self.weights.keys().next_back().expect("nonempty by construction")
    }

    /// Some(k) when all mass sits on a single horizon.
    pub fn as_point_mass(&self) -> Option<usize> {
        if self.weights.len() == 1 {
            self.weights.keys().next().copied()
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Minimizer,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    pub theta_hat: f64,
    pub objective_value: f64,
    pub method: Method,
    pub weights: WeightScheme,
    /// Residual terms per horizon: (k, T - k).
    pub n_terms: Vec<(usize, usize)>,
    /// Closed form: the root fell inside (0, 1). Minimizer: the argmin is
    /// strictly inside the search interval.
    pub interior: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    pub grid_points: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            lo: 1e-4,
            hi: 1.0 - 1e-4,
            tol: 1e-8,
            grid_points: 512,
        }
    }
}

fn check_horizon_fits(k: usize, len: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParam {
            name: "k",
            reason: "horizon must be at least 1".into(),
        });
    }
    if k + 2 > len {
        return Err(Error::HorizonTooLarge { k, len });
    }
    Ok(())
}

/// k-step forecast residuals `e_s = y_{s+k} - theta^k * y_s`, `s = 1..T-k`.
pub fn kstep_residuals(y: &SeriesPath, theta: f64, k: usize) -> Result<Vec<f64>> {
    check_horizon_fits(k, y.len())?;
    let v = y.values();
    let tk = theta.powi(k as i32);
    Ok(v[k..].iter().zip(v).map(|(lead, lag)| lead - tk * lag).collect())
}

/// Per-horizon moments of the expanded objective.
struct HorizonMoments {
    k: usize,
    weight: f64,
    lead_sq: f64,  // A_k = sum y_{s+k}^2
    cross: f64,    // B_k = sum y_s y_{s+k}
    lag_sq: f64,   // C_k = sum y_s^2
    n_terms: usize,
}

fn horizon_moments(values: &[f64], k: usize, weight: f64) -> HorizonMoments {
    let n = values.len() - k;
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for s in 0..n {
        let lag = values[s];
        let lead = values[s + k];
        a += lead * lead;
        b += lag * lead;
        c += lag * lag;
    }
    HorizonMoments {
        k,
        weight,
        lead_sq: a,
        cross: b,
        lag_sq: c,
        n_terms: n,
    }
}

fn objective(moments: &[HorizonMoments], theta: f64) -> f64 {
    moments
        .iter()
        .map(|m| {
            let tk = theta.powi(m.k as i32);
            m.weight * (m.lead_sq - 2.0 * tk * m.cross + tk * tk * m.lag_sq)
        })
        .sum()
}

/// Single-horizon estimator via the explicit k-th-root solution.
pub fn estimate_closed_form(y: &SeriesPath, k: usize) -> Result<EstimateResult> {
    check_horizon_fits(k, y.len())?;
    let m = horizon_moments(y.values(), k, 1.0);
    if m.lag_sq <= 0.0 {
        return Err(Error::InvalidParam {
            name: "series",
            reason: "zero variance over the estimation window".into(),
        });
    }
    let ratio = m.cross / m.lag_sq;
    if ratio <= 0.0 {
        return Err(Error::NonpositiveRatio { k, ratio });
    }
    let theta_hat = ratio.powf(1.0 / k as f64);
    let moments = [m];
    Ok(EstimateResult {
        theta_hat,
        objective_value: objective(&moments, theta_hat),
        method: Method::ClosedForm,
        weights: WeightScheme::point_mass(k)?,
        n_terms: vec![(k, moments[0].n_terms)],
        interior: theta_hat > 0.0 && theta_hat < 1.0,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn golden_section_minimize(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn prepare_moments(y: &SeriesPath, w: &WeightScheme) -> Result<Vec<HorizonMoments>> {
    check_horizon_fits(w.max_horizon(), y.len())?;
    Ok(w.iter()
        .map(|(k, weight)| horizon_moments(y.values(), k, weight))
        .collect())
}

/// Weighted multi-horizon estimator: coarse grid scan, then golden-section
/// refinement of the bracketing interval.
pub fn estimate_catchall(
    y: &SeriesPath,
    w: &WeightScheme,
    opts: &SearchOptions,
) -> Result<EstimateResult> {
    if !(opts.lo > 0.0 && opts.hi < 1.0 && opts.lo < opts.hi) {
        return Err(Error::EmptySearchDomain {
            lo: opts.lo,
            hi: opts.hi,
        });
    }
    let moments = prepare_moments(y, w)?;
    let q = |theta: f64| objective(&moments, theta);

    let n = opts.grid_points.max(3);
    let step = (opts.hi - opts.lo) / (n - 1) as f64;
    let mut best_i = 0;
    let mut best_q = f64::INFINITY;
    for i in 0..n {
        let qi = q(opts.lo + step * i as f64);
        if qi < best_q {
            best_q = qi;
            best_i = i;
        }
    }
    let a = opts.lo + step * best_i.saturating_sub(1) as f64;
    let b = (opts.lo + step * (best_i + 1) as f64).min(opts.hi);
    let theta_hat = golden_section_minimize(q, a, b, opts.tol);

    Ok(EstimateResult {
        theta_hat,
        objective_value: q(theta_hat),
        method: Method::Minimizer,
        weights: w.clone(),
        n_terms: moments.iter().map(|m| (m.k, m.n_terms)).collect(),
        interior: theta_hat - opts.lo > 4.0 * opts.tol && opts.hi - theta_hat > 4.0 * opts.tol,
    })
}

/// Objective values on a caller-supplied grid, for diagnostics and plots.
pub fn profile_objective(
    y: &SeriesPath,
    w: &WeightScheme,
    thetas: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if thetas.is_empty() {
        return Err(Error::InvalidParam {
            name: "thetas",
            reason: "grid is empty".into(),
        });
    }
    if let Some(&bad) = thetas.iter().find(|t| !(t.is_finite() && **t > 0.0 && **t < 1.0)) {
        return Err(Error::InvalidParam {
            name: "thetas",
            reason: format!("grid point {bad} is outside (0, 1)"),
        });
    }
    let moments = prepare_moments(y, w)?;
    Ok(thetas.iter().map(|&t| (t, objective(&moments, t))).collect())
}
