//! Spectral identification bounds.
//!
//! Convention: f(lambda) = sum_h gamma_h e^{-i h lambda} on [0, pi], with no
//! 1/(2 pi) factor. White noise with variance s2 then has constant density
//! s2, and the observed density splits as f_y = f_x + sigma2_eta with the
//! noise variance entering unscaled.
//!
//! Knowing f_y alone pins f_x only up to a vertical shift: subtracting any
//! constant in [0, f_bar] from f_y, where f_bar = min f_y, leaves a valid
//! nonnegative candidate. Hence the identified interval for f_x is
//! [f_y - f_bar, f_y] pointwise, the interval width is exactly f_bar, and
//! f_bar is an upper bound for sigma2_eta. Locations of peaks and troughs
//! are invariant to the shift, so they are point-identified even though
//! levels are not.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::model::StructuralParams;
use crate::simulate::SeriesPath;

/// Default resolution for theoretical curves.
pub const DEFAULT_GRID_POINTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    TheoreticalX,
    TheoreticalY,
    Periodogram,
    Smoothed,
}

/// A nonparametric or theoretical spectral curve on a strictly increasing
/// frequency grid inside [0, pi].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurve {
    freqs: Vec<f64>,
    values: Vec<f64>,
    kind: CurveKind,
}

fn validate_grid(freqs: &[f64]) -> Result<()> {
    if freqs.is_empty() {
        return Err(Error::InvalidParam {
            name: "grid",
            reason: "frequency grid is empty".into(),
        });
    }
    for (i, &f) in freqs.iter().enumerate() {
        if !f.is_finite() || !(0.0..=PI).contains(&f) {
            return Err(Error::InvalidParam {
                name: "grid",
                reason: format!("frequency {f} at index {i} is outside [0, pi]"),
            });
        }
        if i > 0 && f <= freqs[i - 1] {
            return Err(Error::InvalidParam {
                name: "grid",
                reason: format!("grid not strictly increasing at index {i}"),
            });
        }
    }
    Ok(())
}

impl SpectralCurve {
    pub fn new(freqs: Vec<f64>, values: Vec<f64>, kind: CurveKind) -> Result<Self> {
        validate_grid(&freqs)?;
        if freqs.len() != values.len() {
            return Err(Error::InvalidParam {
                name: "values",
                reason: format!(
                    "{} values for {} frequencies",
                    values.len(),
                    freqs.len()
                ),
            });
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParam {
                name: "values",
                reason: format!("non-finite curve value {bad}"),
            });
        }
        Ok(Self { freqs, values, kind })
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// n evenly spaced frequencies on [0, pi], endpoints included.
pub fn theory_grid(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidParam {
            name: "grid_points",
            reason: format!("need at least 2 grid points, got {n}"),
        });
    }
    let step = PI / (n - 1) as f64;
    let mut g: Vec<f64> = (0..n).map(|i| step * i as f64).collect();
    g[n - 1] = PI;
    Ok(g)
}

/// Pointwise AR(1) spectral density sigma2_eps / (1 - 2 theta cos(lambda) + theta^2).
///
/// Accepts theta = 0 (white noise, constant density sigma2_eps), which the
/// structural parameter type deliberately rejects.
pub fn ar1_density(theta: f64, sigma2_eps: f64, lambda: f64) -> f64 {
    sigma2_eps / (1.0 - 2.0 * theta * lambda.cos() + theta * theta)
}

/// Latent spectrum f_x on the given grid.
pub fn spectrum_ar1(p: &StructuralParams, grid: &[f64]) -> Result<SpectralCurve> {
    validate_grid(grid)?;
    let values = grid
        .iter()
        .map(|&l| ar1_density(p.theta, p.sigma2_eps, l))
        .collect();
    SpectralCurve::new(grid.to_vec(), values, CurveKind::TheoreticalX)
}

/// Observed spectrum f_y = f_x + sigma2_eta on the given grid.
pub fn spectrum_y(p: &StructuralParams, grid: &[f64]) -> Result<SpectralCurve> {
    validate_grid(grid)?;
    let values = grid
        .iter()
        .map(|&l| ar1_density(p.theta, p.sigma2_eps, l) + p.sigma2_eta)
        .collect();
    SpectralCurve::new(grid.to_vec(), values, CurveKind::TheoreticalY)
}

/// Periodogram of the mean-centered series at Fourier frequencies
/// 2 pi j / T, j = 1..floor(T/2).
///
/// I(lambda_j) = (1/T) |sum_t y_t e^{-i t lambda_j}|^2, so E[I] tracks f_y
/// under the module convention. Computed by FFT; agrees with the direct
/// transform to well below 1e-8.
pub fn periodogram(y: &SeriesPath) -> Result<SpectralCurve> {
    let t = y.len();
    if t < 8 {
        return Err(Error::SeriesTooShort { len: t, min: 8 });
    }
    let mean = y.mean();
    let mut buf: Vec<Complex<f64>> = y
        .values()
        .iter()
        .map(|&v| Complex::new(v - mean, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(t).process(&mut buf);

    // the Nyquist ordinate is exactly pi; the float product can overshoot
    // by one ulp, so clamp
    let j_max = t / 2;
    let freqs = (1..=j_max)
        .map(|j| (2.0 * PI * j as f64 / t as f64).min(PI))
        .collect();
    let values = buf[1..=j_max]
        .iter()
        .map(|c| c.norm_sqr() / t as f64)
        .collect();
    SpectralCurve::new(freqs, values, CurveKind::Periodogram)
}

// Half-sample symmetric reflection: ..., y[1], y[0] | y[0], y[1], ...
fn reflect(idx: isize, len: isize) -> usize {
    let j = if idx < 0 {
        -idx - 1
    } else if idx >= len {
        2 * len - 1 - idx
    } else {
        idx
    };
    j as usize
}

/// Daniell (flat) smoother over 2m+1 adjacent ordinates with symmetric
/// reflection at both ends. Requires 1 <= m <= floor(J/2) where J is the
/// number of ordinates, i.e. m <= floor(T/4).
pub fn smooth(pg: &SpectralCurve, m: usize) -> Result<SpectralCurve> {
    if pg.kind != CurveKind::Periodogram {
        return Err(Error::InvalidParam {
            name: "curve",
            reason: "smoothing is defined for periodograms".into(),
        });
    }
    let len = pg.len();
    let max = len / 2;
    if m < 1 || m > max {
        return Err(Error::BadHalfWidth { m, len, max });
    }
    let v = &pg.values;
    let n = len as isize;
    let width = (2 * m + 1) as f64;
    let values = (0..n)
        .map(|i| {
            let mut acc = 0.0;
            for d in -(m as isize)..=(m as isize) {
                acc += v[reflect(i + d, n)];
            }
            acc / width
        })
        .collect();
    SpectralCurve::new(pg.freqs.clone(), values, CurveKind::Smoothed)
}

/// Interval identification of f_x from an observed-spectrum curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBounds {
    freqs: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    f_bar: f64,
    source: CurveKind,
}

impl SpectralBounds {
    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Minimum of the input curve: the exact interval width everywhere.
    pub fn f_bar(&self) -> f64 {
        self.f_bar
    }

    pub fn source(&self) -> CurveKind {
        self.source
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    pub fn upper_curve(&self) -> SpectralCurve {
        SpectralCurve {
            freqs: self.freqs.clone(),
            values: self.upper.clone(),
            kind: self.source,
        }
    }

    pub fn lower_curve(&self) -> SpectralCurve {
        SpectralCurve {
            freqs: self.freqs.clone(),
            values: self.lower.clone(),
            kind: self.source,
        }
    }
}

/// Bounds [f_y - f_bar, f_y] for f_x, where f_bar = min f_y over the grid.
///
/// Accepts theoretical observed curves and smoothed estimates. Raw
/// periodograms are rejected: their near-zero minima make the lower bound
/// vacuous, so smooth first.
pub fn identification_bounds(fy: &SpectralCurve) -> Result<SpectralBounds> {
    match fy.kind {
        CurveKind::TheoreticalY | CurveKind::Smoothed => {}
        CurveKind::TheoreticalX | CurveKind::Periodogram => {
            return Err(Error::InvalidParam {
                name: "curve",
                reason: "bounds require an observed-spectrum curve (theoretical or smoothed)"
                    .into(),
            })
        }
    }
    let f_bar = fy.values.iter().copied().fold(f64::INFINITY, f64::min);
    let lower = fy.values.iter().map(|&v| v - f_bar).collect();
    Ok(SpectralBounds {
        freqs: fy.freqs.clone(),
        lower,
        upper: fy.values.clone(),
        f_bar,
        source: fy.kind,
    })
}

/// Upper bound for the measurement-noise variance implied by the bounds.
pub fn noise_variance_bound(b: &SpectralBounds) -> f64 {
    b.f_bar
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub frequency: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectralFeatures {
    pub peaks: Vec<Extremum>,
    pub troughs: Vec<Extremum>,
}

/// Discrete local extrema under strict neighbor comparison. Equal-value
/// plateaus are compressed and report their leftmost index; endpoints are
/// compared one-sided. A constant curve has no features.
pub fn find_features(curve: &SpectralCurve) -> Result<SpectralFeatures> {
    let v = &curve.values;
    if v.len() < 3 {
        return Err(Error::InvalidParam {
            name: "curve",
            reason: format!("need at least 3 grid points, got {}", v.len()),
        });
    }

    // (leftmost index, value) per run of equal values
    let mut runs: Vec<(usize, f64)> = vec![(0, v[0])];
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x != runs.last().expect("nonempty").1 {
            runs.push((i, x));
        }
    }

    let mut features = SpectralFeatures::default();
    if runs.len() < 2 {
        return Ok(features);
    }
    for r in 0..runs.len() {
        let (idx, val) = runs[r];
        let prev = (r > 0).then(|| runs[r - 1].1);
        let next = (r + 1 < runs.len()).then(|| runs[r + 1].1);
        let ext = Extremum {
            index: idx,
            frequency: curve.freqs[idx],
            value: val,
        };
        if prev.map_or(true, |p| p < val) && next.map_or(true, |n| n < val) {
            features.peaks.push(ext);
        } else if prev.map_or(true, |p| p > val) && next.map_or(true, |n| n > val) {
            features.troughs.push(ext);
        }
    }
    Ok(features)
}
