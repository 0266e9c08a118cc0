//! Flat-file interchange: CSV tables and JSON run manifests.
//!
//! Floats are written with the shortest decimal form that parses back to the
//! identical value, so CSV output is lossless and reruns can be compared
//! byte for byte.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::montecarlo::{BiasTable, CoverageReport, VarianceTable};
use crate::seed::RNG_ID;
use crate::simulate::SeriesPath;
use crate::spectral::{SpectralBounds, SpectralCurve};

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn csv_error(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Csv {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

fn write_lines<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| io_error(path, e))
}

/// Series CSV with header `t,y` (or `t,y,x` with the latent column), t
/// starting at 1.
pub fn write_series_csv(path: &Path, y: &SeriesPath, latent: Option<&SeriesPath>) -> Result<()> {
    if let Some(x) = latent {
        if x.len() != y.len() {
            return Err(Error::InvalidParam {
                name: "latent",
                reason: format!("latent length {} != observed length {}", x.len(), y.len()),
            });
        }
    }
    write_lines(path, |w| {
        match latent {
            None => {
                writeln!(w, "t,y")?;
                for (t, v) in y.values().iter().enumerate() {
                    writeln!(w, "{},{v}", t + 1)?;
                }
            }
            Some(x) => {
                writeln!(w, "t,y,x")?;
                for (t, (v, u)) in y.values().iter().zip(x.values()).enumerate() {
                    writeln!(w, "{},{v},{u}", t + 1)?;
                }
            }
        }
        Ok(())
    })
}

/// Reads the `y` column of a headered CSV into a series. Extra columns are
/// ignored; blank lines are skipped.
pub fn read_series_csv(path: &Path) -> Result<SeriesPath> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let mut lines = BufReader::new(file).lines().enumerate();

    let header = match lines.next() {
        Some((_, line)) => line.map_err(|e| io_error(path, e))?,
        None => return Err(csv_error(path, 1, "empty file")),
    };
    let y_col = header
        .split(',')
        .position(|name| name.trim() == "y")
        .ok_or_else(|| csv_error(path, 1, format!("no `y` column in header `{header}`")))?;

    let mut values = Vec::new();
    for (idx, line) in lines {
        let line = line.map_err(|e| io_error(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let field = line
            .split(',')
            .nth(y_col)
            .ok_or_else(|| csv_error(path, idx + 1, "row has no `y` field"))?
            .trim();
        let v: f64 = field
            .parse()
            .map_err(|_| csv_error(path, idx + 1, format!("cannot parse `{field}` as a number")))?;
        values.push(v);
    }
    SeriesPath::ingested(values).map_err(|e| csv_error(path, 0, e.to_string()))
}

pub fn write_bias_csv(path: &Path, table: &BiasTable) -> Result<()> {
    write_lines(path, |w| {
        writeln!(w, "k,mean,sd,plim,mean_minus_plim,mcse,failure_count")?;
        for r in &table.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.k, r.mean, r.sd, r.plim, r.mean_minus_plim, r.mcse, r.failure_count
            )?;
        }
        Ok(())
    })
}

pub fn write_variance_csv(path: &Path, table: &VarianceTable) -> Result<()> {
    write_lines(path, |w| {
        writeln!(w, "k,t_var,oracle_factor,ratio,failure_count")?;
        for r in &table.rows {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.k, r.t_var, r.oracle_factor, r.ratio, r.failure_count
            )?;
        }
        Ok(())
    })
}

pub fn write_coverage_csv(path: &Path, report: &CoverageReport) -> Result<()> {
    write_lines(path, |w| {
        writeln!(w, "rep,coverage,noise_bound,bound_holds,peak_bin,peak_error_bins")?;
        for r in &report.rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.rep, r.coverage, r.noise_bound, r.bound_holds, r.peak_bin, r.peak_error_bins
            )?;
        }
        Ok(())
    })
}

/// Estimated bounds: `lambda,f_hat,lower,upper` where f_hat is the smoothed
/// observed spectrum (identical to the upper bound by construction).
pub fn write_bounds_csv(path: &Path, b: &SpectralBounds) -> Result<()> {
    write_lines(path, |w| {
        writeln!(w, "lambda,f_hat,lower,upper")?;
        for i in 0..b.len() {
            writeln!(
                w,
                "{},{},{},{}",
                b.freqs()[i],
                b.upper()[i],
                b.lower()[i],
                b.upper()[i]
            )?;
        }
        Ok(())
    })
}

/// Theoretical bounds: `lambda,f_x,f_y,lower,upper` on a shared grid.
pub fn write_theory_bounds_csv(path: &Path, fx: &SpectralCurve, b: &SpectralBounds) -> Result<()> {
    if fx.len() != b.len() {
        return Err(Error::InvalidParam {
            name: "curve",
            reason: format!("f_x has {} points, bounds have {}", fx.len(), b.len()),
        });
    }
    write_lines(path, |w| {
        writeln!(w, "lambda,f_x,f_y,lower,upper")?;
        for i in 0..b.len() {
            writeln!(
                w,
                "{},{},{},{},{}",
                b.freqs()[i],
                fx.values()[i],
                b.upper()[i],
                b.lower()[i],
                b.upper()[i]
            )?;
        }
        Ok(())
    })
}

pub fn write_profile_csv(path: &Path, profile: &[(f64, f64)]) -> Result<()> {
    write_lines(path, |w| {
        writeln!(w, "theta,objective")?;
        for (theta, q) in profile {
            writeln!(w, "{theta},{q}")?;
        }
        Ok(())
    })
}

/// Everything needed to reproduce an output file bit-exactly, except the
/// timestamp, which is informational only.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: serde_json::Value,
    pub master_seed: Option<u64>,
    pub rng: &'static str,
    pub version: &'static str,
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(
        command: impl Into<String>,
        params: serde_json::Value,
        master_seed: Option<u64>,
    ) -> Self {
        Self {
            command: command.into(),
            params,
            master_seed,
            rng: RNG_ID,
            version: env!("CARGO_PKG_VERSION"),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    /// Writes `<data_path>.manifest.json` and returns its path.
    pub fn write_sidecar(&self, data_path: &Path) -> Result<PathBuf> {
        let path = PathBuf::from(format!("{}.manifest.json", data_path.display()));
        let body = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(&path, body + "\n").map_err(|e| io_error(&path, e))?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn series_round_trip_is_bit_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("series.csv");
        let vals = vec![1.0 / 3.0, -2.5e-17, 0.1 + 0.2, 6.022e23, -0.0, 42.0];
        let y = SeriesPath::ingested(vals.clone()).unwrap();
        write_series_csv(&path, &y, None).unwrap();

        let back = read_series_csv(&path).unwrap();
        assert_eq!(back.len(), vals.len());
        for (a, b) in back.values().iter().zip(&vals) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn series_with_latent_column() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("series.csv");
        let y = SeriesPath::ingested(vec![1.5, 2.5, 3.5]).unwrap();
        let x = SeriesPath::ingested(vec![1.0, 2.0, 3.0]).unwrap();
        write_series_csv(&path, &y, Some(&x)).unwrap();

        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "t,y,x\n1,1.5,1\n2,2.5,2\n3,3.5,3\n");
        // reader picks the y column, not the latent one
        let back = read_series_csv(&path).unwrap();
        assert_eq!(back.values(), &[1.5, 2.5, 3.5]);

        let short = SeriesPath::ingested(vec![1.0, 2.0]).unwrap();
        assert!(write_series_csv(&path, &y, Some(&short)).is_err());
    }

    #[test]
    fn read_errors_carry_location() {
        let dir = tempdir().unwrap();

        let path = dir.path().join("missing.csv");
        assert!(matches!(read_series_csv(&path), Err(Error::Io { .. })));

        let path = dir.path().join("noheader.csv");
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        match read_series_csv(&path) {
            Err(Error::Csv { line: 1, .. }) => {}
            other => panic!("expected header error, got {other:?}"),
        }

        let path = dir.path().join("badnum.csv");
        std::fs::write(&path, "t,y\n1,1.0\n2,oops\n3,3.0\n").unwrap();
        match read_series_csv(&path) {
            Err(Error::Csv { line: 3, .. }) => {}
            other => panic!("expected parse error at line 3, got {other:?}"),
        }

        let path = dir.path().join("tooshort.csv");
        std::fs::write(&path, "t,y\n1,1.0\n").unwrap();
        assert!(matches!(read_series_csv(&path), Err(Error::Csv { .. })));
    }

    #[test]
    fn manifest_sidecar_round_trip() {
        let dir = tempdir().unwrap();
        let data = dir.path().join("table.csv");
        std::fs::write(&data, "k\n1\n").unwrap();

        let m = RunManifest::new(
            "mc bias",
            serde_json::json!({"theta": 0.9, "length": 5000}),
            Some(42),
        );
        let sidecar = m.write_sidecar(&data).unwrap();
        assert_eq!(sidecar, dir.path().join("table.csv.manifest.json"));

        let parsed: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
        assert_eq!(parsed["command"], "mc bias");
        assert_eq!(parsed["master_seed"], 42);
        assert_eq!(parsed["rng"], RNG_ID);
        assert_eq!(parsed["params"]["theta"], 0.9);
        assert!(parsed["timestamp_unix"].is_u64());
        assert!(parsed["version"].is_string());
    }

    mod props {
        use proptest::prelude::*;

        // the `{}` float format is the shortest round-trip representation
        proptest! {
            #[test]
            fn display_round_trips(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
                let back: f64 = format!("{v}").parse().unwrap();
                prop_assert_eq!(back.to_bits(), v.to_bits());
            }
        }
    }
}
