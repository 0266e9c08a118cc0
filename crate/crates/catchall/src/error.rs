use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("series too short: {len} observations, need at least {min}")]
    SeriesTooShort { len: usize, min: usize },

    #[error("horizon k={k} too large for series of length {len} (need k <= len - 2)")]
    HorizonTooLarge { k: usize, len: usize },

    /// The lag-k/lag-0 sample moment ratio is not positive, so the k-th real
    /// root is undefined. Signals that the horizon is too long for the sample.
    #[error("nonpositive moment ratio {ratio} at horizon k={k}")]
    NonpositiveRatio { k: usize, ratio: f64 },

    #[error("weight scheme has no strictly positive weight")]
    NoPositiveWeight,

    #[error("search domain [{lo}, {hi}] is empty or not inside (0, 1)")]
    EmptySearchDomain { lo: f64, hi: f64 },

    #[error("bad half-width m={m}: need 1 <= m <= {max} for {len} ordinates")]
    BadHalfWidth { m: usize, len: usize, max: usize },

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    /// Cannot occur for parameters that satisfy their own invariants; kept so
    /// the reduction does not silently return NaN if they are violated.
    #[error("ARMA reduction found no invertible root (discriminant {disc})")]
    NoInvertibleRoot { disc: f64 },

    #[error("{path}:{line}: {msg}")]
    Csv {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
