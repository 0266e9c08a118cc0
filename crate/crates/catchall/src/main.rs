//! Command-line surface over the library: simulation, reduction, estimation,
//! spectral bounds, and Monte Carlo tables, with CSV/JSON output and a
//! reproducibility manifest next to every file written.
//!
//! Exit codes: 0 success, 2 flag/validation errors, 3 data/parse errors,
//! 4 estimator-domain errors (nonpositive moment ratio).

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use catchall::io::{
    read_series_csv, write_bias_csv, write_bounds_csv, write_coverage_csv, write_profile_csv,
    write_series_csv, write_theory_bounds_csv, write_variance_csv, RunManifest,
};
use catchall::{
    asy_variance_factor, estimate_catchall, estimate_closed_form, find_features,
    identification_bounds, noise_variance_bound, observe, periodogram, profile_objective,
    run_bias_experiment, run_spectral_coverage, run_variance_experiment, simulate_latent, smooth,
    spectrum_ar1, spectrum_y, theory_grid, Error, EstimateResult, ExperimentConfig, Result,
    SearchOptions, SimConfig, SpectralFeatures, StructuralParams, WeightScheme,
    DEFAULT_GRID_POINTS,
};

#[derive(Parser)]
#[command(
    name = "catchall",
    version,
    about = "Multi-step forecast-error estimation for noisy AR(1) series, with spectral identification bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a latent AR(1) observed with additive noise, to CSV
    Simulate(SimulateArgs),
    /// Closed-form ARMA(1,1) reduction, bias constant, plims, variance factors
    Reduce(ReduceArgs),
    /// Estimate theta from the y column of a CSV
    Estimate(EstimateArgs),
    /// Spectral identification bounds from data or from theory
    Spectrum(SpectrumArgs),
    /// Monte Carlo experiments: bias, variance growth, spectral coverage
    Mc(McArgs),
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma2_eps: f64,
    #[arg(long, default_value_t = 0.0)]
    sigma2_eta: f64,
    #[arg(short = 'T', long)]
    length: usize,
    #[arg(long, default_value_t = 0)]
    burn_in: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Also write the latent x column
    #[arg(long)]
    emit_latent: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma2_eps: f64,
    #[arg(long, default_value_t = 0.0)]
    sigma2_eta: f64,
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10")]
    horizons: Vec<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Explicit k-th-root solution (single horizon only)
    Closed,
    /// Grid scan plus golden-section refinement
    Minimize,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["k", "weights"])))]
struct EstimateArgs {
    /// Input CSV with a `y` column
    #[arg(long = "in")]
    input: PathBuf,
    /// Single horizon
    #[arg(long)]
    k: Option<usize>,
    /// Weighted horizons as k1:w1,k2:w2,...
    #[arg(long, value_delimiter = ',', value_parser = parse_weight)]
    weights: Option<Vec<(usize, f64)>>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Subtract the sample mean before estimating
    #[arg(long)]
    demean: bool,
    /// Also write the (theta, objective) grid to this CSV
    #[arg(long)]
    profile: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Theoretical curves for a DGP instead of data
    #[arg(long)]
    theory: bool,
    /// Input CSV with a `y` column
    #[arg(long = "in", required_unless_present = "theory", conflicts_with = "theory")]
    input: Option<PathBuf>,
    #[arg(long, required_if_eq("theory", "true"))]
    theta: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    sigma2_eps: f64,
    #[arg(long, default_value_t = 0.0)]
    sigma2_eta: f64,
    /// Daniell half-width; defaults to floor(sqrt(T)/2)
    #[arg(long)]
    half_width: Option<usize>,
    /// Grid size for theory mode
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid_points: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct McArgs {
    #[command(subcommand)]
    experiment: McCommand,
}

#[derive(Subcommand)]
enum McCommand {
    /// Mean and plim of theta_hat_k per horizon
    Bias(McBiasArgs),
    /// T*var(theta_hat_k) per horizon against the asymptotic factor
    Variance(McVarianceArgs),
    /// Bound coverage and peak location from smoothed periodograms
    Spectral(McSpectralArgs),
}

#[derive(Args)]
struct McBiasArgs {
    #[arg(long, default_value_t = 0.9)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma2_eps: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma2_eta: f64,
    #[arg(short = 'T', long, default_value_t = 5000)]
    length: usize,
    #[arg(short = 'R', long, default_value_t = 500)]
    reps: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10")]
    horizons: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct McVarianceArgs {
    #[arg(long, default_value_t = 0.9)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma2_eps: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma2_eta: f64,
    #[arg(short = 'T', long, default_value_t = 5000)]
    length: usize,
    #[arg(short = 'R', long, default_value_t = 500)]
    reps: usize,
    #[arg(long, value_delimiter = ',', default_value = "10,20,30")]
    horizons: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct McSpectralArgs {
    #[arg(long, default_value_t = 0.9)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma2_eps: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma2_eta: f64,
    #[arg(short = 'T', long, default_value_t = 4096)]
    length: usize,
    #[arg(short = 'R', long, default_value_t = 100)]
    reps: usize,
    /// Daniell half-width; defaults to floor(sqrt(T)/2)
    #[arg(long)]
    half_width: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    json: bool,
}

fn parse_weight(s: &str) -> std::result::Result<(usize, f64), String> {
    let (k, w) = s
        .split_once(':')
        .ok_or_else(|| format!("expected k:w, got `{s}`"))?;
    let k: usize = k.trim().parse().map_err(|_| format!("bad horizon `{k}`"))?;
    let w: f64 = w.trim().parse().map_err(|_| format!("bad weight `{w}`"))?;
    Ok((k, w))
}

fn default_half_width(t: usize) -> usize {
    let m = ((t as f64).sqrt() / 2.0).floor() as usize;
    m.clamp(1, (t / 2).max(2) / 2)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParam { .. }
        | Error::HorizonTooLarge { .. }
        | Error::NoPositiveWeight
        | Error::EmptySearchDomain { .. }
        | Error::BadHalfWidth { .. }
        | Error::InvalidConfig(_)
        | Error::NoInvertibleRoot { .. } => 2,
        Error::SeriesTooShort { .. } | Error::Csv { .. } | Error::Io { .. } => 3,
        Error::NonpositiveRatio { .. } => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Mc(a) => match a.experiment {
            McCommand::Bias(a) => cmd_mc_bias(a),
            McCommand::Variance(a) => cmd_mc_variance(a),
            McCommand::Spectral(a) => cmd_mc_spectral(a),
        },
    }
}

fn cmd_simulate(a: SimulateArgs) -> Result<()> {
    let p = StructuralParams::new(a.theta, a.sigma2_eps, a.sigma2_eta)?;
    let cfg = SimConfig::new(a.length, a.burn_in, a.seed)?;
    let x = simulate_latent(&p, &cfg)?;
    let y = observe(&x, p.sigma2_eta, a.seed)?;
    write_series_csv(&a.out, &y, a.emit_latent.then_some(&x))?;

    let params = json!({
        "theta": a.theta, "sigma2_eps": a.sigma2_eps, "sigma2_eta": a.sigma2_eta,
        "length": a.length, "burn_in": a.burn_in, "seed": a.seed,
        "emit_latent": a.emit_latent, "out": a.out,
    });
    RunManifest::new("simulate", params, Some(a.seed)).write_sidecar(&a.out)?;

    if a.json {
        println!(
            "{}",
            json!({"command": "simulate", "out": a.out, "length": a.length, "seed": a.seed})
        );
    } else {
        println!("wrote {} observations to {}", a.length, a.out.display());
    }
    Ok(())
}

fn cmd_reduce(a: ReduceArgs) -> Result<()> {
    let p = StructuralParams::new(a.theta, a.sigma2_eps, a.sigma2_eta)?;
    let arma = p.reduce_to_arma()?;
    let m = p.bias_constant()?;
    let plims: Vec<(usize, f64)> = a
        .horizons
        .iter()
        .map(|&k| p.plim_k(k).map(|v| (k, v)))
        .collect::<Result<_>>()?;
    let factors: Vec<(usize, f64)> = a
        .horizons
        .iter()
        .map(|&k| asy_variance_factor(p.theta, k).map(|v| (k, v)))
        .collect::<Result<_>>()?;

    if a.json {
        let kv = |pairs: &[(usize, f64)]| {
            pairs
                .iter()
                .map(|&(k, value)| json!({"k": k, "value": value}))
                .collect::<Vec<_>>()
        };
        println!(
            "{}",
            json!({
                "theta": p.theta,
                "alpha": arma.alpha,
                "sigma2_u": arma.sigma2_u,
                "c": m.c,
                "sigma2_x": m.sigma2_x,
                "sigma2_y": m.sigma2_y,
                "plims": kv(&plims),
                "var_factors": kv(&factors),
            })
        );
    } else {
        println!("theta     = {}", p.theta);
        println!("alpha     = {}", arma.alpha);
        println!("sigma2_u  = {}", arma.sigma2_u);
        println!("c         = {}", m.c);
        println!("sigma2_x  = {}", m.sigma2_x);
        println!("sigma2_y  = {}", m.sigma2_y);
        for (k, v) in &plims {
            println!("plim[k={k}]       = {v}");
        }
        for (k, v) in &factors {
            println!("var_factor[k={k}] = {v}");
        }
    }
    Ok(())
}

fn cmd_estimate(a: EstimateArgs) -> Result<()> {
    let mut y = read_series_csv(&a.input)?;
    if a.demean {
        y.demean();
    }
    let scheme = match (a.k, &a.weights) {
        (Some(k), None) => WeightScheme::point_mass(k)?,
        (None, Some(pairs)) => WeightScheme::new(pairs.iter().copied())?,
        _ => unreachable!("clap group enforces exactly one of --k/--weights"),
    };
    let method = a.method.unwrap_or(if scheme.as_point_mass().is_some() {
        MethodArg::Closed
    } else {
        MethodArg::Minimize
    });

    let opts = SearchOptions::default();
    let result: EstimateResult = match method {
        MethodArg::Closed => {
            let k = scheme.as_point_mass().ok_or_else(|| {
                Error::InvalidConfig(
                    "closed-form method needs a single horizon; use --method minimize".into(),
                )
            })?;
            estimate_closed_form(&y, k)?
        }
        MethodArg::Minimize => estimate_catchall(&y, &scheme, &opts)?,
    };

    if let Some(path) = &a.profile {
        let n = opts.grid_points;
        let grid: Vec<f64> = (0..n)
            .map(|i| opts.lo + (opts.hi - opts.lo) * i as f64 / (n - 1) as f64)
            .collect();
        let prof = profile_objective(&y, &scheme, &grid)?;
        write_profile_csv(path, &prof)?;
        let params = json!({
            "in": a.input, "k": a.k, "weights": a.weights, "demean": a.demean,
            "method": match method { MethodArg::Closed => "closed", MethodArg::Minimize => "minimize" },
        });
        RunManifest::new("estimate --profile", params, None).write_sidecar(path)?;
    }

    let method_name = match result.method {
        catchall::Method::ClosedForm => "closed",
        catchall::Method::Minimizer => "minimize",
    };
    if a.json {
        println!(
            "{}",
            json!({
                "theta_hat": result.theta_hat,
                "objective": result.objective_value,
                "method": method_name,
                "interior": result.interior,
                "n_terms": result.n_terms.iter().map(|&(k, n)| json!({"k": k, "n": n})).collect::<Vec<_>>(),
                "weights": result.weights.iter().map(|(k, w)| json!({"k": k, "w": w})).collect::<Vec<_>>(),
            })
        );
    } else {
        println!("theta_hat = {}", result.theta_hat);
        println!("objective = {}", result.objective_value);
        println!("method    = {method_name}");
        println!("interior  = {}", result.interior);
        for (k, n) in &result.n_terms {
            println!("terms[k={k}] = {n}");
        }
    }
    Ok(())
}

fn features_json(f: &SpectralFeatures) -> serde_json::Value {
    let list = |v: &[catchall::Extremum]| {
        v.iter()
            .map(|e| json!({"index": e.index, "lambda": e.frequency, "value": e.value}))
            .collect::<Vec<_>>()
    };
    json!({"peaks": list(&f.peaks), "troughs": list(&f.troughs)})
}

fn print_features(f: &SpectralFeatures) {
    for p in &f.peaks {
        println!("peak   at lambda = {} (value {})", p.frequency, p.value);
    }
    for t in &f.troughs {
        println!("trough at lambda = {} (value {})", t.frequency, t.value);
    }
}

fn cmd_spectrum(a: SpectrumArgs) -> Result<()> {
    if a.theory {
        let p = StructuralParams::new(
            a.theta.expect("clap requires --theta with --theory"),
            a.sigma2_eps,
            a.sigma2_eta,
        )?;
        let grid = theory_grid(a.grid_points)?;
        let fx = spectrum_ar1(&p, &grid)?;
        let fy = spectrum_y(&p, &grid)?;
        let b = identification_bounds(&fy)?;
        write_theory_bounds_csv(&a.out, &fx, &b)?;
        let params = json!({
            "theory": true, "theta": p.theta, "sigma2_eps": p.sigma2_eps,
            "sigma2_eta": p.sigma2_eta, "grid_points": a.grid_points, "out": a.out,
        });
        RunManifest::new("spectrum", params, None).write_sidecar(&a.out)?;

        let feats = find_features(&fy)?;
        if a.json {
            println!(
                "{}",
                json!({
                    "f_bar": b.f_bar(),
                    "noise_variance_bound": noise_variance_bound(&b),
                    "features": features_json(&feats),
                    "out": a.out,
                })
            );
        } else {
            println!("f_bar (sigma2_eta upper bound) = {}", b.f_bar());
            print_features(&feats);
            println!("wrote bounds to {}", a.out.display());
        }
        return Ok(());
    }

    let input = a.input.as_ref().expect("clap requires --in without --theory");
    let y = read_series_csv(input)?;
    let pg = periodogram(&y)?;
    let m = a.half_width.unwrap_or_else(|| default_half_width(y.len()));
    let sm = smooth(&pg, m)?;
    let b = identification_bounds(&sm)?;
    write_bounds_csv(&a.out, &b)?;
    let params = json!({
        "theory": false, "in": input, "half_width": m, "out": a.out,
    });
    RunManifest::new("spectrum", params, None).write_sidecar(&a.out)?;

    let feats = find_features(&sm)?;
    if a.json {
        println!(
            "{}",
            json!({
                "f_bar": b.f_bar(),
                "noise_variance_bound": noise_variance_bound(&b),
                "half_width": m,
                "features": features_json(&feats),
                "out": a.out,
            })
        );
    } else {
        println!("half-width m = {m}");
        println!("f_bar (sigma2_eta upper bound) = {}", b.f_bar());
        print_features(&feats);
        println!("wrote bounds to {}", a.out.display());
    }
    Ok(())
}

fn cmd_mc_bias(a: McBiasArgs) -> Result<()> {
    let p = StructuralParams::new(a.theta, a.sigma2_eps, a.sigma2_eta)?;
    let cfg = ExperimentConfig::new(p, a.length, a.reps, a.horizons.clone(), a.seed)?
        .with_parallel(a.parallel);
    let table = run_bias_experiment(&cfg)?;
    write_bias_csv(&a.out, &table)?;
    let params = json!({
        "theta": a.theta, "sigma2_eps": a.sigma2_eps, "sigma2_eta": a.sigma2_eta,
        "length": a.length, "reps": a.reps, "horizons": a.horizons,
        "seed": a.seed, "parallel": a.parallel, "out": a.out,
    });
    RunManifest::new("mc bias", params, Some(a.seed)).write_sidecar(&a.out)?;

    if a.json {
        let rows = table
            .rows
            .iter()
            .map(|r| {
                json!({
                    "k": r.k, "mean": r.mean, "sd": r.sd, "plim": r.plim,
                    "mean_minus_plim": r.mean_minus_plim, "mcse": r.mcse,
                    "failure_count": r.failure_count,
                })
            })
            .collect::<Vec<_>>();
        println!("{}", json!({"out": a.out, "replications": a.reps, "rows": rows}));
    } else {
        for r in &table.rows {
            println!(
                "k={:<3} mean={:.6} plim={:.6} gap={:+.6} mcse={:.6} failures={}",
                r.k, r.mean, r.plim, r.mean_minus_plim, r.mcse, r.failure_count
            );
        }
        println!("wrote bias table to {}", a.out.display());
    }
    Ok(())
}

fn cmd_mc_variance(a: McVarianceArgs) -> Result<()> {
    let p = StructuralParams::new(a.theta, a.sigma2_eps, a.sigma2_eta)?;
    let cfg = ExperimentConfig::new(p, a.length, a.reps, a.horizons.clone(), a.seed)?
        .with_parallel(a.parallel);
    let table = run_variance_experiment(&cfg)?;
    write_variance_csv(&a.out, &table)?;
    let params = json!({
        "theta": a.theta, "sigma2_eps": a.sigma2_eps, "sigma2_eta": a.sigma2_eta,
        "length": a.length, "reps": a.reps, "horizons": a.horizons,
        "seed": a.seed, "parallel": a.parallel, "out": a.out,
    });
    RunManifest::new("mc variance", params, Some(a.seed)).write_sidecar(&a.out)?;

    if a.json {
        let rows = table
            .rows
            .iter()
            .map(|r| {
                json!({
                    "k": r.k, "t_var": r.t_var, "oracle_factor": r.oracle_factor,
                    "ratio": r.ratio, "failure_count": r.failure_count,
                })
            })
            .collect::<Vec<_>>();
        println!("{}", json!({"out": a.out, "replications": a.reps, "rows": rows}));
    } else {
        for r in &table.rows {
            println!(
                "k={:<3} T*var={:.4} oracle={:.4} ratio={:.3} failures={}",
                r.k, r.t_var, r.oracle_factor, r.ratio, r.failure_count
            );
        }
        println!("wrote variance table to {}", a.out.display());
    }
    Ok(())
}

fn cmd_mc_spectral(a: McSpectralArgs) -> Result<()> {
    let p = StructuralParams::new(a.theta, a.sigma2_eps, a.sigma2_eta)?;
    let cfg = ExperimentConfig::new(p, a.length, a.reps, vec![1], a.seed)?
        .with_parallel(a.parallel);
    let m = a.half_width.unwrap_or_else(|| default_half_width(a.length));
    let report = run_spectral_coverage(&cfg, m)?;
    write_coverage_csv(&a.out, &report)?;
    let params = json!({
        "theta": a.theta, "sigma2_eps": a.sigma2_eps, "sigma2_eta": a.sigma2_eta,
        "length": a.length, "reps": a.reps, "half_width": m,
        "seed": a.seed, "parallel": a.parallel, "out": a.out,
    });
    RunManifest::new("mc spectral", params, Some(a.seed)).write_sidecar(&a.out)?;

    if a.json {
        println!(
            "{}",
            json!({
                "out": a.out,
                "replications": a.reps,
                "half_width": m,
                "mean_coverage": report.mean_coverage(),
                "bound_rate": report.bound_rate(),
                "peak_within_2_bins_rate": report.peak_rate(2),
                "theory_peak_bin": report.theory_peak_bin,
            })
        );
    } else {
        println!("half-width m = {m}");
        println!("mean coverage           = {:.4}", report.mean_coverage());
        println!("noise-bound hold rate   = {:.4}", report.bound_rate());
        println!("peak within 2 bins rate = {:.4}", report.peak_rate(2));
        println!("wrote coverage table to {}", a.out.display());
    }
    Ok(())
}
