//! `inoue`: spectral toolkit for Inoue surfaces.
//!
//! Exit codes: 0 success (or scan consistent with the theorem), 2 invalid
//! input, 3 contradiction confirmed by both methods, 4 numerical anomaly.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use inoue_core::analysis::{
    bessel_i, bessel_k, matching_determinant, p_zero_membership, TwistParameter,
    P_ZERO_THRESHOLD,
};
use inoue_core::json::ComplexJson;
use inoue_core::lattice::{mode_coefficients, orbit_segment};
use inoue_core::spectral::{annulus_scan, Verdict};
use inoue_core::{Error, Mode, Surface64};

use config::{load_file, resolve, Config, Overrides};

const EXIT_INPUT: u8 = 2;
const EXIT_CONTRADICTION: u8 = 3;
const EXIT_ANOMALY: u8 = 4;

#[derive(Parser)]
#[command(name = "inoue", version, about = "Spectral sets of twisted Dirac operators on Inoue surfaces")]
struct Cli {
    /// TOML config file (default: $INOUE_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigen-data, lattice basis and identity residuals of M.
    Analyze {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Annulus scan over orbit representatives and a δ grid.
    Spectrum(SpectrumArgs),
    /// P and Q along a segment of the orbit of a mode.
    Orbit {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, allow_hyphen_values = true)]
        seed: String,
        /// Inclusive index range `lo,hi`.
        #[arg(long, allow_hyphen_values = true, default_value = "-2,2")]
        range: String,
    },
    /// Matching determinant (or the P = 0 analysis) of one mode.
    Mode {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long, allow_hyphen_values = true)]
        mode: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        delta: f64,
    },
    /// Wronskian residuals of the Bessel functions on a grid of arguments.
    BesselCheck,
}

#[derive(Args)]
struct MatrixArgs {
    /// Cappell–Shaneson index m (−2 ≤ m ≤ 3).
    #[arg(long, allow_hyphen_values = true)]
    cs: Option<i64>,
    /// Nine integers, row-major, separated by commas or whitespace.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// JSON file holding a 3×3 integer array.
    #[arg(long)]
    matrix_file: Option<PathBuf>,
}

#[derive(Args)]
struct TolArgs {
    #[arg(long)]
    tol_rel: Option<f64>,
    #[arg(long)]
    tol_abs: Option<f64>,
    #[arg(long)]
    flag_threshold: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long)]
    seed_bound: Option<i64>,
    #[arg(long)]
    delta_points: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write a gnuplot grid of |det| over (orbit index, δ).
    #[arg(long)]
    plot_data: Option<PathBuf>,
}

/// A failure reported as `{"error": kind, "message": ..}` with exit code 2.
struct Failure {
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        kind: "Io",
        message: format!("{}: {e}", path.display()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let body = json!({ "error": f.kind, "message": f.message });
            eprintln!("{body}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let file = load_file(cli.config.as_deref())?;
    match cli.command {
        Command::Analyze { matrix, out } => {
            let cfg = resolve(overrides(&matrix, None), file)?;
            let surface = Surface64::new(cfg.inoue_matrix()?)?;
            emit(out.as_deref(), &to_json(&analysis_json(&cfg, &surface)))?;
            Ok(0)
        }
        Command::Spectrum(args) => spectrum(args, file),
        Command::Orbit { matrix, seed, range } => {
            let cfg = resolve(overrides(&matrix, None), file)?;
            let surface = Surface64::new(cfg.inoue_matrix()?)?;
            let seed = Mode::parse(&seed)?;
            let (lo, hi) = parse_range(&range)?;
            let seg = orbit_segment(&surface.matrix, seed, lo, hi)?;
            let mut out = String::new();
            for (n, mode) in seg.iter() {
                let c = mode_coefficients(&surface.basis, mode);
                let line = json!({ "n": n, "mode": mode, "P": c.p, "Q": ComplexJson::new(c.q) });
                out.push_str(&line.to_string());
                out.push('\n');
            }
            emit(None, &out)?;
            Ok(0)
        }
        Command::Mode { matrix, tol, mode, delta } => {
            let cfg = resolve(overrides(&matrix, Some(&tol)), file)?;
            let surface = Surface64::new(cfg.inoue_matrix()?)?;
            let mode = Mode::parse(&mode)?;
            if !(delta.abs() <= 0.25) {
                return Err(Error::InvalidArgument {
                    reason: format!("delta {delta} lies outside [-1/4, 1/4]"),
                }
                .into());
            }
            let c = mode_coefficients(&surface.basis, mode);
            let text = if c.p.abs() <= P_ZERO_THRESHOLD && !mode.is_zero() {
                to_json(&p_zero_membership(c.q.norm(), delta)?)
            } else {
                let tw = TwistParameter::from_delta(delta, 0.0, surface.eigen.log_alpha);
                to_json(&matching_determinant(&c, &tw, &cfg.matching_config())?)
            };
            emit(None, &text)?;
            Ok(0)
        }
        Command::BesselCheck => bessel_check(),
    }
}

fn overrides(m: &MatrixArgs, tol: Option<&TolArgs>) -> Overrides {
    Overrides {
        cs: m.cs,
        matrix: m.matrix.clone(),
        matrix_file: m.matrix_file.clone(),
        tol_rel: tol.and_then(|t| t.tol_rel),
        tol_abs: tol.and_then(|t| t.tol_abs),
        flag_threshold: tol.and_then(|t| t.flag_threshold),
        ..Overrides::default()
    }
}

fn spectrum(args: SpectrumArgs, file: config::FileConfig) -> Result<u8, Failure> {
    let flags = Overrides {
        seed_bound: args.seed_bound,
        delta_points: args.delta_points,
        workers: args.workers,
        ..overrides(&args.matrix, Some(&args.tol))
    };
    let cfg = resolve(flags, file)?;
    let surface = Surface64::new(cfg.inoue_matrix()?)?;
    let report = annulus_scan(&surface, &cfg.scan_config()?)?;

    let text = match args.format {
        Format::Json => to_json(&json!({
            "version": inoue_core::VERSION,
            "config": cfg,
            "report": report,
        })),
        Format::Csv => report.to_csv(),
    };
    emit(args.out.as_deref(), &text)?;
    if let Some(path) = &args.plot_data {
        std::fs::write(path, report.to_plot_data()).map_err(|e| io_failure(path, e))?;
    }
    Ok(match report.verdict {
        Verdict::ConsistentWithTheorem => 0,
        Verdict::Contradiction { .. } => EXIT_CONTRADICTION,
        Verdict::NumericalAnomaly { .. } => EXIT_ANOMALY,
    })
}

fn analysis_json(cfg: &Config, s: &Surface64) -> serde_json::Value {
    let e = &s.eigen;
    let cp = s.matrix.char_poly();
    json!({
        "version": inoue_core::VERSION,
        "matrix_source": cfg.matrix_source,
        "matrix": s.matrix.entries(),
        "char_poly": { "c2": cp.c2, "c1": cp.c1, "discriminant": cp.discriminant().to_string() },
        "alpha": e.alpha,
        "beta": ComplexJson::new(e.beta),
        "alpha_beta": ComplexJson::new(e.alpha_beta()),
        "log_alpha": e.log_alpha,
        "eigenvector_a": e.a,
        "eigenvector_b": e.b.map(ComplexJson::new),
        "lattice_basis": { "Y": s.basis.y, "Y_inv": s.basis.y_inv, "A": s.basis.a },
        "residuals": s.residuals(),
    })
}

fn bessel_check() -> Result<u8, Failure> {
    let xs: [f64; 14] = [0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 7.5, 10.0, 15.0, 20.0, 25.0, 30.0];
    let mut worst: f64 = 0.0;
    let mut out = String::from("x,I0,I1,K0,K1,wronskian_rel_residual\n");
    for x in xs {
        let (i0, i1) = (bessel_i(0, x)?, bessel_i(1, x)?);
        let (k0, k1) = (bessel_k(0, x)?, bessel_k(1, x)?);
        let res = ((i0 * k1 + i1 * k0) * x - 1.0).abs();
        worst = worst.max(res);
        out.push_str(&format!("{x},{i0:e},{i1:e},{k0:e},{k1:e},{res:e}\n"));
    }
    emit(None, &out)?;
    Ok(if worst <= 1e-10 { 0 } else { EXIT_ANOMALY })
}

fn parse_range(s: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::InvalidArgument {
        reason: format!("expected `lo,hi`, got `{s}`"),
    };
    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| io_failure(Path::new("<stdout>"), e))
        }
    }
}
