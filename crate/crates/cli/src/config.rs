//! Configuration resolution: command-line flags override the config file,
//! which overrides built-in defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use inoue_core::analysis::{IntegratorConfig, MatchingConfig, FLAG_THRESHOLD, T_FLOOR};
use inoue_core::spectral::{delta_grid, ScanConfig};
use inoue_core::{cappell_shaneson, Error, InoueMatrix};

/// Names the config file when `--config` is absent.
pub const CONFIG_ENV: &str = "INOUE_CONFIG";

/// Contents of a TOML config file. Every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub cs: Option<i64>,
    pub matrix: Option<String>,
    pub matrix_file: Option<PathBuf>,
    pub seed_bound: Option<i64>,
    pub delta_points: Option<usize>,
    pub workers: Option<usize>,
    pub tol_rel: Option<f64>,
    pub tol_abs: Option<f64>,
    pub flag_threshold: Option<f64>,
    pub t_floor: Option<f64>,
    pub fd_intervals: Option<usize>,
}

/// Values given on the command line; `None` defers to the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub cs: Option<i64>,
    pub matrix: Option<String>,
    pub matrix_file: Option<PathBuf>,
    pub seed_bound: Option<i64>,
    pub delta_points: Option<usize>,
    pub workers: Option<usize>,
    pub tol_rel: Option<f64>,
    pub tol_abs: Option<f64>,
    pub flag_threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixSource {
    CappellShaneson { m: i64 },
    Inline { text: String },
    File { path: PathBuf },
}

/// Fully resolved configuration, embedded in every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    pub matrix_source: MatrixSource,
    pub matrix: [[i64; 3]; 3],
    pub seed_bound: i64,
    pub delta_points: usize,
    pub workers: usize,
    pub tol_rel: f64,
    pub tol_abs: f64,
    pub flag_threshold: f64,
    pub t_floor: f64,
    pub fd_intervals: usize,
}

impl Config {
    pub fn inoue_matrix(&self) -> Result<InoueMatrix, Error> {
        InoueMatrix::new(self.matrix)
    }

    pub fn scan_config(&self) -> Result<ScanConfig, Error> {
        Ok(ScanConfig {
            seed_bound: self.seed_bound,
            delta_grid: delta_grid(self.delta_points)?,
            matching: self.matching_config(),
            workers: self.workers,
            fd_intervals: self.fd_intervals,
        })
    }

    pub fn matching_config(&self) -> MatchingConfig<f64> {
        MatchingConfig {
            integrator: IntegratorConfig {
                rtol: self.tol_rel,
                atol: self.tol_abs,
                ..IntegratorConfig::default()
            },
            t_floor: self.t_floor,
            flag_threshold: self.flag_threshold,
            ..MatchingConfig::default()
        }
    }
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidArgument {
        reason: reason.into(),
    }
}

/// Reads the config file named by `explicit`, else by `$INOUE_CONFIG`.
pub fn load_file(explicit: Option<&Path>) -> Result<FileConfig, Error> {
    let env_path = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    let Some(path) = explicit.map(Path::to_path_buf).or(env_path) else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| invalid(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| invalid(format!("bad config {}: {e}", path.display())))
}

/// Parses a JSON 3×3 array of integers.
pub fn read_matrix_file(path: &Path) -> Result<[[i64; 3]; 3], Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| invalid(format!("{} is not a 3x3 integer array: {e}", path.display())))
}

pub fn resolve(flags: Overrides, file: FileConfig) -> Result<Config, Error> {
    // A matrix given on the command line replaces any matrix from the file.
    let flag_source = flags.cs.is_some() || flags.matrix.is_some() || flags.matrix_file.is_some();
    let (cs, matrix, matrix_file) = if flag_source {
        (flags.cs, flags.matrix, flags.matrix_file)
    } else {
        (file.cs, file.matrix, file.matrix_file)
    };
    let given = [cs.is_some(), matrix.is_some(), matrix_file.is_some()];
    let (matrix_source, entries) = match (given.iter().filter(|g| **g).count(), cs, matrix, matrix_file) {
        (0, ..) => return Err(invalid("no matrix given: use --cs, --matrix or --matrix-file")),
        (1, Some(m), _, _) => (MatrixSource::CappellShaneson { m }, *cappell_shaneson(m)?.entries()),
        (1, _, Some(text), _) => {
            let parsed = InoueMatrix::parse(&text)?;
            (MatrixSource::Inline { text }, *parsed.entries())
        }
        (1, _, _, Some(path)) => {
            let entries = read_matrix_file(&path)?;
            InoueMatrix::new(entries)?;
            (MatrixSource::File { path }, entries)
        }
        _ => return Err(invalid("give exactly one of --cs, --matrix, --matrix-file")),
    };

    let defaults = ScanConfig::default();
    let integ = IntegratorConfig::<f64>::default();
    let cfg = Config {
        matrix_source,
        matrix: entries,
        seed_bound: flags.seed_bound.or(file.seed_bound).unwrap_or(defaults.seed_bound),
        delta_points: flags.delta_points.or(file.delta_points).unwrap_or(51),
        workers: flags.workers.or(file.workers).unwrap_or(1),
        tol_rel: flags.tol_rel.or(file.tol_rel).unwrap_or(integ.rtol),
        tol_abs: flags.tol_abs.or(file.tol_abs).unwrap_or(integ.atol),
        flag_threshold: flags
            .flag_threshold
            .or(file.flag_threshold)
            .unwrap_or(FLAG_THRESHOLD),
        t_floor: file.t_floor.unwrap_or(T_FLOOR),
        fd_intervals: file.fd_intervals.unwrap_or(defaults.fd_intervals),
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(c: &Config) -> Result<(), Error> {
    if c.delta_points < 2 {
        return Err(invalid(format!("delta points must be at least 2, got {}", c.delta_points)));
    }
    if c.seed_bound < 1 {
        return Err(invalid(format!("seed bound must be at least 1, got {}", c.seed_bound)));
    }
    if c.workers < 1 {
        return Err(invalid("worker count must be at least 1"));
    }
    for (name, v) in [
        ("tol-rel", c.tol_rel),
        ("tol-abs", c.tol_abs),
        ("flag-threshold", c.flag_threshold),
        ("t_floor", c.t_floor),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(invalid(format!("{name} must be positive, got {v}")));
        }
    }
    if c.fd_intervals < 4 {
        return Err(invalid("fd_intervals must be at least 4"));
    }
    Ok(())
}
