//! Spectral points on the three operator scales and the annulus scan.
//!
//! The Dolbeault operator, `D⁻` and `D⁺` have spectral sets related by
//! `z ↦ α^{−1/4} z` (Dolbeault to `D⁻`) and `z ↦ 1/z̄` (`D⁻` to `D⁺`). The
//! zero mode contributes `z = 1` and `z = αβ` on the Dolbeault scale; every
//! other mode is checked numerically by [`annulus_scan`].

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{CharPoly, EigenData, Surface};
use crate::analysis::{
    fd_oracle, matching_determinant, p_zero_membership, truncation_times, FdOracle,
    MatchingConfig, MatchingResult, PZeroAnalysis, PZeroVerdict, TwistParameter,
    P_ZERO_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::lattice::{mode_coefficients, orbit_representatives, Mode};
use crate::scalar::{Cx, Scalar};

/// Tolerance for the finite-orbit points against their closed forms.
pub const FINITE_ORBIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Operator {
    Dolbeault,
    DMinus,
    DPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SpectralSource {
    FiniteOrbit,
    ScanFlag { mode: Mode, delta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct SpectralPoint<T> {
    #[serde(serialize_with = "crate::json::complex")]
    pub z: Cx<T>,
    pub modulus: T,
    pub operator: Operator,
    pub source: SpectralSource,
}

impl<T: Scalar> SpectralPoint<T> {
    fn new(z: Cx<T>, operator: Operator, source: SpectralSource) -> Self {
        SpectralPoint {
            z,
            modulus: z.norm(),
            operator,
            source,
        }
    }
}

/// `{1, αβ}` on the Dolbeault scale.
pub fn finite_orbit_points<T: Scalar>(e: &EigenData<T>) -> Vec<SpectralPoint<T>> {
    vec![
        SpectralPoint::new(Cx::new(T::one(), T::zero()), Operator::Dolbeault, SpectralSource::FiniteOrbit),
        SpectralPoint::new(e.alpha_beta(), Operator::Dolbeault, SpectralSource::FiniteOrbit),
    ]
}

/// Dolbeault scale to `D⁻`: `z ↦ α^{−1/4} z`.
pub fn map_to_dminus<T: Scalar>(e: &EigenData<T>, z: Cx<T>) -> Result<Cx<T>> {
    if z.norm() == T::zero() {
        return Err(Error::ZeroInput);
    }
    Ok(z * e.alpha.powf(T::lit(-0.25)))
}

/// `D⁻` to `D⁺`: `τ(z) = 1/z̄`.
pub fn map_to_dplus<T: Scalar>(z: Cx<T>) -> Result<Cx<T>> {
    if z.norm() == T::zero() {
        return Err(Error::ZeroInput);
    }
    Ok(Cx::new(T::one(), T::zero()) / z.conj())
}

/// Finite-orbit points on all three scales, Dolbeault first.
pub fn finite_orbit_points_all_scales<T: Scalar>(e: &EigenData<T>) -> Result<Vec<SpectralPoint<T>>> {
    let dolbeault = finite_orbit_points(e);
    let mut out = dolbeault.clone();
    let mut dminus = Vec::with_capacity(dolbeault.len());
    for p in &dolbeault {
        dminus.push(SpectralPoint::new(map_to_dminus(e, p.z)?, Operator::DMinus, p.source));
    }
    for p in &dminus {
        out.push(*p);
    }
    for p in &dminus {
        out.push(SpectralPoint::new(map_to_dplus(p.z)?, Operator::DPlus, p.source));
    }
    Ok(out)
}

/// Largest deviation of the finite-orbit points from the closed forms
/// `D⁻ = {α^{−1/4}, α^{3/4}β}`, `D⁺ = {α^{1/4}, α^{1/4}β}` and from the band
/// moduli `α^{∓1/4}`.
pub fn finite_orbit_deviation(e: &EigenData<f64>, points: &[SpectralPoint<f64>]) -> f64 {
    let a = e.alpha;
    let expected = [
        (Operator::Dolbeault, Cx::new(1.0, 0.0)),
        (Operator::Dolbeault, e.alpha_beta()),
        (Operator::DMinus, Cx::new(a.powf(-0.25), 0.0)),
        (Operator::DMinus, e.beta * a.powf(0.75)),
        (Operator::DPlus, Cx::new(a.powf(0.25), 0.0)),
        (Operator::DPlus, e.beta * a.powf(0.25)),
    ];
    let moduli = [1.0, a.sqrt(), a.powf(-0.25), a.powf(0.25), a.powf(0.25), a.powf(-0.25)];
    if points.len() != expected.len() {
        return f64::INFINITY;
    }
    let mut dev: f64 = 0.0;
    for ((p, (op, z)), m) in points.iter().zip(expected).zip(moduli) {
        if p.operator != op {
            return f64::INFINITY;
        }
        dev = dev.max((p.z - z).norm()).max((p.modulus - m).abs());
    }
    dev
}

/// `n ≥ 2` equally spaced points on the closed band `[−1/4, 1/4]`.
pub fn delta_grid(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument {
            reason: format!("delta grid needs at least 2 points, got {n}"),
        });
    }
    let last = (n - 1) as f64;
    Ok((0..n).map(|i| -0.25 + 0.5 * i as f64 / last).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanConfig {
    pub seed_bound: i64,
    pub delta_grid: Vec<f64>,
    pub matching: MatchingConfig<f64>,
    pub workers: usize,
    pub fd_intervals: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            seed_bound: 3,
            delta_grid: delta_grid(51).expect("51 ≥ 2"),
            matching: MatchingConfig::default(),
            workers: 1,
            fd_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceSummary {
    pub matrix: [[i64; 3]; 3],
    pub char_poly: CharPoly,
    pub alpha: f64,
    #[serde(serialize_with = "crate::json::complex")]
    pub beta: Cx<f64>,
    pub log_alpha: f64,
}

impl SurfaceSummary {
    pub fn new(s: &Surface<f64>) -> Self {
        SurfaceSummary {
            matrix: *s.matrix.entries(),
            char_poly: s.matrix.char_poly(),
            alpha: s.eigen.alpha,
            beta: s.eigen.beta,
            log_alpha: s.eigen.log_alpha,
        }
    }
}

/// What the scan covers; the theorem quantifies over all modes, the scan
/// over orbits meeting the box `‖seed‖∞ ≤ seed_bound`.
#[derive(Debug, Clone, Serialize)]
pub struct ScanScope {
    pub seed_bound: i64,
    pub representatives: usize,
    pub cells: usize,
    pub statement: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellError {
    pub mode: Mode,
    pub delta: f64,
    pub kind: &'static str,
    pub message: String,
}

/// A cell whose matching determinant fell below the flag threshold (or a
/// `P = 0` cell admitting a solution), with the finite-difference check.
#[derive(Debug, Clone, Serialize)]
pub struct FlaggedCell {
    pub point: SpectralPoint<f64>,
    pub abs_det: Option<f64>,
    pub oracle: FdOracle<f64>,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Verdict {
    ConsistentWithTheorem,
    NumericalAnomaly { details: Vec<String> },
    Contradiction { details: Vec<String> },
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub version: &'static str,
    pub config: ScanConfig,
    pub surface: SurfaceSummary,
    pub scope: ScanScope,
    pub scanned_modes: Vec<Mode>,
    pub delta_grid: Vec<f64>,
    pub results: Vec<MatchingResult<f64>>,
    pub p_zero_results: Vec<PZeroAnalysis<f64>>,
    pub min_abs_det: Option<f64>,
    pub flagged: Vec<FlaggedCell>,
    pub errors: Vec<CellError>,
    pub finite_orbit_points: Vec<SpectralPoint<f64>>,
    pub finite_orbit_deviation: f64,
    pub verdict: Verdict,
}

enum Cell {
    Matching(MatchingResult<f64>),
    PZero(PZeroAnalysis<f64>),
    Failed(CellError),
}

fn run_cell(s: &Surface<f64>, cfg: &ScanConfig, mode: Mode, delta: f64) -> Cell {
    let c = mode_coefficients(&s.basis, mode);
    let tw = TwistParameter::from_delta(delta, 0.0, s.eigen.log_alpha);
    let out = if c.p.abs() <= P_ZERO_THRESHOLD {
        log::warn!("mode {mode} has |P| = {:e}; using the Bessel branch", c.p.abs());
        p_zero_membership(c.q.norm(), delta).map(Cell::PZero)
    } else {
        matching_determinant(&c, &tw, &cfg.matching).map(Cell::Matching)
    };
    out.unwrap_or_else(|e| {
        Cell::Failed(CellError {
            mode,
            delta,
            kind: e.kind(),
            message: e.to_string(),
        })
    })
}

fn check_flag(s: &Surface<f64>, cfg: &ScanConfig, mode: Mode, delta: f64, abs_det: Option<f64>) -> FlaggedCell {
    let c = mode_coefficients(&s.basis, mode);
    let (t_minus, t_plus) = truncation_times(&c, &cfg.matching);
    let oracle = fd_oracle(&c, t_minus, t_plus, cfg.fd_intervals);
    let z = Cx::new(s.eigen.alpha.powf(delta + 0.25), 0.0);
    FlaggedCell {
        point: SpectralPoint::new(z, Operator::Dolbeault, SpectralSource::ScanFlag { mode, delta }),
        abs_det,
        oracle,
        confirmed: oracle.sigma_min < cfg.matching.flag_threshold,
    }
}

/// Scans every orbit representative with `‖seed‖∞ ≤ seed_bound` at every
/// `δ` of the grid and compares the outcome with the theorem: no spectral
/// points strictly inside the annulus and only the finite-orbit points on
/// its boundary.
///
/// Cells run on a pool of `workers` threads; results are collected in
/// (representative, δ) order, so the report does not depend on scheduling.
pub fn annulus_scan(s: &Surface<f64>, cfg: &ScanConfig) -> Result<SpectrumReport> {
    if cfg.seed_bound < 1 {
        return Err(Error::InvalidArgument {
            reason: format!("seed bound must be at least 1, got {}", cfg.seed_bound),
        });
    }
    if let Some(d) = cfg.delta_grid.iter().find(|d| !(d.abs() <= 0.25)) {
        return Err(Error::InvalidArgument {
            reason: format!("delta {d} lies outside [-1/4, 1/4]"),
        });
    }
    if cfg.workers == 0 {
        return Err(Error::InvalidArgument {
            reason: "worker count must be positive".into(),
        });
    }

    let reps = orbit_representatives(&s.matrix, cfg.seed_bound)?;
    let cells: Vec<(Mode, f64)> = reps
        .iter()
        .flat_map(|&m| cfg.delta_grid.iter().map(move |&d| (m, d)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument {
            reason: format!("cannot start worker pool: {e}"),
        })?;
    let outcomes: Vec<Cell> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(mode, delta)| run_cell(s, cfg, mode, delta))
            .collect()
    });

    let mut results = Vec::new();
    let mut p_zero_results = Vec::new();
    let mut errors = Vec::new();
    let mut to_check = Vec::new();
    for cell in outcomes {
        match cell {
            Cell::Matching(r) => {
                if r.flagged {
                    to_check.push((r.mode, r.delta, Some(r.abs_det())));
                }
                results.push(r);
            }
            Cell::PZero(a) => {
                if a.verdict != PZeroVerdict::NoNonzeroSolution {
                    to_check.push((Mode::ZERO, a.delta, None));
                }
                p_zero_results.push(a);
            }
            Cell::Failed(e) => errors.push(e),
        }
    }
    let flagged: Vec<FlaggedCell> = pool.install(|| {
        to_check
            .par_iter()
            .map(|&(mode, delta, abs_det)| check_flag(s, cfg, mode, delta, abs_det))
            .collect()
    });

    let finite = finite_orbit_points_all_scales(&s.eigen)?;
    let deviation = finite_orbit_deviation(&s.eigen, &finite);

    let mut contradictions = Vec::new();
    let mut anomalies = Vec::new();
    for f in &flagged {
        if let SpectralSource::ScanFlag { mode, delta } = f.point.source {
            let line = format!(
                "mode {mode} at delta {delta}: |det| = {:?}, finite-difference sigma_min = {:e}",
                f.abs_det, f.oracle.sigma_min
            );
            if f.confirmed {
                contradictions.push(line);
            } else {
                anomalies.push(line);
            }
        }
    }
    for e in &errors {
        anomalies.push(format!("mode {} at delta {}: {}", e.mode, e.delta, e.message));
    }
    if !(deviation <= FINITE_ORBIT_TOL) {
        contradictions.push(format!("finite-orbit points deviate from closed forms by {deviation:e}"));
    }
    let verdict = if !contradictions.is_empty() {
        Verdict::Contradiction { details: contradictions }
    } else if !anomalies.is_empty() {
        Verdict::NumericalAnomaly { details: anomalies }
    } else {
        Verdict::ConsistentWithTheorem
    };

    let min_abs_det = results.iter().map(|r| r.abs_det()).reduce(f64::min);
    Ok(SpectrumReport {
        version: crate::VERSION,
        config: cfg.clone(),
        surface: SurfaceSummary::new(s),
        scope: ScanScope {
            seed_bound: cfg.seed_bound,
            representatives: reps.len(),
            cells: cells.len(),
            statement: format!(
                "orbits meeting the box |k|,|l|,|m| <= {} only; modes outside these orbits are not covered",
                cfg.seed_bound
            ),
        },
        scanned_modes: reps,
        delta_grid: cfg.delta_grid.clone(),
        results,
        p_zero_results,
        min_abs_det,
        flagged,
        errors,
        finite_orbit_points: finite,
        finite_orbit_deviation: deviation,
        verdict,
    })
}

impl SpectrumReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per matching result:
    /// `mode_k,mode_l,mode_m,delta,det_re,det_im,flagged`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["mode_k", "mode_l", "mode_m", "delta", "det_re", "det_im", "flagged"])
            .expect("in-memory write");
        for r in &self.results {
            w.write_record([
                r.mode.k.to_string(),
                r.mode.l.to_string(),
                r.mode.m.to_string(),
                r.delta.to_string(),
                r.det.re.to_string(),
                r.det.im.to_string(),
                r.flagged.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    /// gnuplot data: columns `orbit_index delta abs_det`, one block per
    /// scanned representative separated by a blank line.
    pub fn to_plot_data(&self) -> String {
        let mut out = String::from("# orbit_index delta abs_det\n");
        for (i, mode) in self.scanned_modes.iter().enumerate() {
            let mut any = false;
            for r in self.results.iter().filter(|r| r.mode == *mode) {
                out.push_str(&format!("{i} {} {:e}\n", r.delta, r.abs_det()));
                any = true;
            }
            if any {
                out.push('\n');
            }
        }
        out
    }

    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::ConsistentWithTheorem
    }
}
