//! Properties of the matching determinant over scanned modes and of the
//! annulus scan as a whole.

use inoue_core::analysis::{
    fd_oracle, matching_determinant, truncation_times, MatchingConfig, TwistParameter,
};
use inoue_core::lattice::{apply_monodromy, mode_coefficients, orbit_representatives};
use inoue_core::spectral::{annulus_scan, delta_grid, ScanConfig, Verdict};
use inoue_core::{Cx, Surface64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tw(s: &Surface64, delta: f64) -> TwistParameter<f64> {
    TwistParameter::from_delta(delta, 0.0, s.eigen.log_alpha)
}

#[test]
fn truncation_independence_over_scanned_modes() {
    for m in [0, 1] {
        let s = Surface64::cappell_shaneson(m).unwrap();
        let base = MatchingConfig::default();
        let shifted = MatchingConfig {
            t_extra: 1.0,
            ..MatchingConfig::default()
        };
        for mode in orbit_representatives(&s.matrix, 3).unwrap() {
            let c = mode_coefficients(&s.basis, mode);
            let a = matching_determinant(&c, &tw(&s, 0.0), &base).unwrap();
            let b = matching_determinant(&c, &tw(&s, 0.0), &shifted).unwrap();
            assert!((a.abs_det() - b.abs_det()).abs() < 2e-3, "{mode}");
            assert!(a.abs_det() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn orbit_neighbours_share_verdicts() {
    let s = Surface64::cappell_shaneson(1).unwrap();
    let cfg = MatchingConfig::default();
    for mode in orbit_representatives(&s.matrix, 2).unwrap() {
        let next = apply_monodromy(&s.matrix, mode).unwrap();
        let a = matching_determinant(&mode_coefficients(&s.basis, mode), &tw(&s, -0.1), &cfg).unwrap();
        let b = matching_determinant(&mode_coefficients(&s.basis, next), &tw(&s, -0.1), &cfg).unwrap();
        assert_eq!(a.flagged, b.flagged, "{mode}");
        assert!(!a.flagged);
    }
}

#[test]
fn finite_difference_oracle_agrees_on_random_cells() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in [0, 1] {
        let s = Surface64::cappell_shaneson(m).unwrap();
        let reps = orbit_representatives(&s.matrix, 3).unwrap();
        let cfg = MatchingConfig::default();
        for _ in 0..5 {
            let mode = reps[rng.gen_range(0..reps.len())];
            let c = mode_coefficients(&s.basis, mode);
            let r = matching_determinant(&c, &tw(&s, rng.gen_range(-0.25..=0.25)), &cfg).unwrap();
            let (tm, tp) = truncation_times(&c, &cfg);
            let fd = fd_oracle(&c, tm, tp, 4000);
            assert_eq!(r.flagged, fd.sigma_min < cfg.flag_threshold, "{mode}: {fd:?}");
        }
    }
}

fn small_config() -> ScanConfig {
    ScanConfig {
        seed_bound: 2,
        delta_grid: delta_grid(5).unwrap(),
        ..ScanConfig::default()
    }
}

#[test]
fn scan_is_deterministic_and_worker_independent() {
    let s = Surface64::cappell_shaneson(0).unwrap();
    let one = annulus_scan(&s, &small_config()).unwrap();
    let again = annulus_scan(&s, &small_config()).unwrap();
    assert_eq!(one.to_json(), again.to_json());
    let two = annulus_scan(
        &s,
        &ScanConfig {
            workers: 2,
            ..small_config()
        },
    )
    .unwrap();
    assert_eq!(one.to_csv(), two.to_csv());
    assert_eq!(one.verdict, Verdict::ConsistentWithTheorem);
}

#[test]
fn rescaling_b_preserves_verdicts_and_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in [0, 3] {
        let s = Surface64::cappell_shaneson(m).unwrap();
        let c = Cx::from_polar(1.0, rng.gen_range(-3.1..3.1));
        let r = s.with_rescaled_b(c).unwrap();
        assert!((r.residuals().det_y).abs() < 1e-12);
        let a = annulus_scan(&s, &small_config()).unwrap();
        let b = annulus_scan(&r, &small_config()).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.scanned_modes, b.scanned_modes);
        for (x, y) in a.results.iter().zip(&b.results) {
            assert_eq!(x.flagged, y.flagged);
            assert!((x.abs_det() - y.abs_det()).abs() < 1e-8);
        }
        for (x, y) in a.finite_orbit_points.iter().zip(&b.finite_orbit_points) {
            assert!((x.z - y.z).norm() < 1e-10);
        }
    }
}

#[test]
fn report_formats() {
    let s = Surface64::cappell_shaneson(-1).unwrap();
    let r = annulus_scan(&s, &small_config()).unwrap();
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["verdict"], "ConsistentWithTheorem");
    assert_eq!(json["scope"]["seed_bound"], 2);
    assert_eq!(json["results"][0]["det"].as_object().unwrap().len(), 2);
    assert_eq!(json["finite_orbit_points"].as_array().unwrap().len(), 6);
    let csv = r.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("mode_k,mode_l,mode_m,delta,det_re,det_im,flagged"));
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 7);
        cols[4].parse::<f64>().unwrap();
        assert!(cols[6] == "false" || cols[6] == "true");
    }
}
