//! Helpers shared between integration tests and the acceptance harness.

use inoue_core::analysis::{
    integrate_renormalized, sl_potential_u, sl_potential_v, IntegratorConfig, ModeState,
};
use inoue_core::lattice::mode_coefficients;
use inoue_core::{Cx, Mode, ModeCoeff64, Surface64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tight() -> IntegratorConfig<f64> {
    IntegratorConfig {
        rtol: 1e-13,
        atol: 1e-15,
        ..IntegratorConfig::default()
    }
}

/// Samples a trajectory at `t_c + k h` for `k = −2..=2`, scaled consistently.
fn stencil(c: &ModeCoeff64, start: ModeState<f64>, t0: f64, tc: f64, h: f64) -> [ModeState<f64>; 5] {
    let cfg = tight();
    let mut t = t0;
    let mut s = start;
    let mut log = 0.0;
    let mut out = Vec::with_capacity(5);
    for k in -2..=2 {
        let next = tc + k as f64 * h;
        let tr = integrate_renormalized(c, t, next, s, &cfg).unwrap();
        log += tr.logmag;
        s = tr.state;
        t = next;
        out.push((tr.state, log));
    }
    let ref_log = out[2].1;
    let scaled: Vec<ModeState<f64>> = out.iter().map(|(st, l)| *st * (l - ref_log).exp()).collect();
    [scaled[0], scaled[1], scaled[2], scaled[3], scaled[4]]
}

fn second_derivative(f: [Cx<f64>; 5], h: f64) -> Cx<f64> {
    (-f[0] + f[1] * 16.0 - f[2] * 30.0 + f[3] * 16.0 - f[4]) / (12.0 * h * h)
}

/// Largest relative residual of `u'' = U_u u` and `v'' = U_v v` along
/// `samples` random trajectories, each probed at up to five times.
pub fn decoupling_worst_residual(seed: u64, samples: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    while done < samples {
        let m = rng.gen_range(-2..=3);
        let s = Surface64::cappell_shaneson(m).unwrap();
        let mode = Mode::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        if mode.is_zero() {
            continue;
        }
        let c = mode_coefficients(&s.basis, mode);
        let t0 = rng.gen_range(-3.0..2.0);
        let init = ModeState::new(
            Cx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Cx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
        .normalized();
        let mut checked = 0;
        for j in 1..=5 {
            let tc = t0 + 0.2 * j as f64;
            let rate = (c.p.abs() * tc.exp()).max(c.q.norm() * (-tc / 2.0).exp()).max(1.0);
            let h = 0.05 / rate;
            let st = stencil(&c, init, t0, tc, h);
            let mid = st[2];
            let n = mid.norm();
            if mid.u.norm() < 1e-3 * n || mid.v.norm() < 1e-3 * n {
                continue;
            }
            let u2 = second_derivative(st.map(|x| x.u), h);
            let v2 = second_derivative(st.map(|x| x.v), h);
            let pu = mid.u * sl_potential_u(&c, tc);
            let pv = mid.v * sl_potential_v(&c, tc);
            let ru = (pu - u2).norm() / u2.norm().max(pu.norm());
            let rv = (pv - v2).norm() / v2.norm().max(pv.norm());
            worst = worst.max(ru).max(rv);
            checked += 1;
        }
        if checked > 0 {
            done += 1;
        }
    }
    worst
}
