//! The per-mode system: decaying directions, transport, and consistency of
//! trajectories with the decoupled second-order equations.

mod common;

use inoue_core::analysis::{decaying_init, integrate_renormalized, End, IntegratorConfig, ModeState};
use inoue_core::{Cx, Mode, ModeCoeff64};

fn tight() -> IntegratorConfig<f64> {
    IntegratorConfig {
        rtol: 1e-13,
        atol: 1e-15,
        ..IntegratorConfig::default()
    }
}

fn coeff(p: f64, q: Cx<f64>) -> ModeCoeff64 {
    ModeCoeff64 {
        mode: Mode::new(1, 0, 0),
        p,
        q,
    }
}

#[test]
fn plus_end_directions() {
    let t = 6.0;
    let q = Cx::new(2.0, -1.0);
    let neg = decaying_init(&coeff(-1.5, q), End::Plus, t).unwrap();
    assert!(neg.u.norm() < 1e-3 && (neg.v.norm() - 1.0).abs() < 1e-6);
    let pos = decaying_init(&coeff(1.5, q), End::Plus, t).unwrap();
    assert!(pos.v.norm() < 1e-3 && (pos.u.norm() - 1.0).abs() < 1e-6);

    // Forward from the returned direction the norm shrinks at the frozen
    // rate. The interval is short because any error along the growing
    // solution is amplified by exp(|P|e^t) going forward.
    for c in [coeff(-1.5, q), coeff(1.5, q)] {
        let d = decaying_init(&c, End::Plus, t).unwrap();
        let dt = 0.01;
        let tr = integrate_renormalized(&c, t, t + dt, d, &tight()).unwrap();
        let frozen = -(c.p.abs() * t.exp()) * dt;
        assert!(tr.logmag < 0.0);
        assert!(((tr.logmag - frozen) / frozen).abs() < 0.05, "{} vs {frozen}", tr.logmag);

        // Transporting the decaying direction from T + 1 back to T lands on
        // the direction returned at T, up to the O(1/rate) adiabatic error.
        let far = decaying_init(&c, End::Plus, t + 1.0).unwrap();
        let back = integrate_renormalized(&c, t + 1.0, t, far, &tight()).unwrap();
        let cross = back.state.u * d.v - back.state.v * d.u;
        assert!(cross.norm() < 1e-3, "{cross}");
    }
}

#[test]
fn minus_end_growth_rate() {
    let c = coeff(0.7, Cx::new(3.0, 4.0));
    let q = c.q.norm();
    let t = 10.0;
    let d = decaying_init(&c, End::Minus, t + 1.0).unwrap();
    let ratio = d.u / d.v;
    assert!((ratio - c.q / q).norm() < 1e-2);
    let tr = integrate_renormalized(&c, -t - 1.0, -t, d, &tight()).unwrap();
    let expect = 2.0 * q * (((t + 1.0) / 2.0).exp() - (t / 2.0).exp());
    assert!(((tr.logmag - expect) / expect).abs() < 1e-3, "{} vs {expect}", tr.logmag);
}

#[test]
fn transport_reverses() {
    let c = coeff(-0.8, Cx::new(0.5, 1.1));
    let init = ModeState::new(Cx::new(0.6, 0.1), Cx::new(-0.2, 0.77)).normalized();
    let there = integrate_renormalized(&c, -1.0, 1.0, init, &tight()).unwrap();
    let back = integrate_renormalized(&c, 1.0, -1.0, there.state, &tight()).unwrap();
    assert!((back.logmag + there.logmag).abs() < 1e-9);
    let cross = back.state.u * init.v - back.state.v * init.u;
    assert!(cross.norm() < 1e-9);
}

#[test]
fn trajectories_satisfy_decoupled_equations() {
    let worst = common::decoupling_worst_residual(0x1a0e_2026, 10);
    assert!(worst <= 1e-6, "{worst:e}");
}
