use std::f64::consts::PI;

use fluxlat::dynamics::{
    build_leakage_model, build_parasitic_drive, build_zz_simple, envelope, gate_error, propagate, propagate_with,
    CompSubspace, PulseSpec, Qubit, Tolerance,
};
use fluxlat::BareLabel;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn unitarity_defect(u: &DMatrix<C64>) -> f64 {
    (u.adjoint() * u - DMatrix::<C64>::identity(u.nrows(), u.ncols()))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

fn two_level_drive() -> (DMatrix<C64>, DMatrix<C64>) {
    let mut drive = DMatrix::<C64>::zeros(2, 2);
    drive[(0, 1)] = C64::new(1.0, 0.0);
    (DMatrix::zeros(2, 2), drive)
}

#[test]
fn resonant_pi_pulse_transfers_population() {
    let (h0, drive) = two_level_drive();
    for tau in [20.0, 66.0, 150.0] {
        let amp = PulseSpec::rabi_amplitude(tau, tau / 4.0, PI);
        let u = propagate_with(&h0, &drive, &PulseSpec::new(amp, tau, 0.0), Tolerance::default()).unwrap();
        assert!((u[(1, 0)].norm_sqr() - 1.0).abs() < 1e-4, "tau {tau}");
    }
}

#[test]
fn rotation_angle_follows_pulse_area() {
    // Independent Simpson quadrature of the envelope sets the expected angle.
    let (h0, drive) = two_level_drive();
    let pulse = PulseSpec::new(0.01, 80.0, 0.0).with_width(15.0);
    let n = 20_000;
    let h = pulse.duration / n as f64;
    let area: f64 = (0..=n)
        .map(|i| {
            let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            w * envelope(&pulse, i as f64 * h)
        })
        .sum::<f64>()
        * h
        / 3.0;
    let theta = 2.0 * PI * area;
    let u = propagate_with(&h0, &drive, &pulse, Tolerance::default()).unwrap();
    assert!((u[(1, 0)].norm_sqr() - (theta / 2.0).sin().powi(2)).abs() < 1e-6);
}

#[test]
fn zero_spectator_zz_factorizes() {
    let m = build_zz_simple(0.1, 0.0).unwrap();
    let pulse = PulseSpec::new(fluxlat::pulseopt::cz_amplitude(66.0), 66.0, -0.004);
    let u = propagate(&m, &pulse, Tolerance::default()).unwrap();
    for i in 0..16 {
        for j in 0..16 {
            let (si, sj) = (i & 1, j & 1);
            if si != sj {
                assert!(u[(i, j)].norm() < 1e-9);
            } else if si == 1 {
                assert!((u[(i, j)] - u[(i - 1, j - 1)]).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn ideal_gate_has_no_error() {
    let m = build_parasitic_drive(0.0, Qubit::A, PI / 2.0).unwrap();
    let r = gate_error(&m.ideal, &m.ideal, &m.comp).unwrap();
    assert!(r.eps_total.abs() < 1e-14 && r.eps_leak.abs() < 1e-14 && r.eps_ph.abs() < 1e-14);
}

#[test]
fn full_leakage_is_reported() {
    // Swap the computational pair {0, 1} with the non-computational pair {2, 3}.
    let mut u = DMatrix::<C64>::zeros(4, 4);
    for (a, b) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        u[(a, b)] = C64::new(1.0, 0.0);
    }
    let comp = CompSubspace {
        indices: vec![0, 1],
        bits: vec![vec![0], vec![1]],
    };
    let r = gate_error(&u, &DMatrix::identity(2, 2), &comp).unwrap();
    assert!((r.eps_leak - 1.0).abs() < 1e-14);
    assert!((r.eps_total - 1.0).abs() < 1e-14);
}

#[test]
fn leakage_model_without_leakage_path_is_block_diagonal() {
    let m = build_leakage_model(0.1, 0.02, 0.0, &BareLabel::new(vec![0, 0, 0])).unwrap();
    let u = propagate(&m, &PulseSpec::new(0.02, 66.0, 0.0), Tolerance::default()).unwrap();
    let free = C64::from_polar(1.0, -2.0 * PI * 0.02 * 66.0);
    assert!((u[(8, 8)] - free).norm() < 1e-8);
    for i in 0..8 {
        assert!(u[(i, 8)].norm() < 1e-15 && u[(8, i)].norm() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn propagators_are_unitary(amp in 0.0f64..0.06, tau in 10.0f64..120.0, detuning in -0.02f64..0.02, k in 0.0f64..0.3, delta in -0.1f64..0.1) {
        let m = build_leakage_model(0.1, delta, k, &BareLabel::new(vec![1, 1, 0])).unwrap();
        let u = propagate(&m, &PulseSpec::new(amp, tau, detuning), Tolerance::default()).unwrap();
        prop_assert!(unitarity_defect(&u) < 1e-8);
    }

    #[test]
    fn gate_error_ignores_global_phase(amp in 0.01f64..0.05, detuning in -0.01f64..0.01, phase in 0.0f64..(2.0 * PI)) {
        let m = build_zz_simple(0.1, 2e-4).unwrap();
        let u = propagate(&m, &PulseSpec::new(amp, 40.0, detuning), Tolerance::default()).unwrap();
        let a = gate_error(&u, &m.ideal, &m.comp).unwrap();
        let b = gate_error(&(u * C64::from_polar(1.0, phase)), &m.ideal, &m.comp).unwrap();
        prop_assert!((a.eps_total - b.eps_total).abs() < 1e-12);
        prop_assert!((a.eps_ph - b.eps_ph).abs() < 1e-12);
        prop_assert!((a.eps_leak - b.eps_leak).abs() < 1e-12);
    }
}
