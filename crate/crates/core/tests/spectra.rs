mod common;

use std::f64::consts::PI;

use fluxlat::circuit::{build, ElementParams};
use proptest::prelude::*;

#[test]
fn fluxonium_matches_finite_difference_grid() {
    let reference = common::fluxonium_reference(1.0, 4.0, 0.8, PI, 6);
    let s = build(&ElementParams::fluxonium(1.0, 4.0, 0.8).with_keep(6)).unwrap();
    for i in 1..6 {
        let err = (s.frequencies[i] - reference[i]).abs();
        assert!(err < 1e-6, "level {i}: {} vs {} ({err:.2e})", s.frequencies[i], reference[i]);
    }
}

#[test]
fn fluxonium_off_sweet_spot_matches_grid() {
    let reference = common::fluxonium_reference(0.9, 3.0, 1.0, 0.7 * PI, 5);
    let s = build(&ElementParams::fluxonium(0.9, 3.0, 1.0).with_phi_ext(0.7 * PI).with_keep(5)).unwrap();
    for i in 1..5 {
        assert!((s.frequencies[i] - reference[i]).abs() < 1e-6, "level {i}");
    }
}

#[test]
fn harmonic_limit_is_exact() {
    let (e_c, e_l) = (1.3, 0.7);
    let s = build(&ElementParams::fluxonium(e_c, 0.0, e_l).with_keep(8)).unwrap();
    let w = (8.0f64 * e_c * e_l).sqrt();
    for (k, f) in s.frequencies.iter().enumerate() {
        assert!((f - k as f64 * w).abs() < 1e-8, "level {k}: {f}");
    }
}

#[test]
fn transmon_matches_tridiagonal_reference() {
    for (e_c, e_j) in [(0.3, 12.0), (0.25, 2.0), (0.2, 30.0)] {
        let reference = common::transmon_reference(e_c, e_j, 30, 4);
        let s = build(&ElementParams::transmon(e_c, e_j).with_keep(4)).unwrap();
        for i in 1..4 {
            assert!((s.frequencies[i] - reference[i]).abs() < 1e-9, "E_J={e_j}, level {i}");
        }
    }
}

#[test]
fn deep_transmon_approaches_plasma_frequency() {
    let (e_c, e_j) = (0.2, 20.0);
    let s = build(&ElementParams::transmon(e_c, e_j).with_keep(3)).unwrap();
    let asymptotic = (8.0 * e_c * e_j).sqrt() - e_c;
    assert!((s.transition(0, 1) / asymptotic - 1.0).abs() < 0.01);
    let alpha = s.transition(1, 2) - s.transition(0, 1);
    assert!((alpha / -e_c - 1.0).abs() < 0.15, "anharmonicity {alpha}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn parity_forbids_same_parity_charge_elements(e_c in 0.6f64..1.4, e_j in 2.0f64..7.0, e_l in 0.4f64..1.4) {
        let s = build(&ElementParams::fluxonium(e_c, e_j, e_l).with_keep(6)).unwrap();
        let parity = s.parity.clone().expect("sweet spot has parity");
        for i in 0..6 {
            for j in 0..6 {
                if parity[i] == parity[j] {
                    prop_assert!(s.n_abs(i, j) < 1e-8, "n_{}{} = {}", i, j, s.n_abs(i, j));
                }
            }
        }
    }

    #[test]
    fn basis_doubling_is_converged(e_c in 0.6f64..1.4, e_j in 2.0f64..7.0, e_l in 0.4f64..1.4) {
        let p = ElementParams::fluxonium(e_c, e_j, e_l).with_keep(6);
        let a = build(&p).unwrap();
        let b = build(&p.clone().with_basis(2 * p.basis_dim)).unwrap();
        for i in 1..6 {
            let rel = (a.frequencies[i] - b.frequencies[i]).abs() / b.frequencies[i];
            prop_assert!(rel < 1e-7);
        }
    }

    #[test]
    fn charge_operator_is_hermitian(e_c in 0.1f64..0.5, e_j in 5.0f64..40.0) {
        let s = build(&ElementParams::transmon(e_c, e_j).with_keep(5)).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                prop_assert!((s.n(i, j) - s.n(j, i).conj()).norm() < 1e-12);
            }
        }
    }
}
