use fluxlat::circuit::{build, ElementParams, ElementSpectrum};
use fluxlat::composite::{compose, diagonalize, CompositeSpec, DEFAULT_MIN_OVERLAP};
use fluxlat::BareLabel;
use proptest::prelude::*;

fn pair() -> (ElementSpectrum, ElementSpectrum) {
    let q = build(&ElementParams::fluxonium(1.0, 5.0, 0.8).with_keep(5)).unwrap();
    let t = build(&ElementParams::transmon(0.3, 12.0).with_keep(4)).unwrap();
    (q, t)
}

/// Second-order shift of product state `(i, j)` under `g n_a n_b`.
fn second_order(a: &ElementSpectrum, b: &ElementSpectrum, g: f64, i: usize, j: usize) -> f64 {
    let e = |k: usize, l: usize| a.frequencies[k] + b.frequencies[l];
    let mut shift = 0.0;
    for k in 0..a.levels() {
        for l in 0..b.levels() {
            if (k, l) == (i, j) {
                continue;
            }
            let v = g * a.n_abs(i, k) * b.n_abs(j, l);
            shift += v * v / (e(i, j) - e(k, l));
        }
    }
    shift
}

#[test]
fn weak_coupling_shifts_follow_second_order_perturbation() {
    let (q, t) = pair();
    let g = 2e-3;
    let mut d = diagonalize(&CompositeSpec::new("qt", vec![q.clone(), t.clone()]).couple(0, 1, g)).unwrap();
    let states = [(1, 0), (0, 1), (1, 1), (2, 0), (3, 1)];
    let labels: Vec<BareLabel> = states.iter().map(|&(i, j)| BareLabel::new(vec![i, j])).collect();
    let dressed = d.labeled_frequencies(&labels, DEFAULT_MIN_OVERLAP).unwrap();
    let ground = second_order(&q, &t, g, 0, 0);
    for (&(i, j), f) in states.iter().zip(dressed) {
        let bare = q.frequencies[i] + t.frequencies[j];
        let expected = second_order(&q, &t, g, i, j) - ground;
        let shift = f - bare;
        assert!(
            (shift - expected).abs() < 1e-3 * expected.abs() + 1e-10,
            "|{i}{j}>: shift {shift:.6e}, second order {expected:.6e}"
        );
    }
}

#[test]
fn hamiltonian_is_hermitian_with_expected_blocks() {
    let (q, t) = pair();
    let h = compose(&CompositeSpec::new("qt", vec![q.clone(), t.clone()]).couple(0, 1, 0.1)).unwrap();
    assert_eq!(h.nrows(), q.levels() * t.levels());
    assert!((&h - h.adjoint()).iter().all(|z| z.norm() < 1e-14));
    let idx = |i: usize, j: usize| i * t.levels() + j;
    let expected = 0.1 * q.n(1, 2) * t.n(0, 1);
    assert!((h[(idx(1, 0), idx(2, 1))] - expected).norm() < 1e-14);
}

fn elements() -> Vec<ElementSpectrum> {
    vec![
        build(&ElementParams::fluxonium(1.0, 5.0, 0.8).with_keep(3)).unwrap(),
        build(&ElementParams::transmon(0.3, 10.0).with_keep(3)).unwrap(),
        build(&ElementParams::oscillator(0.5, 1.5).with_keep(3)).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn element_order_does_not_change_the_spectrum(
        g01 in -0.2f64..0.2,
        g12 in -0.2f64..0.2,
        g02 in -0.2f64..0.2,
        perm in Just([0usize, 1, 2]).prop_shuffle(),
    ) {
        let els = elements();
        let spec = CompositeSpec::new("a", els.clone()).couple(0, 1, g01).couple(1, 2, g12).couple(0, 2, g02);
        // Position of original element `k` in the permuted chain is `pos[k]`.
        let mut pos = [0; 3];
        for (slot, &k) in perm.iter().enumerate() {
            pos[k] = slot;
        }
        let permuted = CompositeSpec::new("b", perm.iter().map(|&k| els[k].clone()).collect())
            .couple(pos[0], pos[1], g01)
            .couple(pos[1], pos[2], g12)
            .couple(pos[0], pos[2], g02);
        let a = diagonalize(&spec).unwrap();
        let b = diagonalize(&permuted).unwrap();
        for (x, y) in a.frequencies.iter().zip(&b.frequencies) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn uncoupled_levels_are_sums_of_bare_levels(e_j in 3.0f64..8.0, e_l in 0.5f64..1.2) {
        let mut els = elements();
        els[0] = build(&ElementParams::fluxonium(1.0, e_j, e_l).with_keep(3)).unwrap();
        let d = diagonalize(&CompositeSpec::new("free", els.clone()).couple(0, 1, 0.1).scaled(0.0)).unwrap();
        let mut sums = Vec::new();
        for a in &els[0].frequencies {
            for b in &els[1].frequencies {
                for c in &els[2].frequencies {
                    sums.push(a + b + c);
                }
            }
        }
        sums.sort_by(f64::total_cmp);
        for (x, y) in d.frequencies.iter().zip(&sums) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
