use fluxlat::circuit::{build, tune_e_j, ElementParams, ElementSpectrum};
use fluxlat::composite::diagonalize;
use fluxlat::metrics::{zz_cs_cqcq, CouplerType};
use fluxlat::perturbation::{
    cqcq_zz_diagrams, eval_diagram, sign_transform_check, zz_cs_analytic, AnalyticZzInputs, CqcqCouplings,
};
use proptest::prelude::*;
use std::sync::OnceLock;

struct Cell {
    ca: ElementSpectrum,
    qa: ElementSpectrum,
    cb: ElementSpectrum,
    qb: ElementSpectrum,
}

fn transmon(f01: f64) -> ElementSpectrum {
    build(&tune_e_j(&ElementParams::transmon(0.3, 10.0).with_keep(4), f01, 1.0, 200.0).unwrap()).unwrap()
}

fn cell(alpha: CouplerType, beta: CouplerType) -> Cell {
    let qa = build(&ElementParams::fluxonium(1.0, 5.0, 0.8).with_keep(6)).unwrap();
    let qb = build(&ElementParams::fluxonium(1.0, 5.0, 0.812).with_keep(6)).unwrap();
    let place = |t: CouplerType, offset: f64| match t {
        CouplerType::C0 => transmon(qa.transition(1, 2) + offset),
        CouplerType::C1 => transmon(qa.transition(0, 3) + offset),
    };
    Cell {
        ca: place(alpha, -0.5),
        cb: place(beta, 0.5),
        qa,
        qb,
    }
}

fn cached(alpha: CouplerType, beta: CouplerType) -> &'static Cell {
    static C1_C0: OnceLock<Cell> = OnceLock::new();
    static C0_C0: OnceLock<Cell> = OnceLock::new();
    match (alpha, beta) {
        (CouplerType::C1, CouplerType::C0) => C1_C0.get_or_init(|| cell(alpha, beta)),
        (CouplerType::C0, CouplerType::C0) => C0_C0.get_or_init(|| cell(alpha, beta)),
        _ => unreachable!(),
    }
}

fn inputs(c: &Cell, alpha: CouplerType, couplings: &CqcqCouplings, sign: f64) -> AnalyticZzInputs {
    AnalyticZzInputs::from_elements(alpha, sign, &c.ca, &c.qa, &c.cb, &c.qb, couplings, None).unwrap()
}

#[test]
fn closed_form_equals_diagram_sum() {
    for (alpha, beta) in [
        (CouplerType::C0, CouplerType::C0),
        (CouplerType::C1, CouplerType::C0),
        (CouplerType::C0, CouplerType::C1),
        (CouplerType::C1, CouplerType::C1),
    ] {
        let c = cell(alpha, beta);
        let spectra = [c.ca.clone(), c.qa.clone(), c.cb.clone(), c.qb.clone()];
        for g in [-0.2, -0.05, 0.1, 0.25] {
            let cp = CqcqCouplings::standard(alpha, beta, g);
            let closed = zz_cs_analytic(&inputs(&c, alpha, &cp, 1.0)).unwrap();
            let sum: f64 = cqcq_zz_diagrams(alpha, &cp)
                .iter()
                .map(|(m, p)| m * eval_diagram(p, &spectra).unwrap())
                .sum();
            assert!((closed - sum).abs() <= 1e-12 * closed.abs().max(1e-9), "{alpha:?}{beta:?} g={g}");
        }
    }
}

#[test]
fn closed_form_vanishes_at_its_root() {
    let c = cell(CouplerType::C0, CouplerType::C0);
    let cp = CqcqCouplings::standard(CouplerType::C0, CouplerType::C0, 0.0);
    let root = inputs(&c, CouplerType::C0, &cp, 1.0).root_g().unwrap();
    let at_root = CqcqCouplings { g: root, ..cp };
    assert!(zz_cs_analytic(&inputs(&c, CouplerType::C0, &at_root, 1.0)).unwrap().abs() < 1e-15);
}

#[test]
fn numeric_coupler_spectator_zz_is_fourth_order() {
    let (alpha, beta) = (CouplerType::C0, CouplerType::C0);
    let c = cell(alpha, beta);
    let zeta = |s: f64| {
        let cp = CqcqCouplings::standard(alpha, beta, 0.15);
        let spec = cp.spec(&c.ca, &c.qa, &c.cb, &c.qb).scaled(s);
        zz_cs_cqcq(&diagonalize(&spec).unwrap(), alpha).unwrap().value
    };
    let (s0, s1) = (0.05, 0.1);
    let slope = (zeta(s1).abs().ln() - zeta(s0).abs().ln()) / (s1 / s0).ln();
    assert!((slope - 4.0).abs() < 0.1, "slope {slope}");
}

#[test]
fn negating_one_element_keeps_the_spectrum() {
    let c = cell(CouplerType::C1, CouplerType::C0);
    let spec = CqcqCouplings::standard(CouplerType::C1, CouplerType::C0, 0.2).spec(&c.ca, &c.qa, &c.cb, &c.qb);
    for element in 0..4 {
        assert!(sign_transform_check(&spec, element).unwrap(), "element {element}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn antisymmetric_connection_mirrors_the_direct_coupling(g in -0.3f64..0.3) {
        let c = cached(CouplerType::C1, CouplerType::C0);
        let plus = CqcqCouplings::standard(CouplerType::C1, CouplerType::C0, -g);
        let minus = CqcqCouplings::standard(CouplerType::C1, CouplerType::C0, g);
        let a = zz_cs_analytic(&inputs(c, CouplerType::C1, &plus, 1.0)).unwrap();
        let b = zz_cs_analytic(&inputs(c, CouplerType::C1, &minus, -1.0)).unwrap();
        prop_assert!((a - b).abs() <= 1e-14 * a.abs().max(1e-12));
    }

    #[test]
    fn closed_form_is_quadratic_in_distance_from_root(dg in 0.01f64..0.3) {
        let c = cached(CouplerType::C0, CouplerType::C0);
        let cp = CqcqCouplings::standard(CouplerType::C0, CouplerType::C0, 0.0);
        let root = inputs(c, CouplerType::C0, &cp, 1.0).root_g().unwrap();
        let z = |g: f64| zz_cs_analytic(&inputs(c, CouplerType::C0, &CqcqCouplings { g, ..cp }, 1.0)).unwrap();
        let (lo, hi) = (z(root - dg), z(root + dg));
        prop_assert!((lo - hi).abs() <= 1e-9 * lo.abs());
        prop_assert!((z(root + 2.0 * dg) / hi - 4.0).abs() < 1e-9);
    }
}
