//! Closed-form coupler-spectator ZZ against the diagram sum and the numerical
//! value for a C1_L|C0_U cell.

use fluxlat::circuit::{build, tune_e_j, ElementParams, ElementSpectrum};
use fluxlat::composite::diagonalize;
use fluxlat::metrics::{zz_cs_cqcq, CouplerType};
use fluxlat::perturbation::{cqcq_zz_diagrams, eval_diagram, zz_cs_analytic, AnalyticZzInputs, CqcqCouplings};

fn transmon(f01: f64) -> fluxlat::Result<ElementSpectrum> {
    build(&tune_e_j(&ElementParams::transmon(0.3, 10.0).with_keep(4), f01, 1.0, 200.0)?)
}

fn main() -> fluxlat::Result<()> {
    let qa = build(&ElementParams::fluxonium(1.0, 5.0, 0.8).with_keep(6))?;
    let qb = build(&ElementParams::fluxonium(1.0, 5.0, 0.812).with_keep(6))?;
    let ca = transmon(qa.transition(0, 3) - 0.5)?;
    let cb = transmon(qa.transition(1, 2) + 0.5)?;
    let (alpha, beta) = (CouplerType::C1, CouplerType::C0);
    let spectra = [ca.clone(), qa.clone(), cb.clone(), qb.clone()];

    println!("{:>7} {:>12} {:>12} {:>12}  (kHz)", "g", "numeric", "closed form", "diagrams");
    for i in 0..=12 {
        let g = -0.3 + 0.05 * i as f64;
        let c = CqcqCouplings::standard(alpha, beta, g);
        let numeric = zz_cs_cqcq(&diagonalize(&c.spec(&ca, &qa, &cb, &qb))?, alpha)?.value;
        let inp = AnalyticZzInputs::from_elements(alpha, 1.0, &ca, &qa, &cb, &qb, &c, None)?;
        let closed = zz_cs_analytic(&inp)?;
        let mut diagrams = 0.0;
        for (m, path) in cqcq_zz_diagrams(alpha, &c) {
            diagrams += m * eval_diagram(&path, &spectra)?;
        }
        println!("{g:7.3} {:12.2} {:12.2} {:12.2}", numeric * 1e6, closed * 1e6, diagrams * 1e6);
    }
    let inp = AnalyticZzInputs::from_elements(alpha, 1.0, &ca, &qa, &cb, &qb, &CqcqCouplings::standard(alpha, beta, 0.0), None)?;
    println!("closed form vanishes at g = {:.4} GHz", inp.root_g()?);
    Ok(())
}
