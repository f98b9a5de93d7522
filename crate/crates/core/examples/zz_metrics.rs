//! Coupler-spectator ZZ of a C-Q-C-Q cell and qubit-qubit hybridization of a
//! fluxonium-transmon-fluxonium link.

use fluxlat::circuit::{build, tune_e_j, ElementParams, ElementSpectrum};
use fluxlat::composite::{diagonalize, CompositeSpec};
use fluxlat::metrics::{hybridization, zz_cs_cqcq, zz_qq, CouplerType};
use fluxlat::perturbation::CqcqCouplings;
use fluxlat::BareLabel;

fn transmon(f01: f64) -> fluxlat::Result<ElementSpectrum> {
    build(&tune_e_j(&ElementParams::transmon(0.3, 10.0).with_keep(4), f01, 1.0, 200.0)?)
}

fn main() -> fluxlat::Result<()> {
    let qa = build(&ElementParams::fluxonium(1.0, 5.0, 0.8).with_keep(6))?;
    let qb = build(&ElementParams::fluxonium(1.0, 5.0, 0.812).with_keep(6))?;
    let (c0u, c0l) = (transmon(qa.transition(1, 2) + 0.5)?, transmon(qa.transition(1, 2) - 0.5)?);

    println!("C0_U|C0_L coupler-spectator ZZ");
    for g in [-0.2, -0.1, 0.0, 0.1, 0.2] {
        let c = CqcqCouplings::standard(CouplerType::C0, CouplerType::C0, g);
        let d = diagonalize(&c.spec(&c0u, &qa, &c0l, &qb))?;
        let z = zz_cs_cqcq(&d, CouplerType::C0)?;
        println!("  g = {g:5.2} GHz   zeta_CS = {:10.3} kHz", z.value * 1e6);
    }

    let q1 = build(&ElementParams::fluxonium(1.0, 5.0, 0.8).with_keep(5))?;
    let q2 = build(&ElementParams::fluxonium(1.0, 5.2, 0.8).with_keep(5))?;
    let c = transmon(3.7)?;
    let spec = CompositeSpec::new("ftf", vec![q1, c, q2]).couple(0, 1, 0.3).couple(1, 2, 0.3);
    println!("F-T-F link");
    for g_ff in [0.0, 0.02, 0.05] {
        let d = diagonalize(&spec.clone().couple(0, 2, g_ff))?;
        let h = hybridization(&d, &BareLabel::new(vec![1, 0, 0]), &BareLabel::new(vec![0, 0, 1]))?;
        let z = zz_qq(&d, 0, 2)?;
        println!("  g_FF = {g_ff:.2} GHz   D = {:.3e}   zeta_QQ = {:8.2} kHz", h.value, z.value * 1e6);
    }
    Ok(())
}
