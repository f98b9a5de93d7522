//! Dressed spectrum of a qubit-coupler-qubit chain and the bare-label
//! assignment of its low-lying states.

use fluxlat::circuit::{build, ElementParams};
use fluxlat::composite::{diagonalize, CompositeSpec, DEFAULT_MIN_OVERLAP};
use fluxlat::BareLabel;

fn main() -> fluxlat::Result<()> {
    let q1 = build(&ElementParams::fluxonium(1.0, 5.0, 0.8).with_keep(5))?;
    let q2 = build(&ElementParams::fluxonium(1.0, 5.0, 0.812).with_keep(5))?;
    let c = build(&ElementParams::transmon(0.3, 12.0).with_keep(3))?;
    let spec = CompositeSpec::new("qcq", vec![q1, c, q2]).couple(0, 1, 0.3).couple(1, 2, 0.3).couple(0, 2, 0.04);
    let mut d = diagonalize(&spec)?;
    println!("{} states, ground energy {:.4} GHz", d.dim(), d.ground_energy());

    let labels: Vec<BareLabel> = [[0, 0, 1], [1, 0, 0], [1, 0, 1], [0, 1, 0], [2, 0, 0], [1, 1, 1]]
        .iter()
        .map(|l| BareLabel::new(l.to_vec()))
        .collect();
    let freqs = d.labeled_frequencies(&labels, DEFAULT_MIN_OVERLAP)?;
    for (l, f) in labels.iter().zip(freqs) {
        println!("  |{}>  {:9.5} GHz", l.compact(), f);
    }
    Ok(())
}
