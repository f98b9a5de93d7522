//! Spectra and charge matrix elements of a fluxonium, a transmon tuned to a
//! target frequency, and a harmonic oscillator.

use fluxlat::circuit::{build, tune_e_j, ElementParams};

fn main() -> fluxlat::Result<()> {
    let q = build(&ElementParams::fluxonium(1.0, 5.0, 0.8).with_keep(6))?;
    println!("fluxonium (E_C=1.0, E_J=5.0, E_L=0.8 GHz) at half flux");
    for i in 1..6 {
        println!("  f0{i} = {:8.4} GHz", q.transition(0, i));
    }
    println!("  f12 = {:.4} GHz, f03 = {:.4} GHz", q.transition(1, 2), q.transition(0, 3));
    println!("  |n01| = {:.4}  |n12| = {:.4}  |n03| = {:.4}  |n02| = {:.1e}", q.n_abs(0, 1), q.n_abs(1, 2), q.n_abs(0, 3), q.n_abs(0, 2));

    let p = tune_e_j(&ElementParams::transmon(0.3, 10.0).with_keep(4), 4.7, 1.0, 200.0)?;
    let t = build(&p)?;
    println!("transmon tuned to f01 = 4.7 GHz: E_J = {:.3} GHz", p.e_j);
    println!("  f01 = {:.4}  anharmonicity = {:.4} GHz", t.transition(0, 1), t.transition(1, 2) - t.transition(0, 1));

    let o = build(&ElementParams::oscillator(0.5, 1.5).with_keep(4))?;
    println!("oscillator: f01 = {:.4}  f12 = {:.4} GHz", o.transition(0, 1), o.transition(1, 2));
    Ok(())
}
