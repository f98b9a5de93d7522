//! Error of a single-qubit rotation caused by a hybridized neighbour picking up
//! part of the drive.

use std::f64::consts::PI;

use fluxlat::dynamics::{parasitic_gate_error, Qubit};
use fluxlat::metrics::hybridization_error;

fn main() -> fluxlat::Result<()> {
    println!("{:>8} {:>12} {:>12} {:>8}", "D", "simulated", "estimate", "ratio");
    for d in [1e-4, 3e-4, 1e-3, 3e-3, 1e-2] {
        let r = parasitic_gate_error(d, Qubit::A, PI / 2.0)?;
        let est = hybridization_error(d);
        println!("{d:8.0e} {:12.4e} {:12.4e} {:8.4}", r.eps_total, est, r.eps_total / est);
    }
    Ok(())
}
