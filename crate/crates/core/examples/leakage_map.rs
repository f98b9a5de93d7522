//! Leakage out of the computational subspace through a coupler-coupler
//! exchange, as a function of its strength and of the coupler detuning.

use fluxlat::leakage::{bucket, calibrated_cz_pulse, default_sources, leakage_rate};
use fluxlat::pulseopt::CalibrationOptions;

fn main() -> fluxlat::Result<()> {
    let cal = calibrated_cz_pulse(0.1, 66.0, &CalibrationOptions::default())?;
    println!("calibrated pulse: A = {:.4} MHz, error {:.2e}", cal.pulse.amplitude * 1e3, cal.report.eps_total);
    for source in default_sources() {
        println!("source |{}>", source.compact());
        for k in [0.001, 0.01, 0.1] {
            print!("  k = {k:5.3}:");
            for delta in [-0.1, -0.05, 0.0, 0.05, 0.1] {
                let ch = leakage_rate(0.1, delta, k, &source, &cal.pulse)?;
                print!("  {:9.2e} [{}]", ch.rate, bucket(ch.rate));
            }
            println!();
        }
    }
    Ok(())
}
