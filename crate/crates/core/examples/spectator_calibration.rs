//! Calibrating a coupler-mediated CZ pulse in the presence of a static
//! coupler-spectator ZZ.

use fluxlat::pulseopt::{calibrate_zz_simple, CalibrationOptions};

fn main() -> fluxlat::Result<()> {
    let opts = CalibrationOptions::default();
    println!("{:>10} {:>10} {:>10} {:>10} {:>9} {:>10}", "zeta (MHz)", "eps", "eps_ph", "eps_leak", "A (MHz)", "Delta (MHz)");
    for zeta in [0.0, 1e-4, 2e-4, 4e-4] {
        let r = calibrate_zz_simple(0.1, zeta, 66.0, &opts)?;
        println!(
            "{:10.2} {:10.2e} {:10.2e} {:10.2e} {:9.3} {:10.3}",
            zeta * 1e3,
            r.report.eps_total,
            r.report.eps_ph,
            r.report.eps_leak,
            r.pulse.amplitude * 1e3,
            r.pulse.detuning * 1e3
        );
    }
    Ok(())
}
