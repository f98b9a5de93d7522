//! Pulse calibration over amplitude and detuning, and the spectator-error sweep.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::dynamics::{build_zz_simple, gate_error, propagate, CompSubspace, GateReport, PulseSpec, ReducedModel, Tolerance};
use crate::error::{Error, Result};
use crate::optimize::NelderMead;
use crate::sweep::{Axis, SweepResult};

/// Initial simplex offset in detuning, GHz (1 MHz).
pub const DETUNING_STEP_GHZ: f64 = 1e-3;
/// Initial simplex offset in amplitude, as a fraction of `A0`.
pub const AMPLITUDE_STEP: f64 = 0.1;

#[derive(Clone, Debug)]
pub struct CalibrationOptions {
    pub max_evals: usize,
    /// Simplex extent (GHz) in `(A, Δ)` that counts as converged.
    pub xtol: [f64; 2],
    pub tol: Tolerance,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        Self {
            max_evals: 500,
            xtol: [1e-6, 1e-6],
            tol: Tolerance::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OptResult {
    pub pulse: PulseSpec,
    pub report: GateReport,
    /// Error at the initial guess.
    pub initial: GateReport,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `objective(A, Δ)` with Nelder–Mead from `(a0, delta0)`.
/// The result is never worse than the initial guess.
pub fn minimize_pulse<F>(objective: F, a0: f64, delta0: f64, opts: &CalibrationOptions) -> Result<(f64, f64, usize, bool)>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let nm = NelderMead::new(opts.xtol.to_vec(), opts.max_evals);
    let m = nm.minimize(
        |x| objective(x[0].abs(), x[1]),
        &[a0, delta0],
        &[AMPLITUDE_STEP * a0, DETUNING_STEP_GHZ],
    )?;
    Ok((m.x[0].abs(), m.x[1], m.evaluations, m.converged))
}

/// Calibrates `(A, Δ)` of a pulse of duration `tau` on `model`, minimizing the
/// total error against `ideal` on `comp`.
pub fn calibrate(
    model: &ReducedModel,
    tau: f64,
    a0: f64,
    delta0: f64,
    ideal: &DMatrix<C64>,
    comp: &CompSubspace,
    opts: &CalibrationOptions,
) -> Result<OptResult> {
    if !(10.0..=500.0).contains(&tau) {
        return Err(Error::InvalidParams(format!(
            "pulse duration must lie in [10, 500] ns, got {tau}"
        )));
    }
    if !(a0 > 0.0) {
        return Err(Error::InvalidParams(format!("initial amplitude must be positive, got {a0}")));
    }
    let report_at = |a: f64, delta: f64| -> Result<GateReport> {
        let pulse = PulseSpec::new(a, tau, delta);
        let u = propagate(model, &pulse, opts.tol)?;
        let mut r = gate_error(&u, ideal, comp)?;
        r.pulse = Some(pulse);
        Ok(r)
    };
    let initial = report_at(a0, delta0)?;
    let (a, delta, evaluations, converged) =
        minimize_pulse(|a, d| Ok(report_at(a, d)?.eps_total), a0, delta0, opts)?;
    let mut report = report_at(a, delta)?;
    if report.eps_total > initial.eps_total {
        report = initial.clone();
    }
    Ok(OptResult {
        pulse: report.pulse.expect("pulse recorded"),
        report,
        initial,
        evaluations,
        converged,
    })
}

/// Amplitude of a resonant `2π` coupler rotation (the CZ condition) for duration `tau`.
pub fn cz_amplitude(tau: f64) -> f64 {
    PulseSpec::rabi_amplitude(tau, tau / 4.0, 2.0 * PI)
}

/// Calibrated CZ on the coupler-spectator model.
pub fn calibrate_zz_simple(gap: f64, zeta: f64, tau: f64, opts: &CalibrationOptions) -> Result<OptResult> {
    let model = build_zz_simple(gap, zeta)?;
    calibrate(&model, tau, cz_amplitude(tau), 0.0, &model.ideal, &model.comp, opts)
}

/// Grid of calibrated `(ε_total, ε_ph, ε_leak)` over spectator ZZ rates and pulse durations.
pub fn spectator_sweep(gap: f64, zetas: &[f64], taus: &[f64], opts: &CalibrationOptions) -> Result<SweepResult> {
    if zetas.is_empty() || taus.is_empty() || !(gap > 0.0) {
        return Err(Error::InvalidParams(
            "spectator sweep needs gap > 0 and nonempty zeta and tau lists".into(),
        ));
    }
    let mut result = SweepResult::new(vec![
        Axis::new("zeta_cs", "ghz", zetas.to_vec()),
        Axis::new("tau", "ns", taus.to_vec()),
    ]);
    result.fill(
        &[
            ("eps_total", ""),
            ("eps_ph", ""),
            ("eps_leak", ""),
            ("amplitude", "ghz"),
            ("detuning", "ghz"),
            ("evaluations", ""),
        ],
        |i| {
            let r = calibrate_zz_simple(gap, zetas[i[0]], taus[i[1]], opts)?;
            Ok(vec![
                r.report.eps_total,
                r.report.eps_ph,
                r.report.eps_leak,
                r.pulse.amplitude,
                r.pulse.detuning,
                r.evaluations as f64,
            ])
        },
    );
    result
        .metadata
        .extra
        .insert("gap_ghz".into(), crate::sweep::fmt_f64(gap));
    Ok(result)
}
