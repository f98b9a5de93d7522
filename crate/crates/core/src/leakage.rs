//! Drive-induced leakage through a single `|s> <-> |l>` channel, measured
//! against the same gate without the channel.

use serde::{Deserialize, Serialize};

use crate::dynamics::{build_leakage_model, gate_error, propagate, PulseSpec, Tolerance};
use crate::error::{Error, Result};
use crate::label::BareLabel;
use crate::pulseopt::{calibrate, cz_amplitude, CalibrationOptions, OptResult};
use crate::sweep::{fmt_f64, Axis, SweepResult};

/// Rates below this are negligible.
pub const NEGLIGIBLE_RATE: f64 = 1e-5;
/// Negative residues smaller than this in magnitude are clipped to zero.
pub const CLIP: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeakageChannel {
    pub source: BareLabel,
    pub k: f64,
    /// `f_leak - f_target`, GHz.
    pub delta: f64,
    pub rate: f64,
    /// Set when the subtraction left a negative value beyond the clip threshold.
    pub negative: bool,
}

/// The three source states used by default: two in the target manifold and one outside.
pub fn default_sources() -> Vec<BareLabel> {
    ["110", "111", "000"]
        .iter()
        .map(|s| s.parse().expect("static label"))
        .collect()
}

fn leak_population(gap: f64, delta: f64, k: f64, source: &BareLabel, pulse: &PulseSpec, tol: Tolerance) -> Result<f64> {
    let model = build_leakage_model(gap, delta, k, source)?;
    let u = propagate(&model, pulse, tol)?;
    Ok(gate_error(&u, &model.ideal, &model.comp)?.eps_leak)
}

/// `ε_leak(k) - ε_leak(0)` under an identical pulse.
pub fn leakage_rate(gap: f64, delta: f64, k: f64, source: &BareLabel, pulse: &PulseSpec) -> Result<LeakageChannel> {
    leakage_rate_with(gap, delta, k, source, pulse, Tolerance::default())
}

pub fn leakage_rate_with(gap: f64, delta: f64, k: f64, source: &BareLabel, pulse: &PulseSpec, tol: Tolerance) -> Result<LeakageChannel> {
    if !(k >= 0.0) {
        return Err(Error::InvalidParams(format!("k must be >= 0, got {k}")));
    }
    let with = leak_population(gap, delta, k, source, pulse, tol)?;
    let without = leak_population(gap, delta, 0.0, source, pulse, tol)?;
    let raw = with - without;
    let (rate, negative) = if raw < 0.0 && raw > -CLIP {
        (0.0, false)
    } else {
        (raw, raw < 0.0)
    };
    Ok(LeakageChannel {
        source: source.clone(),
        k,
        delta,
        rate,
        negative,
    })
}

/// CZ pulse of duration `tau` calibrated on the channel-free model.
pub fn calibrated_cz_pulse(gap: f64, tau: f64, opts: &CalibrationOptions) -> Result<OptResult> {
    let model = build_leakage_model(gap, 0.0, 0.0, &BareLabel::from([0, 0, 0]))?;
    calibrate(&model, tau, cz_amplitude(tau), 0.0, &model.ideal, &model.comp, opts)
}

/// Order-of-magnitude region of a rate: 0 below `1e-5`, 1 below `1e-4`,
/// 2 below `1e-3`, 3 otherwise.
pub fn bucket(rate: f64) -> u8 {
    match rate {
        r if r < NEGLIGIBLE_RATE => 0,
        r if r < 1e-4 => 1,
        r if r < 1e-3 => 2,
        _ => 3,
    }
}

/// Leakage rates over `sources × k × δ` with a frozen pulse.
pub fn leakage_map(gap: f64, ks: &[f64], deltas: &[f64], sources: &[BareLabel], pulse: &PulseSpec) -> Result<SweepResult> {
    if ks.is_empty() || deltas.is_empty() || sources.is_empty() {
        return Err(Error::InvalidParams("leakage map needs nonempty k, delta and source lists".into()));
    }
    if ks.iter().any(|&k| !(k >= 0.0)) {
        return Err(Error::InvalidParams("leakage map k values must be >= 0".into()));
    }
    let mut result = SweepResult::new(vec![
        Axis::categorical("source", sources.iter().map(|s| s.compact()).collect()),
        Axis::new("k", "", ks.to_vec()),
        Axis::new("delta", "ghz", deltas.to_vec()),
    ]);
    result.fill(&[("rate", ""), ("bucket", ""), ("negative", "")], |i| {
        let c = leakage_rate(gap, deltas[i[2]], ks[i[1]], &sources[i[0]], pulse)?;
        Ok(vec![c.rate, bucket(c.rate.max(0.0)) as f64, f64::from(u8::from(c.negative))])
    });
    let extra = &mut result.metadata.extra;
    extra.insert("gap_ghz".into(), fmt_f64(gap));
    extra.insert("pulse_amplitude_ghz".into(), fmt_f64(pulse.amplitude));
    extra.insert("pulse_duration_ns".into(), fmt_f64(pulse.duration));
    extra.insert("pulse_detuning_ghz".into(), fmt_f64(pulse.detuning));
    extra.insert("pulse_width_ns".into(), fmt_f64(pulse.width));
    Ok(result)
}

/// `(f^{C1_U}_01 - f^Q_03) + (f^{C0_L}_01 - f^Q_12)`; zero at the CZZ leakage resonance.
pub fn czz_resonance_margin(f_c1u_01: f64, f_q_03: f64, f_c0l_01: f64, f_q_12: f64) -> Result<f64> {
    if [f_c1u_01, f_q_03, f_c0l_01, f_q_12].iter().any(|f| !(*f > 0.0)) {
        return Err(Error::InvalidParams("resonance margin needs positive frequencies".into()));
    }
    Ok((f_c1u_01 - f_q_03) + (f_c0l_01 - f_q_12))
}
