//! Driven reduced models in the rotating frame of the target transition.
//!
//! Every model has the form
//! `H(t) = H_0 + ε(t)/2 · (D e^{-2πiΔt} + D† e^{+2πiΔt})` in GHz, with
//! `ε(t)` a truncated Gaussian envelope.

mod gate;
mod propagate;

pub use gate::{gate_error, CompSubspace, GateReport};
pub use propagate::{propagate, propagate_with, Tolerance};

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::BareLabel;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseSpec {
    /// Peak amplitude `A`, GHz.
    pub amplitude: f64,
    /// Duration `τ`, ns.
    pub duration: f64,
    /// Drive detuning `Δ`, GHz.
    pub detuning: f64,
    /// Gaussian width `σ`, ns.
    pub width: f64,
}

impl PulseSpec {
    /// Pulse with the default width `τ/4`.
    pub fn new(amplitude: f64, duration: f64, detuning: f64) -> Self {
        Self {
            amplitude,
            duration,
            detuning,
            width: duration / 4.0,
        }
    }

    pub fn with_width(mut self, width: f64) -> Self {
        self.width = width;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.duration > 0.0
            && self.width > 0.0
            && self.amplitude >= 0.0
            && [self.amplitude, self.duration, self.detuning, self.width]
                .iter()
                .all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("invalid pulse {self:?}")))
        }
    }

    /// `∫ ε dt` over the pulse, GHz·ns.
    pub fn area(&self) -> f64 {
        self.amplitude * unit_area(self.duration, self.width)
    }

    /// Amplitude giving a resonant rotation angle `θ = 2π ∫ε dt` for `D = σ⁻`.
    pub fn rabi_amplitude(duration: f64, width: f64, angle: f64) -> f64 {
        angle / (2.0 * PI) / unit_area(duration, width)
    }
}

/// Truncated Gaussian `ε(t)`: zero at both ends, `A` at `τ/2`, zero outside `[0, τ]`.
pub fn envelope(p: &PulseSpec, t: f64) -> f64 {
    if !(0.0..=p.duration).contains(&t) {
        return 0.0;
    }
    let s2 = 2.0 * p.width * p.width;
    let floor = (-(p.duration * p.duration) / (4.0 * s2)).exp();
    let mid = t - 0.5 * p.duration;
    p.amplitude * ((-(mid * mid) / s2).exp() - floor) / (1.0 - floor)
}

/// `∫ ε dt` for unit amplitude, by composite Simpson quadrature.
fn unit_area(duration: f64, width: f64) -> f64 {
    let p = PulseSpec {
        amplitude: 1.0,
        duration,
        detuning: 0.0,
        width,
    };
    let n = 4000;
    let h = duration / n as f64;
    let inner: f64 = (1..n)
        .map(|i| envelope(&p, i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    inner * h / 3.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    ZzSimple,
    Leakage,
    ParasiticDrive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Qubit {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModelParams {
    ZzSimple { gap: f64, zeta: f64 },
    Leakage { gap: f64, delta: f64, k: f64, source: BareLabel },
    ParasiticDrive { d: f64, which: Qubit, theta: f64 },
}

#[derive(Clone, Debug)]
pub struct ReducedModel {
    pub kind: ModelKind,
    pub params: ModelParams,
    /// Static Hamiltonian, GHz.
    pub static_h: DMatrix<C64>,
    /// Drive operator multiplying `e^{-2πiΔt}`; its adjoint multiplies `e^{+2πiΔt}`.
    pub drive: DMatrix<C64>,
    pub comp: CompSubspace,
    /// Target gate on the computational subspace.
    pub ideal: DMatrix<C64>,
}

impl ReducedModel {
    pub fn dim(&self) -> usize {
        self.static_h.nrows()
    }

    pub fn drive_adjoint(&self) -> DMatrix<C64> {
        self.drive.adjoint()
    }

    /// `H(t)` in GHz.
    pub fn hamiltonian(&self, pulse: &PulseSpec, t: f64) -> DMatrix<C64> {
        let eps = envelope(pulse, t);
        let phase = C64::from_polar(1.0, -2.0 * PI * pulse.detuning * t);
        &self.static_h + (&self.drive * phase + self.drive.adjoint() * phase.conj()) * C64::new(0.5 * eps, 0.0)
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn bit(index: usize, shift: usize) -> usize {
    (index >> shift) & 1
}

fn cz_ideal(comp: &CompSubspace) -> DMatrix<C64> {
    let d = comp.indices.len();
    DMatrix::from_fn(d, d, |i, j| {
        if i != j {
            c(0.0)
        } else if comp.bits[i][0] == 1 && comp.bits[i][1] == 1 {
            c(-1.0)
        } else {
            c(1.0)
        }
    })
}

/// Coupler-driven CZ on `A ⊗ B ⊗ C ⊗ S` (index `8a + 4b + 2c + s`):
/// the coupler `0 -> 1` transition is shifted by `gap` for each qubit in `|0>`
/// and by `zeta` when the spectator is in `|1>`.
pub fn build_zz_simple(gap: f64, zeta: f64) -> Result<ReducedModel> {
    if !(gap > 0.0) || !zeta.is_finite() {
        return Err(Error::InvalidParams(format!(
            "zz_simple requires gap > 0 and finite zeta, got gap={gap}, zeta={zeta}"
        )));
    }
    let dim = 16;
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    let mut drive = DMatrix::<C64>::zeros(dim, dim);
    for i in 0..dim {
        let (a, b, cc, s) = (bit(i, 3), bit(i, 2), bit(i, 1), bit(i, 0));
        if cc == 1 {
            let ground_qubits = (1 - a) + (1 - b);
            h[(i, i)] = c(gap * ground_qubits as f64 + zeta * s as f64);
            // σ⁻_C = |0><1| on the coupler.
            drive[(i - 2, i)] = c(1.0);
        }
    }
    let indices: Vec<usize> = (0..dim).filter(|&i| bit(i, 1) == 0).collect();
    let bits = indices
        .iter()
        .map(|&i| vec![bit(i, 3) as u8, bit(i, 2) as u8, bit(i, 0) as u8])
        .collect();
    let comp = CompSubspace { indices, bits };
    Ok(ReducedModel {
        kind: ModelKind::ZzSimple,
        params: ModelParams::ZzSimple { gap, zeta },
        ideal: cz_ideal(&comp),
        static_h: h,
        drive,
        comp,
    })
}

/// CZ model on `A ⊗ B ⊗ C` (index `4a + 2b + c`) plus a leakage level `|l>`
/// at index 8, detuned by `delta` and reached from `source` with matrix element `k`.
pub fn build_leakage_model(gap: f64, delta: f64, k: f64, source: &BareLabel) -> Result<ReducedModel> {
    if !(gap > 0.0) || !(k >= 0.0) || !delta.is_finite() || !k.is_finite() {
        return Err(Error::InvalidParams(format!(
            "leakage model requires gap > 0, k >= 0, finite delta; got gap={gap}, delta={delta}, k={k}"
        )));
    }
    let src = source.index(&[2, 2, 2])?;
    let dim = 9;
    let leak = 8;
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    let mut drive = DMatrix::<C64>::zeros(dim, dim);
    for i in 0..8 {
        let (a, b, cc) = (bit(i, 2), bit(i, 1), bit(i, 0));
        if cc == 1 {
            h[(i, i)] = c(gap * ((1 - a) + (1 - b)) as f64);
            drive[(i - 1, i)] = c(1.0);
        }
    }
    h[(leak, leak)] = c(delta);
    drive[(src, leak)] += c(k);
    let indices: Vec<usize> = (0..8).filter(|&i| bit(i, 0) == 0).collect();
    let bits = indices
        .iter()
        .map(|&i| vec![bit(i, 2) as u8, bit(i, 1) as u8])
        .collect();
    let comp = CompSubspace { indices, bits };
    Ok(ReducedModel {
        kind: ModelKind::Leakage,
        params: ModelParams::Leakage {
            gap,
            delta,
            k,
            source: source.clone(),
        },
        ideal: cz_ideal(&comp),
        static_h: h,
        drive,
        comp,
    })
}

fn pauli(which: char) -> DMatrix<C64> {
    let (z, o, i) = (c(0.0), c(1.0), C64::new(0.0, 1.0));
    match which {
        'x' => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        'y' => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        'z' => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => DMatrix::identity(2, 2),
    }
}

/// Two-qubit Pauli product on `A ⊗ B` (index `2a + b`), e.g. `pauli2('z', 'x')`.
pub fn pauli2(a: char, b: char) -> DMatrix<C64> {
    pauli(a).kronecker(&pauli(b))
}

/// Resonant single-qubit drive whose charge operator has hybridized by `d`:
/// `V_A = √(1-D) σx_A + √D σz_A σx_B`, `V_B = √(1-D) σx_B - √D σx_A σz_B`.
/// The ideal gate is `R_X(θ)` on the driven qubit.
pub fn build_parasitic_drive(d: f64, which: Qubit, theta: f64) -> Result<ReducedModel> {
    if !(0.0..=1.0).contains(&d) || !theta.is_finite() {
        return Err(Error::InvalidParams(format!(
            "parasitic drive requires D in [0, 1], got {d}"
        )));
    }
    let (direct, leak, sign) = match which {
        Qubit::A => (pauli2('x', 'i'), pauli2('z', 'x'), 1.0),
        Qubit::B => (pauli2('i', 'x'), pauli2('x', 'z'), -1.0),
    };
    let v = direct * c((1.0 - d).sqrt()) + leak * c(sign * d.sqrt());
    let comp = CompSubspace {
        indices: (0..4).collect(),
        bits: (0..4).map(|i| vec![bit(i, 1) as u8, bit(i, 0) as u8]).collect(),
    };
    let half = 0.5 * theta;
    let x = match which {
        Qubit::A => pauli2('x', 'i'),
        Qubit::B => pauli2('i', 'x'),
    };
    let ideal = DMatrix::<C64>::identity(4, 4) * c(half.cos()) - x * C64::new(0.0, half.sin());
    Ok(ReducedModel {
        kind: ModelKind::ParasiticDrive,
        params: ModelParams::ParasiticDrive { d, which, theta },
        static_h: DMatrix::zeros(4, 4),
        drive: v * c(0.5),
        comp,
        ideal,
    })
}

/// Propagates `model` under `pulse` and evaluates the gate error against its ideal.
pub fn simulate_gate(model: &ReducedModel, pulse: &PulseSpec, tol: Tolerance) -> Result<GateReport> {
    let u = propagate(model, pulse, tol)?;
    let mut report = gate_error(&u, &model.ideal, &model.comp)?;
    report.pulse = Some(*pulse);
    Ok(report)
}

/// Error of a resonant `θ` rotation with hybridization `d` (default 20 ns pulse).
pub fn parasitic_gate_error(d: f64, which: Qubit, theta: f64) -> Result<GateReport> {
    let model = build_parasitic_drive(d, which, theta)?;
    let duration = 20.0;
    let width = duration / 4.0;
    let pulse = PulseSpec::new(PulseSpec::rabi_amplitude(duration, width, theta), duration, 0.0);
    simulate_gate(&model, &pulse, Tolerance::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_endpoints_and_peak() {
        let p = PulseSpec::new(0.01, 66.0, 0.0);
        assert_eq!(envelope(&p, 0.0), 0.0);
        assert!(envelope(&p, 66.0).abs() < 1e-18);
        assert!((envelope(&p, 33.0) - 0.01).abs() < 1e-15);
        assert_eq!(envelope(&p, -1.0), 0.0);
        assert_eq!(envelope(&p, 67.0), 0.0);
    }

    #[test]
    fn area_matches_fine_trapezoid() {
        let p = PulseSpec::new(0.01, 66.0, 0.0);
        let n = 1_000_000;
        let h = 66.0 / n as f64;
        let trap: f64 = (1..n).map(|i| envelope(&p, i as f64 * h)).sum::<f64>() * h;
        assert!((p.area() - trap).abs() < 1e-10, "{} vs {trap}", p.area());
    }

    #[test]
    fn zz_simple_static_levels() {
        let m = build_zz_simple(0.1, 0.0).unwrap();
        // |A B C S> = |0 1 1 0>: one qubit in |0> shifts the coupler by G.
        assert_eq!(m.static_h[(0b0110, 0b0110)], c(0.1));
        assert_eq!(m.static_h[(0b0010, 0b0010)], c(0.2));
        assert_eq!(m.static_h[(0b1110, 0b1110)], c(0.0));
        let z = build_zz_simple(0.1, 0.0004).unwrap();
        assert!((z.static_h[(0b1111, 0b1111)].re - 0.0004).abs() < 1e-18);
        assert_eq!(z.comp.indices.len(), 8);
    }

    #[test]
    fn leakage_model_structure() {
        let src: BareLabel = "000".parse().unwrap();
        let m = build_leakage_model(0.1, 0.0, 0.0, &src).unwrap();
        assert!(m.drive.row(8).iter().chain(m.drive.column(8).iter()).all(|z| *z == c(0.0)));
        let m = build_leakage_model(0.1, 0.0, 0.05, &src).unwrap();
        let h = m.hamiltonian(&PulseSpec::new(0.02, 66.0, 0.0), 33.0);
        assert!((h[(0, 8)] - c(0.5 * 0.05 * 0.02)).norm() < 1e-15);
        for s in ["110", "111", "000"] {
            assert!(build_leakage_model(0.1, 0.01, 0.01, &s.parse().unwrap()).is_ok());
        }
        assert!(build_leakage_model(0.1, 0.0, 0.01, &"1102".parse().unwrap()).is_err());
    }

    #[test]
    fn parasitic_limits() {
        let m0 = build_parasitic_drive(0.0, Qubit::A, PI / 2.0).unwrap();
        assert_eq!(m0.drive * c(2.0), pauli2('x', 'i'));
        let m1 = build_parasitic_drive(1.0, Qubit::A, PI / 2.0).unwrap();
        assert_eq!(m1.drive * c(2.0), pauli2('z', 'x'));
    }
}
