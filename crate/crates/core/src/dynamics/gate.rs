//! Gate-error decomposition on a computational subspace.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::PulseSpec;
use crate::error::{Error, Result};

/// Computational states of a model: their indices in the full basis and the
/// qubit occupations used to remove local Z phases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompSubspace {
    pub indices: Vec<usize>,
    /// `bits[s][q]` is the state of qubit `q` in computational state `s`.
    /// Empty inner vectors disable the Z-phase optimization.
    pub bits: Vec<Vec<u8>>,
}

impl CompSubspace {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    fn qubits(&self) -> usize {
        self.bits.first().map_or(0, |b| b.len())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateReport {
    pub eps_total: f64,
    pub eps_ph: f64,
    pub eps_leak: f64,
    /// `Z · U_ideal† P U P` on the computational subspace, with the optimal local Z phases applied.
    #[serde(skip)]
    pub u_reduced: DMatrix<C64>,
    /// Optimal local Z phases (radians), one per qubit.
    pub z_phases: Vec<f64>,
    pub pulse: Option<PulseSpec>,
}

/// Average gate fidelity `(Tr(M†M) + |Tr M|²) / (d(d+1))` of a (possibly
/// non-unitary) block `M` relative to the identity.
pub fn fidelity(m: &DMatrix<C64>) -> f64 {
    let d = m.nrows() as f64;
    let norm: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    (norm + m.trace().norm_sqr()) / (d * (d + 1.0))
}

/// Local Z phases maximizing `|Tr(Z(θ) M)|`, with `Z(θ)_ss = exp(i Σ_q θ_q b_q(s))`.
fn optimize_z(m: &DMatrix<C64>, bits: &[Vec<u8>]) -> Vec<f64> {
    let d = m.nrows();
    let nq = bits.first().map_or(0, |b| b.len());
    let diag: Vec<C64> = (0..d).map(|s| m[(s, s)]).collect();
    let ground = bits.iter().position(|b| b.iter().all(|&x| x == 0));
    let mut theta = vec![0.0; nq];
    // Start from the phases of the single-excitation diagonal entries.
    if let Some(g) = ground {
        for (q, th) in theta.iter_mut().enumerate() {
            let single = bits
                .iter()
                .position(|b| b.iter().enumerate().all(|(p, &x)| x == u8::from(p == q)));
            if let Some(s) = single {
                if diag[s].norm() > 1e-12 && diag[g].norm() > 1e-12 {
                    *th = (diag[g] / diag[s]).arg();
                }
            }
        }
    }
    let phase = |s: usize, theta: &[f64], skip: usize| -> C64 {
        let angle: f64 = bits[s]
            .iter()
            .zip(theta)
            .enumerate()
            .filter(|(q, _)| *q != skip)
            .map(|(_, (&b, &t))| b as f64 * t)
            .sum();
        C64::from_polar(1.0, angle)
    };
    for _ in 0..200 {
        let mut change: f64 = 0.0;
        for q in 0..nq {
            let (mut with, mut without) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
            for s in 0..d {
                let term = phase(s, &theta, q) * diag[s];
                if bits[s][q] == 1 {
                    with += term;
                } else {
                    without += term;
                }
            }
            if with.norm() < 1e-300 {
                continue;
            }
            let best = if without.norm() < 1e-300 {
                theta[q]
            } else {
                without.arg() - with.arg()
            };
            let wrapped = (best + PI).rem_euclid(2.0 * PI) - PI;
            change = change.max(((wrapped - theta[q] + PI).rem_euclid(2.0 * PI) - PI).abs());
            theta[q] = wrapped;
        }
        if change < 1e-15 {
            break;
        }
    }
    theta
}

fn apply_z(m: &DMatrix<C64>, bits: &[Vec<u8>], theta: &[f64]) -> DMatrix<C64> {
    let mut out = m.clone();
    for s in 0..m.nrows() {
        let angle: f64 = bits[s].iter().zip(theta).map(|(&b, &t)| b as f64 * t).sum();
        let z = C64::from_polar(1.0, angle);
        for j in 0..m.ncols() {
            out[(s, j)] *= z;
        }
    }
    out
}

/// Closest unitary to `m` in Frobenius norm (polar factor).
fn unitarize(m: &DMatrix<C64>) -> DMatrix<C64> {
    let svd = m.clone().svd(true, true);
    let (u, v_t) = (svd.u.expect("left vectors"), svd.v_t.expect("right vectors"));
    u * v_t
}

/// Total, phase and leakage errors of `u` against `u_ideal` on `comp`.
///
/// `ε_total = 1 - F(M)` with `M = Z · U_ideal† P U P` and local Z phases
/// chosen to maximize `|Tr M|`; `ε_leak` is the mean population leaving the
/// subspace; `ε_ph` is `1 - F` of the polar-unitarized block after Z removal.
pub fn gate_error(u: &DMatrix<C64>, u_ideal: &DMatrix<C64>, comp: &CompSubspace) -> Result<GateReport> {
    let d = comp.dim();
    if d < 2 {
        return Err(Error::InvalidParams(format!(
            "computational subspace must have dimension >= 2, got {d}"
        )));
    }
    if u_ideal.nrows() != d || u_ideal.ncols() != d {
        return Err(Error::InvalidParams(format!(
            "ideal gate is {}x{}, subspace has dimension {d}",
            u_ideal.nrows(),
            u_ideal.ncols()
        )));
    }
    if comp.indices.iter().any(|&i| i >= u.nrows()) || (comp.qubits() > 0 && comp.bits.len() != d) {
        return Err(Error::InvalidParams("computational indices out of range".into()));
    }
    let block = DMatrix::from_fn(d, d, |i, j| u[(comp.indices[i], comp.indices[j])]);
    let eps_leak = (0..d)
        .map(|j| {
            let total: f64 = u.column(comp.indices[j]).iter().map(|z| z.norm_sqr()).sum();
            let kept: f64 = block.column(j).iter().map(|z| z.norm_sqr()).sum();
            (total - kept).max(0.0)
        })
        .sum::<f64>()
        / d as f64;

    let m = u_ideal.adjoint() * &block;
    let (m_z, z_phases) = if comp.qubits() > 0 {
        let theta = optimize_z(&m, &comp.bits);
        (apply_z(&m, &comp.bits, &theta), theta)
    } else {
        (m.clone(), Vec::new())
    };
    let eps_total = (1.0 - fidelity(&m_z)).clamp(0.0, 1.0);

    let w = unitarize(&m_z);
    let w_z = if comp.qubits() > 0 {
        let theta = optimize_z(&w, &comp.bits);
        apply_z(&w, &comp.bits, &theta)
    } else {
        w
    };
    let eps_ph = (1.0 - fidelity(&w_z)).clamp(0.0, 1.0);

    Ok(GateReport {
        eps_total,
        eps_ph,
        eps_leak,
        u_reduced: m_z,
        z_phases,
        pulse: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_qubits() -> CompSubspace {
        CompSubspace {
            indices: (0..4).collect(),
            bits: vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
        }
    }

    fn cz(phi: f64) -> DMatrix<C64> {
        let mut m = DMatrix::<C64>::identity(4, 4);
        m[(3, 3)] = C64::from_polar(-1.0, phi);
        m
    }

    #[test]
    fn perfect_gate() {
        let r = gate_error(&cz(0.0), &cz(0.0), &two_qubits()).unwrap();
        assert!(r.eps_total < 1e-15 && r.eps_ph < 1e-15 && r.eps_leak == 0.0);
    }

    #[test]
    fn conditional_phase_error_against_grid_search() {
        let phi = 0.01;
        let r = gate_error(&cz(phi), &cz(0.0), &two_qubits()).unwrap();
        assert_eq!(r.eps_leak, 0.0);
        // Oracle: brute-force the two local phases on a fine grid.
        let n = 2000;
        let mut best: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (
                    -0.02 + 0.04 * i as f64 / n as f64,
                    -0.02 + 0.04 * j as f64 / n as f64,
                );
                let tr = C64::new(1.0, 0.0)
                    + C64::from_polar(1.0, b)
                    + C64::from_polar(1.0, a)
                    + C64::from_polar(1.0, a + b + phi);
                best = best.max((4.0 + tr.norm_sqr()) / 20.0);
            }
        }
        assert!((r.eps_total - (1.0 - best)).abs() < 1e-9, "{} vs {}", r.eps_total, 1.0 - best);
        assert!((r.eps_total - r.eps_ph).abs() < 1e-12);
    }

    #[test]
    fn two_fifths_coefficient_for_hybridized_drive() {
        let d: f64 = 1e-3;
        let gen = crate::dynamics::pauli2('x', 'x') + crate::dynamics::pauli2('y', 'x');
        let h = gen * C64::new(d.sqrt() / 2.0, 0.0);
        let eig = h.clone().symmetric_eigen();
        let u = &eig.eigenvectors
            * DMatrix::from_diagonal(&eig.eigenvalues.map(|e| C64::from_polar(1.0, -e)))
            * eig.eigenvectors.adjoint();
        let plain = CompSubspace {
            indices: (0..4).collect(),
            bits: vec![Vec::new(); 4],
        };
        let r = gate_error(&u, &DMatrix::identity(4, 4), &plain).unwrap();
        assert!((r.eps_total / (0.4 * d) - 1.0).abs() < 0.02, "{}", r.eps_total);
    }

    #[test]
    fn global_phase_and_leakage() {
        let ideal = cz(0.0);
        let u = cz(0.3) * C64::from_polar(1.0, 1.234);
        let a = gate_error(&cz(0.3), &ideal, &two_qubits()).unwrap();
        let b = gate_error(&u, &ideal, &two_qubits()).unwrap();
        assert!((a.eps_total - b.eps_total).abs() < 1e-14);

        // Embed in 5 levels and leak 10% of |11> into the extra level.
        let mut big = DMatrix::<C64>::identity(5, 5);
        big[(3, 3)] = C64::new(-(0.9f64).sqrt(), 0.0);
        big[(4, 3)] = C64::new(0.1f64.sqrt(), 0.0);
        big[(3, 4)] = C64::new(0.1f64.sqrt(), 0.0);
        big[(4, 4)] = C64::new(0.9f64.sqrt(), 0.0);
        let r = gate_error(&big, &ideal, &two_qubits()).unwrap();
        assert!((r.eps_leak - 0.025).abs() < 1e-12);
        assert!(r.eps_leak <= r.eps_total + 1e-12);
        assert!(r.eps_ph < 1e-12);
    }

    #[test]
    fn rejects_small_subspace() {
        let comp = CompSubspace {
            indices: vec![0],
            bits: vec![vec![0]],
        };
        assert!(gate_error(&DMatrix::identity(2, 2), &DMatrix::identity(1, 1), &comp).is_err());
    }
}
