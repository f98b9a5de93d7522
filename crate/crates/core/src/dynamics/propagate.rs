//! Adaptive Dormand–Prince 5(4) integration of `dU/dt = -2πi H(t) U`.
//!
//! The model is split into the connected components of the combined
//! sparsity of `H_0` and the drive; each block is integrated on its own.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::{envelope, PulseSpec, ReducedModel};
use crate::error::{Error, Result};

/// Maximum tolerated `|U†U - I|` entry of an accepted propagator.
pub const UNITARITY_TOL: f64 = 1e-8;
const MAX_STEPS: usize = 5_000_000;
const MIN_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            atol: 1e-10,
            rtol: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            atol: self.atol * factor,
            rtol: self.rtol * factor,
        }
    }
}

/// Propagator over `[0, τ]`; column `j` is the evolved basis state `j`.
pub fn propagate(model: &ReducedModel, pulse: &PulseSpec, tol: Tolerance) -> Result<DMatrix<C64>> {
    propagate_with(&model.static_h, &model.drive, pulse, tol)
}

/// Propagator of `H_0 + ε(t)/2 (D e^{-2πiΔt} + h.c.)` over `[0, τ]`.
///
/// A propagator that misses the unitarity bound is recomputed with tighter
/// tolerances before giving up.
pub fn propagate_with(static_h: &DMatrix<C64>, drive: &DMatrix<C64>, pulse: &PulseSpec, tol: Tolerance) -> Result<DMatrix<C64>> {
    let mut tol = tol;
    loop {
        match propagate_once(static_h, drive, pulse, tol) {
            Err(Error::Integration { step, .. }) if step == 0.0 && tol.atol > MIN_TOL => tol = tol.scaled(0.1),
            r => return r,
        }
    }
}

fn propagate_once(static_h: &DMatrix<C64>, drive: &DMatrix<C64>, pulse: &PulseSpec, tol: Tolerance) -> Result<DMatrix<C64>> {
    pulse.validate()?;
    let dim = static_h.nrows();
    let herm = (static_h - static_h.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if herm > 1e-12 || drive.nrows() != dim || drive.ncols() != dim {
        return Err(Error::InvalidParams(
            "static Hamiltonian must be Hermitian and match the drive dimension".into(),
        ));
    }
    let mut u = DMatrix::<C64>::zeros(dim, dim);
    for members in blocks(static_h, drive) {
        let n = members.len();
        let sub = |m: &DMatrix<C64>| DMatrix::from_fn(n, n, |i, j| m[(members[i], members[j])]);
        let block = Block::new(sub(static_h), sub(drive), *pulse);
        let ub = block.integrate(tol)?;
        for (i, &gi) in members.iter().enumerate() {
            for (j, &gj) in members.iter().enumerate() {
                u[(gi, gj)] = ub[i * n + j];
            }
        }
    }
    let defect = (u.adjoint() * &u - DMatrix::<C64>::identity(dim, dim))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if defect >= UNITARITY_TOL {
        return Err(Error::Integration {
            t: pulse.duration,
            step: 0.0,
            message: format!("propagator not unitary: |U†U - I|_max = {defect:.3e}"),
        });
    }
    Ok(u)
}

fn blocks(static_h: &DMatrix<C64>, drive: &DMatrix<C64>) -> Vec<Vec<usize>> {
    let dim = static_h.nrows();
    let linked = |i: usize, j: usize| {
        static_h[(i, j)].norm() > 0.0 || drive[(i, j)].norm() > 0.0 || drive[(j, i)].norm() > 0.0
    };
    let mut comp = vec![usize::MAX; dim];
    let mut out = Vec::new();
    for root in 0..dim {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[root] = id;
        let mut members = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..dim {
                if comp[j] == usize::MAX && linked(i, j) {
                    comp[j] = id;
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// One block with row-major dense operators.
struct Block {
    n: usize,
    h0: Vec<C64>,
    d: Vec<C64>,
    d_adj: Vec<C64>,
    pulse: PulseSpec,
    driven: bool,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

impl Block {
    fn new(h0: DMatrix<C64>, d: DMatrix<C64>, pulse: PulseSpec) -> Self {
        let n = h0.nrows();
        let row_major = |m: &DMatrix<C64>| (0..n * n).map(|k| m[(k / n, k % n)]).collect::<Vec<_>>();
        let d_adj = d.adjoint();
        let driven = d.iter().any(|z| z.norm() > 0.0) && pulse.amplitude > 0.0;
        Self {
            n,
            h0: row_major(&h0),
            d: row_major(&d),
            d_adj: row_major(&d_adj),
            pulse,
            driven,
        }
    }

    /// `out = -2πi H(t) y` for row-major `n x n` matrices.
    fn rhs(&self, t: f64, y: &[C64], h: &mut [C64], out: &mut [C64]) {
        let n = self.n;
        h.copy_from_slice(&self.h0);
        if self.driven {
            let eps = envelope(&self.pulse, t);
            if eps != 0.0 {
                let phase = C64::from_polar(0.5 * eps, -2.0 * PI * self.pulse.detuning * t);
                let conj = phase.conj();
                for k in 0..n * n {
                    h[k] += self.d[k] * phase + self.d_adj[k] * conj;
                }
            }
        }
        let factor = C64::new(0.0, -2.0 * PI);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += h[i * n + k] * y[k * n + j];
                }
                out[i * n + j] = factor * acc;
            }
        }
    }

    fn norm_bound(&self) -> f64 {
        let n = self.n;
        let row = |m: &[C64], i: usize| (0..n).map(|k| m[i * n + k].norm()).sum::<f64>();
        (0..n)
            .map(|i| row(&self.h0, i) + self.pulse.amplitude * 0.5 * (row(&self.d, i) + row(&self.d_adj, i)))
            .fold(0.0, f64::max)
    }

    fn integrate(&self, tol: Tolerance) -> Result<Vec<C64>> {
        let n = self.n;
        let len = n * n;
        let tau = self.pulse.duration;
        let mut y: Vec<C64> = (0..len)
            .map(|k| if k / n == k % n { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
            .collect();
        let bound = self.norm_bound();
        if bound == 0.0 {
            return Ok(y);
        }
        let zero = C64::new(0.0, 0.0);
        let mut k = vec![vec![zero; len]; 7];
        let mut tmp = vec![zero; len];
        let mut y_new = vec![zero; len];
        let mut hbuf = vec![zero; len];

        let mut t = 0.0;
        let mut h = (0.01 / (2.0 * PI * bound)).min(tau);
        self.rhs(t, &y, &mut hbuf, &mut k[0]);
        let mut steps = 0;
        while t < tau {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::Integration {
                    t,
                    step: h,
                    message: "maximum number of steps exceeded".into(),
                });
            }
            if t + h > tau {
                h = tau - t;
            }
            let stage = |ks: &[Vec<C64>], coeffs: &[f64], tmp: &mut [C64], y: &[C64]| {
                for idx in 0..len {
                    let mut acc = y[idx];
                    for (kk, &a) in ks.iter().zip(coeffs) {
                        if a != 0.0 {
                            acc += kk[idx] * (a * h);
                        }
                    }
                    tmp[idx] = acc;
                }
            };
            stage(&k[..1], &[A21], &mut tmp, &y);
            self.rhs(t + C2 * h, &tmp, &mut hbuf, &mut k[1]);
            stage(&k[..2], &[A31, A32], &mut tmp, &y);
            self.rhs(t + C3 * h, &tmp, &mut hbuf, &mut k[2]);
            stage(&k[..3], &[A41, A42, A43], &mut tmp, &y);
            self.rhs(t + C4 * h, &tmp, &mut hbuf, &mut k[3]);
            stage(&k[..4], &[A51, A52, A53, A54], &mut tmp, &y);
            self.rhs(t + C5 * h, &tmp, &mut hbuf, &mut k[4]);
            stage(&k[..5], &[A61, A62, A63, A64, A65], &mut tmp, &y);
            self.rhs(t + h, &tmp, &mut hbuf, &mut k[5]);
            stage(&k[..6], &[B1, 0.0, B3, B4, B5, B6], &mut y_new, &y);
            self.rhs(t + h, &y_new, &mut hbuf, &mut k[6]);

            let mut err: f64 = 0.0;
            for idx in 0..len {
                let e = (k[0][idx] * E1
                    + k[2][idx] * E3
                    + k[3][idx] * E4
                    + k[4][idx] * E5
                    + k[5][idx] * E6
                    + k[6][idx] * E7)
                    * h;
                let scale = tol.atol + tol.rtol * y[idx].norm().max(y_new[idx].norm());
                err = err.max(e.norm() / scale);
            }
            if err <= 1.0 {
                t += h;
                std::mem::swap(&mut y, &mut y_new);
                k.swap(0, 6);
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                h *= grow;
            } else {
                h *= (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
                if h < 1e-12 * tau {
                    return Err(Error::Integration {
                        t,
                        step: h,
                        message: format!("step size underflow (error estimate {err:.3e})"),
                    });
                }
            }
        }
        Ok(y)
    }
}
