//! Single circuit elements: fluxonium, transmon and linear oscillator.
//!
//! Every Hamiltonian is stored as `H/h` in GHz. Each element is diagonalized
//! in its own basis and truncated to `keep_levels` eigenstates; the composite
//! module only ever sees the truncated [`ElementSpectrum`].

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance (GHz) on retained frequencies when the basis is doubled.
pub const CONVERGENCE_TOL_GHZ: f64 = 1e-8;
/// Retained levels closer than this (GHz) are treated as degenerate.
pub const DEGENERACY_TOL_GHZ: f64 = 1e-9;

const PARITY_PURITY: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Fluxonium,
    Transmon,
    Oscillator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementParams {
    pub kind: ElementKind,
    pub e_c: f64,
    pub e_j: f64,
    pub e_l: f64,
    /// External flux phase in radians (fluxonium only).
    pub phi_ext: f64,
    /// Internal basis size: oscillator states for fluxonium, `2 n_cut + 1` charge states for transmon.
    pub basis_dim: usize,
    pub keep_levels: usize,
}

impl ElementParams {
    /// Fluxonium at the flux sweet spot with a 120-state oscillator basis and 10 retained levels.
    pub fn fluxonium(e_c: f64, e_j: f64, e_l: f64) -> Self {
        Self {
            kind: ElementKind::Fluxonium,
            e_c,
            e_j,
            e_l,
            phi_ext: PI,
            basis_dim: 120,
            keep_levels: 10,
        }
    }

    /// Transmon with `n_cut = 30` and 5 retained levels.
    pub fn transmon(e_c: f64, e_j: f64) -> Self {
        Self {
            kind: ElementKind::Transmon,
            e_c,
            e_j,
            e_l: 0.0,
            phi_ext: 0.0,
            basis_dim: 61,
            keep_levels: 5,
        }
    }

    pub fn oscillator(e_c: f64, e_l: f64) -> Self {
        Self {
            kind: ElementKind::Oscillator,
            e_c,
            e_j: 0.0,
            e_l,
            phi_ext: 0.0,
            basis_dim: 3,
            keep_levels: 3,
        }
    }

    pub fn with_keep(mut self, keep_levels: usize) -> Self {
        self.keep_levels = keep_levels;
        if self.kind == ElementKind::Oscillator {
            self.basis_dim = self.basis_dim.max(keep_levels);
        }
        self
    }

    pub fn with_basis(mut self, basis_dim: usize) -> Self {
        self.basis_dim = basis_dim;
        self
    }

    pub fn with_phi_ext(mut self, phi_ext: f64) -> Self {
        self.phi_ext = phi_ext;
        self
    }

    pub fn with_e_j(mut self, e_j: f64) -> Self {
        self.e_j = e_j;
        self
    }

    pub fn with_e_l(mut self, e_l: f64) -> Self {
        self.e_l = e_l;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        let finite = [self.e_c, self.e_j, self.e_l, self.phi_ext]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return bad(format!("non-finite element parameter in {self:?}"));
        }
        if self.e_c <= 0.0 {
            return bad(format!("E_C must be positive, got {}", self.e_c));
        }
        if self.keep_levels < 2 || self.basis_dim < self.keep_levels {
            return bad(format!(
                "need basis_dim >= keep_levels >= 2, got basis_dim={} keep_levels={}",
                self.basis_dim, self.keep_levels
            ));
        }
        match self.kind {
            ElementKind::Fluxonium => {
                if self.e_l <= 0.0 {
                    return bad(format!("fluxonium requires E_L > 0, got {}", self.e_l));
                }
                if self.e_j < 0.0 {
                    return bad(format!("fluxonium requires E_J >= 0, got {}", self.e_j));
                }
            }
            ElementKind::Transmon => {
                // E_J = 0 is accepted as the free-rotor limit.
                if self.e_j < 0.0 {
                    return bad(format!("transmon requires E_J >= 0, got {}", self.e_j));
                }
            }
            ElementKind::Oscillator => {
                if self.e_l <= 0.0 {
                    return bad(format!("oscillator requires E_L > 0, got {}", self.e_l));
                }
                if self.e_j != 0.0 {
                    return bad(format!("oscillator requires E_J = 0, got {}", self.e_j));
                }
            }
        }
        Ok(())
    }

    /// Plasma frequency `sqrt(8 E_C E_L)` of the quadratic part (GHz).
    pub fn plasma_frequency(&self) -> f64 {
        (8.0 * self.e_c * self.e_l).sqrt()
    }
}

/// Truncated eigensystem of one element.
#[derive(Clone, Debug)]
pub struct ElementSpectrum {
    pub params: ElementParams,
    /// Level energies relative to the ground state, GHz, strictly increasing.
    pub frequencies: Vec<f64>,
    /// `<i|n|j>` in the retained eigenbasis.
    pub n_elems: DMatrix<C64>,
    /// `<i|phi|j>` in the retained eigenbasis.
    pub phi_elems: DMatrix<C64>,
    /// Parity (`0` even, `1` odd) of each retained level, when the element has a parity symmetry.
    pub parity: Option<Vec<u8>>,
    /// Basis size that produced the returned spectrum after convergence checks.
    pub basis_used: usize,
}

impl ElementSpectrum {
    pub fn levels(&self) -> usize {
        self.frequencies.len()
    }

    /// Transition frequency `f_j - f_i` (GHz).
    pub fn transition(&self, i: usize, j: usize) -> f64 {
        self.frequencies[j] - self.frequencies[i]
    }

    pub fn n(&self, i: usize, j: usize) -> C64 {
        self.n_elems[(i, j)]
    }

    pub fn n_abs(&self, i: usize, j: usize) -> f64 {
        self.n_elems[(i, j)].norm()
    }

    pub fn phi(&self, i: usize, j: usize) -> C64 {
        self.phi_elems[(i, j)]
    }
}

/// Builds the element described by `params`, dispatching on its kind.
pub fn build(params: &ElementParams) -> Result<ElementSpectrum> {
    match params.kind {
        ElementKind::Fluxonium => build_fluxonium(params),
        ElementKind::Transmon => build_transmon(params),
        ElementKind::Oscillator => build_oscillator(params),
    }
}

/// Fluxonium `4 E_C n^2 + E_L phi^2 / 2 - E_J cos(phi + phi_ext)` in the
/// eigenbasis of its quadratic part.
pub fn build_fluxonium(params: &ElementParams) -> Result<ElementSpectrum> {
    if params.kind != ElementKind::Fluxonium {
        return Err(Error::InvalidParams(format!(
            "build_fluxonium called with {:?}",
            params.kind
        )));
    }
    params.validate()?;
    converge("fluxonium", params, params.basis_dim, |dim| {
        fluxonium_at(params, dim)
    })
}

/// Transmon `4 E_C n^2 - E_J cos(phi)` in the charge basis `n in [-n_cut, n_cut]`.
pub fn build_transmon(params: &ElementParams) -> Result<ElementSpectrum> {
    if params.kind != ElementKind::Transmon {
        return Err(Error::InvalidParams(format!(
            "build_transmon called with {:?}",
            params.kind
        )));
    }
    params.validate()?;
    let n_cut = (params.basis_dim.max(3) - 1) / 2;
    converge("transmon", params, 2 * n_cut + 1, |dim| {
        transmon_at(params, (dim - 1) / 2)
    })
}

/// Linear oscillator with frequency `sqrt(8 E_C E_L)`, built analytically.
pub fn build_oscillator(params: &ElementParams) -> Result<ElementSpectrum> {
    if params.kind != ElementKind::Oscillator {
        return Err(Error::InvalidParams(format!(
            "build_oscillator called with {:?}",
            params.kind
        )));
    }
    params.validate()?;
    let keep = params.keep_levels;
    let omega = params.plasma_frequency();
    let (phi_zpf, n_zpf) = zero_point(params.e_c, params.e_l);
    let mut n_elems = DMatrix::<C64>::zeros(keep, keep);
    let mut phi_elems = DMatrix::<C64>::zeros(keep, keep);
    for k in 0..keep - 1 {
        let s = ((k + 1) as f64).sqrt();
        n_elems[(k, k + 1)] = C64::new(0.0, -n_zpf * s);
        n_elems[(k + 1, k)] = C64::new(0.0, n_zpf * s);
        phi_elems[(k, k + 1)] = C64::new(phi_zpf * s, 0.0);
        phi_elems[(k + 1, k)] = C64::new(phi_zpf * s, 0.0);
    }
    Ok(ElementSpectrum {
        params: params.clone(),
        frequencies: (0..keep).map(|k| k as f64 * omega).collect(),
        n_elems,
        phi_elems,
        parity: Some((0..keep).map(|k| (k % 2) as u8).collect()),
        basis_used: keep,
    })
}

/// Zero-point amplitudes `(phi_zpf, n_zpf)` with `phi = phi_zpf (a + a†)` and
/// `n = i n_zpf (a† - a)`.
fn zero_point(e_c: f64, e_l: f64) -> (f64, f64) {
    let phi_zpf = (8.0 * e_c / e_l).powf(0.25) / 2f64.sqrt();
    (phi_zpf, 0.5 / phi_zpf)
}

fn converge<F>(what: &str, params: &ElementParams, start: usize, solve: F) -> Result<ElementSpectrum>
where
    F: Fn(usize) -> Result<ElementSpectrum>,
{
    let mut dim = start;
    let mut coarse = solve(dim)?;
    let mut delta = f64::INFINITY;
    for _ in 0..2 {
        let fine_dim = 2 * dim - if params.kind == ElementKind::Transmon { 1 } else { 0 };
        let fine = solve(fine_dim)?;
        delta = coarse
            .frequencies
            .iter()
            .zip(&fine.frequencies)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if delta < CONVERGENCE_TOL_GHZ {
            return Ok(fine);
        }
        dim = fine_dim;
        coarse = fine;
    }
    Err(Error::NotConverged {
        what: format!("{what} {params:?}"),
        delta,
    })
}

fn fluxonium_at(params: &ElementParams, dim: usize) -> Result<ElementSpectrum> {
    let (phi_zpf, n_zpf) = zero_point(params.e_c, params.e_l);
    let omega = params.plasma_frequency();
    let disp = displacement(phi_zpf, dim);

    // cos(phi + phi_ext) = cos(phi_ext) cos(phi) - sin(phi_ext) sin(phi)
    let (s_ext, c_ext) = params.phi_ext.sin_cos();
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for m in 0..dim {
        for k in 0..dim {
            let d = disp[(m, k)];
            let d_adj = disp[(k, m)].conj();
            let cos = 0.5 * (d + d_adj);
            let sin = (d - d_adj) / C64::new(0.0, 2.0);
            h[(m, k)] = -params.e_j * (c_ext * cos.re - s_ext * sin.re);
        }
        h[(m, m)] += omega * (m as f64 + 0.5);
    }
    let symmetric = s_ext.abs() < 1e-14;

    let mut phi_ho = DMatrix::<f64>::zeros(dim, dim);
    let mut n_ho = DMatrix::<f64>::zeros(dim, dim); // n = i * n_ho
    for k in 0..dim - 1 {
        let s = ((k + 1) as f64).sqrt();
        phi_ho[(k, k + 1)] = phi_zpf * s;
        phi_ho[(k + 1, k)] = phi_zpf * s;
        n_ho[(k, k + 1)] = -n_zpf * s;
        n_ho[(k + 1, k)] = n_zpf * s;
    }
    // HO level k has parity (-1)^k under phi -> -phi.
    let reflection: Vec<f64> = (0..dim).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
    finish(params, h, &n_ho, &phi_ho, true, symmetric.then_some(Reflection::Diagonal(reflection)), dim)
}

fn transmon_at(params: &ElementParams, n_cut: usize) -> Result<ElementSpectrum> {
    let dim = 2 * n_cut + 1;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    let mut n_op = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        let n = i as f64 - n_cut as f64;
        h[(i, i)] = 4.0 * params.e_c * n * n;
        n_op[(i, i)] = n;
        if i + 1 < dim {
            h[(i, i + 1)] = -0.5 * params.e_j;
            h[(i + 1, i)] = -0.5 * params.e_j;
        }
    }
    // phi is not single-valued on the charge basis; phi_elems are filled from
    // the commutator identity [H, phi] = -8i E_C n after diagonalization.
    let phi_dummy = DMatrix::<f64>::zeros(dim, dim);
    finish(params, h, &n_op, &phi_dummy, false, Some(Reflection::ChargeMirror), dim)
}

enum Reflection {
    /// Basis states are parity eigenstates with the given signs.
    Diagonal(Vec<f64>),
    /// Charge basis: parity maps `|n>` to `|-n>`.
    ChargeMirror,
}

/// Diagonalizes a real symmetric element Hamiltonian and transforms its
/// operators. `n_imaginary` marks operators stored as `n = i * n_basis`.
fn finish(
    params: &ElementParams,
    h: DMatrix<f64>,
    n_basis: &DMatrix<f64>,
    phi_basis: &DMatrix<f64>,
    n_imaginary: bool,
    reflection: Option<Reflection>,
    dim: usize,
) -> Result<ElementSpectrum> {
    let keep = params.keep_levels;
    let (energies, vecs) = sorted_eigh(h)?;
    let e0 = energies[0];
    let frequencies: Vec<f64> = energies[..keep].iter().map(|e| e - e0).collect();

    if params.kind != ElementKind::Oscillator {
        for w in frequencies.windows(2) {
            if w[1] - w[0] < DEGENERACY_TOL_GHZ {
                return Err(Error::InvalidParams(format!(
                    "degenerate retained levels ({} and {} GHz) for {params:?}",
                    w[0], w[1]
                )));
            }
        }
    }

    let v = vecs.columns(0, keep).into_owned();
    let n_real = v.transpose() * n_basis * &v;
    let mut n_elems = n_real.map(|x| {
        if n_imaginary {
            C64::new(0.0, x)
        } else {
            C64::new(x, 0.0)
        }
    });
    let mut phi_elems = if params.kind == ElementKind::Transmon {
        let mut phi = DMatrix::<C64>::zeros(keep, keep);
        for i in 0..keep {
            for j in 0..keep {
                if i != j {
                    let de = frequencies[i] - frequencies[j];
                    phi[(i, j)] = C64::new(0.0, -8.0 * params.e_c) * n_elems[(i, j)] / de;
                }
            }
        }
        phi
    } else {
        (v.transpose() * phi_basis * &v).map(|x| C64::new(x, 0.0))
    };

    let parity = reflection.and_then(|r| level_parities(&v, &r));
    if let Some(p) = &parity {
        for i in 0..keep {
            for j in 0..keep {
                if p[i] == p[j] {
                    n_elems[(i, j)] = C64::new(0.0, 0.0);
                    phi_elems[(i, j)] = C64::new(0.0, 0.0);
                }
            }
        }
    }

    Ok(ElementSpectrum {
        params: params.clone(),
        frequencies,
        n_elems,
        phi_elems,
        parity,
        basis_used: dim,
    })
}

fn level_parities(v: &DMatrix<f64>, reflection: &Reflection) -> Option<Vec<u8>> {
    let dim = v.nrows();
    let mut out = Vec::with_capacity(v.ncols());
    for col in v.column_iter() {
        let expectation: f64 = match reflection {
            Reflection::Diagonal(signs) => col.iter().zip(signs).map(|(c, s)| s * c * c).sum(),
            Reflection::ChargeMirror => (0..dim).map(|i| col[i] * col[dim - 1 - i]).sum(),
        };
        if (expectation.abs() - 1.0).abs() > PARITY_PURITY {
            return None;
        }
        out.push(if expectation > 0.0 { 0 } else { 1 });
    }
    Some(out)
}

/// Real symmetric eigendecomposition, ascending, with each eigenvector's
/// largest-magnitude component made positive.
pub(crate) fn sorted_eigh(h: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = h.nrows();
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigensolver("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = DMatrix::<f64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(src);
        let pivot = col.iter().copied().fold(0.0f64, |best, x| {
            if x.abs() > best.abs() + 1e-12 {
                x
            } else {
                best
            }
        });
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        vecs.set_column(dst, &(col * sign));
    }
    Ok((values, vecs))
}

/// `<m| exp(i c (a + a†)) |k>` for `m, k < dim`, via the displacement
/// operator `D(i c)` and the relation `a D = D (a + beta)`.
fn displacement(c: f64, dim: usize) -> DMatrix<C64> {
    // D_mk = i^(k-m) R_mk with real R. Along each diagonal k = j + a the
    // entries are normalized Laguerre polynomials L_j^(a)(c^2), obeying
    // sqrt((j+1)(j+1+a)) R_{j+1} = (2j+1+a-c^2) R_j - sqrt(j(j+a)) R_{j-1},
    // which stays accurate far into the basis; R_km = (-1)^(k-m) R_mk.
    let x = c * c;
    let mut r = DMatrix::<f64>::zeros(dim, dim);
    let mut first = (-0.5 * x).exp();
    for a in 0..dim {
        if a > 0 {
            first *= c / (a as f64).sqrt();
        }
        let af = a as f64;
        let (mut prev, mut cur) = (0.0, first);
        r[(0, a)] = cur;
        for j in 0..dim - 1 - a {
            let jf = j as f64;
            let next = ((2.0 * jf + 1.0 + af - x) * cur - (jf * (jf + af)).sqrt() * prev)
                / ((jf + 1.0) * (jf + 1.0 + af)).sqrt();
            prev = cur;
            cur = next;
            r[(j + 1, j + 1 + a)] = cur;
        }
    }
    for m in 1..dim {
        for k in 0..m {
            let sign = if (m - k) % 2 == 0 { 1.0 } else { -1.0 };
            r[(m, k)] = sign * r[(k, m)];
        }
    }
    let unit = [
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, -1.0),
    ];
    DMatrix::from_fn(dim, dim, |m, k| {
        let phase = unit[((k as isize - m as isize).rem_euclid(4)) as usize];
        phase * r[(m, k)]
    })
}

/// Finds `E_J` such that the element's `0 -> 1` frequency equals `target` (GHz),
/// bracketing within `[lo, hi]`.
pub fn tune_e_j(params: &ElementParams, target: f64, lo: f64, hi: f64) -> Result<ElementParams> {
    let f01 = |e_j: f64| -> Result<f64> {
        let mut p = params.clone().with_e_j(e_j);
        p.keep_levels = 2;
        Ok(build(&p)?.frequencies[1])
    };
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f01(a)? - target, f01(b)? - target);
    if fa * fb > 0.0 {
        return Err(Error::InvalidParams(format!(
            "E_J bracket [{lo}, {hi}] does not reach f01 = {target} GHz"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = f01(mid)? - target;
        if fm == 0.0 || (b - a) < 1e-13 * mid.abs().max(1.0) {
            a = mid;
            b = mid;
            break;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    Ok(params.clone().with_e_j(0.5 * (a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_hermitian_defect(m: &DMatrix<C64>) -> f64 {
        (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn displacement_is_inverted_by_opposite_shift() {
        let dim = 700;
        let plus = displacement(1.3, dim);
        let minus = displacement(-1.3, dim);
        let product = &plus * &minus;
        for m in 0..300 {
            for k in 0..300 {
                let target = if m == k { 1.0 } else { 0.0 };
                assert!((product[(m, k)] - C64::new(target, 0.0)).norm() < 1e-10, "({m}, {k})");
            }
        }
    }

    #[test]
    fn harmonic_fluxonium_is_exact() {
        let p = ElementParams::fluxonium(1.0, 0.0, 1.0)
            .with_phi_ext(0.0)
            .with_keep(5);
        let s = build_fluxonium(&p).unwrap();
        for (k, f) in s.frequencies.iter().enumerate() {
            assert!((f - k as f64 * 8f64.sqrt()).abs() < 1e-8, "level {k}: {f}");
        }
    }

    #[test]
    fn sweet_spot_parity() {
        let p = ElementParams::fluxonium(1.0, 4.0, 1.0).with_keep(6);
        let s = build_fluxonium(&p).unwrap();
        assert!(s.parity.is_some());
        assert!(s.n_abs(0, 2) < 1e-8 && s.n_abs(1, 3) < 1e-8);
        assert!(s.n_abs(0, 1) > 1e-3 && s.n_abs(0, 3) > 1e-3);
        assert!(max_hermitian_defect(&s.n_elems) < 1e-10);
        assert!(max_hermitian_defect(&s.phi_elems) < 1e-10);
    }

    #[test]
    fn off_sweet_spot_breaks_parity() {
        let p = ElementParams::fluxonium(1.0, 4.0, 1.0)
            .with_phi_ext(0.8 * PI)
            .with_keep(4);
        let s = build_fluxonium(&p).unwrap();
        assert!(s.parity.is_none());
        assert!(s.n_abs(0, 2) > 1e-4);
    }

    #[test]
    fn free_rotor_transmon() {
        let p = ElementParams::transmon(0.25, 0.0).with_keep(2);
        let s = build_transmon(&p).unwrap();
        assert!((s.frequencies[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transmon_phi_matches_commutator() {
        let p = ElementParams::transmon(0.2, 20.0);
        let s = build_transmon(&p).unwrap();
        // Deep transmon: phi_01 is close to the oscillator value (2 E_C / E_J)^(1/4).
        let expect = (2.0 * 0.2 / 20.0f64).powf(0.25);
        assert!((s.phi(0, 1).norm() - expect).abs() / expect < 0.05);
        assert!(max_hermitian_defect(&s.phi_elems) < 1e-10);
    }

    #[test]
    fn oscillator_ladder() {
        let p = ElementParams::oscillator(0.5, 1.0);
        let s = build_oscillator(&p).unwrap();
        assert_eq!(s.frequencies, vec![0.0, 2.0, 4.0]);
        assert_eq!(s.n(0, 2), C64::new(0.0, 0.0));
        let expect = (1.0f64 / (32.0 * 0.5)).powf(0.25);
        assert!((s.n_abs(0, 1) - expect).abs() < 1e-14);
    }

    #[test]
    fn validation_errors() {
        assert!(ElementParams::fluxonium(0.0, 4.0, 1.0).validate().is_err());
        assert!(ElementParams::fluxonium(1.0, 4.0, 0.0).validate().is_err());
        assert!(ElementParams::transmon(0.2, -1.0).validate().is_err());
        let mut osc = ElementParams::oscillator(0.5, 1.0);
        osc.e_j = 1.0;
        assert!(matches!(build_oscillator(&osc), Err(Error::InvalidParams(_))));
        assert!(ElementParams::transmon(0.2, 10.0).with_keep(1).validate().is_err());
        assert!(build_transmon(&ElementParams::fluxonium(1.0, 4.0, 1.0)).is_err());
    }

    #[test]
    fn tune_hits_target() {
        let p = ElementParams::transmon(0.25, 10.0).with_keep(2);
        let tuned = tune_e_j(&p, 4.0, 1.0, 60.0).unwrap();
        let f = build(&tuned).unwrap().frequencies[1];
        assert!((f - 4.0).abs() < 1e-9);
    }
}
