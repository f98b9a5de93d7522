//! Coupled circuits `H = Σ H_i + Σ g n_a n_b` in the truncated product basis.
//!
//! [`diagonalize`] never forms the dense complex matrix. The Hamiltonian is
//! assembled as a sparse list, rotated by a diagonal phase gauge into a real
//! symmetric matrix whenever one exists, split into the connected components
//! of its sparsity graph (parity sectors, typically), and each block is
//! diagonalized densely.

use std::collections::{BTreeMap, VecDeque};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::circuit::{sorted_eigh, ElementSpectrum};
use crate::error::{Error, Result};
use crate::label::BareLabel;

/// Default cap on the product-space dimension.
pub const DEFAULT_DIM_CAP: usize = 16_000;
/// Default minimum `|<bare|dressed>|^2` accepted by label assignment.
pub const DEFAULT_MIN_OVERLAP: f64 = 0.5;
/// Overlaps within this of `min_overlap` still count as ambiguous, so that an
/// exactly resonant pair (overlap 1/2 up to rounding) is always rejected.
const OVERLAP_SLACK: f64 = 1e-9;
const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    pub a: usize,
    pub b: usize,
    /// Coupling strength in GHz.
    pub g: f64,
}

#[derive(Clone, Debug)]
pub struct CompositeSpec {
    pub name: String,
    pub elements: Vec<ElementSpectrum>,
    pub couplings: Vec<Coupling>,
    pub dim_cap: usize,
}

impl CompositeSpec {
    pub fn new(name: impl Into<String>, elements: Vec<ElementSpectrum>) -> Self {
        Self {
            name: name.into(),
            elements,
            couplings: Vec::new(),
            dim_cap: DEFAULT_DIM_CAP,
        }
    }

    pub fn couple(mut self, a: usize, b: usize, g: f64) -> Self {
        self.couplings.push(Coupling { a, b, g });
        self
    }

    pub fn with_cap(mut self, dim_cap: usize) -> Self {
        self.dim_cap = dim_cap;
        self
    }

    pub fn dims(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.levels()).collect()
    }

    pub fn dim(&self) -> usize {
        self.dims().iter().product()
    }

    /// Same circuit with every coupling multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        for c in &mut out.couplings {
            c.g *= s;
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::InvalidParams(format!("{}: no elements", self.name)));
        }
        for c in &self.couplings {
            if c.a >= self.elements.len() || c.b >= self.elements.len() || c.a == c.b {
                return Err(Error::InvalidParams(format!(
                    "{}: invalid coupling ({}, {}) for {} elements",
                    self.name,
                    c.a,
                    c.b,
                    self.elements.len()
                )));
            }
            if !c.g.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "{}: non-finite coupling ({}, {})",
                    self.name, c.a, c.b
                )));
            }
        }
        let dims = self.dims();
        let dim = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .unwrap_or(usize::MAX);
        if dim > self.dim_cap {
            return Err(Error::Sizing {
                dim,
                cap: self.dim_cap,
                truncations: dims,
            });
        }
        Ok(())
    }
}

/// Upper-and-lower sparse entries of the composite Hamiltonian, merged and sorted.
struct Sparse {
    dim: usize,
    diag: Vec<f64>,
    off: Vec<(usize, usize, C64)>,
}

fn assemble(spec: &CompositeSpec) -> Result<Sparse> {
    spec.validate()?;
    let dims = spec.dims();
    let dim: usize = dims.iter().product();
    let mut strides = vec![1usize; dims.len()];
    for e in (0..dims.len().saturating_sub(1)).rev() {
        strides[e] = strides[e + 1] * dims[e + 1];
    }
    let level = |idx: usize, e: usize| (idx / strides[e]) % dims[e];

    let mut diag = vec![0.0; dim];
    for (idx, d) in diag.iter_mut().enumerate() {
        *d = spec
            .elements
            .iter()
            .enumerate()
            .map(|(e, el)| el.frequencies[level(idx, e)])
            .sum();
    }

    let nonzero_rows = |el: &ElementSpectrum| -> Vec<Vec<(usize, C64)>> {
        (0..el.levels())
            .map(|i| {
                (0..el.levels())
                    .filter_map(|j| {
                        let v = el.n_elems[(i, j)];
                        (v != C64::new(0.0, 0.0)).then_some((j, v))
                    })
                    .collect()
            })
            .collect()
    };

    let mut off = Vec::new();
    for c in &spec.couplings {
        if c.g == 0.0 {
            continue;
        }
        let rows_a = nonzero_rows(&spec.elements[c.a]);
        let rows_b = nonzero_rows(&spec.elements[c.b]);
        for idx in 0..dim {
            let (la, lb) = (level(idx, c.a), level(idx, c.b));
            for &(ja, va) in &rows_a[la] {
                for &(jb, vb) in &rows_b[lb] {
                    let col = idx + ja * strides[c.a] + jb * strides[c.b]
                        - la * strides[c.a]
                        - lb * strides[c.b];
                    let v = va * vb * c.g;
                    if col == idx {
                        diag[idx] += v.re;
                    } else {
                        off.push((idx, col, v));
                    }
                }
            }
        }
    }
    off.sort_by_key(|&(r, c, _)| (r, c));
    let mut merged: Vec<(usize, usize, C64)> = Vec::with_capacity(off.len());
    for (r, c, v) in off {
        match merged.last_mut() {
            Some(last) if last.0 == r && last.1 == c => last.2 += v,
            _ => merged.push((r, c, v)),
        }
    }
    merged.retain(|e| e.2 != C64::new(0.0, 0.0));
    Ok(Sparse {
        dim,
        diag,
        off: merged,
    })
}

/// Dense composite Hamiltonian (GHz) in the row-major product basis.
pub fn compose(spec: &CompositeSpec) -> Result<DMatrix<C64>> {
    let s = assemble(spec)?;
    let mut h = DMatrix::<C64>::zeros(s.dim, s.dim);
    for (i, d) in s.diag.iter().enumerate() {
        h[(i, i)] = C64::new(*d, 0.0);
    }
    for &(r, c, v) in &s.off {
        h[(r, c)] += v;
    }
    Ok(h)
}

#[derive(Clone, Debug)]
struct Block {
    /// Product-basis indices spanned by the block, ascending.
    indices: Vec<usize>,
    /// Eigenvectors in the block's gauged basis (real gauge) or complex basis.
    vecs: BlockVecs,
}

#[derive(Clone, Debug)]
enum BlockVecs {
    Real(DMatrix<f64>),
    Complex(DMatrix<C64>),
}

impl BlockVecs {
    fn get(&self, i: usize, k: usize) -> C64 {
        match self {
            BlockVecs::Real(m) => C64::new(m[(i, k)], 0.0),
            BlockVecs::Complex(m) => m[(i, k)],
        }
    }
}

/// Exact eigensystem of a composite circuit with its bare-label assignment.
#[derive(Clone, Debug)]
pub struct DressedSpectrum {
    /// Dressed energies relative to the dressed ground state, GHz, ascending.
    pub frequencies: Vec<f64>,
    pub dims: Vec<usize>,
    pub label_of: BTreeMap<BareLabel, usize>,
    pub overlap_of: BTreeMap<BareLabel, f64>,
    ground_energy: f64,
    blocks: Vec<Block>,
    /// Per basis state: gauge phase and (block, row within block).
    basis: Vec<(C64, usize, usize)>,
    /// Per dressed state: (block, column within block, phase fixing the gauge).
    dressed: Vec<(usize, usize, C64)>,
}

impl DressedSpectrum {
    pub fn dim(&self) -> usize {
        self.frequencies.len()
    }

    /// Absolute lowest eigenvalue in GHz (before the ground-state offset).
    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    /// Amplitude `<bare|dressed>`.
    pub fn amplitude(&self, bare: usize, dressed: usize) -> C64 {
        let (phase, b_blk, row) = self.basis[bare];
        let (d_blk, col, fix) = self.dressed[dressed];
        if b_blk != d_blk {
            return C64::new(0.0, 0.0);
        }
        phase * self.blocks[b_blk].vecs.get(row, col) * fix
    }

    /// Dressed eigenvector in the bare product basis.
    pub fn eigvec(&self, dressed: usize) -> DVector<C64> {
        let (blk, col, fix) = self.dressed[dressed];
        let mut v = DVector::<C64>::zeros(self.dim());
        for (row, &idx) in self.blocks[blk].indices.iter().enumerate() {
            v[idx] = self.basis[idx].0 * self.blocks[blk].vecs.get(row, col) * fix;
        }
        v
    }

    /// All eigenvectors as dense columns. Allocates `dim^2` complex numbers.
    pub fn eigvecs(&self) -> DMatrix<C64> {
        let mut m = DMatrix::<C64>::zeros(self.dim(), self.dim());
        for k in 0..self.dim() {
            m.set_column(k, &self.eigvec(k));
        }
        m
    }

    pub fn overlap(&self, bare: &BareLabel, dressed: usize) -> Result<f64> {
        Ok(self.amplitude(bare.index(&self.dims)?, dressed).norm_sqr())
    }

    /// Overlaps of `bare` with every dressed state sharing its block, as
    /// `(dressed index, overlap)`.
    fn candidates(&self, bare: usize) -> Vec<(usize, f64)> {
        let (_, blk, row) = self.basis[bare];
        self.dressed
            .iter()
            .enumerate()
            .filter(|(_, d)| d.0 == blk)
            .map(|(k, d)| (k, self.blocks[blk].vecs.get(row, d.1).norm_sqr()))
            .collect()
    }

    /// Frequency of the dressed state assigned to `label`.
    pub fn frequency_of(&self, label: &BareLabel) -> Option<f64> {
        self.label_of.get(label).map(|&k| self.frequencies[k])
    }

    /// Assigns labels (see [`assign_labels`]) and returns their frequencies in order.
    pub fn labeled_frequencies(&mut self, labels: &[BareLabel], min_overlap: f64) -> Result<Vec<f64>> {
        let assigned = assign_labels(self, labels, min_overlap)?;
        *self = assigned;
        Ok(labels
            .iter()
            .map(|l| self.frequencies[self.label_of[l]])
            .collect())
    }
}

/// Full eigendecomposition of the composite Hamiltonian.
pub fn diagonalize(spec: &CompositeSpec) -> Result<DressedSpectrum> {
    let s = assemble(spec)?;
    let dim = s.dim;

    let mut adjacency: Vec<Vec<(usize, C64)>> = vec![Vec::new(); dim];
    for &(r, c, v) in &s.off {
        adjacency[r].push((c, v));
    }

    // Connected components of the sparsity graph, each with a BFS phase gauge.
    let mut comp = vec![usize::MAX; dim];
    let mut phase = vec![C64::new(1.0, 0.0); dim];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for root in 0..dim {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![root];
        comp[root] = id;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for &(j, v) in &adjacency[i] {
                if comp[j] == usize::MAX {
                    comp[j] = id;
                    // Makes conj(u_i) H_ij u_j = |H_ij|.
                    phase[j] = phase[i] * v.conj() / v.norm();
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }

    let mut local = vec![0usize; dim];
    for members in &components {
        for (row, &idx) in members.iter().enumerate() {
            local[idx] = row;
        }
    }

    let mut blocks = Vec::with_capacity(components.len());
    let mut levels: Vec<(f64, usize, usize)> = Vec::with_capacity(dim);
    for (bi, members) in components.into_iter().enumerate() {
        let n = members.len();
        let gauged = |i: usize, j: usize, v: C64| phase[i].conj() * v * phase[j];
        let scale = members
            .iter()
            .map(|&i| s.diag[i].abs())
            .fold(1.0, f64::max);
        let is_real = members.iter().all(|&i| {
            adjacency[i]
                .iter()
                .all(|&(j, v)| gauged(i, j, v).im.abs() <= 1e-12 * scale)
        });
        let (energies, vecs) = if is_real {
            let mut h = DMatrix::<f64>::zeros(n, n);
            for &i in &members {
                h[(local[i], local[i])] = s.diag[i];
                for &(j, v) in &adjacency[i] {
                    h[(local[i], local[j])] = gauged(i, j, v).re;
                }
            }
            let (e, v) = sorted_eigh(h)?;
            (e, BlockVecs::Real(v))
        } else {
            for &i in &members {
                phase[i] = C64::new(1.0, 0.0);
            }
            let mut h = DMatrix::<C64>::zeros(n, n);
            for &i in &members {
                h[(local[i], local[i])] = C64::new(s.diag[i], 0.0);
                for &(j, v) in &adjacency[i] {
                    h[(local[i], local[j])] = v;
                }
            }
            let (e, v) = hermitian_eigh(h)?;
            (e, BlockVecs::Complex(v))
        };
        for (k, e) in energies.into_iter().enumerate() {
            levels.push((e, bi, k));
        }
        blocks.push(Block {
            indices: members,
            vecs,
        });
    }
    levels.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let ground_energy = levels[0].0;
    let basis: Vec<(C64, usize, usize)> = (0..dim)
        .map(|i| (phase[i], comp[i], local[i]))
        .collect();
    let dressed = levels
        .iter()
        .map(|&(_, blk, col)| {
            // Largest-magnitude component made real-positive in the bare basis.
            let block = &blocks[blk];
            let mut best = (0.0, C64::new(1.0, 0.0));
            for (row, &idx) in block.indices.iter().enumerate() {
                let a = phase[idx] * block.vecs.get(row, col);
                if a.norm() > best.0 + 1e-12 {
                    best = (a.norm(), a);
                }
            }
            (blk, col, best.1.conj() / best.0)
        })
        .collect();

    Ok(DressedSpectrum {
        frequencies: levels.iter().map(|l| l.0 - ground_energy).collect(),
        dims: spec.dims(),
        label_of: BTreeMap::new(),
        overlap_of: BTreeMap::new(),
        ground_energy,
        blocks,
        basis,
        dressed,
    })
}

fn hermitian_eigh(h: DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let n = h.nrows();
    let eig = nalgebra::SymmetricEigen::try_new(h, f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigensolver("hermitian eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = DMatrix::<C64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vecs))
}

/// Maps each requested bare label to a dressed state by greedy global
/// assignment in descending overlap, each dressed state used at most once.
///
/// Fails with [`Error::AmbiguousLabel`] if a label's assigned overlap does not
/// exceed `min_overlap`.
pub fn assign_labels(d: &DressedSpectrum, labels: &[BareLabel], min_overlap: f64) -> Result<DressedSpectrum> {
    let (out, weak) = assign_inner(d, labels)?;
    if let Some((label, best, second)) = weak
        .into_iter()
        .find(|(_, best, _)| *best < min_overlap + OVERLAP_SLACK)
    {
        return Err(Error::AmbiguousLabel {
            label,
            best,
            second,
        });
    }
    Ok(out)
}

/// Like [`assign_labels`] without a threshold. Returns, per label, whether
/// its assignment would have been ambiguous at the default threshold.
pub fn assign_labels_lenient(d: &DressedSpectrum, labels: &[BareLabel]) -> Result<(DressedSpectrum, Vec<bool>)> {
    let (out, stats) = assign_inner(d, labels)?;
    let flags = labels
        .iter()
        .map(|l| {
            stats
                .iter()
                .find(|s| &s.0 == l)
                .is_some_and(|s| s.1 < DEFAULT_MIN_OVERLAP + OVERLAP_SLACK)
        })
        .collect();
    Ok((out, flags))
}

/// Returns the updated spectrum and `(label, assigned overlap, runner-up overlap)`.
fn assign_inner(d: &DressedSpectrum, labels: &[BareLabel]) -> Result<(DressedSpectrum, Vec<(BareLabel, f64, f64)>)> {
    let mut unique: Vec<&BareLabel> = Vec::new();
    for l in labels {
        if !unique.contains(&l) {
            unique.push(l);
        }
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    let mut top2 = Vec::with_capacity(unique.len());
    for (li, label) in unique.iter().enumerate() {
        let idx = label.index(&d.dims)?;
        let cands = d.candidates(idx);
        let mut sorted: Vec<f64> = cands.iter().map(|c| c.1).collect();
        sorted.sort_by(|a, b| b.total_cmp(a));
        top2.push((sorted.first().copied().unwrap_or(0.0), sorted.get(1).copied().unwrap_or(0.0)));
        pairs.extend(cands.into_iter().map(|(k, o)| (o, li, k)));
    }
    // Descending overlap; near-ties resolved by lower dressed index.
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.2.cmp(&b.2)).then(a.1.cmp(&b.1)));
    let mut taken_label = vec![None; unique.len()];
    let mut taken_state = std::collections::HashSet::new();
    let free = |p: &(f64, usize, usize), tl: &[Option<(usize, f64)>], ts: &std::collections::HashSet<usize>| {
        tl[p.1].is_none() && !ts.contains(&p.2)
    };
    let mut start = 0;
    while let Some(first) = (start..pairs.len()).find(|&i| free(&pairs[i], &taken_label, &taken_state)) {
        start = first;
        let top = pairs[first].0;
        let (_, li, k) = pairs[first..]
            .iter()
            .take_while(|p| top - p.0 < TIE_TOL)
            .filter(|p| free(p, &taken_label, &taken_state))
            .min_by(|a, b| a.2.cmp(&b.2).then(a.1.cmp(&b.1)))
            .copied()
            .expect("first pair is free");
        let o = pairs.iter().find(|p| p.1 == li && p.2 == k).expect("pair exists").0;
        taken_label[li] = Some((k, o));
        taken_state.insert(k);
    }
    let mut out = d.clone();
    let mut stats = Vec::with_capacity(unique.len());
    for (li, label) in unique.iter().enumerate() {
        let (k, o) = taken_label[li].ok_or_else(|| Error::AmbiguousLabel {
            label: (*label).clone(),
            best: top2[li].0,
            second: top2[li].1,
        })?;
        out.label_of.insert((*label).clone(), k);
        out.overlap_of.insert((*label).clone(), o);
        let second = if (o - top2[li].0).abs() < TIE_TOL {
            top2[li].1
        } else {
            top2[li].0
        };
        stats.push(((*label).clone(), o, second));
    }
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build, ElementParams};
    use crate::label::BareLabel;

    /// Two-level element with `|n_01| = 1` and transition frequency `f`.
    pub(crate) fn qubit(f: f64) -> ElementSpectrum {
        let mut n = DMatrix::<C64>::zeros(2, 2);
        n[(0, 1)] = C64::new(1.0, 0.0);
        n[(1, 0)] = C64::new(1.0, 0.0);
        ElementSpectrum {
            params: ElementParams::transmon(1.0, 1.0).with_keep(2),
            frequencies: vec![0.0, f],
            n_elems: n.clone(),
            phi_elems: n,
            parity: Some(vec![0, 1]),
            basis_used: 2,
        }
    }

    #[test]
    fn two_qubit_matrix_by_hand() {
        let spec = CompositeSpec::new("pair", vec![qubit(5.0), qubit(5.5)]).couple(0, 1, 0.1);
        let h = compose(&spec).unwrap();
        let g = C64::new(0.1, 0.0);
        assert_eq!(h[(1, 2)], g);
        assert_eq!(h[(0, 3)], g);
        assert_eq!(h[(0, 1)], C64::new(0.0, 0.0));
        assert_eq!(h[(3, 3)], C64::new(10.5, 0.0));
    }

    #[test]
    fn resonant_splitting_and_ambiguity() {
        let g = 0.02;
        let spec = CompositeSpec::new("res", vec![qubit(5.0), qubit(5.0)]).couple(0, 1, g);
        let d = diagonalize(&spec).unwrap();
        // |01>,|10> split by 2g; the counter-rotating term shifts both by the same amount.
        let singles: Vec<f64> = d.frequencies[1..3].to_vec();
        assert!((singles[1] - singles[0] - 2.0 * g).abs() < 1e-10);
        let err = assign_labels(&d, &[BareLabel::from([1, 0])], DEFAULT_MIN_OVERLAP).unwrap_err();
        assert!(matches!(err, Error::AmbiguousLabel { .. }));
    }

    #[test]
    fn uncoupled_identity_assignment() {
        let a = build(&ElementParams::transmon(0.25, 12.0).with_keep(3)).unwrap();
        let b = build(&ElementParams::fluxonium(1.0, 4.0, 0.9).with_keep(4)).unwrap();
        let spec = CompositeSpec::new("free", vec![a.clone(), b.clone()]);
        let d = diagonalize(&spec).unwrap();
        let mut sums: Vec<f64> = a
            .frequencies
            .iter()
            .flat_map(|fa| b.frequencies.iter().map(move |fb| fa + fb))
            .collect();
        sums.sort_by(f64::total_cmp);
        for (x, y) in d.frequencies.iter().zip(&sums) {
            assert!((x - y).abs() < 1e-10);
        }
        let labels: Vec<BareLabel> = (0..12).map(|i| BareLabel::from_index(i, &[3, 4])).collect();
        let d = assign_labels(&d, &labels, 0.5).unwrap();
        for l in &labels {
            assert!((d.overlap_of[l] - 1.0).abs() < 1e-12);
            let f = a.frequencies[l.levels()[0]] + b.frequencies[l.levels()[1]];
            assert!((d.frequency_of(l).unwrap() - f).abs() < 1e-10);
        }
    }

    #[test]
    fn sizing_error_lists_truncations() {
        let q = qubit(5.0);
        let spec = CompositeSpec::new("big", vec![q.clone(), q.clone(), q]).with_cap(7);
        match diagonalize(&spec) {
            Err(Error::Sizing { dim, truncations, .. }) => {
                assert_eq!(dim, 8);
                assert_eq!(truncations, vec![2, 2, 2]);
            }
            other => panic!("expected sizing error, got {other:?}"),
        }
    }

    #[test]
    fn bad_coupling_index() {
        let spec = CompositeSpec::new("bad", vec![qubit(5.0)]).couple(0, 0, 0.1);
        assert!(matches!(compose(&spec), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn eigvecs_reconstruct_hamiltonian() {
        let f = build(&ElementParams::fluxonium(1.0, 4.0, 0.9).with_keep(4)).unwrap();
        let t = build(&ElementParams::transmon(0.25, 8.0).with_keep(3)).unwrap();
        let spec = CompositeSpec::new("ft", vec![f.clone(), t, f])
            .couple(0, 1, 0.3)
            .couple(1, 2, 0.2)
            .couple(0, 2, 0.05);
        let h = compose(&spec).unwrap();
        let d = diagonalize(&spec).unwrap();
        let v = d.eigvecs();
        let shifted = DMatrix::from_diagonal(&DVector::from_iterator(
            d.dim(),
            d.frequencies.iter().map(|f| C64::new(f + d.ground_energy(), 0.0)),
        ));
        let defect = (&v * shifted * v.adjoint() - &h).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(defect < 1e-10, "reconstruction defect {defect}");
        let ortho = (v.adjoint() * &v - DMatrix::<C64>::identity(d.dim(), d.dim()))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(ortho < 1e-10);
    }
}
