//! Static parasitic-interaction metrics evaluated on a [`DressedSpectrum`].
//!
//! ZZ rates are alternating four-point combinations of dressed frequencies;
//! elements not named by a template sit in `|0>`.

use serde::{Deserialize, Serialize};

use crate::composite::{assign_labels, assign_labels_lenient, DressedSpectrum, DEFAULT_MIN_OVERLAP};
use crate::error::Result;
use crate::label::BareLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    ZzQq,
    ZzCs,
    ZzCc,
    Hybridization,
    HybridizationNnn,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricValue {
    pub kind: MetricKind,
    /// GHz for ZZ kinds, dimensionless for hybridization kinds.
    pub value: f64,
    pub labels_used: Vec<BareLabel>,
    /// Set when a hybridization label could not be assigned unambiguously.
    pub degenerate: bool,
}

/// Coupler type: the adjacent-qubit states of an excited coupler are `|x>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub enum CouplerType {
    C0,
    C1,
}

impl CouplerType {
    pub fn digit(self) -> usize {
        match self {
            CouplerType::C0 => 0,
            CouplerType::C1 => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            CouplerType::C0 => CouplerType::C1,
            CouplerType::C1 => CouplerType::C0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Element positions of a C-Q-C-Q circuit (`C_alpha, Q_1, C_beta, Q_2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CqcqLayout {
    pub c_alpha: usize,
    pub q1: usize,
    pub c_beta: usize,
    pub q2: usize,
}

impl Default for CqcqLayout {
    fn default() -> Self {
        Self {
            c_alpha: 0,
            q1: 1,
            c_beta: 2,
            q2: 3,
        }
    }
}

/// Element positions of a C-Q-C-Q-C circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CqcqcLayout {
    pub c_left: usize,
    pub q1: usize,
    pub c_mid: usize,
    pub q2: usize,
    pub c_right: usize,
}

impl Default for CqcqcLayout {
    fn default() -> Self {
        Self {
            c_left: 0,
            q1: 1,
            c_mid: 2,
            q2: 3,
            c_right: 4,
        }
    }
}

fn four_point(d: &DressedSpectrum, kind: MetricKind, labels: [BareLabel; 4]) -> Result<MetricValue> {
    let assigned = assign_labels(d, &labels, DEFAULT_MIN_OVERLAP)?;
    let f = |l: &BareLabel| assigned.frequencies[assigned.label_of[l]];
    let [l11, l01, l10, l00] = &labels;
    Ok(MetricValue {
        kind,
        value: f(l11) - f(l01) - f(l10) + f(l00),
        labels_used: labels.to_vec(),
        degenerate: false,
    })
}

fn label(n: usize, entries: &[(usize, usize)]) -> BareLabel {
    BareLabel::excited(n, entries)
}

/// `f|11> - f|01> - f|10> + f|00>` over elements `a`, `b`.
pub fn zz_qq(d: &DressedSpectrum, a: usize, b: usize) -> Result<MetricValue> {
    let n = d.dims.len();
    four_point(
        d,
        MetricKind::ZzQq,
        [
            label(n, &[(a, 1), (b, 1)]),
            label(n, &[(b, 1)]),
            label(n, &[(a, 1)]),
            BareLabel::ground(n),
        ],
    )
}

/// Coupler-spectator ZZ `f|1x01> - f|0x01> - f|1x00> + f|0x00>` in C-Q-C-Q order.
pub fn zz_cs_cqcq(d: &DressedSpectrum, coupler: CouplerType) -> Result<MetricValue> {
    zz_cs_cqcq_at(d, CqcqLayout::default(), coupler)
}

pub fn zz_cs_cqcq_at(d: &DressedSpectrum, at: CqcqLayout, coupler: CouplerType) -> Result<MetricValue> {
    let n = d.dims.len();
    let x = coupler.digit();
    four_point(
        d,
        MetricKind::ZzCs,
        [
            label(n, &[(at.c_alpha, 1), (at.q1, x), (at.q2, 1)]),
            label(n, &[(at.q1, x), (at.q2, 1)]),
            label(n, &[(at.c_alpha, 1), (at.q1, x)]),
            label(n, &[(at.q1, x)]),
        ],
    )
}

/// Coupler-spectator ZZ of the left or right coupler of a C-Q-C-Q-C chain.
pub fn zz_cs_cqcqc(d: &DressedSpectrum, side: Side, coupler: CouplerType) -> Result<MetricValue> {
    zz_cs_cqcqc_at(d, CqcqcLayout::default(), side, coupler)
}

pub fn zz_cs_cqcqc_at(d: &DressedSpectrum, at: CqcqcLayout, side: Side, coupler: CouplerType) -> Result<MetricValue> {
    let n = d.dims.len();
    let x = coupler.digit();
    let (c, near, far) = match side {
        Side::Left => (at.c_left, at.q1, at.q2),
        Side::Right => (at.c_right, at.q2, at.q1),
    };
    four_point(
        d,
        MetricKind::ZzCs,
        [
            label(n, &[(c, 1), (near, x), (far, 1)]),
            label(n, &[(near, x), (far, 1)]),
            label(n, &[(c, 1), (near, x)]),
            label(n, &[(near, x)]),
        ],
    )
}

/// ZZ between the target transitions of the two edge couplers of a C-Q-C-Q-C chain.
pub fn zz_cc(d: &DressedSpectrum, coupler: CouplerType) -> Result<MetricValue> {
    zz_cc_at(d, CqcqcLayout::default(), coupler)
}

pub fn zz_cc_at(d: &DressedSpectrum, at: CqcqcLayout, coupler: CouplerType) -> Result<MetricValue> {
    let n = d.dims.len();
    let x = coupler.digit();
    let qubits = [(at.q1, x), (at.q2, x)];
    let with = |extra: &[(usize, usize)]| {
        let mut entries = qubits.to_vec();
        entries.extend_from_slice(extra);
        label(n, &entries)
    };
    four_point(
        d,
        MetricKind::ZzCc,
        [
            with(&[(at.c_left, 1), (at.c_right, 1)]),
            with(&[(at.c_right, 1)]),
            with(&[(at.c_left, 1)]),
            with(&[]),
        ],
    )
}

/// `D = |<psi1|psi2>'|^2 / 2 + |<psi2|psi1>'|^2 / 2`.
///
/// Near-degenerate labels do not fail; the best-overlap assignment is used
/// and `degenerate` is set.
pub fn hybridization(d: &DressedSpectrum, bare_1: &BareLabel, bare_2: &BareLabel) -> Result<MetricValue> {
    let (assigned, flags) = assign_labels_lenient(d, &[bare_1.clone(), bare_2.clone()])?;
    let dressed_1 = assigned.label_of[bare_1];
    let dressed_2 = assigned.label_of[bare_2];
    let value = 0.5 * d.overlap(bare_1, dressed_2)? + 0.5 * d.overlap(bare_2, dressed_1)?;
    Ok(MetricValue {
        kind: MetricKind::Hybridization,
        value: value.clamp(0.0, 1.0),
        labels_used: vec![bare_1.clone(), bare_2.clone()],
        degenerate: flags.iter().any(|&f| f),
    })
}

/// Next-nearest-neighbour hybridization of a Q-C-Q-C-Q chain with qubits at 0, 2, 4.
pub fn hybridization_nnn(d: &DressedSpectrum) -> Result<MetricValue> {
    hybridization_nnn_at(d, [0, 2, 4])
}

/// `D' = D(|100>, |001>) / 2 + D(|110>, |011>) / 2` over the three given qubit positions.
pub fn hybridization_nnn_at(d: &DressedSpectrum, qubits: [usize; 3]) -> Result<MetricValue> {
    let n = d.dims.len();
    let [left, mid, right] = qubits;
    let low = hybridization(d, &label(n, &[(left, 1)]), &label(n, &[(right, 1)]))?;
    let high = hybridization(
        d,
        &label(n, &[(left, 1), (mid, 1)]),
        &label(n, &[(mid, 1), (right, 1)]),
    )?;
    let mut labels_used = low.labels_used;
    labels_used.extend(high.labels_used);
    Ok(MetricValue {
        kind: MetricKind::HybridizationNnn,
        value: 0.5 * low.value + 0.5 * high.value,
        labels_used,
        degenerate: low.degenerate || high.degenerate,
    })
}

/// The three coupler-state pairs `(target-target, target-side, side-target)`
/// of a C-Q-C-Q-C chain.
pub fn coupler_pairs(n: usize, at: CqcqcLayout, coupler: CouplerType) -> [(BareLabel, BareLabel); 3] {
    let x = coupler.digit();
    let xb = coupler.flipped().digit();
    let pair = |ql: usize, qr: usize| {
        (
            label(n, &[(at.c_left, 1), (at.q1, ql), (at.q2, qr)]),
            label(n, &[(at.c_right, 1), (at.q1, ql), (at.q2, qr)]),
        )
    };
    [pair(x, x), pair(x, xb), pair(xb, x)]
}

/// Two-qubit error estimate `0.4 D` for a hybridization `D`.
pub fn hybridization_error(d: f64) -> f64 {
    0.4 * d
}
