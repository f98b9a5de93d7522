//! Perturbative coupler-spectator ZZ: closed-form estimate and explicit
//! virtual-transition diagrams evaluated with bare energies.

use serde::{Deserialize, Serialize};

use crate::circuit::ElementSpectrum;
use crate::composite::{diagonalize, CompositeSpec};
use crate::error::{Error, Result};
use crate::label::BareLabel;
use crate::metrics::CouplerType;

/// Denominators closer to zero than this (GHz) are rejected.
pub const RESONANCE_GUARD_GHZ: f64 = 1e-6;
/// Charge matrix elements below this magnitude count as forbidden hops.
pub const FORBIDDEN_N: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticZzInputs {
    pub coupler: CouplerType,
    /// `+1` for symmetric, `-1` for antisymmetric connections; multiplies the
    /// qubit-mediated and oscillator terms.
    pub connection_sign: f64,
    pub f_c_alpha: f64,
    pub f_c_beta: f64,
    /// Transition `p` of `Q_2` (`1->2` for C0, `0->3` for C1).
    pub f_p: f64,
    /// Transition `t` of `Q_1` (`0->3` for C0, `1->2` for C1).
    pub f_t: f64,
    pub n_c_alpha: f64,
    pub n_c_beta: f64,
    pub n_p: f64,
    pub n_t: f64,
    pub n_o: f64,
    pub g: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g_o: f64,
    pub f_o: Option<f64>,
}

/// Coupling strengths of the C-Q-C-Q circuit (GHz).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CqcqCouplings {
    /// `C_alpha`–`C_beta`.
    pub g: f64,
    /// `C_alpha`–`Q_1`.
    pub g1: f64,
    /// `Q_1`–`C_beta`.
    pub g2: f64,
    /// `C_beta`–`Q_2`.
    pub g3: f64,
    /// `Q_1`–`Q_2`.
    pub g_ff: f64,
}

impl CqcqCouplings {
    /// Couplings for the given coupler types with the direct coupling `g`.
    pub fn standard(alpha: CouplerType, beta: CouplerType, g: f64) -> Self {
        let (g23, g_ff) = match beta {
            CouplerType::C0 => (0.300, 0.080),
            CouplerType::C1 => (0.200, 0.040),
        };
        let g1 = match alpha {
            CouplerType::C0 => 0.300,
            CouplerType::C1 => 0.200,
        };
        Self {
            g,
            g1,
            g2: g23,
            g3: g23,
            g_ff,
        }
    }

    /// C-Q-C-Q composite in element order `C_alpha, Q_1, C_beta, Q_2`.
    pub fn spec(&self, c_alpha: &ElementSpectrum, q1: &ElementSpectrum, c_beta: &ElementSpectrum, q2: &ElementSpectrum) -> CompositeSpec {
        CompositeSpec::new(
            "cqcq",
            vec![c_alpha.clone(), q1.clone(), c_beta.clone(), q2.clone()],
        )
        .couple(0, 1, self.g1)
        .couple(1, 2, self.g2)
        .couple(2, 3, self.g3)
        .couple(0, 2, self.g)
        .couple(1, 3, self.g_ff)
    }
}

impl AnalyticZzInputs {
    /// Reads the frequencies and matrix elements the formula needs from
    /// element spectra. `oscillator` is `(spectrum, g_O)`.
    pub fn from_elements(
        coupler: CouplerType,
        connection_sign: f64,
        c_alpha: &ElementSpectrum,
        q1: &ElementSpectrum,
        c_beta: &ElementSpectrum,
        q2: &ElementSpectrum,
        couplings: &CqcqCouplings,
        oscillator: Option<(&ElementSpectrum, f64)>,
    ) -> Result<Self> {
        let need = |e: &ElementSpectrum, lvl: usize, name: &str| {
            if e.levels() <= lvl {
                Err(Error::InvalidParams(format!(
                    "{name} keeps {} levels, level {lvl} required",
                    e.levels()
                )))
            } else {
                Ok(())
            }
        };
        need(q1, 3, "Q_1")?;
        need(q2, 3, "Q_2")?;
        let (p, t) = match coupler {
            CouplerType::C0 => ((1, 2), (0, 3)),
            CouplerType::C1 => ((0, 3), (1, 2)),
        };
        Ok(Self {
            coupler,
            connection_sign,
            f_c_alpha: c_alpha.transition(0, 1),
            f_c_beta: c_beta.transition(0, 1),
            f_p: q2.transition(p.0, p.1),
            f_t: q1.transition(t.0, t.1),
            n_c_alpha: c_alpha.n_abs(0, 1),
            n_c_beta: c_beta.n_abs(0, 1),
            n_p: q2.n_abs(p.0, p.1),
            n_t: q1.n_abs(t.0, t.1),
            n_o: oscillator.map_or(0.0, |(o, _)| o.n_abs(0, 1)),
            g: couplings.g,
            g1: couplings.g1.abs(),
            g2: couplings.g2.abs(),
            g3: couplings.g3.abs(),
            g_o: oscillator.map_or(0.0, |(_, g_o)| g_o),
            f_o: oscillator.map(|(o, _)| o.transition(0, 1)),
        })
    }

    fn validate(&self) -> Result<()> {
        let freqs = [self.f_c_alpha, self.f_c_beta, self.f_p, self.f_t];
        if freqs.iter().any(|f| !(f.is_finite() && *f > 0.0)) || self.f_o.is_some_and(|f| !(f > 0.0)) {
            return Err(Error::InvalidParams(format!(
                "analytic ZZ requires positive frequencies, got {self:?}"
            )));
        }
        if self.connection_sign.abs() != 1.0 {
            return Err(Error::InvalidParams(format!(
                "connection_sign must be +1 or -1, got {}",
                self.connection_sign
            )));
        }
        Ok(())
    }

    /// Value of the additive bracket `g ± qubit term ± oscillator term`.
    pub fn bracket(&self) -> Result<f64> {
        let d_t = guarded("f_C_alpha - f_t(Q_1)", self.f_c_alpha - self.f_t)?;
        let mut b = self.g + self.connection_sign * self.g1 * self.g2 * self.n_t.powi(2) / d_t;
        if let Some(f_o) = self.f_o {
            let d_o = guarded("f_C_alpha - f_O", self.f_c_alpha - f_o)?;
            b += self.connection_sign * self.g_o.powi(2) * self.n_o.powi(2) / d_o;
        }
        Ok(b)
    }

    /// Direct coupling `g` that makes the bracket vanish.
    pub fn root_g(&self) -> Result<f64> {
        Ok(self.g - self.bracket()?)
    }
}

fn guarded(pair: &str, value: f64) -> Result<f64> {
    if value.abs() <= RESONANCE_GUARD_GHZ {
        Err(Error::SingularDenominator {
            pair: pair.to_string(),
            value,
        })
    } else {
        Ok(value)
    }
}

/// Closed-form coupler-spectator ZZ rate in GHz.
pub fn zz_cs_analytic(inp: &AnalyticZzInputs) -> Result<f64> {
    inp.validate()?;
    let d_p = guarded("f_C_alpha - f_p(Q_2)", inp.f_c_alpha - inp.f_p)?;
    let d_ab = guarded("f_C_alpha - f_C_beta", inp.f_c_alpha - inp.f_c_beta)?;
    let sign = match inp.coupler {
        CouplerType::C0 => 1.0,
        CouplerType::C1 => -1.0,
    };
    let spectator = (inp.g3 * inp.n_p * inp.n_c_beta).powi(2) / d_p;
    let couplers = (inp.n_c_alpha * inp.n_c_beta / d_ab).powi(2);
    Ok(sign * spectator * couplers * inp.bracket()?.powi(2))
}

/// One photon transfer `g n_a n_b`: element `a` goes `a_levels.0 -> a_levels.1`
/// while element `b` goes `b_levels.0 -> b_levels.1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hop {
    pub a: usize,
    pub b: usize,
    pub a_levels: (usize, usize),
    pub b_levels: (usize, usize),
    pub g: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramPath {
    pub base: BareLabel,
    pub hops: Vec<Hop>,
}

impl DiagramPath {
    /// Same diagram with every coupling multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        for h in &mut out.hops {
            h.g *= s;
        }
        out
    }
}

/// Product of hop amplitudes over the product of `E_base - E_intermediate`.
pub fn eval_diagram(path: &DiagramPath, spectra: &[ElementSpectrum]) -> Result<f64> {
    if path.base.len() != spectra.len() {
        return Err(Error::InvalidParams(format!(
            "base state {} has {} entries for {} elements",
            path.base,
            path.base.len(),
            spectra.len()
        )));
    }
    if path.hops.is_empty() {
        return Err(Error::InvalidParams("diagram without hops".into()));
    }
    let energy = |state: &[usize]| -> f64 {
        state
            .iter()
            .zip(spectra)
            .map(|(&l, s)| s.frequencies[l])
            .sum()
    };
    let mut state = path.base.levels().to_vec();
    let dims: Vec<usize> = spectra.iter().map(|s| s.levels()).collect();
    let e_base = energy(&state);
    let mut amplitude = num_complex::Complex64::new(1.0, 0.0);
    let mut denominator = 1.0;
    for (step, hop) in path.hops.iter().enumerate() {
        for (el, (from, to)) in [(hop.a, hop.a_levels), (hop.b, hop.b_levels)] {
            if el >= spectra.len() || hop.a == hop.b || to >= dims[el] {
                return Err(Error::InvalidParams(format!("hop {step} is invalid: {hop:?}")));
            }
            if state[el] != from {
                return Err(Error::InvalidParams(format!(
                    "hop {step} expects element {el} in |{from}>, found |{}>",
                    state[el]
                )));
            }
            let n = spectra[el].n(to, from);
            if n.norm() < FORBIDDEN_N {
                return Err(Error::ForbiddenTransition {
                    element: el,
                    from,
                    to,
                });
            }
            amplitude *= n;
            state[el] = to;
        }
        amplitude *= hop.g;
        if step + 1 < path.hops.len() {
            let label = BareLabel::new(state.clone());
            denominator *= guarded(&format!("{} - {}", path.base, label), e_base - energy(&state))?;
        }
    }
    if state != path.base.levels() {
        return Err(Error::InvalidParams(format!(
            "diagram does not return to {} (ends in {})",
            path.base,
            BareLabel::new(state)
        )));
    }
    Ok(amplitude.re / denominator)
}

/// The dominant coupler-spectator diagrams in C-Q-C-Q element order, each
/// with its signed multiplicity: direct path, mixed path (both directions),
/// and the path through `Q_1` both ways.
pub fn cqcq_zz_diagrams(coupler: CouplerType, c: &CqcqCouplings) -> Vec<(f64, DiagramPath)> {
    let (alpha, q1, beta, q2) = (0, 1, 2, 3);
    let (sign, q1_lo, q1_hi, q2_lo, q2_hi, base) = match coupler {
        // Shift of |1001>: Q_2 absorbs via 1->2, Q_1 mediates through |3>.
        CouplerType::C0 => (1.0, 0, 3, 1, 2, [1, 0, 0, 1]),
        // Minus the shift of |1100>: Q_2 absorbs via 0->3, Q_1 mediates through |2>.
        CouplerType::C1 => (-1.0, 1, 2, 0, 3, [1, 1, 0, 0]),
    };
    let hop = |a, b, a_levels, b_levels, g| Hop {
        a,
        b,
        a_levels,
        b_levels,
        g,
    };
    let direct_out = hop(alpha, beta, (1, 0), (0, 1), c.g);
    let direct_back = hop(alpha, beta, (0, 1), (1, 0), c.g);
    let via_q1_out = [
        hop(alpha, q1, (1, 0), (q1_lo, q1_hi), c.g1),
        hop(q1, beta, (q1_hi, q1_lo), (0, 1), c.g2),
    ];
    let via_q1_back = [
        hop(q1, beta, (q1_lo, q1_hi), (1, 0), c.g2),
        hop(alpha, q1, (0, 1), (q1_hi, q1_lo), c.g1),
    ];
    let spectator = [
        hop(beta, q2, (1, 0), (q2_lo, q2_hi), c.g3),
        hop(beta, q2, (0, 1), (q2_hi, q2_lo), c.g3),
    ];
    let path = |out: &[Hop], back: &[Hop]| DiagramPath {
        base: BareLabel::from(base),
        hops: out
            .iter()
            .chain(spectator.iter())
            .chain(back.iter())
            .cloned()
            .collect(),
    };
    vec![
        (sign, path(&[direct_out.clone()], &[direct_back.clone()])),
        (2.0 * sign, path(&via_q1_out, &[direct_back])),
        (sign, path(&via_q1_out, &via_q1_back)),
    ]
}

/// Copy of `spec` with every coupling touching `element` negated.
pub fn negate_element(spec: &CompositeSpec, element: usize) -> CompositeSpec {
    let mut out = spec.clone();
    for c in &mut out.couplings {
        if c.a == element || c.b == element {
            c.g = -c.g;
        }
    }
    out
}

/// Whether negating all couplings of `element` leaves the spectrum unchanged to 1e-9 GHz.
pub fn sign_transform_check(spec: &CompositeSpec, element: usize) -> Result<bool> {
    same_spectrum(spec, &negate_element(spec, element))
}

/// Whether two specs have identical dressed spectra to 1e-9 GHz.
pub fn same_spectrum(a: &CompositeSpec, b: &CompositeSpec) -> Result<bool> {
    let da = diagonalize(a)?;
    let db = diagonalize(b)?;
    Ok(da.dim() == db.dim()
        && (da.ground_energy() - db.ground_energy()).abs() < 1e-9
        && da
            .frequencies
            .iter()
            .zip(&db.frequencies)
            .all(|(x, y)| (x - y).abs() < 1e-9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build, tune_e_j, ElementParams};

    fn inputs(coupler: CouplerType) -> AnalyticZzInputs {
        AnalyticZzInputs {
            coupler,
            connection_sign: 1.0,
            f_c_alpha: 4.2,
            f_c_beta: 3.0,
            f_p: 2.93,
            f_t: 6.38,
            n_c_alpha: 1.1,
            n_c_beta: 0.95,
            n_p: 0.57,
            n_t: 0.39,
            n_o: 0.0,
            g: 0.05,
            g1: 0.3,
            g2: 0.3,
            g3: 0.3,
            g_o: 0.0,
            f_o: None,
        }
    }

    #[test]
    fn bracket_root_gives_zero() {
        let mut inp = inputs(CouplerType::C0);
        inp.g = inp.root_g().unwrap();
        assert!(zz_cs_analytic(&inp).unwrap().abs() < 1e-20);
    }

    #[test]
    fn coupler_type_flips_sign() {
        let a = zz_cs_analytic(&inputs(CouplerType::C0)).unwrap();
        let b = zz_cs_analytic(&inputs(CouplerType::C1)).unwrap();
        assert!(a != 0.0);
        assert_eq!(a, -b);
    }

    #[test]
    fn resonance_guard() {
        let mut inp = inputs(CouplerType::C0);
        inp.f_c_beta = inp.f_c_alpha + 5e-7;
        match zz_cs_analytic(&inp) {
            Err(Error::SingularDenominator { pair, .. }) => assert!(pair.contains("C_beta")),
            other => panic!("expected singular denominator, got {other:?}"),
        }
    }

    #[test]
    fn hand_expanded_value() {
        let i = inputs(CouplerType::C0);
        let qubit = 0.3 * 0.3 * 0.39f64.powi(2) / (4.2 - 6.38);
        let expect = (0.3f64 * 0.57 * 0.95).powi(2) / (4.2 - 2.93)
            * (1.1f64 * 0.95 / 1.2).powi(2)
            * (0.05 + qubit).powi(2);
        let got = zz_cs_analytic(&i).unwrap();
        assert!((got - expect).abs() < 1e-15 * expect.abs());
    }

    fn two_level(f: f64, n01: f64) -> ElementSpectrum {
        let mut s = build(&ElementParams::oscillator(1.0, 1.0).with_keep(2)).unwrap();
        s.frequencies = vec![0.0, f];
        s.n_elems[(0, 1)] = n01.into();
        s.n_elems[(1, 0)] = n01.into();
        s
    }

    #[test]
    fn two_hop_dispersive_shift() {
        let spectra = [two_level(5.0, 0.7), two_level(4.6, 1.3)];
        let g = 0.05;
        let path = DiagramPath {
            base: BareLabel::from([1, 0]),
            hops: vec![
                Hop { a: 0, b: 1, a_levels: (1, 0), b_levels: (0, 1), g },
                Hop { a: 0, b: 1, a_levels: (0, 1), b_levels: (1, 0), g },
            ],
        };
        let expect = g * g * 0.49 * 1.69 / 0.4;
        assert!((eval_diagram(&path, &spectra).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn same_parity_hop_is_forbidden() {
        let f = build(&ElementParams::fluxonium(1.0, 4.0, 0.9).with_keep(4)).unwrap();
        let path = DiagramPath {
            base: BareLabel::from([1, 0]),
            hops: vec![
                Hop { a: 0, b: 1, a_levels: (1, 0), b_levels: (0, 2), g: 0.1 },
                Hop { a: 0, b: 1, a_levels: (0, 1), b_levels: (2, 0), g: 0.1 },
            ],
        };
        let err = eval_diagram(&path, &[f.clone(), f]).unwrap_err();
        assert!(matches!(err, Error::ForbiddenTransition { element: 1, from: 0, to: 2 }));
    }

    fn cqcq_elements() -> Vec<ElementSpectrum> {
        let c = |f| {
            let p = ElementParams::transmon(0.25, 8.0).with_keep(3);
            build(&tune_e_j(&p, f, 1.0, 60.0).unwrap()).unwrap()
        };
        let q = build(&ElementParams::fluxonium(1.0, 4.0, 0.9).with_keep(5)).unwrap();
        vec![c(4.2), q.clone(), c(3.0), q]
    }

    #[test]
    fn diagrams_sum_to_closed_form() {
        let els = cqcq_elements();
        for coupler in [CouplerType::C0, CouplerType::C1] {
            let c = CqcqCouplings::standard(CouplerType::C0, CouplerType::C0, 0.07);
            let total: f64 = cqcq_zz_diagrams(coupler, &c)
                .iter()
                .map(|(m, p)| m * eval_diagram(p, &els).unwrap())
                .sum();
            let inp = AnalyticZzInputs::from_elements(coupler, 1.0, &els[0], &els[1], &els[2], &els[3], &c, None).unwrap();
            let closed = zz_cs_analytic(&inp).unwrap();
            assert!((total - closed).abs() < 1e-12 * closed.abs(), "{coupler:?}: {total} vs {closed}");
        }
    }

    #[test]
    fn four_hop_diagram_scales_as_s4() {
        let els = cqcq_elements();
        let c = CqcqCouplings::standard(CouplerType::C0, CouplerType::C0, 0.07);
        let (_, path) = &cqcq_zz_diagrams(CouplerType::C0, &c)[0];
        let base = eval_diagram(path, &els).unwrap();
        let scaled = eval_diagram(&path.scaled(0.3), &els).unwrap();
        assert!((scaled - 0.3f64.powi(4) * base).abs() < 1e-14 * base.abs());
    }

    #[test]
    fn gauge_flip_preserves_spectrum() {
        let els = cqcq_elements();
        let spec = CqcqCouplings::standard(CouplerType::C0, CouplerType::C0, 0.05).spec(&els[0], &els[1], &els[2], &els[3]);
        assert!(sign_transform_check(&spec, 0).unwrap());
        let mut partial = spec.clone();
        partial.couplings[0].g = -partial.couplings[0].g;
        assert!(!same_spectrum(&spec, &partial).unwrap());
    }
}
