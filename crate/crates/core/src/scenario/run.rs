//! Scenario execution and result files.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::config::{Config, CqcqSweep, CzzMargin, DrivenQubit, Format, FtfSweep, NnnSweep, ParasiticDrive, Scenario, SquaresSweep};
use super::plot;
use crate::circuit::ElementSpectrum;
use crate::composite::{diagonalize, CompositeSpec};
use crate::dynamics::{parasitic_gate_error, Qubit};
use crate::error::{Error, Result};
use crate::label::BareLabel;
use crate::leakage::{calibrated_cz_pulse, czz_resonance_margin, leakage_map};
use crate::metrics::{
    coupler_pairs, hybridization, hybridization_error, hybridization_nnn, zz_cc_at, zz_cs_cqcq, zz_cs_cqcqc_at, zz_qq,
    CqcqcLayout, Side,
};
use crate::perturbation::{cqcq_zz_diagrams, eval_diagram, zz_cs_analytic, AnalyticZzInputs, CqcqCouplings};
use crate::pulseopt::spectator_sweep;
use crate::sweep::{fmt_f64, Axis, SweepResult};

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// SHA-256 of the config's canonical (key-sorted, compact) JSON form.
pub fn config_hash(config: &Config) -> String {
    let canonical = serde_json::to_string(&config.raw).expect("JSON value serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Runs the scenario and stamps the result metadata.
pub fn execute(config: &Config) -> Result<SweepResult> {
    let start = Instant::now();
    let mut result = match &config.scenario {
        Scenario::FtfSweep(c) => ftf_sweep(c)?,
        Scenario::NnnSweep(c) => nnn_sweep(c)?,
        Scenario::CqcqZz(c) => cqcq_sweep(c, false)?,
        Scenario::AnalyticVsNumeric(c) => cqcq_sweep(c, true)?,
        Scenario::SquaresSweep(c) => squares_sweep(c)?,
        Scenario::SpectatorError(c) => {
            let zetas = c.zeta_cs_ghz.values();
            let taus = c.tau_ns.values();
            spectator_sweep(c.gap_ghz, &zetas, &taus, &c.calibration.options())?
        }
        Scenario::LeakageMap(c) => {
            let cal = calibrated_cz_pulse(c.gap_ghz, c.tau_ns, &c.calibration.options())?;
            let sources = c
                .sources
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<BareLabel>>>()?;
            let mut r = leakage_map(c.gap_ghz, &c.k.values(), &c.delta_ghz.values(), &sources, &cal.pulse)?;
            r.metadata
                .extra
                .insert("calibrated_eps_total".into(), fmt_f64(cal.report.eps_total));
            r
        }
        Scenario::ParasiticDrive(c) => parasitic(c)?,
        Scenario::CzzMargin(c) => czz_margin(c)?,
    };
    result.metadata.scenario = config.envelope.scenario.name().into();
    result.metadata.config_hash = config_hash(config);
    result.metadata.code_version = CODE_VERSION.into();
    result.metadata.wall_time_s = Some(start.elapsed().as_secs_f64());
    if result.points() > 0 && result.failures.len() == result.points() {
        return Err(Error::Eigensolver(format!(
            "every grid point failed; first failure: {}",
            result.failures[0].message
        )));
    }
    Ok(result)
}

/// CSV text with `# key=value` metadata lines ahead of the header row.
pub fn to_csv_with_metadata(r: &SweepResult) -> String {
    let m = &r.metadata;
    let mut out = format!(
        "# scenario={}\n# config_hash={}\n# code_version={}\n",
        m.scenario, m.config_hash, m.code_version
    );
    for (k, v) in &m.extra {
        out.push_str(&format!("# {k}={v}\n"));
    }
    for f in &r.failures {
        out.push_str(&format!("# failed {:?}: {}\n", f.index, f.message.replace('\n', " ")));
    }
    out.push_str(&r.to_csv());
    out
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Directory replacing the directory part of the config's output prefix.
    pub out_dir: Option<PathBuf>,
    /// Forces plots on regardless of the config.
    pub plot: bool,
}

#[derive(Debug)]
pub struct RunOutput {
    pub result: SweepResult,
    pub files: Vec<PathBuf>,
}

pub fn output_prefix(config: &Config, opts: &RunOptions) -> PathBuf {
    let prefix = PathBuf::from(&config.envelope.output);
    match &opts.out_dir {
        Some(dir) => dir.join(prefix.file_name().unwrap_or(prefix.as_os_str())),
        None => prefix,
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Executes the scenario and writes its result (and plots when requested).
pub fn run(config: &Config, opts: &RunOptions) -> Result<RunOutput> {
    let result = execute(config)?;
    let prefix = output_prefix(config, opts);
    if let Some(parent) = prefix.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let (path, text) = match config.envelope.format {
        Format::Csv => (with_suffix(&prefix, ".csv"), to_csv_with_metadata(&result)),
        Format::Json => (with_suffix(&prefix, ".json"), result.to_json()?),
    };
    std::fs::write(&path, text)?;
    let mut files = vec![path];
    if config.envelope.plot || opts.plot {
        files.extend(plot::emit_plots(&result, &prefix)?);
    }
    Ok(RunOutput { result, files })
}

fn degenerate_flag(b: bool) -> f64 {
    f64::from(u8::from(b))
}

/// Detuned qubit pairs `(f0 + df/2, f0 - df/2)`, one per detuning.
fn detuned_pairs(
    q: &super::config::FluxoniumConfig,
    dfs: &[f64],
) -> Result<(ElementSpectrum, Vec<(ElementSpectrum, ElementSpectrum)>)> {
    let base = q.build()?;
    let f0 = base.transition(0, 1);
    let pairs = dfs
        .par_iter()
        .map(|&df| {
            if df == 0.0 {
                Ok((base.clone(), base.clone()))
            } else {
                Ok((q.build_at(f0 + 0.5 * df)?, q.build_at(f0 - 0.5 * df)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((base, pairs))
}

fn ftf_sweep(c: &FtfSweep) -> Result<SweepResult> {
    let gffs = c.g_ff_ghz.values();
    let dfs = c.df_qq_ghz.values();
    let coupler = c.coupler.build()?;
    let (_, pairs) = detuned_pairs(&c.fluxonium, &dfs)?;
    let mut r = SweepResult::new(vec![Axis::new("g_ff", "ghz", gffs.clone()), Axis::new("df_qq", "ghz", dfs)]);
    let n = 3;
    let (left, right) = (BareLabel::excited(n, &[(0, 1)]), BareLabel::excited(n, &[(2, 1)]));
    r.fill(&[("d_hybridization", ""), ("zeta_qq", "ghz"), ("degenerate", "")], |i| {
        let (f1, f2) = &pairs[i[1]];
        let spec = CompositeSpec::new("ftf", vec![f1.clone(), coupler.clone(), f2.clone()])
            .couple(0, 1, c.g_ft_ghz)
            .couple(1, 2, c.g_ft_ghz)
            .couple(0, 2, gffs[i[0]]);
        let d = diagonalize(&spec)?;
        let h = hybridization(&d, &left, &right)?;
        let z = zz_qq(&d, 0, 2)?;
        Ok(vec![h.value, z.value, degenerate_flag(h.degenerate)])
    });
    r.metadata
        .extra
        .insert("coupler_f01_ghz".into(), fmt_f64(coupler.transition(0, 1)));
    Ok(r)
}

fn nnn_sweep(c: &NnnSweep) -> Result<SweepResult> {
    let dfs = c.df_qq_ghz.values();
    let (mid, pairs) = detuned_pairs(&c.fluxonium, &dfs)?;
    let (cl, cr) = (c.coupler_left.build()?, c.coupler_right.build()?);
    let mut r = SweepResult::new(vec![Axis::new("df_qq", "ghz", dfs)]);
    r.fill(&[("d_prime", ""), ("zeta_qq", "ghz"), ("degenerate", "")], |i| {
        let (q1, q3) = &pairs[i[0]];
        let mut spec = CompositeSpec::new("qcqcq", vec![q1.clone(), cl.clone(), mid.clone(), cr.clone(), q3.clone()]);
        for k in 0..4 {
            spec = spec.couple(k, k + 1, c.g_qc_ghz);
        }
        for e in &c.extra_couplings {
            spec = spec.couple(e.a, e.b, e.g_ghz);
        }
        let d = diagonalize(&spec)?;
        let h = hybridization_nnn(&d)?;
        let z = zz_qq(&d, 0, 4)?;
        Ok(vec![h.value, z.value, degenerate_flag(h.degenerate)])
    });
    Ok(r)
}

fn cqcq_sweep(c: &CqcqSweep, analytic: bool) -> Result<SweepResult> {
    let gs = c.g_ghz.values();
    let (q1, q2) = (c.q1.build()?, c.q2.build()?);
    let osc = match &c.oscillator {
        Some(o) => Some((o.element.build()?, o.g_o_ghz)),
        None => None,
    };
    struct Pair {
        alpha: ElementSpectrum,
        beta: ElementSpectrum,
        alpha_type: crate::metrics::CouplerType,
        beta_type: crate::metrics::CouplerType,
    }
    let pairs = c
        .configurations
        .iter()
        .map(|[a, b]| {
            let (a, b) = (c.coupler(a)?, c.coupler(b)?);
            Ok(Pair {
                alpha: a.element.build()?,
                beta: b.element.build()?,
                alpha_type: a.coupler_type,
                beta_type: b.coupler_type,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let couplings_at = |p: &Pair, g: f64| match &c.couplings {
        Some(o) => CqcqCouplings {
            g,
            g1: o.g1_ghz,
            g2: o.g2_ghz,
            g3: o.g3_ghz,
            g_ff: o.g_ff_ghz,
        },
        None => CqcqCouplings::standard(p.alpha_type, p.beta_type, g),
    };
    let labels = c
        .configurations
        .iter()
        .map(|[a, b]| format!("{a}|{b}"))
        .collect();
    let mut r = SweepResult::new(vec![Axis::categorical("configuration", labels), Axis::new("g", "ghz", gs.clone())]);
    let names: &[(&str, &str)] = if analytic {
        &[("zeta_numeric", "ghz"), ("zeta_analytic", "ghz"), ("zeta_diagrams", "ghz")]
    } else {
        &[("zeta_cs", "ghz")]
    };
    r.fill(names, |i| {
        let p = &pairs[i[0]];
        let cp = couplings_at(p, gs[i[1]]);
        let mut spec = cp.spec(&p.alpha, &q1, &p.beta, &q2);
        if let Some((o, g_o)) = &osc {
            spec.elements.push(o.clone());
            spec = spec.couple(0, 4, *g_o).couple(2, 4, *g_o);
        }
        let numeric = zz_cs_cqcq(&diagonalize(&spec)?, p.alpha_type)?.value;
        if !analytic {
            return Ok(vec![numeric]);
        }
        let inputs = AnalyticZzInputs::from_elements(
            p.alpha_type,
            c.connection_sign,
            &p.alpha,
            &q1,
            &p.beta,
            &q2,
            &cp,
            osc.as_ref().map(|(o, g)| (o, *g)),
        )?;
        let closed = zz_cs_analytic(&inputs)?;
        let diagrams = if osc.is_some() {
            f64::NAN
        } else {
            let spectra = [p.alpha.clone(), q1.clone(), p.beta.clone(), q2.clone()];
            cqcq_zz_diagrams(p.alpha_type, &cp)
                .iter()
                .map(|(m, path)| Ok(m * eval_diagram(path, &spectra)?))
                .sum::<Result<f64>>()?
        };
        Ok(vec![numeric, closed, diagrams])
    });
    if analytic {
        for (name, p) in c.configurations.iter().zip(&pairs) {
            let inputs = AnalyticZzInputs::from_elements(
                p.alpha_type,
                c.connection_sign,
                &p.alpha,
                &q1,
                &p.beta,
                &q2,
                &couplings_at(p, 0.0),
                osc.as_ref().map(|(o, g)| (o, *g)),
            )?;
            r.metadata
                .extra
                .insert(format!("root_g_ghz[{}|{}]", name[0], name[1]), fmt_f64(inputs.root_g()?));
        }
    }
    Ok(r)
}

fn squares_sweep(c: &SquaresSweep) -> Result<SweepResult> {
    let deltas = c.delta_cc_ghz.values();
    let (q1, q2) = (c.q1.build()?, c.q2.build()?);
    let left = c.edge_coupler.build()?;
    let mid = c.mid_coupler.build()?;
    let f_edge = left.transition(0, 1);
    let rights = deltas
        .par_iter()
        .map(|&d| {
            if d == 0.0 {
                Ok(left.clone())
            } else {
                c.edge_coupler.build_at(f_edge + d)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let osc = match &c.oscillator {
        Some(o) => Some((o.element.build()?, o.g_o_ghz)),
        None => None,
    };
    let variants: Vec<String> = if osc.is_some() {
        vec!["without".into(), "with".into()]
    } else {
        vec!["without".into()]
    };
    let mut r = SweepResult::new(vec![
        Axis::categorical("oscillator", variants),
        Axis::new("delta_cc", "ghz", deltas),
    ]);
    let at = CqcqcLayout::default();
    r.fill(
        &[
            ("zeta_cs_left", "ghz"),
            ("zeta_cs_right", "ghz"),
            ("zeta_cc", "ghz"),
            ("d_target_target", ""),
            ("d_target_side", ""),
            ("d_side_target", ""),
        ],
        |i| {
            let mut spec = CompositeSpec::new(
                "cqcqc",
                vec![left.clone(), q1.clone(), mid.clone(), q2.clone(), rights[i[1]].clone()],
            );
            for k in 0..4 {
                spec = spec.couple(k, k + 1, c.g_qc_ghz);
            }
            for e in &c.extra_couplings {
                spec = spec.couple(e.a, e.b, e.g_ghz);
            }
            if i[0] == 1 {
                let (o, g_o) = osc.as_ref().expect("oscillator variant");
                spec.elements.push(o.clone());
                spec = spec.couple(at.c_left, 5, *g_o).couple(at.c_right, 5, *g_o);
            }
            let d = diagonalize(&spec)?;
            let n = d.dims.len();
            let mut out = vec![
                zz_cs_cqcqc_at(&d, at, Side::Left, c.edge_type)?.value,
                zz_cs_cqcqc_at(&d, at, Side::Right, c.edge_type)?.value,
                zz_cc_at(&d, at, c.edge_type)?.value,
            ];
            for (a, b) in coupler_pairs(n, at, c.edge_type) {
                out.push(hybridization(&d, &a, &b)?.value);
            }
            Ok(out)
        },
    );
    r.metadata.extra.insert("edge_f01_ghz".into(), fmt_f64(f_edge));
    Ok(r)
}

fn parasitic(c: &ParasiticDrive) -> Result<SweepResult> {
    let ds = c.d_hybridization.values();
    let which = match c.qubit {
        DrivenQubit::A => Qubit::A,
        DrivenQubit::B => Qubit::B,
    };
    let mut r = SweepResult::new(vec![Axis::new("d_hybridization", "", ds.clone())]);
    r.fill(&[("eps_total", ""), ("eps_estimate", ""), ("ratio", "")], |i| {
        let d = ds[i[0]];
        let eps = parasitic_gate_error(d, which, c.theta_rad)?.eps_total;
        let est = hybridization_error(d);
        Ok(vec![eps, est, if est > 0.0 { eps / est } else { f64::NAN }])
    });
    Ok(r)
}

fn czz_margin(c: &CzzMargin) -> Result<SweepResult> {
    let q = c.fluxonium.build()?;
    let (f03, f12) = (q.transition(0, 3), q.transition(1, 2));
    let (c1u, c0l) = (c.f_c1u_ghz.values(), c.f_c0l_ghz.values());
    let mut r = SweepResult::new(vec![Axis::new("f_c1u", "ghz", c1u.clone()), Axis::new("f_c0l", "ghz", c0l.clone())]);
    r.fill(&[("margin", "ghz")], |i| Ok(vec![czz_resonance_margin(c1u[i[0]], f03, c0l[i[1]], f12)?]));
    r.metadata.extra.insert("f_q03_ghz".into(), fmt_f64(f03));
    r.metadata.extra.insert("f_q12_ghz".into(), fmt_f64(f12));
    Ok(r)
}
