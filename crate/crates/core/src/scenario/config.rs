//! Scenario configuration files: strict, typed JSON with unit-suffixed keys.
//!
//! A config is an envelope (`scenario`, `output`, `format`, `plot`) around a
//! `parameters` object whose shape depends on the scenario. Validation runs
//! the generated JSON schema first so that every violation is reported with
//! its path, then applies semantic checks serde cannot express.

use std::f64::consts::PI;

use schemars::{JsonSchema, SchemaGenerator};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::circuit::{build, tune_e_j, ElementParams, ElementSpectrum};
use crate::error::{Error, Result};
use crate::label::BareLabel;
use crate::metrics::CouplerType;
use crate::sweep::{linspace, logspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    FtfSweep,
    NnnSweep,
    CqcqZz,
    AnalyticVsNumeric,
    SquaresSweep,
    SpectatorError,
    LeakageMap,
    ParasiticDrive,
    CzzMargin,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 9] = [
        ScenarioKind::FtfSweep,
        ScenarioKind::NnnSweep,
        ScenarioKind::CqcqZz,
        ScenarioKind::AnalyticVsNumeric,
        ScenarioKind::SquaresSweep,
        ScenarioKind::SpectatorError,
        ScenarioKind::LeakageMap,
        ScenarioKind::ParasiticDrive,
        ScenarioKind::CzzMargin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::FtfSweep => "ftf-sweep",
            ScenarioKind::NnnSweep => "nnn-sweep",
            ScenarioKind::CqcqZz => "cqcq-zz",
            ScenarioKind::AnalyticVsNumeric => "analytic-vs-numeric",
            ScenarioKind::SquaresSweep => "squares-sweep",
            ScenarioKind::SpectatorError => "spectator-error",
            ScenarioKind::LeakageMap => "leakage-map",
            ScenarioKind::ParasiticDrive => "parasitic-drive",
            ScenarioKind::CzzMargin => "czz-margin",
        }
    }

    fn parameters_schema(self, g: &mut SchemaGenerator) -> schemars::Schema {
        match self {
            ScenarioKind::FtfSweep => g.subschema_for::<FtfSweep>(),
            ScenarioKind::NnnSweep => g.subschema_for::<NnnSweep>(),
            ScenarioKind::CqcqZz | ScenarioKind::AnalyticVsNumeric => g.subschema_for::<CqcqSweep>(),
            ScenarioKind::SquaresSweep => g.subschema_for::<SquaresSweep>(),
            ScenarioKind::SpectatorError => g.subschema_for::<SpectatorError>(),
            ScenarioKind::LeakageMap => g.subschema_for::<LeakageMap>(),
            ScenarioKind::ParasiticDrive => g.subschema_for::<ParasiticDrive>(),
            ScenarioKind::CzzMargin => g.subschema_for::<CzzMargin>(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// The config file envelope.
#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub scenario: ScenarioKind,
    /// Free-form note carried along with the config.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Output path prefix; the extension follows `format`.
    pub output: String,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub plot: bool,
    /// Scenario-specific parameters.
    pub parameters: Value,
}

/// Explicit values or an evenly spaced range (logarithmic when `log` is set).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(untagged)]
pub enum Grid {
    Values(Vec<f64>),
    Range(RangeSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    #[schemars(range(min = 1))]
    pub num: usize,
    #[serde(default)]
    pub log: bool,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::Values(v) => v.clone(),
            Grid::Range(r) if r.log => logspace(r.start, r.stop, r.num),
            Grid::Range(r) => linspace(r.start, r.stop, r.num),
        }
    }

    fn check(&self, path: &str, errors: &mut Vec<String>) {
        match self {
            Grid::Values(v) if v.is_empty() => errors.push(format!("{path}: grid is empty")),
            Grid::Values(v) if v.iter().any(|x| !x.is_finite()) => {
                errors.push(format!("{path}: grid values must be finite"))
            }
            Grid::Range(r) if r.log && !(r.start > 0.0 && r.stop > 0.0) => {
                errors.push(format!("{path}: logarithmic range needs positive start and stop"))
            }
            _ => {}
        }
    }
}

fn default_phi_ext() -> f64 {
    PI
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct FluxoniumConfig {
    pub e_c_ghz: f64,
    pub e_j_ghz: f64,
    pub e_l_ghz: f64,
    #[serde(default = "default_phi_ext")]
    pub phi_ext_rad: f64,
    /// Retained eigenstates.
    #[schemars(range(min = 2))]
    pub levels: usize,
    /// Harmonic-oscillator basis size before convergence doubling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_dim: Option<usize>,
}

impl FluxoniumConfig {
    pub fn params(&self) -> ElementParams {
        let mut p = ElementParams::fluxonium(self.e_c_ghz, self.e_j_ghz, self.e_l_ghz)
            .with_phi_ext(self.phi_ext_rad)
            .with_keep(self.levels);
        if let Some(b) = self.basis_dim {
            p = p.with_basis(b);
        }
        p
    }

    pub fn build(&self) -> Result<ElementSpectrum> {
        build(&self.params())
    }

    /// Same fluxonium with `E_J` retuned so that `f01` equals `target` GHz.
    pub fn build_at(&self, target: f64) -> Result<ElementSpectrum> {
        let p = tune_e_j(&self.params(), target, 0.2 * self.e_j_ghz, 5.0 * self.e_j_ghz)?;
        build(&p)
    }
}

/// A transmon given either by `e_j_ghz` or by the target `f01_ghz`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TransmonConfig {
    pub e_c_ghz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_j_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f01_ghz: Option<f64>,
    #[schemars(range(min = 2))]
    pub levels: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_dim: Option<usize>,
}

impl TransmonConfig {
    fn base(&self) -> ElementParams {
        let mut p = ElementParams::transmon(self.e_c_ghz, self.e_j_ghz.unwrap_or(10.0)).with_keep(self.levels);
        if let Some(b) = self.basis_dim {
            p = p.with_basis(b);
        }
        p
    }

    pub fn params(&self) -> Result<ElementParams> {
        match (self.e_j_ghz, self.f01_ghz) {
            (Some(_), None) => Ok(self.base()),
            (None, Some(f)) => tune_transmon(&self.base(), f),
            _ => Err(Error::InvalidParams("transmon needs exactly one of e_j_ghz, f01_ghz".into())),
        }
    }

    pub fn build(&self) -> Result<ElementSpectrum> {
        build(&self.params()?)
    }

    /// Same transmon tuned to `f01 = target` GHz.
    pub fn build_at(&self, target: f64) -> Result<ElementSpectrum> {
        build(&tune_transmon(&self.base(), target)?)
    }

    fn check(&self, path: &str, errors: &mut Vec<String>) {
        if self.e_j_ghz.is_some() == self.f01_ghz.is_some() {
            errors.push(format!("{path}: exactly one of e_j_ghz, f01_ghz is required"));
        }
    }
}

fn tune_transmon(p: &ElementParams, f01: f64) -> Result<ElementParams> {
    // f01 ≈ sqrt(8 E_C E_J) - E_C bounds E_J from both sides.
    let guess = (f01 + p.e_c).powi(2) / (8.0 * p.e_c);
    tune_e_j(p, f01, 0.25 * guess, 4.0 * guess)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct OscillatorConfig {
    pub e_c_ghz: f64,
    pub e_l_ghz: f64,
    #[schemars(range(min = 2))]
    pub levels: usize,
}

impl OscillatorConfig {
    pub fn build(&self) -> Result<ElementSpectrum> {
        build(&ElementParams::oscillator(self.e_c_ghz, self.e_l_ghz).with_keep(self.levels))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CouplingConfig {
    pub a: usize,
    pub b: usize,
    pub g_ghz: f64,
}

/// Fluxonium–transmon–fluxonium: `D` and `ζ_qq` over `g_FF` for several qubit detunings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct FtfSweep {
    pub fluxonium: FluxoniumConfig,
    pub coupler: TransmonConfig,
    pub g_ft_ghz: f64,
    pub g_ff_ghz: Grid,
    /// Qubit detunings `f1 - f2`, split symmetrically around the reference qubit.
    pub df_qq_ghz: Grid,
}

/// Q-C-Q-C-Q chain: `D'` and `ζ_qq` of the outer qubits over their detuning.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct NnnSweep {
    pub fluxonium: FluxoniumConfig,
    pub coupler_left: TransmonConfig,
    pub coupler_right: TransmonConfig,
    /// Qubit–coupler coupling of the four nearest-neighbour links.
    pub g_qc_ghz: f64,
    /// Further couplings by element index (`0..5` along the chain).
    #[serde(default)]
    pub extra_couplings: Vec<CouplingConfig>,
    pub df_qq_ghz: Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct NamedCoupler {
    pub name: String,
    #[serde(rename = "type")]
    pub coupler_type: CouplerType,
    pub element: TransmonConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CqcqCouplingsConfig {
    pub g1_ghz: f64,
    pub g2_ghz: f64,
    pub g3_ghz: f64,
    pub g_ff_ghz: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct OscillatorLink {
    pub element: OscillatorConfig,
    /// Coupling of the oscillator to each of the two couplers it joins.
    pub g_o_ghz: f64,
}

/// `C_alpha`–`Q_1`–`C_beta`–`Q_2` over the direct coupler coupling `g`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CqcqSweep {
    pub q1: FluxoniumConfig,
    pub q2: FluxoniumConfig,
    pub couplers: Vec<NamedCoupler>,
    /// Coupler pairs as `[alpha, beta]` names.
    pub configurations: Vec<[String; 2]>,
    /// Overrides the default couplings, which follow the coupler types.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub couplings: Option<CqcqCouplingsConfig>,
    /// `+1` symmetric, `-1` antisymmetric connection (analytic formula only).
    #[serde(default = "one")]
    pub connection_sign: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator: Option<OscillatorLink>,
    pub g_ghz: Grid,
}

fn one() -> f64 {
    1.0
}

/// C-Q-C-Q-C chain with identical edge couplers detuned by `Δ_CC`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SquaresSweep {
    pub q1: FluxoniumConfig,
    pub q2: FluxoniumConfig,
    /// Left edge coupler; the right one is the same circuit retuned by `Δ_CC`.
    pub edge_coupler: TransmonConfig,
    pub edge_type: CouplerType,
    pub mid_coupler: TransmonConfig,
    pub g_qc_ghz: f64,
    /// Further couplings by element index (`0..5` along the chain).
    #[serde(default)]
    pub extra_couplings: Vec<CouplingConfig>,
    /// Oscillator between the two edge couplers, evaluated as a second series.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator: Option<OscillatorLink>,
    pub delta_cc_ghz: Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CalibrationConfig {
    #[serde(default = "default_evals")]
    pub max_evaluations: usize,
    #[serde(default = "default_xtol")]
    pub xtol_ghz: f64,
}

fn default_evals() -> usize {
    500
}

fn default_xtol() -> f64 {
    1e-6
}

impl Default for CalibrationConfig {
    fn default() -> Self {
        Self {
            max_evaluations: default_evals(),
            xtol_ghz: default_xtol(),
        }
    }
}

impl CalibrationConfig {
    pub fn options(&self) -> crate::pulseopt::CalibrationOptions {
        crate::pulseopt::CalibrationOptions {
            max_evals: self.max_evaluations,
            xtol: [self.xtol_ghz, self.xtol_ghz],
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SpectatorError {
    pub gap_ghz: f64,
    pub zeta_cs_ghz: Grid,
    pub tau_ns: Grid,
    #[serde(default)]
    pub calibration: CalibrationConfig,
}

fn default_sources() -> Vec<String> {
    vec!["110".into(), "111".into(), "000".into()]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct LeakageMap {
    pub gap_ghz: f64,
    /// Duration of the CZ pulse, calibrated once without the leakage channel.
    pub tau_ns: f64,
    pub k: Grid,
    pub delta_ghz: Grid,
    #[serde(default = "default_sources")]
    pub sources: Vec<String>,
    #[serde(default)]
    pub calibration: CalibrationConfig,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum DrivenQubit {
    #[default]
    A,
    B,
}

fn half_pi() -> f64 {
    PI / 2.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ParasiticDrive {
    pub d_hybridization: Grid,
    #[serde(default)]
    pub qubit: DrivenQubit,
    #[serde(default = "half_pi")]
    pub theta_rad: f64,
}

/// CZZ resonance margin over the two coupler frequencies for a given qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CzzMargin {
    pub fluxonium: FluxoniumConfig,
    pub f_c1u_ghz: Grid,
    pub f_c0l_ghz: Grid,
}

/// A validated, typed scenario.
#[derive(Clone, Debug)]
pub enum Scenario {
    FtfSweep(FtfSweep),
    NnnSweep(NnnSweep),
    CqcqZz(CqcqSweep),
    AnalyticVsNumeric(CqcqSweep),
    SquaresSweep(SquaresSweep),
    SpectatorError(SpectatorError),
    LeakageMap(LeakageMap),
    ParasiticDrive(ParasiticDrive),
    CzzMargin(CzzMargin),
}

#[derive(Clone, Debug)]
pub struct Config {
    pub envelope: Envelope,
    pub scenario: Scenario,
    /// The config as parsed, used for hashing.
    pub raw: Value,
}

/// JSON schema of every accepted config file.
pub fn schema() -> Value {
    let mut g = schemars::generate::SchemaSettings::draft2020_12().into_generator();
    let mut root = g.root_schema_for::<Envelope>().to_value();
    let branches: Vec<Value> = ScenarioKind::ALL
        .iter()
        .map(|k| {
            json!({
                "if": { "properties": { "scenario": { "const": k.name() } } },
                "then": { "properties": { "parameters": k.parameters_schema(&mut g).to_value() } }
            })
        })
        .collect();
    let defs = g.take_definitions(true);
    let obj = root.as_object_mut().expect("object schema");
    obj.insert("allOf".into(), Value::Array(branches));
    let all_defs = obj
        .entry("$defs")
        .or_insert_with(|| Value::Object(Default::default()))
        .as_object_mut()
        .expect("defs object");
    all_defs.extend(defs);
    root
}

fn schema_errors(instance: &Value) -> Vec<String> {
    let schema = schema();
    let validator = jsonschema::validator_for(&schema).expect("generated schema is valid");
    let mut errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| {
            let path = e.instance_path.to_string();
            let path = if path.is_empty() { "/".to_string() } else { path };
            format!("{path}: {e}")
        })
        .collect();
    errors.sort();
    errors.dedup();
    errors
}

fn positive(v: f64, path: &str, errors: &mut Vec<String>) {
    if !(v > 0.0 && v.is_finite()) {
        errors.push(format!("{path}: must be positive, got {v}"));
    }
}

fn check_couplings(list: &[CouplingConfig], n: usize, path: &str, errors: &mut Vec<String>) {
    for (i, c) in list.iter().enumerate() {
        if c.a >= n || c.b >= n || c.a == c.b {
            errors.push(format!("{path}/{i}: elements ({}, {}) invalid for a chain of {n}", c.a, c.b));
        }
    }
}

fn semantic_errors(s: &Scenario) -> Vec<String> {
    let mut e = Vec::new();
    let p = "/parameters";
    match s {
        Scenario::FtfSweep(c) => {
            c.coupler.check(&format!("{p}/coupler"), &mut e);
            c.g_ff_ghz.check(&format!("{p}/g_ff_ghz"), &mut e);
            c.df_qq_ghz.check(&format!("{p}/df_qq_ghz"), &mut e);
        }
        Scenario::NnnSweep(c) => {
            c.coupler_left.check(&format!("{p}/coupler_left"), &mut e);
            c.coupler_right.check(&format!("{p}/coupler_right"), &mut e);
            check_couplings(&c.extra_couplings, 5, &format!("{p}/extra_couplings"), &mut e);
            c.df_qq_ghz.check(&format!("{p}/df_qq_ghz"), &mut e);
        }
        Scenario::CqcqZz(c) | Scenario::AnalyticVsNumeric(c) => {
            for (i, nc) in c.couplers.iter().enumerate() {
                nc.element.check(&format!("{p}/couplers/{i}/element"), &mut e);
            }
            if c.configurations.is_empty() {
                e.push(format!("{p}/configurations: at least one configuration is required"));
            }
            for (i, pair) in c.configurations.iter().enumerate() {
                for (j, name) in pair.iter().enumerate() {
                    if !c.couplers.iter().any(|nc| &nc.name == name) {
                        e.push(format!("{p}/configurations/{i}/{j}: unknown coupler {name:?}"));
                    }
                }
            }
            if c.connection_sign.abs() != 1.0 {
                e.push(format!("{p}/connection_sign: must be 1 or -1"));
            }
            c.g_ghz.check(&format!("{p}/g_ghz"), &mut e);
        }
        Scenario::SquaresSweep(c) => {
            c.edge_coupler.check(&format!("{p}/edge_coupler"), &mut e);
            c.mid_coupler.check(&format!("{p}/mid_coupler"), &mut e);
            check_couplings(&c.extra_couplings, 5, &format!("{p}/extra_couplings"), &mut e);
            c.delta_cc_ghz.check(&format!("{p}/delta_cc_ghz"), &mut e);
        }
        Scenario::SpectatorError(c) => {
            positive(c.gap_ghz, &format!("{p}/gap_ghz"), &mut e);
            c.zeta_cs_ghz.check(&format!("{p}/zeta_cs_ghz"), &mut e);
            c.tau_ns.check(&format!("{p}/tau_ns"), &mut e);
            if c.tau_ns.values().iter().any(|t| !(10.0..=500.0).contains(t)) {
                e.push(format!("{p}/tau_ns: durations must lie in [10, 500] ns"));
            }
        }
        Scenario::LeakageMap(c) => {
            positive(c.gap_ghz, &format!("{p}/gap_ghz"), &mut e);
            if !(10.0..=500.0).contains(&c.tau_ns) {
                e.push(format!("{p}/tau_ns: duration must lie in [10, 500] ns"));
            }
            c.k.check(&format!("{p}/k"), &mut e);
            if c.k.values().iter().any(|k| *k < 0.0) {
                e.push(format!("{p}/k: values must be >= 0"));
            }
            c.delta_ghz.check(&format!("{p}/delta_ghz"), &mut e);
            if c.sources.is_empty() {
                e.push(format!("{p}/sources: at least one source is required"));
            }
            for (i, s) in c.sources.iter().enumerate() {
                match s.parse::<BareLabel>() {
                    Ok(l) if l.len() == 3 && l.levels().iter().all(|&v| v < 2) => {}
                    _ => e.push(format!("{p}/sources/{i}: {s:?} is not a three-bit label")),
                }
            }
        }
        Scenario::ParasiticDrive(c) => {
            c.d_hybridization.check(&format!("{p}/d_hybridization"), &mut e);
            if c.d_hybridization.values().iter().any(|d| !(0.0..=1.0).contains(d)) {
                e.push(format!("{p}/d_hybridization: values must lie in [0, 1]"));
            }
        }
        Scenario::CzzMargin(c) => {
            c.f_c1u_ghz.check(&format!("{p}/f_c1u_ghz"), &mut e);
            c.f_c0l_ghz.check(&format!("{p}/f_c0l_ghz"), &mut e);
            if c.fluxonium.levels < 4 {
                e.push(format!("{p}/fluxonium/levels: at least 4 levels are needed"));
            }
        }
    }
    e
}

fn typed(kind: ScenarioKind, params: Value) -> std::result::Result<Scenario, serde_json::Error> {
    use serde_json::from_value as v;
    Ok(match kind {
        ScenarioKind::FtfSweep => Scenario::FtfSweep(v(params)?),
        ScenarioKind::NnnSweep => Scenario::NnnSweep(v(params)?),
        ScenarioKind::CqcqZz => Scenario::CqcqZz(v(params)?),
        ScenarioKind::AnalyticVsNumeric => Scenario::AnalyticVsNumeric(v(params)?),
        ScenarioKind::SquaresSweep => Scenario::SquaresSweep(v(params)?),
        ScenarioKind::SpectatorError => Scenario::SpectatorError(v(params)?),
        ScenarioKind::LeakageMap => Scenario::LeakageMap(v(params)?),
        ScenarioKind::ParasiticDrive => Scenario::ParasiticDrive(v(params)?),
        ScenarioKind::CzzMargin => Scenario::CzzMargin(v(params)?),
    })
}

/// Parses and validates a config. All schema violations are collected into
/// one [`Error::Config`].
pub fn parse(text: &str) -> Result<Config> {
    let raw: Value = serde_json::from_str(text).map_err(|e| Error::Config(vec![format!("/: {e}")]))?;
    let errors = schema_errors(&raw);
    if !errors.is_empty() {
        return Err(Error::Config(errors));
    }
    let envelope: Envelope = serde_json::from_value(raw.clone()).map_err(|e| Error::Config(vec![format!("/: {e}")]))?;
    let scenario = typed(envelope.scenario, envelope.parameters.clone())
        .map_err(|e| Error::Config(vec![format!("/parameters: {e}")]))?;
    let mut errors = semantic_errors(&scenario);
    if envelope.output.trim().is_empty() {
        errors.push("/output: must not be empty".into());
    }
    if !errors.is_empty() {
        return Err(Error::Config(errors));
    }
    Ok(Config {
        envelope,
        scenario,
        raw,
    })
}

pub fn load(path: &std::path::Path) -> Result<Config> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    parse(&text)
}

impl CqcqSweep {
    pub fn coupler(&self, name: &str) -> Result<&NamedCoupler> {
        self.couplers
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::InvalidParams(format!("unknown coupler {name:?}")))
    }
}
