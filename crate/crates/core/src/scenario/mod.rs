//! Reproducible scenario runs driven by JSON config files.

pub mod config;
pub mod plot;
pub mod run;

pub use config::{load, parse, schema, Config, Format, Scenario, ScenarioKind};
pub use run::{config_hash, execute, run, RunOptions, RunOutput, CODE_VERSION};
