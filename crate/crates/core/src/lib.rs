//! Numerical toolkit for fluxonium–transmon–fluxonium couplers: element
//! spectra, composite diagonalization, ZZ and hybridization metrics,
//! perturbative estimates, gate dynamics, pulse calibration and leakage maps.

pub mod circuit;
pub mod composite;
pub mod dynamics;
pub mod error;
pub mod label;
pub mod leakage;
pub mod metrics;
pub mod optimize;
pub mod perturbation;
pub mod pulseopt;
pub mod scenario;
pub mod sweep;

pub use error::{Error, Result};
pub use label::BareLabel;
