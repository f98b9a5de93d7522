//! Gridded results of parameter sweeps and their CSV/JSON serialization.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
    /// Categorical labels, when the axis enumerates named items.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Axis {
    pub fn new(name: &str, unit: &str, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
            values,
            labels: None,
        }
    }

    pub fn categorical(name: &str, labels: Vec<String>) -> Self {
        Self {
            name: name.into(),
            unit: String::new(),
            values: (0..labels.len()).map(|i| i as f64).collect(),
            labels: Some(labels),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// One metric over the whole grid, row-major with the last axis fastest.
/// Missing entries mark failed grid points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub unit: String,
    pub values: Vec<Option<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    /// Grid coordinates of the failed point.
    pub index: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub scenario: String,
    pub config_hash: String,
    pub code_version: String,
    /// Scenario-specific notes (calibrated pulses, fixed parameters).
    #[serde(default)]
    pub extra: BTreeMap<String, String>,
    /// Elapsed time of the run. Kept out of serialized results so that
    /// identical inputs give identical files.
    #[serde(skip)]
    pub wall_time_s: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axes: Vec<Axis>,
    pub series: Vec<Series>,
    pub metadata: Metadata,
    #[serde(default)]
    pub failures: Vec<Failure>,
}

/// Shortest round-trip decimal representation.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        let mut buf = ryu::Buffer::new();
        let s = buf.format_finite(v);
        s.strip_suffix(".0").unwrap_or(s).to_string()
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

impl SweepResult {
    pub fn new(axes: Vec<Axis>) -> Self {
        Self {
            axes,
            series: Vec::new(),
            metadata: Metadata::default(),
            failures: Vec::new(),
        }
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    pub fn points(&self) -> usize {
        self.shape().iter().product()
    }

    pub fn series(&self, name: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.name == name)
    }

    /// Value of `name` at grid coordinates `index`.
    pub fn get(&self, name: &str, index: &[usize]) -> Option<f64> {
        let s = self.series(name)?;
        s.values[flat_index(index, &self.shape())]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.points();
        for s in &self.series {
            if s.values.len() != n {
                return Err(Error::InvalidParams(format!(
                    "series {} has {} values for a grid of {n} points",
                    s.name,
                    s.values.len()
                )));
            }
        }
        Ok(())
    }

    /// Evaluates `f` at every grid point (in parallel) and stores the named
    /// outputs as series. Failures leave gaps and are recorded.
    pub fn fill<F>(&mut self, names: &[(&str, &str)], f: F)
    where
        F: Fn(&[usize]) -> Result<Vec<f64>> + Sync,
    {
        let shape = self.shape();
        let n: usize = shape.iter().product();
        let results: Vec<Result<Vec<f64>>> = (0..n)
            .into_par_iter()
            .map(|flat| f(&unflatten(flat, &shape)))
            .collect();
        let mut columns: Vec<Vec<Option<f64>>> = vec![Vec::with_capacity(n); names.len()];
        for (flat, r) in results.into_iter().enumerate() {
            match r {
                Ok(vals) => {
                    for (col, v) in columns.iter_mut().zip(vals.into_iter().chain(std::iter::repeat(f64::NAN))) {
                        col.push(v.is_finite().then_some(v));
                    }
                }
                Err(e) => {
                    for col in &mut columns {
                        col.push(None);
                    }
                    self.failures.push(Failure {
                        index: unflatten(flat, &shape),
                        message: e.to_string(),
                    });
                }
            }
        }
        for ((name, unit), values) in names.iter().zip(columns) {
            self.series.push(Series {
                name: (*name).into(),
                unit: (*unit).into(),
                values,
            });
        }
    }

    fn column_name(name: &str, unit: &str) -> String {
        if unit.is_empty() || name.ends_with(unit) {
            name.to_string()
        } else {
            format!("{name}_{unit}")
        }
    }

    /// One header row, then one row per grid point.
    pub fn to_csv(&self) -> String {
        let shape = self.shape();
        let mut out = String::new();
        let header: Vec<String> = self
            .axes
            .iter()
            .map(|a| Self::column_name(&a.name, &a.unit))
            .chain(self.series.iter().map(|s| Self::column_name(&s.name, &s.unit)))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for flat in 0..self.points() {
            let idx = unflatten(flat, &shape);
            let mut cells: Vec<String> = self
                .axes
                .iter()
                .zip(&idx)
                .map(|(a, &i)| match &a.labels {
                    Some(l) => l[i].clone(),
                    None => fmt_f64(a.values[i]),
                })
                .collect();
            cells.extend(
                self.series
                    .iter()
                    .map(|s| s.values[flat].map(fmt_f64).unwrap_or_default()),
            );
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(text)?;
        r.validate()?;
        Ok(r)
    }
}

pub fn flat_index(index: &[usize], shape: &[usize]) -> usize {
    index.iter().zip(shape).fold(0, |acc, (i, n)| acc * n + i)
}

pub fn unflatten(mut flat: usize, shape: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for (slot, n) in idx.iter_mut().zip(shape).rev() {
        *slot = flat % n;
        flat /= n;
    }
    idx
}

/// `n` points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SweepResult {
        let mut r = SweepResult::new(vec![
            Axis::new("g", "ghz", vec![0.1, 0.2]),
            Axis::categorical("source", vec!["110".into(), "000".into(), "111".into()]),
        ]);
        r.fill(&[("rate", ""), ("zeta", "ghz")], |i| {
            if i == [1, 2] {
                Err(Error::InvalidParams("boom".into()))
            } else {
                Ok(vec![i[0] as f64 + 0.1 * i[1] as f64, 1e-7 / 3.0])
            }
        });
        r
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "g_ghz,source,rate,zeta_ghz");
        assert_eq!(lines[1], "0.1,110,0,3.3333333333333334e-8");
        assert_eq!(lines[6], "0.2,111,,");
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(r.failures.len(), 1);
        let back = SweepResult::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn spacing_helpers() {
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        let l = logspace(1e-3, 1e-1, 3);
        assert!((l[1] - 1e-2).abs() < 1e-15);
        assert_eq!(unflatten(flat_index(&[1, 2, 3], &[2, 3, 4]), &[2, 3, 4]), vec![1, 2, 3]);
    }
}
