//! Minimal SVG line plots and leakage-region heatmaps for sweep results.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::sweep::{fmt_f64, unflatten, Axis, SweepResult};

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 55.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];
const BUCKET_FILL: [&str; 4] = ["#f7fbff", "#9ecae1", "#4292c6", "#08306b"];
const BUCKET_TEXT: [&str; 4] = ["< 1e-5", "1e-5 to 1e-4", "1e-4 to 1e-3", ">= 1e-3"];

/// Series that are bookkeeping rather than physics and are never plotted.
const SKIP: [&str; 4] = ["degenerate", "negative", "bucket", "evaluations"];

fn log_scaled(name: &str) -> bool {
    name.starts_with("eps") || name.starts_with("d_") || name == "rate"
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axis_title(a: &Axis) -> String {
    if a.unit.is_empty() {
        a.name.clone()
    } else {
        format!("{} [{}]", a.name, a.unit.to_uppercase().replace("GHZ", "GHz"))
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

struct Scale {
    lo: f64,
    hi: f64,
    log: bool,
    px_lo: f64,
    px_hi: f64,
}

impl Scale {
    fn new(values: impl Iterator<Item = f64>, log: bool, px_lo: f64, px_hi: f64) -> Option<Self> {
        let vals: Vec<f64> = values
            .filter(|v| v.is_finite() && (!log || *v > 0.0))
            .map(|v| if log { v.log10() } else { v })
            .collect();
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !lo.is_finite() {
            return None;
        }
        let (lo, hi) = if hi - lo < 1e-300 {
            let pad = if log { 0.5 } else { lo.abs().max(1e-12) * 0.1 };
            (lo - pad, hi + pad)
        } else {
            (lo, hi)
        };
        Some(Self { lo, hi, log, px_lo, px_hi })
    }

    fn map(&self, v: f64) -> Option<f64> {
        if !v.is_finite() || (self.log && v <= 0.0) {
            return None;
        }
        let t = if self.log { v.log10() } else { v };
        Some(self.px_lo + (t - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo))
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.lo.floor() as i32, self.hi.ceil() as i32);
            let step = ((b - a) / 6).max(1);
            (a..=b)
                .step_by(step as usize)
                .map(|e| 10f64.powi(e))
                .filter(|v| (self.lo..=self.hi).contains(&v.log10()))
                .collect()
        } else {
            let span = self.hi - self.lo;
            let raw = span / 5.0;
            let mag = 10f64.powf(raw.log10().floor());
            let step = [1.0, 2.0, 5.0, 10.0]
                .iter()
                .map(|m| m * mag)
                .find(|s| span / s <= 6.0)
                .unwrap_or(10.0 * mag);
            let first = (self.lo / step).ceil() as i64;
            let last = (self.hi / step).floor() as i64;
            (first..=last).map(|k| k as f64 * step).collect()
        }
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e-2 && v.abs() < 1e4 {
        fmt_f64((v * 1e6).round() / 1e6)
    } else {
        format!("{v:.0e}")
    }
}

fn frame(svg: &mut String, title: &str, x: &Scale, y: &Scale, x_title: &str, y_title: &str) {
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">
<rect width="{W}" height="{H}" fill="white"/>
<text x="{}" y="18" text-anchor="middle" font-size="14">{}</text>
<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>
"#,
        (LEFT + W - RIGHT) / 2.0,
        escape(title),
        W - LEFT - RIGHT,
        H - TOP - BOTTOM
    );
    for t in x.ticks() {
        if let Some(px) = x.map(t) {
            let _ = writeln!(
                svg,
                r#"<line x1="{px:.2}" y1="{}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
                H - BOTTOM,
                H - BOTTOM + 5.0,
                H - BOTTOM + 18.0,
                tick_label(t)
            );
        }
    }
    for t in y.ticks() {
        if let Some(py) = y.map(t) {
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 5.0,
                LEFT - 8.0,
                py + 4.0,
                tick_label(t)
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 15.0,
        escape(x_title)
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0,
        escape(y_title)
    );
}

/// Index of the axis used as abscissa: the first numeric axis with more than one point.
fn x_axis(r: &SweepResult) -> Option<usize> {
    let numeric = |a: &Axis| a.labels.is_none();
    r.axes
        .iter()
        .position(|a| numeric(a) && a.len() > 1)
        .or_else(|| r.axes.iter().position(numeric))
}

fn line_plot(r: &SweepResult, series: usize, xi: usize) -> Option<String> {
    let s = &r.series[series];
    let shape = r.shape();
    let xa = &r.axes[xi];
    let log_y = log_scaled(&s.name);
    let y_vals = s.values.iter().flatten().map(|v| if log_y { v.abs() } else { *v });
    let y = Scale::new(y_vals, log_y, H - BOTTOM, TOP)?;
    let log_x = xa.values.iter().all(|v| *v > 0.0)
        && xa.values.iter().copied().fold(0.0, f64::max) / xa.values.iter().copied().fold(f64::INFINITY, f64::min)
            > 100.0;
    let x = Scale::new(xa.values.iter().copied(), log_x, LEFT, W - RIGHT)?;

    // One line per combination of the remaining axes.
    let mut lines: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    let mut key_of = std::collections::BTreeMap::new();
    for (flat, v) in s.values.iter().enumerate() {
        let idx = unflatten(flat, &shape);
        let key: Vec<usize> = idx.iter().enumerate().filter(|(a, _)| *a != xi).map(|(_, &i)| i).collect();
        let slot = *key_of.entry(key.clone()).or_insert_with(|| {
            let label = idx
                .iter()
                .enumerate()
                .filter(|(a, _)| *a != xi)
                .map(|(a, &i)| {
                    let ax = &r.axes[a];
                    match &ax.labels {
                        Some(l) => l[i].clone(),
                        None => format!("{}={}", ax.name, fmt_f64(ax.values[i])),
                    }
                })
                .collect::<Vec<_>>()
                .join(", ");
            lines.push((label, Vec::new()));
            lines.len() - 1
        });
        if let Some(v) = v {
            let yv = if log_y { v.abs() } else { *v };
            if let (Some(px), Some(py)) = (x.map(xa.values[idx[xi]]), y.map(yv)) {
                lines[slot].1.push((px, py));
            }
        }
    }
    let y_title = if log_y && s.values.iter().flatten().any(|v| *v < 0.0) {
        format!("|{}|", s.name)
    } else {
        s.name.clone()
    };
    let y_title = if s.unit.is_empty() {
        y_title
    } else {
        format!("{y_title} [{}]", s.unit.to_uppercase().replace("GHZ", "GHz"))
    };
    let mut svg = String::new();
    frame(&mut svg, &format!("{}: {}", r.metadata.scenario, s.name), &x, &y, &axis_title(xa), &y_title);
    for (k, (label, pts)) in lines.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        if pts.len() > 1 {
            let path: Vec<String> = pts.iter().map(|(a, b)| format!("{a:.2},{b:.2}")).collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                path.join(" ")
            );
        }
        for (a, b) in pts {
            let _ = writeln!(svg, r#"<circle cx="{a:.2}" cy="{b:.2}" r="2.5" fill="{color}"/>"#);
        }
        if !label.is_empty() {
            let ly = TOP + 14.0 + 16.0 * k as f64;
            let lx = W - RIGHT + 10.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                lx + 18.0,
                lx + 22.0,
                ly + 4.0,
                escape(label)
            );
        }
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

/// Bucket heatmap over the last two axes for one index of the first axis.
fn bucket_map(r: &SweepResult, first: usize) -> Option<String> {
    let bucket = r.series("bucket")?;
    let shape = r.shape();
    let (ya, xa) = (&r.axes[1], &r.axes[2]);
    let (ny, nx) = (shape[1], shape[2]);
    let base = first * ny * nx;
    if bucket.values[base..base + ny * nx].iter().all(Option::is_none) {
        return None;
    }
    let pw = (W - LEFT - RIGHT) / nx as f64;
    let ph = (H - TOP - BOTTOM) / ny as f64;
    let title = match &r.axes[0].labels {
        Some(l) => format!("leakage regions, source |{}>", l[first]),
        None => "leakage regions".into(),
    };
    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">
<rect width="{W}" height="{H}" fill="white"/>
<text x="{}" y="18" text-anchor="middle" font-size="14">{}</text>
"#,
        (LEFT + W - RIGHT) / 2.0,
        escape(&title)
    );
    for iy in 0..ny {
        for ix in 0..nx {
            let fill = match bucket.values[base + iy * nx + ix] {
                Some(b) => BUCKET_FILL[(b as usize).min(3)],
                None => "#cccccc",
            };
            let _ = writeln!(
                svg,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}" stroke="white" stroke-width="0.5"/>"#,
                LEFT + ix as f64 * pw,
                H - BOTTOM - (iy + 1) as f64 * ph,
                pw,
                ph
            );
        }
    }
    let every = |n: usize| (n / 6).max(1);
    for ix in (0..nx).step_by(every(nx)) {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            LEFT + (ix as f64 + 0.5) * pw,
            H - BOTTOM + 16.0,
            tick_label(xa.values[ix])
        );
    }
    for iy in (0..ny).step_by(every(ny)) {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            H - BOTTOM - (iy as f64 + 0.5) * ph + 4.0,
            tick_label(ya.values[iy])
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text><text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 15.0,
        escape(&axis_title(xa)),
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0,
        escape(&axis_title(ya))
    );
    for (b, (fill, text)) in BUCKET_FILL.iter().zip(BUCKET_TEXT).enumerate() {
        let ly = TOP + 10.0 + 20.0 * b as f64;
        let lx = W - RIGHT + 12.0;
        let _ = writeln!(
            svg,
            r#"<rect x="{lx}" y="{ly}" width="14" height="14" fill="{fill}" stroke="black" stroke-width="0.5"/><text x="{}" y="{}">{}</text>"#,
            lx + 20.0,
            ly + 11.0,
            escape(text)
        );
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

/// Writes one SVG per plottable series (one per source for leakage maps)
/// next to `prefix`. Series without finite values are skipped with a warning.
pub fn emit_plots(r: &SweepResult, prefix: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    if r.series("bucket").is_some() && r.axes.len() == 3 {
        for first in 0..r.axes[0].len() {
            let tag = r.axes[0]
                .labels
                .as_ref()
                .map_or_else(|| first.to_string(), |l| sanitize(&l[first]));
            match bucket_map(r, first) {
                Some(svg) => {
                    let path = with_suffix(prefix, &format!("_regions_{tag}.svg"));
                    std::fs::write(&path, svg)?;
                    files.push(path);
                }
                None => log::warn!("no leakage values for source {tag}; plot skipped"),
            }
        }
        return Ok(files);
    }
    let Some(xi) = x_axis(r) else {
        log::warn!("result has no numeric axis; nothing to plot");
        return Ok(files);
    };
    for (k, s) in r.series.iter().enumerate() {
        if SKIP.contains(&s.name.as_str()) {
            continue;
        }
        match line_plot(r, k, xi) {
            Some(svg) => {
                let path = with_suffix(prefix, &format!("_{}.svg", sanitize(&s.name)));
                std::fs::write(&path, svg)?;
                files.push(path);
            }
            None => log::warn!("series {} has no plottable values; plot skipped", s.name),
        }
    }
    Ok(files)
}
