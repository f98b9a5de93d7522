//! Independent reference calculations shared by the integration tests.
#![allow(dead_code)]

/// Number of eigenvalues of the symmetric tridiagonal matrix `(d, e)` below `x`.
fn count_below(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] };
        q = d[i] - x - if i == 0 { 0.0 } else { off / q };
        if q == 0.0 {
            q = f64::EPSILON * (d[i].abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest `k` eigenvalues of a symmetric tridiagonal matrix by Sturm bisection.
pub fn tridiagonal_eigenvalues(d: &[f64], e: &[f64], k: usize) -> Vec<f64> {
    let radius = d
        .iter()
        .enumerate()
        .map(|(i, di)| {
            let l = if i > 0 { e[i - 1].abs() } else { 0.0 };
            let r = if i < e.len() { e[i].abs() } else { 0.0 };
            (di - l - r, di + l + r)
        })
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)));
    (0..k)
        .map(|m| {
            let (mut lo, mut hi) = radius;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(d, e, mid) > m {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo < 1e-13 * (1.0 + mid.abs()) {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Fluxonium levels from a second-order finite-difference grid on `[-l, l]`
/// with `n` points, relative to the ground state.
pub fn fluxonium_fd(e_c: f64, e_j: f64, e_l: f64, phi_ext: f64, l: f64, n: usize, k: usize) -> Vec<f64> {
    let h = 2.0 * l / (n - 1) as f64;
    let kin = 4.0 * e_c / (h * h);
    let d: Vec<f64> = (0..n)
        .map(|i| {
            let phi = -l + i as f64 * h;
            2.0 * kin + 0.5 * e_l * phi * phi - e_j * (phi + phi_ext).cos()
        })
        .collect();
    let e = vec![-kin; n - 1];
    let ev = tridiagonal_eigenvalues(&d, &e, k);
    ev.iter().map(|x| x - ev[0]).collect()
}

/// Richardson-extrapolated finite-difference fluxonium levels (two refinements).
pub fn fluxonium_reference(e_c: f64, e_j: f64, e_l: f64, phi_ext: f64, k: usize) -> Vec<f64> {
    let l = 8.0 * std::f64::consts::PI;
    let a = fluxonium_fd(e_c, e_j, e_l, phi_ext, l, 2001, k);
    let b = fluxonium_fd(e_c, e_j, e_l, phi_ext, l, 4001, k);
    let c = fluxonium_fd(e_c, e_j, e_l, phi_ext, l, 8001, k);
    (0..k)
        .map(|i| {
            let ab = (4.0 * b[i] - a[i]) / 3.0;
            let bc = (4.0 * c[i] - b[i]) / 3.0;
            (16.0 * bc - ab) / 15.0
        })
        .collect()
}

/// Transmon levels at zero offset charge from the charge-basis tridiagonal
/// matrix with charges `-n_cut..=n_cut`, relative to the ground state.
pub fn transmon_reference(e_c: f64, e_j: f64, n_cut: i64, k: usize) -> Vec<f64> {
    let d: Vec<f64> = (-n_cut..=n_cut).map(|n| 4.0 * e_c * (n * n) as f64).collect();
    let e = vec![-0.5 * e_j; d.len() - 1];
    let ev = tridiagonal_eigenvalues(&d, &e, k);
    ev.iter().map(|x| x - ev[0]).collect()
}

/// Log-log slope of `y(x)` between two points.
pub fn loglog_slope(x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    (y1.abs().ln() - y0.abs().ln()) / (x1.ln() - x0.ln())
}
