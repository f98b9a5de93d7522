//! Deterministic Nelder–Mead minimization.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct NelderMead {
    /// Per-coordinate simplex extent below which the search stops.
    pub xtol: Vec<f64>,
    pub max_evals: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn new(xtol: Vec<f64>, max_evals: usize) -> Self {
        Self { xtol, max_evals }
    }

    /// Minimizes `f` from the simplex `x0, x0 + steps[i] e_i`.
    ///
    /// Points where `f` fails count as `+inf`; if every evaluation fails the
    /// last error is returned.
    pub fn minimize<F>(&self, mut f: F, x0: &[f64], steps: &[f64]) -> Result<Minimum>
    where
        F: FnMut(&[f64]) -> Result<f64>,
    {
        let n = x0.len();
        if steps.len() != n || self.xtol.len() != n || n == 0 {
            return Err(Error::InvalidParams("Nelder-Mead dimensions disagree".into()));
        }
        let mut evals = 0;
        let mut last_err = None;
        let mut any_ok = false;
        let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
            *evals += 1;
            match f(x) {
                Ok(v) if v.is_finite() => {
                    any_ok = true;
                    v
                }
                Ok(_) => f64::INFINITY,
                Err(e) => {
                    last_err = Some(e);
                    f64::INFINITY
                }
            }
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let v0 = eval(x0, &mut evals);
        simplex.push((x0.to_vec(), v0));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += steps[i];
            let v = eval(&x, &mut evals);
            simplex.push((x, v));
        }

        let mut converged = false;
        loop {
            // Stable sort keeps ties in insertion order for reproducibility.
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread_ok = (0..n).all(|k| {
                simplex
                    .iter()
                    .map(|(x, _)| (x[k] - simplex[0].0[k]).abs())
                    .fold(0.0, f64::max)
                    < self.xtol[k]
            });
            if spread_ok {
                converged = true;
                break;
            }
            if evals >= self.max_evals {
                break;
            }
            let centroid: Vec<f64> = (0..n)
                .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                (0..n)
                    .map(|k| centroid[k] + t * (simplex[n].0[k] - centroid[k]))
                    .collect()
            };
            let (best, second_worst, worst) = (simplex[0].1, simplex[n - 1].1, simplex[n].1);

            let xr = along(-1.0);
            let fr = eval(&xr, &mut evals);
            if fr < best {
                let xe = along(-2.0);
                let fe = eval(&xe, &mut evals);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < second_worst {
                simplex[n] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst {
                let xc = along(-0.5);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = along(0.5);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < worst.min(fr) {
                simplex[n] = (xc, fc);
                continue;
            }
            let x_best = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = vertex
                    .0
                    .iter()
                    .zip(&x_best)
                    .map(|(xi, bi)| bi + 0.5 * (xi - bi))
                    .collect();
                let v = eval(&x, &mut evals);
                *vertex = (x, v);
            }
        }
        if !any_ok {
            return Err(last_err.unwrap_or_else(|| Error::InvalidParams("objective never finite".into())));
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, fx) = simplex.swap_remove(0);
        Ok(Minimum {
            x,
            fx,
            evaluations: evals,
            converged,
        })
    }
}
