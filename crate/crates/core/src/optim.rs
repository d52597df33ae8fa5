//! Derivative-free Nelder-Mead simplex minimizer.
//!
//! Deterministic: ties in the vertex ordering are broken by insertion index,
//! and no randomness is used anywhere, so identical starts produce identical
//! results.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent std methods shadow Float under cfg(test)
use num_traits::Float;

/// Termination settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub max_iters: u32,
    /// Stop when the spread of vertex objective values falls below this.
    pub f_tol: f64,
    /// Stop when the simplex diameter falls below this.
    pub x_tol: f64,
    /// Initial per-coordinate simplex perturbation.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iters: 400,
            f_tol: 1e-14,
            x_tol: 1e-8,
            initial_step: 0.15,
        }
    }
}

/// Minimization outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: u32,
    pub evals: u32,
    pub converged: bool,
}

const ALPHA: f64 = 1.0; // reflection
const GAMMA: f64 = 2.0; // expansion
const RHO: f64 = 0.5; // contraction
const SIGMA: f64 = 0.5; // shrink

/// Minimizes `f` from `x0`. Non-finite objective values are treated as +inf.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> OptimResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert!(n > 0, "nelder_mead needs at least one parameter");
    let mut eval = |x: &[f64], count: &mut u32| -> f64 {
        *count += 1;
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let mut evals = 0u32;
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v, &mut evals)).collect();

    let mut iterations = 0u32;
    let mut converged = false;

    for iter in 0..opts.max_iters {
        iterations = iter + 1;

        // Stable sort by value, ties by index.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| {
            values[a]
                .partial_cmp(&values[b])
                .unwrap_or(core::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let f_spread = values[n] - values[0];
        let mut diameter = 0.0_f64;
        for v in simplex.iter().skip(1) {
            let d: f64 = v
                .iter()
                .zip(simplex[0].iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            diameter = diameter.max(d);
        }
        if f_spread <= opts.f_tol && diameter <= opts.x_tol {
            converged = true;
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = alloc::vec![0.0; n];
        for v in simplex.iter().take(n) {
            for (c, x) in centroid.iter_mut().zip(v.iter()) {
                *c += x;
            }
        }
        for c in centroid.iter_mut() {
            *c /= n as f64;
        }

        let blend = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| x + t * (y - x))
                .collect()
        };

        let reflected = blend(&centroid, &simplex[n], -ALPHA);
        let f_ref = eval(&reflected, &mut evals);

        if f_ref < values[0] {
            let expanded = blend(&centroid, &reflected, GAMMA);
            let f_exp = eval(&expanded, &mut evals);
            if f_exp < f_ref {
                simplex[n] = expanded;
                values[n] = f_exp;
            } else {
                simplex[n] = reflected;
                values[n] = f_ref;
            }
        } else if f_ref < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_ref;
        } else {
            let (contracted, f_con) = if f_ref < values[n] {
                let c = blend(&centroid, &reflected, RHO);
                let fc = eval(&c, &mut evals);
                (c, fc)
            } else {
                let c = blend(&centroid, &simplex[n], RHO);
                let fc = eval(&c, &mut evals);
                (c, fc)
            };
            if f_con < values[n].min(f_ref) {
                simplex[n] = contracted;
                values[n] = f_con;
            } else {
                for i in 1..=n {
                    let shrunk = blend(&simplex[0], &simplex[i], SIGMA);
                    simplex[i] = shrunk;
                    values[i] = eval(&simplex[i], &mut evals);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    OptimResult {
        x: simplex[best].clone(),
        f: values[best],
        iterations,
        evals,
        converged,
    }
}
