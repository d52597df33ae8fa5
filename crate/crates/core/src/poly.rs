//! Low-degree polynomials with least-squares fitting.

use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::solve_real;
use crate::Result;

/// Polynomial with coefficients in ascending degree order
/// (`c[0] + c[1] x + c[2] x^2 + ...`).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "polynomial needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(alloc::vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Least-squares fit of the given degree through `(xs, ys)` via the
    /// normal equations. Requires at least `degree + 1` distinct abscissae.
    pub fn fit_least_squares(xs: &[f64], ys: &[f64], degree: usize) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Mismatch("x/y length mismatch in polynomial fit"));
        }
        let n_coef = degree + 1;
        if distinct_count(xs) < n_coef {
            return Err(Error::DegenerateDesign(
                "fewer distinct abscissae than polynomial coefficients",
            ));
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("polynomial fit requires finite points"));
        }
        // Normal equations: (V^T V) c = V^T y with V the Vandermonde matrix.
        let mut ata = alloc::vec![0.0; n_coef * n_coef];
        let mut atb = alloc::vec![0.0; n_coef];
        for (&x, &y) in xs.iter().zip(ys.iter()) {
            let mut powers = alloc::vec![1.0; n_coef];
            for k in 1..n_coef {
                powers[k] = powers[k - 1] * x;
            }
            for r in 0..n_coef {
                atb[r] += powers[r] * y;
                for c in 0..n_coef {
                    ata[r * n_coef + c] += powers[r] * powers[c];
                }
            }
        }
        let coeffs = solve_real(&mut ata, &mut atb, n_coef)?;
        Ok(Self::new(coeffs))
    }
}

fn distinct_count(xs: &[f64]) -> usize {
    let mut sorted: Vec<f64> = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    let mut count = usize::from(!sorted.is_empty());
    for w in sorted.windows(2) {
        if w[1] != w[0] {
            count += 1;
        }
    }
    count
}
