//! Small dense linear solves used by the nodal analysis and the polynomial
//! regression. Gaussian elimination with partial pivoting; systems here are
//! at most 4x4.

use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;
use num_complex::Complex64;

/// Solves `a * x = b` for a dense row-major complex matrix.
pub(crate) fn solve_complex(
    a: &mut [Complex64],
    b: &mut [Complex64],
    n: usize,
) -> Result<Vec<Complex64>> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    // Scale reference for the singularity test.
    let mut scale = 0.0_f64;
    for v in a.iter() {
        scale = scale.max(v.norm());
    }
    if scale == 0.0 {
        return Err(Error::SingularNetwork);
    }
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[col * n + col].norm();
        for row in (col + 1)..n {
            let mag = a[row * n + col].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag <= f64::EPSILON * scale * 16.0 {
            return Err(Error::SingularNetwork);
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col..n {
                let t = a[col * n + k];
                a[row * n + k] -= factor * t;
            }
            let t = b[col];
            b[row] -= factor * t;
        }
    }
    let mut x = alloc::vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row * n + k] * x[k];
        }
        x[row] = acc / a[row * n + row];
    }
    Ok(x)
}

/// Solves `a * x = b` for a dense row-major real matrix.
pub(crate) fn solve_real(a: &mut [f64], b: &mut [f64], n: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    let mut scale = 0.0_f64;
    for v in a.iter() {
        scale = scale.max(v.abs());
    }
    if scale == 0.0 {
        return Err(Error::DegenerateDesign("all-zero normal matrix"));
    }
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[col * n + col].abs();
        for row in (col + 1)..n {
            let mag = a[row * n + col].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag <= f64::EPSILON * scale * 16.0 {
            return Err(Error::DegenerateDesign("rank-deficient normal matrix"));
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                let t = a[col * n + k];
                a[row * n + k] -= factor * t;
            }
            let t = b[col];
            b[row] -= factor * t;
        }
    }
    let mut x = alloc::vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row * n + k] * x[k];
        }
        x[row] = acc / a[row * n + row];
    }
    Ok(x)
}
