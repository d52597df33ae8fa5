//! Semi-analytical reference: scalar spherical-harmonics (SSH) series for
//! the peak scalp potential of a radial dipole in the three-shell sphere.
//!
//! The potential on the dipole axis at the scalp surface is
//! `V = p_r / (4 pi r3^2) * sum_{l>=1} A4(l, omega)`, where each term is a
//! rational function of the four layer complex conductivities (brain, skull,
//! scalp, air) and of the radius ratios `psi_ij`, scaled by the geometric
//! factor `(eta * psi13)^(l-1)`.

use num_complex::Complex64;
#[allow(unused_imports)] // inherent std methods shadow Float under cfg(test)
use num_traits::Float;

use crate::error::Error;
use crate::geom::{DipoleSource, HeadGeometry};
use crate::tissue::TissueSpec;
use crate::Result;

/// Default relative truncation tolerance for the series.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default hard cap on the series index.
pub const DEFAULT_L_CAP: u32 = 500;

/// Result of a series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SshSolution {
    /// Peak scalp potential (on-axis, reference at infinity), in volts.
    pub v_scalp: Complex64,
    /// Largest series index that was summed.
    pub l_max_used: u32,
    /// Relative magnitude of the last two terms against the partial sum.
    pub tail_estimate: f64,
    /// False if the cap was hit before the tail estimate dropped below tol.
    pub converged: bool,
    /// True if any tissue table lookup was clamped to an endpoint row.
    pub clamped_tables: bool,
}

/// Series term `A4(l, omega)` for layer conductivities
/// `sigma_c = [brain, skull, scalp, air]`.
pub fn ssh_term(
    l: u32,
    geom: &HeadGeometry,
    sigma_c: &[Complex64; 4],
    eta: f64,
) -> Result<Complex64> {
    if l < 1 {
        return Err(Error::Domain("series index l must be >= 1"));
    }
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::InvalidSource("eta must lie in [0, 1)"));
    }
    let coeff = term_coefficient(l, geom, sigma_c)?;
    let base = eta * geom.psi(1, 3);
    // eta^(l-1) * psi13^(l-1), with 0^0 := 1 for the centered dipole.
    Ok(coeff * base.powi(l as i32 - 1))
}

/// `A4(l)` without its `(eta * psi13)^(l-1)` factor.
///
/// The series loop accumulates that factor multiplicatively instead of
/// calling `powi` per term.
fn term_coefficient(l: u32, geom: &HeadGeometry, sigma_c: &[Complex64; 4]) -> Result<Complex64> {
    let lf = l as f64;
    let [s1, s2, s3, s4] = *sigma_c;
    if sigma_c
        .iter()
        .any(|s| !s.re.is_finite() || !s.im.is_finite())
    {
        return Err(Error::Domain("layer conductivities must be finite"));
    }

    let diff = |a: Complex64, b: Complex64| a - b;
    let tilde = |a: Complex64, b: Complex64| (lf + 1.0) * a + lf * b;

    let x1 = tilde(s2, s1) * diff(s3, s2) * diff(s4, s3);
    let x2 = diff(s2, s1) * tilde(s2, s3) * diff(s4, s3);
    let x3 = diff(s2, s1) * diff(s3, s2) * tilde(s4, s3);
    let x_t = tilde(s2, s1) * tilde(s3, s2) * tilde(s4, s3);

    let p23 = geom.psi(2, 3).powi(2 * l as i32 + 1);
    let p13 = geom.psi(1, 3).powi(2 * l as i32 + 1);
    let p12 = geom.psi(1, 2).powi(2 * l as i32 + 1);

    let ll1 = lf * (lf + 1.0);
    let den = ll1 * (p23 * x1 + p13 * x2 + p12 * x3) + x_t;

    // Cancellation guard: compare against the constituent magnitude sum so
    // the test is invariant under common conductivity scaling.
    let den_scale = ll1 * (p23 * x1.norm() + p13 * x2.norm() + p12 * x3.norm()) + x_t.norm();
    if den_scale == 0.0 || den.norm() < 1e3 * f64::EPSILON * den_scale {
        return Err(Error::SingularTerm { l });
    }

    let two_l1 = 2.0 * lf + 1.0;
    let num = lf * two_l1 * two_l1 * two_l1 * s2 * s3;
    Ok(num / den)
}

/// Sums the SSH series for the given tissues and source at frequency `f_hz`.
///
/// Truncation: the sum stops at the first `l >= 2` where
/// `|A4(l)| + |A4(l-1)| < tol * |partial sum|` (the pairwise check guards
/// against alternating term magnitudes); `l_cap` bounds the index, and
/// hitting it leaves `converged = false` rather than failing.
pub fn ssh_peak_potential(
    geom: &HeadGeometry,
    tissues: &[TissueSpec; 4],
    src: &DipoleSource,
    f_hz: f64,
    tol: f64,
    l_cap: u32,
) -> Result<SshSolution> {
    let mut sigma_c = [Complex64::new(0.0, 0.0); 4];
    let mut clamped = false;
    for (dst, tissue) in sigma_c.iter_mut().zip(tissues.iter()) {
        let sc = tissue.complex_conductivity(f_hz)?;
        *dst = sc.value;
        clamped |= sc.clamped;
    }
    let mut sol = ssh_peak_potential_sigma(geom, &sigma_c, src, tol, l_cap)?;
    sol.clamped_tables = clamped;
    Ok(sol)
}

/// Sums the series for explicit layer complex conductivities
/// `[brain, skull, scalp, air]`.
pub fn ssh_peak_potential_sigma(
    geom: &HeadGeometry,
    sigma_c: &[Complex64; 4],
    src: &DipoleSource,
    tol: f64,
    l_cap: u32,
) -> Result<SshSolution> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain("truncation tolerance must be > 0"));
    }
    if l_cap < 1 {
        return Err(Error::Domain("l_cap must be >= 1"));
    }
    let eta = src.eta_checked(geom)?;
    if sigma_c.iter().all(|s| s.norm() == 0.0) {
        return Err(Error::Domain("all four layer conductivities are zero"));
    }

    let base = eta * geom.psi(1, 3);
    let mut factor = 1.0_f64; // (eta * psi13)^(l-1), accumulated
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev_mag = f64::INFINITY;
    let mut l_used = l_cap;
    let mut tail = f64::INFINITY;
    let mut converged = false;

    for l in 1..=l_cap {
        let term = term_coefficient(l, geom, sigma_c)? * factor;
        sum += term;
        let mag = term.norm();
        let sum_mag = sum.norm();
        if l >= 2 {
            let tail_abs = mag + prev_mag;
            tail = if sum_mag > 0.0 {
                tail_abs / sum_mag
            } else {
                f64::INFINITY
            };
            if tail < tol {
                l_used = l;
                converged = true;
                break;
            }
        }
        prev_mag = mag;
        factor *= base;
    }

    let prefactor = src.p_r() / (4.0 * core::f64::consts::PI * geom.r_scalp() * geom.r_scalp());
    Ok(SshSolution {
        v_scalp: prefactor * sum,
        l_max_used: l_used,
        tail_estimate: tail,
        converged,
        clamped_tables: false,
    })
}
