//! Identification of the surrogate circuit's free parameters against the
//! SSH reference.
//!
//! Two-stage protocol over the parameter vector
//! `(gamma_1, gamma_2, gamma_3, alpha, k)`:
//! 1. pointwise derivative-free fits, each stage restricted to its own
//!    parameters so the per-point optimum stays well-defined: the alpha
//!    stage fits alpha alone over an eccentricity sweep at the reference
//!    geometry (with the one-point-calibrated scale), the gamma stage fits
//!    the three gammas over a skull-thickness sweep at mid-range
//!    eccentricity;
//! 2. least-squares polynomial regression of the pointwise optima against
//!    the chosen radius ratios (gamma) and eta (alpha); the global impedance
//!    scale is the geometric mean of the pointwise scales.
//!
//! Static-stage evaluation is conduction-only on both sides (displacement
//! terms suppressed), so the objective, and therefore the whole fit result,
//! is exactly independent of the configured objective frequency: the
//! optimization targets geometry dependence only.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent std methods shadow Float under cfg(test)
use num_traits::Float;

use crate::circuit::{
    build_network, solve_network, AlphaMap, DispersionMode, Domain, FittedParams, GammaMap,
    PsiRatio,
};
use crate::error::Error;
use crate::geom::{DipoleSource, HeadGeometry};
use crate::optim::{nelder_mead, NelderMeadOptions, OptimResult};
use crate::poly::Polynomial;
use crate::ssh::ssh_peak_potential_sigma;
use crate::tissue::TissueSpec;
use crate::Result;

/// Upper bound of the fitted eccentricity range.
pub const ETA_FIT_MAX: f64 = 0.965;

/// Bound used by the smooth squashing map that keeps `|alpha| < 1`.
const ALPHA_BOUND: f64 = 0.99;

/// Optimizer settings for the pointwise fits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub max_iters: u32,
    pub tol: f64,
    pub initial_step: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            max_iters: 600,
            tol: 1e-14,
            initial_step: 0.15,
        }
    }
}

impl OptimizerConfig {
    fn nelder_mead_options(&self) -> NelderMeadOptions {
        NelderMeadOptions {
            max_iters: self.max_iters,
            f_tol: self.tol,
            x_tol: 1e-9,
            initial_step: self.initial_step,
        }
    }
}

/// Full configuration of the fitting pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    /// Skull-thickness sweep (brain and scalp radii held constant).
    pub geometry_grid: Vec<HeadGeometry>,
    /// Eccentricity sweep for the alpha stage, within `[0, 0.965]`.
    pub eccentricity_grid: Vec<f64>,
    /// Non-dispersive tissue properties used during fitting.
    pub static_tissues: [TissueSpec; 3],
    /// Static evaluation frequency in Hz; the conduction-only objective makes
    /// the result independent of it (kept for provenance and table anchoring).
    pub objective_frequency_hz: f64,
    /// Polynomial degree for the gamma maps (1 or 2).
    pub gamma_degree: usize,
    /// Polynomial degree for alpha(eta) (1 or 2).
    pub alpha_degree: usize,
    /// Which radius ratio each layer's gamma is regressed against.
    pub gamma_abscissa: [PsiRatio; 3],
    /// Eccentricity held fixed during the gamma stage.
    pub gamma_stage_eta: f64,
    /// Geometry held fixed during the alpha stage (also sets the reference
    /// scalp radius of the fitted parameters).
    pub alpha_stage_geometry: HeadGeometry,
    /// Dipole moment in A*m and effective length in m used in the objective.
    pub p_r_am: f64,
    pub d_m: f64,
    pub optimizer: OptimizerConfig,
    /// SSH truncation settings for the targets.
    pub ssh_tol: f64,
    pub ssh_l_cap: u32,
}

impl FitConfig {
    /// Protocol defaults: skull thickness swept 4.6 mm to 8.2 mm in seven
    /// steps at the standard brain/scalp radii, eccentricities up to 0.965,
    /// degree-2 polynomials, mid-range gamma-stage eccentricity 0.465.
    pub fn standard(static_tissues: [TissueSpec; 3]) -> Self {
        let standard = HeadGeometry::standard();
        let r1 = standard.r_brain();
        let r3 = standard.r_scalp();
        let geometry_grid = [4.6e-3, 5.2e-3, 5.8e-3, 6.4e-3, 7.0e-3, 7.6e-3, 8.2e-3]
            .iter()
            .map(|&t| HeadGeometry::new(r1, r1 + t, r3).expect("grid geometry is valid"))
            .collect();
        Self {
            geometry_grid,
            eccentricity_grid: alloc::vec![
                0.0, 0.1, 0.2, 0.3, 0.4, 0.465, 0.55, 0.65, 0.75, 0.85, 0.965
            ],
            static_tissues,
            objective_frequency_hz: 1e3,
            gamma_degree: 2,
            alpha_degree: 2,
            gamma_abscissa: [PsiRatio::Psi12, PsiRatio::Psi23, PsiRatio::Psi23],
            gamma_stage_eta: 0.465,
            alpha_stage_geometry: standard,
            p_r_am: 15e-9,
            d_m: 1e-3,
            optimizer: OptimizerConfig::default(),
            ssh_tol: 1e-12,
            ssh_l_cap: 1000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.geometry_grid.is_empty() {
            return Err(Error::Mismatch("geometry grid must not be empty"));
        }
        if self.eccentricity_grid.is_empty() {
            return Err(Error::Mismatch("eccentricity grid must not be empty"));
        }
        for &eta in &self.eccentricity_grid {
            if !(0.0..=ETA_FIT_MAX + 1e-12).contains(&eta) {
                return Err(Error::Domain("eccentricity grid must lie in [0, 0.965]"));
            }
        }
        if !(0.0..1.0).contains(&self.gamma_stage_eta) {
            return Err(Error::Domain("gamma-stage eta must lie in [0, 1)"));
        }
        if self.static_tissues.iter().any(|t| t.is_dispersive()) {
            return Err(Error::InvalidTissue(
                "fitting requires static (non-dispersive) tissue properties",
            ));
        }
        if self.objective_frequency_hz.is_nan()
            || self.objective_frequency_hz <= 0.0
            || self.objective_frequency_hz.is_infinite()
        {
            return Err(Error::Domain("objective frequency must be finite and > 0"));
        }
        if !(1..=2).contains(&self.gamma_degree) || !(1..=2).contains(&self.alpha_degree) {
            return Err(Error::Domain("polynomial degrees must be 1 or 2"));
        }
        if self.p_r_am == 0.0 || !self.p_r_am.is_finite() {
            return Err(Error::InvalidSource("fit requires a nonzero dipole moment"));
        }
        if self.d_m.is_nan() || self.d_m <= 0.0 {
            return Err(Error::InvalidSource("effective length must be > 0"));
        }
        Ok(())
    }
}

/// Result of one pointwise fit.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFit {
    pub gamma: [f64; 3],
    pub alpha: f64,
    pub scale: f64,
    /// Achieved relative magnitude error at the optimum.
    pub residual: f64,
    /// Relative magnitude error at the start point (gamma = 1, alpha = 0,
    /// k = one-point calibration).
    pub pre_residual: f64,
    pub converged: bool,
    pub iterations: u32,
    pub evals: u32,
}

/// Pointwise optima of both stages, keyed by their sweep coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseFits {
    pub gamma_stage: Vec<(HeadGeometry, PointFit)>,
    pub alpha_stage: Vec<(f64, PointFit)>,
}

/// Stage a fit record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitStage {
    Gamma,
    Alpha,
}

/// Per-grid-point diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FitPointRecord {
    pub stage: FitStage,
    pub eta: f64,
    pub t_skull_m: f64,
    pub pre_residual: f64,
    pub post_residual: f64,
    /// Residual re-evaluated with the final regressed parameter maps.
    pub poly_residual: f64,
    pub converged: bool,
}

/// Outcome of the full fitting pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub points: Vec<FitPointRecord>,
    /// Mean pre-fit residual over all grid points.
    pub initial_objective: f64,
    /// Mean post-fit (pointwise) residual over all grid points.
    pub final_objective: f64,
    pub total_iterations: u64,
    pub any_nonconverged: bool,
    pub params: FittedParams,
}

/// Conduction-only layer conductivities at the objective frequency.
fn conduction_sigma(config: &FitConfig) -> Result<[Complex64; 4]> {
    let f = config.objective_frequency_hz;
    let mut sigma = [Complex64::new(0.0, 0.0); 4];
    for (dst, tissue) in sigma.iter_mut().zip(config.static_tissues.iter()) {
        let (s, _eps, _clamped) = tissue.properties_at(f)?;
        *dst = Complex64::new(s, 0.0);
    }
    // air stays exactly zero in the conduction-only setting
    Ok(sigma)
}

/// `|V_SSH|` target with conduction-only properties.
fn ssh_target(config: &FitConfig, geom: &HeadGeometry, eta: f64) -> Result<f64> {
    let src = DipoleSource::at_eccentricity(config.p_r_am, config.d_m, eta, geom)?;
    let sigma = conduction_sigma(config)?;
    let sol = ssh_peak_potential_sigma(geom, &sigma, &src, config.ssh_tol, config.ssh_l_cap)?;
    Ok(sol.v_scalp.norm())
}

/// `|V_circuit|` with conduction-only elements for explicit parameter values.
fn circuit_magnitude(
    config: &FitConfig,
    geom: &HeadGeometry,
    eta: f64,
    gamma: [f64; 3],
    alpha: f64,
    scale: f64,
) -> Result<f64> {
    let params = constant_params(config, gamma, alpha, scale);
    let src = DipoleSource::at_eccentricity(config.p_r_am, config.d_m, eta, geom)?;
    let f_obj = config.objective_frequency_hz;
    let net = build_network(
        geom,
        &config.static_tissues,
        &params,
        &src,
        f_obj,
        DispersionMode::StaticAnchor { f_anchor_hz: f_obj },
    )?;
    let sol = solve_network(&net, f_obj)?;
    Ok(sol.v_scalp_max().norm())
}

fn constant_params(config: &FitConfig, gamma: [f64; 3], alpha: f64, scale: f64) -> FittedParams {
    let maps = [
        GammaMap {
            poly: Polynomial::constant(gamma[0]),
            abscissa: config.gamma_abscissa[0],
            domain: Domain::UNBOUNDED,
        },
        GammaMap {
            poly: Polynomial::constant(gamma[1]),
            abscissa: config.gamma_abscissa[1],
            domain: Domain::UNBOUNDED,
        },
        GammaMap {
            poly: Polynomial::constant(gamma[2]),
            abscissa: config.gamma_abscissa[2],
            domain: Domain::UNBOUNDED,
        },
    ];
    FittedParams {
        gamma: maps,
        alpha: AlphaMap {
            poly: Polynomial::constant(alpha),
            domain: Domain::UNBOUNDED,
        },
        global_scale: scale,
        reference_r_scalp: config.alpha_stage_geometry.r_scalp(),
    }
}

/// One-point calibration of the initial impedance scale: makes the neutral
/// circuit match the SSH magnitude at the reference geometry's centered
/// dipole (the circuit voltage is exactly linear in the scale).
pub fn initial_scale(config: &FitConfig) -> Result<f64> {
    let geom = &config.alpha_stage_geometry;
    let target = ssh_target(config, geom, 0.0)?;
    let unit = circuit_magnitude(config, geom, 0.0, [1.0, 1.0, 1.0], 0.0, 1.0)?;
    if unit == 0.0 || target == 0.0 {
        return Err(Error::Domain("calibration point produced a zero magnitude"));
    }
    Ok(target / unit)
}

/// Which of the five parameters a pointwise search may move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct FreeVars {
    gamma: bool,
    alpha: bool,
    scale: bool,
}

/// Baseline values for parameters a restricted search holds fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ParamPoint {
    gamma: [f64; 3],
    alpha: f64,
    scale: f64,
}

/// Search-space transform: log for gamma and scale (positive by
/// construction), tanh squashing for alpha (bounded to (-0.99, 0.99)).
fn encode(p: &ParamPoint) -> [f64; 5] {
    [
        p.gamma[0].ln(),
        p.gamma[1].ln(),
        p.gamma[2].ln(),
        (p.alpha / ALPHA_BOUND).atanh(),
        p.scale.ln(),
    ]
}

fn decode(u: &[f64; 5]) -> ParamPoint {
    ParamPoint {
        gamma: [u[0].exp(), u[1].exp(), u[2].exp()],
        alpha: ALPHA_BOUND * u[3].tanh(),
        scale: u[4].exp(),
    }
}

fn fit_restricted(
    config: &FitConfig,
    geom: &HeadGeometry,
    eta: f64,
    base: ParamPoint,
    free: FreeVars,
) -> Result<PointFit> {
    let target = ssh_target(config, geom, eta)?;
    if target == 0.0 {
        return Err(Error::ZeroReference { index: 0 });
    }

    let full0 = encode(&base);
    let mut free_idx: Vec<usize> = Vec::new();
    if free.gamma {
        free_idx.extend_from_slice(&[0, 1, 2]);
    }
    if free.alpha {
        free_idx.push(3);
    }
    if free.scale {
        free_idx.push(4);
    }
    debug_assert!(!free_idx.is_empty());

    let eval_full = |u: &[f64; 5]| -> f64 {
        let p = decode(u);
        match circuit_magnitude(config, geom, eta, p.gamma, p.alpha, p.scale) {
            Ok(mag) => ((mag - target) / target).abs(),
            Err(_) => f64::INFINITY,
        }
    };

    // Residual at the protocol's neutral start (gamma = 1, alpha = 0,
    // calibrated scale): the reference point for the monotonicity contract.
    let neutral = ParamPoint {
        gamma: [1.0, 1.0, 1.0],
        alpha: 0.0,
        scale: base.scale,
    };
    let pre_residual = eval_full(&encode(&neutral));

    let x0: Vec<f64> = free_idx.iter().map(|&i| full0[i]).collect();
    let objective = |x: &[f64]| -> f64 {
        let mut u = full0;
        for (&slot, &i) in x.iter().zip(free_idx.iter()) {
            u[i] = slot;
        }
        eval_full(&u)
    };
    let result: OptimResult = nelder_mead(objective, &x0, &config.optimizer.nelder_mead_options());

    let mut u = full0;
    for (slot, &i) in result.x.iter().zip(free_idx.iter()) {
        u[i] = *slot;
    }
    let p = decode(&u);
    Ok(PointFit {
        gamma: p.gamma,
        alpha: p.alpha,
        scale: p.scale,
        residual: result.f,
        pre_residual,
        converged: result.converged,
        iterations: result.iterations,
        evals: result.evals,
    })
}

/// Pointwise fit of all of `(gamma, alpha, scale)` at a single
/// `(geometry, eta)` via derivative-free local search.
pub fn fit_pointwise(config: &FitConfig, geom: &HeadGeometry, eta: f64) -> Result<PointFit> {
    let k0 = initial_scale(config)?;
    fit_restricted(
        config,
        geom,
        eta,
        ParamPoint {
            gamma: [1.0, 1.0, 1.0],
            alpha: 0.0,
            scale: k0,
        },
        FreeVars {
            gamma: true,
            alpha: true,
            scale: true,
        },
    )
}

/// Alpha-stage point: fits the source asymmetry alone at the reference
/// geometry, with neutral gammas and the calibrated scale. One parameter
/// against one target keeps the optimum well-defined; at high eccentricity
/// alpha saturates against its (-1, 1) bound, which is the surrogate's
/// structural limit.
pub fn fit_alpha_point(config: &FitConfig, eta: f64) -> Result<PointFit> {
    let k0 = initial_scale(config)?;
    fit_restricted(
        config,
        &config.alpha_stage_geometry,
        eta,
        ParamPoint {
            gamma: [1.0, 1.0, 1.0],
            alpha: 0.0,
            scale: k0,
        },
        FreeVars {
            gamma: false,
            alpha: true,
            scale: false,
        },
    )
}

/// Gamma-stage point: fits the three partitioning ratios at one geometry,
/// holding alpha at the mid-eccentricity pointwise value and the scale at
/// the calibration.
pub fn fit_gamma_point(
    config: &FitConfig,
    geom: &HeadGeometry,
    alpha_mid: f64,
) -> Result<PointFit> {
    let k0 = initial_scale(config)?;
    fit_restricted(
        config,
        geom,
        config.gamma_stage_eta,
        ParamPoint {
            gamma: [1.0, 1.0, 1.0],
            alpha: alpha_mid,
            scale: k0,
        },
        FreeVars {
            gamma: true,
            alpha: false,
            scale: false,
        },
    )
}

/// The pointwise asymmetry at the gamma stage's fixed eccentricity.
pub fn mid_alpha(config: &FitConfig) -> Result<f64> {
    Ok(fit_alpha_point(config, config.gamma_stage_eta)?.alpha)
}

/// Runs the pointwise stage over both grids, sequentially.
pub fn run_pointwise_fits(config: &FitConfig) -> Result<PointwiseFits> {
    config.validate()?;
    let mut alpha_stage = Vec::with_capacity(config.eccentricity_grid.len());
    for &eta in &config.eccentricity_grid {
        let fit = fit_alpha_point(config, eta)?;
        alpha_stage.push((eta, fit));
    }
    let alpha_mid = mid_alpha(config)?;
    let mut gamma_stage = Vec::with_capacity(config.geometry_grid.len());
    for geom in &config.geometry_grid {
        let fit = fit_gamma_point(config, geom, alpha_mid)?;
        gamma_stage.push((*geom, fit));
    }
    Ok(PointwiseFits {
        gamma_stage,
        alpha_stage,
    })
}

/// Regresses the pointwise optima into polynomial maps and assembles the
/// final parameter set.
pub fn fit_polynomials(config: &FitConfig, fits: &PointwiseFits) -> Result<FittedParams> {
    if fits.gamma_stage.len() < config.gamma_degree + 1 {
        return Err(Error::DegenerateDesign(
            "gamma stage needs at least degree + 1 grid points",
        ));
    }
    if fits.alpha_stage.len() < config.alpha_degree + 1 {
        return Err(Error::DegenerateDesign(
            "alpha stage needs at least degree + 1 grid points",
        ));
    }

    let mut gamma_maps: Vec<GammaMap> = Vec::with_capacity(3);
    for layer in 0..3 {
        let abscissa = config.gamma_abscissa[layer];
        let xs: Vec<f64> = fits
            .gamma_stage
            .iter()
            .map(|(geom, _)| abscissa.eval(geom))
            .collect();
        let ys: Vec<f64> = fits
            .gamma_stage
            .iter()
            .map(|(_, fit)| fit.gamma[layer])
            .collect();
        let poly = Polynomial::fit_least_squares(&xs, &ys, config.gamma_degree)?;
        let (min, max) = min_max(&xs);
        gamma_maps.push(GammaMap {
            poly,
            abscissa,
            domain: Domain::new(min, max),
        });
    }

    let xs: Vec<f64> = fits.alpha_stage.iter().map(|(eta, _)| *eta).collect();
    let ys: Vec<f64> = fits.alpha_stage.iter().map(|(_, fit)| fit.alpha).collect();
    let mut alpha_poly = Polynomial::fit_least_squares(&xs, &ys, config.alpha_degree)?;
    let (eta_min, eta_max) = min_max(&xs);
    // The regression can overshoot the saturated pointwise values near the
    // domain edge; |alpha| < 1 must hold over the whole guarded domain.
    let guard_hi = eta_max + 0.01 * eta_max.abs().max(eta_min.abs());
    let peak = poly_abs_max_over(&alpha_poly, eta_min, guard_hi);
    if peak >= ALPHA_BOUND {
        let shrink = ALPHA_BOUND / peak * (1.0 - 1e-9);
        let coeffs: Vec<f64> = alpha_poly.coeffs().iter().map(|c| c * shrink).collect();
        alpha_poly = Polynomial::new(coeffs);
    }

    // Geometric mean of all pointwise impedance scales.
    let mut log_sum = 0.0;
    let mut count = 0usize;
    for (_, fit) in fits.gamma_stage.iter() {
        log_sum += fit.scale.ln();
        count += 1;
    }
    for (_, fit) in fits.alpha_stage.iter() {
        log_sum += fit.scale.ln();
        count += 1;
    }
    let global_scale = (log_sum / count as f64).exp();

    let params = FittedParams {
        gamma: [
            gamma_maps[0].clone(),
            gamma_maps[1].clone(),
            gamma_maps[2].clone(),
        ],
        alpha: AlphaMap {
            poly: alpha_poly,
            domain: Domain::new(eta_min, eta_max),
        },
        global_scale,
        reference_r_scalp: config.alpha_stage_geometry.r_scalp(),
    };

    // Sanity: the regressed maps must stay in range over the fitted domain.
    for (geom, _) in fits.gamma_stage.iter() {
        for layer in crate::circuit::Layer::ALL {
            params.gamma_at(layer, geom)?;
        }
    }
    for (eta, _) in fits.alpha_stage.iter() {
        params.alpha_at(*eta)?;
    }
    Ok(params)
}

/// Full pipeline: pointwise fits, polynomial regression, report assembly.
pub fn fit(config: &FitConfig) -> Result<FitReport> {
    let fits = run_pointwise_fits(config)?;
    let params = fit_polynomials(config, &fits)?;
    build_report(config, &fits, params)
}

/// Assembles the report for already-computed pointwise fits (lets callers
/// parallelize the pointwise stage themselves).
pub fn build_report(
    config: &FitConfig,
    fits: &PointwiseFits,
    params: FittedParams,
) -> Result<FitReport> {
    let mut points = Vec::new();
    let mut pre_sum = 0.0;
    let mut post_sum = 0.0;
    let mut iters = 0u64;
    let mut any_nonconverged = false;

    let mut push_record = |stage: FitStage,
                           geom: &HeadGeometry,
                           eta: f64,
                           fit: &PointFit,
                           params: &FittedParams|
     -> Result<()> {
        let target = ssh_target(config, geom, eta)?;
        let poly_residual = match poly_magnitude(config, geom, eta, params) {
            Ok(mag) => ((mag - target) / target).abs(),
            Err(_) => f64::INFINITY,
        };
        pre_sum += fit.pre_residual;
        post_sum += fit.residual;
        iters += u64::from(fit.iterations);
        any_nonconverged |= !fit.converged;
        points.push(FitPointRecord {
            stage,
            eta,
            t_skull_m: geom.skull_thickness(),
            pre_residual: fit.pre_residual,
            post_residual: fit.residual,
            poly_residual,
            converged: fit.converged,
        });
        Ok(())
    };

    for (geom, fit) in fits.gamma_stage.iter() {
        push_record(FitStage::Gamma, geom, config.gamma_stage_eta, fit, &params)?;
    }
    for (eta, fit) in fits.alpha_stage.iter() {
        push_record(
            FitStage::Alpha,
            &config.alpha_stage_geometry,
            *eta,
            fit,
            &params,
        )?;
    }

    let n = points.len() as f64;
    Ok(FitReport {
        points,
        initial_objective: pre_sum / n,
        final_objective: post_sum / n,
        total_iterations: iters,
        any_nonconverged,
        params,
    })
}

/// Conduction-only circuit magnitude with the final parameter maps.
fn poly_magnitude(
    config: &FitConfig,
    geom: &HeadGeometry,
    eta: f64,
    params: &FittedParams,
) -> Result<f64> {
    let src = DipoleSource::at_eccentricity(config.p_r_am, config.d_m, eta, geom)?;
    let f_obj = config.objective_frequency_hz;
    let net = build_network(
        geom,
        &config.static_tissues,
        params,
        &src,
        f_obj,
        DispersionMode::StaticAnchor { f_anchor_hz: f_obj },
    )?;
    Ok(solve_network(&net, f_obj)?.v_scalp_max().norm())
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &x in xs {
        min = min.min(x);
        max = max.max(x);
    }
    (min, max)
}

/// Maximum of |p| over [lo, hi] for degree <= 2 (endpoints plus the interior
/// stationary point).
fn poly_abs_max_over(p: &Polynomial, lo: f64, hi: f64) -> f64 {
    let mut peak = p.eval(lo).abs().max(p.eval(hi).abs());
    let c = p.coeffs();
    if c.len() == 3 && c[2] != 0.0 {
        let x_star = -c[1] / (2.0 * c[2]);
        if x_star > lo && x_star < hi {
            peak = peak.max(p.eval(x_star).abs());
        }
    }
    peak
}
