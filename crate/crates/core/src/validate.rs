//! Validation harness: MRFE sweeps over eccentricity and skull thickness
//! with dispersive tissues, and the dispersion/displacement-current ablation.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent std methods shadow Float under cfg(test)
use num_traits::Float;

use crate::circuit::{build_network, solve_network, DispersionMode, FittedParams};
use crate::error::Error;
use crate::geom::{DipoleSource, HeadGeometry};
use crate::ssh::ssh_peak_potential;
use crate::tissue::TissueSpec;
use crate::Result;

/// Frequency grid spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl Spacing {
    pub fn name(&self) -> &'static str {
        match self {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        }
    }
}

/// Evaluation frequency grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    pub f_min_hz: f64,
    pub f_max_hz: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl FrequencyGrid {
    pub fn new(f_min_hz: f64, f_max_hz: f64, n_points: usize, spacing: Spacing) -> Result<Self> {
        let ordered = f_min_hz > 0.0 && f_max_hz > f_min_hz && f_max_hz.is_finite();
        if !ordered {
            return Err(Error::Domain("frequency grid needs 0 < f_min < f_max"));
        }
        if n_points < 2 {
            return Err(Error::Domain("frequency grid needs at least 2 points"));
        }
        Ok(Self {
            f_min_hz,
            f_max_hz,
            n_points,
            spacing,
        })
    }

    /// 75 points uniformly spaced over 10 Hz - 50 kHz.
    pub fn standard() -> Self {
        Self::new(10.0, 50e3, 75, Spacing::Linear).expect("standard grid is valid")
    }

    /// Grid frequencies; endpoints are exact, interior points are computed
    /// directly per index (no accumulation) for determinism.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.n_points;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let f = if i == 0 {
                self.f_min_hz
            } else if i == n - 1 {
                self.f_max_hz
            } else {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.f_min_hz + t * (self.f_max_hz - self.f_min_hz),
                    Spacing::Log => {
                        let lo = self.f_min_hz.log10();
                        let hi = self.f_max_hz.log10();
                        libm_pow10(lo + t * (hi - lo))
                    }
                }
            };
            out.push(f);
        }
        out
    }
}

fn libm_pow10(x: f64) -> f64 {
    10.0_f64.powf(x)
}

/// The three ablation configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AblationCase {
    /// Constant static resistances (sigma anchored at one frequency), C = 0.
    OhmicStatic,
    /// Dispersive conductivity R(sigma(f)), C = 0.
    DispersiveROnly,
    /// Full dispersive parametrization R(sigma(f)), C(eps(f)).
    DispersiveRc,
}

impl AblationCase {
    pub const ALL: [AblationCase; 3] = [
        AblationCase::OhmicStatic,
        AblationCase::DispersiveROnly,
        AblationCase::DispersiveRc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AblationCase::OhmicStatic => "ohmic_static",
            AblationCase::DispersiveROnly => "dispersive_r_only",
            AblationCase::DispersiveRc => "dispersive_rc",
        }
    }

    /// Element parametrization implementing this case.
    pub fn mode(&self, static_anchor_hz: f64) -> DispersionMode {
        match self {
            AblationCase::OhmicStatic => DispersionMode::StaticAnchor {
                f_anchor_hz: static_anchor_hz,
            },
            AblationCase::DispersiveROnly => DispersionMode::ResistiveOnly,
            AblationCase::DispersiveRc => DispersionMode::Full,
        }
    }
}

/// Mean relative frequency error between two magnitude series on the same
/// frequency grid: `mean_f |(c_f - r_f) / r_f|`.
pub fn mrfe(circuit: &[f64], reference: &[f64]) -> Result<f64> {
    if circuit.len() != reference.len() || circuit.is_empty() {
        return Err(Error::Mismatch("mrfe needs equal-length, non-empty series"));
    }
    let mut sum = 0.0;
    for (index, (&c, &r)) in circuit.iter().zip(reference.iter()).enumerate() {
        if r == 0.0 {
            return Err(Error::ZeroReference { index });
        }
        sum += ((c - r) / r).abs();
    }
    Ok(sum / circuit.len() as f64)
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman_rank_correlation(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Mismatch(
            "spearman needs equal-length series of at least 2",
        ));
    }
    let rx = ranks(xs);
    let ry = ranks(ys);
    let n = xs.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let mut num = 0.0;
    let mut dx = 0.0;
    let mut dy = 0.0;
    for (a, b) in rx.iter().zip(ry.iter()) {
        num += (a - mean) * (b - mean);
        dx += (a - mean) * (a - mean);
        dy += (b - mean) * (b - mean);
    }
    if dx == 0.0 || dy == 0.0 {
        return Err(Error::DegenerateDesign("constant series has no rank order"));
    }
    Ok(num / (dx * dy).sqrt())
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| {
        xs[a]
            .partial_cmp(&xs[b])
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut out = alloc::vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            out[idx] = avg;
        }
        i = j + 1;
    }
    out
}

/// Sweep settings: eccentricities, skull thicknesses and the source.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub eta_values: Vec<f64>,
    pub t_skull_values_m: Vec<f64>,
    pub p_r_am: f64,
    pub d_m: f64,
    pub ssh_tol: f64,
    pub ssh_l_cap: u32,
}

impl SweepConfig {
    /// Protocol defaults: eta in {0.233, 0.465, 0.814, 0.935, 0.966},
    /// skull thickness 4.6 mm to 8.2 mm, p_r = 15 nA*m, d = 1 mm.
    pub fn standard() -> Self {
        Self {
            eta_values: alloc::vec![0.233, 0.465, 0.814, 0.935, 0.966],
            t_skull_values_m: alloc::vec![4.6e-3, 5.2e-3, 5.8e-3, 6.4e-3, 7.0e-3, 7.6e-3, 8.2e-3],
            p_r_am: 15e-9,
            d_m: 1e-3,
            ssh_tol: 1e-10,
            ssh_l_cap: 500,
        }
    }
}

/// One sweep cell: both magnitude spectra and their MRFE, or the error that
/// invalidated the cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub eta: f64,
    pub t_skull_m: f64,
    pub v_circuit_abs: Vec<f64>,
    pub v_ssh_abs: Vec<f64>,
    /// `None` for invalid cells.
    pub mrfe: Option<f64>,
    pub valid: bool,
    pub error: Option<Error>,
}

/// Result of an MRFE sweep. Cells are ordered eta-major, then skull
/// thickness, independent of evaluation order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub frequencies: Vec<f64>,
    pub cells: Vec<SweepCell>,
    pub invalid_count: usize,
}

impl SweepResult {
    pub fn cell(&self, eta: f64, t_skull_m: f64) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.eta == eta && c.t_skull_m == t_skull_m)
    }
}

/// Computes one sweep cell. Exposed so callers can evaluate cells
/// concurrently; the result depends only on the arguments.
pub fn sweep_cell(
    params: &FittedParams,
    geom_base: &HeadGeometry,
    tissues: &[TissueSpec; 3],
    frequencies: &[f64],
    sweep: &SweepConfig,
    eta: f64,
    t_skull_m: f64,
) -> SweepCell {
    match compute_cell(
        params,
        geom_base,
        tissues,
        frequencies,
        sweep,
        eta,
        t_skull_m,
    ) {
        Ok((v_circuit_abs, v_ssh_abs, cell_mrfe)) => SweepCell {
            eta,
            t_skull_m,
            v_circuit_abs,
            v_ssh_abs,
            mrfe: Some(cell_mrfe),
            valid: true,
            error: None,
        },
        Err(err) => SweepCell {
            eta,
            t_skull_m,
            v_circuit_abs: Vec::new(),
            v_ssh_abs: Vec::new(),
            mrfe: None,
            valid: false,
            error: Some(err),
        },
    }
}

fn compute_cell(
    params: &FittedParams,
    geom_base: &HeadGeometry,
    tissues: &[TissueSpec; 3],
    frequencies: &[f64],
    sweep: &SweepConfig,
    eta: f64,
    t_skull_m: f64,
) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    // Brain and scalp radii held constant; the skull/scalp interface moves.
    let geom = HeadGeometry::new(
        geom_base.r_brain(),
        geom_base.r_brain() + t_skull_m,
        geom_base.r_scalp(),
    )?;
    let src = DipoleSource::at_eccentricity(sweep.p_r_am, sweep.d_m, eta, &geom)?;
    let four = [
        tissues[0].clone(),
        tissues[1].clone(),
        tissues[2].clone(),
        TissueSpec::air(),
    ];
    let mut v_circuit = Vec::with_capacity(frequencies.len());
    let mut v_ssh = Vec::with_capacity(frequencies.len());
    for &f in frequencies {
        let ssh = ssh_peak_potential(&geom, &four, &src, f, sweep.ssh_tol, sweep.ssh_l_cap)?;
        let net = build_network(&geom, tissues, params, &src, f, DispersionMode::Full)?;
        let sol = solve_network(&net, f)?;
        v_ssh.push(ssh.v_scalp.norm());
        v_circuit.push(sol.v_scalp_max().norm());
    }
    let cell_mrfe = mrfe(&v_circuit, &v_ssh)?;
    Ok((v_circuit, v_ssh, cell_mrfe))
}

/// Runs the full MRFE sweep sequentially. Failed cells are reported and
/// counted, never dropped.
pub fn run_mrfe_sweep(
    params: &FittedParams,
    geom_base: &HeadGeometry,
    tissues: &[TissueSpec; 3],
    grid: &FrequencyGrid,
    sweep: &SweepConfig,
) -> Result<SweepResult> {
    if sweep.eta_values.is_empty() || sweep.t_skull_values_m.is_empty() {
        return Err(Error::Mismatch("sweep grids must not be empty"));
    }
    let frequencies = grid.frequencies();
    let mut cells = Vec::with_capacity(sweep.eta_values.len() * sweep.t_skull_values_m.len());
    for &eta in &sweep.eta_values {
        for &t in &sweep.t_skull_values_m {
            cells.push(sweep_cell(
                params,
                geom_base,
                tissues,
                &frequencies,
                sweep,
                eta,
                t,
            ));
        }
    }
    let invalid_count = cells.iter().filter(|c| !c.valid).count();
    Ok(SweepResult {
        frequencies,
        cells,
        invalid_count,
    })
}

/// Ablation spectra and their deviations from the full RC model.
#[derive(Debug, Clone, PartialEq)]
pub struct AblationResult {
    pub frequencies: Vec<f64>,
    pub v_ohmic: Vec<f64>,
    pub v_disp_r: Vec<f64>,
    pub v_disp_rc: Vec<f64>,
    /// `|v_ohmic - v_disp_rc| / v_disp_rc` per frequency.
    pub dev_ohmic_vs_rc: Vec<f64>,
    /// `|v_disp_r - v_disp_rc| / v_disp_rc` per frequency.
    pub dev_disp_r_vs_rc: Vec<f64>,
}

/// Compares the three circuit configurations at one eccentricity.
/// `static_anchor_hz` selects the frequency whose sigma feeds the ohmic
/// case; it defaults to the grid's lowest frequency.
#[allow(clippy::too_many_arguments)]
pub fn run_ablation(
    params: &FittedParams,
    geom: &HeadGeometry,
    tissues: &[TissueSpec; 3],
    grid: &FrequencyGrid,
    eta: f64,
    p_r_am: f64,
    d_m: f64,
    static_anchor_hz: Option<f64>,
) -> Result<AblationResult> {
    let frequencies = grid.frequencies();
    let anchor = static_anchor_hz.unwrap_or(grid.f_min_hz);
    let src = DipoleSource::at_eccentricity(p_r_am, d_m, eta, geom)?;

    let mut spectra: [Vec<f64>; 3] = [
        Vec::with_capacity(frequencies.len()),
        Vec::with_capacity(frequencies.len()),
        Vec::with_capacity(frequencies.len()),
    ];
    for &f in &frequencies {
        for (case, spectrum) in AblationCase::ALL.iter().zip(spectra.iter_mut()) {
            let net = build_network(geom, tissues, params, &src, f, case.mode(anchor))?;
            spectrum.push(solve_network(&net, f)?.v_scalp_max().norm());
        }
    }
    let [v_ohmic, v_disp_r, v_disp_rc] = spectra;

    let deviation = |series: &[f64]| -> Result<Vec<f64>> {
        series
            .iter()
            .zip(v_disp_rc.iter())
            .enumerate()
            .map(|(index, (&v, &rc))| {
                if rc == 0.0 {
                    Err(Error::ZeroReference { index })
                } else {
                    Ok((v - rc).abs() / rc)
                }
            })
            .collect()
    };
    let dev_ohmic_vs_rc = deviation(&v_ohmic)?;
    let dev_disp_r_vs_rc = deviation(&v_disp_r)?;

    Ok(AblationResult {
        frequencies,
        v_ohmic,
        v_disp_r,
        v_disp_rc,
        dev_ohmic_vs_rc,
        dev_disp_r_vs_rc,
    })
}
