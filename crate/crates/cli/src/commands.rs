//! Command implementations. Every command computes its outputs fully in
//! memory, then writes each file atomically, so failures never leave
//! partial outputs. Returned strings are warnings (exit code 3).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use trishell_core::circuit::{branch_impedances, solve_network, FittedParams};
use trishell_core::fit::{
    build_report, fit_alpha_point, fit_gamma_point, fit_polynomials, mid_alpha, FitStage,
    PointwiseFits,
};
use trishell_core::netlist::{netlist_document, NetlistMeta};
use trishell_core::ssh::ssh_peak_potential;
use trishell_core::tissue::TissueSpec;
use trishell_core::validate::{run_ablation, sweep_cell, Spacing, SweepResult};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::jobs::par_map_indexed;
use crate::output::{fmt_full, fnv1a64, write_atomic};
use crate::params_file::ParamsFile;
use crate::sweep_io::{summary_doc, sweep_to_csv, TissueHashesDoc};
use crate::tables::tissue_hash;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything a command needs besides its own flags.
pub struct CommandContext {
    pub config: RunConfig,
    pub config_dir: PathBuf,
    pub out_dir: PathBuf,
    pub jobs: usize,
    pub verbose: bool,
    pub spacing_override: Option<Spacing>,
}

impl CommandContext {
    pub fn load(
        config_path: &Path,
        out: Option<&Path>,
        jobs: usize,
        verbose: bool,
        spacing_override: Option<Spacing>,
    ) -> CliResult<Self> {
        let config = RunConfig::load(config_path)?;
        let config_dir = config_path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        let out_dir = config.output_dir(out);
        Ok(Self {
            config,
            config_dir,
            out_dir,
            jobs: jobs.max(1),
            verbose,
            spacing_override,
        })
    }

    fn note(&self, msg: &str) {
        if self.verbose {
            eprintln!("[trishell] {msg}");
        }
    }

    fn tissues(&self) -> CliResult<[TissueSpec; 3]> {
        self.config.tissues(&self.config_dir)
    }

    fn load_params(&self, params_path: &Path) -> CliResult<(FittedParams, String)> {
        let (doc, raw) = ParamsFile::load(params_path)?;
        Ok((doc.to_core()?, raw))
    }
}

/// `solve-ssh`: SSH spectrum over the frequency grid.
pub fn cmd_solve_ssh(ctx: &CommandContext) -> CliResult<Vec<String>> {
    let geom = ctx.config.geometry()?;
    let src = ctx.config.source(&geom)?;
    let tissues3 = ctx.tissues()?;
    let four = [
        tissues3[0].clone(),
        tissues3[1].clone(),
        tissues3[2].clone(),
        TissueSpec::air(),
    ];
    let grid = ctx.config.frequency_grid(ctx.spacing_override)?;
    let tol = ctx.config.ssh_tol();
    let l_cap = ctx.config.ssh_l_cap();

    ctx.note(&format!("solve-ssh over {} frequencies", grid.n_points));
    let mut csv = String::from("frequency_hz,v_re,v_im,v_abs,l_max_used\n");
    let mut clamped = false;
    let mut nonconverged = 0usize;
    for f in grid.frequencies() {
        let sol = ssh_peak_potential(&geom, &four, &src, f, tol, l_cap)?;
        clamped |= sol.clamped_tables;
        if !sol.converged {
            nonconverged += 1;
        }
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_full(f),
            fmt_full(sol.v_scalp.re),
            fmt_full(sol.v_scalp.im),
            fmt_full(sol.v_scalp.norm()),
            sol.l_max_used
        ));
    }
    write_atomic(&ctx.out_dir.join("ssh_spectrum.csv"), csv.as_bytes())?;

    let mut warnings = Vec::new();
    if clamped {
        warnings.push("dispersion table lookups were clamped to endpoint rows".to_string());
    }
    if nonconverged > 0 {
        warnings.push(format!(
            "series truncation tolerance not reached at {nonconverged} frequency points"
        ));
    }
    Ok(warnings)
}

/// `solve-circuit`: surrogate-circuit spectrum with fitted parameters.
pub fn cmd_solve_circuit(ctx: &CommandContext, params_path: &Path) -> CliResult<Vec<String>> {
    let geom = ctx.config.geometry()?;
    let src = ctx.config.source(&geom)?;
    let tissues = ctx.tissues()?;
    let grid = ctx.config.frequency_grid(ctx.spacing_override)?;
    let (params, _) = ctx.load_params(params_path)?;

    ctx.note(&format!("solve-circuit over {} frequencies", grid.n_points));
    let mut csv = String::from("frequency_hz,v_re,v_im,v_abs\n");
    let mut clamped = false;
    for f in grid.frequencies() {
        let net = branch_impedances(&geom, &tissues, &params, &src, f)?;
        clamped |= net.clamped_tables;
        let sol = solve_network(&net, f)?;
        let v = sol.v_scalp_max();
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_full(f),
            fmt_full(v.re),
            fmt_full(v.im),
            fmt_full(v.norm())
        ));
    }
    write_atomic(&ctx.out_dir.join("circuit_spectrum.csv"), csv.as_bytes())?;

    let mut warnings = Vec::new();
    if clamped {
        warnings.push("dispersion table lookups were clamped to endpoint rows".to_string());
    }
    Ok(warnings)
}

/// Fit report JSON document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FitReportDoc {
    pub initial_objective: f64,
    pub final_objective: f64,
    pub total_iterations: u64,
    pub any_nonconverged: bool,
    pub points: Vec<FitPointDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FitPointDoc {
    pub stage: String,
    pub eta: f64,
    pub t_skull_m: f64,
    pub pre_residual: f64,
    pub post_residual: f64,
    pub poly_residual: f64,
    pub converged: bool,
}

/// `fit`: identifies the circuit parameters and writes the params JSON plus
/// a fit report. The pointwise stages parallelize over grid points.
pub fn cmd_fit(ctx: &CommandContext) -> CliResult<Vec<String>> {
    let fit_config = ctx.config.fit_config()?;

    ctx.note(&format!(
        "fit: {} eccentricities, {} geometries, {} jobs",
        fit_config.eccentricity_grid.len(),
        fit_config.geometry_grid.len(),
        ctx.jobs
    ));

    let etas = fit_config.eccentricity_grid.clone();
    let alpha_results = par_map_indexed(etas.len(), ctx.jobs, |i| {
        fit_alpha_point(&fit_config, etas[i])
    });
    let mut alpha_stage = Vec::with_capacity(etas.len());
    for (eta, res) in etas.iter().zip(alpha_results) {
        alpha_stage.push((*eta, res?));
    }

    let alpha_mid = mid_alpha(&fit_config)?;
    let geoms = fit_config.geometry_grid.clone();
    let gamma_results = par_map_indexed(geoms.len(), ctx.jobs, |i| {
        fit_gamma_point(&fit_config, &geoms[i], alpha_mid)
    });
    let mut gamma_stage = Vec::with_capacity(geoms.len());
    for (geom, res) in geoms.iter().zip(gamma_results) {
        gamma_stage.push((*geom, res?));
    }

    let fits = PointwiseFits {
        gamma_stage,
        alpha_stage,
    };
    let params = fit_polynomials(&fit_config, &fits)?;
    let report = build_report(&fit_config, &fits, params)?;

    let params_doc = ParamsFile::from_fit(&fit_config, &report.params, TOOL_VERSION);
    let report_doc = FitReportDoc {
        initial_objective: report.initial_objective,
        final_objective: report.final_objective,
        total_iterations: report.total_iterations,
        any_nonconverged: report.any_nonconverged,
        points: report
            .points
            .iter()
            .map(|p| FitPointDoc {
                stage: match p.stage {
                    FitStage::Gamma => "gamma".to_string(),
                    FitStage::Alpha => "alpha".to_string(),
                },
                eta: p.eta,
                t_skull_m: p.t_skull_m,
                pre_residual: p.pre_residual,
                post_residual: p.post_residual,
                poly_residual: p.poly_residual,
                converged: p.converged,
            })
            .collect(),
    };

    let params_path = ctx.config.params_path(&ctx.out_dir);
    write_atomic(&params_path, params_doc.to_json().as_bytes())?;
    let mut report_json = serde_json::to_string_pretty(&report_doc)
        .map_err(|e| CliError::Numerical(format!("report serialization: {e}")))?;
    report_json.push('\n');
    write_atomic(&ctx.out_dir.join("fit_report.json"), report_json.as_bytes())?;

    let mut warnings = Vec::new();
    if report.any_nonconverged {
        warnings.push("one or more pointwise fits hit the iteration cap".to_string());
    }
    Ok(warnings)
}

/// `validate`: MRFE sweep over eccentricity and skull thickness.
pub fn cmd_validate(ctx: &CommandContext, params_path: &Path) -> CliResult<Vec<String>> {
    let geom = ctx.config.geometry()?;
    let tissues = ctx.tissues()?;
    let grid = ctx.config.frequency_grid(ctx.spacing_override)?;
    let sweep = ctx.config.sweep_config();
    let (params, params_raw) = ctx.load_params(params_path)?;

    if sweep.eta_values.is_empty() || sweep.t_skull_values_m.is_empty() {
        return Err(CliError::config("sweep grids must not be empty"));
    }

    let frequencies = grid.frequencies();
    let n_eta = sweep.eta_values.len();
    let n_t = sweep.t_skull_values_m.len();
    ctx.note(&format!(
        "validate: {n_eta} x {n_t} cells, {} frequencies, {} jobs",
        frequencies.len(),
        ctx.jobs
    ));

    let cells = par_map_indexed(n_eta * n_t, ctx.jobs, |idx| {
        let eta = sweep.eta_values[idx / n_t];
        let t = sweep.t_skull_values_m[idx % n_t];
        sweep_cell(&params, &geom, &tissues, &frequencies, &sweep, eta, t)
    });
    let invalid_count = cells.iter().filter(|c| !c.valid).count();
    let result = SweepResult {
        frequencies,
        cells,
        invalid_count,
    };

    let csv = sweep_to_csv(&result);
    let summary = summary_doc(
        &result,
        &grid,
        fnv1a64(params_raw.as_bytes()),
        TissueHashesDoc {
            brain: tissue_hash(&tissues[0]),
            skull: tissue_hash(&tissues[1]),
            scalp: tissue_hash(&tissues[2]),
        },
    );
    let mut summary_json = serde_json::to_string_pretty(&summary)
        .map_err(|e| CliError::Numerical(format!("summary serialization: {e}")))?;
    summary_json.push('\n');

    write_atomic(&ctx.out_dir.join("sweep.csv"), csv.as_bytes())?;
    write_atomic(
        &ctx.out_dir.join("sweep_summary.json"),
        summary_json.as_bytes(),
    )?;

    let mut warnings = Vec::new();
    if result.invalid_count > 0 {
        let bad: Vec<String> = result
            .cells
            .iter()
            .filter(|c| !c.valid)
            .map(|c| format!("(eta={}, t_skull={} m)", c.eta, c.t_skull_m))
            .collect();
        warnings.push(format!(
            "{} sweep cells invalid: {}",
            result.invalid_count,
            bad.join(", ")
        ));
    }
    Ok(warnings)
}

/// `ablation`: three-configuration dispersion/displacement-current study.
pub fn cmd_ablation(ctx: &CommandContext, params_path: &Path) -> CliResult<Vec<String>> {
    let geom = ctx.config.geometry()?;
    let tissues = ctx.tissues()?;
    let grid = ctx.config.frequency_grid(ctx.spacing_override)?;
    let (params, _) = ctx.load_params(params_path)?;
    let eta = ctx.config.ablation_eta();
    let anchor = ctx.config.ablation_anchor_hz();

    ctx.note(&format!("ablation at eta = {eta}"));
    let result = run_ablation(
        &params,
        &geom,
        &tissues,
        &grid,
        eta,
        ctx.config.source.p_r_am,
        ctx.config.source.d_m,
        anchor,
    )?;

    let mut csv = String::from("frequency_hz,v_ohmic,v_disp_r,v_disp_rc\n");
    for i in 0..result.frequencies.len() {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_full(result.frequencies[i]),
            fmt_full(result.v_ohmic[i]),
            fmt_full(result.v_disp_r[i]),
            fmt_full(result.v_disp_rc[i])
        ));
    }
    write_atomic(&ctx.out_dir.join("ablation.csv"), csv.as_bytes())?;
    Ok(Vec::new())
}

/// `export-netlist`: SPICE deck of the network frozen at one frequency.
pub fn cmd_export_netlist(
    ctx: &CommandContext,
    params_path: &Path,
    frequency_hz: Option<f64>,
) -> CliResult<Vec<String>> {
    let geom = ctx.config.geometry()?;
    let src = ctx.config.source(&geom)?;
    let tissues = ctx.tissues()?;
    let (params, _) = ctx.load_params(params_path)?;
    let f_hz = frequency_hz
        .or(ctx.config.netlist.map(|n| n.f_hz))
        .ok_or_else(|| {
            CliError::config(
                "export-netlist needs a frequency: pass --frequency-hz or set netlist.f_hz",
            )
        })?;

    ctx.note(&format!("export-netlist at f = {f_hz} Hz"));
    let net = branch_impedances(&geom, &tissues, &params, &src, f_hz)?;
    let deck = netlist_document(
        &net,
        &NetlistMeta {
            tool_version: TOOL_VERSION,
            geometry: &geom,
            tissues: &tissues,
        },
    )?;
    write_atomic(&ctx.out_dir.join("netlist.cir"), deck.as_bytes())?;

    let mut warnings = Vec::new();
    if net.clamped_tables {
        warnings.push("dispersion table lookups were clamped to endpoint rows".to_string());
    }
    Ok(warnings)
}
