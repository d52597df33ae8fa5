//! Run configuration: a single JSON document per run. All physical values
//! carry SI units in their key names.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use trishell_core::circuit::PsiRatio;
use trishell_core::fit::{FitConfig, OptimizerConfig};
use trishell_core::geom::{DipoleSource, HeadGeometry};
use trishell_core::tissue::{synthetic_table, TissueKind, TissueSpec};
use trishell_core::validate::{FrequencyGrid, Spacing, SweepConfig};

use crate::error::{CliError, CliResult};
use crate::tables::load_dispersion_csv;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: GeometryConfig,
    pub source: SourceConfig,
    pub tissues: TissuesConfig,
    #[serde(default)]
    pub frequency_grid: Option<FrequencyGridConfig>,
    #[serde(default)]
    pub ssh: Option<SshConfig>,
    #[serde(default)]
    pub fit: Option<FitBlockConfig>,
    #[serde(default)]
    pub sweep: Option<SweepBlockConfig>,
    #[serde(default)]
    pub ablation: Option<AblationBlockConfig>,
    #[serde(default)]
    pub netlist: Option<NetlistBlockConfig>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub params_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub r_brain_m: f64,
    pub t_skull_m: f64,
    pub t_scalp_m: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceConfig {
    pub p_r_am: f64,
    pub d_m: f64,
    #[serde(default)]
    pub r_dip_m: Option<f64>,
    #[serde(default)]
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TissuesConfig {
    pub brain: TissueConfig,
    pub skull: TissueConfig,
    pub scalp: TissueConfig,
}

/// One tissue: static values, an external table file, or the bundled
/// synthetic demo table.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TissueConfig {
    Static { sigma_s_per_m: f64, eps_rel: f64 },
    TableCsv(PathBuf),
    Synthetic(bool),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyGridConfig {
    pub f_min_hz: f64,
    pub f_max_hz: f64,
    pub n_points: usize,
    #[serde(default)]
    pub spacing: Option<String>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SshConfig {
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub l_cap: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitBlockConfig {
    #[serde(default)]
    pub t_skull_values_m: Option<Vec<f64>>,
    #[serde(default)]
    pub eccentricity_values: Option<Vec<f64>>,
    #[serde(default)]
    pub static_tissues: Option<StaticTissuesConfig>,
    #[serde(default)]
    pub objective_frequency_hz: Option<f64>,
    #[serde(default)]
    pub gamma_degree: Option<usize>,
    #[serde(default)]
    pub alpha_degree: Option<usize>,
    #[serde(default)]
    pub gamma_abscissa: Option<[String; 3]>,
    #[serde(default)]
    pub gamma_stage_eta: Option<f64>,
    #[serde(default)]
    pub optimizer: Option<OptimizerBlockConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaticTissuesConfig {
    pub brain: StaticTissueConfig,
    pub skull: StaticTissueConfig,
    pub scalp: StaticTissueConfig,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaticTissueConfig {
    pub sigma_s_per_m: f64,
    pub eps_rel: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerBlockConfig {
    #[serde(default)]
    pub max_iters: Option<u32>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub initial_step: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlockConfig {
    #[serde(default)]
    pub eta_values: Option<Vec<f64>>,
    #[serde(default)]
    pub t_skull_values_m: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AblationBlockConfig {
    #[serde(default)]
    pub eta: Option<f64>,
    #[serde(default)]
    pub static_anchor_hz: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetlistBlockConfig {
    pub f_hz: f64,
}

/// Default static properties used for fitting when the config omits them
/// (the synthetic tables' low-frequency conductivities, eps_rel = 1).
pub const DEFAULT_FIT_STATICS: [(f64, f64); 3] = [(0.30, 1.0), (0.008, 1.0), (0.25, 1.0)];

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        Ok(config)
    }

    pub fn geometry(&self) -> CliResult<HeadGeometry> {
        HeadGeometry::from_thicknesses(
            self.geometry.r_brain_m,
            self.geometry.t_skull_m,
            self.geometry.t_scalp_m,
        )
        .map_err(|e| CliError::config(format!("geometry: {e}")))
    }

    pub fn source(&self, geom: &HeadGeometry) -> CliResult<DipoleSource> {
        let src = &self.source;
        match (src.r_dip_m, src.eta) {
            (Some(r_dip), None) => DipoleSource::new(src.p_r_am, src.d_m, r_dip)
                .map_err(|e| CliError::config(format!("source: {e}"))),
            (None, Some(eta)) => DipoleSource::at_eccentricity(src.p_r_am, src.d_m, eta, geom)
                .map_err(|e| CliError::config(format!("source: {e}"))),
            _ => Err(CliError::config(
                "source: exactly one of `r_dip_m` or `eta` must be given",
            )),
        }
    }

    /// The three shell tissues (brain, skull, scalp).
    pub fn tissues(&self, config_dir: &Path) -> CliResult<[TissueSpec; 3]> {
        Ok([
            self.tissues.brain.build(TissueKind::Brain, config_dir)?,
            self.tissues.skull.build(TissueKind::Skull, config_dir)?,
            self.tissues.scalp.build(TissueKind::Scalp, config_dir)?,
        ])
    }

    pub fn frequency_grid(&self, spacing_override: Option<Spacing>) -> CliResult<FrequencyGrid> {
        let mut grid = match &self.frequency_grid {
            None => FrequencyGrid::standard(),
            Some(block) => {
                let spacing = match block.spacing.as_deref() {
                    None => Spacing::Linear,
                    Some("linear") => Spacing::Linear,
                    Some("log") => Spacing::Log,
                    Some(other) => {
                        return Err(CliError::config(format!(
                            "frequency_grid.spacing: expected `linear` or `log`, found `{other}`"
                        )))
                    }
                };
                FrequencyGrid::new(block.f_min_hz, block.f_max_hz, block.n_points, spacing)
                    .map_err(|e| CliError::config(format!("frequency_grid: {e}")))?
            }
        };
        if let Some(spacing) = spacing_override {
            grid.spacing = spacing;
        }
        Ok(grid)
    }

    pub fn ssh_tol(&self) -> f64 {
        self.ssh
            .and_then(|s| s.tol)
            .unwrap_or(trishell_core::ssh::DEFAULT_TOL)
    }

    pub fn ssh_l_cap(&self) -> u32 {
        self.ssh
            .and_then(|s| s.l_cap)
            .unwrap_or(trishell_core::ssh::DEFAULT_L_CAP)
    }

    /// Assembles the fitting configuration, layering the optional fit block
    /// over the standard protocol defaults anchored at this config's geometry.
    pub fn fit_config(&self) -> CliResult<FitConfig> {
        let geom = self.geometry()?;
        let statics = match self.fit.as_ref().and_then(|f| f.static_tissues.as_ref()) {
            Some(st) => [
                TissueSpec::stat(TissueKind::Brain, st.brain.sigma_s_per_m, st.brain.eps_rel),
                TissueSpec::stat(TissueKind::Skull, st.skull.sigma_s_per_m, st.skull.eps_rel),
                TissueSpec::stat(TissueKind::Scalp, st.scalp.sigma_s_per_m, st.scalp.eps_rel),
            ],
            None => [
                TissueSpec::stat(
                    TissueKind::Brain,
                    DEFAULT_FIT_STATICS[0].0,
                    DEFAULT_FIT_STATICS[0].1,
                ),
                TissueSpec::stat(
                    TissueKind::Skull,
                    DEFAULT_FIT_STATICS[1].0,
                    DEFAULT_FIT_STATICS[1].1,
                ),
                TissueSpec::stat(
                    TissueKind::Scalp,
                    DEFAULT_FIT_STATICS[2].0,
                    DEFAULT_FIT_STATICS[2].1,
                ),
            ],
        };
        let mut statics_built = Vec::with_capacity(3);
        for spec in statics {
            statics_built.push(spec.map_err(|e| CliError::config(format!("fit tissues: {e}")))?);
        }
        let statics: [TissueSpec; 3] = statics_built.try_into().expect("three tissues");

        let mut config = FitConfig::standard(statics);
        config.alpha_stage_geometry = geom;
        config.p_r_am = self.source.p_r_am;
        config.d_m = self.source.d_m;

        // The skull sweep keeps this config's brain and scalp radii.
        let rebuild_grid = |values: &[f64]| -> CliResult<Vec<HeadGeometry>> {
            values
                .iter()
                .map(|&t| {
                    HeadGeometry::new(geom.r_brain(), geom.r_brain() + t, geom.r_scalp())
                        .map_err(|e| CliError::config(format!("fit.t_skull_values_m: {e}")))
                })
                .collect()
        };
        if let Some(block) = &self.fit {
            if let Some(ts) = &block.t_skull_values_m {
                config.geometry_grid = rebuild_grid(ts)?;
            } else {
                let defaults: Vec<f64> = config
                    .geometry_grid
                    .iter()
                    .map(|g| g.skull_thickness())
                    .collect();
                config.geometry_grid = rebuild_grid(&defaults)?;
            }
            if let Some(etas) = &block.eccentricity_values {
                config.eccentricity_grid = etas.clone();
            }
            if let Some(f) = block.objective_frequency_hz {
                config.objective_frequency_hz = f;
            }
            if let Some(d) = block.gamma_degree {
                config.gamma_degree = d;
            }
            if let Some(d) = block.alpha_degree {
                config.alpha_degree = d;
            }
            if let Some(names) = &block.gamma_abscissa {
                let mut abscissa = [PsiRatio::Psi12; 3];
                for (slot, name) in abscissa.iter_mut().zip(names.iter()) {
                    *slot = parse_psi_ratio(name)?;
                }
                config.gamma_abscissa = abscissa;
            }
            if let Some(eta) = block.gamma_stage_eta {
                config.gamma_stage_eta = eta;
            }
            if let Some(opt) = &block.optimizer {
                let mut optimizer = OptimizerConfig::default();
                if let Some(v) = opt.max_iters {
                    optimizer.max_iters = v;
                }
                if let Some(v) = opt.tol {
                    optimizer.tol = v;
                }
                if let Some(v) = opt.initial_step {
                    optimizer.initial_step = v;
                }
                config.optimizer = optimizer;
            }
        } else {
            let defaults: Vec<f64> = config
                .geometry_grid
                .iter()
                .map(|g| g.skull_thickness())
                .collect();
            config.geometry_grid = rebuild_grid(&defaults)?;
        }
        config
            .validate()
            .map_err(|e| CliError::config(format!("fit config: {e}")))?;
        Ok(config)
    }

    pub fn sweep_config(&self) -> SweepConfig {
        let mut sweep = SweepConfig::standard();
        sweep.p_r_am = self.source.p_r_am;
        sweep.d_m = self.source.d_m;
        sweep.ssh_tol = self.ssh_tol();
        sweep.ssh_l_cap = self.ssh_l_cap();
        if let Some(block) = &self.sweep {
            if let Some(etas) = &block.eta_values {
                sweep.eta_values = etas.clone();
            }
            if let Some(ts) = &block.t_skull_values_m {
                sweep.t_skull_values_m = ts.clone();
            }
        }
        sweep
    }

    /// Ablation eccentricity: the ablation block, else the source block's
    /// eta, else the highly eccentric default of 0.935.
    pub fn ablation_eta(&self) -> f64 {
        self.ablation
            .and_then(|a| a.eta)
            .or(self.source.eta)
            .unwrap_or(0.935)
    }

    pub fn ablation_anchor_hz(&self) -> Option<f64> {
        self.ablation.and_then(|a| a.static_anchor_hz)
    }

    pub fn output_dir(&self, cli_out: Option<&Path>) -> PathBuf {
        cli_out
            .map(Path::to_path_buf)
            .or_else(|| self.output_dir.clone())
            .unwrap_or_else(|| PathBuf::from("out"))
    }

    pub fn params_path(&self, out_dir: &Path) -> PathBuf {
        self.params_file
            .clone()
            .unwrap_or_else(|| out_dir.join("fitted_params.json"))
    }
}

impl TissueConfig {
    pub fn build(&self, kind: TissueKind, config_dir: &Path) -> CliResult<TissueSpec> {
        match self {
            TissueConfig::Static {
                sigma_s_per_m,
                eps_rel,
            } => TissueSpec::stat(kind, *sigma_s_per_m, *eps_rel)
                .map_err(|e| CliError::config(format!("tissue {}: {e}", kind.name()))),
            TissueConfig::TableCsv(path) => {
                let resolved = if path.is_absolute() {
                    path.clone()
                } else {
                    config_dir.join(path)
                };
                load_dispersion_csv(kind, &resolved)
            }
            TissueConfig::Synthetic(true) => synthetic_table(kind)
                .map_err(|e| CliError::config(format!("tissue {}: {e}", kind.name()))),
            TissueConfig::Synthetic(false) => Err(CliError::config(format!(
                "tissue {}: `synthetic` must be true when used",
                kind.name()
            ))),
        }
    }
}

pub fn parse_psi_ratio(name: &str) -> CliResult<PsiRatio> {
    match name {
        "psi12" => Ok(PsiRatio::Psi12),
        "psi13" => Ok(PsiRatio::Psi13),
        "psi23" => Ok(PsiRatio::Psi23),
        other => Err(CliError::config(format!(
            "gamma_abscissa: expected psi12|psi13|psi23, found `{other}`"
        ))),
    }
}

pub fn psi_ratio_name(ratio: PsiRatio) -> &'static str {
    ratio.name()
}
