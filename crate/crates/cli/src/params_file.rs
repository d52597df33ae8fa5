//! Fitted-parameter JSON document: the contract between `fit` and the
//! downstream commands. Coefficients are stored in ascending degree order
//! together with their fitted validity domains and a provenance block.

use std::path::Path;

use serde::{Deserialize, Serialize};
use trishell_core::circuit::{AlphaMap, Domain, FittedParams, GammaMap};
use trishell_core::fit::FitConfig;
use trishell_core::poly::Polynomial;
use trishell_core::tissue::{Dispersion, TissueSpec};

use crate::config::{parse_psi_ratio, psi_ratio_name};
use crate::error::{CliError, CliResult};

pub const PARAMS_FORMAT: &str = "trishell-params-v1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub format: String,
    pub reference_r_scalp_m: f64,
    pub global_scale: f64,
    pub gamma: Vec<GammaDoc>,
    pub alpha: AlphaDoc,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GammaDoc {
    pub layer: String,
    pub abscissa: String,
    /// Ascending degree order: c0 + c1*x + c2*x^2.
    pub coeffs: Vec<f64>,
    pub domain: DomainDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlphaDoc {
    pub coeffs: Vec<f64>,
    pub domain: DomainDoc,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DomainDoc {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub tool_version: String,
    pub objective_frequency_hz: f64,
    pub gamma_stage_eta: f64,
    pub fit_geometry: FitGeometryDoc,
    pub t_skull_values_m: Vec<f64>,
    pub eccentricity_values: Vec<f64>,
    pub static_tissues: StaticTissuesDoc,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FitGeometryDoc {
    pub r_brain_m: f64,
    pub r_scalp_m: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StaticTissuesDoc {
    pub brain: StaticDoc,
    pub skull: StaticDoc,
    pub scalp: StaticDoc,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StaticDoc {
    pub sigma_s_per_m: f64,
    pub eps_rel: f64,
}

fn static_doc(spec: &TissueSpec) -> StaticDoc {
    match spec.dispersion() {
        Dispersion::Static { sigma, eps_rel } => StaticDoc {
            sigma_s_per_m: *sigma,
            eps_rel: *eps_rel,
        },
        Dispersion::Table(rows) => StaticDoc {
            // Fit configs are validated to be static; tables cannot appear.
            sigma_s_per_m: rows[0].sigma,
            eps_rel: rows[0].eps_rel,
        },
    }
}

impl ParamsFile {
    pub fn from_fit(config: &FitConfig, params: &FittedParams, tool_version: &str) -> Self {
        const LAYERS: [&str; 3] = ["brain", "skull", "scalp"];
        let gamma = params
            .gamma
            .iter()
            .zip(LAYERS.iter())
            .map(|(map, layer)| GammaDoc {
                layer: (*layer).to_string(),
                abscissa: psi_ratio_name(map.abscissa).to_string(),
                coeffs: map.poly.coeffs().to_vec(),
                domain: DomainDoc {
                    min: map.domain.min,
                    max: map.domain.max,
                },
            })
            .collect();
        ParamsFile {
            format: PARAMS_FORMAT.to_string(),
            reference_r_scalp_m: params.reference_r_scalp,
            global_scale: params.global_scale,
            gamma,
            alpha: AlphaDoc {
                coeffs: params.alpha.poly.coeffs().to_vec(),
                domain: DomainDoc {
                    min: params.alpha.domain.min,
                    max: params.alpha.domain.max,
                },
            },
            provenance: Provenance {
                tool_version: tool_version.to_string(),
                objective_frequency_hz: config.objective_frequency_hz,
                gamma_stage_eta: config.gamma_stage_eta,
                fit_geometry: FitGeometryDoc {
                    r_brain_m: config.alpha_stage_geometry.r_brain(),
                    r_scalp_m: config.alpha_stage_geometry.r_scalp(),
                },
                t_skull_values_m: config
                    .geometry_grid
                    .iter()
                    .map(|g| g.skull_thickness())
                    .collect(),
                eccentricity_values: config.eccentricity_grid.clone(),
                static_tissues: StaticTissuesDoc {
                    brain: static_doc(&config.static_tissues[0]),
                    skull: static_doc(&config.static_tissues[1]),
                    scalp: static_doc(&config.static_tissues[2]),
                },
            },
        }
    }

    pub fn to_core(&self) -> CliResult<FittedParams> {
        if self.format != PARAMS_FORMAT {
            return Err(CliError::config(format!(
                "params file format `{}` not supported (expected `{PARAMS_FORMAT}`)",
                self.format
            )));
        }
        if self.gamma.len() != 3 {
            return Err(CliError::config(
                "params file must carry exactly 3 gamma maps",
            ));
        }
        let mut maps = Vec::with_capacity(3);
        for doc in &self.gamma {
            if doc.coeffs.is_empty() || doc.coeffs.len() > 3 {
                return Err(CliError::config("gamma coefficients must have degree <= 2"));
            }
            maps.push(GammaMap {
                poly: Polynomial::new(doc.coeffs.clone()),
                abscissa: parse_psi_ratio(&doc.abscissa)?,
                domain: Domain::new(doc.domain.min, doc.domain.max),
            });
        }
        if self.alpha.coeffs.is_empty() || self.alpha.coeffs.len() > 3 {
            return Err(CliError::config("alpha coefficients must have degree <= 2"));
        }
        Ok(FittedParams {
            gamma: [maps[0].clone(), maps[1].clone(), maps[2].clone()],
            alpha: AlphaMap {
                poly: Polynomial::new(self.alpha.coeffs.clone()),
                domain: Domain::new(self.alpha.domain.min, self.alpha.domain.max),
            },
            global_scale: self.global_scale,
            reference_r_scalp: self.reference_r_scalp_m,
        })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("params serialize");
        text.push('\n');
        text
    }

    pub fn load(path: &Path) -> CliResult<(Self, String)> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        let doc: ParamsFile = serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        Ok((doc, text))
    }
}
