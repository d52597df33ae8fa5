//! Sweep result serialization: long-format CSV for the spectra plus a JSON
//! summary with per-cell MRFE and provenance hashes. Together the two files
//! reconstruct the sweep losslessly.

use serde::{Deserialize, Serialize};
use trishell_core::validate::{FrequencyGrid, Spacing, SweepResult};

use crate::error::{CliError, CliResult};
use crate::output::fmt_full;

pub const SWEEP_CSV_HEADER: &str = "eta,t_skull_m,frequency_hz,v_circuit_abs,v_ssh_abs,rel_err";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepSummaryDoc {
    pub frequency_grid: GridDoc,
    pub params_file_hash: String,
    pub tissue_hashes: TissueHashesDoc,
    pub invalid_count: usize,
    pub cells: Vec<CellDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    pub f_min_hz: f64,
    pub f_max_hz: f64,
    pub n_points: usize,
    pub spacing: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TissueHashesDoc {
    pub brain: String,
    pub skull: String,
    pub scalp: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub eta: f64,
    pub t_skull_m: f64,
    pub mrfe: Option<f64>,
    pub valid: bool,
    pub error: Option<String>,
}

impl GridDoc {
    pub fn from_grid(grid: &FrequencyGrid) -> Self {
        Self {
            f_min_hz: grid.f_min_hz,
            f_max_hz: grid.f_max_hz,
            n_points: grid.n_points,
            spacing: grid.spacing.name().to_string(),
        }
    }

    pub fn to_grid(&self) -> CliResult<FrequencyGrid> {
        let spacing = match self.spacing.as_str() {
            "linear" => Spacing::Linear,
            "log" => Spacing::Log,
            other => {
                return Err(CliError::config(format!(
                    "summary spacing `{other}` is not linear|log"
                )))
            }
        };
        FrequencyGrid::new(self.f_min_hz, self.f_max_hz, self.n_points, spacing)
            .map_err(CliError::from)
    }
}

/// Long-format CSV of every valid cell's spectra.
pub fn sweep_to_csv(result: &SweepResult) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for cell in &result.cells {
        if !cell.valid {
            continue;
        }
        for ((&f, &vc), &vs) in result
            .frequencies
            .iter()
            .zip(cell.v_circuit_abs.iter())
            .zip(cell.v_ssh_abs.iter())
        {
            let rel = (vc - vs).abs() / vs;
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_full(cell.eta),
                fmt_full(cell.t_skull_m),
                fmt_full(f),
                fmt_full(vc),
                fmt_full(vs),
                fmt_full(rel)
            ));
        }
    }
    out
}

pub fn summary_doc(
    result: &SweepResult,
    grid: &FrequencyGrid,
    params_file_hash: String,
    tissue_hashes: TissueHashesDoc,
) -> SweepSummaryDoc {
    SweepSummaryDoc {
        frequency_grid: GridDoc::from_grid(grid),
        params_file_hash,
        tissue_hashes,
        invalid_count: result.invalid_count,
        cells: result
            .cells
            .iter()
            .map(|c| CellDoc {
                eta: c.eta,
                t_skull_m: c.t_skull_m,
                mrfe: c.mrfe,
                valid: c.valid,
                error: c.error.as_ref().map(|e| e.to_string()),
            })
            .collect(),
    }
}

/// Reconstruction of a sweep from its two files.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSweep {
    pub frequencies: Vec<f64>,
    pub cells: Vec<ParsedCell>,
    pub invalid_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCell {
    pub eta: f64,
    pub t_skull_m: f64,
    pub v_circuit_abs: Vec<f64>,
    pub v_ssh_abs: Vec<f64>,
    pub mrfe: Option<f64>,
    pub valid: bool,
    pub error: Option<String>,
}

pub fn parse_sweep(csv: &str, summary: &SweepSummaryDoc) -> CliResult<ParsedSweep> {
    let grid = summary.frequency_grid.to_grid()?;
    let frequencies = grid.frequencies();
    let n_f = frequencies.len();

    let mut lines = csv.lines();
    match lines.next() {
        Some(h) if h.trim() == SWEEP_CSV_HEADER => {}
        other => {
            return Err(CliError::config(format!(
                "sweep csv header mismatch: {other:?}"
            )))
        }
    }

    let mut cells: Vec<ParsedCell> = summary
        .cells
        .iter()
        .map(|c| ParsedCell {
            eta: c.eta,
            t_skull_m: c.t_skull_m,
            v_circuit_abs: Vec::new(),
            v_ssh_abs: Vec::new(),
            mrfe: c.mrfe,
            valid: c.valid,
            error: c.error.clone(),
        })
        .collect();

    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(CliError::config(format!(
                "sweep csv line {line_no}: expected 6 fields"
            )));
        }
        let parse = |s: &str| -> CliResult<f64> {
            s.parse().map_err(|_| {
                CliError::config(format!("sweep csv line {line_no}: bad number `{s}`"))
            })
        };
        let eta = parse(fields[0])?;
        let t_skull = parse(fields[1])?;
        let vc = parse(fields[3])?;
        let vs = parse(fields[4])?;
        let cell = cells
            .iter_mut()
            .find(|c| c.eta == eta && c.t_skull_m == t_skull)
            .ok_or_else(|| {
                CliError::config(format!(
                    "sweep csv line {line_no}: unknown cell ({eta}, {t_skull})"
                ))
            })?;
        cell.v_circuit_abs.push(vc);
        cell.v_ssh_abs.push(vs);
    }

    for cell in &cells {
        if cell.valid && cell.v_circuit_abs.len() != n_f {
            return Err(CliError::config(format!(
                "cell ({}, {}) has {} rows, expected {n_f}",
                cell.eta,
                cell.t_skull_m,
                cell.v_circuit_abs.len()
            )));
        }
    }

    Ok(ParsedSweep {
        frequencies,
        cells,
        invalid_count: summary.invalid_count,
    })
}
