//! Dispersion table CSV ingestion.
//!
//! Format: UTF-8, header `frequency_hz,sigma_s_per_m,eps_rel`, `.` decimal
//! separator, rows sorted ascending by frequency. Parse errors carry the
//! file path and 1-based line number.

use std::path::Path;

use trishell_core::tissue::{Dispersion, TableRow, TissueKind, TissueSpec};

use crate::error::{CliError, CliResult};
use crate::output::{fmt_full, fnv1a64};

pub const TABLE_HEADER: &str = "frequency_hz,sigma_s_per_m,eps_rel";

pub fn parse_dispersion_csv(kind: TissueKind, path: &Path, text: &str) -> CliResult<TissueSpec> {
    let mut rows = Vec::new();
    let mut lines = text.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::config(format!("{}: empty dispersion table", path.display())))?;
    if header.trim_end_matches('\r').trim() != TABLE_HEADER {
        return Err(CliError::config(format!(
            "{}:1: expected header `{TABLE_HEADER}`, found `{}`",
            path.display(),
            header.trim()
        )));
    }

    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::config(format!(
                "{}:{line_no}: expected 3 comma-separated fields, found {}",
                path.display(),
                fields.len()
            )));
        }
        let mut values = [0.0_f64; 3];
        for (slot, field) in values.iter_mut().zip(fields.iter()) {
            *slot = field.trim().parse().map_err(|_| {
                CliError::config(format!(
                    "{}:{line_no}: `{}` is not a valid number",
                    path.display(),
                    field.trim()
                ))
            })?;
        }
        rows.push(TableRow {
            f_hz: values[0],
            sigma: values[1],
            eps_rel: values[2],
        });
    }

    TissueSpec::new(kind, Dispersion::Table(rows))
        .map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

pub fn load_dispersion_csv(kind: TissueKind, path: &Path) -> CliResult<TissueSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    parse_dispersion_csv(kind, path, &text)
}

/// Renders a tissue's dispersion table as CSV (used to export the bundled
/// synthetic tables).
pub fn dispersion_to_csv(spec: &TissueSpec) -> Option<String> {
    let Dispersion::Table(rows) = spec.dispersion() else {
        return None;
    };
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_full(row.f_hz),
            fmt_full(row.sigma),
            fmt_full(row.eps_rel)
        ));
    }
    Some(out)
}

/// Canonical content hash of a tissue spec for provenance blocks.
pub fn tissue_hash(spec: &TissueSpec) -> String {
    let canonical = match spec.dispersion() {
        Dispersion::Static { sigma, eps_rel } => {
            format!("static:{}:{}", fmt_full(*sigma), fmt_full(*eps_rel))
        }
        Dispersion::Table(rows) => {
            let mut s = String::from("table:");
            for row in rows {
                s.push_str(&format!(
                    "{},{},{};",
                    fmt_full(row.f_hz),
                    fmt_full(row.sigma),
                    fmt_full(row.eps_rel)
                ));
            }
            s
        }
    };
    fnv1a64(canonical.as_bytes())
}
