//! Deterministic output helpers: atomic file writes, full-precision float
//! formatting for CSVs, and content hashing for provenance.

use std::fs;
use std::path::Path;

use crate::error::{CliError, CliResult};

/// Formats a float with 17 significant decimal digits (round-trip exact).
pub fn fmt_full(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a file atomically: the content lands under a temporary name in the
/// target directory and is renamed into place, so a failed run never leaves
/// a partial output file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::config(format!("cannot create {}: {e}", dir.display())))?;
    }
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::config(format!("invalid output path {}", path.display())))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes)
        .map_err(|e| CliError::config(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path)
        .map_err(|e| CliError::config(format!("cannot rename into {}: {e}", path.display())))?;
    Ok(())
}

/// 64-bit FNV-1a content hash, rendered as `fnv1a64:<hex>`.
pub fn fnv1a64(bytes: &[u8]) -> String {
    const OFFSET: u64 = 0xcbf29ce484222325;
    const PRIME: u64 = 0x100000001b3;
    let mut hash = OFFSET;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(PRIME);
    }
    format!("fnv1a64:{hash:016x}")
}
