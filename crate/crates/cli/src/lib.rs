//! IO, file formats and command orchestration for the three-shell head EQS
//! surrogate circuit toolkit. The numerical core lives in `trishell-core`;
//! this crate adds the JSON run configuration, dispersion-table CSV
//! ingestion, fitted-parameter files, sweep/ablation outputs, SPICE netlist
//! export and the `trishell` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod jobs;
pub mod output;
pub mod params_file;
pub mod sweep_io;
pub mod tables;
