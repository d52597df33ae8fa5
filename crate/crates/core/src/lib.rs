//! Electro-quasi-static (EQS) modeling of a three-shell spherical head.
//!
//! Two solvers for the peak scalp potential of a radially oriented current
//! dipole inside a brain/skull/scalp sphere embedded in air:
//!
//! * [`ssh`]: the semi-analytical scalar spherical-harmonics series, used
//!   as the reference solution;
//! * [`circuit`]: a compact lumped RC surrogate network whose branch
//!   impedances are derived from shell geometry and frequency-dependent
//!   tissue conductivity/permittivity.
//!
//! The [`fit`] module identifies the surrogate's free parameters (per-layer
//! radial/tangential partitioning ratios, source asymmetry, global impedance
//! scale) by matching the circuit response to the reference over geometry and
//! eccentricity sweeps with static tissue properties. The [`validate`] module
//! quantifies agreement over frequency bands (mean relative frequency error)
//! and runs the dispersion/displacement-current ablation.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `trishell-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod circuit;
pub mod error;
pub mod fit;
pub mod geom;
pub mod netlist;
pub mod optim;
pub mod poly;
pub mod ssh;
pub mod tissue;
pub mod validate;

mod linalg;

pub use error::Error;
pub use geom::{DipoleSource, HeadGeometry};
pub use tissue::{ComplexConductivity, Dispersion, TissueKind, TissueSpec};

pub use num_complex;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
