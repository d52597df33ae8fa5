//! Frequency-dependent tissue electrical properties.
//!
//! A tissue is described by its conductivity `sigma(f)` [S/m] and relative
//! permittivity `eps_rel(f)`, either constant (static) or tabulated over
//! frequency. Evaluation combines both into the complex conductivity
//! `sigma_c(omega) = sigma + j*omega*eps0*eps_rel`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent std methods shadow Float under cfg(test)
use num_traits::Float;

use crate::error::Error;
use crate::Result;

/// Vacuum permittivity [F/m].
pub const VACUUM_PERMITTIVITY: f64 = 8.8541878128e-12;

/// Tissue label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TissueKind {
    Brain,
    Skull,
    Scalp,
    Air,
    Custom,
}

impl TissueKind {
    pub fn name(&self) -> &'static str {
        match self {
            TissueKind::Brain => "brain",
            TissueKind::Skull => "skull",
            TissueKind::Scalp => "scalp",
            TissueKind::Air => "air",
            TissueKind::Custom => "custom",
        }
    }
}

/// One dispersion table row: `(frequency, sigma, eps_rel)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub f_hz: f64,
    pub sigma: f64,
    pub eps_rel: f64,
}

/// Frequency dependence of a tissue's electrical properties.
#[derive(Debug, Clone, PartialEq)]
pub enum Dispersion {
    /// Constant conductivity [S/m] and relative permittivity.
    Static { sigma: f64, eps_rel: f64 },
    /// Tabulated properties, strictly increasing in frequency.
    /// Evaluation interpolates piecewise-linearly in log10(f) and clamps
    /// to the first/last row outside the tabulated range.
    Table(Vec<TableRow>),
}

/// A named tissue with its dispersion model. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TissueSpec {
    kind: TissueKind,
    dispersion: Dispersion,
}

/// Complex conductivity `sigma + j*omega*eps0*eps_rel` at one frequency.
///
/// `clamped` flags that a table lookup fell outside the tabulated range and
/// the nearest endpoint row was used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexConductivity {
    pub value: Complex64,
    pub clamped: bool,
}

impl TissueSpec {
    /// Builds a tissue spec, validating all invariants:
    /// sigma >= 0 and eps_rel >= 1 everywhere, finite values, strictly
    /// increasing positive table frequencies, and air exactly (0, 1).
    pub fn new(kind: TissueKind, dispersion: Dispersion) -> Result<Self> {
        match &dispersion {
            Dispersion::Static { sigma, eps_rel } => {
                validate_pair(*sigma, *eps_rel)?;
            }
            Dispersion::Table(rows) => {
                if rows.is_empty() {
                    return Err(Error::InvalidTissue("dispersion table has no rows"));
                }
                let mut prev = 0.0_f64;
                for row in rows {
                    if !row.f_hz.is_finite() || row.f_hz <= 0.0 {
                        return Err(Error::InvalidTissue(
                            "table frequencies must be finite and > 0",
                        ));
                    }
                    if row.f_hz <= prev {
                        return Err(Error::InvalidTissue(
                            "table frequencies must be strictly increasing",
                        ));
                    }
                    prev = row.f_hz;
                    validate_pair(row.sigma, row.eps_rel)?;
                }
            }
        }
        if kind == TissueKind::Air {
            match dispersion {
                Dispersion::Static { sigma, eps_rel } if sigma == 0.0 && eps_rel == 1.0 => {}
                _ => {
                    return Err(Error::InvalidTissue(
                        "air must be exactly Static(sigma = 0, eps_rel = 1)",
                    ))
                }
            }
        }
        Ok(Self { kind, dispersion })
    }

    /// Convenience constructor for a static tissue.
    pub fn stat(kind: TissueKind, sigma: f64, eps_rel: f64) -> Result<Self> {
        Self::new(kind, Dispersion::Static { sigma, eps_rel })
    }

    /// The surrounding air region: sigma = 0, eps_rel = 1 exactly.
    pub fn air() -> Self {
        Self {
            kind: TissueKind::Air,
            dispersion: Dispersion::Static {
                sigma: 0.0,
                eps_rel: 1.0,
            },
        }
    }

    pub fn kind(&self) -> TissueKind {
        self.kind
    }

    pub fn dispersion(&self) -> &Dispersion {
        &self.dispersion
    }

    /// True if the dispersion model is a table.
    pub fn is_dispersive(&self) -> bool {
        matches!(self.dispersion, Dispersion::Table(_))
    }

    /// Raw `(sigma, eps_rel)` at a frequency, with the table clamp flag.
    pub fn properties_at(&self, f_hz: f64) -> Result<(f64, f64, bool)> {
        if !f_hz.is_finite() || f_hz < 0.0 {
            return Err(Error::Domain("frequency must be finite and >= 0"));
        }
        Ok(match &self.dispersion {
            Dispersion::Static { sigma, eps_rel } => (*sigma, *eps_rel, false),
            Dispersion::Table(rows) => interpolate(rows, f_hz),
        })
    }

    /// Complex conductivity `sigma(f) + j*2*pi*f*eps0*eps_rel(f)`.
    pub fn complex_conductivity(&self, f_hz: f64) -> Result<ComplexConductivity> {
        let (sigma, eps_rel, clamped) = self.properties_at(f_hz)?;
        let omega = 2.0 * core::f64::consts::PI * f_hz;
        Ok(ComplexConductivity {
            value: Complex64::new(sigma, omega * VACUUM_PERMITTIVITY * eps_rel),
            clamped,
        })
    }
}

fn validate_pair(sigma: f64, eps_rel: f64) -> Result<()> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::InvalidTissue("sigma must be finite and >= 0"));
    }
    if !eps_rel.is_finite() || eps_rel < 1.0 {
        return Err(Error::InvalidTissue("eps_rel must be finite and >= 1"));
    }
    Ok(())
}

/// Piecewise-linear interpolation of (sigma, eps_rel) in log10(f);
/// outside the table the nearest endpoint row is used and flagged.
fn interpolate(rows: &[TableRow], f_hz: f64) -> (f64, f64, bool) {
    let first = rows[0];
    let last = rows[rows.len() - 1];
    if f_hz <= first.f_hz {
        return (first.sigma, first.eps_rel, f_hz < first.f_hz);
    }
    if f_hz >= last.f_hz {
        return (last.sigma, last.eps_rel, f_hz > last.f_hz);
    }
    // f is strictly inside (first, last); find the bracketing rows.
    let mut hi = 1;
    while rows[hi].f_hz < f_hz {
        hi += 1;
    }
    let a = rows[hi - 1];
    let b = rows[hi];
    if f_hz == b.f_hz {
        return (b.sigma, b.eps_rel, false);
    }
    let t = (f_hz.log10() - a.f_hz.log10()) / (b.f_hz.log10() - a.f_hz.log10());
    (
        a.sigma + t * (b.sigma - a.sigma),
        a.eps_rel + t * (b.eps_rel - a.eps_rel),
        false,
    )
}

/// Bundled synthetic dispersion tables for demos and tests.
///
/// These are NOT measured tissue data: they only reproduce the qualitative
/// shape of published head-tissue dispersion over 10 Hz - 50 kHz (mildly
/// increasing sigma, monotonically decreasing eps_rel) so that the demo
/// pipeline and the ablation behave plausibly out of the box.
pub fn synthetic_table(kind: TissueKind) -> Result<TissueSpec> {
    const FREQS: [f64; 7] = [10.0, 50.0, 250.0, 1.2e3, 6.0e3, 2.5e4, 5.0e4];
    let (sigmas, epss): ([f64; 7], [f64; 7]) = match kind {
        TissueKind::Brain => (
            [0.300, 0.310, 0.325, 0.345, 0.370, 0.395, 0.410],
            [3.0e6, 1.2e6, 4.0e5, 1.5e5, 6.0e4, 2.5e4, 1.6e4],
        ),
        TissueKind::Skull => (
            [0.0080, 0.0082, 0.0085, 0.0090, 0.0097, 0.0105, 0.0110],
            [5.0e3, 2.5e3, 1.2e3, 6.0e2, 3.0e2, 1.4e2, 8.0e1],
        ),
        TissueKind::Scalp => (
            [0.250, 0.260, 0.270, 0.285, 0.300, 0.315, 0.325],
            [1.2e6, 5.0e5, 2.0e5, 8.5e4, 4.0e4, 2.6e4, 2.0e4],
        ),
        _ => {
            return Err(Error::InvalidTissue(
                "synthetic tables exist only for brain, skull and scalp",
            ))
        }
    };
    let rows = FREQS
        .iter()
        .zip(sigmas.iter().zip(epss.iter()))
        .map(|(&f_hz, (&sigma, &eps_rel))| TableRow {
            f_hz,
            sigma,
            eps_rel,
        })
        .collect();
    TissueSpec::new(kind, Dispersion::Table(rows))
}
