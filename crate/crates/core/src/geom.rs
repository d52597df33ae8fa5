//! Shell geometry and dipole source descriptions.

use crate::error::Error;
use crate::Result;

/// Concentric three-shell head geometry. Radii are interface radii:
/// `r1` brain/skull, `r2` skull/scalp, `r3` scalp/air, with `0 < r1 < r2 < r3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeadGeometry {
    r_brain: f64,
    r_skull: f64,
    r_scalp: f64,
}

impl HeadGeometry {
    pub fn new(r_brain_m: f64, r_skull_m: f64, r_scalp_m: f64) -> Result<Self> {
        let ok = r_brain_m.is_finite()
            && r_skull_m.is_finite()
            && r_scalp_m.is_finite()
            && 0.0 < r_brain_m
            && r_brain_m < r_skull_m
            && r_skull_m < r_scalp_m;
        if !ok {
            return Err(Error::InvalidGeometry(
                "radii must be finite with 0 < r1 < r2 < r3",
            ));
        }
        Ok(Self {
            r_brain: r_brain_m,
            r_skull: r_skull_m,
            r_scalp: r_scalp_m,
        })
    }

    /// Builds the geometry from brain radius and layer thicknesses.
    pub fn from_thicknesses(r_brain_m: f64, t_skull_m: f64, t_scalp_m: f64) -> Result<Self> {
        Self::new(
            r_brain_m,
            r_brain_m + t_skull_m,
            r_brain_m + t_skull_m + t_scalp_m,
        )
    }

    /// The standard geometry: brain radius 7.91 cm, skull thickness 5.9 mm,
    /// scalp thickness 7 mm.
    pub fn standard() -> Self {
        Self::from_thicknesses(0.0791, 0.0059, 0.0070).expect("standard geometry is valid")
    }

    pub fn r_brain(&self) -> f64 {
        self.r_brain
    }

    pub fn r_skull(&self) -> f64 {
        self.r_skull
    }

    pub fn r_scalp(&self) -> f64 {
        self.r_scalp
    }

    /// Interface radius by 1-based index (1 = brain, 2 = skull, 3 = scalp).
    pub fn radius(&self, i: usize) -> f64 {
        match i {
            1 => self.r_brain,
            2 => self.r_skull,
            3 => self.r_scalp,
            _ => panic!("interface index must be 1, 2 or 3"),
        }
    }

    pub fn skull_thickness(&self) -> f64 {
        self.r_skull - self.r_brain
    }

    pub fn scalp_thickness(&self) -> f64 {
        self.r_scalp - self.r_skull
    }

    /// Radius ratio `psi_ij = r_i / r_j`.
    pub fn psi(&self, i: usize, j: usize) -> f64 {
        self.radius(i) / self.radius(j)
    }
}

/// Radially oriented current dipole inside the brain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleSource {
    p_r: f64,
    d: f64,
    r_dip: f64,
}

impl DipoleSource {
    /// `p_r` radial dipole moment in A*m, `d` effective dipole length in m,
    /// `r_dip` radial position of the dipole in m.
    pub fn new(p_r_am: f64, d_m: f64, r_dip_m: f64) -> Result<Self> {
        if !p_r_am.is_finite() {
            return Err(Error::InvalidSource("dipole moment must be finite"));
        }
        if !d_m.is_finite() || d_m <= 0.0 {
            return Err(Error::InvalidSource("effective length must be > 0"));
        }
        if !r_dip_m.is_finite() || r_dip_m < 0.0 {
            return Err(Error::InvalidSource("dipole position must be >= 0"));
        }
        Ok(Self {
            p_r: p_r_am,
            d: d_m,
            r_dip: r_dip_m,
        })
    }

    /// Places the dipole at eccentricity `eta = r_dip / r1` inside `geom`.
    pub fn at_eccentricity(p_r_am: f64, d_m: f64, eta: f64, geom: &HeadGeometry) -> Result<Self> {
        if !eta.is_finite() || !(0.0..1.0).contains(&eta) {
            return Err(Error::InvalidSource("eta must lie in [0, 1)"));
        }
        Self::new(p_r_am, d_m, eta * geom.r_brain())
    }

    pub fn p_r(&self) -> f64 {
        self.p_r
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn r_dip(&self) -> f64 {
        self.r_dip
    }

    /// Eccentricity `eta = r_dip / r1`; must be < 1 for a valid placement.
    pub fn eta(&self, geom: &HeadGeometry) -> f64 {
        self.r_dip / geom.r_brain()
    }

    /// Checked eccentricity: errors unless `0 <= eta < 1`.
    pub fn eta_checked(&self, geom: &HeadGeometry) -> Result<f64> {
        let eta = self.eta(geom);
        if (0.0..1.0).contains(&eta) {
            Ok(eta)
        } else {
            Err(Error::InvalidSource(
                "dipole must lie strictly inside the brain",
            ))
        }
    }

    /// Equivalent source current `I_dip = p_r / d`.
    pub fn current(&self) -> f64 {
        self.p_r / self.d
    }
}
