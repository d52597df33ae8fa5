//! Lumped RC surrogate network for the three-shell head.
//!
//! Each tissue layer contributes a radial branch (through-layer current) and
//! a tangential branch (intra-layer return current), both parallel RC with
//! `Z_i = k * s * Gamma_i / sigma_c_i(omega)`. The brain radial branch is
//! split into up/down halves weighted by the eccentricity asymmetry
//! `alpha(eta)`; `s = (reference_r_scalp / r3)^2` implements the global
//! head-size impedance scaling, `k` the fitted global scale.
//!
//! Fixed ladder wiring (the dipole injects at N0, returns at G):
//!
//! ```text
//!   I -> N0 --Z_brain_up-- N1 --Z_skull-- N2 --Z_scalp-- N3    (air: open)
//!         |                |              |              |
//!    Z_brain_down     Z_brain_tan    Z_skull_tan    Z_scalp_tan
//!         |                |              |              |
//!         G ---------------+--------------+--------------+
//! ```

use alloc::vec::Vec;

use crate::error::Error;
use crate::geom::{DipoleSource, HeadGeometry};
use crate::linalg::solve_complex;
use crate::poly::Polynomial;
use crate::tissue::{TissueSpec, VACUUM_PERMITTIVITY};
use crate::Result;
use num_complex::Complex64;

/// Tissue layer of the three-shell model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    Brain,
    Skull,
    Scalp,
}

impl Layer {
    pub const ALL: [Layer; 3] = [Layer::Brain, Layer::Skull, Layer::Scalp];

    pub fn index(&self) -> usize {
        match self {
            Layer::Brain => 0,
            Layer::Skull => 1,
            Layer::Scalp => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Layer::Brain => "brain",
            Layer::Skull => "skull",
            Layer::Scalp => "scalp",
        }
    }
}

/// Circuit node. `G` is the reference (dipole return, 0 V).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeId {
    /// Dipole injection node.
    N0,
    /// Brain/skull interface.
    N1,
    /// Skull/scalp interface.
    N2,
    /// Scalp surface (peak scalp voltage node).
    N3,
    /// Reference node.
    G,
}

impl NodeId {
    /// Unknown-vector index; `None` for the grounded reference.
    pub fn index(&self) -> Option<usize> {
        match self {
            NodeId::N0 => Some(0),
            NodeId::N1 => Some(1),
            NodeId::N2 => Some(2),
            NodeId::N3 => Some(3),
            NodeId::G => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NodeId::N0 => "N0",
            NodeId::N1 => "N1",
            NodeId::N2 => "N2",
            NodeId::N3 => "N3",
            NodeId::G => "G",
        }
    }
}

/// Role of each of the seven branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchRole {
    RadialBrainUp,
    RadialBrainDown,
    RadialSkull,
    RadialScalp,
    TangentialBrain,
    TangentialSkull,
    TangentialScalp,
}

impl BranchRole {
    pub const ALL: [BranchRole; 7] = [
        BranchRole::RadialBrainUp,
        BranchRole::RadialBrainDown,
        BranchRole::RadialSkull,
        BranchRole::RadialScalp,
        BranchRole::TangentialBrain,
        BranchRole::TangentialSkull,
        BranchRole::TangentialScalp,
    ];

    /// Fixed wiring of the ladder.
    pub fn endpoints(&self) -> (NodeId, NodeId) {
        match self {
            BranchRole::RadialBrainUp => (NodeId::N0, NodeId::N1),
            BranchRole::RadialBrainDown => (NodeId::N0, NodeId::G),
            BranchRole::RadialSkull => (NodeId::N1, NodeId::N2),
            BranchRole::RadialScalp => (NodeId::N2, NodeId::N3),
            BranchRole::TangentialBrain => (NodeId::N1, NodeId::G),
            BranchRole::TangentialSkull => (NodeId::N2, NodeId::G),
            BranchRole::TangentialScalp => (NodeId::N3, NodeId::G),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BranchRole::RadialBrainUp => "brain_r_up",
            BranchRole::RadialBrainDown => "brain_r_down",
            BranchRole::RadialSkull => "skull_r",
            BranchRole::RadialScalp => "scalp_r",
            BranchRole::TangentialBrain => "brain_tan",
            BranchRole::TangentialSkull => "skull_tan",
            BranchRole::TangentialScalp => "scalp_tan",
        }
    }
}

/// Parallel RC branch element. `r_ohm` may be infinite (open resistor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchImpedance {
    pub r_ohm: f64,
    pub c_farad: f64,
}

impl BranchImpedance {
    pub fn new(r_ohm: f64, c_farad: f64) -> Result<Self> {
        if r_ohm.is_nan() || r_ohm <= 0.0 {
            return Err(Error::Domain("branch resistance must be > 0 (or +inf)"));
        }
        if !c_farad.is_finite() || c_farad < 0.0 {
            return Err(Error::Domain("branch capacitance must be finite and >= 0"));
        }
        Ok(Self { r_ohm, c_farad })
    }

    /// Branch admittance `1/R + j omega C` at the given frequency.
    pub fn admittance(&self, f_hz: f64) -> Complex64 {
        let g = if self.r_ohm.is_finite() {
            1.0 / self.r_ohm
        } else {
            0.0
        };
        Complex64::new(g, 2.0 * core::f64::consts::PI * f_hz * self.c_farad)
    }

    /// Branch impedance `(1/R + j omega C)^-1`; infinite for a fully open branch.
    pub fn impedance(&self, f_hz: f64) -> Complex64 {
        let y = self.admittance(f_hz);
        if y.norm() == 0.0 {
            Complex64::new(f64::INFINITY, 0.0)
        } else {
            y.finv()
        }
    }
}

/// One branch of the ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub from: NodeId,
    pub to: NodeId,
    pub impedance: BranchImpedance,
    pub role: BranchRole,
}

/// The assembled seven-branch surrogate network at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitNetwork {
    pub branches: Vec<Branch>,
    /// Source current injected into N0, returning at G, in amperes.
    pub source_current: Complex64,
    /// Frequency the element values were evaluated at, in Hz.
    pub f_hz: f64,
    /// True if any tissue table lookup was clamped during construction.
    pub clamped_tables: bool,
}

impl CircuitNetwork {
    /// Checks the fixed-topology invariants: exactly seven branches, one per
    /// role, each with the ladder's wiring.
    pub fn validate(&self) -> Result<()> {
        if self.branches.len() != 7 {
            return Err(Error::Mismatch("network must have exactly 7 branches"));
        }
        for role in BranchRole::ALL {
            let b = self
                .branches
                .iter()
                .find(|b| b.role == role)
                .ok_or(Error::Mismatch("missing branch role"))?;
            if (b.from, b.to) != role.endpoints() {
                return Err(Error::Mismatch("branch endpoints do not match the ladder"));
            }
        }
        Ok(())
    }

    pub fn branch(&self, role: BranchRole) -> &Branch {
        self.branches
            .iter()
            .find(|b| b.role == role)
            .expect("validated network has every role")
    }
}

/// How tissue properties map to branch elements (used by the ablation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DispersionMode {
    /// `R(sigma(f))` and `C(eps(f))`.
    Full,
    /// `R(sigma(f))`, all capacitances zero.
    ResistiveOnly,
    /// `R(sigma(f_anchor))`, all capacitances zero: frequency-flat network.
    StaticAnchor { f_anchor_hz: f64 },
}

/// Validity domain of a fitted parameter map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub min: f64,
    pub max: f64,
}

impl Domain {
    pub const UNBOUNDED: Domain = Domain {
        min: f64::NEG_INFINITY,
        max: f64::INFINITY,
    };

    pub fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    /// Admits a 1% relative excursion beyond the fitted range (the validation
    /// protocol probes eta = 0.966 against a fit bounded at 0.965).
    pub fn contains_with_slack(&self, x: f64) -> bool {
        if self.min == f64::NEG_INFINITY && self.max == f64::INFINITY {
            return true;
        }
        let slack = 0.01 * self.min.abs().max(self.max.abs());
        x >= self.min - slack && x <= self.max + slack
    }
}

/// Which radius ratio a fitted gamma polynomial consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiRatio {
    Psi12,
    Psi13,
    Psi23,
}

impl PsiRatio {
    pub fn eval(&self, geom: &HeadGeometry) -> f64 {
        match self {
            PsiRatio::Psi12 => geom.psi(1, 2),
            PsiRatio::Psi13 => geom.psi(1, 3),
            PsiRatio::Psi23 => geom.psi(2, 3),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PsiRatio::Psi12 => "psi12",
            PsiRatio::Psi13 => "psi13",
            PsiRatio::Psi23 => "psi23",
        }
    }
}

/// Fitted polynomial map for one layer's gamma ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaMap {
    pub poly: Polynomial,
    pub abscissa: PsiRatio,
    pub domain: Domain,
}

/// Fitted polynomial map for the source asymmetry alpha(eta).
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaMap {
    pub poly: Polynomial,
    pub domain: Domain,
}

/// Complete fitted parameter set of the surrogate circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedParams {
    /// Per-layer `gamma_i(psi)` maps (brain, skull, scalp).
    pub gamma: [GammaMap; 3],
    /// Eccentricity asymmetry `alpha(eta)`.
    pub alpha: AlphaMap,
    /// Global impedance scale `k`.
    pub global_scale: f64,
    /// Scalp radius the parameters were fitted at, in meters.
    pub reference_r_scalp: f64,
}

impl FittedParams {
    /// Neutral parameters: gamma = 1, alpha = 0, k = 1, unbounded domains.
    pub fn identity(reference_r_scalp: f64) -> Self {
        let gamma_map = |abscissa| GammaMap {
            poly: Polynomial::constant(1.0),
            abscissa,
            domain: Domain::UNBOUNDED,
        };
        Self {
            gamma: [
                gamma_map(PsiRatio::Psi12),
                gamma_map(PsiRatio::Psi23),
                gamma_map(PsiRatio::Psi23),
            ],
            alpha: AlphaMap {
                poly: Polynomial::constant(0.0),
                domain: Domain::UNBOUNDED,
            },
            global_scale: 1.0,
            reference_r_scalp,
        }
    }

    /// Evaluates `gamma_i` at this geometry, guarding the fitted domain and
    /// positivity.
    pub fn gamma_at(&self, layer: Layer, geom: &HeadGeometry) -> Result<f64> {
        let map = &self.gamma[layer.index()];
        let x = map.abscissa.eval(geom);
        if !map.domain.contains_with_slack(x) {
            return Err(Error::ParamDomain {
                param: "gamma",
                value: x,
                min: map.domain.min,
                max: map.domain.max,
            });
        }
        let gamma = map.poly.eval(x);
        if gamma.is_nan() || gamma <= 0.0 || gamma.is_infinite() {
            return Err(Error::ParamRange {
                param: "gamma",
                value: gamma,
            });
        }
        Ok(gamma)
    }

    /// Evaluates `alpha(eta)`, guarding the fitted domain and `|alpha| < 1`.
    pub fn alpha_at(&self, eta: f64) -> Result<f64> {
        if !self.alpha.domain.contains_with_slack(eta) {
            return Err(Error::ParamDomain {
                param: "alpha",
                value: eta,
                min: self.alpha.domain.min,
                max: self.alpha.domain.max,
            });
        }
        let alpha = self.alpha.poly.eval(eta);
        if !alpha.is_finite() || alpha.abs() >= 1.0 {
            return Err(Error::ParamRange {
                param: "alpha",
                value: alpha,
            });
        }
        Ok(alpha)
    }
}

/// Baseline radial geometry factor `Gamma_i = t_i / r_mid_i^2` [1/m]
/// (brain: thickness r1, mid-radius r1/2).
pub fn geometric_factor(layer: Layer, geom: &HeadGeometry) -> f64 {
    let (t, r_mid) = match layer {
        Layer::Brain => (geom.r_brain(), 0.5 * geom.r_brain()),
        Layer::Skull => (
            geom.skull_thickness(),
            0.5 * (geom.r_brain() + geom.r_skull()),
        ),
        Layer::Scalp => (
            geom.scalp_thickness(),
            0.5 * (geom.r_skull() + geom.r_scalp()),
        ),
    };
    t / (r_mid * r_mid)
}

/// Builds the surrogate network at frequency `f_hz` with the full RC
/// parametrization.
pub fn branch_impedances(
    geom: &HeadGeometry,
    tissues: &[TissueSpec; 3],
    params: &FittedParams,
    src: &DipoleSource,
    f_hz: f64,
) -> Result<CircuitNetwork> {
    build_network(geom, tissues, params, src, f_hz, DispersionMode::Full)
}

/// Builds the surrogate network with an explicit dispersion mode.
pub fn build_network(
    geom: &HeadGeometry,
    tissues: &[TissueSpec; 3],
    params: &FittedParams,
    src: &DipoleSource,
    f_hz: f64,
    mode: DispersionMode,
) -> Result<CircuitNetwork> {
    if !f_hz.is_finite() || f_hz < 0.0 {
        return Err(Error::Domain("frequency must be finite and >= 0"));
    }
    let eta = src.eta_checked(geom)?;
    let alpha = params.alpha_at(eta)?;

    let scale_ratio = params.reference_r_scalp / geom.r_scalp();
    let ks = params.global_scale * scale_ratio * scale_ratio;

    let mut clamped = false;
    let mut radial = [BranchImpedance {
        r_ohm: f64::INFINITY,
        c_farad: 0.0,
    }; 3];
    let mut tangential = radial;

    for layer in Layer::ALL {
        let tissue = &tissues[layer.index()];
        let (sigma, eps_rel, was_clamped) = match mode {
            DispersionMode::Full | DispersionMode::ResistiveOnly => tissue.properties_at(f_hz)?,
            DispersionMode::StaticAnchor { f_anchor_hz } => tissue.properties_at(f_anchor_hz)?,
        };
        clamped |= was_clamped;

        let gamma = params.gamma_at(layer, geom)?;
        let gam_factor = geometric_factor(layer, geom);
        let r = ks * gam_factor / sigma; // sigma = 0 -> open resistor
        let c = match mode {
            DispersionMode::Full => VACUUM_PERMITTIVITY * eps_rel / (ks * gam_factor),
            DispersionMode::ResistiveOnly | DispersionMode::StaticAnchor { .. } => 0.0,
        };
        radial[layer.index()] = BranchImpedance::new(r, c)?;
        // Z_theta = Z_r / gamma at every frequency: R/gamma, C*gamma.
        tangential[layer.index()] = BranchImpedance::new(r / gamma, c * gamma)?;
    }

    // Brain radial split: Z_up = Z0 (1 - alpha), Z_down = Z0 (1 + alpha).
    let brain = radial[Layer::Brain.index()];
    let up = BranchImpedance::new(brain.r_ohm * (1.0 - alpha), brain.c_farad / (1.0 - alpha))?;
    let down = BranchImpedance::new(brain.r_ohm * (1.0 + alpha), brain.c_farad / (1.0 + alpha))?;

    let mk = |role: BranchRole, imp: BranchImpedance| {
        let (from, to) = role.endpoints();
        Branch {
            from,
            to,
            impedance: imp,
            role,
        }
    };

    let branches = alloc::vec![
        mk(BranchRole::RadialBrainUp, up),
        mk(BranchRole::RadialBrainDown, down),
        mk(BranchRole::RadialSkull, radial[Layer::Skull.index()]),
        mk(BranchRole::RadialScalp, radial[Layer::Scalp.index()]),
        mk(
            BranchRole::TangentialBrain,
            tangential[Layer::Brain.index()]
        ),
        mk(
            BranchRole::TangentialSkull,
            tangential[Layer::Skull.index()]
        ),
        mk(
            BranchRole::TangentialScalp,
            tangential[Layer::Scalp.index()]
        ),
    ];

    let net = CircuitNetwork {
        branches,
        source_current: Complex64::new(src.current(), 0.0),
        f_hz,
        clamped_tables: clamped,
    };
    net.validate()?;
    Ok(net)
}

/// Node voltages of a solved network (indices 0..=3 map to N0..=N3, G = 0 V).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalSolution {
    pub v: [Complex64; 4],
}

impl NodalSolution {
    pub fn node_voltage(&self, node: NodeId) -> Complex64 {
        match node.index() {
            Some(i) => self.v[i],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Peak scalp node voltage `V(N3)`.
    pub fn v_scalp_max(&self) -> Complex64 {
        self.v[3]
    }

    /// Current through a branch, positive from `branch.from` to `branch.to`.
    pub fn branch_current(&self, branch: &Branch, f_hz: f64) -> Complex64 {
        let y = branch.impedance.admittance(f_hz);
        (self.node_voltage(branch.from) - self.node_voltage(branch.to)) * y
    }

    /// Maximum KCL residual magnitude over all nodes, in amperes.
    pub fn kcl_residual(&self, net: &CircuitNetwork) -> f64 {
        let mut residual: [Complex64; 4] = [Complex64::new(0.0, 0.0); 4];
        if let Some(i) = NodeId::N0.index() {
            residual[i] += net.source_current;
        }
        for branch in &net.branches {
            let current = self.branch_current(branch, net.f_hz);
            if let Some(i) = branch.from.index() {
                residual[i] -= current;
            }
            if let Some(i) = branch.to.index() {
                residual[i] += current;
            }
        }
        residual.iter().fold(0.0_f64, |acc, r| acc.max(r.norm()))
    }
}

/// Solves the grounded nodal-admittance system of the seven-branch ladder.
pub fn solve_network(net: &CircuitNetwork, f_hz: f64) -> Result<NodalSolution> {
    net.validate()?;
    let n = 4;
    let mut y = alloc::vec![Complex64::new(0.0, 0.0); n * n];
    let mut rhs = alloc::vec![Complex64::new(0.0, 0.0); n];

    for branch in &net.branches {
        let adm = branch.impedance.admittance(f_hz);
        if adm == Complex64::new(0.0, 0.0) {
            continue; // open branch: absent admittance
        }
        let fi = branch.from.index();
        let ti = branch.to.index();
        if let Some(i) = fi {
            y[i * n + i] += adm;
        }
        if let Some(j) = ti {
            y[j * n + j] += adm;
        }
        if let (Some(i), Some(j)) = (fi, ti) {
            y[i * n + j] -= adm;
            y[j * n + i] -= adm;
        }
    }
    rhs[0] = net.source_current;

    let x = solve_complex(&mut y, &mut rhs, n)?;
    let solution = NodalSolution {
        v: [x[0], x[1], x[2], x[3]],
    };

    // The factorization can succeed on a near-singular star; verify KCL.
    let i_mag = net.source_current.norm();
    let bound = if i_mag > 0.0 {
        1e-12 * i_mag
    } else {
        f64::MIN_POSITIVE
    };
    if solution.kcl_residual(net) > bound {
        return Err(Error::SingularNetwork);
    }
    Ok(solution)
}
