//! SPICE netlist rendering of an assembled surrogate network.
//!
//! Element values are frozen at the network's evaluation frequency; the deck
//! is plain text and byte-for-byte deterministic for identical inputs.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::circuit::{CircuitNetwork, NodeId};
use crate::error::Error;
use crate::geom::HeadGeometry;
use crate::tissue::{Dispersion, TissueSpec};
use crate::Result;

/// Provenance recorded in the deck's comment header.
pub struct NetlistMeta<'a> {
    pub tool_version: &'a str,
    pub geometry: &'a HeadGeometry,
    pub tissues: &'a [TissueSpec; 3],
}

fn node_name(node: NodeId) -> &'static str {
    match node {
        NodeId::G => "0", // SPICE ground
        other => other.name(),
    }
}

fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn tissue_summary(tissue: &TissueSpec) -> String {
    match tissue.dispersion() {
        Dispersion::Static { sigma, eps_rel } => format!(
            "{} static sigma={} S/m eps_rel={}",
            tissue.kind().name(),
            fmt_value(*sigma),
            fmt_value(*eps_rel)
        ),
        Dispersion::Table(rows) => format!(
            "{} table {} rows {}..{} Hz",
            tissue.kind().name(),
            rows.len(),
            fmt_value(rows[0].f_hz),
            fmt_value(rows[rows.len() - 1].f_hz)
        ),
    }
}

/// Renders the network as a SPICE deck: one `R` and one `C` card per branch
/// (zero capacitances and open resistors are omitted and noted in the
/// header), plus the dipole current source.
pub fn netlist_document(net: &CircuitNetwork, meta: &NetlistMeta<'_>) -> Result<String> {
    net.validate()?;
    for b in &net.branches {
        if b.impedance.r_ohm.is_nan() || !b.impedance.c_farad.is_finite() {
            return Err(Error::Domain("netlist requires representable R/C values"));
        }
    }
    if !net.source_current.re.is_finite() || !net.source_current.im.is_finite() {
        return Err(Error::Domain("netlist requires a finite source current"));
    }

    let mut omitted: Vec<String> = Vec::new();
    let mut cards: Vec<String> = Vec::new();
    for b in &net.branches {
        let (n1, n2) = (node_name(b.from), node_name(b.to));
        if b.impedance.r_ohm.is_finite() {
            cards.push(format!(
                "R{} {} {} {}",
                b.role.name(),
                n1,
                n2,
                fmt_value(b.impedance.r_ohm)
            ));
        } else {
            omitted.push(format!("R{} (open)", b.role.name()));
        }
        if b.impedance.c_farad > 0.0 {
            cards.push(format!(
                "C{} {} {} {}",
                b.role.name(),
                n1,
                n2,
                fmt_value(b.impedance.c_farad)
            ));
        } else {
            omitted.push(format!("C{} (zero)", b.role.name()));
        }
    }

    let g = meta.geometry;
    let mut out = String::new();
    out.push_str("* three-shell head surrogate circuit\n");
    out.push_str(&format!("* tool version {}\n", meta.tool_version));
    out.push_str(&format!(
        "* element values frozen at f = {} Hz\n",
        fmt_value(net.f_hz)
    ));
    out.push_str(&format!(
        "* geometry r1/r2/r3 = {} / {} / {} m\n",
        fmt_value(g.r_brain()),
        fmt_value(g.r_skull()),
        fmt_value(g.r_scalp())
    ));
    for tissue in meta.tissues.iter() {
        out.push_str(&format!("* tissue {}\n", tissue_summary(tissue)));
    }
    if !omitted.is_empty() {
        out.push_str(&format!("* omitted elements: {}\n", omitted.join(", ")));
    }
    for card in cards {
        out.push_str(&card);
        out.push('\n');
    }
    // Current source pushing I_dip into N0 from ground.
    out.push_str(&format!(
        "Idip 0 N0 AC {}\n",
        fmt_value(net.source_current.norm())
    ));
    out.push_str(".end\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{branch_impedances, FittedParams};
    use crate::geom::DipoleSource;
    use crate::tissue::TissueKind;

    fn fixture() -> (HeadGeometry, [TissueSpec; 3], FittedParams, DipoleSource) {
        let geom = HeadGeometry::standard();
        let tissues = [
            TissueSpec::stat(TissueKind::Brain, 0.33, 1e4).unwrap(),
            TissueSpec::stat(TissueKind::Skull, 0.008, 1e3).unwrap(),
            TissueSpec::stat(TissueKind::Scalp, 0.25, 1e4).unwrap(),
        ];
        let params = FittedParams::identity(geom.r_scalp());
        let src = DipoleSource::at_eccentricity(15e-9, 1e-3, 0.5, &geom).unwrap();
        (geom, tissues, params, src)
    }

    #[test]
    fn symmetric_network_has_equal_brain_resistors() {
        let (geom, tissues, params, src) = fixture();
        let net = branch_impedances(&geom, &tissues, &params, &src, 1000.0).unwrap();
        let meta = NetlistMeta {
            tool_version: "test",
            geometry: &geom,
            tissues: &tissues,
        };
        let deck = netlist_document(&net, &meta).unwrap();
        let up_line = deck.lines().find(|l| l.starts_with("Rbrain_r_up")).unwrap();
        let down_line = deck
            .lines()
            .find(|l| l.starts_with("Rbrain_r_down"))
            .unwrap();
        let up_val = up_line.split_whitespace().last().unwrap();
        let down_val = down_line.split_whitespace().last().unwrap();
        assert_eq!(up_val, down_val);
    }

    #[test]
    fn deterministic_bytes() {
        let (geom, tissues, params, src) = fixture();
        let net = branch_impedances(&geom, &tissues, &params, &src, 1000.0).unwrap();
        let meta = NetlistMeta {
            tool_version: "test",
            geometry: &geom,
            tissues: &tissues,
        };
        let a = netlist_document(&net, &meta).unwrap();
        let b = netlist_document(&net, &meta).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_capacitance_omitted_and_noted() {
        let (geom, tissues, params, src) = fixture();
        let mut net = branch_impedances(&geom, &tissues, &params, &src, 1000.0).unwrap();
        for b in net.branches.iter_mut() {
            b.impedance.c_farad = 0.0;
        }
        let meta = NetlistMeta {
            tool_version: "test",
            geometry: &geom,
            tissues: &tissues,
        };
        let deck = netlist_document(&net, &meta).unwrap();
        assert!(!deck.lines().any(|l| l.starts_with('C')));
        assert!(deck.contains("* omitted elements:"));
        assert!(deck.contains("Cbrain_r_up (zero)"));
    }

    #[test]
    fn ground_is_spice_zero() {
        let (geom, tissues, params, src) = fixture();
        let net = branch_impedances(&geom, &tissues, &params, &src, 1000.0).unwrap();
        let meta = NetlistMeta {
            tool_version: "test",
            geometry: &geom,
            tissues: &tissues,
        };
        let deck = netlist_document(&net, &meta).unwrap();
        assert!(deck.contains("Rbrain_r_down N0 0 "));
        assert!(deck.contains("Idip 0 N0 AC "));
        assert!(!deck.contains(" G "));
    }
}
