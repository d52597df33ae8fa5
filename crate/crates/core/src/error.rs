//! Error type shared by the solver, fitting and validation layers.

use core::fmt;

/// Errors produced by the solvers and the fitting pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input value is outside its physical domain (negative frequency,
    /// non-finite quantity, ...).
    Domain(&'static str),
    /// A tissue specification violates its invariants.
    InvalidTissue(&'static str),
    /// Shell radii are not ordered `0 < r1 < r2 < r3` or are non-finite.
    InvalidGeometry(&'static str),
    /// The dipole source is invalid (eta outside [0,1), non-positive length).
    InvalidSource(&'static str),
    /// The series denominator cancelled for this conductivity combination.
    SingularTerm { l: u32 },
    /// The nodal admittance matrix could not be factorized.
    SingularNetwork,
    /// Fitted parameters were evaluated outside their fitted validity range.
    ParamDomain {
        param: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    /// An evaluated parameter left its admissible range (gamma <= 0, |alpha| >= 1).
    ParamRange { param: &'static str, value: f64 },
    /// A regression design matrix is rank deficient (too few distinct abscissae).
    DegenerateDesign(&'static str),
    /// A reference series contains a zero value; relative error is undefined.
    ZeroReference { index: usize },
    /// Paired series have mismatched lengths or an empty grid was supplied.
    Mismatch(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidTissue(msg) => write!(f, "invalid tissue spec: {msg}"),
            Error::InvalidGeometry(msg) => write!(f, "invalid geometry: {msg}"),
            Error::InvalidSource(msg) => write!(f, "invalid source: {msg}"),
            Error::SingularTerm { l } => {
                write!(f, "series term denominator vanished at l = {l} (degenerate conductivity combination)")
            }
            Error::SingularNetwork => write!(f, "singular nodal admittance matrix"),
            Error::ParamDomain {
                param,
                value,
                min,
                max,
            } => write!(
                f,
                "fitted parameter `{param}` evaluated at {value} outside fitted domain [{min}, {max}]"
            ),
            Error::ParamRange { param, value } => {
                write!(f, "parameter `{param}` = {value} outside admissible range")
            }
            Error::DegenerateDesign(msg) => write!(f, "degenerate regression design: {msg}"),
            Error::ZeroReference { index } => {
                write!(f, "reference series is zero at index {index}")
            }
            Error::Mismatch(msg) => write!(f, "mismatched inputs: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
