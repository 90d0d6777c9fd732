use thiserror::Error;

/// Errors raised by the numerical kernels, solvers and samplers.
///
/// Parameter errors carry the parameter name so front ends can point at the
/// offending flag.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the valid range {expected}")]
    Parameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{name} = {value} is outside the domain of {function}")]
    Domain {
        function: &'static str,
        name: &'static str,
        value: f64,
    },

    #[error("{function} is not supported for {name} = {value} ({reason})")]
    Unsupported {
        function: &'static str,
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{function} is singular at {name} = {value}")]
    Singularity {
        function: &'static str,
        name: &'static str,
        value: f64,
    },

    #[error("grid error: {0}")]
    Grid(String),

    #[error(
        "grid too coarse: spectral cutoff K = {cutoff} leaves exp(-K^alpha t) = {tail:e} (need < {limit:e})"
    )]
    Resolution { cutoff: f64, tail: f64, limit: f64 },

    #[error("asymmetric symbol is degenerate for alpha = 1 with p = q; use the Riesz symbol")]
    DegenerateSymbol,

    #[error("Laplace variable must satisfy Re(s) > 0, got Re(s) = {0}")]
    HalfPlane(f64),

    #[error("{what} needs at least {need} samples, got {got}")]
    SampleSize {
        what: &'static str,
        got: usize,
        need: usize,
    },

    #[error("Laplace inversion did not converge for mode k = {k}: residual {residual:e} > {tolerance:e}")]
    Inversion {
        k: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("negative density ripple {value:e} exceeds the clamp threshold {limit:e}")]
    NegativeDensity { value: f64, limit: f64 },
}

impl Error {
    /// Name of the parameter the error refers to, if any.
    pub fn parameter_name(&self) -> Option<&'static str> {
        match self {
            Error::Parameter { name, .. }
            | Error::Domain { name, .. }
            | Error::Unsupported { name, .. }
            | Error::Singularity { name, .. } => Some(name),
            Error::HalfPlane(_) => Some("s"),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn finite(function: &'static str, name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain {
            function,
            name,
            value,
        })
    }
}
