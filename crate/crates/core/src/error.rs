use thiserror::Error;

/// Errors raised by the special functions, the model evaluators and the
/// verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at x = {0}")]
    Pole(f64),

    #[error("hypergeometric series did not converge within {terms} terms (z = {z})")]
    NonConvergence { terms: usize, z: f64 },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("{what} = {value} lies outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    #[error("index n = {n} is below the extension order m = {m}")]
    Index { n: usize, m: usize },

    #[error("division by zero: {0}")]
    Division(String),

    #[error("denominator Jacobi polynomial vanishes at t = {0}")]
    Singular(f64),

    #[error("potential routes disagree at x = {x}: direct {direct}, via r(u) {mapped}")]
    RouteMismatch { x: f64, direct: f64, mapped: f64 },

    #[error("degree check failed for n = {n}: {detail}")]
    Degree { n: usize, detail: String },

    #[error("eigenvalue bisection failed: {0}")]
    Bisection(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, domain: impl Into<String>) -> Error {
    Error::Domain {
        what,
        value,
        domain: domain.into(),
    }
}
