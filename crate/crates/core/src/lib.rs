//! Rationally extended nonlinear (Mathews–Lakshmanan) oscillator.
//!
//! The crate evaluates X_m exceptional Jacobi polynomials, builds the
//! extended Scarf and oscillator models from them, checks the parameter
//! regularity conditions and verifies the closed forms numerically.

mod dd;
pub mod error;
pub mod grid;
pub mod oscillator;
pub mod real;
pub mod report;
pub mod scarf;
pub mod specfun;
pub mod verify;
pub mod xm_jacobi;

pub use error::{Error, Result};
pub use oscillator::{OscillatorParams, WavefunctionSample};
pub use real::Real;
pub use report::{Check, ValidationReport};
pub use scarf::{Model, ScarfParams, SpectralLine};
pub use specfun::JacobiSpec;
pub use verify::{QuadratureRule, ReportKind, VerificationReport};
pub use xm_jacobi::XmSpec;
