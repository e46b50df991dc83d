//! Trigonometric Scarf model on (-π/2, π/2) and its rational extension.
//!
//! The closed-form solutions Φ_n satisfy
//! `Φ'' + (ε_n - V_scarf(u) - r(u)) Φ = 0`, i.e. the extended Scarf
//! Hamiltonian is `-d²/du² + V_scarf + r`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::real::Real;
use crate::report::{Check, ValidationReport};
use crate::specfun::{gamma, jacobi_p, sin_pi};
use crate::xm_jacobi::{denominator, xm_eval, XmSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScarfParams {
    pub a: f64,
    pub b: f64,
    pub m: usize,
}

impl ScarfParams {
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        for (what, v) in [("Scarf parameter a", a), ("Scarf parameter b", b)] {
            if !v.is_finite() || v <= -1.0 {
                return Err(domain(what, v, "(-1, ∞)"));
            }
        }
        Ok(ScarfParams { a, b, m })
    }

    fn shifted(&self) -> f64 {
        self.a - self.b - self.m as f64 + 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Scarf,
    Oscillator,
    ScarfExtended,
    OscillatorExtended,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralLine {
    pub model: Model,
    pub n: usize,
    pub energy: f64,
}

/// `1 - sin u` without cancellation near u = π/2.
pub fn one_minus_sin(u: f64) -> f64 {
    2.0 * (FRAC_PI_4 - 0.5 * u).sin().powi(2)
}

/// `1 + sin u` without cancellation near u = -π/2.
pub fn one_plus_sin(u: f64) -> f64 {
    2.0 * (FRAC_PI_4 + 0.5 * u).sin().powi(2)
}

fn check_open(u: f64) -> Result<()> {
    if u.is_finite() && u.abs() < FRAC_PI_2 {
        Ok(())
    } else {
        Err(domain("u", u, "(-π/2, π/2)"))
    }
}

/// `((2a²+2b²-1)/4) sec²u - ((b²-a²)/2) sec u tan u`, evaluated in the
/// equivalent partial-fraction form
/// `(4a²-1)/(8(1-sin u)) + (4b²-1)/(8(1+sin u))`.
pub fn scarf_potential(p: &ScarfParams, u: f64) -> Result<f64> {
    check_open(u)?;
    let (a, b) = (p.a, p.b);
    Ok((4.0 * a * a - 1.0) / (8.0 * one_minus_sin(u))
        + (4.0 * b * b - 1.0) / (8.0 * one_plus_sin(u)))
}

/// Rational term r(u) of the extended model; zero for m = 0.
pub fn rational_term(p: &ScarfParams, u: f64) -> Result<f64> {
    check_open(u)?;
    rational_term_closed(p, u)
}

/// r(u) on the closed interval; r stays finite at u = ±π/2.
pub(crate) fn rational_term_closed(p: &ScarfParams, u: f64) -> Result<f64> {
    if p.m == 0 {
        return Ok(0.0);
    }
    let (a, b, m) = (p.a, p.b, p.m);
    let s = u.sin();
    let den = denominator(a, b, m, s);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Singular(s));
    }
    let q = jacobi_p(m as i64 - 1, -a, b, s) / den;
    let c = p.shifted();
    let cos2 = one_minus_sin(u) * one_plus_sin(u);
    Ok(-2.0 * m as f64 * c - c * (a + b + (a - b + 1.0) * s) * q + 0.5 * c * c * cos2 * q * q)
}

/// `V_scarf + r`, the potential of the extended Scarf Hamiltonian.
pub fn effective_potential(p: &ScarfParams, u: f64) -> Result<f64> {
    Ok(scarf_potential(p, u)? + rational_term(p, u)?)
}

/// ε_n = ((2n - 2m + a + b + 1)/2)², n ≥ m.
pub fn scarf_energy(p: &ScarfParams, n: usize) -> Result<SpectralLine> {
    if n < p.m {
        return Err(Error::Index { n, m: p.m });
    }
    let k = (n - p.m) as f64;
    let half = (2.0 * k + p.a + p.b + 1.0) / 2.0;
    Ok(SpectralLine {
        model: if p.m == 0 {
            Model::Scarf
        } else {
            Model::ScarfExtended
        },
        n,
        energy: half * half,
    })
}

/// Unnormalized Φ_n(u); exactly zero at u = ±π/2.
pub fn scarf_wavefunction(p: &ScarfParams, n: usize, u: f64) -> Result<f64> {
    if n < p.m {
        return Err(Error::Index { n, m: p.m });
    }
    if !u.is_finite() || u.abs() > FRAC_PI_2 {
        return Err(domain("u", u, "[-π/2, π/2]"));
    }
    if u.abs() == FRAC_PI_2 {
        return Ok(0.0);
    }
    let s = u.sin();
    let den = denominator(p.a, p.b, p.m, s);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Singular(s));
    }
    let envelope = one_minus_sin(u).powf(0.5 * p.a + 0.25) * one_plus_sin(u).powf(0.5 * p.b + 0.25);
    let poly = xm_eval(&XmSpec::new(n, p.a, p.b, p.m)?, s)?;
    Ok(envelope / den * poly)
}

/// The Gamma-function normalization constant of the extended Scarf
/// solutions, in its literature form (sine prefactor included).
pub fn scarf_norm(p: &ScarfParams, n: usize) -> Result<f64> {
    if n < p.m {
        return Err(Error::Index { n, m: p.m });
    }
    let (a, b) = (p.a, p.b);
    let nf = n as f64;
    let k = (n - p.m) as f64;
    let mf = p.m as f64;
    let sign = if p.m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let numer = sign
        * PI
        * 2f64.powf(a + b + 1.0)
        * (nf + b)
        * (nf - 2.0 * mf + a + 1.0)
        * gamma(k + a + 2.0)?;
    let denom = sin_pi(nf + b)
        * (2.0 * k + a + b + 1.0)
        * (k + a + 1.0)
        * gamma(k + a + b + 1.0)?
        * gamma(mf - nf - b + 1.0)?
        * gamma(k + 1.0)?;
    if denom == 0.0 {
        return Err(Error::Division(format!(
            "normalization denominator vanishes (a = {a}, b = {b}, n = {n})"
        )));
    }
    Ok(numer / denom)
}

/// Name of the admissibility check on a-b-m+1. When it fails the
/// denominator P_m^{(-a-1,b-1)} loses its leading coefficient.
pub const DEGENERACY_CHECK: &str = "shifted_not_small_integer";

/// Admissibility conditions of the extended Scarf model for possibly exact
/// parameters. m = 0 passes vacuously.
pub fn admissibility(a: Real, b: Real, m: usize) -> ValidationReport {
    let subject = format!("scarf a={a} b={b} m={m}");
    if m == 0 {
        return ValidationReport::new(subject, Vec::new());
    }
    let mr = Real::from(m as i64);
    let one = Real::from(1);
    let in_small_integers = |v: Real| v.as_integer().is_some_and(|k| (0..m as i64).contains(&k));
    let shifted = a - b - mr + one;
    let a_bad = in_small_integers(a);
    let shifted_bad = in_small_integers(shifted);
    let lower = a - mr + Real::from(2);
    let sign_gap = a - mr + one;

    let checks = vec![
        Check::new("b_nonzero", !b.is_zero(), b.value(), format!("b = {b}")),
        Check::new(
            "a_not_small_integer",
            !a_bad,
            a.value(),
            format!("a = {a} must avoid {{0, ..., {}}}", m - 1),
        ),
        Check::new(
            DEGENERACY_CHECK,
            !shifted_bad,
            shifted.value(),
            format!("a-b-m+1 = {shifted} must avoid {{0, ..., {}}}", m - 1),
        ),
        Check::new(
            "a_minus_m_plus_2_positive",
            lower.signum() > 0,
            lower.value(),
            format!("a-m+2 = {lower}"),
        ),
        Check::new(
            "sign_match",
            sign_gap.signum() == b.signum(),
            sign_gap.value(),
            format!(
                "sign(a-m+1) = {}, sign(b) = {}",
                sign_gap.signum(),
                b.signum()
            ),
        ),
    ];
    ValidationReport::new(subject, checks)
}

pub fn validate_scarf(p: &ScarfParams) -> ValidationReport {
    admissibility(Real::Float(p.a), Real::Float(p.b), p.m)
}
