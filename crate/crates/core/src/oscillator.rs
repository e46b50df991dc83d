//! The nonlinear oscillator on D_λ = (0, |λ|^{-1/2}) and its rational
//! extension, obtained from the Scarf model by the point transformation
//! `u = -π/2 + 2 arcsin(√|λ| x)`.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Error, Result};
use crate::real::{Real, FLOAT_TOLERANCE};
use crate::report::{Check, ValidationReport};
use crate::scarf::{
    admissibility, rational_term_closed, scarf_energy, scarf_norm, Model, ScarfParams,
    SpectralLine, DEGENERACY_CHECK,
};
use crate::specfun::{gamma, jacobi_p, legendre_p};
use crate::xm_jacobi::{denominator, xm_eval, XmSpec};

/// Relative agreement required between the two evaluation routes of the
/// extended potential.
pub const ROUTE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    pub lambda: Real,
    pub m: usize,
}

impl OscillatorParams {
    pub fn new(lambda: Real, m: usize) -> Result<Self> {
        let v = lambda.value();
        if !v.is_finite() || v >= 0.0 {
            return Err(domain("lambda", v, "(-∞, 0)"));
        }
        Ok(OscillatorParams { lambda, m })
    }

    pub fn from_f64(lambda: f64, m: usize) -> Result<Self> {
        Self::new(Real::Float(lambda), m)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda.value()
    }

    pub fn abs_lambda(&self) -> f64 {
        self.lambda().abs()
    }

    pub fn x_max(&self) -> f64 {
        domain_upper(self.lambda())
    }

    /// Scarf parameters (a, b, m) under the parameter map.
    pub fn scarf_params(&self) -> Result<ScarfParams> {
        let (a, b) = param_map(self.lambda())?;
        ScarfParams::new(a, b, self.m)
    }
}

fn check_lambda(lambda: f64) -> Result<f64> {
    if lambda.is_finite() && lambda < 0.0 {
        Ok(-lambda)
    } else {
        Err(domain("lambda", lambda, "(-∞, 0)"))
    }
}

/// Right end |λ|^{-1/2} of D_λ.
pub fn domain_upper(lambda: f64) -> f64 {
    1.0 / lambda.abs().sqrt()
}

pub fn map_u(x: f64, lambda: f64) -> Result<f64> {
    let l = check_lambda(lambda)?;
    let top = domain_upper(lambda);
    if !x.is_finite() || x < 0.0 || x > top {
        return Err(domain("x", x, format!("[0, {top}]")));
    }
    if x == top {
        return Ok(FRAC_PI_2);
    }
    let s = (l.sqrt() * x).min(1.0);
    Ok(-FRAC_PI_2 + 2.0 * s.asin())
}

pub fn map_x(u: f64, lambda: f64) -> Result<f64> {
    let l = check_lambda(lambda)?;
    if !u.is_finite() || u.abs() > FRAC_PI_2 {
        return Err(domain("u", u, "[-π/2, π/2]"));
    }
    Ok((0.5 * (u + FRAC_PI_2)).sin() / l.sqrt())
}

/// `a = |(λ+2)/λ|/2`, `b = 1/2`.
pub fn param_map(lambda: f64) -> Result<(f64, f64)> {
    check_lambda(lambda)?;
    Ok((0.5 * ((lambda + 2.0) / lambda).abs(), 0.5))
}

pub fn param_map_exact(lambda: Real) -> Result<(Real, Real)> {
    check_lambda(lambda.value())?;
    let a = ((lambda + Real::from(2)) / lambda).abs() / Real::from(2);
    Ok((a, Real::exact(1, 2)))
}

/// Scarf eigenvalue ε to oscillator energy E.
pub fn energy_map(eps: f64, lambda: f64) -> f64 {
    let l = lambda.abs();
    2.0 * l * (eps - 1.0 / (4.0 * l * l) + 1.0 / (4.0 * l))
}

/// Oscillator energy E to Scarf eigenvalue ε.
pub fn energy_map_inverse(e: f64, lambda: f64) -> f64 {
    let l = lambda.abs();
    e / (2.0 * l) + 1.0 / (4.0 * l * l) - 1.0 / (4.0 * l)
}

/// `(1 - |λ|x²)` as `(1 - √|λ|x)(1 + √|λ|x)`.
fn gap(l: f64, x: f64) -> f64 {
    let y = l.sqrt() * x;
    (1.0 - y) * (1.0 + y)
}

fn check_x(lambda: f64, x: f64, singular_right: bool) -> Result<f64> {
    let l = check_lambda(lambda)?;
    let top = domain_upper(lambda);
    let outside = !x.is_finite() || x < 0.0 || x > top || (singular_right && x == top);
    if outside {
        let d = if singular_right {
            format!("[0, {top})")
        } else {
            format!("[0, {top}]")
        };
        return Err(domain("x", x, d));
    }
    Ok(l)
}

/// `V(x) = (1 - |λ|)x² / (1 - |λ|x²)`.
pub fn conventional_potential(lambda: f64, x: f64) -> Result<f64> {
    let l = check_x(lambda, x, true)?;
    Ok((1.0 - l) * x * x / gap(l, x))
}

/// The direct Jacobi-argument form of V_ext together with the sum of the
/// magnitudes of its terms.
fn extended_potential_direct(p: &OscillatorParams, x: f64) -> Result<(f64, f64)> {
    let lambda = p.lambda();
    let v = conventional_potential(lambda, x)?;
    if p.m == 0 {
        return Ok((v, v.abs()));
    }
    let l = p.abs_lambda();
    let (a, b) = param_map(lambda)?;
    let big_a = 2.0 * a;
    let m = p.m;
    let t = 2.0 * l * x * x - 1.0;
    let den = denominator(a, b, m, t);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Singular(t));
    }
    let q = jacobi_p(m as i64 - 1, -a, b, t) / den;
    let g = 1.0 - 2.0 * m as f64 + big_a;
    let ll = l * l;
    let terms = [
        v,
        -4.0 * m as f64 * l * g,
        -2.0 * ll * x * x * (1.0 + big_a) * g * q,
        2.0 * ll * x * x * gap(l, x) * g * g * q * q,
    ];
    let mut sum = 0.0;
    let mut scale = 0.0;
    for term in terms {
        sum += term;
        scale += term.abs();
    }
    Ok((sum, scale))
}

/// `V + 4|λ| r(u(x))`.
fn extended_potential_mapped(p: &OscillatorParams, x: f64) -> Result<f64> {
    let lambda = p.lambda();
    let v = conventional_potential(lambda, x)?;
    if p.m == 0 {
        return Ok(v);
    }
    let u = map_u(x, lambda)?;
    Ok(v + 4.0 * p.abs_lambda() * rational_term_closed(&p.scarf_params()?, u)?)
}

/// Extended potential V_ext(x), evaluated by two independent routes that
/// must agree.
pub fn extended_potential(p: &OscillatorParams, x: f64) -> Result<f64> {
    let (direct, scale) = extended_potential_direct(p, x)?;
    let mapped = extended_potential_mapped(p, x)?;
    if (direct - mapped).abs() > ROUTE_TOLERANCE * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::RouteMismatch { x, direct, mapped });
    }
    Ok(direct)
}

/// `E_n = (|λ|/2)(2n+1)² + 2n + 3/2`.
pub fn conventional_energy(lambda: f64, n: usize) -> SpectralLine {
    let l = lambda.abs();
    let k = 2.0 * n as f64 + 1.0;
    SpectralLine {
        model: Model::Oscillator,
        n,
        energy: 0.5 * l * k * k + 2.0 * n as f64 + 1.5,
    }
}

/// `E_n = (|λ|/2)(2m-2n-1)² + (4n-4m+3)/2`, n ≥ m.
pub fn extended_energy(p: &OscillatorParams, n: usize) -> Result<SpectralLine> {
    if n < p.m {
        return Err(Error::Index { n, m: p.m });
    }
    let l = p.abs_lambda();
    let k = (n - p.m) as f64;
    let q = 2.0 * k + 1.0;
    Ok(SpectralLine {
        model: if p.m == 0 {
            Model::Oscillator
        } else {
            Model::OscillatorExtended
        },
        n,
        energy: 0.5 * l * q * q + (4.0 * k + 3.0) / 2.0,
    })
}

/// Energy of Ψ_n obtained by mapping the Scarf eigenvalue through the
/// parameter map. Coincides with [`extended_energy`] for |λ| ≤ 2.
pub fn solution_energy(p: &OscillatorParams, n: usize) -> Result<f64> {
    let eps = scarf_energy(&p.scarf_params()?, n)?.energy;
    Ok(energy_map(eps, p.lambda()))
}

/// Unnormalized extended solution
/// `x (2 - 2|λ|x²)^{1/4 + a/2} 𝒫_n(t) / P_m^{(-a-1,b-1)}(t)`, t = 2|λ|x² - 1.
pub fn extended_wavefunction(p: &OscillatorParams, n: usize, x: f64) -> Result<f64> {
    if n < p.m {
        return Err(Error::Index { n, m: p.m });
    }
    let l = check_x(p.lambda(), x, false)?;
    if x == 0.0 || x == p.x_max() {
        return Ok(0.0);
    }
    let sp = p.scarf_params()?;
    let t = 2.0 * l * x * x - 1.0;
    let den = denominator(sp.a, sp.b, sp.m, t);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Singular(t));
    }
    let envelope = (2.0 * gap(l, x)).powf(0.25 + 0.5 * sp.a);
    let poly = xm_eval(&XmSpec::new(n, sp.a, sp.b, sp.m)?, t)?;
    Ok(x * envelope / den * poly)
}

/// Conventional solution `(1 - |λ|x²)^{1/4} P^{μ}_{ν}(-√|λ| x)` with
/// `μ = 1/λ + 1/2` and `ν = -2n + 1/λ - 3/2`.
pub fn conventional_wavefunction(lambda: f64, n: usize, x: f64) -> Result<f64> {
    let l = check_x(lambda, x, false)?;
    if x == domain_upper(lambda) {
        return Ok(0.0);
    }
    let mu = 1.0 / lambda + 0.5;
    let nu = -2.0 * n as f64 + 1.0 / lambda - 1.5;
    let y = -(l.sqrt() * x);
    Ok(gap(l, x).powf(0.25) * legendre_p(nu, mu, y)?)
}

/// Weight `μ(x) = (1 - |λ|x²)^{-1/2}`.
pub fn weight(lambda: f64, x: f64) -> Result<f64> {
    let l = check_x(lambda, x, true)?;
    Ok(1.0 / gap(l, x).sqrt())
}

/// Normalization constant of the extended oscillator solutions in the
/// printed |λ|-form.
pub fn osc_norm(p: &OscillatorParams, n: usize) -> Result<f64> {
    if n < p.m {
        return Err(Error::Index { n, m: p.m });
    }
    let l = p.abs_lambda();
    let nf = n as f64;
    let mf = p.m as f64;
    let k = nf - mf;
    let sign_m = if p.m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let cos_npi = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let numer = sign_m
        * 2f64.powf(1.0 / l)
        * PI
        * (2.0 * nf + 1.0)
        * l
        * (2.0 + l * (2.0 * nf - 4.0 * mf + 1.0))
        * gamma(k + 1.0 / l + 0.5)?;
    let denom = cos_npi
        * (1.0 + l * (2.0 * k + 1.0))
        * (2.0 + l * (2.0 * k + 1.0))
        * gamma(mf - nf + 0.5)?
        * gamma(k + 1.0)?
        * gamma(k + 1.0 / l + 1.0)?;
    if denom == 0.0 {
        return Err(Error::Division(format!(
            "normalization denominator vanishes (lambda = {}, n = {n})",
            p.lambda()
        )));
    }
    Ok(numer / denom)
}

/// [`scarf_norm`] under the parameter map.
pub fn mapped_scarf_norm(p: &OscillatorParams, n: usize) -> Result<f64> {
    scarf_norm(&p.scarf_params()?, n)
}

/// Exponent of |Ψ_n|² μ at the right end of D_λ: `|(λ+2)/λ|/2`.
pub fn density_endpoint_exponent(lambda: f64) -> f64 {
    0.5 * ((lambda + 2.0) / lambda).abs()
}

/// Exponent of Ψ_n at the right end of D_λ: `1/4 + |(λ+2)/λ|/4`.
pub fn psi_endpoint_exponent(lambda: f64) -> f64 {
    0.25 + 0.25 * ((lambda + 2.0) / lambda).abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSample {
    pub x: f64,
    pub n: usize,
    pub psi: f64,
    pub weighted_density: f64,
}

pub fn sample(p: &OscillatorParams, n: usize, x: f64) -> Result<WavefunctionSample> {
    let psi = extended_wavefunction(p, n, x)?;
    let weighted_density = if psi == 0.0 {
        0.0
    } else {
        psi * psi * weight(p.lambda(), x)?
    };
    Ok(WavefunctionSample {
        x,
        n,
        psi,
        weighted_density,
    })
}

fn matches_within(lhs: Real, rhs: Real) -> bool {
    match (lhs, rhs) {
        (Real::Exact(a), Real::Exact(b)) => a == b,
        _ => (lhs.value() - rhs.value()).abs() <= FLOAT_TOLERANCE,
    }
}

/// Regularity of the extended oscillator: endpoint condition
/// |λ| ≠ 2/(2L-1) for L = 1..m, the interval condition on λ, and the
/// mapped Scarf admissibility.
pub fn validate_params(p: &OscillatorParams) -> ValidationReport {
    let lambda = p.lambda;
    let m = p.m;
    let abs = lambda.abs();
    let subject = format!("oscillator lambda={lambda} m={m}");

    let hit = (1..=m as i64).find(|&l| matches_within(abs, Real::exact(2, 2 * l - 1)));
    let endpoint = Check::new(
        "endpoint_regularity",
        hit.is_none(),
        abs.value(),
        match hit {
            Some(l) => format!("|lambda| = 2/(2L-1) for L = {l}"),
            None if m == 0 => "no condition for m = 0".to_string(),
            None => format!("|lambda| = {abs} avoids 2/(2L-1), L = 1..{m}"),
        },
    );

    let negative = lambda.signum() < 0;
    let interior = match m {
        0 => Check::new(
            "interior_regularity",
            true,
            lambda.value(),
            "no condition for m = 0",
        ),
        1 => Check::new(
            "interior_regularity",
            negative,
            lambda.value(),
            format!("lambda = {lambda} must be negative"),
        ),
        _ => {
            let bound = Real::exact(2, 1 - 2 * m as i64);
            let above = match (lambda, bound) {
                (Real::Float(v), _) => v > bound.value() + FLOAT_TOLERANCE,
                _ => lambda.compare(bound) == Ordering::Greater,
            };
            Check::new(
                "interior_regularity",
                negative && above,
                lambda.value(),
                format!("lambda = {lambda} must lie in ({bound}, 0)"),
            )
        }
    };

    let mapped = param_map_exact(lambda)
        .map(|(a, b)| admissibility(a, b, m))
        .ok();
    let blocking = mapped
        .as_ref()
        .map(|r| r.failed().filter(|c| c.name != DEGENERACY_CHECK).count());
    let degenerate = mapped
        .as_ref()
        .and_then(|r| r.check(DEGENERACY_CHECK))
        .filter(|c| !c.pass)
        .cloned();
    let mapped_a = mapped_a_value(lambda);
    let scarf = Check::new(
        "scarf_admissibility",
        blocking == Some(0),
        mapped_a,
        format!("mapped a = {mapped_a}, b = 1/2, m = {m}"),
    );

    let mut report = ValidationReport::new(subject, vec![endpoint, interior, scarf]);
    if let Some(c) = degenerate {
        report.notes.push(format!(
            "{}: the denominator P_m^(-a-1,b-1) has degree below m and the polynomial part of \
             Psi_n has degree below n; the solutions stay regular",
            c.detail
        ));
    }
    report.mapped = mapped.map(Box::new);
    report
}

fn mapped_a_value(lambda: Real) -> f64 {
    param_map_exact(lambda)
        .map(|(a, _)| a.value())
        .unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(p: i64, q: i64, m: usize) -> OscillatorParams {
        OscillatorParams::new(Real::exact(p, q), m).unwrap()
    }

    #[test]
    fn rejects_nonnegative_lambda() {
        assert!(OscillatorParams::from_f64(0.0, 1).is_err());
        assert!(OscillatorParams::from_f64(0.3, 1).is_err());
        assert!(OscillatorParams::from_f64(f64::NAN, 0).is_err());
    }

    #[test]
    fn coordinate_map_landmarks() {
        let lambda = -0.2;
        assert_eq!(map_u(0.0, lambda).unwrap(), -FRAC_PI_2);
        assert_eq!(map_u(domain_upper(lambda), lambda).unwrap(), FRAC_PI_2);
        assert!(map_u(1.0 / (0.4f64).sqrt(), lambda).unwrap().abs() < 1e-15);
        assert!(map_u(-1e-9, lambda).is_err());
        assert!(map_u(3.0, lambda).is_err());
        assert!(map_x(2.0, lambda).is_err());
    }

    #[test]
    fn parameter_map_examples() {
        assert_eq!(param_map(-0.05).unwrap(), (19.5, 0.5));
        assert_relative_eq!(param_map(-0.1).unwrap().0, 9.5, max_relative = 1e-15);
        assert_eq!(param_map(-2.0).unwrap().0, 0.0);
        let (a, b) = param_map_exact(Real::exact(-1, 20)).unwrap();
        assert_eq!(a, Real::exact(39, 2));
        assert_eq!(b, Real::exact(1, 2));
    }

    #[test]
    fn energy_map_round_trip() {
        for &(eps, lambda) in &[(42.25, -0.1), (3.0, -5.0), (0.7, -0.5)] {
            let e = energy_map(eps, lambda);
            assert_relative_eq!(energy_map_inverse(e, lambda), eps, max_relative = 1e-14);
        }
    }

    #[test]
    fn conventional_potential_examples() {
        assert_eq!(conventional_potential(-0.05, 0.0).unwrap(), 0.0);
        assert_relative_eq!(
            conventional_potential(-0.05, 1.0).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert_eq!(conventional_potential(-1.0, 0.5).unwrap(), 0.0);
        assert!(conventional_potential(-1.0, 1.0).is_err());
    }

    #[test]
    fn case_one_potential_at_origin() {
        let p = params(-1, 20, 1);
        assert_relative_eq!(
            extended_potential(&p, 0.0).unwrap(),
            -7.6,
            max_relative = 1e-13
        );
    }

    #[test]
    fn case_two_potential_at_origin() {
        let p = params(-5, 1, 1);
        assert_relative_eq!(
            extended_potential(&p, 0.0).unwrap(),
            8.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn energies() {
        let p = params(-1, 5, 3);
        let e: Vec<f64> = (3..6)
            .map(|n| extended_energy(&p, n).unwrap().energy)
            .collect();
        assert_relative_eq!(e[0], 1.6, max_relative = 1e-14);
        assert_relative_eq!(e[1], 4.4, max_relative = 1e-14);
        assert_relative_eq!(e[2], 8.0, max_relative = 1e-14);
        assert!(extended_energy(&p, 2).is_err());
        assert_relative_eq!(
            conventional_energy(-0.1, 0).energy,
            1.55,
            max_relative = 1e-14
        );
        for n in 3..6 {
            assert_relative_eq!(
                solution_energy(&p, n).unwrap(),
                extended_energy(&p, n).unwrap().energy,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn wavefunction_vanishes_at_ends() {
        let p = params(-1, 10, 1);
        assert_eq!(extended_wavefunction(&p, 1, 0.0).unwrap(), 0.0);
        assert_eq!(extended_wavefunction(&p, 1, p.x_max()).unwrap(), 0.0);
        assert!(extended_wavefunction(&p, 0, 1.0).is_err());
    }

    #[test]
    fn norm_is_mapped_scarf_norm_over_shift() {
        let p = params(-1, 10, 1);
        let a = p.scarf_params().unwrap().a;
        for n in 1..6 {
            let k = (n - 1) as f64;
            assert_relative_eq!(
                osc_norm(&p, n).unwrap(),
                mapped_scarf_norm(&p, n).unwrap() / (k + a + 1.0),
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn regularity_table() {
        assert!(validate_params(&params(-5, 1, 1)).valid);
        assert!(validate_params(&params(-13, 20, 2)).valid);
        assert!(!validate_params(&params(-1, 1, 2)).valid);
        let r = validate_params(&params(-2, 1, 1));
        assert!(!r.valid);
        assert!(!r.check("endpoint_regularity").unwrap().pass);
        let edge = validate_params(&params(-2, 3, 2));
        assert!(!edge.check("interior_regularity").unwrap().pass);
        let tower = validate_params(&params(-1, 5, 3));
        assert!(tower.valid);
        assert_eq!(tower.notes.len(), 1);
        assert!(!tower.mapped.as_ref().unwrap().valid);
        let float_edge = validate_params(&OscillatorParams::from_f64(-2.0 / 3.0, 2).unwrap());
        assert!(!float_edge.valid);
    }
}
