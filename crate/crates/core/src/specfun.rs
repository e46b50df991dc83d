//! Gamma function, generalized binomials, classical Jacobi polynomials for
//! arbitrary real parameters, the Gauss hypergeometric series and associated
//! Legendre functions of the first kind.

use std::f64::consts::PI;

use crate::dd::Dd;
use crate::error::{domain, Error, Result};

/// Distance to a nonpositive integer below which the gamma function is
/// treated as singular.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Hard cap on the number of hypergeometric series terms.
pub const HYP2F1_MAX_TERMS: usize = 100_000;

const HYP2F1_REL_TOL: f64 = 1e-16;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (x / 2.0).round();
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    if r == 0.0 {
        0.0
    } else {
        (PI * r).sin()
    }
}

fn near_nonpositive_integer(x: f64, tol: f64) -> bool {
    x <= tol && (x - x.round()).abs() < tol
}

/// Γ(x) by the Lanczos approximation, with the reflection formula for
/// `x < 1/2` and exact products for small positive integers.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("gamma argument", x, "finite reals"));
    }
    if near_nonpositive_integer(x, POLE_TOLERANCE) {
        return Err(Error::Pole(x));
    }
    if x == x.round() && (1.0..=21.0).contains(&x) {
        return Ok((2..x as u32).fold(1.0, |acc, k| acc * k as f64));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        return Ok(PI / (s * gamma(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // t^(z+1/2) split in two halves so Γ(171) does not overflow early.
    let half = t.powf((z + 0.5) / 2.0);
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * series)
}

/// p(p-1)...(p-k+1)/k!, accumulated in ascending order.
pub fn gen_binomial(p: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (p - j as f64) / (j as f64 + 1.0);
    }
    acc
}

/// Degree and parameters of a classical Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiSpec {
    pub degree: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiSpec {
    pub fn new(degree: usize, alpha: f64, beta: f64) -> Self {
        JacobiSpec {
            degree,
            alpha,
            beta,
        }
    }
}

/// P_n^{(α,β)}(x) from the finite sum
/// `2^{-n} Σ_k C(n+α, k) C(n+β, n-k) (x-1)^{n-k} (x+1)^k`.
///
/// The sum has no denominators depending on α and β, so it stays valid where
/// the three-term recurrence breaks down (α+β a negative integer). The terms
/// alternate in sign, so they are accumulated in double-double precision.
/// Negative degrees give the zero polynomial.
pub fn jacobi_p(n: i64, alpha: f64, beta: f64, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    if n == 0 {
        return 1.0;
    }
    let nu = n as usize;
    let xm = Dd::from_f64(x) + -1.0;
    let xp = Dd::from_f64(x) + 1.0;
    let pa = Dd::from_f64(alpha) + n as f64;
    let pb = Dd::from_f64(beta) + n as f64;
    let mut sum = Dd::ZERO;
    for k in 0..=nu {
        let term = dd_binomial(pa, k) * dd_binomial(pb, nu - k) * xm.powi(nu - k) * xp.powi(k);
        sum = sum + term;
    }
    sum.to_f64() * 0.5f64.powi(n as i32)
}

fn dd_binomial(p: Dd, k: usize) -> Dd {
    let mut acc = Dd::ONE;
    for j in 0..k {
        acc = (acc * (p + -(j as f64))).div_f64(j as f64 + 1.0);
    }
    acc
}

pub fn jacobi_eval(spec: &JacobiSpec, x: f64) -> f64 {
    jacobi_p(spec.degree as i64, spec.alpha, spec.beta, x)
}

/// d/dx P_n^{(α,β)} = (n+α+β+1)/2 · P_{n-1}^{(α+1,β+1)}.
pub fn jacobi_derivative(spec: &JacobiSpec, x: f64) -> f64 {
    if spec.degree == 0 {
        return 0.0;
    }
    let n = spec.degree as f64;
    0.5 * (n + spec.alpha + spec.beta + 1.0)
        * jacobi_p(spec.degree as i64 - 1, spec.alpha + 1.0, spec.beta + 1.0, x)
}

fn terminating_sum(a: f64, b: f64, c: f64, z: f64, terms: usize) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..terms {
        let kf = k as f64;
        let denom = (c + kf) * (kf + 1.0);
        if denom == 0.0 || (c + kf).abs() <= POLE_TOLERANCE {
            return Err(Error::UnsupportedParameter(format!(
                "c = {c} hits a pole before the series terminates"
            )));
        }
        term *= (a + kf) * (b + kf) / denom * z;
        sum += term;
    }
    Ok(sum)
}

fn nonpositive_integer_order(v: f64) -> Option<usize> {
    near_nonpositive_integer(v, 1e-10).then(|| (-v.round()) as usize)
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for |z| < 1.
///
/// Terminating series are summed exactly. When c-a or c-b is a nonpositive
/// integer, Euler's transformation
/// `₂F₁(a,b;c;z) = (1-z)^{c-a-b} ₂F₁(c-a,c-b;c;z)` turns the series into a
/// finite sum. Otherwise the series is summed in ascending order until a
/// term falls below 1e-16 of the partial sum.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z.is_nan() || z.abs() >= 1.0 {
        return Err(domain("hyp2f1 argument z", z, "|z| < 1"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if let Some(order) = nonpositive_integer_order(a).or_else(|| nonpositive_integer_order(b)) {
        return terminating_sum(a, b, c, z, order);
    }
    if near_nonpositive_integer(c, POLE_TOLERANCE) {
        return Err(Error::UnsupportedParameter(format!(
            "c = {c} is a nonpositive integer and the series does not terminate"
        )));
    }
    let euler = nonpositive_integer_order(c - a).or_else(|| nonpositive_integer_order(c - b));
    if let Some(order) = euler {
        let prefactor = (1.0 - z).powf(c - a - b);
        return Ok(prefactor * terminating_sum(c - a, c - b, c, z, order)?);
    }

    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..HYP2F1_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.abs() <= HYP2F1_REL_TOL * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        terms: HYP2F1_MAX_TERMS,
        z,
    })
}

/// Associated Legendre function of the first kind on the cut (-1, 1):
/// `P_ν^μ(x) = ((1+x)/(1-x))^{μ/2} ₂F₁(-ν, ν+1; 1-μ; (1-x)/2) / Γ(1-μ)`.
pub fn legendre_p(nu: f64, mu: f64, x: f64) -> Result<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(domain("Legendre argument", x, "(-1, 1)"));
    }
    if near_nonpositive_integer(1.0 - mu, POLE_TOLERANCE) {
        return Err(Error::UnsupportedParameter(format!(
            "1 - mu = {} is a nonpositive integer",
            1.0 - mu
        )));
    }
    let g = gamma(1.0 - mu)?;
    let ratio = ((1.0 + x) / (1.0 - x)).powf(0.5 * mu);
    let f = hyp2f1(-nu, nu + 1.0, 1.0 - mu, 0.5 * (1.0 - x))?;
    Ok(ratio * f / g)
}
