//! X_m exceptional Jacobi polynomials 𝒫_n^{(a,b,m)}.
//!
//! The polynomials are evaluated pointwise from the two-term combination of
//! classical Jacobi polynomials
//!
//! ```text
//! 𝒫_n(t) = (-1)^m [ (a+b+n-m+1)/(2(a+n-m+1)) (t-1) P_m^{(-a-1,b-1)}(t) P_{n-m-1}^{(a+2,b)}(t)
//!                 + (a-m+1)/(a+n-m+1)          P_m^{(-a-2,b)}(t)   P_{n-m}^{(a+1,b-1)}(t) ]
//! ```
//!
//! with P_{-1} ≡ 0, so the first term drops out at n = m.

use crate::error::{Error, Result};
use crate::grid::{count_sign_changes, linspace};
use crate::specfun::jacobi_p;

/// Relative tolerance of the divided-difference degree check.
pub const DEGREE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XmSpec {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub m: usize,
}

impl XmSpec {
    pub fn new(n: usize, a: f64, b: f64, m: usize) -> Result<Self> {
        if n < m {
            return Err(Error::Index { n, m });
        }
        Ok(XmSpec { n, a, b, m })
    }
}

/// The denominator polynomial P_m^{(-a-1,b-1)}(t) shared by the solutions
/// and the rational potential term.
pub fn denominator(a: f64, b: f64, m: usize, t: f64) -> f64 {
    jacobi_p(m as i64, -a - 1.0, b - 1.0, t)
}

pub fn xm_eval(spec: &XmSpec, t: f64) -> Result<f64> {
    let XmSpec { n, a, b, m } = *spec;
    if n < m {
        return Err(Error::Index { n, m });
    }
    let k = (n - m) as f64;
    let den = a + k + 1.0;
    if den == 0.0 {
        return Err(Error::Division(format!(
            "a + n - m + 1 = 0 (a = {a}, n = {n}, m = {m})"
        )));
    }
    let mi = m as i64;
    let ki = (n - m) as i64;
    let first = if n == m {
        0.0
    } else {
        (a + b + k + 1.0) / (2.0 * den)
            * (t - 1.0)
            * jacobi_p(mi, -a - 1.0, b - 1.0, t)
            * jacobi_p(ki - 1, a + 2.0, b, t)
    };
    let second = (a - m as f64 + 1.0) / den
        * jacobi_p(mi, -a - 2.0, b, t)
        * jacobi_p(ki, a + 1.0, b - 1.0, t);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * (first + second))
}

/// Divided differences of `xm_eval` on n+2 Chebyshev points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeProbe {
    /// n-th divided difference (the leading coefficient for degree n).
    pub leading: f64,
    /// (n+1)-th divided difference, zero for a degree-n polynomial.
    pub excess: f64,
    /// max |𝒫_n| over the nodes.
    pub scale: f64,
}

impl DegreeProbe {
    pub fn confirms_degree(&self) -> bool {
        let tol = DEGREE_TOLERANCE * self.scale;
        self.leading.abs() > tol && self.excess.abs() <= tol
    }
}

fn divided_differences(nodes: &[f64], values: &[f64]) -> Vec<f64> {
    // Returns f[x0], f[x0,x1], ..., f[x0..x_{k}].
    let mut table = values.to_vec();
    let mut out = vec![table[0]];
    for order in 1..nodes.len() {
        for i in 0..nodes.len() - order {
            table[i] = (table[i + 1] - table[i]) / (nodes[i + order] - nodes[i]);
        }
        out.push(table[0]);
    }
    out
}

pub fn degree_probe(spec: &XmSpec) -> Result<DegreeProbe> {
    let count = spec.n + 2;
    let mut nodes: Vec<f64> = (0..count)
        .map(|j| (std::f64::consts::PI * (2 * j + 1) as f64 / (2 * count) as f64).cos())
        .collect();
    nodes.reverse();
    let values = nodes
        .iter()
        .map(|&t| xm_eval(spec, t))
        .collect::<Result<Vec<_>>>()?;
    let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let dd = divided_differences(&nodes, &values);
    Ok(DegreeProbe {
        leading: dd[spec.n],
        excess: dd[spec.n + 1],
        scale,
    })
}

/// Degree of 𝒫_n, which is n; confirmed numerically by [`degree_probe`].
pub fn xm_degree(spec: &XmSpec) -> Result<usize> {
    let probe = degree_probe(spec)?;
    if probe.confirms_degree() {
        Ok(spec.n)
    } else {
        Err(Error::Degree {
            n: spec.n,
            detail: format!(
                "leading divided difference {:e}, excess {:e}, scale {:e}",
                probe.leading, probe.excess, probe.scale
            ),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenominatorScan {
    pub sign_changes: usize,
    pub min_abs: f64,
}

impl DenominatorScan {
    pub fn zero_free(&self) -> bool {
        self.sign_changes == 0 && self.min_abs > 0.0
    }
}

/// Scans P_m^{(-a-1,b-1)} on `points` equally spaced t in [-1, 1].
pub fn scan_denominator(a: f64, b: f64, m: usize, points: usize) -> DenominatorScan {
    let values: Vec<f64> = linspace(-1.0, 1.0, points)
        .into_iter()
        .map(|t| denominator(a, b, m, t))
        .collect();
    DenominatorScan {
        sign_changes: count_sign_changes(values.iter().copied()),
        min_abs: values.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs())),
    }
}
