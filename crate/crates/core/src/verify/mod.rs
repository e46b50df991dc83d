//! Numerical verification: weighted quadrature, Gram matrices, ODE
//! residuals and an independent finite-difference eigensolver.

pub mod quadrature;
pub mod tridiag;

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{coefficient_of_variation, linspace};
use crate::oscillator::{
    energy_map, extended_energy, extended_potential, extended_wavefunction, map_x, osc_norm,
    solution_energy, validate_params, OscillatorParams,
};
use crate::scarf::{effective_potential, scarf_energy, ScarfParams};

pub use quadrature::{gauss_legendre, QuadratureRule};
pub use tridiag::SymTridiagonal;

pub const DEFAULT_ORDER: usize = 128;
pub const DEFAULT_GRID: usize = 2000;
pub const MIN_GRID: usize = 200;

pub const RESIDUAL_TOLERANCE: f64 = 1e-7;
pub const CONTROL_THRESHOLD: f64 = 1e-3;
/// Residual grids cover `[δ, 1-δ]·|λ|^{-1/2}`; the right end of Ψ_n has a
/// fractional power, so the fourth-order stencil needs this clearance.
pub const RESIDUAL_MARGIN: f64 = 0.02;
/// Finite-difference step of the residual derivatives, times |λ|^{-1/2}.
pub const RESIDUAL_STEP: f64 = 1e-4;

pub const EIG_TOLERANCE: f64 = 1e-3;
/// C in the per-level limit `max(1e-3, C h²)`.
pub const EIG_H2_COEFFICIENT: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Gram,
    Residual,
    #[serde(rename = "eigencompare")]
    EigenCompare,
    #[serde(rename = "normcheck")]
    NormCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
}

/// A reported quantity and the bound it is held to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub label: String,
    pub value: f64,
    pub limit: f64,
    pub relation: Relation,
}

impl Deviation {
    pub fn at_most(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Deviation {
            label: label.into(),
            value,
            limit,
            relation: Relation::AtMost,
        }
    }

    pub fn at_least(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Deviation {
            label: label.into(),
            value,
            limit,
            relation: Relation::AtLeast,
        }
    }

    pub fn satisfied(&self) -> bool {
        match self.relation {
            Relation::AtMost => self.value <= self.limit,
            Relation::AtLeast => self.value >= self.limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ReportValues {
    Matrix(Vec<Vec<f64>>),
    List(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub kind: ReportKind,
    pub metadata: BTreeMap<String, f64>,
    /// Column names of `values`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub columns: Vec<String>,
    pub values: ReportValues,
    pub checks: Vec<Deviation>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(
        kind: ReportKind,
        metadata: BTreeMap<String, f64>,
        columns: Vec<String>,
        values: ReportValues,
        checks: Vec<Deviation>,
        tolerance: f64,
    ) -> Self {
        let pass = checks.iter().all(Deviation::satisfied);
        VerificationReport {
            kind,
            metadata,
            columns,
            values,
            checks,
            tolerance,
            pass,
            notes: Vec::new(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Deviation> {
        self.checks.iter().filter(|d| !d.satisfied())
    }

    pub fn meta(&self, key: &str) -> Option<f64> {
        self.metadata.get(key).copied()
    }
}

fn echo(p: &OscillatorParams) -> BTreeMap<String, f64> {
    let mut meta = BTreeMap::new();
    meta.insert("lambda".to_string(), p.lambda());
    meta.insert("m".to_string(), p.m as f64);
    meta
}

fn require_valid(p: &OscillatorParams) -> Result<()> {
    let report = validate_params(p);
    if report.valid {
        Ok(())
    } else {
        let failed: Vec<&str> = report.failed().map(|c| c.name.as_str()).collect();
        Err(Error::InvalidParams(format!(
            "{}: {}",
            report.subject,
            failed.join(", ")
        )))
    }
}

/// Gauss–Legendre rule on (-π/2, π/2).
pub fn u_rule(order: usize) -> QuadratureRule {
    gauss_legendre(order).rescale(-FRAC_PI_2, FRAC_PI_2)
}

/// `∫_{D_λ} f(x) μ(x) dx`, computed as `(1/(2√|λ|)) ∫ f(x(u)) du`.
pub fn weighted_integral<F>(lambda: f64, order: usize, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let rule = u_rule(order);
    let mut sum = 0.0;
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        sum += w * f(map_x(u, lambda)?)?;
    }
    Ok(sum / (2.0 * lambda.abs().sqrt()))
}

pub fn weighted_inner_product(
    p: &OscillatorParams,
    l: usize,
    n: usize,
    order: usize,
) -> Result<f64> {
    weighted_integral(p.lambda(), order, |x| {
        Ok(extended_wavefunction(p, l, x)? * extended_wavefunction(p, n, x)?)
    })
}

/// Gram matrix of Ψ_{n_lo..=n_hi}. Rows are assembled in `row_order`
/// (default ascending) and in parallel; every entry is an ascending sum
/// over the quadrature nodes, so the result does not depend on either.
pub fn gram_values(
    p: &OscillatorParams,
    n_lo: usize,
    n_hi: usize,
    order: usize,
    row_order: Option<&[usize]>,
) -> Result<Vec<Vec<f64>>> {
    if n_lo < p.m || n_hi < n_lo {
        return Err(Error::Index { n: n_lo, m: p.m });
    }
    let lambda = p.lambda();
    let rule = u_rule(order);
    let xs = rule
        .nodes
        .iter()
        .map(|&u| map_x(u, lambda))
        .collect::<Result<Vec<_>>>()?;
    let size = n_hi - n_lo + 1;
    let table = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| {
            xs.iter()
                .map(|&x| extended_wavefunction(p, n, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let jac = 1.0 / (2.0 * lambda.abs().sqrt());
    let default_order: Vec<usize> = (0..size).collect();
    let order_of_rows = row_order.unwrap_or(&default_order);
    let rows: Vec<(usize, Vec<f64>)> = order_of_rows
        .par_iter()
        .map(|&i| {
            let row = (0..size)
                .map(|j| {
                    let mut sum = 0.0;
                    for ((w, a), b) in rule.weights.iter().zip(&table[i]).zip(&table[j]) {
                        sum += w * (a * b);
                    }
                    sum * jac
                })
                .collect();
            (i, row)
        })
        .collect();
    let mut matrix = vec![Vec::new(); size];
    for (i, row) in rows {
        matrix[i] = row;
    }
    Ok(matrix)
}

pub fn gram_matrix(
    p: &OscillatorParams,
    n_lo: usize,
    n_hi: usize,
    order: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let g = gram_values(p, n_lo, n_hi, order, None)?;
    let size = g.len();
    let mut checks = Vec::new();
    let mut max_off = 0.0f64;
    for i in 0..size {
        for j in i + 1..size {
            let rel = g[i][j].abs() / (g[i][i] * g[j][j]).sqrt();
            max_off = max_off.max(rel);
            checks.push(Deviation::at_most(
                format!("offdiag[{},{}]", n_lo + i, n_lo + j),
                rel,
                tol,
            ));
        }
    }
    let ratios = (0..size)
        .map(|i| Ok(g[i][i] / osc_norm(p, n_lo + i)?))
        .collect::<Result<Vec<_>>>()?;
    let cv = coefficient_of_variation(&ratios);
    checks.push(Deviation::at_most("diag_norm_ratio_cv", cv, tol));

    let mut meta = echo(p);
    meta.insert("n_lo".to_string(), n_lo as f64);
    meta.insert("n_hi".to_string(), n_hi as f64);
    meta.insert("order".to_string(), order as f64);
    meta.insert("max_offdiag".to_string(), max_off);
    meta.insert("diag_norm_ratio_cv".to_string(), cv);
    meta.insert(
        "diag_norm_ratio_mean".to_string(),
        ratios.iter().sum::<f64>() / size as f64,
    );
    let columns = (n_lo..=n_hi).map(|n| format!("n={n}")).collect();
    Ok(VerificationReport::new(
        ReportKind::Gram,
        meta,
        columns,
        ReportValues::Matrix(g),
        checks,
        tol,
    ))
}

/// Ratios `∫Ψ_n²μ / N_n` for n in `n_lo..=n_hi`; pass iff their coefficient
/// of variation is at most `tol`.
pub fn norm_check(
    p: &OscillatorParams,
    n_lo: usize,
    n_hi: usize,
    order: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let ratios = (n_lo..=n_hi)
        .map(|n| Ok(weighted_inner_product(p, n, n, order)? / osc_norm(p, n)?))
        .collect::<Result<Vec<_>>>()?;
    let cv = coefficient_of_variation(&ratios);
    let mut meta = echo(p);
    meta.insert("n_lo".to_string(), n_lo as f64);
    meta.insert("n_hi".to_string(), n_hi as f64);
    meta.insert("order".to_string(), order as f64);
    meta.insert("ratio_cv".to_string(), cv);
    Ok(VerificationReport::new(
        ReportKind::NormCheck,
        meta,
        Vec::new(),
        ReportValues::List(ratios),
        vec![Deviation::at_most("ratio_cv", cv, tol)],
        tol,
    ))
}

/// First and second derivatives by fourth-order central differences.
pub fn central_derivatives<F: Fn(f64) -> Result<f64>>(
    f: F,
    x: f64,
    h: f64,
) -> Result<(f64, f64, f64)> {
    let fm2 = f(x - 2.0 * h)?;
    let fm1 = f(x - h)?;
    let f0 = f(x)?;
    let fp1 = f(x + h)?;
    let fp2 = f(x + 2.0 * h)?;
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    Ok((f0, d1, d2))
}

/// Oscillator-side operator `(1-|λ|x²)f'' - |λ|x f' + (2E - V_ext) f` at x,
/// returned with the sum of the magnitudes of its terms.
pub fn oscillator_operator(
    p: &OscillatorParams,
    energy: f64,
    x: f64,
    f: f64,
    d1: f64,
    d2: f64,
) -> Result<(f64, f64)> {
    let l = p.abs_lambda();
    let v = extended_potential(p, x)?;
    let terms = [
        (1.0 - l * x * x) * d2,
        -l * x * d1,
        2.0 * energy * f,
        -v * f,
    ];
    Ok((terms.iter().sum(), terms.iter().map(|t| t.abs()).sum()))
}

/// Maximum relative residual of Ψ_n in the oscillator equation with energy
/// `energy`, and the per-point values.
fn residual_profile(p: &OscillatorParams, n: usize, energy: f64, xs: &[f64]) -> Result<Vec<f64>> {
    let h = RESIDUAL_STEP * p.x_max();
    xs.par_iter()
        .map(|&x| {
            let (f, d1, d2) = central_derivatives(|y| extended_wavefunction(p, n, y), x, h)?;
            let (res, scale) = oscillator_operator(p, energy, x, f, d1, d2)?;
            Ok(if scale == 0.0 { 0.0 } else { res.abs() / scale })
        })
        .collect()
}

pub fn residual_grid(p: &OscillatorParams, grid_size: usize) -> Vec<f64> {
    let top = p.x_max();
    linspace(
        RESIDUAL_MARGIN * top,
        (1.0 - RESIDUAL_MARGIN) * top,
        grid_size,
    )
}

/// Residual of Ψ_n in the oscillator equation. The energy is the one Ψ_n
/// is constructed with ([`solution_energy`]); the control run uses E + 1.
pub fn ode_residual(
    p: &OscillatorParams,
    n: usize,
    grid_size: usize,
) -> Result<VerificationReport> {
    require_valid(p)?;
    let energy = solution_energy(p, n)?;
    let closed = extended_energy(p, n)?.energy;
    let xs = residual_grid(p, grid_size);
    let values = residual_profile(p, n, energy, &xs)?;
    let control = residual_profile(p, n, energy + 1.0, &xs)?;
    let max = values.iter().fold(0.0f64, |a, &v| a.max(v));
    let control_max = control.iter().fold(0.0f64, |a, &v| a.max(v));

    let mut meta = echo(p);
    meta.insert("n".to_string(), n as f64);
    meta.insert("grid_size".to_string(), grid_size as f64);
    meta.insert("energy".to_string(), energy);
    meta.insert("closed_form_energy".to_string(), closed);
    meta.insert("max_residual".to_string(), max);
    meta.insert("control_residual".to_string(), control_max);
    meta.insert("step".to_string(), RESIDUAL_STEP * p.x_max());
    let checks = vec![
        Deviation::at_most("max_relative_residual", max, RESIDUAL_TOLERANCE),
        Deviation::at_least("control_relative_residual", control_max, CONTROL_THRESHOLD),
    ];
    let rows = xs.iter().zip(&values).map(|(&x, &r)| vec![x, r]).collect();
    let mut report = VerificationReport::new(
        ReportKind::Residual,
        meta,
        vec!["x".to_string(), "relative_residual".to_string()],
        ReportValues::Matrix(rows),
        checks,
        RESIDUAL_TOLERANCE,
    );
    if (energy - closed).abs() > 1e-10 * closed.abs().max(1.0) {
        report.notes.push(format!(
            "closed-form energy {closed} differs from the energy {energy} of the constructed solution"
        ));
    }
    Ok(report)
}

/// Lowest `count` eigenvalues of `-Φ'' + (V_scarf + r)Φ = εΦ` with
/// Dirichlet ends, on `grid_points` interior nodes of (-π/2, π/2).
pub fn fd_eigensolve(sp: &ScarfParams, grid_points: usize, count: usize) -> Result<Vec<f64>> {
    if grid_points < MIN_GRID {
        return Err(Error::InvalidParams(format!(
            "eigensolver grid must have at least {MIN_GRID} points, got {grid_points}"
        )));
    }
    let h = PI / (grid_points + 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let diag = (1..=grid_points)
        .map(|j| Ok(2.0 * inv_h2 + effective_potential(sp, -FRAC_PI_2 + j as f64 * h)?))
        .collect::<Result<Vec<_>>>()?;
    SymTridiagonal::new(diag, vec![-inv_h2; grid_points - 1]).lowest(count)
}

/// Observed convergence order of the eigenvalue errors between a coarse
/// and a fine grid, one entry per level n = m..m+count-1.
pub fn convergence_order(
    sp: &ScarfParams,
    count: usize,
    coarse: usize,
    fine: usize,
) -> Result<Vec<f64>> {
    let ec = fd_eigensolve(sp, coarse, count)?;
    let ef = fd_eigensolve(sp, fine, count)?;
    let hc = PI / (coarse + 1) as f64;
    let hf = PI / (fine + 1) as f64;
    (0..count)
        .map(|k| {
            let exact = scarf_energy(sp, sp.m + k)?.energy;
            let (dc, df) = ((ec[k] - exact).abs(), (ef[k] - exact).abs());
            Ok((dc / df).ln() / (hc / hf).ln())
        })
        .collect()
}

/// Finite-difference spectrum mapped to oscillator energies and compared
/// with the closed form, level by level.
pub fn eig_compare(
    p: &OscillatorParams,
    count: usize,
    grid_points: usize,
) -> Result<VerificationReport> {
    require_valid(p)?;
    let sp = p.scarf_params()?;
    let eps = fd_eigensolve(&sp, grid_points, count)?;
    let h = PI / (grid_points + 1) as f64;
    let limit = EIG_TOLERANCE.max(EIG_H2_COEFFICIENT * h * h);
    let mut rows = Vec::with_capacity(count);
    let mut checks = Vec::with_capacity(count);
    for (k, &e) in eps.iter().enumerate() {
        let n = p.m + k;
        let fd = energy_map(e, p.lambda());
        let closed = extended_energy(p, n)?.energy;
        let dev = (fd - closed).abs() / closed.abs();
        rows.push(vec![n as f64, closed, fd, dev]);
        checks.push(Deviation::at_most(format!("E_{n}"), dev, limit));
    }
    let mut meta = echo(p);
    meta.insert("count".to_string(), count as f64);
    meta.insert("grid_points".to_string(), grid_points as f64);
    meta.insert("h".to_string(), h);
    meta.insert("limit".to_string(), limit);
    Ok(VerificationReport::new(
        ReportKind::EigenCompare,
        meta,
        [
            "n",
            "closed_form",
            "finite_difference",
            "relative_deviation",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        ReportValues::Matrix(rows),
        checks,
        limit,
    ))
}
