use std::ops::RangeInclusive;

use serde_json::{json, Map, Value};

use xm_oscillator::grid::linspace;
use xm_oscillator::oscillator::{
    conventional_potential, conventional_wavefunction, extended_energy, extended_potential,
    extended_wavefunction, validate_params, weight,
};
use xm_oscillator::verify::{
    eig_compare, gram_matrix, ode_residual, weighted_integral, ReportValues,
};
use xm_oscillator::{OscillatorParams, ValidationReport, VerificationReport};

use crate::args::{GridArgs, LevelArgs, ModelArgs};
use crate::output::{Cell, Document, Table};
use crate::Failure;

/// Relative distance of the default sampling grid from the ends of D_λ.
pub const GRID_MARGIN: f64 = 1e-3;

/// A finished command: the document to emit, a one-line summary for
/// stderr and the exit code to report after a successful write.
pub struct Outcome {
    pub doc: Document,
    pub summary: Option<String>,
    pub code: i32,
}

impl Outcome {
    fn table(params: Map<String, Value>, table: Table) -> Self {
        Outcome {
            doc: Document {
                params,
                table,
                report: None,
                pass: true,
            },
            summary: None,
            code: 0,
        }
    }
}

pub fn params_of(model: &ModelArgs) -> Result<OscillatorParams, Failure> {
    Ok(OscillatorParams::new(model.lambda, model.m)?)
}

pub fn echo(p: &OscillatorParams) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("lambda".to_string(), json!(p.lambda.to_string()));
    m.insert("lambda_value".to_string(), json!(p.lambda()));
    m.insert("m".to_string(), json!(p.m));
    m
}

pub fn require_valid(p: &OscillatorParams) -> Result<(), Failure> {
    let report = validate_params(p);
    if report.valid {
        return Ok(());
    }
    let failed: Vec<String> = report
        .failed()
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    Err(Failure::Invalid(format!(
        "{} is not regular: {}",
        report.subject,
        failed.join("; ")
    )))
}

pub fn x_grid(p: &OscillatorParams, grid: &GridArgs) -> Vec<f64> {
    let top = p.x_max();
    let (lo, hi) = grid
        .x_range
        .unwrap_or((GRID_MARGIN * top, (1.0 - GRID_MARGIN) * top));
    linspace(lo, hi, grid.points as usize)
}

fn bool_cell(b: bool) -> Cell {
    Cell::Text(if b { "true" } else { "false" }.to_string())
}

fn validation_rows(report: &ValidationReport, prefix: &str, table: &mut Table) {
    for c in &report.checks {
        table.push(vec![
            format!("{prefix}{}", c.name).into(),
            bool_cell(c.pass),
            c.value.into(),
            c.detail.clone().into(),
        ]);
    }
}

pub fn validate(model: &ModelArgs) -> Result<Outcome, Failure> {
    let p = params_of(model)?;
    let report = validate_params(&p);
    let mut table = Table::new(["check", "pass", "value", "detail"]);
    validation_rows(&report, "", &mut table);
    if let Some(mapped) = &report.mapped {
        validation_rows(mapped, "mapped.", &mut table);
    }
    let mut summary = format!(
        "{}: {}",
        report.subject,
        if report.valid { "valid" } else { "invalid" }
    );
    for note in &report.notes {
        summary.push_str(&format!("\nnote: {note}"));
    }
    Ok(Outcome {
        doc: Document {
            params: echo(&p),
            table,
            report: Some(serde_json::to_value(&report).expect("serializable report")),
            pass: report.valid,
        },
        summary: Some(summary),
        code: if report.valid { 0 } else { 2 },
    })
}

pub fn potential_table(p: &OscillatorParams, xs: &[f64]) -> Result<Table, Failure> {
    let mut table = Table::new(["x", "V_conventional", "V_extended"]);
    for &x in xs {
        let conv = conventional_potential(p.lambda(), x)?;
        let ext = extended_potential(p, x)?;
        table.push(vec![x.into(), conv.into(), ext.into()]);
    }
    Ok(table)
}

pub fn potential(model: &ModelArgs, grid: &GridArgs) -> Result<Outcome, Failure> {
    let p = params_of(model)?;
    require_valid(&p)?;
    let table = potential_table(&p, &x_grid(&p, grid))?;
    Ok(Outcome::table(echo(&p), table))
}

fn check_levels(p: &OscillatorParams, ns: &RangeInclusive<usize>) -> Result<(), Failure> {
    if *ns.start() < p.m {
        return Err(Failure::Invalid(format!(
            "levels start at n = {}, below the extension order m = {}",
            ns.start(),
            p.m
        )));
    }
    Ok(())
}

pub fn spectrum(
    model: &ModelArgs,
    levels: &LevelArgs,
    compare_fd: bool,
    grid: usize,
) -> Result<Outcome, Failure> {
    let p = params_of(model)?;
    require_valid(&p)?;
    let ns = levels.resolve(p.m, 1);
    check_levels(&p, &ns)?;
    let mut params = echo(&p);
    params.insert("n_lo".to_string(), json!(ns.start()));
    params.insert("n_hi".to_string(), json!(ns.end()));
    if !compare_fd {
        let mut table = Table::new(["n", "energy"]);
        for n in ns {
            table.push(vec![n.into(), extended_energy(&p, n)?.energy.into()]);
        }
        return Ok(Outcome::table(params, table));
    }
    params.insert("grid".to_string(), json!(grid));
    let report = eig_compare(&p, ns.end() - p.m + 1, grid)?;
    let rows = match &report.values {
        ReportValues::Matrix(rows) => rows,
        ReportValues::List(_) => unreachable!("eigencompare reports carry a matrix"),
    };
    let mut table = Table::new(["n", "energy", "finite_difference", "relative_deviation"]);
    let mut pass = true;
    for n in ns {
        let k = n - p.m;
        let row = &rows[k];
        pass &= report.checks[k].satisfied();
        table.push(vec![n.into(), row[1].into(), row[2].into(), row[3].into()]);
    }
    let limit = report.tolerance;
    Ok(Outcome {
        summary: Some(format!(
            "spectrum: {} (relative limit {limit})",
            if pass { "pass" } else { "FAIL" }
        )),
        code: if pass { 0 } else { 3 },
        doc: Document {
            params,
            table,
            report: None,
            pass,
        },
    })
}

/// Samples of one solution family: `psi(n, x)` and its weighted norm.
pub fn density_table<F>(
    lambda: f64,
    ns: RangeInclusive<usize>,
    xs: &[f64],
    order: usize,
    psi: F,
) -> Result<Table, Failure>
where
    F: Fn(usize, f64) -> xm_oscillator::Result<f64>,
{
    let single = ns.start() == ns.end();
    let mut columns = vec!["x".to_string()];
    let mut blocks = Vec::new();
    for n in ns {
        if single {
            columns.push("psi_unnormalized".to_string());
            columns.push("density".to_string());
        } else {
            columns.push(format!("psi_unnormalized_n{n}"));
            columns.push(format!("density_n{n}"));
        }
        let norm = weighted_integral(lambda, order, |x| psi(n, x).map(|v| v * v))?;
        let col = xs
            .iter()
            .map(|&x| {
                let v = psi(n, x)?;
                let d = if v == 0.0 {
                    0.0
                } else {
                    v * v * weight(lambda, x)? / norm
                };
                Ok((v, d))
            })
            .collect::<xm_oscillator::Result<Vec<_>>>()?;
        blocks.push(col);
    }
    let mut table = Table::new(columns);
    for (i, &x) in xs.iter().enumerate() {
        let mut row = vec![Cell::Num(x)];
        for b in &blocks {
            row.push(b[i].0.into());
            row.push(b[i].1.into());
        }
        table.push(row);
    }
    Ok(table)
}

pub fn wavefunction(
    model: &ModelArgs,
    levels: &LevelArgs,
    grid: &GridArgs,
    conventional: bool,
    order: usize,
) -> Result<Outcome, Failure> {
    let p = params_of(model)?;
    if conventional && p.m != 0 {
        return Err(Failure::Usage(
            "--conventional describes the unextended model; use --m 0".to_string(),
        ));
    }
    require_valid(&p)?;
    let ns = levels.resolve(p.m, 1);
    check_levels(&p, &ns)?;
    let xs = x_grid(&p, grid);
    let lambda = p.lambda();
    let table = if conventional {
        density_table(lambda, ns.clone(), &xs, order, |n, x| {
            conventional_wavefunction(lambda, n, x)
        })?
    } else {
        density_table(lambda, ns.clone(), &xs, order, |n, x| {
            extended_wavefunction(&p, n, x)
        })?
    };
    let mut params = echo(&p);
    params.insert("n_lo".to_string(), json!(ns.start()));
    params.insert("n_hi".to_string(), json!(ns.end()));
    params.insert("order".to_string(), json!(order));
    params.insert(
        "route".to_string(),
        json!(if conventional {
            "conventional"
        } else {
            "extended"
        }),
    );
    Ok(Outcome::table(params, table))
}

fn report_summary(name: &str, report: &VerificationReport) -> String {
    let mut s = if report.pass {
        format!("{name}: pass")
    } else {
        let failed: Vec<String> = report
            .failures()
            .map(|d| format!("{} = {} (limit {})", d.label, d.value, d.limit))
            .collect();
        format!("{name}: FAIL {}", failed.join("; "))
    };
    for note in &report.notes {
        s.push_str(&format!("\nnote: {note}"));
    }
    s
}

fn report_outcome(
    name: &str,
    p: &OscillatorParams,
    report: VerificationReport,
    table: Table,
) -> Outcome {
    Outcome {
        summary: Some(report_summary(name, &report)),
        code: if report.pass { 0 } else { 3 },
        doc: Document {
            params: echo(p),
            table,
            pass: report.pass,
            report: Some(serde_json::to_value(&report).expect("serializable report")),
        },
    }
}

fn matrix(report: &VerificationReport) -> &[Vec<f64>] {
    match &report.values {
        ReportValues::Matrix(rows) => rows,
        ReportValues::List(_) => &[],
    }
}

pub fn gram(
    model: &ModelArgs,
    levels: &LevelArgs,
    order: usize,
    tol: f64,
) -> Result<Outcome, Failure> {
    let p = params_of(model)?;
    require_valid(&p)?;
    let ns = levels.resolve(p.m, 5);
    check_levels(&p, &ns)?;
    let report = gram_matrix(&p, *ns.start(), *ns.end(), order, tol)?;
    let mut columns = vec!["n".to_string()];
    columns.extend(report.columns.iter().cloned());
    let mut table = Table::new(columns);
    for (n, row) in ns.zip(matrix(&report)) {
        let mut cells = vec![Cell::from(n)];
        cells.extend(row.iter().map(|&v| Cell::Num(v)));
        table.push(cells);
    }
    Ok(report_outcome("gram", &p, report, table))
}

pub fn residual(model: &ModelArgs, n: Option<usize>, points: usize) -> Result<Outcome, Failure> {
    let p = params_of(model)?;
    require_valid(&p)?;
    let n = n.unwrap_or(p.m);
    check_levels(&p, &(n..=n))?;
    let report = ode_residual(&p, n, points)?;
    let mut table = Table::new(report.columns.clone());
    for row in matrix(&report) {
        table.push(row.iter().map(|&v| Cell::Num(v)).collect());
    }
    Ok(report_outcome("residual", &p, report, table))
}

pub fn eigen_compare(model: &ModelArgs, count: usize, grid: usize) -> Result<Outcome, Failure> {
    let p = params_of(model)?;
    require_valid(&p)?;
    if count == 0 {
        return Err(Failure::Usage("--count must be at least 1".to_string()));
    }
    let report = eig_compare(&p, count, grid)?;
    let mut table = Table::new(report.columns.clone());
    for row in matrix(&report) {
        let mut cells = vec![Cell::Int(row[0] as i64)];
        cells.extend(row[1..].iter().map(|&v| Cell::Num(v)));
        table.push(cells);
    }
    Ok(report_outcome("eig-compare", &p, report, table))
}
