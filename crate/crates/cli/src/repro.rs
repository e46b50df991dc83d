//! The worked examples, density tables and verification reports as files.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use xm_oscillator::oscillator::{conventional_wavefunction, extended_wavefunction};
use xm_oscillator::verify::{eig_compare, gram_matrix, ode_residual, ReportValues};
use xm_oscillator::{OscillatorParams, Real};

use crate::args::GridArgs;
use crate::commands::{density_table, potential_table, require_valid, x_grid};
use crate::output::{Cell, Table};
use crate::Failure;

struct Set {
    name: &'static str,
    lambda: (i64, i64),
    m: usize,
    levels: usize,
}

const SETS: [Set; 7] = [
    Set {
        name: "case1",
        lambda: (-1, 20),
        m: 1,
        levels: 3,
    },
    Set {
        name: "case2",
        lambda: (-5, 1),
        m: 1,
        levels: 3,
    },
    Set {
        name: "case3",
        lambda: (-13, 20),
        m: 2,
        levels: 3,
    },
    Set {
        name: "ground_m0",
        lambda: (-1, 10),
        m: 0,
        levels: 1,
    },
    Set {
        name: "ground_m1",
        lambda: (-1, 10),
        m: 1,
        levels: 1,
    },
    Set {
        name: "ground_m3",
        lambda: (-1, 10),
        m: 3,
        levels: 1,
    },
    Set {
        name: "ground_m5",
        lambda: (-1, 10),
        m: 5,
        levels: 1,
    },
];

const TOWER: Set = Set {
    name: "tower_m3",
    lambda: (-1, 5),
    m: 3,
    levels: 3,
};

fn params(set: &Set) -> Result<OscillatorParams, Failure> {
    let p = OscillatorParams::new(Real::exact(set.lambda.0, set.lambda.1), set.m)?;
    require_valid(&p)?;
    Ok(p)
}

fn write(dir: &Path, name: &str, text: &str, listing: &mut Vec<String>) -> Result<(), Failure> {
    fs::write(dir.join(name), text)?;
    listing.push(name.to_string());
    Ok(())
}

/// Density column of a single-level table.
fn densities(table: &Table) -> Vec<f64> {
    table
        .rows
        .iter()
        .map(|r| match r[2] {
            Cell::Num(v) => v,
            _ => f64::NAN,
        })
        .collect()
}

fn ground_states(points: u64, order: usize) -> Result<Table, Failure> {
    let p0 = params(&SETS[3])?;
    let xs = x_grid(
        &p0,
        &GridArgs {
            points,
            x_range: None,
        },
    );
    let lambda = p0.lambda();
    let mut columns = vec!["x".to_string(), "conventional_n0".to_string()];
    let mut cols = vec![densities(&density_table(
        lambda,
        0..=0,
        &xs,
        order,
        |n, x| conventional_wavefunction(lambda, n, x),
    )?)];
    for set in &SETS[3..] {
        let p = params(set)?;
        columns.push(format!("extended_m{}_n{}", p.m, p.m));
        cols.push(densities(&density_table(
            lambda,
            p.m..=p.m,
            &xs,
            order,
            |n, x| extended_wavefunction(&p, n, x),
        )?));
    }
    let mut table = Table::new(columns);
    for (i, &x) in xs.iter().enumerate() {
        let mut row = vec![Cell::Num(x)];
        row.extend(cols.iter().map(|c| Cell::Num(c[i])));
        table.push(row);
    }
    Ok(table)
}

fn spectra(grid: usize) -> Result<Table, Failure> {
    let mut table = Table::new([
        "set",
        "lambda",
        "m",
        "n",
        "energy",
        "finite_difference",
        "relative_deviation",
    ]);
    for set in SETS.iter().chain(std::iter::once(&TOWER)) {
        let p = params(set)?;
        let report = eig_compare(&p, set.levels, grid)?;
        if let ReportValues::Matrix(rows) = &report.values {
            for row in rows {
                table.push(vec![
                    set.name.into(),
                    p.lambda.to_string().into(),
                    p.m.into(),
                    Cell::Int(row[0] as i64),
                    row[1].into(),
                    row[2].into(),
                    row[3].into(),
                ]);
            }
        }
    }
    Ok(table)
}

fn verification(order: usize, grid: usize, points: usize) -> Result<(Value, bool), Failure> {
    let mut entries = Vec::new();
    let mut pass = true;
    let mut record = |name: String, report: xm_oscillator::VerificationReport| {
        pass &= report.pass;
        entries.push(json!({ "name": name, "report": report }));
    };
    let gram_sets = [(&SETS[4], 1, 5), (&TOWER, 3, 6)];
    for (set, lo, hi) in gram_sets {
        let p = params(set)?;
        record(
            format!("gram/{}/n{lo}..{hi}", set.name),
            gram_matrix(&p, lo, hi, order, 1e-6)?,
        );
    }
    for set in SETS.iter().chain(std::iter::once(&TOWER)) {
        let p = params(set)?;
        for n in p.m..p.m + set.levels.max(3) {
            record(
                format!("residual/{}/n{n}", set.name),
                ode_residual(&p, n, points)?,
            );
        }
    }
    let mut notes = Vec::new();
    for set in SETS.iter().chain(std::iter::once(&TOWER)) {
        let p = params(set)?;
        if p.abs_lambda() > 2.0 {
            notes.push(format!(
                "eigencompare/{} omitted: for |lambda| > 2 the closed-form energies differ from \
                 the spectrum of the constructed solutions (see spectra.csv and the residual reports)",
                set.name
            ));
            continue;
        }
        record(
            format!("eigencompare/{}", set.name),
            eig_compare(&p, set.levels, grid)?,
        );
    }
    let mut params = Map::new();
    params.insert("order".to_string(), json!(order));
    params.insert("grid".to_string(), json!(grid));
    params.insert("points".to_string(), json!(points));
    let doc = json!({ "params": params, "report": entries, "notes": notes, "pass": pass });
    Ok((doc, pass))
}

pub fn run(
    dir: &Path,
    order: usize,
    grid: usize,
    points: u64,
    stdout: &mut dyn Write,
) -> Result<bool, Failure> {
    fs::create_dir_all(dir)?;
    let mut listing = Vec::new();
    for set in &SETS[..3] {
        let p = params(set)?;
        let table = potential_table(
            &p,
            &x_grid(
                &p,
                &GridArgs {
                    points,
                    x_range: None,
                },
            ),
        )?;
        write(
            dir,
            &format!("{}_potential.csv", set.name),
            &table.to_csv(),
            &mut listing,
        )?;
    }
    write(
        dir,
        "ground_densities.csv",
        &ground_states(points, order)?.to_csv(),
        &mut listing,
    )?;

    let p = params(&TOWER)?;
    let xs = x_grid(
        &p,
        &GridArgs {
            points,
            x_range: None,
        },
    );
    let lambda = p.lambda();
    let ext = density_table(lambda, 3..=5, &xs, order, |n, x| {
        extended_wavefunction(&p, n, x)
    })?;
    write(dir, "tower_extended.csv", &ext.to_csv(), &mut listing)?;
    let conv = density_table(lambda, 0..=2, &xs, order, |n, x| {
        conventional_wavefunction(lambda, n, x)
    })?;
    write(dir, "tower_conventional.csv", &conv.to_csv(), &mut listing)?;

    write(dir, "spectra.csv", &spectra(grid)?.to_csv(), &mut listing)?;
    let (doc, pass) = verification(order, grid, points as usize)?;
    let mut text = serde_json::to_string_pretty(&doc).expect("json");
    text.push('\n');
    write(dir, "verification.json", &text, &mut listing)?;

    for name in listing {
        writeln!(stdout, "{}", dir.join(name).display())?;
    }
    Ok(pass)
}
