use std::process::{Command, Output};

use serde_json::Value;

fn xmosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xmosc"))
        .args(args)
        .output()
        .expect("spawn xmosc")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

/// Parsed CSV: header and numeric rows.
fn csv(out: &Output) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = stdout(out);
    let mut lines = text.lines();
    let header = lines
        .next()
        .expect("header")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|c| c.parse::<f64>().expect("numeric cell"))
                .collect()
        })
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let i = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i]).collect()
}

fn sign_changes(v: &[f64]) -> usize {
    v.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
}

fn cv(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    var.sqrt() / mean.abs()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&xmosc(&["validate", "--lambda", "-5", "--m", "1"])), 0);
    assert_eq!(code(&xmosc(&["validate", "--lambda", "-1", "--m", "2"])), 2);
    assert_eq!(
        code(&xmosc(&["validate", "--lambda", "-2/3", "--m", "2"])),
        2
    );
    assert_eq!(
        code(&xmosc(&["validate", "--lambda", "-13/20", "--m", "2"])),
        0
    );
    assert_eq!(code(&xmosc(&["validate", "--lambda", "-2", "--m", "1"])), 2);
}

#[test]
fn validate_json_lists_every_check() {
    let out = xmosc(&[
        "validate", "--lambda", "-1/5", "--m", "3", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["params"]["lambda"], "-1/5");
    let checks = v["report"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks
        .iter()
        .all(|c| c["value"].is_number() && c["pass"] == Value::Bool(true)));
    assert_eq!(v["report"]["notes"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&xmosc(&[])), 1);
    assert_eq!(code(&xmosc(&["spectrum", "--lambda"])), 1);
    assert_eq!(code(&xmosc(&["spectrum", "--lambda", "abc"])), 1);
    assert_eq!(
        code(&xmosc(&["spectrum", "--lambda", "-1/5", "--n", "5..3"])),
        1
    );
    assert_eq!(code(&xmosc(&["gram", "--lambda", "-1/5", "--tol", "0"])), 1);
    assert_eq!(
        code(&xmosc(&["potential", "--lambda", "-1/5", "--points", "1"])),
        1
    );
    assert_eq!(code(&xmosc(&["frobnicate"])), 1);
    assert_eq!(code(&xmosc(&["--help"])), 0);
    assert_eq!(code(&xmosc(&["--version"])), 0);
}

#[test]
fn invalid_parameters_exit_two() {
    assert_eq!(
        code(&xmosc(&["potential", "--lambda", "-1", "--m", "2"])),
        2
    );
    assert_eq!(code(&xmosc(&["spectrum", "--lambda", "0.5"])), 2);
    assert_eq!(
        code(&xmosc(&[
            "gram", "--lambda", "-2/3", "--m", "2", "--n", "2..4"
        ])),
        2
    );
    assert_eq!(
        code(&xmosc(&[
            "wavefunction",
            "--lambda",
            "-1/10",
            "--m",
            "1",
            "--n",
            "0"
        ])),
        2
    );
}

#[test]
fn potential_case_values_at_origin() {
    let out = xmosc(&[
        "potential",
        "--lambda",
        "-1/20",
        "--m",
        "1",
        "--x-range",
        "0,1",
        "--points",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let (h, rows) = csv(&out);
    assert_eq!(h, ["x", "V_conventional", "V_extended"]);
    assert!((rows[0][2] + 7.6).abs() < 1e-12);
    let out = xmosc(&[
        "potential",
        "--lambda",
        "-5",
        "--m",
        "1",
        "--x-range",
        "0,0.1",
        "--points",
        "2",
    ]);
    let (_, rows) = csv(&out);
    assert!((rows[0][2] - 8.0).abs() < 1e-12);
}

#[test]
fn potential_default_grid_and_m0() {
    let out = xmosc(&["potential", "--lambda", "-1/20", "--m", "0"]);
    assert_eq!(code(&out), 0);
    let (h, rows) = csv(&out);
    assert_eq!(rows.len(), 400);
    let top = 20f64.sqrt();
    assert!((rows[0][0] - 1e-3 * top).abs() < 1e-15);
    assert!((rows[399][0] - 0.999 * top).abs() < 1e-12);
    let conv = column(&h, &rows, "V_conventional");
    let ext = column(&h, &rows, "V_extended");
    for (c, e) in conv.iter().zip(&ext) {
        assert!((c - e).abs() <= 1e-12 * c.abs().max(1.0));
    }
}

#[test]
fn spectrum_examples() {
    let (_, rows) = csv(&xmosc(&[
        "spectrum", "--lambda", "-1/5", "--m", "3", "--n", "3..5",
    ]));
    for (row, want) in rows.iter().zip([1.6, 4.4, 8.0]) {
        assert!((row[1] - want).abs() < 1e-12);
    }
    let (_, rows) = csv(&xmosc(&[
        "spectrum", "--lambda", "-1/10", "--m", "0", "--n", "0",
    ]));
    assert!((rows[0][1] - 1.55).abs() < 1e-12);
    let out = xmosc(&[
        "spectrum",
        "--lambda",
        "-1/5",
        "--m",
        "3",
        "--n",
        "3..5",
        "--compare-fd",
    ]);
    assert_eq!(code(&out), 0);
    let (h, rows) = csv(&out);
    assert!(column(&h, &rows, "relative_deviation")
        .iter()
        .all(|&d| d < 1e-3));
}

#[test]
fn wavefunction_matches_listed_solution() {
    let out = xmosc(&[
        "wavefunction",
        "--lambda",
        "-1/10",
        "--m",
        "1",
        "--n",
        "1",
        "--points",
        "50",
    ]);
    assert_eq!(code(&out), 0);
    let (h, rows) = csv(&out);
    assert_eq!(h, ["x", "psi_unnormalized", "density"]);
    let ratios: Vec<f64> = rows
        .iter()
        .map(|r| {
            let x = r[0];
            let listed = x * (x * x - 10.0).powi(5) * (3.0 * x * x + 5.0) / (9.0 * x * x + 5.0);
            r[1] / listed
        })
        .collect();
    assert!(cv(&ratios) < 1e-8, "{}", cv(&ratios));
}

#[test]
fn density_is_normalized() {
    let out = xmosc(&[
        "wavefunction",
        "--lambda",
        "-1/10",
        "--m",
        "1",
        "--n",
        "1",
        "--points",
        "4001",
        "--x-range",
        "0,3.16227766",
    ]);
    let (h, rows) = csv(&out);
    let x = column(&h, &rows, "x");
    let d = column(&h, &rows, "density");
    // Simpson's rule; the density vanishes to high order at both ends.
    let step = x[1] - x[0];
    let mut sum = d[0] + d[d.len() - 1];
    for (i, v) in d.iter().enumerate().take(d.len() - 1).skip(1) {
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * v;
    }
    let integral = sum * step / 3.0;
    assert!((integral - 1.0).abs() < 1e-8, "{integral}");
}

#[test]
fn tower_densities_have_increasing_nodes() {
    let out = xmosc(&[
        "wavefunction",
        "--lambda",
        "-1/5",
        "--m",
        "3",
        "--n",
        "3..5",
    ]);
    let (h, rows) = csv(&out);
    for (n, nodes) in [(3, 0), (4, 1), (5, 2)] {
        let psi = column(&h, &rows, &format!("psi_unnormalized_n{n}"));
        assert_eq!(sign_changes(&psi), nodes, "n={n}");
    }
}

#[test]
fn conventional_route_requires_m0() {
    assert_eq!(
        code(&xmosc(&[
            "wavefunction",
            "--lambda",
            "-1/5",
            "--m",
            "3",
            "--conventional"
        ])),
        1
    );
    let out = xmosc(&[
        "wavefunction",
        "--lambda",
        "-1/5",
        "--n",
        "0..2",
        "--conventional",
    ]);
    assert_eq!(code(&out), 0);
    let (h, rows) = csv(&out);
    for n in 0..=2 {
        assert_eq!(
            sign_changes(&column(&h, &rows, &format!("psi_unnormalized_n{n}"))),
            n
        );
    }
}

#[test]
fn verification_commands() {
    let out = xmosc(&[
        "gram", "--lambda", "-1/10", "--m", "1", "--n", "1..5", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["kind"], "gram");
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["report"]["values"].as_array().unwrap().len(), 5);

    let out = xmosc(&["residual", "--lambda", "-5", "--m", "1", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let (h, _) = csv(&out);
    assert_eq!(h, ["x", "relative_residual"]);

    let out = xmosc(&[
        "eig-compare",
        "--lambda",
        "-1/5",
        "--m",
        "3",
        "--count",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["kind"], "eigencompare");
}

#[test]
fn verification_failure_exits_three() {
    // The printed energies do not describe the spectrum beyond |λ| = 2.
    let out = xmosc(&["eig-compare", "--lambda", "-5", "--m", "1", "--count", "2"]);
    assert_eq!(code(&out), 3);
    let out = xmosc(&[
        "gram", "--lambda", "-1/10", "--m", "1", "--n", "1..5", "--order", "8",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn identical_flags_give_identical_bytes() {
    for args in [
        &["potential", "--lambda", "-13/20", "--m", "2"][..],
        &[
            "wavefunction",
            "--lambda",
            "-1/5",
            "--m",
            "3",
            "--n",
            "3..5",
            "--format",
            "json",
        ][..],
        &["gram", "--lambda", "-1/5", "--m", "3", "--n", "3..6"][..],
        &[
            "eig-compare",
            "--lambda",
            "-1/10",
            "--m",
            "1",
            "--count",
            "4",
            "--format",
            "json",
        ][..],
    ] {
        let a = xmosc(args);
        let b = xmosc(args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn csv_formatting() {
    let text = stdout(&xmosc(&[
        "spectrum", "--lambda", "-1/5", "--m", "3", "--n", "3..5",
    ]));
    assert_eq!(
        text,
        "n,energy\n3,1.6000000000000001\n4,4.4000000000000004\n5,8.0000000000000000\n"
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.json");
    let out = xmosc(&[
        "spectrum",
        "--lambda",
        "-1/10",
        "--n",
        "0",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["columns"], serde_json::json!(["n", "energy"]));
    assert_eq!(v["rows"][0][1], 1.55);
}

#[test]
fn repro_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("artifacts");
    let out = xmosc(&["repro", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for name in [
        "case1_potential.csv",
        "case2_potential.csv",
        "case3_potential.csv",
        "ground_densities.csv",
        "tower_extended.csv",
        "tower_conventional.csv",
        "spectra.csv",
        "verification.json",
    ] {
        assert!(target.join(name).is_file(), "{name}");
    }
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(target.join("verification.json")).unwrap())
            .unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    let ground = std::fs::read_to_string(target.join("ground_densities.csv")).unwrap();
    let header = ground.lines().next().unwrap();
    assert_eq!(
        header,
        "x,conventional_n0,extended_m0_n0,extended_m1_n1,extended_m3_n3,extended_m5_n5"
    );

    let again = dir.path().join("again");
    xmosc(&["repro", "--out", again.to_str().unwrap()]);
    for name in ["spectra.csv", "verification.json", "tower_extended.csv"] {
        assert_eq!(
            std::fs::read(target.join(name)).unwrap(),
            std::fs::read(again.join(name)).unwrap()
        );
    }
}
