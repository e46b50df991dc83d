//! One test per acceptance criterion; each prints a PASS/FAIL line.
//! Run with `cargo test -p xm-oscillator-suite --test acceptance -- --nocapture`.

use xm_oscillator::grid::{coefficient_of_variation, linspace};
use xm_oscillator::oscillator::{
    conventional_energy, conventional_potential, conventional_wavefunction, extended_energy,
    extended_potential, extended_wavefunction, validate_params,
};
use xm_oscillator::verify::{
    convergence_order, eig_compare, gram_matrix, ode_residual, DEFAULT_ORDER,
};
use xm_oscillator::{OscillatorParams, Real};
use xm_oscillator_suite::{verdict, WORKED};

fn exact(p: i64, q: i64, m: usize) -> OscillatorParams {
    OscillatorParams::new(Real::exact(p, q), m).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn interior(p: &OscillatorParams, count: usize) -> Vec<f64> {
    let top = p.x_max();
    linspace(0.01 * top, 0.99 * top, count)
}

fn ratio_cv(f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64, xs: &[f64]) -> f64 {
    let ratios: Vec<f64> = xs.iter().map(|&x| f(x) / g(x)).collect();
    coefficient_of_variation(&ratios)
}

#[test]
fn criterion_1_spectral_values() {
    let tower = exact(-1, 5, 3);
    let mut worst = 0.0f64;
    for (n, e) in [(3, 8.0 / 5.0), (4, 22.0 / 5.0), (5, 8.0)] {
        worst = worst.max((extended_energy(&tower, n).unwrap().energy - e).abs());
    }
    for m in [0, 1, 3, 5] {
        let p = exact(-1, 10, m);
        worst = worst.max((extended_energy(&p, m).unwrap().energy - 31.0 / 20.0).abs());
    }
    let pass = worst < 1e-12;
    assert!(verdict(
        1,
        "spectral values",
        pass,
        &format!("max abs error {worst:e}")
    ));
}

fn case1(x: f64) -> f64 {
    let d = 10.0 + 19.0 * x * x;
    (19.0 / 20.0) * x * x / (1.0 - x * x / 20.0) + 80.0 / d - 1560.0 / (d * d)
}

fn case2(x: f64) -> f64 {
    let s = 2.0 * x * x - 1.0;
    -4.0 * x * x / (1.0 - 5.0 * x * x) + 32.0 / (1.0 - 2.0 * x * x) - 24.0 / (s * s)
}

fn case3(x: f64) -> f64 {
    let x2 = x * x;
    let q = 50.0 - 60.0 * x2 + 19.0 * x2 * x2;
    (7.0 / 20.0) * x2 / (1.0 - 13.0 / 20.0 * x2) - 160.0 * (-35.0 + 19.0 * x2) / (19.0 * q)
        + 4000.0 * (-13.0 + 8.0 * x2) / (19.0 * q * q)
}

#[test]
fn criterion_2_extended_potential_closed_forms() {
    type Oracle = fn(f64) -> f64;
    let cases: [(OscillatorParams, Oracle); 3] = [
        (exact(-1, 20, 1), case1),
        (exact(-5, 1, 1), case2),
        (exact(-13, 20, 2), case3),
    ];
    let mut worst = 0.0f64;
    for (p, oracle) in cases {
        let top = p.x_max();
        for x in linspace(0.0, 0.999 * top, 100) {
            let got = extended_potential(&p, x).unwrap();
            let want = oracle(x);
            let scale = want.abs().max(1.0);
            worst = worst.max((got - want).abs() / scale);
        }
    }
    let pass = worst < 1e-10;
    assert!(verdict(
        2,
        "extended potential closed forms",
        pass,
        &format!("max rel error {worst:e}")
    ));
}

fn listed_psi(m: usize, x: f64) -> f64 {
    let x2 = x * x;
    let base = x * (x2 - 10.0).powi(5);
    match m {
        0 => base,
        1 => base * (3.0 * x2 + 5.0) / (9.0 * x2 + 5.0),
        3 => {
            base * (2.0 * x2.powi(3) + 42.0 * x2 * x2 + 175.0 * x2 + 125.0)
                / ((2.0 * x2 * x2 + 30.0 * x2 + 75.0) * 7.0 * x2 + 125.0)
        }
        5 => {
            let num = ((x2.powi(3) + 275.0 * x2 * x2 + 12375.0 * x2 + 144375.0) * 8.0 * x2
                + 3609375.0)
                * x2
                + 2165625.0;
            let den =
                ((x2.powi(3) + 225.0 * x2 * x2 + 7875.0 * x2 + 65625.0) * 8.0 * x2 + 984375.0) * x2
                    + 196875.0;
            base * num / den
        }
        _ => unreachable!(),
    }
}

#[test]
fn criterion_3_wavefunction_listing() {
    let mut worst = 0.0f64;
    for m in [0, 1, 3, 5] {
        let p = exact(-1, 10, m);
        let xs = interior(&p, 50);
        let cv = ratio_cv(
            |x| extended_wavefunction(&p, m, x).unwrap(),
            |x| listed_psi(m, x),
            &xs,
        );
        worst = worst.max(cv);
    }
    let pass = worst < 1e-8;
    assert!(verdict(
        3,
        "wavefunction listing ratios",
        pass,
        &format!("max ratio CV {worst:e}")
    ));
}

#[test]
fn criterion_4_orthogonality() {
    let mut off = 0.0f64;
    let mut cv = 0.0f64;
    for (p, lo, hi) in [(exact(-1, 10, 1), 1, 5), (exact(-1, 5, 3), 3, 6)] {
        let r = gram_matrix(&p, lo, hi, DEFAULT_ORDER, 1e-6).unwrap();
        off = off.max(r.meta("max_offdiag").unwrap());
        cv = cv.max(r.meta("diag_norm_ratio_cv").unwrap());
    }
    let pass = off < 1e-6 && cv < 1e-5;
    assert!(verdict(
        4,
        "orthogonality",
        pass,
        &format!("max rel off-diagonal {off:e}, diagonal/N CV {cv:e}")
    ));
}

#[test]
fn criterion_5_ode_residuals() {
    let mut worst = 0.0f64;
    let mut weakest_control = f64::INFINITY;
    let mut all = true;
    for w in WORKED {
        let p = w.params();
        for n in w.m..w.m + w.levels {
            let r = ode_residual(&p, n, 200).unwrap();
            worst = worst.max(r.meta("max_residual").unwrap());
            weakest_control = weakest_control.min(r.meta("control_residual").unwrap());
            all &= r.pass;
        }
    }
    let pass = all && worst < 1e-7 && weakest_control > 1e-3;
    assert!(verdict(
        5,
        "ODE residuals",
        pass,
        &format!("max residual {worst:e}, min control residual {weakest_control:e}")
    ));
}

#[test]
fn criterion_6_eigensolver() {
    let mut worst = 0.0f64;
    let mut orders = Vec::new();
    let mut all = true;
    for (p, count) in [(exact(-1, 5, 3), 3), (exact(-1, 10, 1), 4)] {
        let r = eig_compare(&p, count, 2000).unwrap();
        all &= r.pass;
        worst = r.checks.iter().fold(worst, |acc, d| acc.max(d.value));
        orders.extend(convergence_order(&p.scarf_params().unwrap(), count, 1000, 2000).unwrap());
    }
    let orders_ok = orders.iter().all(|o| (o - 2.0).abs() <= 0.2);
    let pass = all && worst < 1e-3 && orders_ok;
    let shown: Vec<String> = orders.iter().map(|o| format!("{o:.3}")).collect();
    assert!(verdict(
        6,
        "finite-difference spectrum",
        pass,
        &format!("max rel deviation {worst:e}, orders [{}]", shown.join(", "))
    ));
}

#[test]
fn criterion_7_m0_reduction() {
    let mut details = Vec::new();
    let mut pass = true;
    for (p_, q_) in [(-1, 10), (-1, 2), (-5, 1)] {
        let p = exact(p_, q_, 0);
        let lambda = p.lambda();
        let energies = (0..5).all(|n| {
            extended_energy(&p, n).unwrap().energy == conventional_energy(lambda, n).energy
        });
        let pot = interior(&p, 100).into_iter().fold(0.0f64, |acc, x| {
            let e = extended_potential(&p, x).unwrap();
            let c = conventional_potential(lambda, x).unwrap();
            acc.max((e - c).abs() / c.abs().max(1e-300))
        });
        let xs = interior(&p, 50);
        let mut cv = 0.0f64;
        for n in 0..5 {
            let r = ratio_cv(
                |x| extended_wavefunction(&p, n, x).unwrap(),
                |x| conventional_wavefunction(lambda, n, x).unwrap(),
                &xs,
            );
            cv = cv.max(r);
        }
        let ok = energies && pot <= 1e-12 && cv < 1e-6;
        pass &= ok;
        details.push(format!(
            "lambda={p_}/{q_}: energies {}, potential {pot:e}, ratio CV {cv:e}",
            if energies { "equal" } else { "differ" }
        ));
    }
    assert!(verdict(7, "m = 0 reduction", pass, &details.join("; ")));
}

#[test]
fn criterion_8_regularity_table() {
    let table = [
        ((-5, 1), 1, true),
        ((-13, 20), 2, true),
        ((-1, 1), 2, false),
        ((-2, 1), 1, false),
    ];
    let mut rows = Vec::new();
    let mut pass = true;
    for ((p_, q_), m, expect) in table {
        let got = validate_params(&exact(p_, q_, m)).valid;
        pass &= got == expect;
        rows.push(format!(
            "(m={m}, lambda={p_}/{q_}) -> {}",
            if got { "valid" } else { "invalid" }
        ));
    }
    assert!(verdict(8, "regularity truth table", pass, &rows.join(", ")));
}

#[test]
fn criterion_9_legendre_route() {
    let p = exact(-1, 10, 0);
    let xs = interior(&p, 50);
    let mut worst = 0.0f64;
    for n in 0..3 {
        let cv = ratio_cv(
            |x| conventional_wavefunction(-0.1, n, x).unwrap(),
            |x| extended_wavefunction(&p, n, x).unwrap(),
            &xs,
        );
        worst = worst.max(cv);
    }
    let pass = worst < 1e-6;
    assert!(verdict(
        9,
        "Legendre and Jacobi routes agree",
        pass,
        &format!("max ratio CV {worst:e}")
    ));
}

#[test]
fn spectral_helpers_are_consistent() {
    assert!(rel(conventional_energy(-0.1, 0).energy, 1.55) < 1e-14);
}
