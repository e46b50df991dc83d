//! Shared fixtures for the acceptance suite.

use xm_oscillator::{OscillatorParams, Real};

/// A worked parameter set: λ as an exact fraction, the extension order and
/// the levels exercised.
#[derive(Debug, Clone, Copy)]
pub struct Worked {
    pub name: &'static str,
    pub lambda: (i64, i64),
    pub m: usize,
    pub levels: usize,
}

impl Worked {
    pub fn params(&self) -> OscillatorParams {
        OscillatorParams::new(Real::exact(self.lambda.0, self.lambda.1), self.m).unwrap()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda.0 as f64 / self.lambda.1 as f64
    }
}

pub const WORKED: [Worked; 8] = [
    Worked {
        name: "case1",
        lambda: (-1, 20),
        m: 1,
        levels: 3,
    },
    Worked {
        name: "case2",
        lambda: (-5, 1),
        m: 1,
        levels: 3,
    },
    Worked {
        name: "case3",
        lambda: (-13, 20),
        m: 2,
        levels: 3,
    },
    Worked {
        name: "ground_m0",
        lambda: (-1, 10),
        m: 0,
        levels: 1,
    },
    Worked {
        name: "ground_m1",
        lambda: (-1, 10),
        m: 1,
        levels: 1,
    },
    Worked {
        name: "ground_m3",
        lambda: (-1, 10),
        m: 3,
        levels: 1,
    },
    Worked {
        name: "ground_m5",
        lambda: (-1, 10),
        m: 5,
        levels: 1,
    },
    Worked {
        name: "tower_m3",
        lambda: (-1, 5),
        m: 3,
        levels: 3,
    },
];

/// Prints the one-line verdict of a criterion and returns whether it passed.
pub fn verdict(criterion: u32, title: &str, pass: bool, detail: &str) -> bool {
    println!(
        "{} criterion {criterion}: {title} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}
