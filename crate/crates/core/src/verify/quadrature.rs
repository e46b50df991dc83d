use std::f64::consts::PI;

use serde::Serialize;

/// Nodes and weights of an interpolatory rule on `interval`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: (f64, f64),
}

impl QuadratureRule {
    /// Affine transport of the rule to `(lo, hi)`.
    pub fn rescale(&self, lo: f64, hi: f64) -> QuadratureRule {
        let (a, b) = self.interval;
        let scale = (hi - lo) / (b - a);
        QuadratureRule {
            nodes: self.nodes.iter().map(|&t| lo + (t - a) * scale).collect(),
            weights: self.weights.iter().map(|&w| w * scale).collect(),
            interval: (lo, hi),
        }
    }

    /// Σ w_k f(x_k), ascending in k.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        let mut sum = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(x);
        }
        sum
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Legendre P_n and P_n' at x by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Gauss–Legendre rule of the given order on (-1, 1), nodes ascending.
/// Panics if `order` is zero.
pub fn gauss_legendre(order: usize) -> QuadratureRule {
    assert!(order >= 1, "quadrature order must be at least 1");
    if order == 1 {
        return QuadratureRule {
            nodes: vec![0.0],
            weights: vec![2.0],
            interval: (-1.0, 1.0),
        };
    }
    let n = order;
    let half = n.div_ceil(2);
    let mut pos = Vec::with_capacity(half);
    for i in 0..half {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        pos.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    // pos runs from the largest node inward; mirror it for exact symmetry.
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &(x, w) in &pos {
        nodes.push(-x);
        weights.push(w);
    }
    let start = if n % 2 == 1 {
        let last = nodes.len() - 1;
        nodes[last] = 0.0;
        half - 1
    } else {
        half
    };
    for &(x, w) in pos[..start].iter().rev() {
        nodes.push(x);
        weights.push(w);
    }
    QuadratureRule {
        nodes,
        weights,
        interval: (-1.0, 1.0),
    }
}
