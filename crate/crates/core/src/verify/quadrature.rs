use std::f64::consts::PI;
use std::ops::{Add, Mul};

/// Gauss-Legendre rule on `[-1, 1]`, applied as a tensor product in 2-D.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

pub const DEFAULT_ORDER: usize = 64;

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::gauss_legendre(DEFAULT_ORDER)
    }
}

impl QuadratureRule {
    /// `order`-point rule; exact for polynomials of degree `2 * order - 1`.
    ///
    /// Nodes are Newton-refined roots of `P_order`, starting from the
    /// Tricomi estimate.
    pub fn gauss_legendre(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    dp = legendre_with_derivative(n, x).1;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int_lo^hi f(x) dx`.
    pub fn integrate<T, F>(&self, lo: f64, hi: f64, mut f: F) -> T
    where
        T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
        F: FnMut(f64) -> T,
    {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }

    /// Same rule on `panels` equal sub-intervals.
    pub fn integrate_composite<T, F>(&self, lo: f64, hi: f64, panels: usize, mut f: F) -> T
    where
        T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
        F: FnMut(f64) -> T,
    {
        let step = (hi - lo) / panels as f64;
        let mut acc = T::default();
        for k in 0..panels {
            let a = lo + step * k as f64;
            let b = if k + 1 == panels { hi } else { a + step };
            acc = acc + self.integrate(a, b, &mut f);
        }
        acc
    }
}

/// Tensor-product estimate of `int_0^width int_0^height f(x, y) dy dx`.
pub fn quad2d<T, F>(width: f64, height: f64, rule: &QuadratureRule, mut f: F) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: FnMut(f64, f64) -> T,
{
    rule.integrate(0.0, width, |x| rule.integrate(0.0, height, |y| f(x, y)))
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
