//! Gauss-Legendre quadrature and sampled functions on its nodes.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes, strictly increasing inside `(-1, 1)`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Rebuilds a rule from stored nodes and weights, checking the basic invariants.
    pub fn from_parts(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::Usage(
                "quadrature needs matching, non-empty node and weight lists".into(),
            ));
        }
        if nodes.iter().any(|x| x.is_nan() || x.abs() >= 1.0) {
            return Err(Error::Domain("quadrature nodes must lie in (-1,1)".into()));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Usage("quadrature nodes must be strictly increasing".into()));
        }
        if weights.iter().any(|w| w.is_nan() || *w <= 0.0) {
            return Err(Error::Usage("quadrature weights must be positive".into()));
        }
        Ok(QuadratureRule { nodes, weights })
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `(P_n(x), P_n'(x))` by the Bonnet recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Root of `P_n` inside the bracket `(lo, hi)`: Newton steps from `guess`,
/// falling back to bisection whenever a step leaves the bracket.
fn refine_root(n: usize, mut lo: f64, mut hi: f64, guess: f64) -> f64 {
    let (p_lo, _) = legendre_with_derivative(n, lo);
    let mut x = guess;
    for _ in 0..200 {
        let (p, dp) = legendre_with_derivative(n, x);
        if p == 0.0 {
            return x;
        }
        if (p < 0.0) == (p_lo < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - p / dp;
        let next = if newton > lo && newton < hi && dp != 0.0 {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step < 1e-15 {
            break;
        }
    }
    x
}

/// The `n`-point Gauss-Legendre rule.
///
/// Roots are located one per Bruns bracket
/// `((k - 1/2) pi/(n + 1/2), k pi/(n + 1/2))` in angle, starting from the
/// Chebyshev-angle guess `cos(pi (k - 1/4)/(n + 1/2))`. Only the positive
/// half is computed; the other half is its mirror image, so the rule is
/// symmetric to the last bit.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Domain("Gauss-Legendre rule needs n >= 1".into()));
    }
    let nf = n as f64;
    let half = n / 2;
    let mut positive = Vec::with_capacity(half);
    for k in 1..=half {
        let kf = k as f64;
        let theta_lo = (kf - 0.5) * PI / (nf + 0.5);
        let theta_hi = kf * PI / (nf + 0.5);
        let guess = (PI * (kf - 0.25) / (nf + 0.5)).cos();
        let x = refine_root(n, theta_hi.cos(), theta_lo.cos(), guess);
        let (_, dp) = legendre_with_derivative(n, x);
        positive.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &(x, w) in &positive {
        nodes.push(-x);
        weights.push(w);
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_with_derivative(n, 0.0);
        nodes.push(0.0);
        weights.push(2.0 / (dp * dp));
    }
    for &(x, w) in positive.iter().rev() {
        nodes.push(x);
        weights.push(w);
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Samples of a function of `x` on the nodes of a rule, tagged with its `m` channel.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    pub rule: QuadratureRule,
    pub m: i64,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(rule: QuadratureRule, m: i64, values: Vec<f64>) -> Result<Self> {
        if values.len() != rule.order() {
            return Err(Error::Usage(format!(
                "grid has {} nodes but {} values",
                rule.order(),
                values.len()
            )));
        }
        Ok(GridFunction { rule, m, values })
    }

    pub fn sample<F: Fn(f64) -> f64>(rule: &QuadratureRule, m: i64, f: F) -> Self {
        let values = rule.nodes().iter().map(|&x| f(x)).collect();
        GridFunction {
            rule: rule.clone(),
            m,
            values,
        }
    }

    pub fn zeros(rule: &QuadratureRule, m: i64) -> Self {
        GridFunction {
            rule: rule.clone(),
            m,
            values: vec![0.0; rule.order()],
        }
    }

    /// `sum_k w_k f(x_k) g(x_k)`.
    pub fn dot(&self, other: &GridFunction) -> Result<f64> {
        if self.rule != other.rule {
            return Err(Error::Usage("grid functions live on different rules".into()));
        }
        Ok(self
            .rule
            .weights()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(w, (a, b))| w * a * b)
            .sum())
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert_eq!(r1.weights(), &[2.0]);

        let r2 = gauss_legendre(2).unwrap();
        let root = 1.0 / 3f64.sqrt();
        assert!((r2.nodes()[0] + 0.5773502691896258).abs() < 1e-15);
        assert!((r2.nodes()[1] - root).abs() < 1e-15);
        for w in r2.weights() {
            assert!((w - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_points_is_an_error() {
        assert!(matches!(gauss_legendre(0), Err(Error::Domain(_))));
    }

    #[test]
    fn degree_eight_with_five_points() {
        let r = gauss_legendre(5).unwrap();
        assert!((r.integrate(|x| x.powi(8)) - 2.0 / 9.0).abs() < 1e-13);
    }

    #[test]
    fn structural_invariants() {
        for n in 1..=80 {
            let r = gauss_legendre(n).unwrap();
            let x = r.nodes();
            assert!(x.windows(2).all(|w| w[0] < w[1]), "n={n}");
            assert!(x.iter().all(|v| v.abs() < 1.0));
            for k in 0..n {
                assert!((x[k] + x[n - 1 - k]).abs() <= 1e-14);
            }
            assert!(r.weights().iter().all(|&w| w > 0.0));
            assert!((r.weights().iter().sum::<f64>() - 2.0).abs() <= 1e-13, "n={n}");
        }
    }

    #[test]
    fn monomial_exactness() {
        for n in 1..=40 {
            let r = gauss_legendre(n).unwrap();
            for d in 0..=(2 * n - 1) {
                let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
                let got = r.integrate(|x| x.powi(d as i32));
                assert!((got - exact).abs() < 1e-13, "n={n} d={d} got={got}");
            }
        }
    }

    #[test]
    fn grid_function_shape_check() {
        let r = gauss_legendre(3).unwrap();
        assert!(GridFunction::new(r.clone(), 0, vec![1.0; 2]).is_err());
        let g = GridFunction::new(r, 0, vec![1.0; 3]).unwrap();
        assert!((g.dot(&g).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn from_parts_validation() {
        assert!(QuadratureRule::from_parts(vec![0.5, -0.5], vec![1.0, 1.0]).is_err());
        assert!(QuadratureRule::from_parts(vec![1.0], vec![2.0]).is_err());
        assert!(QuadratureRule::from_parts(vec![0.0], vec![-2.0]).is_err());
        assert!(QuadratureRule::from_parts(vec![0.0], vec![2.0]).is_ok());
    }
}
