use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::legendre::{legendre_second_derivative, legendre_with_derivative};
use crate::error::{config, Error, Result};

/// Family of solution points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    /// Gauss-Legendre: interior nodes, exact quadrature to degree 2N+1.
    Gl,
    /// Gauss-Lobatto-Legendre: includes both endpoints, exact to degree 2N-1.
    Gll,
}

impl FromStr for PointKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(PointKind::Gl),
            "gll" => Ok(PointKind::Gll),
            other => config(format!("unknown point kind `{other}` (expected gl|gll)")),
        }
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointKind::Gl => "gl",
            PointKind::Gll => "gll",
        })
    }
}

/// Solution points and quadrature weights on the reference interval [0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionPoints {
    pub kind: PointKind,
    pub degree: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SolutionPoints {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Quadrature of samples taken at the nodes.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }
}

/// Nodes and weights of the (N+1)-point rule of the given kind, mapped to [0, 1].
pub fn build_solution_points(kind: PointKind, degree: usize) -> Result<SolutionPoints> {
    if degree < 1 {
        return config(format!("polynomial degree must be at least 1, got {degree}"));
    }
    let (eta, w) = match kind {
        PointKind::Gl => gauss_legendre(degree + 1),
        PointKind::Gll => gauss_lobatto(degree + 1),
    };
    let nodes = eta.iter().map(|e| 0.5 * (e + 1.0)).collect();
    let weights = w.iter().map(|w| 0.5 * w).collect();
    Ok(SolutionPoints {
        kind,
        degree,
        nodes,
        weights,
    })
}

/// `n`-point Gauss-Legendre rule on [-1, 1], nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let f = |x: f64| {
        let (p, dp) = legendre_with_derivative(n, x);
        (p[n], dp[n])
    };
    let guesses: Vec<f64> = (0..n)
        .map(|i| -(std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos())
        .collect();
    let nodes = polish_roots(f, &guesses, -1.0, 1.0);
    let weights = nodes
        .iter()
        .map(|&x| {
            let d = f(x).1;
            2.0 / ((1.0 - x * x) * d * d)
        })
        .collect();
    (nodes, weights)
}

/// `n`-point Gauss-Lobatto-Legendre rule on [-1, 1], nodes ascending.
pub fn gauss_lobatto(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "Gauss-Lobatto needs at least two points");
    let m = n - 1;
    let f = |x: f64| {
        let (_, dp) = legendre_with_derivative(m, x);
        (dp[m], legendre_second_derivative(m, x))
    };
    let guesses: Vec<f64> = (1..m)
        .map(|i| -(std::f64::consts::PI * i as f64 / m as f64).cos())
        .collect();
    let mut nodes = vec![-1.0];
    nodes.extend(polish_roots(f, &guesses, -1.0, 1.0));
    nodes.push(1.0);
    let mf = m as f64;
    let weights = nodes
        .iter()
        .map(|&x| {
            let p = legendre_with_derivative(m, x).0[m];
            2.0 / (mf * (mf + 1.0) * p * p)
        })
        .collect();
    (nodes, weights)
}

/// Newton iteration from each guess; any guess that fails to converge inside
/// `(lo, hi)` is replaced by bisection on a sign change found by sampling.
fn polish_roots(f: impl Fn(f64) -> (f64, f64), guesses: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut roots = Vec::with_capacity(guesses.len());
    for &g in guesses {
        let mut x = g;
        let mut ok = false;
        for _ in 0..100 {
            let (v, d) = f(x);
            if d == 0.0 {
                break;
            }
            let dx = v / d;
            x -= dx;
            if !(lo < x && x < hi) {
                break;
            }
            if dx.abs() <= 1e-15 * (1.0 + x.abs()) {
                ok = true;
                break;
            }
        }
        roots.push(if ok { x } else { f64::NAN });
    }
    if roots.iter().any(|r| r.is_nan()) {
        roots = bisect_all_roots(&f, guesses.len(), lo, hi);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

fn bisect_all_roots(f: &impl Fn(f64) -> (f64, f64), count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let samples = 2000 * count.max(1);
    let h = (hi - lo) / samples as f64;
    let mut roots = Vec::with_capacity(count);
    let mut a = lo + 1e-12;
    let mut fa = f(a).0;
    for k in 1..=samples {
        let b = (lo + k as f64 * h).min(hi - 1e-12);
        let fb = f(b).0;
        if fa == 0.0 || fa * fb < 0.0 {
            let (mut l, mut r, mut fl) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (l + r);
                let fm = f(mid).0;
                if fl * fm <= 0.0 {
                    r = mid;
                } else {
                    l = mid;
                    fl = fm;
                }
                if r - l < 1e-16 {
                    break;
                }
            }
            roots.push(0.5 * (l + r));
        }
        a = b;
        fa = fb;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_gauss() {
        let p = build_solution_points(PointKind::Gl, 1).unwrap();
        assert!((p.nodes[0] - 0.2113248654051871).abs() < 1e-15);
        assert!((p.nodes[1] - 0.7886751345948129).abs() < 1e-15);
        assert!((p.weights[0] - 0.5).abs() < 1e-15);
        assert!((p.weights[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lobatto_degree_one_is_endpoints() {
        let p = build_solution_points(PointKind::Gll, 1).unwrap();
        assert_eq!(p.nodes, vec![0.0, 1.0]);
        assert_eq!(p.weights, vec![0.5, 0.5]);
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(matches!(
            build_solution_points(PointKind::Gl, 0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn quadrature_exactness() {
        for kind in [PointKind::Gl, PointKind::Gll] {
            for n in 1..=8 {
                let p = build_solution_points(kind, n).unwrap();
                let exact_to = match kind {
                    PointKind::Gl => 2 * n + 1,
                    PointKind::Gll => 2 * n - 1,
                };
                for k in 0..=exact_to {
                    let q: f64 = p
                        .nodes
                        .iter()
                        .zip(&p.weights)
                        .map(|(x, w)| w * x.powi(k as i32))
                        .sum();
                    assert!(
                        (q - 1.0 / (k as f64 + 1.0)).abs() < 1e-13,
                        "{kind} N={n} k={k}: {q}"
                    );
                }
                assert!(p.nodes.windows(2).all(|w| w[0] < w[1]));
                assert!(p.nodes.iter().all(|&x| (0.0..=1.0).contains(&x)));
            }
        }
    }

    #[test]
    fn bisection_fallback_agrees_with_newton() {
        let n = 5;
        let f = |x: f64| {
            let (p, dp) = legendre_with_derivative(n, x);
            (p[n], dp[n])
        };
        let newton = gauss_legendre(n).0;
        let bis = bisect_all_roots(&f, n, -1.0, 1.0);
        for (a, b) in newton.iter().zip(&bis) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    /// 50-digit reference values for the 5-point Gauss-Legendre rule on [-1, 1].
    #[test]
    fn five_point_reference() {
        let (x, w) = gauss_legendre(5);
        let xr = [
            -0.906_179_845_938_663_992_797_626_878_299_4,
            -0.538_469_310_105_683_091_036_314_420_700_2,
            0.0,
        ];
        let wr = [
            0.236_926_885_056_189_087_514_264_040_719_9,
            0.478_628_670_499_366_468_041_291_514_835_6,
            0.568_888_888_888_888_888_888_888_888_888_9,
        ];
        for i in 0..3 {
            assert!((x[i] - xr[i]).abs() < 1e-15);
            assert!((w[i] - wr[i]).abs() < 1e-15);
        }
    }
}
