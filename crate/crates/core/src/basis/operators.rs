use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use super::legendre::legendre_with_derivative;
use super::points::{build_solution_points, PointKind, SolutionPoints};
use crate::error::{config, Error, Result};

/// Correction function used to make the flux continuous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Correction {
    /// Right/left Radau polynomials. With GL points this gives the DG scheme.
    Radau,
    /// The g2 family member; with GLL points this lumps the DG mass matrix.
    G2,
    /// Direct flux reconstruction on the augmented node set (GL only).
    Dfr,
}

impl FromStr for Correction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "radau" => Ok(Correction::Radau),
            "g2" => Ok(Correction::G2),
            "dfr" => Ok(Correction::Dfr),
            other => config(format!("unknown correction `{other}` (expected radau|g2|dfr)")),
        }
    }
}

impl fmt::Display for Correction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Correction::Radau => "radau",
            Correction::G2 => "g2",
            Correction::Dfr => "dfr",
        })
    }
}

/// Largest number of solution points supported by the time-stepping kernels.
pub const MAX_POINTS: usize = 5;

/// Reference-element operators for one degree, point family and correction.
#[derive(Clone, Debug)]
pub struct ReferenceOperators {
    pub points: SolutionPoints,
    pub correction: Correction,
    pub d: DMatrix<f64>,
    pub d1: DMatrix<f64>,
    pub b_l: DVector<f64>,
    pub b_r: DVector<f64>,
    pub v_l: DVector<f64>,
    pub v_r: DVector<f64>,
    /// Barycentric weights of the nodes.
    pub bary: Vec<f64>,
}

impl ReferenceOperators {
    pub fn new(kind: PointKind, degree: usize, correction: Correction) -> Result<Self> {
        build_operators(&build_solution_points(kind, degree)?, correction)
    }

    /// Shared instance from a process-wide cache.
    pub fn cached(kind: PointKind, degree: usize, correction: Correction) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<(PointKind, usize, Correction), Arc<ReferenceOperators>>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (kind, degree, correction);
        if let Some(op) = cache.lock().unwrap().get(&key) {
            return Ok(op.clone());
        }
        let op = Arc::new(Self::new(kind, degree, correction)?);
        cache.lock().unwrap().insert(key, op.clone());
        Ok(op)
    }

    pub fn degree(&self) -> usize {
        self.points.degree
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.points.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.points.weights
    }

    /// Lagrange basis values at `x` in reference coordinates.
    pub fn lagrange_at(&self, x: f64) -> Vec<f64> {
        lagrange_values(&self.points.nodes, &self.bary, x)
    }

    /// Evaluates the nodal interpolant of `values` at `x`.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        self.lagrange_at(x).iter().zip(values).map(|(l, v)| l * v).sum()
    }

    /// `F_{e-1/2} b_L + D1 F + F_{e+1/2} b_R`, the reference derivative of the
    /// continuous flux.
    pub fn flux_derivative(&self, f: &[f64], f_left: f64, f_right: f64) -> Vec<f64> {
        let n = self.n_points();
        (0..n)
            .map(|i| {
                let mut s = f_left * self.b_l[i] + f_right * self.b_r[i];
                for j in 0..n {
                    s += self.d1[(i, j)] * f[j];
                }
                s
            })
            .collect()
    }

    /// Every operator entry as `operator,row,col,value` lines. Vectors use
    /// column 0.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("operator,row,col,value\n");
        let mut vec = |name: &str, v: &[f64]| {
            for (i, x) in v.iter().enumerate() {
                s.push_str(&format!("{name},{i},0,{x:.16e}\n"));
            }
        };
        vec("nodes", self.nodes());
        vec("weights", self.weights());
        vec("b_l", self.b_l.as_slice());
        vec("b_r", self.b_r.as_slice());
        vec("v_l", self.v_l.as_slice());
        vec("v_r", self.v_r.as_slice());
        for (name, m) in [("d", &self.d), ("d1", &self.d1)] {
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    s.push_str(&format!("{name},{i},{j},{:.16e}\n", m[(i, j)]));
                }
            }
        }
        s
    }

    /// Fixed-size copy for the inner loops.
    pub fn kernel(&self) -> Result<Kernel> {
        let n = self.n_points();
        if n > MAX_POINTS {
            return config(format!(
                "degree {} exceeds the supported maximum {}",
                self.degree(),
                MAX_POINTS - 1
            ));
        }
        let mut k = Kernel {
            n,
            degree: self.degree(),
            nodes: [0.0; MAX_POINTS],
            weights: [0.0; MAX_POINTS],
            d: [[0.0; MAX_POINTS]; MAX_POINTS],
            d1: [[0.0; MAX_POINTS]; MAX_POINTS],
            b_l: [0.0; MAX_POINTS],
            b_r: [0.0; MAX_POINTS],
            v_l: [0.0; MAX_POINTS],
            v_r: [0.0; MAX_POINTS],
        };
        for i in 0..n {
            k.nodes[i] = self.points.nodes[i];
            k.weights[i] = self.points.weights[i];
            k.b_l[i] = self.b_l[i];
            k.b_r[i] = self.b_r[i];
            k.v_l[i] = self.v_l[i];
            k.v_r[i] = self.v_r[i];
            for j in 0..n {
                k.d[i][j] = self.d[(i, j)];
                k.d1[i][j] = self.d1[(i, j)];
            }
        }
        Ok(k)
    }
}

/// Stack-allocated operator data for degrees up to `MAX_POINTS - 1`.
#[derive(Clone, Copy, Debug)]
pub struct Kernel {
    pub n: usize,
    pub degree: usize,
    pub nodes: [f64; MAX_POINTS],
    pub weights: [f64; MAX_POINTS],
    pub d: [[f64; MAX_POINTS]; MAX_POINTS],
    pub d1: [[f64; MAX_POINTS]; MAX_POINTS],
    pub b_l: [f64; MAX_POINTS],
    pub b_r: [f64; MAX_POINTS],
    pub v_l: [f64; MAX_POINTS],
    pub v_r: [f64; MAX_POINTS],
}

pub fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    (0..nodes.len())
        .map(|j| {
            let p: f64 = (0..nodes.len())
                .filter(|&k| k != j)
                .map(|k| nodes[j] - nodes[k])
                .product();
            1.0 / p
        })
        .collect()
}

/// Lagrange basis on `nodes` evaluated at `x` (barycentric second form).
pub fn lagrange_values(nodes: &[f64], bary: &[f64], x: f64) -> Vec<f64> {
    if let Some(j) = nodes.iter().position(|&xi| xi == x) {
        let mut out = vec![0.0; nodes.len()];
        out[j] = 1.0;
        return out;
    }
    let terms: Vec<f64> = nodes.iter().zip(bary).map(|(xi, w)| w / (x - xi)).collect();
    let s: f64 = terms.iter().sum();
    terms.iter().map(|t| t / s).collect()
}

/// `D_ij = l_j'(x_i)`.
pub fn differentiation_matrix(nodes: &[f64]) -> DMatrix<f64> {
    let n = nodes.len();
    let w = barycentric_weights(nodes);
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i != j {
                let v = (w[j] / w[i]) / (nodes[i] - nodes[j]);
                d[(i, j)] = v;
                diag -= v;
            }
        }
        d[(i, i)] = diag;
    }
    d
}

/// Correction functions `(g_L, g_R)` at `x` in [0, 1].
pub fn correction_values(correction: Correction, degree: usize, x: f64) -> Result<(f64, f64)> {
    Ok(correction_eval(correction, degree, x)?.0)
}

/// `(g_L, g_R)` and their derivatives with respect to the reference coordinate.
fn correction_eval(correction: Correction, n: usize, x: f64) -> Result<((f64, f64), (f64, f64))> {
    let eta = 2.0 * x - 1.0;
    let (p, dp) = legendre_with_derivative(n + 1, eta);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let nf = n as f64;
    let (q, dq) = match correction {
        Correction::Radau => (p[n + 1], dp[n + 1]),
        Correction::G2 => {
            let c = 1.0 / (2.0 * nf + 1.0);
            (
                c * ((nf + 1.0) * p[n - 1] + nf * p[n + 1]),
                c * ((nf + 1.0) * dp[n - 1] + nf * dp[n + 1]),
            )
        }
        Correction::Dfr => {
            return config("dfr has no closed-form correction function");
        }
    };
    let gl = 0.5 * sign * (p[n] - q);
    let gr = 0.5 * (p[n] + q);
    // d/dx = 2 d/deta
    let dgl = sign * (dp[n] - dq);
    let dgr = dp[n] + dq;
    Ok(((gl, gr), (dgl, dgr)))
}

/// Derivatives of the correction functions at the solution points.
pub fn correction_derivatives(
    correction: Correction,
    points: &SolutionPoints,
) -> Result<(DVector<f64>, DVector<f64>)> {
    let n = points.len();
    let mut b_l = DVector::zeros(n);
    let mut b_r = DVector::zeros(n);
    for (j, &x) in points.nodes.iter().enumerate() {
        let (_, (dl, dr)) = correction_eval(correction, points.degree, x)?;
        b_l[j] = dl;
        b_r[j] = dr;
    }
    Ok((b_l, b_r))
}

pub fn build_operators(points: &SolutionPoints, correction: Correction) -> Result<ReferenceOperators> {
    let n = points.len();
    let bary = barycentric_weights(&points.nodes);
    let d = differentiation_matrix(&points.nodes);
    let v_l = DVector::from_vec(lagrange_values(&points.nodes, &bary, 0.0));
    let v_r = DVector::from_vec(lagrange_values(&points.nodes, &bary, 1.0));
    let (b_l, b_r, d1) = match correction {
        Correction::Radau | Correction::G2 => {
            let (b_l, b_r) = correction_derivatives(correction, points)?;
            let d1 = &d - &b_l * v_l.transpose() - &b_r * v_r.transpose();
            (b_l, b_r, d1)
        }
        Correction::Dfr => {
            if points.kind != PointKind::Gl {
                return config("direct flux reconstruction needs GL points (no node may sit on a face)");
            }
            let mut aug = Vec::with_capacity(n + 2);
            aug.push(0.0);
            aug.extend_from_slice(&points.nodes);
            aug.push(1.0);
            let da = differentiation_matrix(&aug);
            let b_l = DVector::from_fn(n, |i, _| da[(i + 1, 0)]);
            let b_r = DVector::from_fn(n, |i, _| da[(i + 1, n + 1)]);
            let d1 = DMatrix::from_fn(n, n, |i, j| da[(i + 1, j + 1)]);
            (b_l, b_r, d1)
        }
    };
    Ok(ReferenceOperators {
        points: points.clone(),
        correction,
        d,
        d1,
        b_l,
        b_r,
        v_l,
        v_r,
        bary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ops(kind: PointKind, n: usize, c: Correction) -> ReferenceOperators {
        ReferenceOperators::new(kind, n, c).unwrap()
    }

    #[test]
    fn two_point_derivative_matrix() {
        let o = ops(PointKind::Gl, 1, Correction::Radau);
        let s3 = 3f64.sqrt();
        let expect = [[-s3, s3], [-s3, s3]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((o.d[(i, j)] - expect[i][j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn radau_degree_one_left_derivative() {
        let o = ops(PointKind::Gl, 1, Correction::Radau);
        for j in 0..2 {
            let x = o.nodes()[j];
            assert!((o.b_l[j] - (6.0 * x - 4.0)).abs() < 1e-14);
        }
        assert!((o.b_l[0] + 2.7320508075688772).abs() < 1e-14);
        assert!((o.b_l[1] - 0.7320508075688772).abs() < 1e-14);
    }

    #[test]
    fn g2_derivative_against_finite_difference() {
        let h = 1e-6;
        for kind in [PointKind::Gl, PointKind::Gll] {
            for n in 1..=4 {
                let o = ops(kind, n, Correction::G2);
                for (j, &x) in o.nodes().iter().enumerate() {
                    let (lp, rp) = correction_values(Correction::G2, n, x + h).unwrap();
                    let (lm, rm) = correction_values(Correction::G2, n, x - h).unwrap();
                    assert!((o.b_l[j] - (lp - lm) / (2.0 * h)).abs() < 1e-6);
                    assert!((o.b_r[j] - (rp - rm) / (2.0 * h)).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn correction_endpoint_values() {
        for c in [Correction::Radau, Correction::G2] {
            for n in 1..=6 {
                let (l0, r0) = correction_values(c, n, 0.0).unwrap();
                let (l1, r1) = correction_values(c, n, 1.0).unwrap();
                assert!((l0 - 1.0).abs() < 1e-14 && l1.abs() < 1e-14);
                assert!(r0.abs() < 1e-14 && (r1 - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn differentiation_is_exact_on_polynomials() {
        for kind in [PointKind::Gl, PointKind::Gll] {
            for n in 1..=6 {
                let o = ops(kind, n, Correction::Radau);
                for k in 0..=n {
                    let p: Vec<f64> = o.nodes().iter().map(|x| x.powi(k as i32)).collect();
                    for i in 0..o.n_points() {
                        let dp: f64 = (0..o.n_points()).map(|j| o.d[(i, j)] * p[j]).sum();
                        let exact = if k == 0 {
                            0.0
                        } else {
                            k as f64 * o.nodes()[i].powi(k as i32 - 1)
                        };
                        assert!((dp - exact).abs() < 1e-11, "{kind} N={n} k={k}");
                    }
                    let vl: f64 = o.v_l.iter().zip(&p).map(|(a, b)| a * b).sum();
                    let vr: f64 = o.v_r.iter().zip(&p).map(|(a, b)| a * b).sum();
                    assert!((vl - if k == 0 { 1.0 } else { 0.0 }).abs() < 1e-13);
                    assert!((vr - 1.0).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn d1_is_the_fr_combination() {
        for kind in [PointKind::Gl, PointKind::Gll] {
            for c in [Correction::Radau, Correction::G2] {
                for n in 1..=4 {
                    let o = ops(kind, n, c);
                    let expect = &o.d - &o.b_l * o.v_l.transpose() - &o.b_r * o.v_r.transpose();
                    assert!((&o.d1 - expect).amax() < 1e-13);
                    let ones = DVector::from_element(o.n_points(), 1.0);
                    let lhs = &o.d1 * &ones;
                    let rhs = -(&o.b_l + &o.b_r);
                    assert!((lhs - rhs).amax() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn dfr_matches_radau() {
        for n in 1..=4 {
            let fr = ops(PointKind::Gl, n, Correction::Radau);
            let dfr = ops(PointKind::Gl, n, Correction::Dfr);
            assert!((&fr.b_l - &dfr.b_l).amax() < 1e-12);
            assert!((&fr.b_r - &dfr.b_r).amax() < 1e-12);
            assert!((&fr.d1 - &dfr.d1).amax() < 1e-12);
        }
    }

    #[test]
    fn dfr_rejects_lobatto() {
        let p = build_solution_points(PointKind::Gll, 2).unwrap();
        assert!(matches!(build_operators(&p, Correction::Dfr), Err(Error::Config(_))));
    }

    #[test]
    fn mirror_symmetry() {
        for kind in [PointKind::Gl, PointKind::Gll] {
            for c in [Correction::Radau, Correction::G2] {
                for n in 1..=4 {
                    let o = ops(kind, n, c);
                    let m = o.n_points();
                    for j in 0..m {
                        assert!((o.b_r[j] + o.b_l[m - 1 - j]).abs() < 1e-12);
                        assert!((o.v_r[j] - o.v_l[m - 1 - j]).abs() < 1e-14);
                        for i in 0..m {
                            assert!((o.d[(i, j)] + o.d[(m - 1 - i, m - 1 - j)]).abs() < 1e-11);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn flux_derivative_reduces_to_d_on_extrapolated_faces() {
        let o = ops(PointKind::Gl, 3, Correction::Radau);
        let f = [0.3, -1.2, 0.7, 2.0];
        let fl: f64 = o.v_l.iter().zip(&f).map(|(a, b)| a * b).sum();
        let fr: f64 = o.v_r.iter().zip(&f).map(|(a, b)| a * b).sum();
        let got = o.flux_derivative(&f, fl, fr);
        for i in 0..4 {
            let df: f64 = (0..4).map(|j| o.d[(i, j)] * f[j]).sum();
            assert!((got[i] - df).abs() < 1e-12);
        }
        let c = o.flux_derivative(&[1.5; 4], 1.5, 1.5);
        assert!(c.iter().all(|v| v.abs() < 1e-13));
    }

    #[test]
    fn cache_returns_shared_instance() {
        let a = ReferenceOperators::cached(PointKind::Gl, 2, Correction::G2).unwrap();
        let b = ReferenceOperators::cached(PointKind::Gl, 2, Correction::G2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
