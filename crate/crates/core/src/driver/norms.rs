use serde::Serialize;

use crate::basis::points::gauss_legendre;
use crate::basis::ReferenceOperators;
use crate::equations::{Point, StateVec};

use super::mesh::{Mesh1d, Mesh2d};

/// Error norms per variable. `l1` and `l2` are normalized by the domain
/// measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Norms {
    pub l1: Vec<f64>,
    pub l2: Vec<f64>,
    pub linf: Vec<f64>,
}

/// `(N + 3)`-point Gauss-Legendre rule on `[0, 1]` with the interpolation
/// matrix from the solution points.
#[derive(Clone, Debug)]
pub struct ErrorQuadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `interp[q][j]` is the `j`-th Lagrange basis function at node `q`.
    pub interp: Vec<Vec<f64>>,
}

impl ErrorQuadrature {
    pub fn new(ops: &ReferenceOperators) -> Self {
        let (x, w) = gauss_legendre(ops.degree() + 3);
        let nodes: Vec<f64> = x.iter().map(|x| 0.5 * (x + 1.0)).collect();
        let interp = nodes.iter().map(|&s| ops.lagrange_at(s)).collect();
        ErrorQuadrature {
            nodes,
            weights: w.iter().map(|w| 0.5 * w).collect(),
            interp,
        }
    }
}

struct Accumulator {
    l1: Vec<f64>,
    l2: Vec<f64>,
    linf: Vec<f64>,
}

impl Accumulator {
    fn new(len: usize) -> Self {
        Accumulator {
            l1: vec![0.0; len],
            l2: vec![0.0; len],
            linf: vec![0.0; len],
        }
    }

    fn add<S: StateVec>(&mut self, diff: S, w: f64) {
        for (v, d) in diff.as_slice().iter().enumerate() {
            let a = d.abs();
            self.l1[v] += w * a;
            self.l2[v] += w * a * a;
            self.linf[v] = self.linf[v].max(a);
        }
    }

    fn finish(self, measure: f64) -> Norms {
        Norms {
            l1: self.l1.iter().map(|x| x / measure).collect(),
            l2: self.l2.iter().map(|x| (x / measure).sqrt()).collect(),
            linf: self.linf,
        }
    }
}

pub fn norms_1d<S: StateVec>(q: &ErrorQuadrature, mesh: &Mesh1d, n: usize, u: &[S], exact: &dyn Fn(Point) -> S) -> Norms {
    let mut acc = Accumulator::new(S::LEN);
    for e in 0..mesh.cells() {
        let (x0, dx) = (mesh.x0(e), mesh.dx(e));
        let ue = &u[e * n..(e + 1) * n];
        for (qi, (s, w)) in q.nodes.iter().zip(&q.weights).enumerate() {
            let mut uh = S::zero();
            for j in 0..n {
                uh = uh.axpy(q.interp[qi][j], ue[j]);
            }
            acc.add(uh - exact([x0 + s * dx, 0.0]), w * dx);
        }
    }
    acc.finish(mesh.length())
}

pub fn norms_2d<S: StateVec>(q: &ErrorQuadrature, mesh: &Mesh2d, n: usize, u: &[S], exact: &dyn Fn(Point) -> S) -> Norms {
    let nn = n * n;
    let nq = q.nodes.len();
    let mut acc = Accumulator::new(S::LEN);
    let mut along_x = vec![S::zero(); nq * n];
    for jc in 0..mesh.ny() {
        for ic in 0..mesh.nx() {
            let c = ic + mesh.nx() * jc;
            let ue = &u[c * nn..(c + 1) * nn];
            let o = mesh.origin(ic, jc);
            let h = mesh.h(ic, jc);
            // interpolate along x first, then along y
            for qx in 0..nq {
                for j in 0..n {
                    let mut s = S::zero();
                    for i in 0..n {
                        s = s.axpy(q.interp[qx][i], ue[i + n * j]);
                    }
                    along_x[qx * n + j] = s;
                }
            }
            for qy in 0..nq {
                for qx in 0..nq {
                    let mut uh = S::zero();
                    for j in 0..n {
                        uh = uh.axpy(q.interp[qy][j], along_x[qx * n + j]);
                    }
                    let p = [o[0] + q.nodes[qx] * h[0], o[1] + q.nodes[qy] * h[1]];
                    acc.add(uh - exact(p), q.weights[qx] * q.weights[qy] * h[0] * h[1]);
                }
            }
        }
    }
    acc.finish(mesh.area())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{Correction, PointKind};
    use crate::equations::Vars;
    use std::f64::consts::PI;

    fn interpolate_1d(ops: &ReferenceOperators, mesh: &Mesh1d, f: impl Fn(f64) -> f64) -> Vec<Vars<1>> {
        let mut u = Vec::new();
        for e in 0..mesh.cells() {
            for &s in ops.nodes() {
                u.push(Vars([f(mesh.x0(e) + s * mesh.dx(e))]));
            }
        }
        u
    }

    #[test]
    fn exact_and_unit_offsets() {
        let ops = ReferenceOperators::new(PointKind::Gl, 2, Correction::Radau).unwrap();
        let q = ErrorQuadrature::new(&ops);
        let mesh = Mesh1d::uniform(0.0, 2.0, 5).unwrap();
        let u = interpolate_1d(&ops, &mesh, |x| x * x);
        let zero = norms_1d(&q, &mesh, 3, &u, &|p| Vars([p[0] * p[0]]));
        assert!(zero.l2[0] < 1e-14 && zero.linf[0] < 1e-14);
        let one = norms_1d(&q, &mesh, 3, &u, &|p| Vars([p[0] * p[0] - 1.0]));
        assert!((one.l2[0] - 1.0).abs() < 1e-13);
        assert!((one.linf[0] - 1.0).abs() < 1e-13);
        assert!((one.l1[0] - 1.0).abs() < 1e-13);
    }

    // Composite Simpson on 1000 panels as the reference for the L2 error of
    // the linear interpolant of sin(2 pi x) on 10 cells.
    #[test]
    fn interpolation_error_matches_dense_quadrature() {
        let ops = ReferenceOperators::new(PointKind::Gl, 1, Correction::Radau).unwrap();
        let q = ErrorQuadrature::new(&ops);
        let mesh = Mesh1d::uniform(0.0, 1.0, 10).unwrap();
        let f = |x: f64| (2.0 * PI * x).sin();
        let u = interpolate_1d(&ops, &mesh, f);
        let got = norms_1d(&q, &mesh, 2, &u, &|p| Vars([f(p[0])])).l2[0];
        let per_cell = 100;
        let mut total = 0.0;
        for e in 0..10 {
            let uh = |x: f64| ops.interpolate(&[u[2 * e][0], u[2 * e + 1][0]], (x - mesh.x0(e)) / mesh.dx(e));
            let h = mesh.dx(e) / per_cell as f64;
            for k in 0..per_cell {
                let a = mesh.x0(e) + k as f64 * h;
                let g = |x: f64| (uh(x) - f(x)).powi(2);
                total += h / 6.0 * (g(a) + 4.0 * g(a + 0.5 * h) + g(a + h));
            }
        }
        let reference = total.sqrt();
        assert!((got - reference).abs() < 0.01 * reference, "{got} vs {reference}");
    }

    #[test]
    fn two_d_polynomial_is_exact() {
        let ops = ReferenceOperators::new(PointKind::Gll, 2, Correction::G2).unwrap();
        let q = ErrorQuadrature::new(&ops);
        let mesh = Mesh2d::uniform([0.0, -1.0], [1.0, 1.0], [3, 4]).unwrap();
        let f = |p: Point| p[0] * p[0] * p[1] + 2.0;
        let mut u = Vec::new();
        for jc in 0..4 {
            for ic in 0..3 {
                let o = mesh.origin(ic, jc);
                let h = mesh.h(ic, jc);
                for j in 0..3 {
                    for i in 0..3 {
                        u.push(Vars([f([o[0] + ops.nodes()[i] * h[0], o[1] + ops.nodes()[j] * h[1]])]));
                    }
                }
            }
        }
        let n = norms_2d(&q, &mesh, 3, &u, &|p| Vars([f(p)]));
        assert!(n.linf[0] < 1e-14);
        let n = norms_2d(&q, &mesh, 3, &u, &|p| Vars([f(p) + 1.0]));
        assert!((n.l2[0] - 1.0).abs() < 1e-13);
    }
}
