use nalgebra::DMatrix;
use std::f64::consts::PI;

use super::{
    apply_pieces, find_cfl, spectral_radius, stencil, sweep_then_bisect, taylor_series, C64,
    STABLE_THRESHOLD,
};
use crate::basis::ReferenceOperators;
use crate::error::Result;
use crate::numflux::Dissipation;

/// Wavenumber sampling for the 2-D analysis. `kappa1` covers [0, 2pi),
/// `kappa2` covers [0, pi]; the other half-plane follows by conjugation.
#[derive(Clone, Copy, Debug)]
pub struct KappaGrid {
    pub n1: usize,
    pub n2: usize,
    pub refine: usize,
}

impl Default for KappaGrid {
    fn default() -> Self {
        KappaGrid {
            n1: 32,
            n2: 17,
            refine: 9,
        }
    }
}

/// Coupling blocks of the 2-D amplification matrix for fixed CFL numbers.
#[derive(Clone, Debug)]
pub struct Assembly2d {
    pub sigma1: f64,
    pub sigma2: f64,
    pub t: DMatrix<f64>,
    pub x_minus: DMatrix<f64>,
    pub x_zero: DMatrix<f64>,
    pub x_plus: DMatrix<f64>,
    pub y_minus: DMatrix<f64>,
    pub y_zero: DMatrix<f64>,
    pub y_plus: DMatrix<f64>,
}

/// Unknowns are numbered `k = i + (N+1) j` with `i` along x.
fn lift_x(a: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::<f64>::identity(a.nrows(), a.nrows()).kronecker(a)
}

fn lift_y(a: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(&DMatrix::<f64>::identity(a.nrows(), a.nrows()))
}

pub fn assemble_2d(
    ops: &ReferenceOperators,
    dissipation: Dissipation,
    sigma1: f64,
    sigma2: f64,
) -> Assembly2d {
    let h1 = -sigma1 * lift_x(&ops.d) - sigma2 * lift_y(&ops.d);
    let t = taylor_series(&h1, ops.degree());
    let s = stencil(ops, dissipation);
    Assembly2d {
        sigma1,
        sigma2,
        x_minus: apply_pieces(&s.minus, lift_x, &t),
        x_zero: apply_pieces(&s.zero, lift_x, &t),
        x_plus: apply_pieces(&s.plus, lift_x, &t),
        y_minus: apply_pieces(&s.minus, lift_y, &t),
        y_zero: apply_pieces(&s.zero, lift_y, &t),
        y_plus: apply_pieces(&s.plus, lift_y, &t),
        t,
    }
}

impl Assembly2d {
    pub fn amplification(&self, kappa1: f64, kappa2: f64) -> DMatrix<C64> {
        let n = self.t.nrows();
        let (em1, ep1) = (C64::from_polar(1.0, -kappa1), C64::from_polar(1.0, kappa1));
        let (em2, ep2) = (C64::from_polar(1.0, -kappa2), C64::from_polar(1.0, kappa2));
        let (s1, s2) = (self.sigma1, self.sigma2);
        DMatrix::from_fn(n, n, |i, j| {
            let id = if i == j { 1.0 } else { 0.0 };
            C64::new(id - s1 * self.x_zero[(i, j)] - s2 * self.y_zero[(i, j)], 0.0)
                - em1 * (s1 * self.x_minus[(i, j)])
                - ep1 * (s1 * self.x_plus[(i, j)])
                - em2 * (s2 * self.y_minus[(i, j)])
                - ep2 * (s2 * self.y_plus[(i, j)])
        })
    }
}

/// `H(sigma1, sigma2; kappa1, kappa2)` for the upwind (D2) scheme.
pub fn amplification_2d(
    ops: &ReferenceOperators,
    sigma1: f64,
    sigma2: f64,
    kappa1: f64,
    kappa2: f64,
) -> DMatrix<C64> {
    assemble_2d(ops, Dissipation::D2, sigma1, sigma2).amplification(kappa1, kappa2)
}

pub fn max_amplification_2d(
    ops: &ReferenceOperators,
    dissipation: Dissipation,
    sigma1: f64,
    sigma2: f64,
    grid: KappaGrid,
) -> Result<f64> {
    let asm = assemble_2d(ops, dissipation, sigma1, sigma2);
    let h1 = 2.0 * PI / grid.n1 as f64;
    let h2 = PI / (grid.n2 - 1).max(1) as f64;
    let mut best = (0.0, 0.0, 0.0);
    for a in 0..grid.n1 {
        for b in 0..grid.n2 {
            let (k1, k2) = (a as f64 * h1, b as f64 * h2);
            let r = spectral_radius(asm.amplification(k1, k2))?;
            if r > best.0 {
                best = (r, k1, k2);
            }
        }
    }
    if grid.refine > 1 {
        let m = (grid.refine - 1) as f64;
        for a in 0..grid.refine {
            for b in 0..grid.refine {
                let k1 = best.1 - h1 + 2.0 * h1 * a as f64 / m;
                let k2 = best.2 - h2 + 2.0 * h2 * b as f64 / m;
                let r = spectral_radius(asm.amplification(k1, k2))?;
                best.0 = best.0.max(r);
            }
        }
    }
    Ok(best.0)
}

/// Diagonal CFL number `2c`, where `c` is the largest stable `sigma1 = sigma2`.
pub fn find_cfl_2d(
    ops: &ReferenceOperators,
    dissipation: Dissipation,
    grid: KappaGrid,
    tol: f64,
) -> Result<f64> {
    let axis = find_cfl(ops, dissipation, 1e-3)?;
    let limit = STABLE_THRESHOLD;
    let c = sweep_then_bisect(
        |c| Ok(max_amplification_2d(ops, dissipation, c, c, grid)? <= limit),
        axis / 40.0,
        1.2 * axis,
        0.5 * tol,
    )?;
    Ok(2.0 * c)
}

/// Stability flags on a uniform `(sigma1, sigma2)` grid.
#[derive(Clone, Debug)]
pub struct StabilityRegion2D {
    pub sigma1: Vec<f64>,
    pub sigma2: Vec<f64>,
    /// Row-major over `(sigma2, sigma1)`.
    pub stable: Vec<bool>,
    pub cfl_2d: f64,
}

impl StabilityRegion2D {
    pub fn is_stable(&self, i1: usize, i2: usize) -> bool {
        self.stable[i2 * self.sigma1.len() + i1]
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("sigma1,sigma2,stable\n");
        for (i2, s2) in self.sigma2.iter().enumerate() {
            for (i1, s1) in self.sigma1.iter().enumerate() {
                s.push_str(&format!(
                    "{:.16e},{:.16e},{}\n",
                    s1,
                    s2,
                    u8::from(self.is_stable(i1, i2))
                ));
            }
        }
        s
    }
}

/// Scans `[0, 1.1 cfl_1d]^2` with `resolution` points per axis.
pub fn scan_region_2d(
    ops: &ReferenceOperators,
    dissipation: Dissipation,
    resolution: usize,
    grid: KappaGrid,
) -> Result<StabilityRegion2D> {
    let axis = find_cfl(ops, dissipation, 1e-3)?;
    let top = 1.1 * axis;
    let pts: Vec<f64> = (0..resolution)
        .map(|k| top * k as f64 / (resolution - 1).max(1) as f64)
        .collect();
    let limit = STABLE_THRESHOLD;
    let mut stable = Vec::with_capacity(resolution * resolution);
    for &s2 in &pts {
        for &s1 in &pts {
            stable.push(max_amplification_2d(ops, dissipation, s1, s2, grid)? <= limit);
        }
    }
    let cfl_2d = find_cfl_2d(ops, dissipation, grid, 1e-3)?;
    Ok(StabilityRegion2D {
        sigma1: pts.clone(),
        sigma2: pts,
        stable,
        cfl_2d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{Correction, PointKind};
    use crate::stability::{assemble_1d, eigenvalues};

    fn ops(n: usize, c: Correction) -> ReferenceOperators {
        ReferenceOperators::new(PointKind::Gl, n, c).unwrap()
    }

    #[test]
    fn zero_sigma_is_identity() {
        let o = ops(2, Correction::Radau);
        let h = amplification_2d(&o, 0.0, 0.0, 0.7, 2.1);
        assert!((h - DMatrix::<C64>::identity(9, 9)).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn one_direction_reduces_to_1d() {
        let o = ops(2, Correction::Radau);
        for d in [Dissipation::D1, Dissipation::D2] {
            let k = 1.3;
            let a1 = assemble_1d(&o, d, 0.11);
            let mut e1: Vec<f64> = eigenvalues(a1.amplification(k)).unwrap().iter().map(|z| z.norm()).collect();
            let h2 = assemble_2d(&o, d, 0.11, 0.0).amplification(k, 0.4);
            let mut e2: Vec<f64> = eigenvalues(h2).unwrap().iter().map(|z| z.norm()).collect();
            e1.sort_by(|a, b| a.partial_cmp(b).unwrap());
            e2.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (i, v) in e2.iter().enumerate() {
                assert!((v - e1[i / 3]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn small_region_contains_axes() {
        let o = ops(1, Correction::Radau);
        let r = scan_region_2d(&o, Dissipation::D2, 6, KappaGrid { n1: 16, n2: 9, refine: 5 }).unwrap();
        assert!(r.is_stable(0, 0));
        assert!((r.cfl_2d - 0.259).abs() <= 0.003);
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 37);
    }
}
