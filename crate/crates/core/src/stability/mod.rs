//! Fourier stability analysis of the LW scheme for linear advection with
//! positive speed.

pub mod tables;
mod two_d;

pub use two_d::{
    amplification_2d, assemble_2d, find_cfl_2d, max_amplification_2d, scan_region_2d, Assembly2d,
    KappaGrid, StabilityRegion2D,
};

use nalgebra::{Complex, DMatrix, Schur};

use crate::basis::ReferenceOperators;
use crate::error::{Error, Result};
use crate::numflux::Dissipation;

pub type C64 = Complex<f64>;

/// Largest amplification accepted as stable. At degree 4 the scheme has a
/// weak growth of up to 1.5e-5 per step at every CFL number below the limit,
/// which this bound tolerates; past the limit the growth jumps above 1e-3.
pub const STABLE_THRESHOLD: f64 = 1.0 + 5e-5;
/// Uniform wavenumber samples on [0, 2pi].
pub const KAPPA_SAMPLES: usize = 129;
/// Extra samples placed around the worst wavenumber.
pub const KAPPA_REFINE: usize = 33;

/// `T = sum_{m=0}^{N} (-sigma D)^m / (m+1)!`.
pub fn taylor_matrix(ops: &ReferenceOperators, sigma: f64) -> DMatrix<f64> {
    taylor_series(&(-sigma * &ops.d), ops.degree())
}

pub(crate) fn taylor_series(h: &DMatrix<f64>, degree: usize) -> DMatrix<f64> {
    let n = h.nrows();
    let mut term = DMatrix::identity(n, n);
    let mut t = DMatrix::identity(n, n);
    let mut fact = 1.0;
    for m in 1..=degree {
        term = &term * h;
        fact *= (m + 1) as f64;
        t += &term / fact;
    }
    t
}

/// Operator pieces of the face coupling, expressed before the Taylor factor
/// is applied. Each entry is `(P, alpha, beta)` meaning `P (alpha T + beta I)`.
pub(crate) struct Stencil {
    pub minus: Vec<(DMatrix<f64>, f64, f64)>,
    pub zero: Vec<(DMatrix<f64>, f64, f64)>,
    pub plus: Vec<(DMatrix<f64>, f64, f64)>,
}

pub(crate) fn stencil(ops: &ReferenceOperators, dissipation: Dissipation) -> Stencil {
    let bl_vr = &ops.b_l * ops.v_r.transpose();
    let bl_vl = &ops.b_l * ops.v_l.transpose();
    let br_vr = &ops.b_r * ops.v_r.transpose();
    let br_vl = &ops.b_r * ops.v_l.transpose();
    match dissipation {
        Dissipation::D2 => Stencil {
            minus: vec![(bl_vr, 1.0, 0.0)],
            zero: vec![(&ops.d - bl_vl, 1.0, 0.0)],
            plus: vec![],
        },
        Dissipation::D1 => Stencil {
            minus: vec![(bl_vr, 0.5, 0.5)],
            zero: vec![
                (ops.d.clone(), 1.0, 0.0),
                (-bl_vl, 0.5, 0.5),
                (-br_vr, 0.5, -0.5),
            ],
            plus: vec![(br_vl, 0.5, -0.5)],
        },
    }
}

pub(crate) fn apply_pieces(
    pieces: &[(DMatrix<f64>, f64, f64)],
    lift: impl Fn(&DMatrix<f64>) -> DMatrix<f64>,
    t: &DMatrix<f64>,
) -> DMatrix<f64> {
    let n = t.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let mut out = DMatrix::zeros(n, n);
    for (p, a, b) in pieces {
        out += lift(p) * (t * *a + &id * *b);
    }
    out
}

/// One-dimensional amplification data for a fixed CFL number.
#[derive(Clone, Debug)]
pub struct Assembly1d {
    pub sigma: f64,
    pub t: DMatrix<f64>,
    pub a_minus: DMatrix<f64>,
    pub a_zero: DMatrix<f64>,
    pub a_plus: DMatrix<f64>,
}

pub fn assemble_1d(ops: &ReferenceOperators, dissipation: Dissipation, sigma: f64) -> Assembly1d {
    let t = taylor_matrix(ops, sigma);
    let s = stencil(ops, dissipation);
    let id = |m: &DMatrix<f64>| m.clone();
    Assembly1d {
        sigma,
        a_minus: apply_pieces(&s.minus, id, &t),
        a_zero: apply_pieces(&s.zero, id, &t),
        a_plus: apply_pieces(&s.plus, id, &t),
        t,
    }
}

impl Assembly1d {
    /// `H = I - sigma (A0 + A-1 e^{-i kappa} + A+1 e^{i kappa})`.
    pub fn amplification(&self, kappa: f64) -> DMatrix<C64> {
        let n = self.t.nrows();
        let em = C64::from_polar(1.0, -kappa);
        let ep = C64::from_polar(1.0, kappa);
        DMatrix::from_fn(n, n, |i, j| {
            let id = if i == j { 1.0 } else { 0.0 };
            C64::new(id - self.sigma * self.a_zero[(i, j)], 0.0)
                - em * self.sigma * self.a_minus[(i, j)]
                - ep * self.sigma * self.a_plus[(i, j)]
        })
    }

    /// Real matrix of one step on a periodic mesh of `cells` elements.
    pub fn periodic_update_matrix(&self, cells: usize) -> DMatrix<f64> {
        let n = self.t.nrows();
        let mut g = DMatrix::zeros(n * cells, n * cells);
        for e in 0..cells {
            let l = (e + cells - 1) % cells;
            let r = (e + 1) % cells;
            for i in 0..n {
                g[(e * n + i, e * n + i)] += 1.0;
                for j in 0..n {
                    g[(e * n + i, e * n + j)] -= self.sigma * self.a_zero[(i, j)];
                    g[(e * n + i, l * n + j)] -= self.sigma * self.a_minus[(i, j)];
                    g[(e * n + i, r * n + j)] -= self.sigma * self.a_plus[(i, j)];
                }
            }
        }
        g
    }
}

/// Eigenvalues of a complex matrix via the Schur form.
pub fn eigenvalues(m: DMatrix<C64>) -> Result<Vec<C64>> {
    let n = m.nrows();
    let schur = Schur::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

pub fn spectral_radius(m: DMatrix<C64>) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Maximum spectral radius over a sampled wavenumber set with local
/// refinement around the worst sample.
pub fn max_amplification_1d(
    ops: &ReferenceOperators,
    dissipation: Dissipation,
    sigma: f64,
    n_samples: usize,
) -> Result<f64> {
    if n_samples < 2 {
        return Err(Error::Analysis("need at least two wavenumber samples".into()));
    }
    let asm = assemble_1d(ops, dissipation, sigma);
    let h = 2.0 * std::f64::consts::PI / (n_samples - 1) as f64;
    let mut best = (0.0, 0.0);
    for k in 0..n_samples {
        let kappa = k as f64 * h;
        let r = spectral_radius(asm.amplification(kappa))?;
        if r > best.0 {
            best = (r, kappa);
        }
    }
    for k in 0..KAPPA_REFINE {
        let kappa = best.1 - h + 2.0 * h * k as f64 / (KAPPA_REFINE - 1) as f64;
        let r = spectral_radius(asm.amplification(kappa))?;
        best.0 = best.0.max(r);
    }
    Ok(best.0)
}

/// Largest stable value of a monotone-in-practice stability predicate, by a
/// uniform sweep of width `step` on (0, `upper`] followed by bisection.
pub(crate) fn sweep_then_bisect(
    mut stable: impl FnMut(f64) -> Result<bool>,
    step: f64,
    upper: f64,
    tol: f64,
) -> Result<f64> {
    let mut lo = 0.0;
    let mut hi = None;
    let mut s = step;
    while s <= upper + 1e-12 {
        if stable(s)? {
            lo = s;
        } else {
            hi = Some(s);
            break;
        }
        s += step;
    }
    let Some(mut hi) = hi else {
        return Ok(lo);
    };
    if lo == 0.0 && !stable(step * 1e-3)? {
        return Err(Error::Analysis("no stable CFL number found".into()));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if stable(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// CFL limit of the 1-D scheme. The result is the stable end of a bracket of
/// width at most `tol`.
pub fn find_cfl(ops: &ReferenceOperators, dissipation: Dissipation, tol: f64) -> Result<f64> {
    let limit = STABLE_THRESHOLD;
    let cfl = sweep_then_bisect(
        |s| Ok(max_amplification_1d(ops, dissipation, s, KAPPA_SAMPLES)? <= limit),
        0.01,
        2.0,
        tol,
    )?;
    if cfl >= 2.0 {
        return Err(Error::Analysis("stable for every CFL number in (0, 2]".into()));
    }
    Ok(cfl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{Correction, PointKind};

    fn ops(n: usize, c: Correction) -> ReferenceOperators {
        ReferenceOperators::new(PointKind::Gl, n, c).unwrap()
    }

    #[test]
    fn zero_sigma_is_identity() {
        let o = ops(3, Correction::Radau);
        for d in [Dissipation::D1, Dissipation::D2] {
            let a = assemble_1d(&o, d, 0.0);
            for k in [0.0, 1.0, 3.0] {
                let h = a.amplification(k);
                let id = DMatrix::<C64>::identity(4, 4);
                assert!((h - id).iter().all(|z| z.norm() < 1e-15));
            }
            assert_eq!(max_amplification_1d(&o, d, 0.0, 65).unwrap(), 1.0);
        }
    }

    #[test]
    fn constant_mode_is_preserved() {
        for n in 1..=4 {
            let o = ops(n, Correction::G2);
            for d in [Dissipation::D1, Dissipation::D2] {
                let a = assemble_1d(&o, d, 0.05);
                let h = a.amplification(0.0);
                let ones = DMatrix::<C64>::from_element(n + 1, 1, C64::new(1.0, 0.0));
                let hv = &h * &ones;
                assert!((hv - ones).iter().all(|z| z.norm() < 1e-12));
            }
        }
    }

    #[test]
    fn d2_degree_one_radau_threshold() {
        let o = ops(1, Correction::Radau);
        assert!(max_amplification_1d(&o, Dissipation::D2, 0.33, 129).unwrap() <= STABLE_THRESHOLD);
        assert!(max_amplification_1d(&o, Dissipation::D2, 0.34, 129).unwrap() > STABLE_THRESHOLD);
    }

    #[test]
    fn d1_degree_two_g2_threshold() {
        let o = ops(2, Correction::G2);
        assert!(max_amplification_1d(&o, Dissipation::D1, 0.204, 129).unwrap() <= 1.0 + 5e-4);
        assert!(max_amplification_1d(&o, Dissipation::D1, 0.214, 129).unwrap() > 1.0);
    }

    #[test]
    fn amplification_grows_near_the_limit() {
        let o = ops(2, Correction::Radau);
        let vals: Vec<f64> = (0..5)
            .map(|k| max_amplification_1d(&o, Dissipation::D2, 0.168 + 0.002 * k as f64, 129).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    }

    #[test]
    fn global_matrix_spectrum_is_union_of_symbols() {
        let o = ops(2, Correction::Radau);
        for d in [Dissipation::D1, Dissipation::D2] {
            let a = assemble_1d(&o, d, 0.12);
            let cells = 8;
            let g = a.periodic_update_matrix(cells);
            let mut global: Vec<C64> = g.complex_eigenvalues().iter().cloned().collect();
            let mut local = Vec::new();
            for j in 0..cells {
                let kappa = 2.0 * std::f64::consts::PI * j as f64 / cells as f64;
                local.extend(eigenvalues(a.amplification(kappa)).unwrap());
            }
            assert_eq!(global.len(), local.len());
            for z in &local {
                let (idx, dist) = global
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (i, (w - z).norm()))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                assert!(dist < 1e-10, "{d}: {z} missing ({dist})");
                global.swap_remove(idx);
            }
        }
    }

    #[test]
    fn table_entries() {
        assert!((find_cfl(&ops(3, Correction::Radau), Dissipation::D2, 1e-3).unwrap() - 0.103).abs() <= 0.002);
        assert!((find_cfl(&ops(3, Correction::G2), Dissipation::D1, 1e-3).unwrap() - 0.116).abs() <= 0.002);
        assert!((find_cfl(&ops(1, Correction::G2), Dissipation::D2, 1e-3).unwrap() - 1.000).abs() <= 0.002);
    }
}
