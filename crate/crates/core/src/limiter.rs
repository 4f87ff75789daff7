//! A posteriori limiting: TVD/TVB minmod on conserved or characteristic
//! variables and a scaling limiter for positivity and scalar bounds.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::basis::{Kernel, MAX_POINTS};
use crate::equations::euler::gas_pressure;
use crate::equations::{ConservationLaw, EigenDecomposition, StateVec};
use crate::error::{config, Error, Result};
use crate::lw_core::face_trace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum LimiterKind {
    #[default]
    None,
    /// TVB-corrected minmod; `tvb_m = 0` gives the TVD limiter.
    Tvb,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LimiterConfig {
    #[serde(rename = "limiter")]
    pub kind: LimiterKind,
    pub tvb_m: f64,
    pub characteristic: bool,
    pub positivity: bool,
    pub eps: f64,
}

impl Default for LimiterConfig {
    fn default() -> Self {
        LimiterConfig {
            kind: LimiterKind::None,
            tvb_m: 0.0,
            characteristic: true,
            positivity: false,
            eps: 1e-13,
        }
    }
}

impl LimiterConfig {
    pub fn tvb(m: f64) -> Self {
        LimiterConfig {
            kind: LimiterKind::Tvb,
            tvb_m: m,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tvb_m >= 0.0) {
            return config(format!("tvb_m must be non-negative, got {}", self.tvb_m));
        }
        if !(self.eps > 0.0) {
            return config(format!("positivity eps must be positive, got {}", self.eps));
        }
        Ok(())
    }

    pub fn is_active(&self) -> bool {
        self.kind != LimiterKind::None || self.positivity
    }
}

pub fn minmod(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

pub fn tvb_minmod(a: f64, b: f64, c: f64, m: f64, dx: f64) -> f64 {
    if a.abs() <= m * dx * dx {
        a
    } else {
        minmod(a, b, c)
    }
}

/// Quadrature mean of the nodal values.
pub fn cell_average<S: StateVec>(k: &Kernel, u: &[S]) -> S {
    let mut acc = S::zero();
    for j in 0..k.n {
        acc = acc.axpy(k.weights[j], u[j]);
    }
    acc
}

/// Mean of a 2-D element with flat index `i + n j`.
pub fn cell_average_2d<S: StateVec>(k: &Kernel, u: &[S]) -> S {
    let n = k.n;
    let mut acc = S::zero();
    for j in 0..n {
        for i in 0..n {
            acc = acc.axpy(k.weights[i] * k.weights[j], u[i + n * j]);
        }
    }
    acc
}

fn to_vec<S: StateVec>(s: &S) -> DVector<f64> {
    DVector::from_column_slice(s.as_slice())
}

fn from_vec<S: StateVec>(v: &DVector<f64>) -> S {
    S::from_slice(v.as_slice())
}

fn usable(e: &EigenDecomposition) -> bool {
    e.l.iter().chain(e.r.iter()).all(|x| x.is_finite())
}

/// Limits the inner differences `dm`, `dp` against the neighbour-mean
/// differences `bm`, `bp`. Returns the limited average slope when any
/// component was modified.
fn limited_slope<L: ConservationLaw>(
    law: &L,
    mean: &L::State,
    dir: usize,
    [dm, dp, bm, bp]: [L::State; 4],
    cfg: &LimiterConfig,
    h: f64,
) -> Option<L::State> {
    let eig = if cfg.characteristic && L::State::LEN > 1 {
        law.eigen(mean, dir).ok().filter(usable)
    } else {
        None
    };
    let (dm, dp, bm, bp) = match &eig {
        Some(e) => {
            let t = |s: L::State| from_vec::<L::State>(&(&e.l * to_vec(&s)));
            (t(dm), t(dp), t(bm), t(bp))
        }
        None => (dm, dp, bm, bp),
    };
    // round-off sized changes do not count as limiting
    let floor = 1e-13 * (1.0 + mean.max_abs());
    let mut changed = false;
    let mut slope = L::State::zero();
    for c in 0..L::State::LEN {
        let lm = tvb_minmod(dm[c], bm[c], bp[c], cfg.tvb_m, h);
        let lp = tvb_minmod(dp[c], bm[c], bp[c], cfg.tvb_m, h);
        let tol = floor + 1e-10 * dm[c].abs().max(dp[c].abs());
        changed |= (lm - dm[c]).abs() > tol || (lp - dp[c]).abs() > tol;
        slope[c] = 0.5 * (lm + lp);
    }
    if !changed {
        return None;
    }
    Some(match &eig {
        Some(e) => from_vec(&(&e.r * to_vec(&slope))),
        None => slope,
    })
}

/// TVD/TVB limiter on one 1-D element given the neighbour means.
/// Returns true when the element was replaced by a linear polynomial.
pub fn tvd_limit_1d<L: ConservationLaw>(
    law: &L,
    k: &Kernel,
    u: &mut [L::State],
    mean_left: L::State,
    mean_right: L::State,
    dx: f64,
    cfg: &LimiterConfig,
) -> bool {
    let n = k.n;
    let mean = cell_average(k, u);
    let mut ul = L::State::zero();
    let mut ur = L::State::zero();
    for j in 0..n {
        ul = ul.axpy(k.v_l[j], u[j]);
        ur = ur.axpy(k.v_r[j], u[j]);
    }
    let diffs = [mean - ul, ur - mean, mean - mean_left, mean_right - mean];
    match limited_slope(law, &mean, 0, diffs, cfg, dx) {
        Some(s) => {
            for j in 0..n {
                u[j] = mean.axpy(2.0 * k.nodes[j] - 1.0, s);
            }
            true
        }
        None => false,
    }
}

/// Direction-by-direction limiter on a 2-D element. `neighbours` holds the
/// means of the left, right, bottom and top elements.
pub fn tvd_limit_2d<L: ConservationLaw>(
    law: &L,
    k: &Kernel,
    u: &mut [L::State],
    neighbours: [L::State; 4],
    h: [f64; 2],
    cfg: &LimiterConfig,
) -> bool {
    let n = k.n;
    let mean = cell_average_2d(k, u);
    let mut face_mean = [L::State::zero(); 4];
    for (face, fm) in face_mean.iter_mut().enumerate() {
        for line in 0..n {
            *fm = fm.axpy(k.weights[line], face_trace(k, u, face, line));
        }
    }
    let mut slopes = [None, None];
    for dir in 0..2 {
        let diffs = [
            mean - face_mean[2 * dir],
            face_mean[2 * dir + 1] - mean,
            mean - neighbours[2 * dir],
            neighbours[2 * dir + 1] - mean,
        ];
        slopes[dir] = limited_slope(law, &mean, dir, diffs, cfg, h[dir]);
    }
    if slopes[0].is_none() && slopes[1].is_none() {
        return false;
    }
    // a limited direction keeps its limited slope, the other keeps its mean slope
    let slope = |dir: usize| {
        slopes[dir].unwrap_or_else(|| (face_mean[2 * dir + 1] - face_mean[2 * dir]) * 0.5)
    };
    let (sx, sy) = (slope(0), slope(1));
    for j in 0..n {
        for i in 0..n {
            u[i + n * j] = mean.axpy(2.0 * k.nodes[i] - 1.0, sx).axpy(2.0 * k.nodes[j] - 1.0, sy);
        }
    }
    true
}

/// Check points for the scaling limiter: solution points and face points.
fn check_points<S: StateVec>(k: &Kernel, u: &[S], two_d: bool, out: &mut Vec<S>) {
    out.clear();
    let n = k.n;
    if two_d {
        out.extend_from_slice(&u[..n * n]);
        for face in 0..4 {
            for line in 0..n {
                out.push(face_trace(k, u, face, line));
            }
        }
    } else {
        out.extend_from_slice(&u[..n]);
        let mut ul = S::zero();
        let mut ur = S::zero();
        for j in 0..n {
            ul = ul.axpy(k.v_l[j], u[j]);
            ur = ur.axpy(k.v_r[j], u[j]);
        }
        out.push(ul);
        out.push(ur);
    }
}

/// Largest `theta` in [0, 1] keeping density and pressure of
/// `mean + theta (v - mean)` at or above `eps`.
fn gas_theta<S: StateVec>(gamma: f64, mean: &S, v: &S, eps: f64) -> f64 {
    let ok = |th: f64| {
        let w = mean.axpy(th, *v - *mean);
        w[0] >= eps && gas_pressure(gamma, &w) >= eps
    };
    if ok(1.0) {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Scales the element towards its mean so that every check point is
/// admissible: positive density and pressure for gas laws, the invariant
/// interval for bounded scalar laws. Returns the scaling factor.
pub fn positivity_scale<L: ConservationLaw>(
    law: &L,
    k: &Kernel,
    u: &mut [L::State],
    two_d: bool,
    eps: f64,
) -> Result<f64> {
    let nodes = if two_d { k.n * k.n } else { k.n };
    let mean = if two_d { cell_average_2d(k, u) } else { cell_average(k, u) };
    let mut pts = Vec::with_capacity(MAX_POINTS * MAX_POINTS + 4 * MAX_POINTS);
    check_points(k, u, two_d, &mut pts);
    let theta = if let Some(gamma) = law.gamma() {
        let p_mean = gas_pressure(gamma, &mean);
        if !(mean[0] > 0.0 && p_mean > 0.0) {
            return Err(Error::Positivity {
                location: "cell average".into(),
                density: mean[0],
                pressure: p_mean,
            });
        }
        let e = eps.min(mean[0]).min(p_mean);
        pts.iter().map(|v| gas_theta(gamma, &mean, v, e)).fold(1.0, f64::min)
    } else if let Some((lo, hi)) = law.bounds() {
        let m = mean[0];
        let tol = 1e-12;
        if m < lo - tol || m > hi + tol || !m.is_finite() {
            return Err(Error::Numerical(format!("cell average {m} outside [{lo}, {hi}]")));
        }
        let (vmin, vmax) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v[0]), b.max(v[0])));
        let mut th: f64 = 1.0;
        if vmax > hi {
            th = th.min(((hi - m) / (vmax - m)).max(0.0));
        }
        if vmin < lo {
            th = th.min(((m - lo) / (m - vmin)).max(0.0));
        }
        th
    } else {
        return Ok(1.0);
    };
    if theta < 1.0 {
        for v in u.iter_mut().take(nodes) {
            *v = mean.axpy(theta, *v - mean);
        }
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{Correction, PointKind, ReferenceOperators};
    use crate::equations::{BuckleyLeverett, Burgers1d, Euler1d, Vars};

    fn kernel(degree: usize) -> Kernel {
        ReferenceOperators::new(PointKind::Gl, degree, Correction::Radau).unwrap().kernel().unwrap()
    }

    #[test]
    fn minmod_values() {
        assert_eq!(minmod(0.5, 1.0, 2.0), 0.5);
        assert_eq!(minmod(-1.0, 2.0, 3.0), 0.0);
        assert_eq!(minmod(-1.0, -0.2, -3.0), -0.2);
        assert_eq!(tvb_minmod(0.001, -5.0, 7.0, 100.0, 0.01), 0.001);
        assert_eq!(tvb_minmod(0.5, -5.0, 7.0, 0.0, 0.01), minmod(0.5, -5.0, 7.0));
    }

    #[test]
    fn linear_data_is_unchanged() {
        let k = kernel(2);
        let mut u: Vec<Vars<1>> = (0..k.n).map(|j| Vars([1.0 + 0.2 * (2.0 * k.nodes[j] - 1.0)])).collect();
        let before = u.clone();
        let cfg = LimiterConfig::tvb(0.0);
        assert!(!tvd_limit_1d(&Burgers1d, &k, &mut u, Vars([0.5]), Vars([1.5]), 0.1, &cfg));
        assert_eq!(u, before);
    }

    #[test]
    fn jump_cell_is_replaced_and_mean_kept() {
        let k = kernel(3);
        let mut u: Vec<Vars<1>> = (0..k.n).map(|j| Vars([if k.nodes[j] < 0.5 { 0.0 } else { 1.0 }])).collect();
        let mean = cell_average(&k, &u);
        let cfg = LimiterConfig::tvb(0.0);
        assert!(tvd_limit_1d(&Burgers1d, &k, &mut u, Vars([0.4]), Vars([0.6]), 0.1, &cfg));
        assert!((cell_average(&k, &u) - mean).max_abs() < 1e-14);
        let once = u.clone();
        tvd_limit_1d(&Burgers1d, &k, &mut u, Vars([0.4]), Vars([0.6]), 0.1, &cfg);
        for j in 0..k.n {
            assert!((u[j] - once[j]).max_abs() < 1e-14);
        }
        let mut v: Vec<Vars<1>> = (0..k.n).map(|j| Vars([0.01 * k.nodes[j] * k.nodes[j]])).collect();
        let orig = v.clone();
        assert!(!tvd_limit_1d(&Burgers1d, &k, &mut v, Vars([5.0]), Vars([5.0]), 0.1, &LimiterConfig::tvb(1e4)));
        assert_eq!(v, orig);
    }

    #[test]
    fn characteristic_limiting_keeps_constant_state() {
        let e = Euler1d::default();
        let k = kernel(2);
        let c = e.conservative(1.0, 0.3, 2.0);
        let mut u = vec![c; k.n];
        let cfg = LimiterConfig::tvb(0.0);
        assert!(!tvd_limit_1d(&e, &k, &mut u, c, c, 0.1, &cfg));
        let eig = e.eigen(&c, 0).unwrap();
        let id = &eig.l * &eig.r;
        assert!((id - nalgebra::DMatrix::identity(3, 3)).abs().max() < 1e-12);
    }

    #[test]
    fn positivity_restores_density() {
        let e = Euler1d::default();
        let k = kernel(2);
        let mut u = vec![e.conservative(1.5, 0.0, 1.0), e.conservative(1.5, 0.0, 1.0), e.conservative(1.5, 0.0, 1.0)];
        u[0][0] = -0.1;
        u[0][2] = 2.0;
        let mean = cell_average(&k, &u);
        let th = positivity_scale(&e, &k, &mut u, false, 1e-13).unwrap();
        assert!(th < 1.0);
        let mut pts = Vec::new();
        check_points(&k, &u, false, &mut pts);
        for p in &pts {
            assert!(p[0] >= 1e-13 * 0.999 && gas_pressure(1.4, p) >= 1e-13 * 0.999);
        }
        assert!((cell_average(&k, &u) - mean).max_abs() < 1e-14);
    }

    #[test]
    fn bounded_scalar_scaling() {
        let k = ReferenceOperators::new(PointKind::Gll, 2, Correction::Radau).unwrap().kernel().unwrap();
        let mut u = vec![Vars([-0.05]), Vars([0.5]), Vars([1.02])];
        let mean = cell_average(&k, &u);
        positivity_scale(&BuckleyLeverett, &k, &mut u, false, 1e-13).unwrap();
        for v in &u {
            assert!(v[0] >= -1e-15 && v[0] <= 1.0 + 1e-15);
        }
        assert!((cell_average(&k, &u)[0] - mean[0]).abs() < 1e-14);
    }

    #[test]
    fn nonphysical_mean_is_fatal() {
        let e = Euler1d::default();
        let k = kernel(1);
        let mut u = vec![Vars([-1.0, 0.0, 1.0]); 2];
        assert!(matches!(positivity_scale(&e, &k, &mut u, false, 1e-13), Err(Error::Positivity { .. })));
    }

    #[test]
    fn two_d_limiter_keeps_mean() {
        let k = kernel(2);
        let n = k.n;
        let mut u: Vec<Vars<1>> = (0..n * n)
            .map(|p| {
                let (x, y) = (k.nodes[p % n], k.nodes[p / n]);
                Vars([if x + y > 1.0 { 1.0 } else { 0.0 }])
            })
            .collect();
        let mean = cell_average_2d(&k, &u);
        let cfg = LimiterConfig::tvb(0.0);
        let nb = [Vars([0.0]), Vars([1.0]), Vars([0.0]), Vars([1.0])];
        assert!(tvd_limit_2d(&Burgers1d, &k, &mut u, nb, [0.1, 0.1], &cfg));
        assert!((cell_average_2d(&k, &u) - mean).max_abs() < 1e-14);
    }
}
