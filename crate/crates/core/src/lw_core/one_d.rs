use super::ladders::{self, Term, TAYLOR};
use super::{FaceMode, Trace};
use crate::basis::{Kernel, MAX_POINTS};
use crate::equations::{ConservationLaw, StateVec};
use crate::error::Result;

/// Per-element scratch for the 1-D Lax-Wendroff procedure.
#[derive(Clone, Debug)]
pub struct Workspace1d<S: StateVec> {
    pub n: usize,
    /// `u_m[0]` is the solution, `u_m[m]` is `u^(m)`.
    pub u_m: [[S; MAX_POINTS]; MAX_POINTS],
    pub f_m: [[S; MAX_POINTS]; MAX_POINTS],
    /// Time-average solution and flux at the solution points.
    pub u_avg: [S; MAX_POINTS],
    pub f_avg: [S; MAX_POINTS],
    /// Left and right face traces.
    pub faces: [Trace<S>; 2],
}

impl<S: StateVec> Default for Workspace1d<S> {
    fn default() -> Self {
        Workspace1d {
            n: 0,
            u_m: [[S::zero(); MAX_POINTS]; MAX_POINTS],
            f_m: [[S::zero(); MAX_POINTS]; MAX_POINTS],
            u_avg: [S::zero(); MAX_POINTS],
            f_avg: [S::zero(); MAX_POINTS],
            faces: [Trace::default(); 2],
        }
    }
}

#[inline]
pub(crate) fn stencil_argument<S: StateVec>(base: S, ders: &[S], a: &[f64; 4]) -> S {
    let mut arg = base;
    for (q, d) in ders.iter().enumerate() {
        if a[q] != 0.0 {
            arg = arg.axpy(a[q], *d);
        }
    }
    arg
}

/// Evaluates `sum c f(arg)` for one stencil at one point, checking each
/// argument.
#[inline]
pub(crate) fn apply_stencil<L: ConservationLaw>(
    law: &L,
    x: [f64; 2],
    dir: usize,
    base: L::State,
    f_base: L::State,
    ders: &[L::State],
    terms: &[Term],
    label: impl Fn(usize) -> String,
) -> Result<L::State> {
    let mut acc = L::State::zero();
    for (k, term) in terms.iter().enumerate() {
        if term.is_base() {
            acc = acc.axpy(term.c, f_base);
        } else {
            let arg = stencil_argument(base, ders, &term.a);
            law.check_flux_argument(&arg).map_err(|e| e.at(label(k)))?;
            acc = acc.axpy(term.c, law.flux(x, &arg, dir));
        }
    }
    Ok(acc)
}

#[inline]
pub(crate) fn extrapolate<S: StateVec>(v: &[f64; MAX_POINTS], values: &[S], n: usize) -> S {
    let mut acc = S::zero();
    for i in 0..n {
        acc = acc.axpy(v[i], values[i]);
    }
    acc
}

/// Approximate Lax-Wendroff procedure on one element `[x0, x0 + dx]`.
///
/// Fills the time derivatives, the time averages `U` and `F` at the solution
/// points and the face traces. Face fluxes follow `mode`.
pub fn lw_element_1d<L: ConservationLaw>(
    law: &L,
    k: &Kernel,
    u: &[L::State],
    dt: f64,
    x0: f64,
    dx: f64,
    mode: FaceMode,
    ws: &mut Workspace1d<L::State>,
) -> Result<()> {
    let degree = k.degree;
    let ladder = ladders::nodal(degree)?;
    let n = k.n;
    ws.n = n;
    let sigma = dt / dx;
    let mut x = [[0.0; 2]; MAX_POINTS];
    for j in 0..n {
        x[j] = [x0 + k.nodes[j] * dx, 0.0];
        ws.u_m[0][j] = u[j];
        law.check_state(&u[j]).map_err(|e| e.at(format!("solution point {j}")))?;
        ws.f_m[0][j] = law.flux(x[j], &u[j], 0);
    }
    for m in 1..=degree {
        for i in 0..n {
            let mut acc = L::State::zero();
            for j in 0..n {
                acc = acc.axpy(k.d[i][j], ws.f_m[m - 1][j]);
            }
            ws.u_m[m][i] = acc * (-sigma);
        }
        let terms = ladder[m - 1];
        for j in 0..n {
            let ders: [L::State; 4] = std::array::from_fn(|q| if q < m { ws.u_m[q + 1][j] } else { L::State::zero() });
            ws.f_m[m][j] = apply_stencil(law, x[j], 0, ws.u_m[0][j], ws.f_m[0][j], &ders[..m], terms, |t| {
                format!("f^({m}) stencil argument {t} at solution point {j}")
            })?;
        }
    }
    for j in 0..n {
        let mut ua = L::State::zero();
        let mut fa = L::State::zero();
        for m in 0..=degree {
            ua = ua.axpy(TAYLOR[m], ws.u_m[m][j]);
            fa = fa.axpy(TAYLOR[m], ws.f_m[m][j]);
        }
        ws.u_avg[j] = ua;
        ws.f_avg[j] = fa;
    }
    for (side, v) in [&k.v_l, &k.v_r].into_iter().enumerate() {
        let face = &mut ws.faces[side];
        face.u = extrapolate(v, &ws.u_m[0], n);
        face.u_avg = extrapolate(v, &ws.u_avg, n);
        face.f_avg = match mode {
            FaceMode::AE => extrapolate(v, &ws.f_avg, n),
            FaceMode::EA => {
                let xf = [x0 + side as f64 * dx, 0.0];
                let ders: [L::State; 4] =
                    std::array::from_fn(|q| if q < degree { extrapolate(v, &ws.u_m[q + 1], n) } else { L::State::zero() });
                face_average_flux(law, xf, 0, face.u, &ders[..degree], degree, |t| {
                    format!("face {side} stencil argument {t}")
                })?
            }
        };
    }
    Ok(())
}

/// EA face flux from extrapolated solution and derivative traces.
pub(crate) fn face_average_flux<L: ConservationLaw>(
    law: &L,
    x: [f64; 2],
    dir: usize,
    u: L::State,
    ders: &[L::State],
    degree: usize,
    label: impl Fn(usize) -> String,
) -> Result<L::State> {
    let rule = ladders::face_rule(degree)?;
    law.check_flux_argument(&u).map_err(|e| e.at(label(0)))?;
    let f0 = law.flux(x, &u, dir);
    apply_stencil(law, x, dir, u, f0, ders, &rule.terms, label)
}

/// `F_left b_L + D1 F + F_right b_R` at the solution points.
pub fn flux_derivative_1d<S: StateVec>(k: &Kernel, f: &[S], f_left: S, f_right: S, out: &mut [S]) {
    let n = k.n;
    for i in 0..n {
        let mut acc = f_left * k.b_l[i] + f_right * k.b_r[i];
        for j in 0..n {
            acc = acc.axpy(k.d1[i][j], f[j]);
        }
        out[i] = acc;
    }
}

/// Single-step update `u - dt/dx (F_left b_L + D1 F + F_right b_R)`.
pub fn lw_update_1d<S: StateVec>(k: &Kernel, u: &mut [S], f: &[S], f_left: S, f_right: S, dt: f64, dx: f64) {
    let mut r = [S::zero(); MAX_POINTS];
    flux_derivative_1d(k, f, f_left, f_right, &mut r);
    let s = dt / dx;
    for i in 0..k.n {
        u[i] = u[i].axpy(-s, r[i]);
    }
}
