use super::ladders::{self, TAYLOR};
use super::one_d::{face_average_flux, stencil_argument};
use super::{FaceMode, Trace};
use crate::basis::{Kernel, MAX_POINTS};
use crate::equations::{ConservationLaw, StateVec};
use crate::error::Result;

pub const MAX_NODES_2D: usize = MAX_POINTS * MAX_POINTS;

/// Per-element scratch for the 2-D procedure. Nodes are stored with flat
/// index `i + n j`, `i` along x.
#[derive(Clone, Debug)]
pub struct Workspace2d<S: StateVec> {
    pub n: usize,
    pub u_m: [[S; MAX_NODES_2D]; MAX_POINTS],
    pub f_m: [[S; MAX_NODES_2D]; MAX_POINTS],
    pub g_m: [[S; MAX_NODES_2D]; MAX_POINTS],
    pub u_avg: [S; MAX_NODES_2D],
    pub f_avg: [S; MAX_NODES_2D],
    pub g_avg: [S; MAX_NODES_2D],
    /// Traces on the faces left, right, bottom, top; one per face point.
    /// `f_avg` holds the normal flux component.
    pub faces: [[Trace<S>; MAX_POINTS]; 4],
}

impl<S: StateVec> Default for Workspace2d<S> {
    fn default() -> Self {
        let z = [S::zero(); MAX_NODES_2D];
        Workspace2d {
            n: 0,
            u_m: [z; MAX_POINTS],
            f_m: [z; MAX_POINTS],
            g_m: [z; MAX_POINTS],
            u_avg: z,
            f_avg: z,
            g_avg: z,
            faces: [[Trace::default(); MAX_POINTS]; 4],
        }
    }
}

/// Value on `face` at face point `line`, interpolated from nodal values.
#[inline]
pub fn face_trace<S: StateVec>(k: &Kernel, values: &[S], face: usize, line: usize) -> S {
    let n = k.n;
    let v = if face % 2 == 0 { &k.v_l } else { &k.v_r };
    let mut acc = S::zero();
    if face < 2 {
        for i in 0..n {
            acc = acc.axpy(v[i], values[i + n * line]);
        }
    } else {
        for j in 0..n {
            acc = acc.axpy(v[j], values[line + n * j]);
        }
    }
    acc
}

/// Physical position of face point `line` on `face`.
#[inline]
pub fn face_point(k: &Kernel, origin: [f64; 2], h: [f64; 2], face: usize, line: usize) -> [f64; 2] {
    let s = k.nodes[line];
    match face {
        0 => [origin[0], origin[1] + s * h[1]],
        1 => [origin[0] + h[0], origin[1] + s * h[1]],
        2 => [origin[0] + s * h[0], origin[1]],
        _ => [origin[0] + s * h[0], origin[1] + h[1]],
    }
}

/// Approximate Lax-Wendroff procedure on the element with lower-left corner
/// `origin` and sides `h`.
pub fn lw_element_2d<L: ConservationLaw>(
    law: &L,
    k: &Kernel,
    u: &[L::State],
    dt: f64,
    origin: [f64; 2],
    h: [f64; 2],
    mode: FaceMode,
    ws: &mut Workspace2d<L::State>,
) -> Result<()> {
    let degree = k.degree;
    let ladder = ladders::nodal(degree)?;
    let n = k.n;
    let nn = n * n;
    ws.n = n;
    let (lx, ly) = (dt / h[0], dt / h[1]);
    let mut x = [[0.0; 2]; MAX_NODES_2D];
    for j in 0..n {
        for i in 0..n {
            let p = i + n * j;
            x[p] = [origin[0] + k.nodes[i] * h[0], origin[1] + k.nodes[j] * h[1]];
            law.check_state(&u[p]).map_err(|e| e.at(format!("solution point ({i}, {j})")))?;
            ws.u_m[0][p] = u[p];
            ws.f_m[0][p] = law.flux(x[p], &u[p], 0);
            ws.g_m[0][p] = law.flux(x[p], &u[p], 1);
        }
    }
    for m in 1..=degree {
        for j in 0..n {
            for i in 0..n {
                let mut acc = L::State::zero();
                for l in 0..n {
                    acc = acc.axpy(-lx * k.d[i][l], ws.f_m[m - 1][l + n * j]);
                    acc = acc.axpy(-ly * k.d[j][l], ws.g_m[m - 1][i + n * l]);
                }
                ws.u_m[m][i + n * j] = acc;
            }
        }
        let terms = ladder[m - 1];
        for p in 0..nn {
            let ders: [L::State; 4] = std::array::from_fn(|q| if q < m { ws.u_m[q + 1][p] } else { L::State::zero() });
            let mut fa = L::State::zero();
            let mut ga = L::State::zero();
            for (t, term) in terms.iter().enumerate() {
                if term.is_base() {
                    fa = fa.axpy(term.c, ws.f_m[0][p]);
                    ga = ga.axpy(term.c, ws.g_m[0][p]);
                } else {
                    let arg = stencil_argument(ws.u_m[0][p], &ders[..m], &term.a);
                    law.check_flux_argument(&arg).map_err(|e| {
                        e.at(format!("f^({m}) stencil argument {t} at solution point ({}, {})", p % n, p / n))
                    })?;
                    fa = fa.axpy(term.c, law.flux(x[p], &arg, 0));
                    ga = ga.axpy(term.c, law.flux(x[p], &arg, 1));
                }
            }
            ws.f_m[m][p] = fa;
            ws.g_m[m][p] = ga;
        }
    }
    for p in 0..nn {
        let mut ua = L::State::zero();
        let mut fa = L::State::zero();
        let mut ga = L::State::zero();
        for m in 0..=degree {
            ua = ua.axpy(TAYLOR[m], ws.u_m[m][p]);
            fa = fa.axpy(TAYLOR[m], ws.f_m[m][p]);
            ga = ga.axpy(TAYLOR[m], ws.g_m[m][p]);
        }
        ws.u_avg[p] = ua;
        ws.f_avg[p] = fa;
        ws.g_avg[p] = ga;
    }
    for face in 0..4 {
        let dir = face / 2;
        for line in 0..n {
            let tu = face_trace(k, &ws.u_m[0], face, line);
            let tua = face_trace(k, &ws.u_avg, face, line);
            let tf = match mode {
                FaceMode::AE => face_trace(k, if dir == 0 { &ws.f_avg } else { &ws.g_avg }, face, line),
                FaceMode::EA => {
                    let xf = face_point(k, origin, h, face, line);
                    let ders: [L::State; 4] = std::array::from_fn(|q| {
                        if q < degree {
                            face_trace(k, &ws.u_m[q + 1], face, line)
                        } else {
                            L::State::zero()
                        }
                    });
                    face_average_flux(law, xf, dir, tu, &ders[..degree], degree, |t| {
                        format!("face {face} point {line} stencil argument {t}")
                    })?
                }
            };
            ws.faces[face][line] = Trace {
                u: tu,
                u_avg: tua,
                f_avg: tf,
            };
        }
    }
    Ok(())
}

/// Flux divergence at the solution points from nodal fluxes `f`, `g` and
/// numerical fluxes on the faces left, right, bottom, top.
pub fn flux_divergence_2d<S: StateVec>(
    k: &Kernel,
    f: &[S],
    g: &[S],
    fnum: &[[S; MAX_POINTS]; 4],
    h: [f64; 2],
    out: &mut [S],
) {
    let n = k.n;
    let (ax, ay) = (1.0 / h[0], 1.0 / h[1]);
    for j in 0..n {
        for i in 0..n {
            let mut rx = fnum[0][j] * k.b_l[i] + fnum[1][j] * k.b_r[i];
            let mut ry = fnum[2][i] * k.b_l[j] + fnum[3][i] * k.b_r[j];
            for l in 0..n {
                rx = rx.axpy(k.d1[i][l], f[l + n * j]);
                ry = ry.axpy(k.d1[j][l], g[i + n * l]);
            }
            out[i + n * j] = rx * ax + ry * ay;
        }
    }
}

/// Single-step 2-D update `u - dt (div)`.
pub fn lw_update_2d<S: StateVec>(
    k: &Kernel,
    u: &mut [S],
    f: &[S],
    g: &[S],
    fnum: &[[S; MAX_POINTS]; 4],
    dt: f64,
    h: [f64; 2],
) {
    let mut r = [S::zero(); MAX_NODES_2D];
    flux_divergence_2d(k, f, g, fnum, h, &mut r);
    for p in 0..k.n * k.n {
        u[p] = u[p].axpy(-dt, r[p]);
    }
}
