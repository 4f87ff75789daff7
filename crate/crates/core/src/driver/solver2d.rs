use std::sync::Arc;

use crate::basis::{Kernel, ReferenceOperators, MAX_POINTS};
use crate::equations::{ConservationLaw, Point, StateVec};
use crate::error::{Error, Result};
use crate::limiter::{cell_average_2d, positivity_scale, tvd_limit_2d, LimiterKind};
use crate::lw_core::{face_point, flux_divergence_2d, lw_element_2d, lw_update_2d, Trace, Workspace2d, MAX_NODES_2D};
use crate::numflux::{check_compatible, numerical_flux, select_traces, FluxKind};
use crate::rk_reference::rk_element_2d;

use super::boundary::{boundary_flux, check_inflow, check_pair, ghost_mean, Boundary, BoundaryFace, FluxSettings, TimeQuadrature};
use super::mesh::Mesh2d;
use super::norms::{norms_2d, ErrorQuadrature, Norms};
use super::{Discretization, Solver, TimeScheme};

type FaceLine<S> = [S; MAX_POINTS];

/// Flux reconstruction on a tensor-product mesh. Cell `(i, j)` stores its
/// `(N + 1)^2` nodal values at offset `(i + nx j) (N + 1)^2`.
pub struct Solver2d<L: ConservationLaw> {
    pub law: L,
    pub disc: Discretization,
    pub ops: Arc<ReferenceOperators>,
    pub kernel: Kernel,
    pub mesh: Mesh2d,
    /// Left, right, bottom, top.
    pub boundaries: [Boundary<L::State>; 4],
    pub u: Vec<L::State>,
    pub time: f64,
    pub steps: usize,
    pub stage_count: usize,
    /// Fluxes on faces normal to x, index `i + (nx + 1) j`.
    pub x_flux: Vec<FaceLine<L::State>>,
    /// Fluxes on faces normal to y, index `i + nx j`.
    pub y_flux: Vec<FaceLine<L::State>>,
    quad: TimeQuadrature,
    means: Vec<L::State>,
    traces: Vec<[[Trace<L::State>; MAX_POINTS]; 4]>,
    f_nodal: Vec<L::State>,
    g_nodal: Vec<L::State>,
    ws: Box<Workspace2d<L::State>>,
    stage_u: Vec<Vec<L::State>>,
    stage_res: Vec<Vec<L::State>>,
}

impl<L: ConservationLaw> Solver2d<L> {
    pub fn new(
        law: L,
        disc: Discretization,
        mesh: Mesh2d,
        boundaries: [Boundary<L::State>; 4],
        initial: &dyn Fn(Point) -> L::State,
    ) -> Result<Self> {
        disc.validate()?;
        check_compatible(&law, disc.flux)?;
        check_pair(&boundaries[0], &boundaries[1], "x")?;
        check_pair(&boundaries[2], &boundaries[3], "y")?;
        let ops = ReferenceOperators::cached(disc.points, disc.degree, disc.correction)?;
        let kernel = ops.kernel()?;
        let n = kernel.n;
        let nn = n * n;
        let (nx, ny) = (mesh.nx(), mesh.ny());
        let mut u = Vec::with_capacity(mesh.cells() * nn);
        for jc in 0..ny {
            for ic in 0..nx {
                let o = mesh.origin(ic, jc);
                let h = mesh.h(ic, jc);
                for j in 0..n {
                    for i in 0..n {
                        u.push(initial([o[0] + kernel.nodes[i] * h[0], o[1] + kernel.nodes[j] * h[1]]));
                    }
                }
            }
        }
        for side in 0..4 {
            let dir = side / 2;
            let outward = if side % 2 == 0 { -1.0 } else { 1.0 };
            let mut pts = Vec::new();
            let count = if dir == 0 { ny } else { nx };
            for c in 0..count {
                let (ic, jc) = match side {
                    0 => (0, c),
                    1 => (nx - 1, c),
                    2 => (c, 0),
                    _ => (c, ny - 1),
                };
                for line in 0..n {
                    pts.push(face_point(&kernel, mesh.origin(ic, jc), mesh.h(ic, jc), side, line));
                }
            }
            check_inflow(&law, &boundaries[side], &pts, dir, outward, 0.0)?;
        }
        let cells = mesh.cells();
        let mut s = Solver2d {
            law,
            quad: TimeQuadrature::new(disc.degree + 1),
            disc,
            ops,
            kernel,
            boundaries,
            u,
            time: 0.0,
            steps: 0,
            stage_count: 0,
            x_flux: vec![[L::State::zero(); MAX_POINTS]; (nx + 1) * ny],
            y_flux: vec![[L::State::zero(); MAX_POINTS]; nx * (ny + 1)],
            means: vec![L::State::zero(); cells],
            traces: vec![[[Trace::default(); MAX_POINTS]; 4]; cells],
            f_nodal: vec![L::State::zero(); cells * nn],
            g_nodal: vec![L::State::zero(); cells * nn],
            ws: Box::default(),
            stage_u: Vec::new(),
            stage_res: Vec::new(),
            mesh,
        };
        let mut u = std::mem::take(&mut s.u);
        s.post_process(&mut u, 0.0)?;
        s.u = u;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.kernel.n
    }

    pub fn cell(&self, c: usize) -> &[L::State] {
        let nn = self.kernel.n * self.kernel.n;
        &self.u[c * nn..(c + 1) * nn]
    }

    fn update_means(&mut self, u: &[L::State]) {
        let nn = self.kernel.n * self.kernel.n;
        for (c, m) in self.means.iter_mut().enumerate() {
            *m = cell_average_2d(&self.kernel, &u[c * nn..(c + 1) * nn]);
        }
    }

    fn node(&self, ic: usize, jc: usize, p: usize) -> Point {
        let n = self.kernel.n;
        let o = self.mesh.origin(ic, jc);
        let h = self.mesh.h(ic, jc);
        [o[0] + self.kernel.nodes[p % n] * h[0], o[1] + self.kernel.nodes[p / n] * h[1]]
    }

    fn global_lambda(&self, u: &[L::State]) -> Result<f64> {
        if self.disc.flux != FluxKind::GlobalLf {
            return Ok(0.0);
        }
        let nn = self.kernel.n * self.kernel.n;
        let mut lam = 0.0_f64;
        for jc in 0..self.mesh.ny() {
            for ic in 0..self.mesh.nx() {
                let c = ic + self.mesh.nx() * jc;
                for p in 0..nn {
                    let x = self.node(ic, jc, p);
                    for dir in 0..2 {
                        lam = lam.max(self.law.max_speed(x, &u[c * nn + p], dir)?);
                    }
                }
            }
        }
        Ok(lam)
    }

    fn face_fluxes(&mut self, t: f64, dt: f64, global_lambda: f64) -> Result<()> {
        let (nx, ny) = (self.mesh.nx(), self.mesh.ny());
        let n = self.kernel.n;
        let fs = FluxSettings {
            kind: self.disc.flux,
            dissipation: self.disc.dissipation,
            global_lambda,
        };
        // `a` is below/left of `b` along `dir`
        let interior = |s: &Self, a: usize, b: usize, dir: usize, line: usize, x: Point| -> Result<L::State> {
            let data = select_traces(
                &s.traces[a][2 * dir + 1][line],
                &s.traces[b][2 * dir][line],
                s.means[a],
                s.means[b],
                fs.dissipation,
                x,
                dir,
            );
            numerical_flux(&s.law, fs.kind, &data, fs.global_lambda)
        };
        let boundary = |s: &Self, side: usize, c: usize, line: usize, x: Point| -> Result<L::State> {
            let face = BoundaryFace {
                x,
                dir: side / 2,
                outward: if side % 2 == 0 { -1.0 } else { 1.0 },
                t,
                dt,
            };
            boundary_flux(&s.law, &s.boundaries[side], &s.traces[c][side][line], s.means[c], &face, &fs, &s.quad)
        };
        let ctx = |x: Point| move |e: Error| e.context(format!("face point ({}, {}), t = {t}", x[0], x[1]));
        let x_periodic = self.boundaries[0].is_periodic();
        for jc in 0..ny {
            for i in 0..=nx {
                let mut line_flux = [L::State::zero(); MAX_POINTS];
                for line in 0..n {
                    let (ic, side) = if i < nx { (i, 0) } else { (nx - 1, 1) };
                    let x = face_point(&self.kernel, self.mesh.origin(ic, jc), self.mesh.h(ic, jc), side, line);
                    line_flux[line] = if i > 0 && i < nx {
                        interior(self, i - 1 + nx * jc, i + nx * jc, 0, line, x)
                    } else if x_periodic {
                        interior(self, nx - 1 + nx * jc, nx * jc, 0, line, x)
                    } else if i == 0 {
                        boundary(self, 0, nx * jc, line, x)
                    } else {
                        boundary(self, 1, nx - 1 + nx * jc, line, x)
                    }
                    .map_err(ctx(x))?;
                }
                self.x_flux[i + (nx + 1) * jc] = line_flux;
            }
        }
        let y_periodic = self.boundaries[2].is_periodic();
        for j in 0..=ny {
            for ic in 0..nx {
                let mut line_flux = [L::State::zero(); MAX_POINTS];
                for line in 0..n {
                    let (jc, side) = if j < ny { (j, 2) } else { (ny - 1, 3) };
                    let x = face_point(&self.kernel, self.mesh.origin(ic, jc), self.mesh.h(ic, jc), side, line);
                    line_flux[line] = if j > 0 && j < ny {
                        interior(self, ic + nx * (j - 1), ic + nx * j, 1, line, x)
                    } else if y_periodic {
                        interior(self, ic + nx * (ny - 1), ic, 1, line, x)
                    } else if j == 0 {
                        boundary(self, 2, ic, line, x)
                    } else {
                        boundary(self, 3, ic + nx * (ny - 1), line, x)
                    }
                    .map_err(ctx(x))?;
                }
                self.y_flux[ic + nx * j] = line_flux;
            }
        }
        Ok(())
    }

    fn cell_face_fluxes(&self, ic: usize, jc: usize) -> [FaceLine<L::State>; 4] {
        let nx = self.mesh.nx();
        [
            self.x_flux[ic + (nx + 1) * jc],
            self.x_flux[ic + 1 + (nx + 1) * jc],
            self.y_flux[ic + nx * jc],
            self.y_flux[ic + nx * (jc + 1)],
        ]
    }

    fn store_element(&mut self, c: usize) {
        let nn = self.kernel.n * self.kernel.n;
        self.f_nodal[c * nn..(c + 1) * nn].copy_from_slice(&self.ws.f_avg[..nn]);
        self.g_nodal[c * nn..(c + 1) * nn].copy_from_slice(&self.ws.g_avg[..nn]);
        self.traces[c] = self.ws.faces;
    }

    fn lw_step(&mut self, dt: f64) -> Result<()> {
        let t = self.time;
        let nn = self.kernel.n * self.kernel.n;
        let nx = self.mesh.nx();
        let mut u = std::mem::take(&mut self.u);
        let result = (|| {
            self.update_means(&u);
            let lam = self.global_lambda(&u)?;
            for jc in 0..self.mesh.ny() {
                for ic in 0..nx {
                    let c = ic + nx * jc;
                    lw_element_2d(
                        &self.law,
                        &self.kernel,
                        &u[c * nn..(c + 1) * nn],
                        dt,
                        self.mesh.origin(ic, jc),
                        self.mesh.h(ic, jc),
                        self.disc.face_mode,
                        &mut self.ws,
                    )
                    .map_err(|err| err.context(format!("cell ({ic}, {jc}), t = {t}")))?;
                    self.store_element(c);
                }
            }
            self.face_fluxes(t, dt, lam)?;
            for jc in 0..self.mesh.ny() {
                for ic in 0..nx {
                    let c = ic + nx * jc;
                    let fnum = self.cell_face_fluxes(ic, jc);
                    lw_update_2d(
                        &self.kernel,
                        &mut u[c * nn..(c + 1) * nn],
                        &self.f_nodal[c * nn..(c + 1) * nn],
                        &self.g_nodal[c * nn..(c + 1) * nn],
                        &fnum,
                        dt,
                        self.mesh.h(ic, jc),
                    );
                }
            }
            self.stage_count += 1;
            self.post_process(&mut u, t + dt)
        })();
        self.u = u;
        result
    }

    /// `du/dt` at the solution points for the instantaneous fluxes of `u`.
    pub fn residual(&mut self, u: &[L::State], t: f64, out: &mut [L::State]) -> Result<()> {
        let nn = self.kernel.n * self.kernel.n;
        let nx = self.mesh.nx();
        self.update_means(u);
        let lam = self.global_lambda(u)?;
        for jc in 0..self.mesh.ny() {
            for ic in 0..nx {
                let c = ic + nx * jc;
                rk_element_2d(
                    &self.law,
                    &self.kernel,
                    &u[c * nn..(c + 1) * nn],
                    self.mesh.origin(ic, jc),
                    self.mesh.h(ic, jc),
                    &mut self.ws,
                )
                .map_err(|err| err.context(format!("cell ({ic}, {jc}), t = {t}")))?;
                self.store_element(c);
            }
        }
        self.face_fluxes(t, 0.0, lam)?;
        let mut div = [L::State::zero(); MAX_NODES_2D];
        for jc in 0..self.mesh.ny() {
            for ic in 0..nx {
                let c = ic + nx * jc;
                let fnum = self.cell_face_fluxes(ic, jc);
                flux_divergence_2d(
                    &self.kernel,
                    &self.f_nodal[c * nn..(c + 1) * nn],
                    &self.g_nodal[c * nn..(c + 1) * nn],
                    &fnum,
                    self.mesh.h(ic, jc),
                    &mut div,
                );
                for p in 0..nn {
                    out[c * nn + p] = -div[p];
                }
            }
        }
        self.stage_count += 1;
        Ok(())
    }

    fn rk_step(&mut self, dt: f64) -> Result<()> {
        let tab = self.disc.rk.tableau();
        let c = tab.stage_times();
        let s = tab.alpha.len();
        let len = self.u.len();
        self.stage_u.resize_with(s, Vec::new);
        self.stage_res.resize_with(s, Vec::new);
        let mut stage_u = std::mem::take(&mut self.stage_u);
        let mut stage_res = std::mem::take(&mut self.stage_res);
        stage_u[0].clear();
        stage_u[0].extend_from_slice(&self.u);
        let t = self.time;
        let result = (|| {
            for i in 1..=s {
                let k = i - 1;
                if tab.needs_residual(k) {
                    stage_res[k].resize(len, L::State::zero());
                    self.residual(&stage_u[k], t + c[k] * dt, &mut stage_res[k])?;
                }
                let (a, b) = (tab.alpha[k], tab.beta[k]);
                let mut next = vec![L::State::zero(); len];
                for (q, v) in next.iter_mut().enumerate() {
                    let mut acc = L::State::zero();
                    for m in 0..i {
                        if a[m] != 0.0 {
                            acc = acc.axpy(a[m], stage_u[m][q]);
                        }
                        if b[m] != 0.0 {
                            acc = acc.axpy(dt * b[m], stage_res[m][q]);
                        }
                    }
                    *v = acc;
                }
                self.post_process(&mut next, t + c[i] * dt)?;
                if i < s {
                    stage_u[i] = next;
                } else {
                    self.u = next;
                }
            }
            Ok(())
        })();
        self.stage_u = stage_u;
        self.stage_res = stage_res;
        result
    }

    fn face_centre(&self, ic: usize, jc: usize, side: usize) -> Point {
        let o = self.mesh.origin(ic, jc);
        let h = self.mesh.h(ic, jc);
        match side {
            0 => [o[0], o[1] + 0.5 * h[1]],
            1 => [o[0] + h[0], o[1] + 0.5 * h[1]],
            2 => [o[0] + 0.5 * h[0], o[1]],
            _ => [o[0] + 0.5 * h[0], o[1] + h[1]],
        }
    }

    /// TVB limiter, positivity limiter and a finiteness check on `u`.
    pub fn post_process(&self, u: &mut [L::State], t: f64) -> Result<()> {
        let nn = self.kernel.n * self.kernel.n;
        let (nx, ny) = (self.mesh.nx(), self.mesh.ny());
        let cfg = &self.disc.limiter;
        if cfg.kind == LimiterKind::Tvb {
            let means: Vec<L::State> = (0..nx * ny)
                .map(|c| cell_average_2d(&self.kernel, &u[c * nn..(c + 1) * nn]))
                .collect();
            for jc in 0..ny {
                for ic in 0..nx {
                    let c = ic + nx * jc;
                    let mut nb = [L::State::zero(); 4];
                    for (side, m) in nb.iter_mut().enumerate() {
                        let neighbour = match side {
                            0 if ic > 0 => Some(c - 1),
                            1 if ic + 1 < nx => Some(c + 1),
                            2 if jc > 0 => Some(c - nx),
                            3 if jc + 1 < ny => Some(c + nx),
                            _ => None,
                        };
                        *m = match neighbour {
                            Some(k) => means[k],
                            None if self.boundaries[side].is_periodic() => match side {
                                0 => means[nx - 1 + nx * jc],
                                1 => means[nx * jc],
                                2 => means[ic + nx * (ny - 1)],
                                _ => means[ic],
                            },
                            None => ghost_mean(
                                &self.law,
                                &self.boundaries[side],
                                means[c],
                                self.face_centre(ic, jc, side),
                                side / 2,
                                t,
                            )?,
                        };
                    }
                    tvd_limit_2d(&self.law, &self.kernel, &mut u[c * nn..(c + 1) * nn], nb, self.mesh.h(ic, jc), cfg);
                }
            }
        }
        if cfg.positivity {
            for c in 0..nx * ny {
                positivity_scale(&self.law, &self.kernel, &mut u[c * nn..(c + 1) * nn], true, cfg.eps)
                    .map_err(|err| err.context(format!("cell ({}, {}), t = {t}", c % nx, c / nx)))?;
            }
        }
        if let Some(q) = u.iter().position(|v| !v.is_finite()) {
            let c = q / nn;
            return Err(Error::Numerical(format!("non-finite solution in cell ({}, {}) at t = {t}", c % nx, c / nx)));
        }
        Ok(())
    }
}

impl<L: ConservationLaw> Solver for Solver2d<L> {
    type Law = L;

    fn law(&self) -> &L {
        &self.law
    }

    fn time(&self) -> f64 {
        self.time
    }

    fn steps(&self) -> usize {
        self.steps
    }

    fn compute_dt(&self) -> Result<f64> {
        let cfl = self.disc.cfl(true)?;
        let nn = self.kernel.n * self.kernel.n;
        let nx = self.mesh.nx();
        let mut rate = 0.0_f64;
        for jc in 0..self.mesh.ny() {
            for ic in 0..nx {
                let c = ic + nx * jc;
                let ue = self.cell(c);
                let h = self.mesh.h(ic, jc);
                let o = self.mesh.origin(ic, jc);
                let centre = [o[0] + 0.5 * h[0], o[1] + 0.5 * h[1]];
                let mean = cell_average_2d(&self.kernel, ue);
                let mut s = [self.law.max_speed(centre, &mean, 0)?, self.law.max_speed(centre, &mean, 1)?];
                for p in 0..nn {
                    let x = self.node(ic, jc, p);
                    for (dir, sd) in s.iter_mut().enumerate() {
                        *sd = sd.max(self.law.max_speed(x, &ue[p], dir)?);
                    }
                }
                rate = rate.max(s[0] / h[0] + s[1] / h[1]);
            }
        }
        if rate > 0.0 {
            Ok(self.disc.cfl_safety * cfl / rate)
        } else {
            Ok(self.disc.dt_max)
        }
    }

    fn step(&mut self, dt: f64) -> Result<()> {
        match self.disc.scheme {
            TimeScheme::Lwfr => self.lw_step(dt)?,
            TimeScheme::Rkfr => self.rk_step(dt)?,
        }
        self.time += dt;
        self.steps += 1;
        Ok(())
    }

    fn nodes(&self) -> Vec<Point> {
        let nn = self.kernel.n * self.kernel.n;
        let mut x = Vec::with_capacity(self.u.len());
        for jc in 0..self.mesh.ny() {
            for ic in 0..self.mesh.nx() {
                for p in 0..nn {
                    x.push(self.node(ic, jc, p));
                }
            }
        }
        x
    }

    fn values(&self) -> &[L::State] {
        &self.u
    }

    fn totals(&self) -> Vec<f64> {
        let mut tot = vec![0.0; L::State::LEN];
        let nx = self.mesh.nx();
        for jc in 0..self.mesh.ny() {
            for ic in 0..nx {
                let h = self.mesh.h(ic, jc);
                let m = cell_average_2d(&self.kernel, self.cell(ic + nx * jc));
                for (t, v) in tot.iter_mut().zip(m.as_slice()) {
                    *t += v * h[0] * h[1];
                }
            }
        }
        tot
    }

    fn error_norms(&self, exact: &dyn Fn(Point) -> L::State) -> Norms {
        norms_2d(&ErrorQuadrature::new(&self.ops), &self.mesh, self.kernel.n, &self.u, exact)
    }
}
