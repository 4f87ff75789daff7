use std::sync::Arc;

use crate::basis::{Kernel, ReferenceOperators};
use crate::equations::{ConservationLaw, Point, StateVec};
use crate::error::{Error, Result};
use crate::limiter::{cell_average, positivity_scale, tvd_limit_1d, LimiterKind};
use crate::lw_core::{flux_derivative_1d, lw_element_1d, lw_update_1d, Trace, Workspace1d};
use crate::numflux::{check_compatible, numerical_flux, select_traces, FluxKind};
use crate::rk_reference::rk_element_1d;

use super::boundary::{boundary_flux, check_inflow, check_pair, ghost_mean, Boundary, BoundaryFace, FluxSettings, TimeQuadrature};
use super::mesh::Mesh1d;
use super::norms::{norms_1d, ErrorQuadrature, Norms};
use super::{Discretization, Solver, TimeScheme};

/// Flux reconstruction on a 1-D mesh. The solution is stored cell by cell,
/// `N + 1` nodal values per cell.
pub struct Solver1d<L: ConservationLaw> {
    pub law: L,
    pub disc: Discretization,
    pub ops: Arc<ReferenceOperators>,
    pub kernel: Kernel,
    pub mesh: Mesh1d,
    /// Lower and upper side.
    pub boundaries: [Boundary<L::State>; 2],
    pub u: Vec<L::State>,
    pub time: f64,
    pub steps: usize,
    /// Residual evaluations (Runge-Kutta) or element updates (Lax-Wendroff).
    pub stage_count: usize,
    /// Numerical fluxes of the last flux evaluation, one per face.
    pub face_flux: Vec<L::State>,
    quad: TimeQuadrature,
    means: Vec<L::State>,
    traces: Vec<[Trace<L::State>; 2]>,
    f_nodal: Vec<L::State>,
    ws: Workspace1d<L::State>,
    stage_u: Vec<Vec<L::State>>,
    stage_res: Vec<Vec<L::State>>,
}

impl<L: ConservationLaw> Solver1d<L> {
    /// Builds the solver and samples `initial` at the solution points. The
    /// limiters are applied once to the initial data.
    pub fn new(
        law: L,
        disc: Discretization,
        mesh: Mesh1d,
        boundaries: [Boundary<L::State>; 2],
        initial: &dyn Fn(Point) -> L::State,
    ) -> Result<Self> {
        disc.validate()?;
        check_compatible(&law, disc.flux)?;
        check_pair(&boundaries[0], &boundaries[1], "x")?;
        let ops = ReferenceOperators::cached(disc.points, disc.degree, disc.correction)?;
        let kernel = ops.kernel()?;
        let n = kernel.n;
        let cells = mesh.cells();
        let mut u = Vec::with_capacity(cells * n);
        for e in 0..cells {
            for j in 0..n {
                u.push(initial([mesh.x0(e) + kernel.nodes[j] * mesh.dx(e), 0.0]));
            }
        }
        for (side, outward, x) in [(0, -1.0, mesh.lower()), (1, 1.0, mesh.upper())] {
            check_inflow(&law, &boundaries[side], &[[x, 0.0]], 0, outward, 0.0)?;
        }
        let mut s = Solver1d {
            law,
            quad: TimeQuadrature::new(disc.degree + 1),
            disc,
            ops,
            kernel,
            mesh,
            boundaries,
            u,
            time: 0.0,
            steps: 0,
            stage_count: 0,
            face_flux: vec![L::State::zero(); cells + 1],
            means: vec![L::State::zero(); cells],
            traces: vec![[Trace::default(); 2]; cells],
            f_nodal: vec![L::State::zero(); cells * n],
            ws: Workspace1d::default(),
            stage_u: Vec::new(),
            stage_res: Vec::new(),
        };
        let mut u = std::mem::take(&mut s.u);
        s.post_process(&mut u, 0.0)?;
        s.u = u;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.kernel.n
    }

    pub fn cell(&self, e: usize) -> &[L::State] {
        let n = self.n();
        &self.u[e * n..(e + 1) * n]
    }

    pub fn cell_means(&self) -> Vec<L::State> {
        (0..self.mesh.cells()).map(|e| cell_average(&self.kernel, self.cell(e))).collect()
    }

    fn update_means(&mut self, u: &[L::State]) {
        let n = self.kernel.n;
        for (e, m) in self.means.iter_mut().enumerate() {
            *m = cell_average(&self.kernel, &u[e * n..(e + 1) * n]);
        }
    }

    /// Largest wave speed over all solution points, used by the global
    /// Lax-Friedrichs flux.
    fn global_lambda(&self, u: &[L::State]) -> Result<f64> {
        if self.disc.flux != FluxKind::GlobalLf {
            return Ok(0.0);
        }
        let n = self.kernel.n;
        let mut lam = 0.0_f64;
        for e in 0..self.mesh.cells() {
            for j in 0..n {
                let x = [self.mesh.x0(e) + self.kernel.nodes[j] * self.mesh.dx(e), 0.0];
                lam = lam.max(self.law.max_speed(x, &u[e * n + j], 0)?);
            }
        }
        Ok(lam)
    }

    /// Numerical fluxes at every face from `traces` and `means`.
    fn face_fluxes(&mut self, t: f64, dt: f64, global_lambda: f64) -> Result<()> {
        let cells = self.mesh.cells();
        let fs = FluxSettings {
            kind: self.disc.flux,
            dissipation: self.disc.dissipation,
            global_lambda,
        };
        let interior = |s: &Self, l: usize, r: usize, x: f64| -> Result<L::State> {
            let data = select_traces(&s.traces[l][1], &s.traces[r][0], s.means[l], s.means[r], fs.dissipation, [x, 0.0], 0);
            numerical_flux(&s.law, fs.kind, &data, fs.global_lambda)
        };
        for i in 1..cells {
            let x = self.mesh.faces[i];
            self.face_flux[i] = interior(self, i - 1, i, x).map_err(|e| e.context(format!("face at x = {x}, t = {t}")))?;
        }
        if self.boundaries[0].is_periodic() {
            let f = interior(self, cells - 1, 0, self.mesh.lower())
                .map_err(|e| e.context(format!("periodic face, t = {t}")))?;
            self.face_flux[0] = f;
            self.face_flux[cells] = f;
        } else {
            for (side, i, e, outward) in [(0, 0, 0, -1.0), (1, cells, cells - 1, 1.0)] {
                let face = BoundaryFace {
                    x: [self.mesh.faces[i], 0.0],
                    dir: 0,
                    outward,
                    t,
                    dt,
                };
                self.face_flux[i] = boundary_flux(
                    &self.law,
                    &self.boundaries[side],
                    &self.traces[e][side],
                    self.means[e],
                    &face,
                    &fs,
                    &self.quad,
                )
                .map_err(|err| err.context(format!("boundary face {side}, t = {t}")))?;
            }
        }
        Ok(())
    }

    fn lw_step(&mut self, dt: f64) -> Result<()> {
        let t = self.time;
        let n = self.kernel.n;
        let mut u = std::mem::take(&mut self.u);
        let result = (|| {
            self.update_means(&u);
            let lam = self.global_lambda(&u)?;
            for e in 0..self.mesh.cells() {
                lw_element_1d(
                    &self.law,
                    &self.kernel,
                    &u[e * n..(e + 1) * n],
                    dt,
                    self.mesh.x0(e),
                    self.mesh.dx(e),
                    self.disc.face_mode,
                    &mut self.ws,
                )
                .map_err(|err| err.context(format!("cell {e}, t = {t}")))?;
                self.f_nodal[e * n..(e + 1) * n].copy_from_slice(&self.ws.f_avg[..n]);
                self.traces[e] = self.ws.faces;
            }
            self.face_fluxes(t, dt, lam)?;
            for e in 0..self.mesh.cells() {
                lw_update_1d(
                    &self.kernel,
                    &mut u[e * n..(e + 1) * n],
                    &self.f_nodal[e * n..(e + 1) * n],
                    self.face_flux[e],
                    self.face_flux[e + 1],
                    dt,
                    self.mesh.dx(e),
                );
            }
            self.stage_count += 1;
            self.post_process(&mut u, t + dt)
        })();
        self.u = u;
        result
    }

    /// `du/dt` at the solution points for the instantaneous fluxes of `u`.
    pub fn residual(&mut self, u: &[L::State], t: f64, out: &mut [L::State]) -> Result<()> {
        let n = self.kernel.n;
        self.update_means(u);
        let lam = self.global_lambda(u)?;
        for e in 0..self.mesh.cells() {
            rk_element_1d(&self.law, &self.kernel, &u[e * n..(e + 1) * n], self.mesh.x0(e), self.mesh.dx(e), &mut self.ws)
                .map_err(|err| err.context(format!("cell {e}, t = {t}")))?;
            self.f_nodal[e * n..(e + 1) * n].copy_from_slice(&self.ws.f_avg[..n]);
            self.traces[e] = self.ws.faces;
        }
        self.face_fluxes(t, 0.0, lam)?;
        for e in 0..self.mesh.cells() {
            let r = &mut out[e * n..(e + 1) * n];
            flux_derivative_1d(&self.kernel, &self.f_nodal[e * n..(e + 1) * n], self.face_flux[e], self.face_flux[e + 1], r);
            let s = -1.0 / self.mesh.dx(e);
            for v in r.iter_mut() {
                *v = *v * s;
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

    /// TVB limiter, positivity limiter and a finiteness check on `u`.
    pub fn post_process(&self, u: &mut [L::State], t: f64) -> Result<()> {
        let n = self.kernel.n;
        let cells = self.mesh.cells();
        let cfg = &self.disc.limiter;
        if cfg.kind == LimiterKind::Tvb {
            let means: Vec<L::State> = (0..cells).map(|e| cell_average(&self.kernel, &u[e * n..(e + 1) * n])).collect();
            let periodic = self.boundaries[0].is_periodic();
            let lower = if periodic {
                means[cells - 1]
            } else {
                ghost_mean(&self.law, &self.boundaries[0], means[0], [self.mesh.lower(), 0.0], 0, t)?
            };
            let upper = if periodic {
                means[0]
            } else {
                ghost_mean(&self.law, &self.boundaries[1], means[cells - 1], [self.mesh.upper(), 0.0], 0, t)?
            };
            for e in 0..cells {
                let left = if e > 0 { means[e - 1] } else { lower };
                let right = if e + 1 < cells { means[e + 1] } else { upper };
                tvd_limit_1d(&self.law, &self.kernel, &mut u[e * n..(e + 1) * n], left, right, self.mesh.dx(e), cfg);
            }
        }
        if cfg.positivity {
            for e in 0..cells {
                positivity_scale(&self.law, &self.kernel, &mut u[e * n..(e + 1) * n], false, cfg.eps)
                    .map_err(|err| err.context(format!("cell {e}, t = {t}")))?;
            }
        }
        if let Some(q) = u.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numerical(format!("non-finite solution in cell {} at t = {t}", q / n)));
        }
        Ok(())
    }
}

impl<L: ConservationLaw> Solver for Solver1d<L> {
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
        let cfl = self.disc.cfl(false)?;
        let n = self.kernel.n;
        let mut rate = 0.0_f64;
        for e in 0..self.mesh.cells() {
            let (x0, dx) = (self.mesh.x0(e), self.mesh.dx(e));
            let ue = self.cell(e);
            let mut s = self.law.max_speed([x0 + 0.5 * dx, 0.0], &cell_average(&self.kernel, ue), 0)?;
            for j in 0..n {
                s = s.max(self.law.max_speed([x0 + self.kernel.nodes[j] * dx, 0.0], &ue[j], 0)?);
            }
            rate = rate.max(s / dx);
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
        let mut x = Vec::with_capacity(self.u.len());
        for e in 0..self.mesh.cells() {
            for j in 0..self.kernel.n {
                x.push([self.mesh.x0(e) + self.kernel.nodes[j] * self.mesh.dx(e), 0.0]);
            }
        }
        x
    }

    fn values(&self) -> &[L::State] {
        &self.u
    }

    fn totals(&self) -> Vec<f64> {
        let mut tot = vec![0.0; L::State::LEN];
        for e in 0..self.mesh.cells() {
            let m = cell_average(&self.kernel, self.cell(e));
            for (t, v) in tot.iter_mut().zip(m.as_slice()) {
                *t += v * self.mesh.dx(e);
            }
        }
        tot
    }

    fn error_norms(&self, exact: &dyn Fn(Point) -> L::State) -> Norms {
        norms_1d(&ErrorQuadrature::new(&self.ops), &self.mesh, self.kernel.n, &self.u, exact)
    }
}
