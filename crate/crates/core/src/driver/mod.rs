//! Meshes, boundary conditions, time loops, error norms, presets and output.

pub mod boundary;
pub mod config;
pub mod mesh;
pub mod norms;
pub mod output;
pub mod presets;
pub mod run;
pub mod solver1d;
pub mod solver2d;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::basis::{Correction, PointKind};
use crate::equations::{ConservationLaw, Point};
use crate::error::{config, Error, Result};
use crate::limiter::LimiterConfig;
use crate::lw_core::FaceMode;
use crate::numflux::{Dissipation, FluxKind};
use crate::rk_reference::RkScheme;
use crate::stability::tables;

pub use boundary::{Boundary, StateFn};
pub use config::RunConfig;
pub use mesh::{Mesh1d, Mesh2d};
pub use norms::Norms;
pub use presets::{preset, PRESETS};
pub use run::{convergence_study, run, ErrorReport, ErrorRow, RunOutput};
pub use solver1d::Solver1d;
pub use solver2d::Solver2d;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TimeScheme {
    #[default]
    Lwfr,
    Rkfr,
}

impl FromStr for TimeScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lwfr" | "lw" => Ok(TimeScheme::Lwfr),
            "rkfr" | "rk" => Ok(TimeScheme::Rkfr),
            other => config(format!("unknown scheme `{other}` (expected lwfr|rkfr)")),
        }
    }
}

impl fmt::Display for TimeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimeScheme::Lwfr => "lwfr",
            TimeScheme::Rkfr => "rkfr",
        })
    }
}

/// Everything that selects the numerical method, independent of the problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Discretization {
    pub degree: usize,
    pub points: PointKind,
    pub correction: Correction,
    pub dissipation: Dissipation,
    pub face_mode: FaceMode,
    pub flux: FluxKind,
    pub limiter: LimiterConfig,
    pub scheme: TimeScheme,
    pub rk: RkScheme,
    pub cfl_safety: f64,
    pub cfl_override: Option<f64>,
    /// Used when every wave speed vanishes.
    pub dt_max: f64,
}

impl Discretization {
    /// GL points, Radau correction, D2, EA, Rusanov, no limiter.
    pub fn new(degree: usize) -> Self {
        Discretization {
            degree,
            points: PointKind::Gl,
            correction: Correction::Radau,
            dissipation: Dissipation::D2,
            face_mode: FaceMode::EA,
            flux: FluxKind::Rusanov,
            limiter: LimiterConfig::default(),
            scheme: TimeScheme::Lwfr,
            rk: RkScheme::for_degree(degree).unwrap_or(RkScheme::Rk65),
            cfl_safety: 0.95,
            cfl_override: None,
            dt_max: 1e-2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=4).contains(&self.degree) {
            return config(format!("degree must be in 1..=4, got {}", self.degree));
        }
        if self.correction == Correction::Dfr && self.points != PointKind::Gl {
            return config("the dfr correction requires gl points");
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return config(format!("cfl_safety must be in (0, 1], got {}", self.cfl_safety));
        }
        if let Some(c) = self.cfl_override {
            if !(c > 0.0) {
                return config(format!("cfl_override must be positive, got {c}"));
            }
        }
        if !(self.dt_max > 0.0) {
            return config(format!("dt_max must be positive, got {}", self.dt_max));
        }
        self.limiter.validate()
    }

    /// CFL number before the safety factor. The Runge-Kutta path uses the
    /// Lax-Wendroff value for the same correction and dissipation.
    pub fn cfl(&self, two_d: bool) -> Result<f64> {
        match self.cfl_override {
            Some(c) => Ok(c),
            None => tables::cfl(self.correction, self.dissipation, self.degree, two_d),
        }
    }
}

/// Common interface of the 1-D and 2-D solvers.
pub trait Solver {
    type Law: ConservationLaw;

    fn law(&self) -> &Self::Law;
    fn time(&self) -> f64;
    fn steps(&self) -> usize;
    /// Stable time step at the current state, before clipping.
    fn compute_dt(&self) -> Result<f64>;
    fn step(&mut self, dt: f64) -> Result<()>;
    /// Physical positions of all solution points, in storage order.
    fn nodes(&self) -> Vec<Point>;
    fn values(&self) -> &[<Self::Law as ConservationLaw>::State];
    /// Integral of every conserved variable over the domain.
    fn totals(&self) -> Vec<f64>;
    fn error_norms(&self, exact: &dyn Fn(Point) -> <Self::Law as ConservationLaw>::State) -> Norms;
}

/// Steps until `final_time`; the last step is clipped to land on it.
/// `observer` sees the solver after every step.
pub fn advance_to<S: Solver>(solver: &mut S, final_time: f64, mut observer: impl FnMut(&S)) -> Result<()> {
    let tol = 1e-12 * final_time.abs().max(1.0);
    while solver.time() < final_time - tol {
        let mut dt = solver.compute_dt()?;
        let left = final_time - solver.time();
        if dt >= left - tol {
            dt = left;
        }
        solver.step(dt)?;
        observer(solver);
    }
    Ok(())
}
