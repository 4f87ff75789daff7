//! Conservation laws: physical fluxes, wave speeds, eigenstructure and exact
//! solutions.

pub mod euler;
pub mod exact;
pub mod riemann;
pub mod scalar;
pub mod state;

use nalgebra::{DMatrix, DVector};

use crate::error::{capability, Result};

pub use euler::{Euler1d, Euler2d};
pub use riemann::{ExactRiemann, RiemannState};
pub use scalar::{Advection1d, Advection2d, BuckleyLeverett, Burgers1d, Burgers2d, Velocity1d, Velocity2d};
pub use state::{StateVec, Vars};

/// Physical coordinates; 1-D laws read only the first entry.
pub type Point = [f64; 2];

/// Right eigenvectors, eigenvalues and left eigenvectors of a flux Jacobian.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub r: DMatrix<f64>,
    pub lambda: DVector<f64>,
    pub l: DMatrix<f64>,
}

impl EigenDecomposition {
    /// `R diag(lambda) L`
    pub fn jacobian(&self) -> DMatrix<f64> {
        &self.r * DMatrix::from_diagonal(&self.lambda) * &self.l
    }

    /// `R |Lambda| L`
    pub fn abs_jacobian(&self) -> DMatrix<f64> {
        &self.r * DMatrix::from_diagonal(&self.lambda.map(f64::abs)) * &self.l
    }
}

/// A hyperbolic conservation law `u_t + f(u)_x (+ g(u)_y) = 0`.
///
/// `dir` selects the flux component: 0 for `f`, 1 for `g`.
pub trait ConservationLaw: Send + Sync {
    type State: StateVec;
    const DIM: usize;

    fn name(&self) -> &'static str;

    fn variable_names(&self) -> &'static [&'static str];

    /// Physical flux. Does not validate the state; see [`Self::checked_flux`].
    fn flux(&self, x: Point, u: &Self::State, dir: usize) -> Self::State;

    /// Spectral radius of the flux Jacobian.
    fn max_speed(&self, x: Point, u: &Self::State, dir: usize) -> Result<f64>;

    /// `f'(u)` for scalar laws; `None` for systems.
    fn scalar_speed(&self, _x: Point, _u: &Self::State, _dir: usize) -> Option<f64> {
        None
    }

    /// Rejects states with non-positive density or pressure.
    fn check_state(&self, _u: &Self::State) -> Result<()> {
        Ok(())
    }

    /// Rejects states where the flux itself is undefined. Lax-Wendroff
    /// stencil arguments only pass this check; they are never used for wave
    /// speeds.
    fn check_flux_argument(&self, u: &Self::State) -> Result<()> {
        self.check_state(u)
    }

    fn checked_flux(&self, x: Point, u: &Self::State, dir: usize) -> Result<Self::State> {
        self.check_state(u)?;
        Ok(self.flux(x, u, dir))
    }

    fn eigen(&self, _u: &Self::State, _dir: usize) -> Result<EigenDecomposition> {
        capability(self.name(), "eigen-decomposition")
    }

    fn roe_average(&self, _l: &Self::State, _r: &Self::State) -> Result<Self::State> {
        capability(self.name(), "Roe averaging")
    }

    /// Slowest and fastest signal speeds for HLL-type fluxes.
    fn speed_bounds(&self, x: Point, l: &Self::State, r: &Self::State, dir: usize) -> Result<(f64, f64)> {
        match (self.scalar_speed(x, l, dir), self.scalar_speed(x, r, dir)) {
            (Some(a), Some(b)) => Ok((a.min(b), a.max(b))),
            _ => capability(self.name(), "signal speed bounds"),
        }
    }

    /// Ratio of specific heats for gas-dynamics laws.
    fn gamma(&self) -> Option<f64> {
        None
    }

    /// Mirror state across a wall with normal `dir`.
    fn reflect(&self, _u: &Self::State, _dir: usize) -> Result<Self::State> {
        capability(self.name(), "reflecting walls")
    }

    /// Flux of the mirrored state, given the flux of the original.
    fn reflect_flux(&self, _f: &Self::State, _dir: usize) -> Result<Self::State> {
        capability(self.name(), "reflecting walls")
    }

    /// Invariant interval for bounded scalar laws.
    fn bounds(&self) -> Option<(f64, f64)> {
        None
    }
}

/// Largest eigenvalue magnitude of the central finite-difference Jacobian.
/// Test helper for checking `max_speed`.
pub fn fd_spectral_radius<L: ConservationLaw>(law: &L, x: Point, u: &L::State, dir: usize, h: f64) -> f64 {
    let n = L::State::LEN;
    let mut jac = DMatrix::zeros(n, n);
    for k in 0..n {
        let mut up = *u;
        let mut um = *u;
        up[k] += h;
        um[k] -= h;
        let df = (law.flux(x, &up, dir) - law.flux(x, &um, dir)) * (0.5 / h);
        for i in 0..n {
            jac[(i, k)] = df[i];
        }
    }
    jac.complex_eigenvalues().iter().fold(0.0, |m, z| m.max(z.norm()))
}
