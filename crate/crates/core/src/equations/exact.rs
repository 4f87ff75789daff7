//! Closed-form solutions used as error references.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Maps `x` into the periodic interval `[a, b)`.
pub fn wrap(x: f64, a: f64, b: f64) -> f64 {
    let l = b - a;
    a + (x - a).rem_euclid(l)
}

/// Solves `u = u0(s - k u t)` by Newton iteration, the implicit solution of
/// `u_t + k (u^2/2)_s = 0` before shock formation.
pub fn burgers_characteristic<F, G>(u0: F, du0: G, s: f64, k: f64, t: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let mut u = u0(s);
    for _ in 0..100 {
        let xi = s - k * u * t;
        let g = u - u0(xi);
        let dg = 1.0 + k * t * du0(xi);
        if dg.abs() < 1e-14 {
            break;
        }
        let du = g / dg;
        u -= du;
        if du.abs() < 1e-14 * (1.0 + u.abs()) {
            return Ok(u);
        }
    }
    Err(Error::Numerical(format!("characteristic solve failed at s = {s}, t = {t}")))
}

/// `u_t + (x u)_x = 0`
pub fn advection_linear_velocity<F: Fn(f64) -> f64>(u0: F, x: f64, t: f64) -> f64 {
    let e = (-t).exp();
    e * u0(x * e)
}

/// `u_t + (x^2 u)_x = 0`
pub fn advection_quadratic_velocity<F: Fn(f64) -> f64>(u0: F, x: f64, t: f64) -> f64 {
    let d = 1.0 + t * x;
    u0(x / d) / (d * d)
}

/// Foot of the characteristic through `p` for solid-body rotation with unit
/// angular speed about `c`.
pub fn rotate_back(p: [f64; 2], c: [f64; 2], t: f64) -> [f64; 2] {
    let (s, co) = t.sin_cos();
    let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
    [c[0] + co * dx + s * dy, c[1] - s * dx + co * dy]
}

/// Isentropic vortex advected by a uniform stream on a periodic box.
#[derive(Clone, Copy, Debug)]
pub struct IsentropicVortex {
    pub beta: f64,
    pub mach: f64,
    /// Stream angle in radians.
    pub alpha: f64,
    pub center: [f64; 2],
    pub gamma: f64,
    pub lower: [f64; 2],
    pub upper: [f64; 2],
}

impl Default for IsentropicVortex {
    fn default() -> Self {
        IsentropicVortex {
            beta: 5.0,
            mach: 0.5,
            alpha: PI / 4.0,
            center: [0.0, 0.0],
            gamma: 1.4,
            lower: [-10.0, -10.0],
            upper: [10.0, 10.0],
        }
    }
}

impl IsentropicVortex {
    /// Time for the vortex to cross the box once along the diagonal.
    pub fn period(&self) -> f64 {
        (self.upper[0] - self.lower[0]) * 2f64.sqrt() / self.mach
    }

    /// `(rho, u, v, p)` at `p` and time `t`.
    pub fn primitive(&self, p: [f64; 2], t: f64) -> [f64; 4] {
        let (s, c) = self.alpha.sin_cos();
        let (u_inf, v_inf) = (self.mach * c, self.mach * s);
        let cx = wrap(self.center[0] + u_inf * t, self.lower[0], self.upper[0]);
        let cy = wrap(self.center[1] + v_inf * t, self.lower[1], self.upper[1]);
        let lx = self.upper[0] - self.lower[0];
        let ly = self.upper[1] - self.lower[1];
        let mut dx = p[0] - cx;
        let mut dy = p[1] - cy;
        dx -= lx * (dx / lx).round();
        dy -= ly * (dy / ly).round();
        let r2 = dx * dx + dy * dy;
        let g = self.gamma;
        let b = self.beta;
        let rho = (1.0 - b * b * (g - 1.0) / (8.0 * g * PI * PI) * (1.0 - r2).exp()).powf(1.0 / (g - 1.0));
        let e = (0.5 * (1.0 - r2)).exp();
        let u = u_inf - b * dy / (2.0 * PI) * e;
        let v = v_inf + b * dx / (2.0 * PI) * e;
        [rho, u, v, rho.powf(g)]
    }
}
