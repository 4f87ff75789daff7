use nalgebra::{DMatrix, DVector};

use super::{ConservationLaw, EigenDecomposition, Point, StateVec, Vars};
use crate::error::{Error, Result};

pub const DEFAULT_GAMMA: f64 = 1.4;

/// Compressible Euler equations in 1-D, conserved variables `(rho, rho v, E)`.
#[derive(Clone, Copy, Debug)]
pub struct Euler1d {
    pub gamma: f64,
}

/// Compressible Euler equations in 2-D, conserved variables
/// `(rho, rho u, rho v, E)`.
#[derive(Clone, Copy, Debug)]
pub struct Euler2d {
    pub gamma: f64,
}

impl Default for Euler1d {
    fn default() -> Self {
        Euler1d { gamma: DEFAULT_GAMMA }
    }
}

impl Default for Euler2d {
    fn default() -> Self {
        Euler2d { gamma: DEFAULT_GAMMA }
    }
}

impl Euler1d {
    pub fn new(gamma: f64) -> Self {
        Euler1d { gamma }
    }

    /// `(rho, v, p)` to conserved variables.
    pub fn conservative(&self, rho: f64, v: f64, p: f64) -> Vars<3> {
        Vars([rho, rho * v, p / (self.gamma - 1.0) + 0.5 * rho * v * v])
    }

    /// Conserved variables to `(rho, v, p)`.
    #[inline]
    pub fn primitive(&self, u: &Vars<3>) -> [f64; 3] {
        let v = u[1] / u[0];
        [u[0], v, (self.gamma - 1.0) * (u[2] - 0.5 * u[1] * v)]
    }

    #[inline]
    pub fn pressure(&self, u: &Vars<3>) -> f64 {
        (self.gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0])
    }
}

impl Euler2d {
    pub fn new(gamma: f64) -> Self {
        Euler2d { gamma }
    }

    /// `(rho, u, v, p)` to conserved variables.
    pub fn conservative(&self, rho: f64, u: f64, v: f64, p: f64) -> Vars<4> {
        Vars([rho, rho * u, rho * v, p / (self.gamma - 1.0) + 0.5 * rho * (u * u + v * v)])
    }

    /// Conserved variables to `(rho, u, v, p)`.
    #[inline]
    pub fn primitive(&self, s: &Vars<4>) -> [f64; 4] {
        let u = s[1] / s[0];
        let v = s[2] / s[0];
        [s[0], u, v, (self.gamma - 1.0) * (s[3] - 0.5 * (s[1] * u + s[2] * v))]
    }

    #[inline]
    pub fn pressure(&self, s: &Vars<4>) -> f64 {
        (self.gamma - 1.0) * (s[3] - 0.5 * (s[1] * s[1] + s[2] * s[2]) / s[0])
    }
}

/// Pressure of a 1-D or 2-D gas state; density first, energy last, momenta
/// in between.
#[inline]
pub fn gas_pressure<S: StateVec>(gamma: f64, u: &S) -> f64 {
    let n = S::LEN;
    let mut ke = 0.0;
    for k in 1..n - 1 {
        ke += u[k] * u[k];
    }
    (gamma - 1.0) * (u[n - 1] - 0.5 * ke / u[0])
}

fn check_gas<S: StateVec>(gamma: f64, u: &S) -> Result<()> {
    let rho = u[0];
    let p = gas_pressure(gamma, u);
    if rho > 0.0 && p > 0.0 && rho.is_finite() && p.is_finite() {
        Ok(())
    } else {
        Err(Error::positivity(rho, p))
    }
}

/// The flux formula only divides by the density.
fn check_gas_flux_argument<S: StateVec>(gamma: f64, u: &S) -> Result<()> {
    let rho = u[0];
    if rho > 0.0 && rho.is_finite() && u.is_finite() {
        Ok(())
    } else {
        Err(Error::positivity(rho, gas_pressure(gamma, u)))
    }
}

/// `(rho, velocity, pressure, sound speed, enthalpy)` with the velocity
/// projected on `dir`.
fn gas_primitives<S: StateVec>(gamma: f64, u: &S) -> Result<(f64, [f64; 2], f64, f64, f64)> {
    check_gas(gamma, u)?;
    let n = S::LEN;
    let rho = u[0];
    let mut vel = [0.0; 2];
    for k in 1..n - 1 {
        vel[k - 1] = u[k] / rho;
    }
    let p = (gamma - 1.0) * (u[n - 1] - 0.5 * rho * (vel[0] * vel[0] + vel[1] * vel[1]));
    let c = (gamma * p / rho).sqrt();
    let h = (u[n - 1] + p) / rho;
    Ok((rho, vel, p, c, h))
}

/// Roe average; the returned state carries the averaged velocity and enthalpy.
fn roe_state<S: StateVec>(gamma: f64, l: &S, r: &S) -> Result<S> {
    let (rl, vl, _, _, hl) = gas_primitives(gamma, l)?;
    let (rr, vr, _, _, hr) = gas_primitives(gamma, r)?;
    let (sl, sr) = (rl.sqrt(), rr.sqrt());
    let w = 1.0 / (sl + sr);
    let rho = sl * sr;
    let v = [(sl * vl[0] + sr * vr[0]) * w, (sl * vl[1] + sr * vr[1]) * w];
    let h = (sl * hl + sr * hr) * w;
    let q2 = v[0] * v[0] + v[1] * v[1];
    let c2 = (gamma - 1.0) * (h - 0.5 * q2);
    if c2 <= 0.0 {
        return Err(Error::positivity(rho, rho * c2 / gamma));
    }
    let p = rho * c2 / gamma;
    let n = S::LEN;
    let mut out = S::zero();
    out[0] = rho;
    for k in 1..n - 1 {
        out[k] = rho * v[k - 1];
    }
    out[n - 1] = p / (gamma - 1.0) + 0.5 * rho * q2;
    Ok(out)
}

/// Pressure-based wave-speed estimates from the two-state PVRS solution.
fn pvrs_bounds<S: StateVec>(gamma: f64, l: &S, r: &S, dir: usize) -> Result<(f64, f64)> {
    let (rl, vl, pl, cl, _) = gas_primitives(gamma, l)?;
    let (rr, vr, pr, cr, _) = gas_primitives(gamma, r)?;
    let (ul, ur) = (vl[dir], vr[dir]);
    let rho_bar = 0.5 * (rl + rr);
    let c_bar = 0.5 * (cl + cr);
    let p_star = (0.5 * (pl + pr) - 0.5 * (ur - ul) * rho_bar * c_bar).max(0.0);
    let q = |p: f64| {
        if p_star <= p {
            1.0
        } else {
            (1.0 + (gamma + 1.0) / (2.0 * gamma) * (p_star / p - 1.0)).sqrt()
        }
    };
    Ok((ul - cl * q(pl), ur + cr * q(pr)))
}

fn gas_eigen<S: StateVec>(gamma: f64, u: &S, dir: usize) -> Result<EigenDecomposition> {
    let (_, vel, _, c, h) = gas_primitives(gamma, u)?;
    let n = S::LEN;
    let q2 = vel[0] * vel[0] + vel[1] * vel[1];
    let vn = vel[dir];
    let mut r = DMatrix::zeros(n, n);
    let mut lambda = DVector::zeros(n);
    if n == 3 {
        let v = vel[0];
        r.copy_from_slice(&[1.0, v - c, h - v * c, 1.0, v, 0.5 * v * v, 1.0, v + c, h + v * c]);
        lambda.copy_from_slice(&[v - c, v, v + c]);
    } else {
        let (nx, ny) = if dir == 0 { (1.0, 0.0) } else { (0.0, 1.0) };
        let vt = -vel[0] * ny + vel[1] * nx;
        r.copy_from_slice(&[
            1.0,
            vel[0] - c * nx,
            vel[1] - c * ny,
            h - vn * c,
            1.0,
            vel[0],
            vel[1],
            0.5 * q2,
            0.0,
            -ny,
            nx,
            vt,
            1.0,
            vel[0] + c * nx,
            vel[1] + c * ny,
            h + vn * c,
        ]);
        lambda.copy_from_slice(&[vn - c, vn, vn, vn + c]);
    }
    let l = r
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Numerical("singular eigenvector matrix".into()))?;
    Ok(EigenDecomposition { r, lambda, l })
}

impl ConservationLaw for Euler1d {
    type State = Vars<3>;
    const DIM: usize = 1;

    fn name(&self) -> &'static str {
        "euler1d"
    }

    fn variable_names(&self) -> &'static [&'static str] {
        &["rho", "rho_v", "energy"]
    }

    #[inline]
    fn flux(&self, _x: Point, u: &Vars<3>, _dir: usize) -> Vars<3> {
        let v = u[1] / u[0];
        let p = (self.gamma - 1.0) * (u[2] - 0.5 * u[1] * v);
        Vars([u[1], u[1] * v + p, (u[2] + p) * v])
    }

    fn max_speed(&self, _x: Point, u: &Vars<3>, _dir: usize) -> Result<f64> {
        let (_, vel, _, c, _) = gas_primitives(self.gamma, u)?;
        Ok(vel[0].abs() + c)
    }

    fn check_state(&self, u: &Vars<3>) -> Result<()> {
        check_gas(self.gamma, u)
    }

    fn check_flux_argument(&self, u: &Vars<3>) -> Result<()> {
        check_gas_flux_argument(self.gamma, u)
    }

    fn eigen(&self, u: &Vars<3>, dir: usize) -> Result<EigenDecomposition> {
        gas_eigen(self.gamma, u, dir)
    }

    fn roe_average(&self, l: &Vars<3>, r: &Vars<3>) -> Result<Vars<3>> {
        roe_state(self.gamma, l, r)
    }

    fn speed_bounds(&self, _x: Point, l: &Vars<3>, r: &Vars<3>, dir: usize) -> Result<(f64, f64)> {
        pvrs_bounds(self.gamma, l, r, dir)
    }

    fn gamma(&self) -> Option<f64> {
        Some(self.gamma)
    }

    fn reflect(&self, u: &Vars<3>, _dir: usize) -> Result<Vars<3>> {
        Ok(Vars([u[0], -u[1], u[2]]))
    }

    fn reflect_flux(&self, f: &Vars<3>, _dir: usize) -> Result<Vars<3>> {
        Ok(Vars([-f[0], f[1], -f[2]]))
    }
}

impl ConservationLaw for Euler2d {
    type State = Vars<4>;
    const DIM: usize = 2;

    fn name(&self) -> &'static str {
        "euler2d"
    }

    fn variable_names(&self) -> &'static [&'static str] {
        &["rho", "rho_u", "rho_v", "energy"]
    }

    #[inline]
    fn flux(&self, _x: Point, s: &Vars<4>, dir: usize) -> Vars<4> {
        let u = s[1] / s[0];
        let v = s[2] / s[0];
        let p = (self.gamma - 1.0) * (s[3] - 0.5 * (s[1] * u + s[2] * v));
        if dir == 0 {
            Vars([s[1], s[1] * u + p, s[2] * u, (s[3] + p) * u])
        } else {
            Vars([s[2], s[1] * v, s[2] * v + p, (s[3] + p) * v])
        }
    }

    fn max_speed(&self, _x: Point, u: &Vars<4>, dir: usize) -> Result<f64> {
        let (_, vel, _, c, _) = gas_primitives(self.gamma, u)?;
        Ok(vel[dir].abs() + c)
    }

    fn check_state(&self, u: &Vars<4>) -> Result<()> {
        check_gas(self.gamma, u)
    }

    fn check_flux_argument(&self, u: &Vars<4>) -> Result<()> {
        check_gas_flux_argument(self.gamma, u)
    }

    fn eigen(&self, u: &Vars<4>, dir: usize) -> Result<EigenDecomposition> {
        gas_eigen(self.gamma, u, dir)
    }

    fn roe_average(&self, l: &Vars<4>, r: &Vars<4>) -> Result<Vars<4>> {
        roe_state(self.gamma, l, r)
    }

    fn speed_bounds(&self, _x: Point, l: &Vars<4>, r: &Vars<4>, dir: usize) -> Result<(f64, f64)> {
        pvrs_bounds(self.gamma, l, r, dir)
    }

    fn gamma(&self) -> Option<f64> {
        Some(self.gamma)
    }

    fn reflect(&self, u: &Vars<4>, dir: usize) -> Result<Vars<4>> {
        let mut m = *u;
        m[1 + dir] = -m[1 + dir];
        Ok(m)
    }

    fn reflect_flux(&self, f: &Vars<4>, dir: usize) -> Result<Vars<4>> {
        let mut m = -*f;
        m[1 + dir] = f[1 + dir];
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_jacobian<L: ConservationLaw>(law: &L, u: &L::State, dir: usize) -> DMatrix<f64> {
        let n = L::State::LEN;
        let h = 1e-7;
        let mut j = DMatrix::zeros(n, n);
        for k in 0..n {
            let mut up = *u;
            let mut um = *u;
            up[k] += h;
            um[k] -= h;
            let df = (law.flux([0.0; 2], &up, dir) - law.flux([0.0; 2], &um, dir)) * (0.5 / h);
            for i in 0..n {
                j[(i, k)] = df[i];
            }
        }
        j
    }

    #[test]
    fn rest_state() {
        let e = Euler1d::default();
        let u = e.conservative(1.0, 0.0, 1.0);
        assert!((u - Vars([1.0, 0.0, 2.5])).max_abs() < 1e-15);
        assert!((e.flux([0.0; 2], &u, 0) - Vars([0.0, 1.0, 0.0])).max_abs() < 1e-15);
        assert!((e.max_speed([0.0; 2], &u, 0).unwrap() - 1.4f64.sqrt()).abs() < 1e-15);
        let eig = e.eigen(&u, 0).unwrap();
        let s = 1.4f64.sqrt();
        assert!((eig.lambda[0] + s).abs() < 1e-14 && eig.lambda[1].abs() < 1e-14 && (eig.lambda[2] - s).abs() < 1e-14);
    }

    #[test]
    fn eigen_reproduces_jacobian() {
        let e1 = Euler1d::default();
        let u = e1.conservative(1.3, 0.7, 2.1);
        let eig = e1.eigen(&u, 0).unwrap();
        let diff = (eig.jacobian() - fd_jacobian(&e1, &u, 0)).abs().max();
        assert!(diff < 1e-6, "{diff}");
        assert!((&eig.l * &eig.r - DMatrix::identity(3, 3)).abs().max() < 1e-12);

        let e2 = Euler2d::default();
        let s = e2.conservative(0.8, -0.4, 1.1, 0.9);
        for dir in 0..2 {
            let eig = e2.eigen(&s, dir).unwrap();
            let diff = (eig.jacobian() - fd_jacobian(&e2, &s, dir)).abs().max();
            assert!(diff < 1e-6, "dir {dir}: {diff}");
            assert!((&eig.l * &eig.r - DMatrix::identity(4, 4)).abs().max() < 1e-12);
        }
    }

    #[test]
    fn roe_average_of_equal_states() {
        let e = Euler1d::default();
        let u = e.conservative(0.9, -0.3, 1.7);
        let r = e.roe_average(&u, &u).unwrap();
        assert!((r - u).max_abs() < 1e-14);
    }

    #[test]
    fn roe_property() {
        let e = Euler1d::default();
        let l = e.conservative(1.0, 0.2, 1.0);
        let r = e.conservative(0.3, -0.5, 0.4);
        let a = e.eigen(&e.roe_average(&l, &r).unwrap(), 0).unwrap().jacobian();
        let du = DVector::from_column_slice((r - l).as_slice());
        let df = e.flux([0.0; 2], &r, 0) - e.flux([0.0; 2], &l, 0);
        let lhs = a * du;
        for i in 0..3 {
            assert!((lhs[i] - df[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn non_physical_states_are_rejected() {
        let e = Euler1d::default();
        assert!(matches!(e.max_speed([0.0; 2], &Vars([-0.1, 0.0, 1.0]), 0), Err(Error::Positivity { .. })));
        assert!(e.check_state(&Vars([1.0, 0.0, -1.0])).is_err());
        assert!(e.checked_flux([0.0; 2], &Vars([1.0, 0.0, -1.0]), 0).is_err());
    }

    #[test]
    fn reflection() {
        let e = Euler2d::default();
        let s = e.conservative(1.0, 0.3, -0.2, 1.0);
        let m = e.reflect(&s, 0).unwrap();
        assert_eq!(e.primitive(&m)[1], -0.3);
        assert_eq!(e.primitive(&m)[2], -0.2);
        for dir in 0..2 {
            let m = e.reflect(&s, dir).unwrap();
            let f = e.flux([0.0; 2], &s, dir);
            let fm = e.reflect_flux(&f, dir).unwrap();
            assert!((fm - e.flux([0.0; 2], &m, dir)).max_abs() < 1e-14);
        }
    }

    #[test]
    fn primitive_round_trip() {
        let e = Euler2d::default();
        let s = e.conservative(1.7, 0.1, -2.0, 0.3);
        let p = e.primitive(&s);
        let back = e.conservative(p[0], p[1], p[2], p[3]);
        assert!((back - s).max_abs() < 1e-14);
    }
}
