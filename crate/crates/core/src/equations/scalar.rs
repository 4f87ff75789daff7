use super::{ConservationLaw, Point, Vars};
use crate::error::Result;

type S = Vars<1>;

/// Advection speed `a(x)` in 1-D.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Velocity1d {
    Constant(f64),
    /// `a(x) = x`
    Linear,
    /// `a(x) = x^2`
    Quadratic,
}

impl Velocity1d {
    #[inline]
    pub fn at(&self, x: f64) -> f64 {
        match *self {
            Velocity1d::Constant(a) => a,
            Velocity1d::Linear => x,
            Velocity1d::Quadratic => x * x,
        }
    }
}

/// `u_t + (a(x) u)_x = 0`
#[derive(Clone, Copy, Debug)]
pub struct Advection1d {
    pub velocity: Velocity1d,
}

impl Advection1d {
    pub fn constant(a: f64) -> Self {
        Advection1d {
            velocity: Velocity1d::Constant(a),
        }
    }
}

impl ConservationLaw for Advection1d {
    type State = S;
    const DIM: usize = 1;

    fn name(&self) -> &'static str {
        "advection1d"
    }

    fn variable_names(&self) -> &'static [&'static str] {
        &["u"]
    }

    #[inline]
    fn flux(&self, x: Point, u: &S, _dir: usize) -> S {
        Vars([self.velocity.at(x[0]) * u[0]])
    }

    fn max_speed(&self, x: Point, _u: &S, _dir: usize) -> Result<f64> {
        Ok(self.velocity.at(x[0]).abs())
    }

    fn scalar_speed(&self, x: Point, _u: &S, _dir: usize) -> Option<f64> {
        Some(self.velocity.at(x[0]))
    }
}

/// `u_t + (u^2/2)_x = 0`
#[derive(Clone, Copy, Debug, Default)]
pub struct Burgers1d;

impl ConservationLaw for Burgers1d {
    type State = S;
    const DIM: usize = 1;

    fn name(&self) -> &'static str {
        "burgers1d"
    }

    fn variable_names(&self) -> &'static [&'static str] {
        &["u"]
    }

    #[inline]
    fn flux(&self, _x: Point, u: &S, _dir: usize) -> S {
        Vars([0.5 * u[0] * u[0]])
    }

    fn max_speed(&self, _x: Point, u: &S, _dir: usize) -> Result<f64> {
        Ok(u[0].abs())
    }

    fn scalar_speed(&self, _x: Point, u: &S, _dir: usize) -> Option<f64> {
        Some(u[0])
    }
}

/// Two-phase flow with the non-convex flux `4u^2 / (4u^2 + (1-u)^2)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BuckleyLeverett;

impl BuckleyLeverett {
    #[inline]
    pub fn f(u: f64) -> f64 {
        let a = 4.0 * u * u;
        a / (a + (1.0 - u) * (1.0 - u))
    }

    /// Quotient-rule derivative of [`Self::f`].
    #[inline]
    pub fn df(u: f64) -> f64 {
        let den = 4.0 * u * u + (1.0 - u) * (1.0 - u);
        let dden = 8.0 * u - 2.0 * (1.0 - u);
        (8.0 * u * den - 4.0 * u * u * dden) / (den * den)
    }
}

impl ConservationLaw for BuckleyLeverett {
    type State = S;
    const DIM: usize = 1;

    fn name(&self) -> &'static str {
        "buckley_leverett"
    }

    fn variable_names(&self) -> &'static [&'static str] {
        &["u"]
    }

    #[inline]
    fn flux(&self, _x: Point, u: &S, _dir: usize) -> S {
        Vars([Self::f(u[0])])
    }

    fn max_speed(&self, _x: Point, u: &S, _dir: usize) -> Result<f64> {
        Ok(Self::df(u[0]).abs())
    }

    fn scalar_speed(&self, _x: Point, u: &S, _dir: usize) -> Option<f64> {
        Some(Self::df(u[0]))
    }

    fn bounds(&self) -> Option<(f64, f64)> {
        Some((0.0, 1.0))
    }
}

/// Advection velocity field in 2-D.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Velocity2d {
    Constant(f64, f64),
    /// Solid-body rotation `(-(y - cy), x - cx)`.
    Rotation { cx: f64, cy: f64 },
}

impl Velocity2d {
    #[inline]
    pub fn at(&self, p: Point) -> [f64; 2] {
        match *self {
            Velocity2d::Constant(a, b) => [a, b],
            Velocity2d::Rotation { cx, cy } => [-(p[1] - cy), p[0] - cx],
        }
    }
}

/// `u_t + div(a(x, y) u) = 0` with a divergence-free field.
#[derive(Clone, Copy, Debug)]
pub struct Advection2d {
    pub velocity: Velocity2d,
}

impl ConservationLaw for Advection2d {
    type State = S;
    const DIM: usize = 2;

    fn name(&self) -> &'static str {
        "advection2d"
    }

    fn variable_names(&self) -> &'static [&'static str] {
        &["u"]
    }

    #[inline]
    fn flux(&self, x: Point, u: &S, dir: usize) -> S {
        Vars([self.velocity.at(x)[dir] * u[0]])
    }

    fn max_speed(&self, x: Point, _u: &S, dir: usize) -> Result<f64> {
        Ok(self.velocity.at(x)[dir].abs())
    }

    fn scalar_speed(&self, x: Point, _u: &S, dir: usize) -> Option<f64> {
        Some(self.velocity.at(x)[dir])
    }
}

/// `u_t + (u^2/2)_x + (u^2/2)_y = 0`
#[derive(Clone, Copy, Debug, Default)]
pub struct Burgers2d;

impl ConservationLaw for Burgers2d {
    type State = S;
    const DIM: usize = 2;

    fn name(&self) -> &'static str {
        "burgers2d"
    }

    fn variable_names(&self) -> &'static [&'static str] {
        &["u"]
    }

    #[inline]
    fn flux(&self, _x: Point, u: &S, _dir: usize) -> S {
        Vars([0.5 * u[0] * u[0]])
    }

    fn max_speed(&self, _x: Point, u: &S, _dir: usize) -> Result<f64> {
        Ok(u[0].abs())
    }

    fn scalar_speed(&self, _x: Point, u: &S, _dir: usize) -> Option<f64> {
        Some(u[0])
    }
}
