use std::fmt;
use std::sync::Arc;

use crate::basis::points::gauss_legendre;
use crate::equations::{ConservationLaw, Point, StateVec};
use crate::error::{config, Result};
use crate::lw_core::Trace;
use crate::numflux::{numerical_flux, select_traces, Dissipation, FluxKind};

/// Boundary data `g(x, t)`.
pub type StateFn<S> = Arc<dyn Fn(Point, f64) -> S + Send + Sync>;

/// Condition on one side of the domain.
#[derive(Clone)]
pub enum Boundary<S> {
    Periodic,
    /// The interior time-average flux leaves the domain unchanged.
    Outflow,
    /// Mirrored ghost state with the normal velocity negated.
    Reflecting,
    Dirichlet(StateFn<S>),
    /// `lower` where the coordinate along the side is below `at`, else `upper`.
    Split {
        at: f64,
        lower: Box<Boundary<S>>,
        upper: Box<Boundary<S>>,
    },
}

impl<S> fmt::Debug for Boundary<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Periodic => f.write_str("Periodic"),
            Boundary::Outflow => f.write_str("Outflow"),
            Boundary::Reflecting => f.write_str("Reflecting"),
            Boundary::Dirichlet(_) => f.write_str("Dirichlet"),
            Boundary::Split { at, lower, upper } => write!(f, "Split({lower:?} below {at}, {upper:?} above)"),
        }
    }
}

impl<S> Boundary<S> {
    pub fn dirichlet(g: impl Fn(Point, f64) -> S + Send + Sync + 'static) -> Self {
        Boundary::Dirichlet(Arc::new(g))
    }

    pub fn split(at: f64, lower: Boundary<S>, upper: Boundary<S>) -> Self {
        Boundary::Split {
            at,
            lower: Box::new(lower),
            upper: Box::new(upper),
        }
    }

    /// The condition in force at coordinate `along` on the side.
    pub fn resolve(&self, along: f64) -> &Boundary<S> {
        match self {
            Boundary::Split { at, lower, upper } => {
                if along < *at {
                    lower.resolve(along)
                } else {
                    upper.resolve(along)
                }
            }
            other => other,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Boundary::Periodic)
    }

    fn contains_periodic(&self) -> bool {
        match self {
            Boundary::Periodic => true,
            Boundary::Split { lower, upper, .. } => lower.contains_periodic() || upper.contains_periodic(),
            _ => false,
        }
    }
}

/// Checks that periodic sides come in pairs and are not split.
pub fn check_pair<S>(lower: &Boundary<S>, upper: &Boundary<S>, axis: &str) -> Result<()> {
    if lower.is_periodic() != upper.is_periodic() {
        return config(format!("periodic condition on only one side in {axis}"));
    }
    let split_periodic = |b: &Boundary<S>| !b.is_periodic() && b.contains_periodic();
    if split_periodic(lower) || split_periodic(upper) {
        return config(format!("a split boundary in {axis} cannot contain a periodic part"));
    }
    Ok(())
}

/// `(N + 1)`-point Gauss-Legendre rule on `[0, 1]` for time averages.
#[derive(Clone, Debug)]
pub struct TimeQuadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl TimeQuadrature {
    pub fn new(points: usize) -> Self {
        let (x, w) = gauss_legendre(points);
        TimeQuadrature {
            nodes: x.iter().map(|x| 0.5 * (x + 1.0)).collect(),
            weights: w.iter().map(|w| 0.5 * w).collect(),
        }
    }
}

/// Ghost trace for Dirichlet data. With `dt > 0` the solution and flux are
/// time averages over `[t, t + dt]`; with `dt = 0` they are point values.
pub fn dirichlet_trace<L: ConservationLaw>(
    law: &L,
    g: &StateFn<L::State>,
    x: Point,
    dir: usize,
    t: f64,
    dt: f64,
    quad: &TimeQuadrature,
) -> Result<Trace<L::State>> {
    let u = g(x, t);
    if dt == 0.0 {
        return Ok(Trace {
            u,
            u_avg: u,
            f_avg: law.checked_flux(x, &u, dir)?,
        });
    }
    let mut ua = L::State::zero();
    let mut fa = L::State::zero();
    for (s, w) in quad.nodes.iter().zip(&quad.weights) {
        let v = g(x, t + s * dt);
        ua = ua.axpy(*w, v);
        fa = fa.axpy(*w, law.checked_flux(x, &v, dir)?);
    }
    Ok(Trace { u, u_avg: ua, f_avg: fa })
}

/// Where a boundary face sits and which time interval the flux covers.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryFace {
    pub x: Point,
    pub dir: usize,
    /// `-1` on the lower side of the axis, `+1` on the upper side.
    pub outward: f64,
    pub t: f64,
    pub dt: f64,
}

/// Numerical flux settings shared by interior and boundary faces.
#[derive(Clone, Copy, Debug)]
pub struct FluxSettings {
    pub kind: FluxKind,
    pub dissipation: Dissipation,
    pub global_lambda: f64,
}

fn riemann_with_ghost<L: ConservationLaw>(
    law: &L,
    interior: &Trace<L::State>,
    mean: L::State,
    ghost: &Trace<L::State>,
    ghost_mean: L::State,
    face: &BoundaryFace,
    fs: &FluxSettings,
) -> Result<L::State> {
    let data = if face.outward > 0.0 {
        select_traces(interior, ghost, mean, ghost_mean, fs.dissipation, face.x, face.dir)
    } else {
        select_traces(ghost, interior, ghost_mean, mean, fs.dissipation, face.x, face.dir)
    };
    numerical_flux(law, fs.kind, &data, fs.global_lambda)
}

/// Flux through a boundary face, oriented along `+dir`.
///
/// Scalar Dirichlet data is imposed by upwinding: the time-average flux of
/// the data on inflow points, the interior flux on outflow points. Systems
/// pass the ghost trace through the numerical flux.
pub fn boundary_flux<L: ConservationLaw>(
    law: &L,
    bc: &Boundary<L::State>,
    interior: &Trace<L::State>,
    mean: L::State,
    face: &BoundaryFace,
    fs: &FluxSettings,
    quad: &TimeQuadrature,
) -> Result<L::State> {
    let along = face.x[1 - face.dir.min(1)];
    match bc.resolve(along) {
        Boundary::Periodic => config("periodic faces have no boundary flux"),
        Boundary::Outflow => Ok(interior.f_avg),
        Boundary::Reflecting => {
            let ghost = Trace {
                u: law.reflect(&interior.u, face.dir)?,
                u_avg: law.reflect(&interior.u_avg, face.dir)?,
                f_avg: law.reflect_flux(&interior.f_avg, face.dir)?,
            };
            let gm = law.reflect(&mean, face.dir)?;
            riemann_with_ghost(law, interior, mean, &ghost, gm, face, fs)
        }
        Boundary::Dirichlet(g) => {
            let ghost = dirichlet_trace(law, g, face.x, face.dir, face.t, face.dt, quad)?;
            if L::State::LEN == 1 {
                if let Some(a) = law.scalar_speed(face.x, &ghost.u, face.dir) {
                    return Ok(if a * face.outward < 0.0 { ghost.f_avg } else { interior.f_avg });
                }
            }
            riemann_with_ghost(law, interior, mean, &ghost, ghost.u, face, fs)
        }
        Boundary::Split { .. } => unreachable!("resolve never returns a split"),
    }
}

/// Neighbour mean seen by the limiter across a boundary face.
pub fn ghost_mean<L: ConservationLaw>(
    law: &L,
    bc: &Boundary<L::State>,
    mean: L::State,
    x: Point,
    dir: usize,
    t: f64,
) -> Result<L::State> {
    let along = x[1 - dir.min(1)];
    match bc.resolve(along) {
        Boundary::Periodic | Boundary::Outflow => Ok(mean),
        Boundary::Reflecting => law.reflect(&mean, dir),
        Boundary::Dirichlet(g) => Ok(g(x, t)),
        Boundary::Split { .. } => unreachable!("resolve never returns a split"),
    }
}

/// Rejects scalar Dirichlet data on a side where every point is outflow.
pub fn check_inflow<L: ConservationLaw>(
    law: &L,
    bc: &Boundary<L::State>,
    points: &[Point],
    dir: usize,
    outward: f64,
    t: f64,
) -> Result<()> {
    if L::State::LEN != 1 {
        return Ok(());
    }
    let mut dirichlet = 0;
    let mut outflow = 0;
    for &x in points {
        if let Boundary::Dirichlet(g) = bc.resolve(x[1 - dir.min(1)]) {
            dirichlet += 1;
            if let Some(a) = law.scalar_speed(x, &g(x, t), dir) {
                if a * outward > 0.0 {
                    outflow += 1;
                }
            }
        }
    }
    if dirichlet > 0 && outflow == dirichlet {
        return config(format!(
            "Dirichlet condition on an outflow side (axis {dir}, {} side)",
            if outward > 0.0 { "upper" } else { "lower" }
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{Advection1d, Euler1d, Euler2d, Vars};

    fn fs(kind: FluxKind) -> FluxSettings {
        FluxSettings {
            kind,
            dissipation: Dissipation::D2,
            global_lambda: 0.0,
        }
    }

    #[test]
    fn constant_dirichlet_gives_upwind_flux() {
        let law = Advection1d::constant(1.0);
        let bc = Boundary::dirichlet(|_, _| Vars([0.7]));
        let interior = Trace {
            u: Vars([0.2]),
            u_avg: Vars([0.2]),
            f_avg: Vars([0.2]),
        };
        let face = BoundaryFace {
            x: [0.0, 0.0],
            dir: 0,
            outward: -1.0,
            t: 0.3,
            dt: 0.01,
        };
        let f = boundary_flux(&law, &bc, &interior, Vars([0.2]), &face, &fs(FluxKind::Rusanov), &TimeQuadrature::new(3))
            .unwrap();
        assert_eq!(f[0], 0.7);
        let out = BoundaryFace { outward: 1.0, ..face };
        let f = boundary_flux(&law, &bc, &interior, Vars([0.2]), &out, &fs(FluxKind::Rusanov), &TimeQuadrature::new(3))
            .unwrap();
        assert_eq!(f[0], 0.2);
    }

    #[test]
    fn time_average_of_sine_data() {
        let law = Advection1d::constant(1.0);
        let g: StateFn<Vars<1>> = Arc::new(|_, t: f64| Vars([t.sin()]));
        let (t, dt) = (0.4, 0.01);
        let tr = dirichlet_trace(&law, &g, [0.0, 0.0], 0, t, dt, &TimeQuadrature::new(3)).unwrap();
        let exact = (t.cos() - (t + dt).cos()) / dt;
        assert!((tr.f_avg[0] - exact).abs() < 1e-12);
        assert!((tr.u[0] - t.sin()).abs() < 1e-15);
    }

    #[test]
    fn reflecting_wall_has_no_mass_flux() {
        let law = Euler1d::default();
        let u = law.conservative(1.3, 0.3, 2.0);
        let f = law.flux([1.0, 0.0], &u, 0);
        let interior = Trace { u, u_avg: u, f_avg: f };
        let face = BoundaryFace {
            x: [1.0, 0.0],
            dir: 0,
            outward: 1.0,
            t: 0.0,
            dt: 0.0,
        };
        for kind in [FluxKind::Rusanov, FluxKind::Hll, FluxKind::Hllc, FluxKind::Roe] {
            let fb = boundary_flux(&law, &Boundary::Reflecting, &interior, u, &face, &fs(kind), &TimeQuadrature::new(2))
                .unwrap();
            assert!(fb[0].abs() < 1e-12, "{kind}: mass flux {}", fb[0]);
            assert!(fb[2].abs() < 1e-12, "{kind}: energy flux {}", fb[2]);
        }
        let g = ghost_mean(&law, &Boundary::Reflecting, u, [1.0, 0.0], 0, 0.0).unwrap();
        let p = law.primitive(&g);
        assert!((p[1] + 0.3).abs() < 1e-15 && (p[0] - 1.3).abs() < 1e-15 && (p[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn split_sides_resolve_by_coordinate() {
        let law = Euler2d::default();
        let post = law.conservative(8.0, 1.0, -0.5, 100.0);
        let bc = Boundary::split(1.0 / 6.0, Boundary::dirichlet(move |_, _| post), Boundary::Reflecting);
        assert!(matches!(bc.resolve(0.1), Boundary::Dirichlet(_)));
        assert!(matches!(bc.resolve(0.2), Boundary::Reflecting));
        let u = law.conservative(1.4, 0.2, -0.1, 1.0);
        let m = ghost_mean(&law, &bc, u, [0.5, 0.0], 1, 0.0).unwrap();
        assert!((m[2] - 0.14).abs() < 1e-14);
    }

    #[test]
    fn outflow_dirichlet_side_is_rejected() {
        let law = Advection1d::constant(1.0);
        let bc = Boundary::dirichlet(|_, _| Vars([1.0]));
        assert!(check_inflow(&law, &bc, &[[1.0, 0.0]], 0, 1.0, 0.0).is_err());
        assert!(check_inflow(&law, &bc, &[[0.0, 0.0]], 0, -1.0, 0.0).is_ok());
        assert!(check_pair::<Vars<1>>(&Boundary::Periodic, &Boundary::Outflow, "x").is_err());
    }
}
