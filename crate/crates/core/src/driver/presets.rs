//! Test problems: default settings, initial data, boundary conditions and
//! closed-form solutions where they exist.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::equations::exact::{
    advection_linear_velocity, advection_quadratic_velocity, burgers_characteristic, rotate_back, wrap, IsentropicVortex,
};
use crate::equations::{
    Advection1d, Advection2d, BuckleyLeverett, Burgers1d, Burgers2d, ConservationLaw, Euler1d, Euler2d, ExactRiemann,
    Point, RiemannState, Vars, Velocity1d, Velocity2d,
};
use crate::error::{capability, config, Error, Result};
use crate::limiter::LimiterKind;
use crate::numflux::FluxKind;

use super::boundary::Boundary;
use super::config::RunConfig;

pub const PRESETS: &[&str] = &[
    "advection1d_sin",
    "advection1d_sin_dirichlet",
    "advection1d_wavepacket",
    "advection1d_hat",
    "advection1d_composite",
    "advection1d_linear",
    "advection1d_quadratic",
    "burgers1d_sin",
    "buckley1d",
    "euler1d_density_wave",
    "euler1d_sod",
    "euler1d_lax",
    "euler1d_shu_osher",
    "euler1d_blast",
    "euler1d_contact",
    "euler1d_toro5",
    "advection2d_sin",
    "advection2d_rotation",
    "advection2d_composite",
    "burgers2d",
    "euler2d_vortex",
    "euler2d_dmr",
];

/// Which conservation law a preset solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Advection1d,
    Burgers1d,
    Buckley1d,
    Euler1d,
    Advection2d,
    Burgers2d,
    Euler2d,
}

impl Family {
    pub fn of(preset: &str) -> Result<Self> {
        if !PRESETS.contains(&preset) {
            return Err(Error::UnknownPreset(preset.to_string()));
        }
        Ok(match preset.split('_').next().unwrap_or("") {
            "advection1d" => Family::Advection1d,
            "burgers1d" => Family::Burgers1d,
            "buckley1d" => Family::Buckley1d,
            "euler1d" => Family::Euler1d,
            "advection2d" => Family::Advection2d,
            "burgers2d" => Family::Burgers2d,
            _ => Family::Euler2d,
        })
    }

    pub fn two_d(self) -> bool {
        matches!(self, Family::Advection2d | Family::Burgers2d | Family::Euler2d)
    }
}

/// Default configuration of a preset.
pub fn preset(name: &str) -> Result<RunConfig> {
    Family::of(name)?;
    let mut c;
    match name {
        "advection1d_sin" | "advection1d_sin_dirichlet" => {
            c = RunConfig::base(name, [0.0, 1.0], 2.0);
        }
        "advection1d_wavepacket" => {
            c = RunConfig::base(name, [-1.0, 1.0], 1.0);
            c.cells = 50;
        }
        "advection1d_hat" => {
            c = RunConfig::base(name, [0.0, 1.0], 1.0);
            c.cells = 50;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 100.0;
        }
        "advection1d_composite" => {
            c = RunConfig::base(name, [-1.0, 1.0], 8.0);
            c.cells = 100;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 50.0;
        }
        "advection1d_linear" => {
            c = RunConfig::base(name, [0.1, 2.0 * PI], 1.0);
        }
        "advection1d_quadratic" => {
            c = RunConfig::base(name, [0.1, 1.0], 1.0);
        }
        "burgers1d_sin" => {
            c = RunConfig::base(name, [0.0, 2.0 * PI], 2.0);
            c.cells = 100;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 1.0;
        }
        "buckley1d" => {
            c = RunConfig::base(name, [-1.0, 1.0], 0.4);
            c.cells = 50;
            c.flux = FluxKind::Upwind;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 0.0;
            c.positivity = true;
            c.cfl_override = Some(0.079);
        }
        "euler1d_density_wave" => {
            c = RunConfig::base(name, [0.0, 1.0], 1.0);
        }
        "euler1d_sod" => {
            c = RunConfig::base(name, [0.0, 1.0], 0.2);
            c.cells = 100;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 10.0;
        }
        "euler1d_lax" => {
            c = RunConfig::base(name, [-5.0, 5.0], 1.3);
            c.cells = 200;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 1.0;
        }
        "euler1d_shu_osher" => {
            c = RunConfig::base(name, [-5.0, 5.0], 1.8);
            c.cells = 400;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 300.0;
        }
        "euler1d_blast" => {
            c = RunConfig::base(name, [0.0, 1.0], 0.038);
            c.cells = 400;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 300.0;
            c.positivity = true;
        }
        "euler1d_contact" => {
            c = RunConfig::base(name, [0.0, 1.0], 1.0);
            c.cells = 100;
            c.degree = 4;
            c.flux = FluxKind::Hllc;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 1.0;
        }
        "euler1d_toro5" => {
            c = RunConfig::base(name, [0.0, 1.0], 0.012);
            c.cells = 100;
            c.degree = 4;
            c.flux = FluxKind::Hllc;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 1.0;
            c.positivity = true;
        }
        "advection2d_sin" => {
            c = RunConfig::base(name, [0.0, 1.0], 1.0);
            c.cells = 20;
        }
        "advection2d_rotation" => {
            c = RunConfig::base(name, [0.0, 1.0], 0.5 * PI);
            c.cells = 20;
        }
        "advection2d_composite" => {
            c = RunConfig::base(name, [0.0, 1.0], 2.0 * PI);
            c.cells = 100;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 100.0;
        }
        "burgers2d" => {
            c = RunConfig::base(name, [0.0, 1.0], 0.1);
            c.cells = 20;
        }
        "euler2d_vortex" => {
            let v = IsentropicVortex::default();
            c = RunConfig::base(name, [v.lower[0], v.upper[0]], v.period());
            c.domain_y = Some([v.lower[1], v.upper[1]]);
            c.cells = 40;
            c.flux = FluxKind::Hllc;
        }
        "euler2d_dmr" => {
            c = RunConfig::base(name, [0.0, 4.0], 0.2);
            c.domain_y = Some([0.0, 1.0]);
            c.degree = 2;
            c.cells = 960;
            c.cells_y = Some(240);
            c.flux = FluxKind::Hllc;
            c.limiter = LimiterKind::Tvb;
            c.tvb_m = 100.0;
            c.positivity = true;
        }
        _ => unreachable!("registered preset without defaults"),
    }
    if c.domain_y.is_none() && Family::of(name)?.two_d() {
        c.domain_y = Some(c.domain);
    }
    Ok(c)
}

pub type InitialFn<S> = Arc<dyn Fn(Point) -> S + Send + Sync>;
pub type ExactFn<S> = Arc<dyn Fn(Point, f64) -> S + Send + Sync>;

/// A fully specified problem for one law.
pub struct Case<L: ConservationLaw> {
    pub law: L,
    pub initial: InitialFn<L::State>,
    pub exact: Option<ExactFn<L::State>>,
    /// `[left, right]` in 1-D, `[left, right, bottom, top]` in 2-D.
    pub boundaries: Vec<Boundary<L::State>>,
}

type S1 = Vars<1>;

fn scalar_1d(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> InitialFn<S1> {
    Arc::new(move |x: Point| Vars([f(x[0])]))
}

/// Composite signal of smooth and non-smooth profiles on `[-1, 1]`.
pub fn composite_profile(x: f64) -> f64 {
    let delta = 0.005;
    let beta = 2f64.ln() / (36.0 * delta * delta);
    let (z, a, alpha) = (-0.7, 0.5, 10.0);
    if (-0.8..=-0.6).contains(&x) {
        (-beta * (x - z).powi(2)).exp()
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        (1.0 - alpha * alpha * (x - a).powi(2)).max(0.0).sqrt()
    } else {
        0.0
    }
}

/// Smooth hump, cone and slotted disc on the unit square.
pub fn rotation_profile(p: Point) -> f64 {
    let r0 = 0.15;
    let dist = |c: [f64; 2]| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt();
    let hump = 0.25 * (1.0 + (PI * dist([0.25, 0.5]).min(r0) / r0).cos());
    let d = dist([0.5, 0.25]);
    let cone = if d <= r0 { 1.0 - d / r0 } else { 0.0 };
    let in_slot = (p[0] - 0.5).abs() < 0.025 && p[1] < 0.85;
    let disc = if dist([0.5, 0.75]) <= r0 && !in_slot { 1.0 } else { 0.0 };
    hump + cone + disc
}

pub fn advection1d(cfg: &RunConfig) -> Result<Case<Advection1d>> {
    let [a, b] = cfg.domain;
    let periodic = |u0: fn(f64) -> f64| -> Case<Advection1d> {
        Case {
            law: Advection1d::constant(1.0),
            initial: scalar_1d(u0),
            exact: Some(Arc::new(move |x: Point, t: f64| Vars([u0(wrap(x[0] - t, a, b))]))),
            boundaries: vec![Boundary::Periodic, Boundary::Periodic],
        }
    };
    let sin = |x: f64| (2.0 * PI * x).sin();
    let case = match cfg.preset.as_str() {
        "advection1d_sin" => periodic(sin),
        "advection1d_sin_dirichlet" => Case {
            law: Advection1d::constant(1.0),
            initial: scalar_1d(sin),
            exact: Some(Arc::new(move |x: Point, t: f64| Vars([sin(x[0] - t)]))),
            boundaries: vec![Boundary::dirichlet(move |x: Point, t: f64| Vars([sin(x[0] - t)])), Boundary::Outflow],
        },
        "advection1d_wavepacket" => periodic(|x| (-10.0 * x * x).exp() * (10.0 * PI * x).sin()),
        "advection1d_hat" => periodic(|x| if x > 0.25 && x < 0.75 { 1.0 } else { 0.0 }),
        "advection1d_composite" => periodic(composite_profile),
        "advection1d_linear" | "advection1d_quadratic" => {
            let (velocity, u0, exact): (_, fn(f64) -> f64, fn(fn(f64) -> f64, f64, f64) -> f64) =
                if cfg.preset == "advection1d_linear" {
                    (Velocity1d::Linear, |x| (12.0 * (x - 0.1)).sin(), advection_linear_velocity)
                } else {
                    (Velocity1d::Quadratic, |x| (0.5 * PI * x).cos(), advection_quadratic_velocity)
                };
            let ex = move |x: Point, t: f64| Vars([exact(u0, x[0], t)]);
            Case {
                law: Advection1d { velocity },
                initial: scalar_1d(u0),
                exact: Some(Arc::new(ex)),
                boundaries: vec![Boundary::dirichlet(ex), Boundary::Outflow],
            }
        }
        other => return config(format!("`{other}` is not an advection1d preset")),
    };
    Ok(case)
}

pub fn burgers1d(cfg: &RunConfig) -> Result<Case<Burgers1d>> {
    if cfg.preset != "burgers1d_sin" {
        return config(format!("`{}` is not a burgers1d preset", cfg.preset));
    }
    let u0 = |x: f64| 0.2 * x.sin();
    let du0 = |x: f64| 0.2 * x.cos();
    Ok(Case {
        law: Burgers1d,
        initial: scalar_1d(u0),
        exact: Some(Arc::new(move |x: Point, t: f64| {
            Vars([burgers_characteristic(u0, du0, x[0], 1.0, t).unwrap_or(f64::NAN)])
        })),
        boundaries: vec![Boundary::Periodic, Boundary::Periodic],
    })
}

pub fn buckley1d(cfg: &RunConfig) -> Result<Case<BuckleyLeverett>> {
    if cfg.preset != "buckley1d" {
        return config(format!("`{}` is not a buckley1d preset", cfg.preset));
    }
    Ok(Case {
        law: BuckleyLeverett,
        initial: scalar_1d(|x| if (-0.5..=0.0).contains(&x) { 1.0 } else { 0.0 }),
        exact: None,
        boundaries: vec![Boundary::Outflow, Boundary::Outflow],
    })
}

fn riemann_case(law: Euler1d, left: RiemannState, right: RiemannState, x0: f64, exact: bool) -> Result<Case<Euler1d>> {
    let cons = move |s: RiemannState| law.conservative(s.rho, s.v, s.p);
    let exact: Option<ExactFn<Vars<3>>> = if exact {
        let rs = ExactRiemann::new(left, right, law.gamma)?;
        Some(Arc::new(move |x: Point, t: f64| cons(rs.at(x[0], x0, t))))
    } else {
        None
    };
    Ok(Case {
        law,
        initial: Arc::new(move |x: Point| cons(if x[0] < x0 { left } else { right })),
        exact,
        boundaries: vec![Boundary::Outflow, Boundary::Outflow],
    })
}

pub fn euler1d(cfg: &RunConfig) -> Result<Case<Euler1d>> {
    let law = Euler1d::default();
    let rs = RiemannState::new;
    match cfg.preset.as_str() {
        "euler1d_density_wave" => {
            let [a, b] = cfg.domain;
            let state = move |x: f64| law.conservative(1.0 + 0.5 * (2.0 * PI * x).sin(), 1.0, 1.0);
            Ok(Case {
                law,
                initial: Arc::new(move |x: Point| state(x[0])),
                exact: Some(Arc::new(move |x: Point, t: f64| state(wrap(x[0] - t, a, b)))),
                boundaries: vec![Boundary::Periodic, Boundary::Periodic],
            })
        }
        "euler1d_sod" => riemann_case(law, rs(1.0, 0.0, 1.0), rs(0.125, 0.0, 0.1), 0.5, true),
        "euler1d_lax" => riemann_case(law, rs(0.445, 0.698, 3.528), rs(0.5, 0.0, 0.571), 0.0, true),
        "euler1d_toro5" => riemann_case(law, rs(1.0, -19.59745, 1000.0), rs(1.0, -19.59745, 0.01), 0.8, true),
        "euler1d_contact" => {
            let mut case = riemann_case(law, rs(1.0, 0.0, 1.0), rs(2.0, 0.0, 1.0), 0.5, false)?;
            let initial = case.initial.clone();
            case.exact = Some(Arc::new(move |x: Point, _t: f64| initial(x)));
            // the solution is steady, so the sides hold the initial states
            let (l, r) = (law.conservative(1.0, 0.0, 1.0), law.conservative(2.0, 0.0, 1.0));
            case.boundaries = vec![Boundary::dirichlet(move |_, _| l), Boundary::dirichlet(move |_, _| r)];
            Ok(case)
        }
        "euler1d_shu_osher" => Ok(Case {
            law,
            initial: Arc::new(move |x: Point| {
                if x[0] < -4.0 {
                    law.conservative(3.857143, 2.629369, 10.333333)
                } else {
                    law.conservative(1.0 + 0.2 * (5.0 * x[0]).sin(), 0.0, 1.0)
                }
            }),
            exact: None,
            boundaries: vec![Boundary::Outflow, Boundary::Outflow],
        }),
        "euler1d_blast" => Ok(Case {
            law,
            initial: Arc::new(move |x: Point| {
                let p = if x[0] < 0.1 {
                    1000.0
                } else if x[0] < 0.9 {
                    0.01
                } else {
                    100.0
                };
                law.conservative(1.0, 0.0, p)
            }),
            exact: None,
            boundaries: vec![Boundary::Reflecting, Boundary::Reflecting],
        }),
        other => config(format!("`{other}` is not an euler1d preset")),
    }
}

pub fn advection2d(cfg: &RunConfig) -> Result<Case<Advection2d>> {
    let [a, b] = cfg.domain;
    let [c, d] = cfg.domain_y.unwrap_or(cfg.domain);
    match cfg.preset.as_str() {
        "advection2d_sin" => {
            let u0 = |p: Point| (2.0 * PI * p[0]).sin() * (2.0 * PI * p[1]).sin();
            Ok(Case {
                law: Advection2d {
                    velocity: Velocity2d::Constant(1.0, 1.0),
                },
                initial: Arc::new(move |p: Point| Vars([u0(p)])),
                exact: Some(Arc::new(move |p: Point, t: f64| Vars([u0([wrap(p[0] - t, a, b), wrap(p[1] - t, c, d)])]))),
                boundaries: vec![Boundary::Periodic; 4],
            })
        }
        "advection2d_rotation" => {
            let u0 = |p: Point| 1.0 + (-50.0 * ((p[0] - 0.5).powi(2) + p[1] * p[1])).exp();
            let ex = move |p: Point, t: f64| Vars([u0(rotate_back(p, [0.0, 0.0], t))]);
            Ok(Case {
                law: Advection2d {
                    velocity: Velocity2d::Rotation { cx: 0.0, cy: 0.0 },
                },
                initial: Arc::new(move |p: Point| Vars([u0(p)])),
                exact: Some(Arc::new(ex)),
                boundaries: vec![Boundary::Outflow, Boundary::dirichlet(ex), Boundary::dirichlet(ex), Boundary::Outflow],
            })
        }
        "advection2d_composite" => Ok(Case {
            law: Advection2d {
                velocity: Velocity2d::Rotation { cx: 0.5, cy: 0.5 },
            },
            initial: Arc::new(|p: Point| Vars([rotation_profile(p)])),
            exact: Some(Arc::new(|p: Point, t: f64| Vars([rotation_profile(rotate_back(p, [0.5, 0.5], t))]))),
            boundaries: (0..4).map(|_| Boundary::dirichlet(|_, _| Vars([0.0]))).collect(),
        }),
        other => config(format!("`{other}` is not an advection2d preset")),
    }
}

pub fn burgers2d(cfg: &RunConfig) -> Result<Case<Burgers2d>> {
    if cfg.preset != "burgers2d" {
        return config(format!("`{}` is not a burgers2d preset", cfg.preset));
    }
    let u0 = |s: f64| 0.25 + 0.5 * (2.0 * PI * s).sin();
    let du0 = |s: f64| PI * (2.0 * PI * s).cos();
    Ok(Case {
        law: Burgers2d,
        initial: Arc::new(move |p: Point| Vars([u0(p[0] + p[1])])),
        exact: Some(Arc::new(move |p: Point, t: f64| {
            Vars([burgers_characteristic(u0, du0, p[0] + p[1], 2.0, t).unwrap_or(f64::NAN)])
        })),
        boundaries: vec![Boundary::Periodic; 4],
    })
}

/// Mach 10 shock state of the double Mach reflection problem.
pub fn dmr_state(law: Euler2d, p: Point, t: f64) -> Vars<4> {
    let (s, c) = (PI / 6.0).sin_cos();
    if p[0] < 1.0 / 6.0 + (p[1] + 20.0 * t) / 3f64.sqrt() {
        law.conservative(8.0, 8.25 * c, -8.25 * s, 116.5)
    } else {
        law.conservative(1.4, 0.0, 0.0, 1.0)
    }
}

pub fn euler2d(cfg: &RunConfig) -> Result<Case<Euler2d>> {
    let law = Euler2d::default();
    match cfg.preset.as_str() {
        "euler2d_vortex" => {
            let v = IsentropicVortex {
                gamma: law.gamma,
                lower: [cfg.domain[0], cfg.domain_y.unwrap_or(cfg.domain)[0]],
                upper: [cfg.domain[1], cfg.domain_y.unwrap_or(cfg.domain)[1]],
                ..Default::default()
            };
            let state = move |p: Point, t: f64| {
                let [rho, u, w, pr] = v.primitive(p, t);
                law.conservative(rho, u, w, pr)
            };
            Ok(Case {
                law,
                initial: Arc::new(move |p: Point| state(p, 0.0)),
                exact: Some(Arc::new(state)),
                boundaries: vec![Boundary::Periodic; 4],
            })
        }
        "euler2d_dmr" => {
            let ub = move |p: Point, t: f64| dmr_state(law, p, t);
            Ok(Case {
                law,
                initial: Arc::new(move |p: Point| ub(p, 0.0)),
                exact: None,
                boundaries: vec![
                    Boundary::dirichlet(ub),
                    Boundary::Outflow,
                    Boundary::split(1.0 / 6.0, Boundary::Outflow, Boundary::Reflecting),
                    Boundary::dirichlet(ub),
                ],
            })
        }
        other => config(format!("`{other}` is not an euler2d preset")),
    }
}

/// Closed-form solution of a preset at `x` and time `t`, one entry per
/// conserved variable.
pub fn exact_solution(name: &str, x: Point, t: f64) -> Result<Vec<f64>> {
    let cfg = preset(name)?;
    fn eval<L: ConservationLaw>(case: Case<L>, name: &str, x: Point, t: f64) -> Result<Vec<f64>> {
        use crate::equations::StateVec;
        match case.exact {
            Some(f) => Ok(f(x, t).as_slice().to_vec()),
            None => capability(name, "a closed-form solution"),
        }
    }
    match Family::of(name)? {
        Family::Advection1d => eval(advection1d(&cfg)?, name, x, t),
        Family::Burgers1d => eval(burgers1d(&cfg)?, name, x, t),
        Family::Buckley1d => eval(buckley1d(&cfg)?, name, x, t),
        Family::Euler1d => eval(euler1d(&cfg)?, name, x, t),
        Family::Advection2d => eval(advection2d(&cfg)?, name, x, t),
        Family::Burgers2d => eval(burgers2d(&cfg)?, name, x, t),
        Family::Euler2d => eval(euler2d(&cfg)?, name, x, t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_has_defaults_and_a_case() {
        for name in PRESETS {
            let cfg = preset(name).unwrap();
            cfg.validate().unwrap();
            assert_eq!(cfg.preset, *name);
        }
        assert!(matches!(preset("dmr2"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn sod_initial_data() {
        let cfg = preset("euler1d_sod").unwrap();
        let case = euler1d(&cfg).unwrap();
        let law = case.law;
        assert_eq!((case.initial)([0.25, 0.0]), law.conservative(1.0, 0.0, 1.0));
        assert_eq!((case.initial)([0.75, 0.0]), law.conservative(0.125, 0.0, 0.1));
        assert_eq!(cfg.tvb_m, 10.0);
        let rho = exact_solution("euler1d_sod", [0.75, 0.0], 0.0).unwrap()[0];
        assert_eq!(rho, 0.125);
    }

    #[test]
    fn burgers_and_vortex_defaults() {
        let cfg = preset("burgers1d_sin").unwrap();
        assert_eq!(cfg.domain, [0.0, 2.0 * PI]);
        assert_eq!((cfg.limiter, cfg.tvb_m), (LimiterKind::Tvb, 1.0));
        let u = exact_solution("burgers1d_sin", [1.0, 0.0], 0.0).unwrap()[0];
        assert!((u - 0.2 * 1f64.sin()).abs() < 1e-15);
        let v = preset("euler2d_vortex").unwrap();
        assert_eq!(v.domain, [-10.0, 10.0]);
        assert!((v.final_time - 20.0 * 2f64.sqrt() / 0.5).abs() < 1e-12);
    }

    #[test]
    fn exact_solutions_start_from_initial_data() {
        for name in PRESETS {
            let cfg = preset(name).unwrap();
            let x = [0.37 * cfg.domain[0] + 0.63 * cfg.domain[1], 0.41];
            match exact_solution(name, x, 0.0) {
                Ok(v) => assert!(v.iter().all(|x| x.is_finite()), "{name}"),
                Err(e) => assert!(matches!(e, Error::Capability { .. }), "{name}: {e}"),
            }
        }
    }

    #[test]
    fn profiles() {
        assert_eq!(composite_profile(-0.3), 1.0);
        assert!((composite_profile(-0.7) - 1.0).abs() < 1e-15);
        assert!((composite_profile(0.1) - 1.0).abs() < 1e-15);
        assert!((composite_profile(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(composite_profile(0.9), 0.0);
        assert_eq!(rotation_profile([0.5, 0.7]), 0.0);
        assert_eq!(rotation_profile([0.42, 0.75]), 1.0);
        assert!((rotation_profile([0.5, 0.25]) - 1.0).abs() < 1e-15);
        assert!((rotation_profile([0.25, 0.5]) - 0.5).abs() < 1e-15);
    }
}
