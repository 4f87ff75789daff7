use proptest::prelude::*;

use lwfr::basis::{Correction, Kernel, PointKind, ReferenceOperators};
use lwfr::driver::run::eoc;
use lwfr::driver::{preset, Boundary, Mesh1d, RunConfig, Solver, Solver1d};
use lwfr::equations::{Advection1d, Burgers1d, ConservationLaw, Euler1d, StateVec, Vars};
use lwfr::limiter::{cell_average, positivity_scale, tvd_limit_1d, LimiterConfig};
use lwfr::lw_core::{lw_element_1d, FaceMode, Workspace1d};
use lwfr::numflux::{numerical_flux, FaceData, FluxKind};

fn kernel(kind: PointKind, degree: usize) -> Kernel {
    ReferenceOperators::new(kind, degree, Correction::Radau).unwrap().kernel().unwrap()
}

fn point_kind() -> impl Strategy<Value = PointKind> {
    prop_oneof![Just(PointKind::Gl), Just(PointKind::Gll)]
}

/// Density in [0.2, 2], velocity in [-1, 1], pressure in [0.2, 2].
fn euler_state() -> impl Strategy<Value = Vars<3>> {
    (0.2..2.0f64, -1.0..1.0f64, 0.2..2.0f64).prop_map(|(r, v, p)| Euler1d::default().conservative(r, v, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eoc_recovers_power_law(p in 0.5..6.0f64, c in 1e-8..1e3f64, n in 4usize..200) {
        let e = |m: usize| c * (m as f64).powf(-p);
        prop_assert!((eoc(e(n), e(2 * n), n, 2 * n) - p).abs() < 1e-10);
    }

    #[test]
    fn config_survives_toml(degree in 1usize..=4, cells in 2usize..500, m in 0.0..500.0f64, t in 0.01..10.0f64, ea in any::<bool>()) {
        let mut cfg = preset("euler1d_sod").unwrap();
        cfg.degree = degree;
        cfg.cells = cells;
        cfg.tvb_m = m;
        cfg.final_time = t;
        cfg.face_mode = if ea { FaceMode::EA } else { FaceMode::AE };
        let back = RunConfig::from_toml(&cfg.to_toml()).unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn numerical_fluxes_are_consistent(u in euler_state(), kind in prop_oneof![
        Just(FluxKind::Rusanov), Just(FluxKind::Roe), Just(FluxKind::Hll), Just(FluxKind::Hllc)
    ]) {
        let law = Euler1d::default();
        let f = law.flux([0.0; 2], &u, 0);
        let face = FaceData { ubar_l: u, ubar_r: u, u_l: u, u_r: u, f_l: f, f_r: f, x: [0.0; 2], dir: 0 };
        let g = numerical_flux(&law, kind, &face, 0.0).unwrap();
        prop_assert!((g - f).max_abs() <= 1e-13 * (1.0 + f.max_abs()));
    }

    #[test]
    fn tvb_limiter_keeps_the_mean(degree in 1usize..=4, kind in point_kind(),
                                  vals in prop::collection::vec(-2.0..2.0f64, 5),
                                  left in -2.0..2.0f64, right in -2.0..2.0f64, m in 0.0..50.0f64) {
        let k = kernel(kind, degree);
        let mut u: Vec<Vars<1>> = vals[..k.n].iter().map(|&v| Vars([v])).collect();
        let before = cell_average(&k, &u);
        let limited = tvd_limit_1d(&Burgers1d, &k, &mut u, Vars([left]), Vars([right]), 0.1, &LimiterConfig::tvb(m));
        prop_assert!((cell_average(&k, &u) - before).max_abs() <= 1e-14);
        if limited {
            // the replacement is linear: equal differences between symmetric nodes
            let slope = (u[k.n - 1][0] - u[0][0]) / (k.nodes[k.n - 1] - k.nodes[0]);
            for j in 0..k.n {
                let lin = before[0] + slope * (k.nodes[j] - 0.5);
                prop_assert!((u[j][0] - lin).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn positivity_scaling_meets_floors(degree in 1usize..=4, kind in point_kind(),
                                       rho in prop::collection::vec(-0.5..2.0f64, 5),
                                       p in prop::collection::vec(-0.5..2.0f64, 5),
                                       v in prop::collection::vec(-1.0..1.0f64, 5)) {
        let law = Euler1d::default();
        let k = kernel(kind, degree);
        let mut u: Vec<Vars<3>> = (0..k.n).map(|j| law.conservative(rho[j], v[j], p[j])).collect();
        let mean = cell_average(&k, &u);
        prop_assume!(mean[0] > 0.05 && law.pressure(&mean) > 0.05);
        let eps = 1e-2;
        positivity_scale(&law, &k, &mut u, false, eps).unwrap();
        prop_assert!((cell_average(&k, &u) - mean).max_abs() <= 1e-14 * (1.0 + mean.max_abs()));
        let face = |w: &[f64; 5]| (0..k.n).fold(Vars([0.0; 3]), |acc, j| acc.axpy(w[j], u[j]));
        for s in u.iter().copied().chain([face(&k.v_l), face(&k.v_r)]) {
            prop_assert!(s[0] >= eps - 1e-14);
            prop_assert!(law.pressure(&s) >= eps - 1e-14);
        }
    }

    #[test]
    fn constant_advection_flux_is_taylor_series(degree in 1usize..=4, kind in point_kind(),
                                                vals in prop::collection::vec(-1.0..1.0f64, 5),
                                                sigma in 0.0..0.3f64, a in -2.0..2.0f64) {
        prop_assume!(a.abs() > 1e-3);
        let o = ReferenceOperators::new(kind, degree, Correction::Radau).unwrap();
        let k = o.kernel().unwrap();
        let dx = 0.5;
        let dt = sigma * dx / a.abs();
        let u: Vec<Vars<1>> = vals[..k.n].iter().map(|&v| Vars([v])).collect();
        let mut ws = Workspace1d::default();
        lw_element_1d(&Advection1d::constant(a), &k, &u, dt, 0.0, dx, FaceMode::EA, &mut ws).unwrap();
        // F = a sum_m (-s D)^m u / (m + 1)!, accumulated term by term
        let s = a * dt / dx;
        let mut term: Vec<f64> = vals[..k.n].to_vec();
        let mut expect = vec![0.0; k.n];
        let mut fact = 1.0;
        for m in 0..=degree {
            fact *= (m + 1) as f64;
            for j in 0..k.n {
                expect[j] += a * term[j] / fact;
            }
            term = (0..k.n).map(|i| -s * (0..k.n).map(|j| o.d[(i, j)] * term[j]).sum::<f64>()).collect();
        }
        for j in 0..k.n {
            prop_assert!((ws.f_avg[j][0] - expect[j]).abs() <= 1e-13);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn periodic_steps_conserve(degree in 1usize..=4, kind in point_kind(), face_ea in any::<bool>(),
                               amp in prop::collection::vec(-0.3..0.3f64, 3), cells in 4usize..16) {
        let mut cfg = preset("burgers1d_sin").unwrap();
        cfg.degree = degree;
        cfg.points = kind;
        cfg.face_mode = if face_ea { FaceMode::EA } else { FaceMode::AE };
        let init = move |x: [f64; 2]| {
            let t = 2.0 * std::f64::consts::PI * x[0];
            Vars([0.5 + amp[0] * t.sin() + amp[1] * (2.0 * t).cos() + amp[2] * (3.0 * t).sin()])
        };
        let mesh = Mesh1d::uniform(0.0, 1.0, cells).unwrap();
        let mut s = Solver1d::new(Burgers1d, cfg.discretization(), mesh, [Boundary::Periodic, Boundary::Periodic], &init).unwrap();
        let before = s.totals();
        for _ in 0..5 {
            let dt = s.compute_dt().unwrap();
            s.step(dt).unwrap();
        }
        let after = s.totals();
        prop_assert!((after[0] - before[0]).abs() <= 1e-13);
    }
}
