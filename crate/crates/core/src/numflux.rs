use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::equations::{ConservationLaw, Point, StateVec};
use crate::error::{capability, config, Error, Result};
use crate::lw_core::Trace;

/// Which trace enters the jump term of a numerical flux.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dissipation {
    /// Solution at the old time level.
    D1,
    /// Time-averaged solution.
    D2,
}

impl FromStr for Dissipation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d1" => Ok(Dissipation::D1),
            "d2" => Ok(Dissipation::D2),
            other => config(format!("unknown dissipation `{other}` (expected d1|d2)")),
        }
    }
}

impl fmt::Display for Dissipation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dissipation::D1 => "d1",
            Dissipation::D2 => "d2",
        })
    }
}

/// Numerical flux family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FluxKind {
    /// Local Lax-Friedrichs.
    Rusanov,
    /// Lax-Friedrichs with one grid-wide speed per step.
    #[serde(alias = "global_lf", alias = "lf")]
    GlobalLf,
    Roe,
    Hll,
    Hllc,
    /// Exact upwinding for advection-type laws.
    Upwind,
    /// Osher-type flux for Burgers' equation.
    Osher,
}

impl FromStr for FluxKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rusanov" => Ok(FluxKind::Rusanov),
            "globallf" | "global_lf" | "lf" => Ok(FluxKind::GlobalLf),
            "roe" => Ok(FluxKind::Roe),
            "hll" => Ok(FluxKind::Hll),
            "hllc" => Ok(FluxKind::Hllc),
            "upwind" => Ok(FluxKind::Upwind),
            "osher" => Ok(FluxKind::Osher),
            other => config(format!(
                "unknown flux `{other}` (expected rusanov|globallf|roe|hll|hllc|upwind|osher)"
            )),
        }
    }
}

impl fmt::Display for FluxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FluxKind::Rusanov => "rusanov",
            FluxKind::GlobalLf => "globallf",
            FluxKind::Roe => "roe",
            FluxKind::Hll => "hll",
            FluxKind::Hllc => "hllc",
            FluxKind::Upwind => "upwind",
            FluxKind::Osher => "osher",
        })
    }
}

/// Flux family together with the dissipation model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FluxScheme {
    pub kind: FluxKind,
    pub dissipation: Dissipation,
}

/// Everything a numerical flux sees at one face point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceData<S> {
    /// Cell averages at the old time level.
    pub ubar_l: S,
    pub ubar_r: S,
    /// Solution traces entering the jump term.
    pub u_l: S,
    pub u_r: S,
    /// Time-average flux traces.
    pub f_l: S,
    pub f_r: S,
    pub x: Point,
    pub dir: usize,
}

/// Builds the face data from the traces of the two neighbours.
pub fn select_traces<S: StateVec>(
    left: &Trace<S>,
    right: &Trace<S>,
    ubar_l: S,
    ubar_r: S,
    dissipation: Dissipation,
    x: Point,
    dir: usize,
) -> FaceData<S> {
    let (u_l, u_r) = match dissipation {
        Dissipation::D1 => (left.u, right.u),
        Dissipation::D2 => (left.u_avg, right.u_avg),
    };
    FaceData {
        ubar_l,
        ubar_r,
        u_l,
        u_r,
        f_l: left.f_avg,
        f_r: right.f_avg,
        x,
        dir,
    }
}

/// `1/2 (F_l + F_r) - 1/2 lambda (U_r - U_l)`
#[inline]
pub fn lax_friedrichs<S: StateVec>(face: &FaceData<S>, lambda: f64) -> S {
    (face.f_l + face.f_r) * 0.5 - (face.u_r - face.u_l) * (0.5 * lambda)
}

pub fn rusanov_speed<L: ConservationLaw>(law: &L, face: &FaceData<L::State>) -> Result<f64> {
    let a = law.max_speed(face.x, &face.ubar_l, face.dir)?;
    let b = law.max_speed(face.x, &face.ubar_r, face.dir)?;
    Ok(a.max(b))
}

pub fn rusanov<L: ConservationLaw>(law: &L, face: &FaceData<L::State>) -> Result<L::State> {
    Ok(lax_friedrichs(face, rusanov_speed(law, face)?))
}

pub fn roe<L: ConservationLaw>(law: &L, face: &FaceData<L::State>) -> Result<L::State> {
    let mid = (face.ubar_l + face.ubar_r) * 0.5;
    if let Some(a) = law.scalar_speed(face.x, &mid, face.dir) {
        return Ok(lax_friedrichs(face, a.abs()));
    }
    let avg = law.roe_average(&face.ubar_l, &face.ubar_r)?;
    let abs_a = law.eigen(&avg, face.dir)?.abs_jacobian();
    let du = face.u_r - face.u_l;
    let mut out = (face.f_l + face.f_r) * 0.5;
    let n = L::State::LEN;
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            acc += abs_a[(i, j)] * du[j];
        }
        out[i] -= 0.5 * acc;
    }
    Ok(out)
}

fn speeds<L: ConservationLaw>(law: &L, face: &FaceData<L::State>) -> Result<(f64, f64)> {
    let (sl, sr) = law.speed_bounds(face.x, &face.ubar_l, &face.ubar_r, face.dir)?;
    if !(sr > sl) {
        // a scalar with equal speeds on both sides degenerates to upwinding
        if sr == sl && law.scalar_speed(face.x, &face.ubar_l, face.dir).is_some() {
            return Ok((sl, sr));
        }
        return Err(Error::DegenerateSpeeds {
            s_left: sl,
            s_right: sr,
        });
    }
    Ok((sl, sr))
}

fn hll_with<S: StateVec>(face: &FaceData<S>, sl: f64, sr: f64) -> S {
    if sl > 0.0 || (sl == sr && sl >= 0.0) {
        face.f_l
    } else if sr < 0.0 || sl == sr {
        face.f_r
    } else {
        (face.f_l * sr - face.f_r * sl + (face.u_r - face.u_l) * (sl * sr)) * (1.0 / (sr - sl))
    }
}

pub fn hll<L: ConservationLaw>(law: &L, face: &FaceData<L::State>) -> Result<L::State> {
    let (sl, sr) = speeds(law, face)?;
    Ok(hll_with(face, sl, sr))
}

pub fn hllc<L: ConservationLaw>(law: &L, face: &FaceData<L::State>) -> Result<L::State> {
    if law.gamma().is_none() {
        return capability(law.name(), "the HLLC flux");
    }
    let (sl, sr) = speeds(law, face)?;
    if sl > 0.0 {
        return Ok(face.f_l);
    }
    if sr < 0.0 {
        return Ok(face.f_r);
    }
    let n = L::State::LEN;
    let mn = 1 + face.dir;
    let (ul, ur, fl, fr) = (&face.u_l, &face.u_r, &face.f_l, &face.f_r);
    let al = sl * ul[0] - fl[0];
    let ar = sr * ur[0] - fr[0];
    let bl = sl * ul[mn] - fl[mn];
    let br = sr * ur[mn] - fr[mn];
    let den = ar - al;
    if den.abs() < 1e-14 * (al.abs() + ar.abs() + 1e-300) {
        return Ok(hll_with(face, sl, sr));
    }
    let u_star = (br - bl) / den;
    let p_star = (br * al - bl * ar) / den;
    let star = |s: f64, u: &L::State, f: &L::State| -> Option<L::State> {
        let gap = s - u_star;
        if gap.abs() < 1e-12 * (s.abs() + u_star.abs() + 1.0) {
            return None;
        }
        let mut us = L::State::zero();
        let rho = (s * u[0] - f[0]) / gap;
        us[0] = rho;
        for k in 1..n - 1 {
            us[k] = if k == mn { rho * u_star } else { (s * u[k] - f[k]) / gap };
        }
        us[n - 1] = (p_star * u_star + s * u[n - 1] - f[n - 1]) / gap;
        Some(*f + (us - *u) * s)
    };
    let side = if u_star >= 0.0 { star(sl, ul, fl) } else { star(sr, ur, fr) };
    Ok(side.unwrap_or_else(|| hll_with(face, sl, sr)))
}

pub fn upwind<L: ConservationLaw>(law: &L, face: &FaceData<L::State>) -> Result<L::State> {
    let mid = (face.ubar_l + face.ubar_r) * 0.5;
    match law.scalar_speed(face.x, &mid, face.dir) {
        Some(a) if a >= 0.0 => Ok(face.f_l),
        Some(_) => Ok(face.f_r),
        None => capability(law.name(), "the upwind flux"),
    }
}

/// Four-branch Osher-type flux on the sign pattern of the cell averages.
pub fn osher_burgers<S: StateVec>(face: &FaceData<S>) -> S {
    let (a, b) = (face.ubar_l[0], face.ubar_r[0]);
    if a > 0.0 && b > 0.0 {
        face.f_l
    } else if a < 0.0 && b < 0.0 {
        face.f_r
    } else if a >= 0.0 && b <= 0.0 {
        face.f_l + face.f_r
    } else {
        S::zero()
    }
}

/// Evaluates the numerical flux. `global_lambda` is only read by
/// [`FluxKind::GlobalLf`].
pub fn numerical_flux<L: ConservationLaw>(
    law: &L,
    kind: FluxKind,
    face: &FaceData<L::State>,
    global_lambda: f64,
) -> Result<L::State> {
    match kind {
        FluxKind::Rusanov => rusanov(law, face),
        FluxKind::GlobalLf => Ok(lax_friedrichs(face, global_lambda)),
        FluxKind::Roe => roe(law, face),
        FluxKind::Hll => hll(law, face),
        FluxKind::Hllc => hllc(law, face),
        FluxKind::Upwind => upwind(law, face),
        FluxKind::Osher => {
            if law.name().starts_with("burgers") {
                Ok(osher_burgers(face))
            } else {
                capability(law.name(), "the Osher flux")
            }
        }
    }
}

/// Checks that `kind` can be used with `law` before any stepping.
pub fn check_compatible<L: ConservationLaw>(law: &L, kind: FluxKind) -> Result<()> {
    let scalar = L::State::LEN == 1;
    match kind {
        FluxKind::Hllc if law.gamma().is_none() => capability(law.name(), "the HLLC flux"),
        FluxKind::Roe if !scalar && law.gamma().is_none() => capability(law.name(), "the Roe flux"),
        FluxKind::Upwind if !scalar => capability(law.name(), "the upwind flux"),
        FluxKind::Osher if !law.name().starts_with("burgers") => capability(law.name(), "the Osher flux"),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{Advection1d, Burgers1d, Euler1d, Euler2d, Vars};

    fn same<S: StateVec>(u: S, f: S) -> FaceData<S> {
        FaceData {
            ubar_l: u,
            ubar_r: u,
            u_l: u,
            u_r: u,
            f_l: f,
            f_r: f,
            x: [0.0; 2],
            dir: 0,
        }
    }

    fn riemann<L: ConservationLaw>(law: &L, l: L::State, r: L::State, dir: usize) -> FaceData<L::State> {
        FaceData {
            ubar_l: l,
            ubar_r: r,
            u_l: l,
            u_r: r,
            f_l: law.flux([0.0; 2], &l, dir),
            f_r: law.flux([0.0; 2], &r, dir),
            x: [0.0; 2],
            dir,
        }
    }

    #[test]
    fn consistency() {
        let e = Euler1d::default();
        let u = e.conservative(0.7, -0.3, 1.9);
        let f = e.flux([0.0; 2], &u, 0);
        for kind in [FluxKind::Rusanov, FluxKind::GlobalLf, FluxKind::Roe, FluxKind::Hll, FluxKind::Hllc] {
            let g = numerical_flux(&e, kind, &same(u, f), 3.0).unwrap();
            assert!((g - f).max_abs() < 1e-13, "{kind}");
        }
        let e2 = Euler2d::default();
        let s = e2.conservative(1.1, 0.4, -0.8, 0.6);
        for dir in 0..2 {
            let f = e2.flux([0.0; 2], &s, dir);
            let mut face = same(s, f);
            face.dir = dir;
            for kind in [FluxKind::Rusanov, FluxKind::Roe, FluxKind::Hll, FluxKind::Hllc] {
                let g = numerical_flux(&e2, kind, &face, 0.0).unwrap();
                assert!((g - f).max_abs() < 1e-13, "{kind} dir {dir}");
            }
        }
        let b = Vars([0.4]);
        let fb = Burgers1d.flux([0.0; 2], &b, 0);
        for kind in [FluxKind::Rusanov, FluxKind::Roe, FluxKind::Hll, FluxKind::Upwind, FluxKind::Osher] {
            assert!((numerical_flux(&Burgers1d, kind, &same(b, fb), 0.0).unwrap() - fb).max_abs() < 1e-15);
        }
    }

    #[test]
    fn rusanov_is_upwind_for_advection() {
        let law = Advection1d::constant(1.0);
        let face = FaceData {
            ubar_l: Vars([0.2]),
            ubar_r: Vars([0.9]),
            u_l: Vars([0.3]),
            u_r: Vars([-0.5]),
            f_l: Vars([0.3]),
            f_r: Vars([-0.5]),
            x: [0.0; 2],
            dir: 0,
        };
        let r = rusanov(&law, &face).unwrap();
        assert!((r - upwind(&law, &face).unwrap()).max_abs() < 1e-15);
        assert!((r - face.f_l).max_abs() < 1e-15);
    }

    #[test]
    fn burgers_speeds_and_osher_branches() {
        let mut face = same(Vars([0.0]), Vars([0.0]));
        face.ubar_l = Vars([1.0]);
        face.ubar_r = Vars([-2.0]);
        assert_eq!(rusanov_speed(&Burgers1d, &face).unwrap(), 2.0);
        face.f_l = Vars([0.5]);
        face.f_r = Vars([2.0]);
        assert_eq!(osher_burgers(&face), Vars([2.5]));
        face.ubar_r = Vars([2.0]);
        assert_eq!(osher_burgers(&face), Vars([0.5]));
        face.ubar_l = Vars([-1.0]);
        face.ubar_r = Vars([-2.0]);
        assert_eq!(osher_burgers(&face), Vars([2.0]));
        face.ubar_r = Vars([1.0]);
        assert_eq!(osher_burgers(&face), Vars([0.0]));
    }

    #[test]
    fn hll_supersonic_branch() {
        let e = Euler1d::default();
        let l = e.conservative(1.0, 5.0, 1.0);
        let r = e.conservative(0.9, 5.0, 0.8);
        let face = riemann(&e, l, r, 0);
        assert_eq!(hll(&e, &face).unwrap(), face.f_l);
        assert_eq!(hllc(&e, &face).unwrap(), face.f_l);
    }

    #[test]
    fn hllc_preserves_stationary_contact() {
        let e = Euler1d::default();
        let face = riemann(&e, e.conservative(1.0, 0.0, 1.0), e.conservative(2.0, 0.0, 1.0), 0);
        let f = hllc(&e, &face).unwrap();
        assert!((f - Vars([0.0, 1.0, 0.0])).max_abs() < 1e-14);
        let r = rusanov(&e, &face).unwrap();
        assert!((r - Vars([0.0, 1.0, 0.0])).max_abs() > 1e-3);
        let e2 = Euler2d::default();
        let face = riemann(&e2, e2.conservative(1.0, 0.0, 0.3, 1.0), e2.conservative(2.0, 0.0, -0.7, 1.0), 0);
        let f = hllc(&e2, &face).unwrap();
        assert!((f - Vars([0.0, 1.0, 0.0, 0.0])).max_abs() < 1e-14);
    }

    #[test]
    fn hllc_matches_exact_star_state_for_sod() {
        // the HLLC contact speed is close to the exact star velocity
        let e = Euler1d::default();
        let face = riemann(&e, e.conservative(1.0, 0.0, 1.0), e.conservative(0.125, 0.0, 0.1), 0);
        let f = hllc(&e, &face).unwrap();
        assert!(f[0] > 0.0 && f[0].is_finite());
        let r = roe(&e, &face).unwrap();
        assert!((f[1] - r[1]).abs() < 0.1);
    }

    #[test]
    fn roe_resolves_isolated_shock_jump() {
        // Roe's flux is exact for data connected by a single wave
        let e = Euler1d::default();
        let l = e.conservative(1.0, 0.0, 1.0);
        let r = e.conservative(2.0, 0.0, 1.0);
        let face = riemann(&e, l, r, 0);
        let f = roe(&e, &face).unwrap();
        assert!((f - Vars([0.0, 1.0, 0.0])).max_abs() < 1e-13);
    }

    #[test]
    fn capability_errors() {
        let law = Advection1d::constant(1.0);
        assert!(matches!(check_compatible(&law, FluxKind::Hllc), Err(Error::Capability { .. })));
        assert!(check_compatible(&Euler1d::default(), FluxKind::Upwind).is_err());
        assert!(check_compatible(&law, FluxKind::Osher).is_err());
        assert!(check_compatible(&Burgers1d, FluxKind::Osher).is_ok());
        assert_eq!("HLLC".parse::<FluxKind>().unwrap(), FluxKind::Hllc);
        assert!("godunov".parse::<FluxKind>().is_err());
    }

    #[test]
    fn global_speed_bounds_local() {
        let e = Euler1d::default();
        let states = [e.conservative(1.0, 0.5, 1.0), e.conservative(0.2, -1.0, 3.0), e.conservative(4.0, 0.0, 0.1)];
        let global = states.iter().map(|s| e.max_speed([0.0; 2], s, 0).unwrap()).fold(0.0, f64::max);
        for w in states.windows(2) {
            let face = riemann(&e, w[0], w[1], 0);
            assert!(rusanov_speed(&e, &face).unwrap() <= global);
        }
    }
}
