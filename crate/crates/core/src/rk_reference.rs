//! Runge-Kutta flux reconstruction: the same spatial operators driven by
//! instantaneous fluxes and multi-stage time stepping.
//!
//! Every scheme is stored in Shu-Osher form
//! `u(i) = sum_k alpha[i][k] u(k) + dt beta[i][k] L(u(k))`, `i = 1..=s`,
//! with `u(0) = u^n` and `u^{n+1} = u(s)`. Non-SSP schemes use the trivial
//! form `alpha[i][0] = 1`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::basis::Kernel;
use crate::equations::ConservationLaw;
use crate::error::{config, Error, Result};
use crate::lw_core::one_d::extrapolate;
use crate::lw_core::{face_point, face_trace, Trace, Workspace1d, Workspace2d};
use crate::stability::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RkScheme {
    Ssprk22,
    Ssprk33,
    /// Five stages, fourth order.
    Ssprk54,
    Rk4,
    /// Six-stage fifth-order method (Dormand-Prince tableau).
    Rk65,
}

impl RkScheme {
    pub const ALL: [RkScheme; 5] = [
        RkScheme::Ssprk22,
        RkScheme::Ssprk33,
        RkScheme::Ssprk54,
        RkScheme::Rk4,
        RkScheme::Rk65,
    ];

    /// Order `N + 1` time integration for degree `N`.
    pub fn for_degree(degree: usize) -> Result<Self> {
        match degree {
            1 => Ok(RkScheme::Ssprk22),
            2 => Ok(RkScheme::Ssprk33),
            3 => Ok(RkScheme::Ssprk54),
            4 => Ok(RkScheme::Rk65),
            _ => config(format!("no default Runge-Kutta scheme for degree {degree}")),
        }
    }

    pub fn order(self) -> usize {
        match self {
            RkScheme::Ssprk22 => 2,
            RkScheme::Ssprk33 => 3,
            RkScheme::Ssprk54 | RkScheme::Rk4 => 4,
            RkScheme::Rk65 => 5,
        }
    }

    pub fn stages(self) -> usize {
        self.tableau().alpha.len()
    }

    pub fn tableau(self) -> &'static ShuOsher {
        match self {
            RkScheme::Ssprk22 => &SSPRK22,
            RkScheme::Ssprk33 => &SSPRK33,
            RkScheme::Ssprk54 => &SSPRK54,
            RkScheme::Rk4 => &RK4,
            RkScheme::Rk65 => &RK65,
        }
    }
}

impl FromStr for RkScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ssprk22" => Ok(RkScheme::Ssprk22),
            "ssprk33" => Ok(RkScheme::Ssprk33),
            "ssprk54" => Ok(RkScheme::Ssprk54),
            "rk4" => Ok(RkScheme::Rk4),
            "rk65" => Ok(RkScheme::Rk65),
            other => config(format!(
                "unknown Runge-Kutta scheme `{other}` (expected ssprk22|ssprk33|ssprk54|rk4|rk65)"
            )),
        }
    }
}

impl fmt::Display for RkScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RkScheme::Ssprk22 => "ssprk22",
            RkScheme::Ssprk33 => "ssprk33",
            RkScheme::Ssprk54 => "ssprk54",
            RkScheme::Rk4 => "rk4",
            RkScheme::Rk65 => "rk65",
        })
    }
}

/// Row `i - 1` holds the coefficients of stage `i` on `u(0..i)`.
#[derive(Debug)]
pub struct ShuOsher {
    pub alpha: &'static [&'static [f64]],
    pub beta: &'static [&'static [f64]],
}

impl ShuOsher {
    /// Time offset of every stage value `u(0..=s)` as a fraction of `dt`.
    pub fn stage_times(&self) -> Vec<f64> {
        let mut c = vec![0.0];
        for (a, b) in self.alpha.iter().zip(self.beta) {
            let ci = a.iter().zip(&c).map(|(a, c)| a * c).sum::<f64>() + b.iter().sum::<f64>();
            c.push(ci);
        }
        c
    }

    /// True when `L(u(k))` is needed by some later stage.
    pub fn needs_residual(&self, k: usize) -> bool {
        self.beta.iter().any(|row| row.get(k).is_some_and(|&b| b != 0.0))
    }

    /// Stability function `R(z)` from one step of `y' = z y`, `y(0) = 1`.
    pub fn stability_function(&self, z: C64) -> C64 {
        let mut y = vec![C64::new(1.0, 0.0)];
        for (a, b) in self.alpha.iter().zip(self.beta) {
            let mut yi = C64::new(0.0, 0.0);
            for k in 0..a.len() {
                yi += y[k] * (a[k] + z * b[k]);
            }
            y.push(yi);
        }
        *y.last().unwrap()
    }
}

static SSPRK22: ShuOsher = ShuOsher {
    alpha: &[&[1.0], &[0.5, 0.5]],
    beta: &[&[1.0], &[0.0, 0.5]],
};

static SSPRK33: ShuOsher = ShuOsher {
    alpha: &[&[1.0], &[0.75, 0.25], &[1.0 / 3.0, 0.0, 2.0 / 3.0]],
    beta: &[&[1.0], &[0.0, 0.25], &[0.0, 0.0, 2.0 / 3.0]],
};

static SSPRK54: ShuOsher = ShuOsher {
    alpha: &[
        &[1.0],
        &[0.444370493651235, 0.555629506348765],
        &[0.620101851488403, 0.0, 0.379898148511597],
        &[0.178079954393132, 0.0, 0.0, 0.821920045606868],
        &[0.0, 0.0, 0.517231671970585, 0.096059710526147, 0.386708617503269],
    ],
    beta: &[
        &[0.391752226571890],
        &[0.0, 0.368410593050371],
        &[0.0, 0.0, 0.251891774271694],
        &[0.0, 0.0, 0.0, 0.544974750228521],
        &[0.0, 0.0, 0.0, 0.063692468666290, 0.226007483236906],
    ],
};

static RK4: ShuOsher = ShuOsher {
    alpha: &[&[1.0], &[1.0, 0.0], &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 0.0]],
    beta: &[
        &[0.5],
        &[0.0, 0.5],
        &[0.0, 0.0, 1.0],
        &[1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
    ],
};

static RK65: ShuOsher = ShuOsher {
    alpha: &[
        &[1.0],
        &[1.0, 0.0],
        &[1.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    ],
    beta: &[
        &[1.0 / 5.0],
        &[3.0 / 40.0, 9.0 / 40.0],
        &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
        &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
        &[9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0],
        &[35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ],
};

/// Instantaneous fluxes on one 1-D element. Fills `f_avg` with the nodal
/// flux and the face traces with `u` and `f(u)` at the faces, so the result
/// feeds the same face and update routines as the Lax-Wendroff path.
pub fn rk_element_1d<L: ConservationLaw>(
    law: &L,
    k: &Kernel,
    u: &[L::State],
    x0: f64,
    dx: f64,
    ws: &mut Workspace1d<L::State>,
) -> Result<()> {
    let n = k.n;
    ws.n = n;
    for j in 0..n {
        law.check_state(&u[j]).map_err(|e| e.at(format!("solution point {j}")))?;
        ws.u_m[0][j] = u[j];
        ws.u_avg[j] = u[j];
        ws.f_avg[j] = law.flux([x0 + k.nodes[j] * dx, 0.0], &u[j], 0);
    }
    for (side, v) in [&k.v_l, &k.v_r].into_iter().enumerate() {
        let tu = extrapolate(v, u, n);
        law.check_state(&tu).map_err(|e| e.at(format!("face {side} trace")))?;
        ws.faces[side] = Trace {
            u: tu,
            u_avg: tu,
            f_avg: law.flux([x0 + side as f64 * dx, 0.0], &tu, 0),
        };
    }
    Ok(())
}

/// 2-D analogue of [`rk_element_1d`]: nodal `f`, `g` in `f_avg`, `g_avg`.
pub fn rk_element_2d<L: ConservationLaw>(
    law: &L,
    k: &Kernel,
    u: &[L::State],
    origin: [f64; 2],
    h: [f64; 2],
    ws: &mut Workspace2d<L::State>,
) -> Result<()> {
    let n = k.n;
    ws.n = n;
    for j in 0..n {
        for i in 0..n {
            let p = i + n * j;
            let x = [origin[0] + k.nodes[i] * h[0], origin[1] + k.nodes[j] * h[1]];
            law.check_state(&u[p]).map_err(|e| e.at(format!("solution point ({i}, {j})")))?;
            ws.u_m[0][p] = u[p];
            ws.u_avg[p] = u[p];
            ws.f_avg[p] = law.flux(x, &u[p], 0);
            ws.g_avg[p] = law.flux(x, &u[p], 1);
        }
    }
    for face in 0..4 {
        for line in 0..n {
            let tu = face_trace(k, u, face, line);
            law.check_state(&tu).map_err(|e| e.at(format!("face {face} point {line} trace")))?;
            let xf = face_point(k, origin, h, face, line);
            ws.faces[face][line] = Trace {
                u: tu,
                u_avg: tu,
                f_avg: law.flux(xf, &tu, face / 2),
            };
        }
    }
    Ok(())
}
