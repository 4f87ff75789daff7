use crate::error::{Error, Result};

/// Primitive state `(rho, v, p)` of a 1-D gas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemannState {
    pub rho: f64,
    pub v: f64,
    pub p: f64,
}

impl RiemannState {
    pub fn new(rho: f64, v: f64, p: f64) -> Self {
        RiemannState { rho, v, p }
    }
}

/// Exact solution of the 1-D Euler Riemann problem for an ideal gas.
#[derive(Clone, Copy, Debug)]
pub struct ExactRiemann {
    pub left: RiemannState,
    pub right: RiemannState,
    pub gamma: f64,
    pub p_star: f64,
    pub v_star: f64,
    c_l: f64,
    c_r: f64,
}

const TOL: f64 = 1e-12;

impl ExactRiemann {
    pub fn new(left: RiemannState, right: RiemannState, gamma: f64) -> Result<Self> {
        for s in [left, right] {
            if !(s.rho > 0.0 && s.p > 0.0) {
                return Err(Error::positivity(s.rho, s.p));
            }
        }
        let c_l = (gamma * left.p / left.rho).sqrt();
        let c_r = (gamma * right.p / right.rho).sqrt();
        let du = right.v - left.v;
        if 2.0 / (gamma - 1.0) * (c_l + c_r) <= du {
            return Err(Error::Numerical("Riemann data generates vacuum".into()));
        }
        let mut s = ExactRiemann {
            left,
            right,
            gamma,
            p_star: 0.0,
            v_star: 0.0,
            c_l,
            c_r,
        };
        let z = (gamma - 1.0) / (2.0 * gamma);
        let guess = (c_l + c_r - 0.5 * (gamma - 1.0) * du) / (c_l / left.p.powf(z) + c_r / right.p.powf(z));
        let mut p = guess.powf(1.0 / z).max(TOL);
        let mut converged = false;
        for _ in 0..100 {
            let (fl, dl) = s.pressure_function(p, &left, c_l);
            let (fr, dr) = s.pressure_function(p, &right, c_r);
            let next = (p - (fl + fr + du) / (dl + dr)).max(TOL);
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numerical("exact Riemann solver did not converge".into()));
        }
        let (fl, _) = s.pressure_function(p, &left, c_l);
        let (fr, _) = s.pressure_function(p, &right, c_r);
        s.p_star = p;
        s.v_star = 0.5 * (left.v + right.v) + 0.5 * (fr - fl);
        Ok(s)
    }

    fn pressure_function(&self, p: f64, k: &RiemannState, c: f64) -> (f64, f64) {
        let g = self.gamma;
        if p > k.p {
            let a = 2.0 / ((g + 1.0) * k.rho);
            let b = (g - 1.0) / (g + 1.0) * k.p;
            let q = (a / (p + b)).sqrt();
            ((p - k.p) * q, q * (1.0 - 0.5 * (p - k.p) / (b + p)))
        } else {
            let r = p / k.p;
            (
                2.0 * c / (g - 1.0) * (r.powf((g - 1.0) / (2.0 * g)) - 1.0),
                r.powf(-(g + 1.0) / (2.0 * g)) / (k.rho * c),
            )
        }
    }

    /// Solution at similarity coordinate `s = (x - x0) / t`.
    pub fn sample(&self, s: f64) -> RiemannState {
        let g = self.gamma;
        let gm = (g - 1.0) / (g + 1.0);
        let (ps, vs) = (self.p_star, self.v_star);
        if s <= vs {
            let k = self.left;
            let c = self.c_l;
            if ps > k.p {
                let ratio = ps / k.p;
                let shock = k.v - c * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
                if s <= shock {
                    k
                } else {
                    RiemannState::new(k.rho * (ratio + gm) / (gm * ratio + 1.0), vs, ps)
                }
            } else {
                let head = k.v - c;
                let cs = c * (ps / k.p).powf((g - 1.0) / (2.0 * g));
                let tail = vs - cs;
                if s <= head {
                    k
                } else if s >= tail {
                    RiemannState::new(k.rho * (ps / k.p).powf(1.0 / g), vs, ps)
                } else {
                    let w = 2.0 / (g + 1.0) + gm / c * (k.v - s);
                    RiemannState::new(
                        k.rho * w.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * k.v + s),
                        k.p * w.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        } else {
            let k = self.right;
            let c = self.c_r;
            if ps > k.p {
                let ratio = ps / k.p;
                let shock = k.v + c * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
                if s >= shock {
                    k
                } else {
                    RiemannState::new(k.rho * (ratio + gm) / (gm * ratio + 1.0), vs, ps)
                }
            } else {
                let head = k.v + c;
                let cs = c * (ps / k.p).powf((g - 1.0) / (2.0 * g));
                let tail = vs + cs;
                if s >= head {
                    k
                } else if s <= tail {
                    RiemannState::new(k.rho * (ps / k.p).powf(1.0 / g), vs, ps)
                } else {
                    let w = 2.0 / (g + 1.0) - gm / c * (k.v - s);
                    RiemannState::new(
                        k.rho * w.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * k.v + s),
                        k.p * w.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        }
    }

    /// Solution at `x` and time `t` for an initial jump at `x0`.
    pub fn at(&self, x: f64, x0: f64, t: f64) -> RiemannState {
        if t <= 0.0 {
            return if x < x0 { self.left } else { self.right };
        }
        self.sample((x - x0) / t)
    }
}
