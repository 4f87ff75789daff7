//! Finite-difference stencils for the scaled time derivatives of the flux.
//!
//! A term `(c, a)` contributes `c * f(u + a[0] u^(1) + a[1] u^(2) + ...)`.
//! Only coefficients of already-computed derivatives may be non-zero.

use std::sync::OnceLock;

use crate::error::{config, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub c: f64,
    pub a: [f64; 4],
}

impl Term {
    pub const fn new(c: f64, a: [f64; 4]) -> Self {
        Term { c, a }
    }

    /// True when the argument is `u` itself.
    pub fn is_base(&self) -> bool {
        self.a == [0.0; 4]
    }
}

const fn t(c: f64, a: [f64; 4]) -> Term {
    Term::new(c, a)
}

const Z: [f64; 4] = [0.0; 4];

const F1_2: &[Term] = &[t(0.5, [1.0, 0.0, 0.0, 0.0]), t(-0.5, [-1.0, 0.0, 0.0, 0.0])];

const F1_4: &[Term] = &[
    t(-1.0 / 12.0, [2.0, 0.0, 0.0, 0.0]),
    t(8.0 / 12.0, [1.0, 0.0, 0.0, 0.0]),
    t(-8.0 / 12.0, [-1.0, 0.0, 0.0, 0.0]),
    t(1.0 / 12.0, [-2.0, 0.0, 0.0, 0.0]),
];

const F2_3: &[Term] = &[t(1.0, [1.0, 0.5, 0.0, 0.0]), t(-2.0, Z), t(1.0, [-1.0, 0.5, 0.0, 0.0])];

const F2_5: &[Term] = &[
    t(-1.0 / 12.0, [2.0, 2.0, 0.0, 0.0]),
    t(16.0 / 12.0, [1.0, 0.5, 0.0, 0.0]),
    t(-30.0 / 12.0, Z),
    t(16.0 / 12.0, [-1.0, 0.5, 0.0, 0.0]),
    t(-1.0 / 12.0, [-2.0, 2.0, 0.0, 0.0]),
];

const F3: &[Term] = &[
    t(0.5, [2.0, 2.0, 4.0 / 3.0, 0.0]),
    t(-1.0, [1.0, 0.5, 1.0 / 6.0, 0.0]),
    t(1.0, [-1.0, 0.5, -1.0 / 6.0, 0.0]),
    t(-0.5, [-2.0, 2.0, -4.0 / 3.0, 0.0]),
];

const F4: &[Term] = &[
    t(1.0, [2.0, 2.0, 4.0 / 3.0, 2.0 / 3.0]),
    t(-4.0, [1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0]),
    t(6.0, Z),
    t(-4.0, [-1.0, 0.5, -1.0 / 6.0, 1.0 / 24.0]),
    t(1.0, [-2.0, 2.0, -4.0 / 3.0, 2.0 / 3.0]),
];

/// `NODAL[N - 1][m - 1]` is the stencil for `f^(m)` at the solution points.
pub const NODAL: [&[&[Term]]; 4] = [&[F1_2], &[F1_2, F2_3], &[F1_4, F2_3, F3], &[F1_4, F2_5, F3, F4]];

/// Stencils for `f^(m)` at a face, per degree. All `f^(m)` share the
/// arguments `u_a`, `u_a^{+-}` and `u_a^{+-2}`.
fn face_stencils(degree: usize) -> Vec<Vec<Term>> {
    let (p, m, p2, m2) = match degree {
        1 => ([1.0, 0.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0], Z, Z),
        2 => ([1.0, 0.5, 0.0, 0.0], [-1.0, 0.5, 0.0, 0.0], Z, Z),
        3 => (
            [1.0, 0.5, 1.0 / 6.0, 0.0],
            [-1.0, 0.5, -1.0 / 6.0, 0.0],
            [2.0, 2.0, 4.0 / 3.0, 0.0],
            [-2.0, 2.0, -4.0 / 3.0, 0.0],
        ),
        _ => (
            [1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0],
            [-1.0, 0.5, -1.0 / 6.0, 1.0 / 24.0],
            [2.0, 2.0, 4.0 / 3.0, 2.0 / 3.0],
            [-2.0, 2.0, -4.0 / 3.0, 2.0 / 3.0],
        ),
    };
    let f1_2 = vec![t(0.5, p), t(-0.5, m)];
    let f1_4 = vec![t(-1.0 / 12.0, p2), t(8.0 / 12.0, p), t(-8.0 / 12.0, m), t(1.0 / 12.0, m2)];
    let f2_3 = vec![t(1.0, m), t(-2.0, Z), t(1.0, p)];
    let f2_5 = vec![
        t(-1.0 / 12.0, p2),
        t(16.0 / 12.0, p),
        t(-30.0 / 12.0, Z),
        t(16.0 / 12.0, m),
        t(-1.0 / 12.0, m2),
    ];
    let f3 = vec![t(0.5, p2), t(-1.0, p), t(1.0, m), t(-0.5, m2)];
    let f4 = vec![t(1.0, p2), t(-4.0, p), t(6.0, Z), t(-4.0, m), t(1.0, m2)];
    match degree {
        1 => vec![f1_2],
        2 => vec![f1_2, f2_3],
        3 => vec![f1_4, f2_3, f3],
        _ => vec![f1_4, f2_5, f3, f4],
    }
}

/// Face time-average flux as one weighted sum `F_a = sum_k w_k f(arg_k)`,
/// with the `1/(m+1)!` Taylor weights folded in.
#[derive(Clone, Debug)]
pub struct FaceRule {
    pub terms: Vec<Term>,
}

fn build_face_rule(degree: usize) -> FaceRule {
    let mut terms = vec![t(1.0, Z)];
    let mut fact = 1.0;
    for (i, stencil) in face_stencils(degree).into_iter().enumerate() {
        fact *= (i + 2) as f64;
        for term in stencil {
            match terms.iter_mut().find(|x| x.a == term.a) {
                Some(x) => x.c += term.c / fact,
                None => terms.push(t(term.c / fact, term.a)),
            }
        }
    }
    FaceRule { terms }
}

/// Face rule for degree `1..=4`.
pub fn face_rule(degree: usize) -> Result<&'static FaceRule> {
    static RULES: OnceLock<Vec<FaceRule>> = OnceLock::new();
    check_degree(degree)?;
    Ok(&RULES.get_or_init(|| (1..=4).map(build_face_rule).collect())[degree - 1])
}

pub fn nodal(degree: usize) -> Result<&'static [&'static [Term]]> {
    check_degree(degree)?;
    Ok(NODAL[degree - 1])
}

pub fn check_degree(degree: usize) -> Result<()> {
    if (1..=4).contains(&degree) {
        Ok(())
    } else {
        config(format!("Lax-Wendroff degree must be in 1..=4, got {degree}"))
    }
}

/// `1/(m+1)!` for `m = 0..=4`.
pub const TAYLOR: [f64; 5] = [1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0];

#[cfg(test)]
mod tests {
    use super::*;

    // A stencil for f^(m) applied to f(u) = u^k along the exact Taylor
    // argument u(t + s dt) must reproduce dt^m d^m/dt^m of f up to the
    // truncation order; checked here on the scalar path u(t) = e^t.
    fn stencil_on_exp(terms: &[Term], dt: f64, power: i32) -> f64 {
        let ders = [dt, dt * dt, dt.powi(3), dt.powi(4)];
        terms
            .iter()
            .map(|term| {
                let arg = 1.0 + (0..4).map(|q| term.a[q] * ders[q]).sum::<f64>();
                term.c * arg.powi(power)
            })
            .sum()
    }

    #[test]
    fn stencils_are_consistent() {
        // f = u^3 along u = e^t has f^(m) = (3 dt)^m at t = 0
        for degree in 1..=4 {
            for (i, st) in NODAL[degree - 1].iter().enumerate() {
                let m = i + 1;
                let errs: Vec<f64> = [0.1, 0.05]
                    .iter()
                    .map(|&dt| (stencil_on_exp(st, dt, 3) - (3.0 * dt).powi(m as i32)).abs())
                    .collect();
                let order = (errs[0] / errs[1]).log2();
                assert!(errs[1] < 1e-12 || order > (degree + 1) as f64 - 0.3, "N={degree} m={m}: order {order}");
            }
        }
    }

    #[test]
    fn face_rules_sum_to_one() {
        for degree in 1..=4 {
            let r = face_rule(degree).unwrap();
            let s: f64 = r.terms.iter().map(|x| x.c).sum();
            assert!((s - 1.0).abs() < 1e-14);
            assert!(r.terms.len() <= 5);
        }
        assert!(face_rule(5).is_err());
        assert!(nodal(0).is_err());
    }
}
