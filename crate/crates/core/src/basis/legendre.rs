//! Legendre polynomials on [-1, 1] by the three-term recurrence.

/// Values `L_0(x), ..., L_n(x)`.
pub fn legendre_all(n: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(1.0);
    if n >= 1 {
        p.push(x);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0);
        p.push(next);
    }
    p
}

/// Values and first derivatives `(L_k(x), L_k'(x))` for `k = 0..=n`.
///
/// Derivatives use `L'_{k+1} = L'_{k-1} + (2k+1) L_k`, which stays exact at
/// the endpoints where the quotient form of the derivative is singular.
pub fn legendre_with_derivative(n: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let p = legendre_all(n, x);
    let mut dp = vec![0.0; n + 1];
    if n >= 1 {
        dp[1] = 1.0;
    }
    for k in 1..n {
        dp[k + 1] = dp[k - 1] + (2.0 * k as f64 + 1.0) * p[k];
    }
    (p, dp)
}

pub fn legendre(n: usize, x: f64) -> f64 {
    legendre_all(n, x)[n]
}

pub fn legendre_derivative(n: usize, x: f64) -> f64 {
    legendre_with_derivative(n, x).1[n]
}

/// Second derivative from the Legendre ODE, valid away from `x = +-1`.
pub(crate) fn legendre_second_derivative(n: usize, x: f64) -> f64 {
    let (p, dp) = legendre_with_derivative(n, x);
    let nf = n as f64;
    (2.0 * x * dp[n] - nf * (nf + 1.0) * p[n]) / (1.0 - x * x)
}
