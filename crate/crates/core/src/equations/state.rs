use std::fmt::Debug;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// Conserved-variable vector with a compile-time length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vars<const N: usize>(pub [f64; N]);

/// Arithmetic needed by the solver on a state vector.
pub trait StateVec:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<f64, Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + Index<usize, Output = f64>
    + IndexMut<usize>
{
    const LEN: usize;

    fn zero() -> Self;

    fn from_slice(values: &[f64]) -> Self;

    fn as_slice(&self) -> &[f64];

    fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|v| v.is_finite())
    }

    /// `self + a * x`
    #[inline]
    fn axpy(self, a: f64, x: Self) -> Self {
        self + x * a
    }

    fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl<const N: usize> Vars<N> {
    pub const fn new(values: [f64; N]) -> Self {
        Vars(values)
    }

    pub fn splat(v: f64) -> Self {
        Vars([v; N])
    }
}

impl<const N: usize> Default for Vars<N> {
    fn default() -> Self {
        Vars([0.0; N])
    }
}

impl<const N: usize> StateVec for Vars<N> {
    const LEN: usize = N;

    #[inline]
    fn zero() -> Self {
        Vars([0.0; N])
    }

    fn from_slice(values: &[f64]) -> Self {
        let mut out = [0.0; N];
        out.copy_from_slice(&values[..N]);
        Vars(out)
    }

    #[inline]
    fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl<const N: usize> Add for Vars<N> {
    type Output = Self;
    #[inline]
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            self.0[i] += rhs.0[i];
        }
        self
    }
}

impl<const N: usize> Sub for Vars<N> {
    type Output = Self;
    #[inline]
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            self.0[i] -= rhs.0[i];
        }
        self
    }
}

impl<const N: usize> Mul<f64> for Vars<N> {
    type Output = Self;
    #[inline]
    fn mul(mut self, a: f64) -> Self {
        for v in &mut self.0 {
            *v *= a;
        }
        self
    }
}

impl<const N: usize> Mul<Vars<N>> for f64 {
    type Output = Vars<N>;
    #[inline]
    fn mul(self, v: Vars<N>) -> Vars<N> {
        v * self
    }
}

impl<const N: usize> Neg for Vars<N> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl<const N: usize> AddAssign for Vars<N> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            self.0[i] += rhs.0[i];
        }
    }
}

impl<const N: usize> SubAssign for Vars<N> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        for i in 0..N {
            self.0[i] -= rhs.0[i];
        }
    }
}

impl<const N: usize> Index<usize> for Vars<N> {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<const N: usize> IndexMut<usize> for Vars<N> {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl From<f64> for Vars<1> {
    fn from(v: f64) -> Self {
        Vars([v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Vars([1.0, 2.0, 3.0]);
        let b = Vars([0.5, -1.0, 2.0]);
        assert_eq!(a + b, Vars([1.5, 1.0, 5.0]));
        assert_eq!(a - b, Vars([0.5, 3.0, 1.0]));
        assert_eq!(2.0 * b, Vars([1.0, -2.0, 4.0]));
        assert_eq!(a.axpy(2.0, b), Vars([2.0, 0.0, 7.0]));
        assert_eq!(-a, Vars([-1.0, -2.0, -3.0]));
        assert_eq!(b.max_abs(), 2.0);
        assert!(!Vars([f64::NAN]).is_finite());
    }
}
