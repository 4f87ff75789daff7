use serde::Serialize;

use crate::error::{config, Result};

/// Cells on an interval, stored by their face positions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mesh1d {
    pub faces: Vec<f64>,
    pub uniform: bool,
}

impl Mesh1d {
    pub fn uniform(lower: f64, upper: f64, cells: usize) -> Result<Self> {
        if cells == 0 {
            return config("a mesh needs at least one cell");
        }
        if !(upper > lower) || !lower.is_finite() || !upper.is_finite() {
            return config(format!("invalid interval [{lower}, {upper}]"));
        }
        let h = (upper - lower) / cells as f64;
        let mut faces: Vec<f64> = (0..=cells).map(|i| lower + i as f64 * h).collect();
        faces[cells] = upper;
        Ok(Mesh1d { faces, uniform: true })
    }

    pub fn from_faces(faces: Vec<f64>) -> Result<Self> {
        if faces.len() < 2 {
            return config("a mesh needs at least one cell");
        }
        if faces.windows(2).any(|w| !(w[1] > w[0])) {
            return config("mesh faces must be strictly increasing");
        }
        Ok(Mesh1d { faces, uniform: false })
    }

    pub fn cells(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn lower(&self) -> f64 {
        self.faces[0]
    }

    pub fn upper(&self) -> f64 {
        *self.faces.last().unwrap()
    }

    pub fn length(&self) -> f64 {
        self.upper() - self.lower()
    }

    #[inline]
    pub fn x0(&self, e: usize) -> f64 {
        self.faces[e]
    }

    #[inline]
    pub fn dx(&self, e: usize) -> f64 {
        self.faces[e + 1] - self.faces[e]
    }

    pub fn min_dx(&self) -> f64 {
        (0..self.cells()).map(|e| self.dx(e)).fold(f64::INFINITY, f64::min)
    }
}

/// Tensor-product mesh; cell `(i, j)` has flat index `i + nx j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mesh2d {
    pub x: Mesh1d,
    pub y: Mesh1d,
}

impl Mesh2d {
    pub fn uniform(lower: [f64; 2], upper: [f64; 2], cells: [usize; 2]) -> Result<Self> {
        Ok(Mesh2d {
            x: Mesh1d::uniform(lower[0], upper[0], cells[0])?,
            y: Mesh1d::uniform(lower[1], upper[1], cells[1])?,
        })
    }

    pub fn nx(&self) -> usize {
        self.x.cells()
    }

    pub fn ny(&self) -> usize {
        self.y.cells()
    }

    pub fn cells(&self) -> usize {
        self.nx() * self.ny()
    }

    pub fn area(&self) -> f64 {
        self.x.length() * self.y.length()
    }

    #[inline]
    pub fn origin(&self, i: usize, j: usize) -> [f64; 2] {
        [self.x.x0(i), self.y.x0(j)]
    }

    #[inline]
    pub fn h(&self, i: usize, j: usize) -> [f64; 2] {
        [self.x.dx(i), self.y.dx(j)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_cells_tile_the_interval() {
        let m = Mesh1d::uniform(-1.0, 2.0, 7).unwrap();
        let total: f64 = (0..m.cells()).map(|e| m.dx(e)).sum();
        assert!((total - 3.0).abs() < 1e-14);
        assert_eq!(m.upper(), 2.0);
        assert!((0..7).all(|e| m.dx(e) > 0.0));
    }

    #[test]
    fn invalid_meshes() {
        assert!(Mesh1d::uniform(0.0, 1.0, 0).is_err());
        assert!(Mesh1d::uniform(1.0, 0.0, 4).is_err());
        assert!(Mesh1d::from_faces(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        let m = Mesh1d::from_faces(vec![0.0, 0.1, 0.5, 1.0]).unwrap();
        assert!((m.min_dx() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn two_d_indexing() {
        let m = Mesh2d::uniform([0.0, 0.0], [4.0, 1.0], [8, 2]).unwrap();
        assert_eq!(m.cells(), 16);
        assert_eq!(m.origin(3, 1), [1.5, 0.5]);
        assert_eq!(m.h(0, 0), [0.5, 0.5]);
        assert_eq!(m.area(), 4.0);
    }
}
