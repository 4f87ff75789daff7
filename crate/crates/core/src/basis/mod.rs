//! Reference element on [0, 1]: solution points, Lagrange operators and
//! correction-function data.

pub mod legendre;
pub mod operators;
pub mod points;

pub use operators::{
    barycentric_weights, build_operators, correction_derivatives, correction_values,
    differentiation_matrix, lagrange_values, Correction, Kernel, ReferenceOperators, MAX_POINTS,
};
pub use points::{build_solution_points, PointKind, SolutionPoints};
