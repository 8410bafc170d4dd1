//! Exact rational and integer linear algebra.

pub mod elimination;
pub mod matrix;
pub mod normal_form;
pub mod rational;

pub use elimination::{determinant, echelon_basis, inverse, nullspace, rank, rref, solve, Solution};
pub use matrix::{IntegerMatrix, Matrix, RationalMatrix};
pub use normal_form::{hermite_normal_form, saturate, smith_normal_form, HermiteForm, SmithForm};
pub use rational::{format_rational, int, parse_rational, rat, Integer, Rational};
