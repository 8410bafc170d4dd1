//! Flat tori `R^n/Λ`, affine isometries acting on them, and finite group
//! closure.

mod group;
mod isometry;
pub mod preset;

pub use group::{closure, IsometryGroup, DEFAULT_GROUP_BOUND};
pub use isometry::{validate, AffineIsometry, Verdict, Violation};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rational::frac;
use crate::linalg::{determinant, inverse, IntegerMatrix, RationalMatrix, Rational};

/// The lattice `Λ` spanned by the columns of `basis`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RationalMatrix", into = "RationalMatrix")]
pub struct TorusLattice {
    basis: RationalMatrix,
    inverse: RationalMatrix,
}

impl TorusLattice {
    pub fn new(basis: RationalMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch { expected: basis.rows(), found: basis.cols() });
        }
        let inverse = inverse(&basis).ok_or_else(|| Error::Parse("lattice basis is singular".into()))?;
        Ok(Self { basis, inverse })
    }

    /// `R/4Z × (C/Z<1,i>)^3`.
    pub fn paper() -> Self {
        let mut diag = vec![crate::linalg::int(1); 7];
        diag[0] = crate::linalg::int(4);
        Self::new(RationalMatrix::diagonal(&diag)).expect("invertible")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn covolume(&self) -> Rational {
        num_traits::Signed::abs(&determinant(&self.basis))
    }

    pub fn to_lattice(&self, v: &[Rational]) -> Vec<Rational> {
        self.inverse.mul_vec(v)
    }

    pub fn to_real(&self, u: &[Rational]) -> Vec<Rational> {
        self.basis.mul_vec(u)
    }

    /// Representative of `v + Λ` with lattice coordinates in `[0, 1)`.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let u: Vec<Rational> = self.to_lattice(v).iter().map(frac).collect();
        self.to_real(&u)
    }

    /// Columns of `M` expressed in lattice coordinates, `B⁻¹·M`.
    pub fn to_lattice_matrix(&self, m: &RationalMatrix) -> RationalMatrix {
        self.inverse.mul(m)
    }

    /// `B⁻¹·A·B`, the linear part in lattice coordinates.
    pub fn linear_in_lattice(&self, a: &RationalMatrix) -> RationalMatrix {
        self.inverse.mul(a).mul(&self.basis)
    }

    /// Real-coordinate columns `B·D` for integer lattice directions `D`.
    pub fn directions_to_real(&self, d: &IntegerMatrix) -> RationalMatrix {
        self.basis.mul(&d.to_rational())
    }
}

impl TryFrom<RationalMatrix> for TorusLattice {
    type Error = Error;

    fn try_from(basis: RationalMatrix) -> Result<Self> {
        Self::new(basis)
    }
}

impl From<TorusLattice> for RationalMatrix {
    fn from(l: TorusLattice) -> Self {
        l.basis
    }
}
