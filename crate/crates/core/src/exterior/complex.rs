//! Complex-valued forms, used to write down classes given in holomorphic
//! notation (`dz_{1\bar 2}` and friends) and take their real expansions.

use crate::error::Result;
use crate::linalg::Rational;

use super::{coord, Form};

/// `re + i·im` with real forms `re`, `im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexForm {
    pub re: Form,
    pub im: Form,
}

impl ComplexForm {
    pub fn real(form: Form) -> Self {
        let dim = form.dim();
        Self { re: form, im: Form::zero(dim) }
    }

    pub fn one(dim: usize) -> Self {
        Self::real(Form::one(dim))
    }

    /// `dz_k = dx_k + i dy_k` in the standard 7 coordinates, `k ∈ {1,2,3}`.
    pub fn dz(k: usize) -> Self {
        let (x, y) = Self::real_pair(k);
        Self { re: Form::dx(7, x), im: Form::dx(7, y) }
    }

    /// `dz̄_k = dx_k − i dy_k`.
    pub fn dzbar(k: usize) -> Self {
        Self::dz(k).conj()
    }

    pub fn dt() -> Self {
        Self::real(Form::dx(7, coord::T))
    }

    fn real_pair(k: usize) -> (usize, usize) {
        match k {
            1 => (coord::X1, coord::Y1),
            2 => (coord::X2, coord::Y2),
            3 => (coord::X3, coord::Y3),
            _ => panic!("complex coordinate index must be 1, 2 or 3"),
        }
    }

    /// Wedge of a sequence of factors.
    pub fn product(factors: &[ComplexForm]) -> Result<Self> {
        let dim = factors.first().map_or(7, |f| f.re.dim());
        factors.iter().try_fold(Self::one(dim), |acc, f| acc.wedge(f))
    }

    pub fn wedge(&self, other: &ComplexForm) -> Result<Self> {
        let re = self.re.wedge(&other.re)?.sub(&self.im.wedge(&other.im)?)?;
        let im = self.re.wedge(&other.im)?.add(&self.im.wedge(&other.re)?)?;
        Ok(Self { re, im })
    }

    pub fn add(&self, other: &ComplexForm) -> Result<Self> {
        Ok(Self { re: self.re.add(&other.re)?, im: self.im.add(&other.im)? })
    }

    pub fn sub(&self, other: &ComplexForm) -> Result<Self> {
        Ok(Self { re: self.re.sub(&other.re)?, im: self.im.sub(&other.im)? })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self { re: self.re.scale(factor), im: self.im.scale(factor) }
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        Self { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}
