//! Constant-coefficient differential forms on `R^n` with exact rational
//! coefficients. Basis monomials are bitmasks over coordinate indices.

mod complex;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use complex::ComplexForm;

use crate::error::{Error, Result};
use crate::linalg::{determinant, format_rational, parse_rational, RationalMatrix, Rational};

/// Named coordinates of the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coordinates {
    names: Vec<String>,
}

impl Coordinates {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::Parse(format!("duplicate coordinate '{dup}'")));
        }
        if names.len() > 31 {
            return Err(Error::Parse("at most 31 coordinates are supported".into()));
        }
        Ok(Self { names })
    }

    /// `(t, x1, y1, x2, y2, x3, y3)` with `z_k = x_k + i y_k`.
    pub fn standard() -> Self {
        Self { names: ["t", "x1", "y1", "x2", "y2", "x3", "y3"].iter().map(|s| s.to_string()).collect() }
    }

    /// `u1, ..., uk`: coordinates on a parametrization domain.
    pub fn parameters(k: usize) -> Self {
        Self { names: (1..=k).map(|i| format!("u{i}")).collect() }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Standard coordinate indices.
pub mod coord {
    pub const T: usize = 0;
    pub const X1: usize = 1;
    pub const Y1: usize = 2;
    pub const X2: usize = 3;
    pub const Y2: usize = 4;
    pub const X3: usize = 5;
    pub const Y3: usize = 6;
}

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// All `k`-subsets of `{0..n}` as masks, in lexicographic order of the
/// sorted index tuples.
pub fn basis_masks(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Sign of `e_a ∧ e_b` relative to the sorted monomial `e_{a|b}`; zero when
/// the masks overlap.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of the exterior algebra on `dim` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<u32, Rational>,
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(dim, 0, Rational::one())
    }

    pub fn monomial(dim: usize, mask: u32, coefficient: Rational) -> Self {
        assert!(dim >= 32 - mask.leading_zeros() as usize, "monomial outside ambient dimension");
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(mask, coefficient);
        }
        Self { dim, terms }
    }

    /// `dx_{i1} ∧ ... ∧ dx_{ik}` in the given index order.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut form = Self::one(dim);
        for &i in indices {
            form = form.wedge(&Self::monomial(dim, 1 << i, Rational::one())).expect("same ambient");
        }
        form
    }

    pub fn dx(dim: usize, i: usize) -> Self {
        Self::basis(dim, &[i])
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut form = Self::zero(dim);
        for (mask, c) in terms {
            form.add_term(mask, c);
        }
        form
    }

    /// Coefficient vector against `basis_masks(dim, k)`.
    pub fn from_coefficients(dim: usize, k: usize, coefficients: &[Rational]) -> Self {
        let masks = basis_masks(dim, k);
        assert_eq!(masks.len(), coefficients.len(), "coefficient vector length");
        Self::from_terms(dim, masks.into_iter().zip(coefficients.iter().cloned()))
    }

    fn add_term(&mut self, mask: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u32) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficient_of(&self, indices: &[usize]) -> Rational {
        self.coefficient(mask_of(indices))
    }

    /// Coefficient of the top monomial `dx_0 ∧ ... ∧ dx_{n-1}`.
    pub fn top_coefficient(&self) -> Rational {
        self.coefficient(if self.dim == 0 { 0 } else { (1u32 << self.dim) - 1 })
    }

    pub fn coefficients(&self, k: usize) -> Vec<Rational> {
        basis_masks(self.dim, k).into_iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a nonzero homogeneous form.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize == k)
    }

    fn check_ambient(&self, other: &Form) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> Form {
        if factor.is_zero() {
            return Form::zero(self.dim);
        }
        Form { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (*m, c * factor)).collect() }
    }

    /// Graded-commutative product.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_ambient(other)?;
        let mut out = Form::zero(self.dim);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                match wedge_sign(a, b) {
                    0 => {}
                    s => {
                        let c = ca * cb;
                        out.add_term(a | b, if s > 0 { c } else { -c });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pullback along the linear map `u ↦ L·u`, where `L` is `dim × k`.
    /// The coefficient on a target subset `S` is `Σ_T det(L[T, S])·a_T`.
    pub fn pullback(&self, map: &RationalMatrix) -> Result<Form> {
        if map.rows() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: map.rows() });
        }
        let k = map.cols();
        let mut out = Form::zero(k);
        // nonzero rows of each column, to skip minors with a zero column
        let support: Vec<u32> = (0..k)
            .map(|j| (0..self.dim).filter(|&i| !map.get(i, j).is_zero()).fold(0, |m, i| m | (1 << i)))
            .collect();
        for (&source, c) in &self.terms {
            let deg = source.count_ones() as usize;
            let rows = indices_of(source);
            for target in basis_masks(k, deg) {
                let cols = indices_of(target);
                if cols.iter().any(|&j| support[j] & source == 0) {
                    continue;
                }
                let minor = determinant(&map.submatrix(&rows, &cols));
                if !minor.is_zero() {
                    out.add_term(target, minor * c);
                }
            }
        }
        Ok(out)
    }

    /// Restriction to the affine image of `u ↦ P·u` (`P` is `dim × k`).
    /// Constant forms only see the linear part, so this is the pullback.
    pub fn restrict(&self, parametrization: &RationalMatrix) -> Result<Form> {
        if let Some(d) = self.degree() {
            if d > parametrization.cols() {
                return Ok(Form::zero(parametrization.cols()));
            }
        }
        self.pullback(parametrization)
    }

    pub fn to_serialized(&self, coords: &Coordinates) -> SerializedForm {
        assert_eq!(coords.dim(), self.dim, "coordinate count");
        let mut entries: Vec<(Vec<usize>, &Rational)> =
            self.terms.iter().map(|(m, c)| (indices_of(*m), c)).collect();
        entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        SerializedForm(
            entries
                .into_iter()
                .map(|(idx, c)| (idx.iter().map(|&i| coords.names()[i].clone()).collect(), format_rational(c)))
                .collect(),
        )
    }

    pub fn from_serialized(serialized: &SerializedForm, coords: &Coordinates) -> Result<Form> {
        let mut form = Form::zero(coords.dim());
        for (names, coefficient) in &serialized.0 {
            let idx = names
                .iter()
                .map(|n| coords.index(n).ok_or_else(|| Error::Parse(format!("unknown coordinate '{n}'"))))
                .collect::<Result<Vec<_>>>()?;
            if mask_of(&idx).count_ones() as usize != idx.len() {
                return Err(Error::Parse(format!("repeated coordinate in {names:?}")));
            }
            form = form.add(&Form::basis(coords.dim(), &idx).scale(&parse_rational(coefficient)?))?;
        }
        Ok(form)
    }

    pub fn display<'a>(&'a self, coords: &'a Coordinates) -> FormDisplay<'a> {
        FormDisplay { form: self, coords }
    }
}

/// List of `(coordinate names, "p/q")` pairs in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedForm(pub Vec<(Vec<String>, String)>);

pub struct FormDisplay<'a> {
    form: &'a Form,
    coords: &'a Coordinates,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries = &self.form.to_serialized(self.coords).0;
        if entries.is_empty() {
            return write!(f, "0");
        }
        for (i, (names, c)) in entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let monomial = if names.is_empty() {
                "1".to_string()
            } else {
                names.iter().map(|n| format!("d{n}")).collect::<Vec<_>>().join("^")
            };
            write!(f, "({c}) {monomial}")?;
        }
        Ok(())
    }
}

/// `φ = dt∧ω + Re(dz1∧dz2∧dz3)` with `ω = Σ dx_k∧dy_k`.
pub fn standard_g2_form() -> Form {
    use coord::*;
    let n = 7;
    let terms: [(&[usize], i64); 7] = [
        (&[T, X1, Y1], 1),
        (&[T, X2, Y2], 1),
        (&[T, X3, Y3], 1),
        (&[X1, X2, X3], 1),
        (&[X1, Y2, Y3], -1),
        (&[Y1, X2, Y3], -1),
        (&[Y1, Y2, X3], -1),
    ];
    terms.iter().fold(Form::zero(n), |acc, (idx, c)| {
        acc.add(&Form::basis(n, idx).scale(&crate::linalg::int(*c))).expect("same ambient")
    })
}

#[cfg(test)]
mod tests {
    use super::coord::*;
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn dt_wedge_dt_vanishes() {
        let dt = Form::dx(7, T);
        assert!(dt.wedge(&dt).unwrap().is_zero());
    }

    #[test]
    fn disjoint_wedge_concatenates() {
        let a = Form::basis(7, &[X1, Y1]);
        let b = Form::basis(7, &[X2, Y2]);
        let ab = a.wedge(&b).unwrap();
        assert_eq!(ab.coefficient_of(&[X1, Y1, X2, Y2]), int(1));
        assert_eq!(ab.terms().count(), 1);
    }

    #[test]
    fn basis_reorders_with_sign() {
        assert_eq!(Form::basis(7, &[Y1, X1]).coefficient_of(&[X1, Y1]), int(-1));
    }

    #[test]
    fn omega_cubed_is_six_volumes() {
        // multinomial oracle: (a+b+c)^3 over commuting 2-forms with a^2 = 0
        // leaves only the 3! cross terms a∧b∧c.
        let omega = [(X1, Y1), (X2, Y2), (X3, Y3)]
            .iter()
            .fold(Form::zero(7), |acc, &(x, y)| acc.add(&Form::basis(7, &[x, y])).unwrap());
        let cube = omega.wedge(&omega).unwrap().wedge(&omega).unwrap();
        assert_eq!(cube.coefficient_of(&[X1, Y1, X2, Y2, X3, Y3]), int(6));
        assert_eq!(cube.terms().count(), 1);
    }

    #[test]
    fn wedge_rejects_mismatched_ambient() {
        assert!(Form::one(3).wedge(&Form::one(7)).is_err());
    }

    #[test]
    fn g2_form_coefficients() {
        let phi = standard_g2_form();
        assert_eq!(phi.coefficient_of(&[T, X1, Y1]), int(1));
        assert_eq!(phi.coefficient_of(&[X1, X2, X3]), int(1));
        assert_eq!(phi.coefficient_of(&[Y1, Y2, Y3]), int(0));
        assert_eq!(phi.degree(), Some(3));
    }

    #[test]
    fn pullback_by_identity_is_identity() {
        let phi = standard_g2_form();
        assert_eq!(phi.pullback(&RationalMatrix::identity(7)).unwrap(), phi);
    }

    #[test]
    fn conjugation_reverses_dt() {
        let kappa = RationalMatrix::diagonal(&[int(-1), int(1), int(-1), int(1), int(-1), int(1), int(-1)]);
        let dt = Form::dx(7, T);
        assert_eq!(dt.pullback(&kappa).unwrap(), dt.neg());
        assert_eq!(standard_g2_form().pullback(&kappa).unwrap(), standard_g2_form());
    }

    #[test]
    fn restriction_to_anti_diagonal_torus() {
        let p = RationalMatrix::from_i64_rows(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 0],
            &[0, 0, 1],
        ]);
        let restricted = standard_g2_form().restrict(&p).unwrap();
        assert_eq!(restricted, Form::basis(3, &[0, 1, 2]).scale(&int(2)));
        assert!(Form::dx(7, T).restrict(&p).unwrap().is_zero());
    }

    #[test]
    fn restriction_to_real_torus() {
        let mut p = RationalMatrix::zeros(7, 3);
        p.set(X1, 0, int(1));
        p.set(X2, 1, int(1));
        p.set(X3, 2, int(1));
        assert_eq!(standard_g2_form().restrict(&p).unwrap(), Form::basis(3, &[0, 1, 2]));
    }

    #[test]
    fn top_degree_scales_by_determinant() {
        let l = RationalMatrix::from_rows(vec![vec![int(2), int(1)], vec![rat(1, 2), int(3)]]);
        let vol = Form::basis(2, &[0, 1]);
        assert_eq!(vol.pullback(&l).unwrap(), vol.scale(&rat(11, 2)));
    }

    #[test]
    fn serialization_round_trip() {
        let coords = Coordinates::standard();
        let phi = standard_g2_form();
        let s = phi.to_serialized(&coords);
        assert_eq!(s.0[0], (vec!["t".to_string(), "x1".into(), "y1".into()], "1".to_string()));
        assert_eq!(Form::from_serialized(&s, &coords).unwrap(), phi);
    }

    #[test]
    fn basis_masks_are_lexicographic() {
        let masks = basis_masks(4, 2);
        let tuples: Vec<Vec<usize>> = masks.iter().map(|&m| indices_of(m)).collect();
        assert_eq!(tuples, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(basis_masks(7, 3).len(), 35);
    }
}
