use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::exterior::Form;
use crate::linalg::rational::serde_rational_vec;
use crate::linalg::{determinant, RationalMatrix, Rational};

use super::TorusLattice;

/// `x ↦ A·x + b` on the torus. The translation is kept reduced modulo the
/// lattice. Equality and hashing ignore the word.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AffineIsometry {
    pub linear: RationalMatrix,
    #[serde(with = "serde_rational_vec")]
    pub translation: Vec<Rational>,
    /// Expression in the generators, e.g. `F*kappa`.
    pub word: String,
}

impl PartialEq for AffineIsometry {
    fn eq(&self, other: &Self) -> bool {
        self.linear == other.linear && self.translation == other.translation
    }
}

impl Eq for AffineIsometry {}

impl Hash for AffineIsometry {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.linear.hash(state);
        self.translation.hash(state);
    }
}

impl AffineIsometry {
    pub fn new(linear: RationalMatrix, translation: Vec<Rational>, word: impl Into<String>, lattice: &TorusLattice) -> Self {
        assert_eq!(linear.rows(), translation.len(), "translation length");
        let translation = lattice.reduce(&translation);
        Self { linear, translation, word: word.into() }
    }

    pub fn identity(lattice: &TorusLattice) -> Self {
        let n = lattice.dim();
        Self::new(RationalMatrix::identity(n), vec![Rational::from_integer(0.into()); n], "id", lattice)
    }

    pub fn dim(&self) -> usize {
        self.linear.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(num_traits::Zero::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineIsometry, lattice: &TorusLattice) -> AffineIsometry {
        let linear = self.linear.mul(&other.linear);
        let translation: Vec<Rational> =
            self.linear.mul_vec(&other.translation).iter().zip(&self.translation).map(|(a, b)| a + b).collect();
        let word = match (self.word.as_str(), other.word.as_str()) {
            ("id", w) | (w, "id") => w.to_string(),
            (a, b) => format!("{a}*{b}"),
        };
        AffineIsometry::new(linear, translation, word, lattice)
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.linear.mul_vec(x).iter().zip(&self.translation).map(|(a, b)| a + b).collect()
    }

    /// Translation in lattice coordinates.
    pub fn translation_in_lattice(&self, lattice: &TorusLattice) -> Vec<Rational> {
        lattice.to_lattice(&self.translation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    NotSquare,
    DimensionMismatch,
    NotOrthogonal,
    LatticeNotPreserved,
    FormNotPreserved,
}

/// Outcome of [`validate`]; empty when every check passes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `AᵀA = I`, `A·Λ = Λ` and, when given, `A*φ = φ`.
pub fn validate(g: &AffineIsometry, lattice: &TorusLattice, form: Option<&Form>) -> Verdict {
    let mut violations = Vec::new();
    let a = &g.linear;
    if !a.is_square() {
        return Verdict { violations: vec![Violation::NotSquare] };
    }
    if a.rows() != lattice.dim() || g.translation.len() != lattice.dim() {
        return Verdict { violations: vec![Violation::DimensionMismatch] };
    }
    if !a.transpose().mul(a).is_identity() {
        violations.push(Violation::NotOrthogonal);
    }
    let in_lattice = lattice.linear_in_lattice(a);
    let unimodular = in_lattice.to_integer().is_some() && {
        let d = determinant(&in_lattice);
        d == Rational::from_integer(1.into()) || d == Rational::from_integer((-1).into())
    };
    if !unimodular {
        violations.push(Violation::LatticeNotPreserved);
    }
    if let Some(phi) = form {
        match phi.pullback(a) {
            Ok(pulled) if &pulled == phi => {}
            _ => violations.push(Violation::FormNotPreserved),
        }
    }
    Verdict { violations }
}
