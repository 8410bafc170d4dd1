use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::rational::{frac, serde_rational_vec};
use crate::linalg::{nullspace, saturate, solve, IntegerMatrix, Rational, RationalMatrix};
use crate::orbifold::{AffineIsometry, TorusLattice};

/// The image of `u ↦ p + D·u` in `R^n/Z^n`, written in lattice coordinates.
///
/// `directions` is the column HNF of the saturated direction lattice and
/// `basepoint` is the canonical representative of `p` modulo
/// `span_R(D) + Z^n`, so structural equality is equality of subtori.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineSubtorus {
    #[serde(with = "serde_rational_vec")]
    basepoint: Vec<Rational>,
    directions: IntegerMatrix,
}

fn integer_columns(vectors: &[Vec<Rational>], n: usize) -> IntegerMatrix {
    let cols: Vec<Vec<_>> = vectors
        .iter()
        .map(|v| {
            let l = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    IntegerMatrix::from_columns(n, &cols)
}

/// Rows form a basis of the integer annihilator of `span_R(h)`.
fn quotient_map(h: &IntegerMatrix) -> IntegerMatrix {
    let n = h.rows();
    let kernel = nullspace(&h.transpose().to_rational());
    saturate(&integer_columns(&kernel, n)).transpose()
}

impl AffineSubtorus {
    /// Canonical form of `p + span(D)` with `p` and `D` in lattice coordinates.
    pub fn new(basepoint: Vec<Rational>, directions: &IntegerMatrix) -> Self {
        assert_eq!(basepoint.len(), directions.rows(), "basepoint length");
        let directions = saturate(directions);
        let q = quotient_map(&directions);
        let target: Vec<Rational> = q.to_rational().mul_vec(&basepoint).iter().map(frac).collect();
        let basepoint = solve(&q.to_rational(), &target).expect("quotient map is surjective").particular;
        Self { basepoint, directions }
    }

    /// Builds from real coordinates; `None` when a direction is not a
    /// lattice vector.
    pub fn from_real(basepoint: &[Rational], directions: &RationalMatrix, lattice: &TorusLattice) -> Option<Self> {
        let cols: Vec<Vec<Rational>> = directions.columns().iter().map(|c| lattice.to_lattice(c)).collect();
        let d = RationalMatrix::from_columns(lattice.dim(), &cols).to_integer()?;
        Some(Self::new(lattice.to_lattice(basepoint), &d))
    }

    pub fn ambient_dim(&self) -> usize {
        self.basepoint.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.cols()
    }

    pub fn basepoint(&self) -> &[Rational] {
        &self.basepoint
    }

    pub fn directions(&self) -> &IntegerMatrix {
        &self.directions
    }

    pub fn real_basepoint(&self, lattice: &TorusLattice) -> Vec<Rational> {
        lattice.to_real(&self.basepoint)
    }

    pub fn real_directions(&self, lattice: &TorusLattice) -> RationalMatrix {
        lattice.directions_to_real(&self.directions)
    }

    /// Whether the point (lattice coordinates) lies on the subtorus.
    pub fn contains(&self, point: &[Rational]) -> bool {
        let q = quotient_map(&self.directions).to_rational();
        let diff: Vec<Rational> = point.iter().zip(&self.basepoint).map(|(a, b)| a - b).collect();
        q.mul_vec(&diff).iter().all(|v| v.is_integer())
    }

    /// `g(T)`, in canonical form.
    pub fn image(&self, g: &AffineIsometry, lattice: &TorusLattice) -> AffineSubtorus {
        let a = lattice.linear_in_lattice(&g.linear);
        let b = g.translation_in_lattice(lattice);
        let p: Vec<Rational> = a.mul_vec(&self.basepoint).iter().zip(&b).map(|(x, y)| x + y).collect();
        let d = a.mul(&self.directions.to_rational()).to_integer().expect("lattice-preserving map");
        AffineSubtorus::new(p, &d)
    }

    /// `p + Σ d_j / q_j` for the given denominators.
    pub fn sample_point(&self, denominators: &[u64]) -> Vec<Rational> {
        let mut p = self.basepoint.clone();
        for (j, q) in denominators.iter().enumerate().take(self.dim()) {
            let scale = Rational::new(1.into(), (*q).into());
            for (i, x) in p.iter_mut().enumerate() {
                let d = self.directions.get(i, j);
                if !d.is_zero() {
                    *x += Rational::from_integer(d.clone()) * &scale;
                }
            }
        }
        p
    }
}

/// Image of `g` on a point given in lattice coordinates, reduced mod `Z^n`.
pub fn act_on_point(g: &AffineIsometry, point: &[Rational], lattice: &TorusLattice) -> Vec<Rational> {
    let a = lattice.linear_in_lattice(&g.linear);
    let b = g.translation_in_lattice(lattice);
    a.mul_vec(point).iter().zip(&b).map(|(x, y)| frac(&(x + y))).collect()
}

pub fn act_on_subtorus(g: &AffineIsometry, t: &AffineSubtorus, lattice: &TorusLattice) -> AffineSubtorus {
    t.image(g, lattice)
}
