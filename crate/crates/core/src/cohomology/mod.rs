//! Invariant cohomology of `T/G`, the Poincaré pairing and duals of strata.

mod invariants;

pub use invariants::{average, invariant_forms};

use crate::error::{Error, Result};
use crate::exterior::{basis_masks, Form};
use crate::integration::{integrate_orbifold, integrate_parameters};
use crate::linalg::{determinant, solve, Rational, RationalMatrix};
use crate::locus::Stratum;
use crate::orbifold::IsometryGroup;

/// Constant-form representatives of `H^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySpace {
    pub degree: usize,
    pub basis: Vec<Form>,
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `form` against the basis, `None` when outside the span.
    pub fn coordinates(&self, form: &Form) -> Option<Vec<Rational>> {
        let ambient = self.basis.first().map_or(form.dim(), Form::dim);
        if form.is_zero() {
            return Some(vec![Rational::from_integer(0.into()); self.dim()]);
        }
        if self.basis.is_empty() || !form.is_homogeneous_of(self.degree) {
            return None;
        }
        let columns: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.coefficients(self.degree)).collect();
        let m = RationalMatrix::from_columns(basis_masks(ambient, self.degree).len(), &columns);
        solve(&m, &form.coefficients(self.degree)).map(|s| s.particular)
    }

    pub fn contains(&self, form: &Form) -> bool {
        self.coordinates(form).is_some()
    }

    pub fn combine(&self, coefficients: &[Rational], ambient: usize) -> Form {
        let mut out = Form::zero(ambient);
        for (b, c) in self.basis.iter().zip(coefficients) {
            out = out.add(&b.scale(c)).expect("same ambient");
        }
        out
    }
}

/// `H^k(T/G) = Λ^k(R^n)*^G` for all `k`.
#[derive(Clone, Debug)]
pub struct OrbifoldCohomology {
    group: IsometryGroup,
    spaces: Vec<CohomologySpace>,
}

pub fn invariant_basis(group: &IsometryGroup, k: usize) -> CohomologySpace {
    let linear: Vec<RationalMatrix> = group.elements.iter().map(|g| g.linear.clone()).collect();
    CohomologySpace { degree: k, basis: invariant_forms(group.dim(), &linear, k) }
}

impl OrbifoldCohomology {
    pub fn new(group: &IsometryGroup) -> Self {
        let spaces = (0..=group.dim()).map(|k| invariant_basis(group, k)).collect();
        Self { group: group.clone(), spaces }
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn group(&self) -> &IsometryGroup {
        &self.group
    }

    pub fn space(&self, k: usize) -> &CohomologySpace {
        &self.spaces[k]
    }

    pub fn betti(&self) -> Vec<usize> {
        self.spaces.iter().map(CohomologySpace::dim).collect()
    }

    /// `(∫ α_i ∧ β_j)` over bases of `H^k` and `H^{n-k}`.
    pub fn pairing_matrix(&self, k: usize) -> RationalMatrix {
        let n = self.dim();
        let rows = &self.spaces[k].basis;
        let cols = &self.spaces[n - k].basis;
        let mut m = RationalMatrix::zeros(rows.len(), cols.len());
        for (i, a) in rows.iter().enumerate() {
            for (j, b) in cols.iter().enumerate() {
                let w = a.wedge(b).expect("same ambient");
                m.set(i, j, integrate_orbifold(&w, &self.group).expect("top degree"));
            }
        }
        m
    }

    /// The invariant class `P` with `∫_X P ∧ ξ = ∫_S w ∧ ξ|_S` for every
    /// invariant `ξ` of complementary degree. `w` lives on the stratum's
    /// parameter coordinates.
    pub fn poincare_dual(&self, stratum: &Stratum, w: &Form) -> Result<Form> {
        let n = self.dim();
        let k = stratum.dim();
        if w.dim() != k {
            return Err(Error::DimensionMismatch { expected: k, found: w.dim() });
        }
        let Some(deg_w) = w.degree() else {
            return Ok(Form::zero(n));
        };
        if deg_w > k {
            return Err(Error::DegreeMismatch { expected: k, found: deg_w });
        }
        let target = n - k + deg_w;
        let pairing = self.pairing_matrix(target);
        if !pairing.is_square() || determinant(&pairing) == Rational::from_integer(0.into()) {
            return Err(Error::DegeneratePairing(target));
        }
        let mut rhs = Vec::with_capacity(pairing.cols());
        for xi in &self.spaces[n - target].basis {
            let restricted = xi.restrict(&stratum.parametrization)?;
            rhs.push(integrate_parameters(&w.wedge(&restricted)?, stratum)?);
        }
        let c = solve(&pairing.transpose(), &rhs).ok_or(Error::DegeneratePairing(target))?;
        Ok(self.spaces[target].combine(&c.particular, n))
    }
}

/// `H^*(N)` for a stratum: forms on the parameter torus fixed by the deck
/// action, degrees `0..=dim`.
pub fn stratum_cohomology(stratum: &Stratum) -> Vec<CohomologySpace> {
    let k = stratum.dim();
    (0..=k).map(|d| CohomologySpace { degree: d, basis: invariant_forms(k, &stratum.deck, d) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{coord, standard_g2_form};
    use crate::integration::integrate_stratum;
    use crate::linalg::{int, rank, rat};
    use crate::locus::strata;
    use crate::orbifold::{closure, TorusLattice};
    use crate::preset::forms::{alpha, beta1, beta2, h2_generator, h3_listed};
    use crate::preset::{paper_anchors, paper_generators};

    fn setup() -> (OrbifoldCohomology, Vec<Stratum>) {
        let l = TorusLattice::paper();
        let g = closure(&l, &paper_generators(&l), 1000).unwrap();
        let s = strata(&g, &standard_g2_form(), &paper_anchors()).unwrap();
        (OrbifoldCohomology::new(&g), s)
    }

    #[test]
    fn betti_numbers_and_listed_bases() {
        let (h, _) = setup();
        assert_eq!(h.betti(), vec![1, 0, 1, 6, 6, 1, 0, 1]);
        let expected = Form::basis(7, &[coord::X1, coord::X2]).add(&Form::basis(7, &[coord::Y1, coord::Y2])).unwrap();
        assert_eq!(h.space(2).basis, vec![expected]);
        assert_eq!(h2_generator(), h.space(2).basis[0].scale(&int(2)));
        let listed = h3_listed();
        assert!(listed.iter().all(|f| h.space(3).contains(f)));
        let coords: Vec<Vec<Rational>> = listed.iter().map(|f| h.space(3).coordinates(f).unwrap()).collect();
        assert_eq!(rank(&RationalMatrix::from_rows(coords)), 6);
    }

    #[test]
    fn trivial_and_cyclic_groups() {
        let g = IsometryGroup::trivial(TorusLattice::paper());
        let h = OrbifoldCohomology::new(&g);
        assert_eq!(h.betti(), vec![1, 7, 21, 35, 35, 21, 7, 1]);
        assert_eq!(h.pairing_matrix(0).get(0, 0), &int(4));

        let f = crate::preset::f_map(&TorusLattice::paper()).linear;
        let rows: Vec<usize> = (1..7).collect();
        let f6 = f.submatrix(&rows, &rows);
        let mut powers = vec![RationalMatrix::identity(6)];
        for _ in 0..3 {
            let next = powers.last().unwrap().mul(&f6);
            powers.push(next);
        }
        assert_eq!(invariant_forms(6, &powers, 2).len(), 5);
    }

    #[test]
    fn pairing_is_perfect() {
        let (h, _) = setup();
        assert_eq!(h.pairing_matrix(0).get(0, 0), &rat(1, 8));
        for k in 0..=7 {
            let m = h.pairing_matrix(k);
            assert_eq!(m.rows(), m.cols());
            assert_eq!(rank(&m), m.rows());
        }
        assert_eq!(rank(&h.pairing_matrix(3)), 6);
    }

    #[test]
    fn pairing_against_beta() {
        let (h, s) = setup();
        let g = h.group().clone();
        for (l1, l2, m1, m2) in [(1, 0, 1, 0), (2, -3, 5, 7), (0, 1, 0, 1), (-1, 4, 3, -2)] {
            let b = beta1().scale(&int(m1)).add(&beta2().scale(&int(m2))).unwrap();
            let a = alpha(l1, l2);
            let v = integrate_orbifold(&a.wedge(&b).unwrap(), &g).unwrap();
            assert_eq!(v, int(2 * (m1 * l1 - m2 * l2)));
            for st in &s[..2] {
                assert_eq!(integrate_stratum(&a, st).unwrap(), int(2 * (l1 - l2)));
            }
        }
    }

    #[test]
    fn poincare_duals_of_strata() {
        let (h, s) = setup();
        let one = Form::one(3);
        let b12 = beta1().add(&beta2()).unwrap();
        let b_half = beta1().sub(&beta2()).unwrap().scale(&rat(1, 2));
        for (i, st) in s.iter().enumerate() {
            let pd = h.poincare_dual(st, &one).unwrap();
            assert_eq!(pd, if i < 2 { b12.clone() } else { b_half.clone() }, "{}", st.label);
            for xi in &h.space(3).basis {
                let lhs = integrate_orbifold(&pd.wedge(xi).unwrap(), h.group()).unwrap();
                let rhs = integrate_stratum(xi, st).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let vol = Form::basis(3, &[0, 1, 2]);
        let top = h.poincare_dual(&s[0], &vol).unwrap();
        assert_eq!(top, Form::basis(7, &[0, 1, 2, 3, 4, 5, 6]).scale(&int(4)));
    }

    #[test]
    fn stratum_cohomology_is_one_in_each_degree() {
        let (_, s) = setup();
        for st in &s {
            let spaces = stratum_cohomology(st);
            assert_eq!(spaces.iter().map(CohomologySpace::dim).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
            assert_eq!(spaces[1].basis, vec![Form::dx(3, 2)], "{}", st.label);
        }
    }
}
