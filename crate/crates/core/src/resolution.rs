//! The cohomology model `H*(X) ⊕ ⊕_j H^{*-2}(N_j)⊗x_j` of the resolved
//! manifold and its product.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::cohomology::{stratum_cohomology, CohomologySpace, OrbifoldCohomology};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::linalg::{format_rational, int, Rational};
use crate::locus::Stratum;

/// `x_j · x_j = SELF_INTERSECTION · PD[N_j]`; the self-intersection of the
/// exceptional `CP^1` in `T*CP^1`.
pub const SELF_INTERSECTION: i64 = -2;

/// A class of the model. `base[k]` holds coordinates against the basis of
/// `H^k(X)`; `fibered[label][d]` holds coordinates against the basis of
/// `H^d(N_label)`, so that part has degree `d + 2`. Zero blocks are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelClass {
    pub base: BTreeMap<usize, Vec<Rational>>,
    pub fibered: BTreeMap<String, BTreeMap<usize, Vec<Rational>>>,
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn add_into(target: &mut Vec<Rational>, v: &[Rational], factor: &Rational) {
    if target.is_empty() {
        target.resize(v.len(), Rational::zero());
    }
    for (t, x) in target.iter_mut().zip(v) {
        *t += x * factor;
    }
}

impl ModelClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_empty() && self.fibered.is_empty()
    }

    fn normalized(mut self) -> Self {
        self.base.retain(|_, v| !is_zero_vec(v));
        for blocks in self.fibered.values_mut() {
            blocks.retain(|_, v| !is_zero_vec(v));
        }
        self.fibered.retain(|_, b| !b.is_empty());
        self
    }

    pub fn base_part(degree: usize, coefficients: Vec<Rational>) -> Self {
        let mut c = Self::zero();
        c.base.insert(degree, coefficients);
        c.normalized()
    }

    pub fn fibered_part(label: &str, degree: usize, coefficients: Vec<Rational>) -> Self {
        let mut c = Self::zero();
        c.fibered.entry(label.to_string()).or_default().insert(degree, coefficients);
        c.normalized()
    }

    /// Degree of a nonzero homogeneous class.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.base.keys().copied().chain(self.fibered.values().flat_map(|b| b.keys().map(|d| d + 2)));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add_scaled(&self, other: &ModelClass, factor: &Rational) -> ModelClass {
        let mut out = self.clone();
        for (k, v) in &other.base {
            add_into(out.base.entry(*k).or_default(), v, factor);
        }
        for (label, blocks) in &other.fibered {
            let entry = out.fibered.entry(label.clone()).or_default();
            for (d, v) in blocks {
                add_into(entry.entry(*d).or_default(), v, factor);
            }
        }
        out.normalized()
    }

    pub fn add(&self, other: &ModelClass) -> ModelClass {
        self.add_scaled(other, &int(1))
    }

    pub fn sub(&self, other: &ModelClass) -> ModelClass {
        self.add_scaled(other, &int(-1))
    }

    pub fn scale(&self, factor: &Rational) -> ModelClass {
        ModelClass::zero().add_scaled(self, factor)
    }
}

fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl Serialize for ModelClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let base: BTreeMap<String, Vec<String>> =
            self.base.iter().map(|(k, v)| (k.to_string(), rational_strings(v))).collect();
        let fibered: BTreeMap<&str, BTreeMap<String, Vec<String>>> = self
            .fibered
            .iter()
            .map(|(l, b)| (l.as_str(), b.iter().map(|(d, v)| (d.to_string(), rational_strings(v))).collect()))
            .collect();
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("base", &base)?;
        map.serialize_entry("fibered", &fibered)?;
        map.end()
    }
}

/// The model ring together with the data needed to multiply.
#[derive(Clone, Debug)]
pub struct ResolutionModel {
    cohomology: OrbifoldCohomology,
    strata: Vec<Stratum>,
    stratum_spaces: Vec<Vec<CohomologySpace>>,
    self_intersection: Rational,
}

impl ResolutionModel {
    pub fn new(cohomology: OrbifoldCohomology, strata: Vec<Stratum>) -> Self {
        Self::with_self_intersection(cohomology, strata, int(SELF_INTERSECTION))
    }

    /// Only for tests that probe the dependence on the constant.
    pub fn with_self_intersection(cohomology: OrbifoldCohomology, strata: Vec<Stratum>, value: Rational) -> Self {
        let stratum_spaces = strata.iter().map(stratum_cohomology).collect();
        Self { cohomology, strata, stratum_spaces, self_intersection: value }
    }

    pub fn cohomology(&self) -> &OrbifoldCohomology {
        &self.cohomology
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    fn stratum_index(&self, label: &str) -> Result<usize> {
        self.strata.iter().position(|s| s.label == label).ok_or_else(|| Error::UnknownStratum(label.to_string()))
    }

    pub fn stratum(&self, label: &str) -> Result<&Stratum> {
        Ok(&self.strata[self.stratum_index(label)?])
    }

    /// `H^d(N_label)`.
    pub fn stratum_space(&self, label: &str, d: usize) -> Result<&CohomologySpace> {
        let i = self.stratum_index(label)?;
        Ok(&self.stratum_spaces[i][d])
    }

    pub fn dim(&self) -> usize {
        self.cohomology.dim()
    }

    /// `1 ⊗ x_label`.
    pub fn thom_symbol(&self, label: &str) -> Result<ModelClass> {
        let i = self.stratum_index(label)?;
        let space = &self.stratum_spaces[i][0];
        let one = space.coordinates(&Form::one(self.strata[i].dim())).expect("constants are invariant");
        Ok(ModelClass::fibered_part(label, 0, one))
    }

    /// The class of an invariant form on `X`.
    pub fn base_class(&self, form: &Form) -> Option<ModelClass> {
        let Some(k) = form.degree() else {
            return Some(ModelClass::zero());
        };
        let coords = self.cohomology.space(k).coordinates(form)?;
        Some(ModelClass::base_part(k, coords))
    }

    /// `α ⊗ x_label` for `α` on the parameter coordinates of the stratum.
    pub fn fibered_class(&self, label: &str, alpha: &Form) -> Result<Option<ModelClass>> {
        let i = self.stratum_index(label)?;
        let Some(d) = alpha.degree() else {
            return Ok(Some(ModelClass::zero()));
        };
        Ok(self.stratum_spaces[i][d].coordinates(alpha).map(|c| ModelClass::fibered_part(label, d, c)))
    }

    pub fn model_betti(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| self.dimension(k)).collect()
    }

    pub fn dimension(&self, k: usize) -> usize {
        let fibered: usize = self
            .stratum_spaces
            .iter()
            .map(|spaces| if k >= 2 { spaces.get(k - 2).map_or(0, CohomologySpace::dim) } else { 0 })
            .sum();
        self.cohomology.space(k).dim() + fibered
    }

    /// Basis of degree `k`: first `H^k(X)`, then each stratum in order.
    pub fn basis(&self, k: usize) -> Vec<ModelClass> {
        let mut out = Vec::new();
        let unit = |n: usize, i: usize| -> Vec<Rational> { (0..n).map(|j| int((i == j) as i64)).collect() };
        let nb = self.cohomology.space(k).dim();
        for i in 0..nb {
            out.push(ModelClass::base_part(k, unit(nb, i)));
        }
        if k >= 2 {
            for (s, spaces) in self.strata.iter().zip(&self.stratum_spaces) {
                if let Some(space) = spaces.get(k - 2) {
                    for i in 0..space.dim() {
                        out.push(ModelClass::fibered_part(&s.label, k - 2, unit(space.dim(), i)));
                    }
                }
            }
        }
        out
    }

    /// Coordinates of the degree-`k` part against [`basis`](Self::basis).
    pub fn flatten(&self, class: &ModelClass, k: usize) -> Vec<Rational> {
        let nb = self.cohomology.space(k).dim();
        let mut out = class.base.get(&k).cloned().unwrap_or_else(|| vec![Rational::zero(); nb]);
        if k >= 2 {
            for (s, spaces) in self.strata.iter().zip(&self.stratum_spaces) {
                if let Some(space) = spaces.get(k - 2) {
                    let block = class.fibered.get(&s.label).and_then(|b| b.get(&(k - 2)));
                    out.extend(block.cloned().unwrap_or_else(|| vec![Rational::zero(); space.dim()]));
                }
            }
        }
        out
    }

    fn base_form(&self, k: usize, coords: &[Rational]) -> Form {
        self.cohomology.space(k).combine(coords, self.dim())
    }

    fn stratum_form(&self, i: usize, d: usize, coords: &[Rational]) -> Form {
        self.stratum_spaces[i][d].combine(coords, self.strata[i].dim())
    }

    fn fibered_from_form(&self, i: usize, form: &Form) -> Result<ModelClass> {
        let Some(d) = form.degree() else {
            return Ok(ModelClass::zero());
        };
        let label = &self.strata[i].label;
        let coords = self.stratum_spaces[i][d]
            .coordinates(form)
            .ok_or_else(|| Error::UnsupportedSingularity(format!("{label}: restricted class is not deck-invariant")))?;
        Ok(ModelClass::fibered_part(label, d, coords))
    }

    /// Product of model classes.
    ///
    /// `ξ·ζ` is the wedge on `X`; `ξ·(α⊗x_j) = (ξ|_{N_j} ∧ α)⊗x_j` and
    /// `(α⊗x_j)·ξ = (α ∧ ξ|_{N_j})⊗x_j`; `x_j·x_k = 0` for `j ≠ k`; and
    /// `(α⊗x_j)·(β⊗x_j) = −2·PD(N_j, α∧β)`. Anything above the top degree
    /// vanishes.
    pub fn product(&self, u: &ModelClass, v: &ModelClass) -> Result<ModelClass> {
        let n = self.dim();
        let mut out = ModelClass::zero();
        for (&k1, a) in &u.base {
            let fa = self.base_form(k1, a);
            for (&k2, b) in &v.base {
                if k1 + k2 > n {
                    continue;
                }
                let w = fa.wedge(&self.base_form(k2, b))?;
                let coords = self.cohomology.space(k1 + k2).coordinates(&w).expect("invariant forms form a ring");
                out = out.add(&ModelClass::base_part(k1 + k2, coords));
            }
            for (label, blocks) in &v.fibered {
                let i = self.stratum_index(label)?;
                let restricted = fa.restrict(&self.strata[i].parametrization)?;
                for (&d, c) in blocks {
                    if k1 + d > self.strata[i].dim() {
                        continue;
                    }
                    let w = restricted.wedge(&self.stratum_form(i, d, c))?;
                    out = out.add(&self.fibered_from_form(i, &w)?);
                }
            }
        }
        for (label, blocks) in &u.fibered {
            let i = self.stratum_index(label)?;
            let dim_s = self.strata[i].dim();
            for (&d1, a) in blocks {
                let fa = self.stratum_form(i, d1, a);
                for (&k2, b) in &v.base {
                    if d1 + k2 > dim_s {
                        continue;
                    }
                    let restricted = self.base_form(k2, b).restrict(&self.strata[i].parametrization)?;
                    out = out.add(&self.fibered_from_form(i, &fa.wedge(&restricted)?)?);
                }
                if let Some(other) = v.fibered.get(label) {
                    for (&d2, b) in other {
                        if d1 + d2 > dim_s {
                            continue;
                        }
                        let w = fa.wedge(&self.stratum_form(i, d2, b))?;
                        let pd = self.cohomology.poincare_dual(&self.strata[i], &w)?;
                        if let Some(class) = self.base_class(&pd) {
                            out = out.add_scaled(&class, &self.self_intersection);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::standard_g2_form;
    use crate::locus::strata;
    use crate::orbifold::{closure, TorusLattice};
    use crate::preset::forms::{beta1, beta2, h2_generator};
    use crate::preset::{paper_anchors, paper_generators};

    fn model() -> ResolutionModel {
        let l = TorusLattice::paper();
        let g = closure(&l, &paper_generators(&l), 1000).unwrap();
        let s = strata(&g, &standard_g2_form(), &paper_anchors()).unwrap();
        ResolutionModel::new(OrbifoldCohomology::new(&g), s)
    }

    #[test]
    fn model_betti_numbers() {
        assert_eq!(model().model_betti(), vec![1, 0, 11, 16, 16, 11, 0, 1]);
    }

    #[test]
    fn thom_symbols() {
        let m = model();
        let x1 = m.thom_symbol("N1").unwrap();
        assert_eq!(x1.degree(), Some(2));
        assert!(x1.base.is_empty());
        assert_eq!(x1.add(&m.thom_symbol("N2").unwrap()).degree(), Some(2));
        assert_eq!(m.thom_symbol("N11"), Err(Error::UnknownStratum("N11".into())));
    }

    #[test]
    fn products_of_thom_symbols() {
        let m = model();
        let x = |l: &str| m.thom_symbol(l).unwrap();
        assert!(m.product(&x("N1"), &x("N2")).unwrap().is_zero());
        let b = m.base_class(&beta1().add(&beta2()).unwrap()).unwrap();
        assert_eq!(m.product(&x("N1"), &x("N1")).unwrap(), b.scale(&int(-2)));
        let p = m.product(&x("N7").add(&x("N3")), &x("N7").sub(&x("N3"))).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn base_times_thom_symbol_restricts() {
        let m = model();
        let xi = m.base_class(&h2_generator()).unwrap();
        let p = m.product(&xi, &m.thom_symbol("N1").unwrap()).unwrap();
        let expected = m.fibered_class("N1", &Form::basis(3, &[0, 1]).scale(&int(4))).unwrap().unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.degree(), Some(4));
    }

    #[test]
    fn flatten_matches_basis() {
        let m = model();
        for k in 0..=7 {
            let basis = m.basis(k);
            assert_eq!(basis.len(), m.dimension(k));
            for (i, b) in basis.iter().enumerate() {
                let v = m.flatten(b, k);
                assert_eq!(v.len(), basis.len());
                assert!(v.iter().enumerate().all(|(j, x)| *x == int((i == j) as i64)));
            }
        }
    }
}
