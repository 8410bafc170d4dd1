use num_traits::Zero;

use crate::exterior::{basis_masks, Form};
use crate::linalg::{echelon_basis, Rational, RationalMatrix};

/// `(1/|G|) Σ A*` applied to `form`.
pub fn average(form: &Form, linear_parts: &[RationalMatrix]) -> Form {
    let mut sum = Form::zero(form.dim());
    for a in linear_parts {
        sum = sum.add(&form.pullback(a).expect("square linear part")).expect("same ambient");
    }
    sum.scale(&Rational::new(1.into(), linear_parts.len().into()))
}

/// Basis of the degree-`k` constant forms on `R^dim` fixed by every `A*`.
///
/// `linear_parts` must be closed under composition (a finite group, possibly
/// with repeats), so that averaging is a projector. The basis is the reduced
/// row echelon form of the projector's image, read against the lexicographic
/// monomial order.
pub fn invariant_forms(dim: usize, linear_parts: &[RationalMatrix], k: usize) -> Vec<Form> {
    let masks = basis_masks(dim, k);
    let images: Vec<Vec<Rational>> = masks
        .iter()
        .map(|&m| average(&Form::monomial(dim, m, Rational::from_integer(1.into())), linear_parts).coefficients(k))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    echelon_basis(&images, masks.len()).iter().map(|v| Form::from_coefficients(dim, k, v)).collect()
}
