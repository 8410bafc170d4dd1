//! Integrals of constant-coefficient forms over subtori, strata and `T/G`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::linalg::{Rational, RationalMatrix};
use crate::locus::Stratum;
use crate::orbifold::IsometryGroup;

fn check_degree(a: &Form, k: usize) -> Result<()> {
    match a.degree() {
        Some(d) if d != k => Err(Error::DegreeMismatch { expected: k, found: d }),
        None if !a.is_zero() => Err(Error::DegreeMismatch { expected: k, found: usize::MAX }),
        _ => Ok(()),
    }
}

/// Integral over the unit cube of the parametrization `P` (`n × k`).
pub fn integrate_subtorus(a: &Form, parametrization: &RationalMatrix) -> Result<Rational> {
    check_degree(a, parametrization.cols())?;
    Ok(a.restrict(parametrization)?.top_coefficient())
}

/// Integral over the image of the stratum in `T/G`.
pub fn integrate_stratum(a: &Form, stratum: &Stratum) -> Result<Rational> {
    let on_cover = integrate_subtorus(a, &stratum.parametrization)?;
    Ok(on_cover / Rational::from_integer(stratum.multiplicity.into()))
}

/// Integral over the stratum of a form written in its parameter coordinates.
pub fn integrate_parameters(a: &Form, stratum: &Stratum) -> Result<Rational> {
    check_degree(a, stratum.dim())?;
    if a.dim() != stratum.dim() {
        return Err(Error::DimensionMismatch { expected: stratum.dim(), found: a.dim() });
    }
    Ok(a.top_coefficient() / Rational::from_integer(stratum.multiplicity.into()))
}

/// Integral of a top-degree form over `T/G`.
pub fn integrate_orbifold(a: &Form, group: &IsometryGroup) -> Result<Rational> {
    check_degree(a, group.dim())?;
    if a.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(a.top_coefficient() * group.lattice.covolume() / Rational::from_integer(group.order().into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{coord, standard_g2_form};
    use crate::linalg::{int, rat};
    use crate::locus::strata;
    use crate::orbifold::{closure, TorusLattice};
    use crate::preset::{paper_anchors, paper_generators};

    fn setup() -> (IsometryGroup, Vec<Stratum>) {
        let l = TorusLattice::paper();
        let g = closure(&l, &paper_generators(&l), 1000).unwrap();
        let s = strata(&g, &standard_g2_form(), &paper_anchors()).unwrap();
        (g, s)
    }

    #[test]
    fn phi_over_representatives_and_strata() {
        let (_, s) = setup();
        let phi = standard_g2_form();
        assert_eq!(integrate_subtorus(&phi, &s[0].parametrization).unwrap(), int(2));
        assert_eq!(integrate_subtorus(&phi, &s[2].parametrization).unwrap(), int(1));
        assert_eq!(integrate_stratum(&phi, &s[0]).unwrap(), int(1));
        assert_eq!(integrate_stratum(&phi, &s[2]).unwrap(), rat(1, 2));
        let a = Form::basis(7, &[coord::T, coord::X1, coord::X2]);
        assert_eq!(integrate_subtorus(&a, &s[0].parametrization).unwrap(), int(0));
    }

    #[test]
    fn volume_of_the_orbifold() {
        let (g, _) = setup();
        let vol = Form::basis(7, &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(integrate_orbifold(&vol, &g).unwrap(), rat(1, 8));
        assert_eq!(integrate_orbifold(&Form::zero(7), &g).unwrap(), int(0));
    }

    #[test]
    fn degree_is_checked() {
        let (g, s) = setup();
        let dt = Form::dx(7, coord::T);
        assert!(matches!(integrate_stratum(&dt, &s[0]), Err(Error::DegreeMismatch { .. })));
        assert!(matches!(integrate_orbifold(&dt, &g), Err(Error::DegreeMismatch { .. })));
    }
}
