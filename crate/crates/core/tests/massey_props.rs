mod common;

use g2kit::exterior::{standard_g2_form, Form};
use g2kit::integration::integrate_stratum;
use g2kit::linalg::{int, rat, Rational};
use g2kit::locus::AffineSubtorus;
use g2kit::massey::{boundary, intersections, massey_value, CobordismDatum};
use g2kit::preset::{paper_cobordism, reversed_paper_cobordism};
use proptest::prelude::*;

use common::paper;

fn unimodular_change(c: &CobordismDatum, ops: &[(usize, usize, i64)]) -> CobordismDatum {
    let mut d = c.directions.clone();
    let k = d.cols();
    for &(i, j, f) in ops {
        let (i, j) = (i % k, j % k);
        if i == j {
            d.negate_col(i);
        } else {
            d.add_col_multiple(i, j, &int(f));
        }
    }
    CobordismDatum { directions: d, ..c.clone() }
}

fn signs(c: &CobordismDatum) -> Vec<(String, usize, Rational, i32)> {
    let p = paper();
    intersections(c, &p.strata, &p.lattice, &standard_g2_form())
        .unwrap()
        .into_iter()
        .map(|x| (x.stratum, x.member, x.s, x.sign))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn signs_ignore_the_base_frame(ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..5)) {
        let original = paper_cobordism();
        let changed = unimodular_change(&original, &ops);
        prop_assert_eq!(signs(&changed), signs(&original));
        let p = paper();
        let phi = standard_g2_form();
        let a = massey_value(&original, &p.model, &p.lattice, &phi).unwrap().0;
        let b = massey_value(&changed, &p.model, &p.lattice, &phi).unwrap().0;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn signs_ignore_lattice_translations(shift in prop::collection::vec(-2i64..=2, 6)) {
        let original = paper_cobordism();
        let mut moved = original.clone();
        for (i, s) in shift.iter().enumerate() {
            moved.basepoint[i + 1] += int(*s);
        }
        let p = paper();
        let phi = standard_g2_form();
        let a: Vec<_> = signs(&original).into_iter().map(|(s, _, l, g)| (s, l, g)).collect();
        let b: Vec<_> = signs(&moved).into_iter().map(|(s, _, l, g)| (s, l, g)).collect();
        prop_assert_eq!(a, b);
        prop_assert_eq!(
            boundary(&original, &p.strata, &p.lattice, &phi).unwrap(),
            boundary(&moved, &p.strata, &p.lattice, &phi).unwrap()
        );
    }
}

#[test]
fn reversal_negates_every_count() {
    let p = paper();
    let phi = standard_g2_form();
    let (forward, fc) = massey_value(&paper_cobordism(), &p.model, &p.lattice, &phi).unwrap();
    let (backward, bc) = massey_value(&reversed_paper_cobordism(), &p.model, &p.lattice, &phi).unwrap();
    assert_eq!(backward, forward.scale(&int(-1)));
    assert_eq!(fc.len(), bc.len());
    for (f, b) in fc.iter().zip(&bc) {
        assert_eq!(f.stratum, b.stratum);
        assert_eq!(f.sigma, -b.sigma.clone());
    }
}

fn slice_point(c: &CobordismDatum, s: &Rational) -> Vec<Rational> {
    c.start().iter().zip(c.displacement()).map(|(q, d)| q + d * s).collect()
}

/// Whether the slice at `s` meets `member`, decided by whether the difference
/// of basepoints lies in the sum of both direction lattices.
fn meets(c: &CobordismDatum, s: &Rational, member: &AffineSubtorus) -> bool {
    let l = &paper().lattice;
    let diff: Vec<Rational> = slice_point(c, s).iter().zip(member.real_basepoint(l)).map(|(a, b)| a - b).collect();
    let dirs = c.directions.hcat(&member.real_directions(l));
    let sum = AffineSubtorus::from_real(&diff, &dirs, l).expect("lattice directions");
    sum.contains(&vec![Rational::from_integer(0.into()); l.dim()])
}

#[test]
fn intersections_match_a_level_scan() {
    let p = paper();
    let c = paper_cobordism();
    let found = intersections(&c, &p.strata, &p.lattice, &standard_g2_form()).unwrap();
    for (si, stratum) in p.strata.iter().enumerate() {
        for (mi, member) in stratum.orbit.iter().enumerate() {
            for j in 1..64 {
                let s = rat(j, 64);
                let reported = found.iter().any(|x| x.stratum == stratum.label && x.member == mi && x.s == s);
                assert_eq!(meets(&c, &s, member), reported, "{} member {mi} at s = {s}", p.strata[si].label);
            }
        }
    }
    for x in &found {
        let member = &p.strata.iter().find(|s| s.label == x.stratum).unwrap().orbit[x.member];
        assert!(member.contains(&p.lattice.to_lattice(&x.point)));
        let slice = AffineSubtorus::from_real(&slice_point(&c, &x.s), &c.directions, &p.lattice).unwrap();
        assert!(slice.contains(&p.lattice.to_lattice(&x.point)));
    }
}

#[test]
fn cobordant_strata_have_equal_duals_and_integrals() {
    let p = paper();
    let phi = standard_g2_form();
    let h = p.model.cohomology();
    let ends = boundary(&paper_cobordism(), &p.strata, &p.lattice, &phi).unwrap();
    let stratum = |l: &str| p.strata.iter().find(|s| s.label == l).unwrap();
    let one = Form::one(3);
    let pd = |l: &str| h.poincare_dual(stratum(l), &one).unwrap();
    assert_eq!(pd(&ends[0].stratum), pd(&ends[1].stratum));
    for xi in &h.space(3).basis {
        for (a, b) in [("N1", "N2"), ("N3", "N7")] {
            assert_eq!(integrate_stratum(xi, stratum(a)).unwrap(), integrate_stratum(xi, stratum(b)).unwrap());
        }
    }
}
