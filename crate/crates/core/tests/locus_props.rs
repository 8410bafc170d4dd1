mod common;

use g2kit::linalg::{rat, Rational};
use g2kit::locus::{act_on_point, act_on_subtorus, fixed_set, locate};
use num_traits::Zero;
use proptest::prelude::*;

use common::paper;

fn fixed_by_oracle(g: usize, p: &[Rational]) -> bool {
    let paper = paper();
    act_on_point(&paper.group.elements[g], p, &paper.lattice) == p
}

fn on_fixed_set(g: usize, p: &[Rational]) -> bool {
    let paper = paper();
    fixed_set(&paper.group.elements[g], &paper.lattice).iter().any(|c| c.contains(p))
}

/// Lattice-coordinate grid: eighths in t, halves elsewhere.
fn grid() -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for code in 0..8 * 64 {
        let mut p = vec![rat((code % 8) as i64, 8)];
        for i in 0..6 {
            p.push(rat(((code / 8) >> i & 1) as i64, 2));
        }
        out.push(p);
    }
    out
}

#[test]
fn fixed_sets_match_the_grid_oracle() {
    let paper = paper();
    let points = grid();
    for (i, g) in paper.group.elements.iter().enumerate() {
        let comps = fixed_set(g, &paper.lattice);
        for p in &points {
            let listed = comps.iter().any(|c| c.contains(p));
            assert_eq!(fixed_by_oracle(i, p), listed, "{} at {:?}", g.word, p);
        }
    }
}

#[test]
fn identity_fixes_everything_and_free_elements_fix_nothing() {
    let paper = paper();
    for g in &paper.group.elements {
        let comps = fixed_set(g, &paper.lattice);
        if g.is_identity() {
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].dim(), 7);
        }
        for c in &comps {
            assert_eq!(act_on_subtorus(g, c, &paper.lattice), *c);
        }
    }
}

fn point(max_denominator: i64) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((1i64..=max_denominator).prop_flat_map(|q| (0..q).prop_map(move |p| rat(p, q))), 7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn random_points_agree_with_the_oracle(g in 0usize..32, p in point(8)) {
        prop_assert_eq!(fixed_by_oracle(g, &p), on_fixed_set(g, &p));
    }

    #[test]
    fn component_points_are_fixed(g in 0usize..32, pick in any::<prop::sample::Index>(), dens in prop::collection::vec(1u64..=8, 7)) {
        let paper = paper();
        let comps = fixed_set(&paper.group.elements[g], &paper.lattice);
        prop_assume!(!comps.is_empty());
        let c = &comps[pick.index(comps.len())];
        let p: Vec<Rational> = c.sample_point(&dens).iter().map(|x| x - x.floor()).collect();
        prop_assert!(c.contains(&p));
        prop_assert!(fixed_by_oracle(g, &p));
    }

    #[test]
    fn orbits_are_closed_under_the_group(g in 0usize..32, s in 0usize..10, m in 0usize..8) {
        let paper = paper();
        let stratum = &paper.strata[s];
        let member = &stratum.orbit[m % stratum.orbit_size()];
        let image = act_on_subtorus(&paper.group.elements[g], member, &paper.lattice);
        let (si, _) = locate(&paper.strata, &image).expect("image is a stratum torus");
        prop_assert_eq!(si, s);
    }

    #[test]
    fn generic_stabilizer_is_the_stratum_involution(s in 0usize..10, dens in prop::collection::vec(200u64..400, 3)) {
        let paper = paper();
        let stratum = &paper.strata[s];
        let p = stratum.representative.sample_point(&dens);
        let fixing: Vec<_> = (0..32).filter(|&g| fixed_by_oracle(g, &p.iter().map(|x| x - x.floor()).collect::<Vec<_>>())).collect();
        prop_assert_eq!(fixing.len(), 2);
        prop_assert!(fixing.iter().any(|&g| paper.group.elements[g] == stratum.stabilizer));
    }
}

#[test]
fn strata_are_pairwise_disjoint_as_sets_of_tori() {
    let paper = paper();
    let mut all: Vec<_> = paper.strata.iter().flat_map(|s| s.orbit.iter()).collect();
    let n = all.len();
    all.sort();
    all.dedup();
    assert_eq!(all.len(), n);
    assert_eq!(n, 80);
    assert!(paper.strata.iter().all(|s| !s.calibration.is_zero()));
}
