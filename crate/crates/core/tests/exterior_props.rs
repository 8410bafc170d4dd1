use g2kit::exterior::{basis_masks, standard_g2_form, Form};
use g2kit::linalg::{determinant, rat, RationalMatrix};
use proptest::prelude::*;

const DIM: usize = 7;

fn form(k: usize) -> impl Strategy<Value = Form> {
    let masks = basis_masks(DIM, k);
    prop::collection::vec(-3i64..=3, masks.len())
        .prop_map(move |c| Form::from_terms(DIM, masks.iter().zip(c).map(|(&m, c)| (m, rat(c, 1)))))
}

fn graded() -> impl Strategy<Value = (usize, Form)> {
    (0usize..=DIM).prop_flat_map(|k| form(k).prop_map(move |f| (k, f)))
}

fn square(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec((-3i64..=3, 1i64..=2), n * n)
        .prop_map(move |v| RationalMatrix::from_vec(n, n, v.into_iter().map(|(p, q)| rat(p, q)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_associative((_, a) in graded(), (_, b) in graded(), (_, c) in graded()) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_is_graded_commutative((p, a) in graded(), (q, b) in graded()) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let expected = if p * q % 2 == 0 { ba } else { ba.neg() };
        prop_assert_eq!(ab, expected);
    }

    #[test]
    fn odd_forms_square_to_zero(a in form(3)) {
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn wedge_distributes((_, a) in graded(), (_, b) in graded(), (_, c) in graded()) {
        let lhs = a.wedge(&b.add(&c).unwrap()).unwrap();
        let rhs = a.wedge(&b).unwrap().add(&a.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_is_multiplicative(m in square(DIM), (_, a) in graded(), (_, b) in graded()) {
        let lhs = a.wedge(&b).unwrap().pullback(&m).unwrap();
        let rhs = a.pullback(&m).unwrap().wedge(&b.pullback(&m).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_scales_volume_by_determinant(m in square(DIM)) {
        let vol = Form::basis(DIM, &(0..DIM).collect::<Vec<_>>());
        prop_assert_eq!(vol.pullback(&m).unwrap(), vol.scale(&determinant(&m)));
    }

    #[test]
    fn pullback_is_functorial(m in square(DIM), n in square(DIM), a in form(3)) {
        let lhs = a.pullback(&m.mul(&n)).unwrap();
        let rhs = a.pullback(&m).unwrap().pullback(&n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn g2_form_is_a_seven_term_three_form() {
    let phi = standard_g2_form();
    assert_eq!(phi.terms().count(), 7);
    assert!(phi.wedge(&phi).unwrap().is_zero());
    assert!(phi.is_homogeneous_of(3));
}
