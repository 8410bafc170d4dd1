use g2kit::linalg::elimination::{integer_determinant, integer_rank};
use g2kit::linalg::{
    determinant, hermite_normal_form, inverse, nullspace, rank, rat, saturate, smith_normal_form, solve, IntegerMatrix,
    Rational, RationalMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn integer_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c)
            .prop_map(move |v| IntegerMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn rational_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec((-5i64..=5, 1i64..=4), r * c)
            .prop_map(move |v| RationalMatrix::from_vec(r, c, v.into_iter().map(|(p, q)| rat(p, q)).collect()))
    })
}

fn is_unimodular(m: &IntegerMatrix) -> bool {
    integer_determinant(m).abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_recomposes(a in integer_matrix(5, 5)) {
        let snf = smith_normal_form(&a);
        prop_assert!(is_unimodular(&snf.u));
        prop_assert!(is_unimodular(&snf.v));
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    prop_assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert_eq!(snf.rank(), integer_rank(&a));
    }

    #[test]
    fn hermite_recomposes_and_is_idempotent(a in integer_matrix(5, 5)) {
        let hnf = hermite_normal_form(&a);
        prop_assert!(is_unimodular(&hnf.u));
        prop_assert_eq!(a.mul(&hnf.u), hnf.h.clone());
        prop_assert_eq!(hnf.rank(), integer_rank(&a));
        let again = hermite_normal_form(&hnf.basis());
        prop_assert_eq!(again.basis(), hnf.basis());
    }

    #[test]
    fn hermite_ignores_unimodular_changes(a in integer_matrix(4, 4), ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..6)) {
        let mut b = a.clone();
        for (i, j, f) in ops {
            let (i, j) = (i % b.cols(), j % b.cols());
            if i != j {
                b.add_col_multiple(i, j, &BigInt::from(f));
            } else {
                b.negate_col(i);
            }
        }
        prop_assert_eq!(hermite_normal_form(&a).basis(), hermite_normal_form(&b).basis());
    }

    #[test]
    fn saturation_is_primitive(a in integer_matrix(5, 3)) {
        let s = saturate(&a);
        prop_assert_eq!(s.cols(), integer_rank(&a));
        prop_assert_eq!(saturate(&s), s.clone());
        let snf = smith_normal_form(&s);
        prop_assert!(snf.diagonal().iter().all(|d| d.is_one()));
        let joint = s.hcat(&a);
        prop_assert_eq!(integer_rank(&joint), s.cols());
    }

    #[test]
    fn solve_is_correct(m in rational_matrix(5, 5), x in prop::collection::vec((-5i64..=5, 1i64..=3), 5)) {
        let x: Vec<Rational> = x.into_iter().take(m.cols()).map(|(p, q)| rat(p, q)).collect();
        let b = m.mul_vec(&x);
        let sol = solve(&m, &b).expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&sol.particular), b);
        prop_assert_eq!(sol.kernel.len(), m.cols() - rank(&m));
        for k in &sol.kernel {
            prop_assert!(m.mul_vec(k).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(nullspace(&m), sol.kernel);
    }

    #[test]
    fn inconsistent_systems_are_rejected(m in rational_matrix(4, 3)) {
        let n = m.rows();
        let extended = m.hcat(&RationalMatrix::zeros(n, 1));
        let mut b = vec![Rational::zero(); n];
        if let Some(y) = nullspace(&m.transpose()).first() {
            // y is orthogonal to the column space and nonzero
            b.clone_from(y);
            prop_assert!(solve(&m, &b).is_none());
        }
        prop_assert!(solve(&extended, &vec![Rational::zero(); n]).is_some());
    }

    #[test]
    fn inverse_and_determinant_agree(m in rational_matrix(4, 4).prop_filter("square", |m| m.is_square())) {
        let det = determinant(&m);
        match inverse(&m) {
            Some(inv) => {
                prop_assert!(!det.is_zero());
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert_eq!(determinant(&inv), det.recip());
            }
            None => prop_assert!(det.is_zero()),
        }
    }
}
