//! The `R/4Z × T^6` example: generators, stratum names, the cobordism
//! between `N3` and `N7`, and the Massey triple.

use crate::linalg::{int, rat, Rational, RationalMatrix};
use crate::locus::StratumAnchor;

pub use crate::orbifold::preset::{f_map, iota1, iota2, kappa, paper_generators};

fn point(entries: [Rational; 7]) -> Vec<Rational> {
    entries.to_vec()
}

fn unit(i: usize) -> Vec<Rational> {
    let mut v = vec![int(0); 7];
    v[i] = int(1);
    v
}

fn combo(terms: &[(usize, i64)]) -> Vec<Rational> {
    let mut v = vec![int(0); 7];
    for &(i, c) in terms {
        v[i] = int(c);
    }
    v
}

fn anchor(name: &str, basepoint: Vec<Rational>, directions: &[Vec<Rational>]) -> StratumAnchor {
    StratumAnchor { name: name.into(), basepoint, directions: RationalMatrix::from_columns(7, directions) }
}

/// One torus from each stratum, in the standard numbering.
pub fn paper_anchors() -> Vec<StratumAnchor> {
    use crate::exterior::coord::*;
    let z = || int(0);
    let h = || rat(1, 2);
    let mut out = vec![
        anchor(
            "N1",
            point([z(), z(), z(), z(), z(), z(), z()]),
            &[combo(&[(X1, 1), (Y1, -1)]), combo(&[(X2, 1), (Y2, -1)]), unit(Y3)],
        ),
        anchor(
            "N2",
            point([z(), z(), z(), z(), z(), rat(3, 4), z()]),
            &[combo(&[(X1, 1), (Y1, 1)]), combo(&[(X2, 1), (Y2, 1)]), unit(Y3)],
        ),
    ];
    let eps = [(0, 0), (0, 1), (1, 0), (1, 1)];
    for (i, &(a, b)) in eps.iter().enumerate() {
        let e = |v: i32| if v == 0 { z() } else { h() };
        out.push(anchor(
            &format!("N{}", i + 3),
            point([h(), z(), e(a), z(), e(b), z(), z()]),
            &[unit(X1), unit(X2), unit(X3)],
        ));
    }
    for (i, &(a, b)) in eps.iter().enumerate() {
        let e = |v: i32| if v == 0 { z() } else { h() };
        out.push(anchor(
            &format!("N{}", i + 7),
            point([h(), e(a), z(), e(b), z(), z(), rat(3, 4)]),
            &[unit(Y1), unit(Y2), unit(X3)],
        ));
    }
    out
}

/// Real forms of the listed invariant classes.
pub mod forms {
    use crate::exterior::{ComplexForm, Form};
    use crate::linalg::int;

    fn dz(k: usize) -> ComplexForm {
        ComplexForm::dz(k)
    }

    fn dzb(k: usize) -> ComplexForm {
        ComplexForm::dzbar(k)
    }

    fn prod(f: &[ComplexForm]) -> ComplexForm {
        ComplexForm::product(f).expect("same ambient")
    }

    fn real(c: ComplexForm) -> Form {
        assert!(c.is_real(), "expected a real form");
        c.re
    }

    /// `dz_{1\bar2} + dz_{\bar1 2}`.
    pub fn h2_generator() -> Form {
        real(prod(&[dz(1), dzb(2)]).add(&prod(&[dzb(1), dz(2)])).unwrap())
    }

    /// `dt ∧ {i dz_{1\bar1}, i dz_{2\bar2}, i dz_{3\bar3}, i(dz_{1\bar2} − dz_{\bar1 2})}`
    /// followed by `dz_{123} + conj` and `dz_{12\bar3} + conj`.
    pub fn h3_listed() -> Vec<Form> {
        let dt = ComplexForm::dt();
        let mut out = Vec::new();
        for k in 1..=3 {
            out.push(real(prod(&[dt.clone(), prod(&[dz(k), dzb(k)]).times_i()])));
        }
        let mixed = prod(&[dz(1), dzb(2)]).sub(&prod(&[dzb(1), dz(2)])).unwrap().times_i();
        out.push(real(prod(&[dt, mixed])));
        let a = prod(&[dz(1), dz(2), dz(3)]);
        out.push(real(a.add(&a.conj()).unwrap()));
        let b = prod(&[dz(1), dz(2), dzb(3)]);
        out.push(real(b.add(&b.conj()).unwrap()));
        out
    }

    /// `i·dt ∧ (dz_{123} − conj)`.
    pub fn beta1() -> Form {
        let a = prod(&[dz(1), dz(2), dz(3)]);
        real(prod(&[ComplexForm::dt(), a.sub(&a.conj()).unwrap().times_i()]))
    }

    /// `i·dt ∧ (dz_{12\bar3} − conj)`.
    pub fn beta2() -> Form {
        let b = prod(&[dz(1), dz(2), dzb(3)]);
        real(prod(&[ComplexForm::dt(), b.sub(&b.conj()).unwrap().times_i()]))
    }

    /// `λ1(dz_{123} + conj) + λ2(dz_{12\bar3} + conj)`.
    pub fn alpha(lambda1: i64, lambda2: i64) -> Form {
        let listed = h3_listed();
        listed[4].scale(&int(lambda1)).add(&listed[5].scale(&int(lambda2))).unwrap()
    }
}

/// The cobordism from `N3` at `t = 1/2` to `N7` at `t = 3/2`, drifting
/// `y3` by `1/4`.
pub fn paper_cobordism() -> crate::massey::CobordismDatum {
    use crate::exterior::coord::*;
    let mut drift_end = vec![int(0); 7];
    drift_end[Y3] = rat(1, 4);
    let mut basepoint = vec![int(0); 7];
    basepoint[T] = rat(1, 2);
    crate::massey::CobordismDatum {
        basepoint,
        directions: RationalMatrix::from_columns(7, &[unit(X1), unit(X2), unit(X3)]),
        t_start: rat(1, 2),
        t_end: rat(3, 2),
        drift_start: vec![int(0); 7],
        drift_end,
    }
}

/// The same cobordism traversed from the `N7` end.
pub fn reversed_paper_cobordism() -> crate::massey::CobordismDatum {
    use crate::exterior::coord::*;
    let c = paper_cobordism();
    let mut basepoint = c.basepoint.clone();
    basepoint[T] = rat(3, 2);
    basepoint[Y3] = rat(1, 4);
    let mut drift_end = vec![int(0); 7];
    drift_end[Y3] = rat(-1, 4);
    crate::massey::CobordismDatum { basepoint, t_start: rat(3, 2), t_end: rat(1, 2), drift_end, ..c }
}

/// A zero-length cobordism with no drift; its Massey value vanishes.
pub fn degenerate_cobordism() -> crate::massey::CobordismDatum {
    let c = paper_cobordism();
    crate::massey::CobordismDatum { t_end: c.t_start.clone(), drift_end: c.drift_start.clone(), ..c }
}

/// `(x1 + x2, x7 + x3, x7 − x3)` as label/coefficient lists.
pub fn paper_triple() -> [Vec<(String, Rational)>; 3] {
    let term = |l: &str, c: i64| (l.to_string(), int(c));
    [
        vec![term("N1", 1), term("N2", 1)],
        vec![term("N7", 1), term("N3", 1)],
        vec![term("N7", 1), term("N3", -1)],
    ]
}
