//! Cobordisms between strata, their signed intersections with other strata,
//! and the triple Massey product built from them.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::linalg::rational::{serde_rational, serde_rational_vec};
use crate::linalg::{
    determinant, echelon_basis, format_rational, int, nullspace, rank, saturate, smith_normal_form, IntegerMatrix,
    Rational, RationalMatrix,
};
use crate::locus::{locate, oriented_parametrization, AffineSubtorus, Stratum};
use crate::orbifold::TorusLattice;
use crate::resolution::{ModelClass, ResolutionModel};

/// Numerator of the Massey value; packages the Thom normalization of the
/// exceptional divisors together with the averaging over the group.
pub const MASSEY_FACTOR: i64 = 4;

/// The affine family `s ↦ q0 + s·Δq + span(directions)`, `s ∈ [0, 1]`, with
/// `q0 = basepoint + drift_start` and
/// `q1 = basepoint + (t_end − t_start)·e_t + drift_end`. Real coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismDatum {
    #[serde(with = "serde_rational_vec")]
    pub basepoint: Vec<Rational>,
    pub directions: RationalMatrix,
    #[serde(with = "serde_rational")]
    pub t_start: Rational,
    #[serde(with = "serde_rational")]
    pub t_end: Rational,
    #[serde(with = "serde_rational_vec")]
    pub drift_start: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub drift_end: Vec<Rational>,
}

/// A boundary component of a cobordism, matched to a stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundarySlice {
    pub sign: i32,
    pub stratum: String,
    pub member: usize,
    pub subtorus: AffineSubtorus,
}

/// A transverse intersection point of a cobordism with a stratum torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Intersection {
    pub stratum: String,
    pub member: usize,
    #[serde(with = "serde_rational_vec")]
    pub point: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    pub sign: i32,
}

fn vsub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl CobordismDatum {
    pub fn start(&self) -> Vec<Rational> {
        vadd(&self.basepoint, &self.drift_start)
    }

    pub fn end(&self) -> Vec<Rational> {
        let mut q1 = vadd(&self.basepoint, &self.drift_end);
        q1[0] += &self.t_end - &self.t_start;
        q1
    }

    /// `q1 − q0`.
    pub fn displacement(&self) -> Vec<Rational> {
        vsub(&self.end(), &self.start())
    }

    pub fn is_degenerate(&self) -> bool {
        self.displacement().iter().all(Zero::is_zero)
    }

    pub fn validate(&self, lattice: &TorusLattice) -> Result<()> {
        let n = lattice.dim();
        let bad = |why: &str| Err(Error::InvalidCobordism(why.to_string()));
        if self.basepoint.len() != n || self.drift_start.len() != n || self.drift_end.len() != n {
            return bad("vector length differs from the torus dimension");
        }
        if self.directions.rows() != n {
            return bad("direction columns have the wrong length");
        }
        if self.basepoint[0] != self.t_start {
            return bad("base does not sit at t_start");
        }
        let drift = vsub(&self.drift_end, &self.drift_start);
        if !drift[0].is_zero() {
            return bad("drift moves the t coordinate");
        }
        for d in self.directions.columns() {
            if !d[0].is_zero() {
                return bad("base directions have a t component");
            }
            if !dot(&d, &drift).is_zero() {
                return bad("drift is not normal to the base");
            }
        }
        if rank(&self.directions) != self.directions.cols() {
            return bad("base directions are dependent");
        }
        if !self.is_degenerate() {
            let with = self.directions.hcat(&RationalMatrix::from_columns(n, &[self.displacement()]));
            if rank(&with) == self.directions.cols() {
                return bad("displacement is tangent to the base");
            }
        }
        if AffineSubtorus::from_real(&self.basepoint, &self.directions, lattice).is_none() {
            return bad("base directions are not lattice vectors");
        }
        Ok(())
    }

    fn slice(&self, q: &[Rational], lattice: &TorusLattice) -> AffineSubtorus {
        AffineSubtorus::from_real(q, &self.directions, lattice).expect("validated")
    }

    /// Calibrated base parametrization (real).
    fn base_frame(&self, lattice: &TorusLattice, phi: &Form) -> Result<RationalMatrix> {
        let t = self.slice(&self.start(), lattice);
        let cols: Vec<Vec<Rational>> = self.directions.columns().iter().map(|c| lattice.to_lattice(c)).collect();
        let d = RationalMatrix::from_columns(lattice.dim(), &cols).to_integer().expect("validated");
        Ok(oriented_parametrization(&t, &d, lattice, phi)?.0)
    }
}

/// Signed boundary: the start slice with `+` and the end slice with `−`
/// under the orientation `(−Δq, P)` and outward normal first.
pub fn boundary(
    c: &CobordismDatum,
    strata: &[Stratum],
    lattice: &TorusLattice,
    phi: &Form,
) -> Result<Vec<BoundarySlice>> {
    c.validate(lattice)?;
    if c.is_degenerate() {
        return Ok(Vec::new());
    }
    let frame = c.base_frame(lattice, phi)?;
    let mut out = Vec::with_capacity(2);
    for (q, outward_sign) in [(c.start(), 1), (c.end(), -1)] {
        let t = c.slice(&q, lattice);
        let (si, mi) = locate(strata, &t).ok_or_else(|| {
            Error::UnmatchedBoundary(q.iter().map(format_rational).collect::<Vec<_>>().join(", "))
        })?;
        // the boundary frame is ±frame; compare with the member's calibration
        let member_sign = phi.restrict(&frame)?.top_coefficient().signum().to_i32().unwrap_or(0);
        out.push(BoundarySlice {
            sign: outward_sign * member_sign,
            stratum: strata[si].label.clone(),
            member: mi,
            subtorus: t,
        });
    }
    Ok(out)
}

/// Rows span the integer annihilator of the columns of `w`.
fn quotient_map(w: &IntegerMatrix) -> RationalMatrix {
    let n = w.rows();
    let kernel = nullspace(&w.transpose().to_rational());
    let cols: Vec<Vec<_>> = kernel
        .iter()
        .map(|v| {
            let l = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    saturate(&IntegerMatrix::from_columns(n, &cols)).transpose().to_rational()
}

/// Values `s` with `s·w ≡ c (mod Z^d)`, listed in `[0, 1]`. `None` when every
/// `s` works.
fn levels(w: &[Rational], c: &[Rational]) -> Option<Vec<Rational>> {
    let Some(i0) = w.iter().position(|x| !x.is_zero()) else {
        return if c.iter().all(|x| x.is_integer()) { None } else { Some(Vec::new()) };
    };
    // s = (c_i0 + m) / w_i0 for integer m, within [0, 1]
    let (lo, hi) = {
        let a = -&c[i0];
        let b = &w[i0] - &c[i0];
        if a <= b { (a, b) } else { (b, a) }
    };
    let mut out = Vec::new();
    let mut m = lo.ceil();
    while m <= hi {
        let s = (&c[i0] + &m) / &w[i0];
        if w.iter().zip(c).all(|(wi, ci)| (&s * wi - ci).is_integer()) {
            out.push(s);
        }
        m += int(1);
    }
    out.sort();
    Some(out)
}

/// Transverse intersections of the interior of the cobordism with every
/// stratum torus, found exactly on the covering torus.
///
/// A point of the cobordism `q0 + s·Δq + D·a` lies on `p' + D'·b` iff
/// `s·Δq − r ∈ span(D, D') + Λ` with `r = p' − q0`. Projecting along the
/// span leaves congruences in `s` alone; each admissible `s` then contributes
/// one point per element of the finite group `(span ∩ Λ)/⟨D, D'⟩`.
pub fn intersections(
    c: &CobordismDatum,
    strata: &[Stratum],
    lattice: &TorusLattice,
    phi: &Form,
) -> Result<Vec<Intersection>> {
    c.validate(lattice)?;
    if c.is_degenerate() {
        return Ok(Vec::new());
    }
    let n = lattice.dim();
    let frame = c.base_frame(lattice, phi)?;
    let dq = c.displacement();
    let minus_dq: Vec<Rational> = dq.iter().map(|x| -x).collect();
    let dq_l = lattice.to_lattice(&dq);
    let q0_l = lattice.to_lattice(&c.start());
    let db_l = lattice.to_lattice_matrix(&c.directions).to_integer().expect("validated");
    let k = db_l.cols();

    let mut out = Vec::new();
    for s in strata {
        for (mi, member) in s.orbit.iter().enumerate() {
            let w = db_l.hcat(member.directions());
            let full = RationalMatrix::from_columns(n, std::slice::from_ref(&dq_l)).hcat(&w.to_rational());
            let transverse = full.is_square() && !determinant(&full).is_zero();
            let r = vsub(member.basepoint(), &q0_l);
            let q = quotient_map(&w);
            let Some(found) = levels(&q.mul_vec(&dq_l), &q.mul_vec(&r)) else {
                return Err(Error::NonTransverse(format!("cobordism lies along {}", s.label)));
            };
            let interior: Vec<&Rational> = found.iter().filter(|x| x.is_positive() && **x < int(1)).collect();
            if interior.is_empty() {
                continue;
            }
            let endpoint = found.len() != interior.len();
            if !transverse || endpoint {
                return Err(Error::NonTransverse(format!("cobordism meets {} non-transversally", s.label)));
            }
            let (p_member, _) = oriented_parametrization(member, member.directions(), lattice, phi)?;
            let sign_matrix = RationalMatrix::from_columns(n, std::slice::from_ref(&minus_dq)).hcat(&frame).hcat(&p_member);
            let sign = determinant(&sign_matrix).signum().to_i32().unwrap_or(0);
            for level in interior {
                for a in solve_slices(&w, &vsub(&r, &dq_l.iter().map(|x| x * level).collect::<Vec<_>>()), k) {
                    let mut p_l = q0_l.clone();
                    for i in 0..n {
                        p_l[i] += &dq_l[i] * level;
                        for (j, aj) in a.iter().enumerate() {
                            p_l[i] += Rational::from_integer(db_l.get(i, j).clone()) * aj;
                        }
                    }
                    let point = lattice.reduce(&lattice.to_real(&p_l));
                    out.push(Intersection {
                        stratum: s.label.clone(),
                        member: mi,
                        point,
                        s: level.clone(),
                        sign,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| (&a.stratum, a.member, &a.s, &a.point).cmp(&(&b.stratum, b.member, &b.s, &b.point)));
    Ok(out)
}

/// All `a ∈ [0,1)^k` (first `k` unknowns) of `W·y ≡ rhs (mod Z^n)`, `W` of
/// full column rank.
fn solve_slices(w: &IntegerMatrix, rhs: &[Rational], k: usize) -> Vec<Vec<Rational>> {
    let snf = smith_normal_form(w);
    let diag = snf.diagonal();
    let c = snf.u.to_rational().mul_vec(rhs);
    let r = snf.rank();
    let moduli: Vec<u64> = diag[..r].iter().map(|d| d.to_u64().expect("small elementary divisor")).collect();
    let v = snf.v.to_rational();
    let mut out = Vec::new();
    let mut digits = vec![0u64; r];
    loop {
        let z: Vec<Rational> = (0..w.cols())
            .map(|i| {
                if i < r {
                    (&c[i] + Rational::from_integer(digits[i].into())) / Rational::from_integer(diag[i].clone())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let y = v.mul_vec(&z);
        out.push(y[..k].iter().map(crate::linalg::rational::frac).collect::<Vec<_>>());
        let mut i = 0;
        while i < r {
            digits[i] += 1;
            if digits[i] < moduli[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Per-stratum data entering the Massey value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumCount {
    pub stratum: String,
    /// Sum of signs over every torus of the stratum.
    pub total: i64,
    /// `(o_A / o_S) · total / c_S`, the signed count per unit calibration.
    #[serde(with = "serde_rational")]
    pub sigma: Rational,
}

/// `Σ_S 4·σ_S·[φ|_S] ⊗ x_S`, together with the counts.
pub fn massey_value(
    c: &CobordismDatum,
    model: &ResolutionModel,
    lattice: &TorusLattice,
    phi: &Form,
) -> Result<(ModelClass, Vec<StratumCount>)> {
    let strata = model.strata();
    let ends = boundary(c, strata, lattice, phi)?;
    if ends.is_empty() {
        return Ok((ModelClass::zero(), Vec::new()));
    }
    let orbit_of = |label: &str| strata.iter().find(|s| s.label == label).map(Stratum::orbit_size).unwrap_or(0);
    let o_a = orbit_of(&ends[0].stratum);
    if ends.iter().any(|e| orbit_of(&e.stratum) != o_a) {
        return Err(Error::InvalidCobordism("boundary strata have different orbit sizes".into()));
    }
    let points = intersections(c, strata, lattice, phi)?;
    let mut value = ModelClass::zero();
    let mut counts = Vec::new();
    for s in strata {
        let total: i64 = points.iter().filter(|p| p.stratum == s.label).map(|p| i64::from(p.sign)).sum();
        if total == 0 {
            continue;
        }
        let sigma = Rational::from_integer(o_a.into()) * int(total)
            / Rational::from_integer(s.orbit_size().into())
            / &s.calibration;
        let phi_s = phi.restrict(&s.parametrization)?;
        let class = model
            .fibered_class(&s.label, &phi_s)?
            .ok_or_else(|| Error::NonCalibratedStratum(format!("{}: [φ|] is not a class", s.label)))?;
        value = value.add_scaled(&class, &(int(MASSEY_FACTOR) * &sigma));
        counts.push(StratumCount { stratum: s.label.clone(), total, sigma });
    }
    Ok((value, counts))
}

/// Outcome of the triple Massey product test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasseyVerdict {
    pub well_defined: bool,
    pub ab: ModelClass,
    pub bc: ModelClass,
    pub degree: usize,
    pub value: ModelClass,
    pub ideal_basis: Vec<ModelClass>,
    pub ideal_rank: usize,
    pub augmented_rank: usize,
    pub member: bool,
}

impl MasseyVerdict {
    /// True when the value certifies non-formality.
    pub fn certifies_non_formality(&self) -> bool {
        self.well_defined && !self.member
    }
}

/// Checks `ab = bc = 0` and decides whether `value` lies in the degree
/// `|a|+|b|+|c|−1` part of the ideal `a·H + H·c`.
pub fn triple_massey(
    model: &ResolutionModel,
    a: &ModelClass,
    b: &ModelClass,
    c: &ModelClass,
    value: &ModelClass,
) -> Result<MasseyVerdict> {
    let deg = |x: &ModelClass, name: &str| {
        x.degree().ok_or_else(|| Error::NotWellDefined(format!("{name} is zero or not homogeneous")))
    };
    let (da, db, dc) = (deg(a, "a")?, deg(b, "b")?, deg(c, "c")?);
    let ab = model.product(a, b)?;
    let bc = model.product(b, c)?;
    if !ab.is_zero() || !bc.is_zero() {
        return Err(Error::NotWellDefined(
            if ab.is_zero() { "b·c is not zero" } else { "a·b is not zero" }.to_string(),
        ));
    }
    let degree = da + db + dc - 1;
    if let Some(dv) = value.degree() {
        if dv != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: dv });
        }
    }
    let mut generators = Vec::new();
    if degree >= da {
        for e in model.basis(degree - da) {
            generators.push(model.flatten(&model.product(a, &e)?, degree));
        }
    }
    if degree >= dc {
        for e in model.basis(degree - dc) {
            generators.push(model.flatten(&model.product(&e, c)?, degree));
        }
    }
    let width = model.dimension(degree);
    let echelon = echelon_basis(&generators, width);
    let ideal_rank = echelon.len();
    let mut augmented = echelon.clone();
    augmented.push(model.flatten(value, degree));
    let augmented_rank = if width == 0 { 0 } else { rank(&RationalMatrix::from_rows(augmented)) };
    let basis = model.basis(degree);
    let ideal_basis = echelon
        .iter()
        .map(|v| v.iter().zip(&basis).fold(ModelClass::zero(), |acc, (x, e)| acc.add_scaled(e, x)))
        .collect();
    Ok(MasseyVerdict {
        well_defined: true,
        ab,
        bc,
        degree,
        value: value.clone(),
        ideal_basis,
        ideal_rank,
        augmented_rank,
        member: ideal_rank == augmented_rank,
    })
}
