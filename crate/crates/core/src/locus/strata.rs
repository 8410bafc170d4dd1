use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology::invariant_forms;
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::linalg::rational::{frac, serde_rational, serde_rational_vec};
use crate::linalg::{hermite_normal_form, inverse, rank, IntegerMatrix, Rational, RationalMatrix};
use crate::orbifold::{AffineIsometry, IsometryGroup, TorusLattice};

use super::{act_on_point, fixed_set, AffineSubtorus};

/// Denominators of the generic point on a stratum.
pub const GENERIC_PRIMES: [u64; 7] = [101, 103, 107, 109, 113, 127, 131];
/// A second choice, used to confirm the first is generic.
pub const CHECK_PRIMES: [u64; 7] = [137, 139, 149, 151, 157, 163, 167];

/// Names a stratum and fixes its representative and parametrization.
/// Coordinates are real.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumAnchor {
    pub name: String,
    #[serde(with = "serde_rational_vec")]
    pub basepoint: Vec<Rational>,
    pub directions: RationalMatrix,
}

/// A `G`-orbit of fixed subtori with `Z2` stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub label: String,
    pub representative: AffineSubtorus,
    /// Every member of the orbit, sorted; includes the representative.
    pub orbit: Vec<AffineSubtorus>,
    /// The involution fixing the representative pointwise.
    pub stabilizer: AffineIsometry,
    /// Words of the elements mapping the representative to itself.
    pub setwise_stabilizer: Vec<String>,
    pub multiplicity: usize,
    /// Real `n × k` parametrization of the representative, oriented so that
    /// `φ` restricts to `calibration · du_1 ∧ ... ∧ du_k`.
    pub parametrization: RationalMatrix,
    #[serde(with = "serde_rational")]
    pub calibration: Rational,
    /// Action of the setwise stabilizer on parameters, `A·P = P·M`.
    pub deck: Vec<RationalMatrix>,
}

impl Stratum {
    pub fn dim(&self) -> usize {
        self.representative.dim()
    }

    pub fn orbit_size(&self) -> usize {
        self.orbit.len()
    }
}

/// Calibrated real parametrization of `t` and its calibration constant.
/// When `φ` restricts with a negative sign the last column is negated.
pub fn oriented_parametrization(
    t: &AffineSubtorus,
    lattice_directions: &IntegerMatrix,
    lattice: &TorusLattice,
    phi: &Form,
) -> Result<(RationalMatrix, Rational)> {
    let mut p = lattice.directions_to_real(lattice_directions);
    let k = p.cols();
    let describe = || format!("subtorus through {:?}", t.real_basepoint(lattice).iter().map(crate::linalg::format_rational).collect::<Vec<_>>());
    if phi.degree() != Some(k) {
        return Err(Error::NonCalibratedStratum(describe()));
    }
    let c = phi.restrict(&p)?.top_coefficient();
    if c.is_zero() {
        return Err(Error::NonCalibratedStratum(describe()));
    }
    if c.is_negative() {
        p.negate_col(k - 1);
    }
    Ok((p, c.abs()))
}

/// Index of the stratum and orbit member equal to `t`.
pub fn locate(strata: &[Stratum], t: &AffineSubtorus) -> Option<(usize, usize)> {
    strata
        .iter()
        .enumerate()
        .find_map(|(i, s)| s.orbit.binary_search(t).ok().map(|j| (i, j)))
}

fn stabilizer_of<'a>(group: &'a IsometryGroup, point: &[Rational]) -> Vec<&'a AffineIsometry> {
    let p: Vec<Rational> = point.iter().map(frac).collect();
    group.elements.iter().filter(|g| act_on_point(g, point, &group.lattice) == p).collect()
}

/// Integer change of basis `M` with `A·D = D·M`, when it exists.
fn parameter_action(a: &RationalMatrix, d: &RationalMatrix) -> Option<RationalMatrix> {
    let dt = d.transpose();
    let gram_inv = inverse(&dt.mul(d))?;
    let ad = a.mul(d);
    let m = gram_inv.mul(&dt).mul(&ad);
    (d.mul(&m) == ad).then_some(m)
}

struct Orbit {
    members: Vec<AffineSubtorus>,
    anchor: Option<usize>,
}

/// Enumerates the singular strata of `T/G`.
///
/// Anchored strata come first, in anchor order, with the anchor as
/// representative. The rest are named `N{i}` by position and ordered by the
/// real basepoint of their smallest member.
pub fn strata(group: &IsometryGroup, phi: &Form, anchors: &[StratumAnchor]) -> Result<Vec<Stratum>> {
    let lattice = &group.lattice;
    let mut components = BTreeSet::new();
    for g in group.elements.iter().filter(|g| !g.is_identity()) {
        components.extend(fixed_set(g, lattice));
    }

    let mut orbits: Vec<Orbit> = Vec::new();
    let mut assigned = BTreeSet::new();
    for c in &components {
        if assigned.contains(c) {
            continue;
        }
        let members: BTreeSet<AffineSubtorus> = group.elements.iter().map(|g| c.image(g, lattice)).collect();
        assigned.extend(members.iter().cloned());
        orbits.push(Orbit { members: members.into_iter().collect(), anchor: None });
    }

    let mut anchored = Vec::with_capacity(anchors.len());
    for (i, anchor) in anchors.iter().enumerate() {
        let t = AffineSubtorus::from_real(&anchor.basepoint, &anchor.directions, lattice)
            .ok_or_else(|| Error::InvalidAnchor(format!("{}: directions are not lattice vectors", anchor.name)))?;
        let o = orbits
            .iter()
            .position(|o| o.members.binary_search(&t).is_ok())
            .ok_or_else(|| Error::InvalidAnchor(format!("{} is not a fixed component", anchor.name)))?;
        if orbits[o].anchor.is_some() {
            return Err(Error::InvalidAnchor(format!("{} lies in an already anchored stratum", anchor.name)));
        }
        orbits[o].anchor = Some(i);
        anchored.push((o, t));
    }

    let mut free: Vec<(Vec<Rational>, usize)> = orbits
        .iter()
        .enumerate()
        .filter(|(_, o)| o.anchor.is_none())
        .map(|(i, o)| (o.members[0].real_basepoint(lattice), i))
        .collect();
    free.sort();

    let mut out = Vec::with_capacity(orbits.len());
    for (i, (o, rep)) in anchored.into_iter().enumerate() {
        let anchor = &anchors[i];
        let lattice_dirs: Vec<Vec<Rational>> =
            anchor.directions.columns().iter().map(|c| lattice.to_lattice(c)).collect();
        let d = RationalMatrix::from_columns(lattice.dim(), &lattice_dirs).to_integer().expect("checked above");
        let same_lattice = d.cols() == rep.dim() && hermite_normal_form(&d).basis() == *rep.directions();
        let d = if same_lattice { d } else { rep.directions().clone() };
        out.push(analyse(group, phi, anchor.name.clone(), rep, &d, orbits[o].members.clone())?);
    }
    for (_, o) in free {
        let label = format!("N{}", out.len() + 1);
        if anchors.iter().any(|a| a.name == label) {
            return Err(Error::InvalidAnchor(format!("{label} clashes with a generated label")));
        }
        let rep = orbits[o].members[0].clone();
        let d = rep.directions().clone();
        out.push(analyse(group, phi, label, rep, &d, orbits[o].members.clone())?);
    }
    Ok(out)
}

fn analyse(
    group: &IsometryGroup,
    phi: &Form,
    label: String,
    rep: AffineSubtorus,
    directions: &IntegerMatrix,
    orbit: Vec<AffineSubtorus>,
) -> Result<Stratum> {
    let lattice = &group.lattice;
    let n = lattice.dim();
    let k = rep.dim();
    let unsupported = |why: &str| Error::UnsupportedSingularity(format!("{label}: {why}"));

    let generic = rep.sample_point(&GENERIC_PRIMES);
    let check = rep.sample_point(&CHECK_PRIMES);
    let stab = stabilizer_of(group, &generic);
    if stab != stabilizer_of(group, &check) {
        return Err(unsupported("stabilizer depends on the sample point"));
    }
    if stab.len() != 2 {
        return Err(unsupported(&format!("generic stabilizer has order {}", stab.len())));
    }
    let sigma = stab.into_iter().find(|g| !g.is_identity()).expect("non-trivial element").clone();
    let a = &sigma.linear;
    let real_dirs = lattice.directions_to_real(directions);
    let fixes_tangent = a.mul(&real_dirs) == real_dirs;
    let involution = a.mul(a).is_identity();
    let plus_one = rank(&a.add(&RationalMatrix::identity(n)));
    if !involution || !fixes_tangent || plus_one != k || n - k != 4 {
        return Err(unsupported("normal action is not -1 on a 4-dimensional normal space"));
    }

    let setwise: Vec<&AffineIsometry> = group.elements.iter().filter(|g| rep.image(g, lattice) == rep).collect();
    let images: BTreeSet<Vec<Rational>> = setwise.iter().map(|g| act_on_point(g, &generic, lattice)).collect();

    let (parametrization, calibration) = oriented_parametrization(&rep, directions, lattice, phi)?;
    let oriented_lattice = lattice.to_lattice_matrix(&parametrization);
    let mut deck: Vec<RationalMatrix> = Vec::new();
    for g in &setwise {
        let m = parameter_action(&lattice.linear_in_lattice(&g.linear), &oriented_lattice)
            .ok_or_else(|| unsupported("setwise stabilizer does not preserve the tangent space"))?;
        if !deck.contains(&m) {
            deck.push(m);
        }
    }
    if invariant_forms(k, &deck, 1).is_empty() {
        return Err(Error::MissingOneForm(label));
    }

    Ok(Stratum {
        label,
        representative: rep,
        orbit,
        stabilizer: sigma,
        setwise_stabilizer: setwise.iter().map(|g| g.word.clone()).collect(),
        multiplicity: images.len(),
        parametrization,
        calibration,
        deck,
    })
}
