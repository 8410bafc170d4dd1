//! The generators `F`, `κ`, `ι1`, `ι2` acting on `R/4Z × T^6`.

use crate::linalg::{int, rat, Rational, RationalMatrix};

use super::{AffineIsometry, TorusLattice};

fn translation(entries: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = vec![int(0); 7];
    for (i, value) in entries {
        v[*i] = value.clone();
    }
    v
}

/// `(t, z1, z2, z3) ↦ (t + 1, i·z1, i·z2, −z3)`.
pub fn f_map(lattice: &TorusLattice) -> AffineIsometry {
    let linear = RationalMatrix::from_i64_rows(&[
        &[1, 0, 0, 0, 0, 0, 0],
        &[0, 0, -1, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, -1, 0, 0],
        &[0, 0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 0, 0, -1, 0],
        &[0, 0, 0, 0, 0, 0, -1],
    ]);
    AffineIsometry::new(linear, translation(&[(0, int(1))]), "F", lattice)
}

/// `(t, z) ↦ (1 − t, z̄)`.
pub fn kappa(lattice: &TorusLattice) -> AffineIsometry {
    let linear = RationalMatrix::from_i64_rows(&[
        &[-1, 0, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, 0, 0],
        &[0, 0, -1, 0, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 0, -1, 0, 0],
        &[0, 0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 0, -1],
    ]);
    AffineIsometry::new(linear, translation(&[(0, int(1))]), "kappa", lattice)
}

fn iota_linear() -> RationalMatrix {
    let diag: Vec<Rational> = [1, -1, -1, -1, -1, 1, 1].iter().map(|&v| int(v)).collect();
    RationalMatrix::diagonal(&diag)
}

/// `(t, z1, z2, z3) ↦ (t, −z1, −z2, z3 + 1/2)`.
pub fn iota1(lattice: &TorusLattice) -> AffineIsometry {
    AffineIsometry::new(iota_linear(), translation(&[(5, rat(1, 2))]), "iota1", lattice)
}

/// `(t, z1, z2, z3) ↦ (t, −z1, −z2, z3 + i/2)`.
pub fn iota2(lattice: &TorusLattice) -> AffineIsometry {
    AffineIsometry::new(iota_linear(), translation(&[(6, rat(1, 2))]), "iota2", lattice)
}

pub fn paper_generators(lattice: &TorusLattice) -> Vec<AffineIsometry> {
    vec![f_map(lattice), kappa(lattice), iota1(lattice), iota2(lattice)]
}
