use num_traits::{ToPrimitive, Zero};

use crate::linalg::{smith_normal_form, IntegerMatrix, Rational};
use crate::orbifold::{AffineIsometry, TorusLattice};

use super::AffineSubtorus;

/// Connected components of `Fix(g)`, sorted and deduplicated.
///
/// In lattice coordinates `g(u) = u` reads `(A − I)u ≡ −b (mod Z^n)`. With
/// `D = U(A − I)V` and `u = V·w` this decouples into `d_i w_i ≡ c_i` where
/// `c = −U·b`; the rows with `d_i = 0` must have `c_i ∈ Z`.
pub fn fixed_set(g: &AffineIsometry, lattice: &TorusLattice) -> Vec<AffineSubtorus> {
    let n = lattice.dim();
    let a = lattice.linear_in_lattice(&g.linear).to_integer().expect("lattice-preserving map");
    let m = a.sub(&IntegerMatrix::identity(n));
    let snf = smith_normal_form(&m);
    let b = g.translation_in_lattice(lattice);
    let c: Vec<Rational> = snf.u.to_rational().mul_vec(&b).into_iter().map(|x| -x).collect();
    let diag = snf.diagonal();
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_integer()) {
        return Vec::new();
    }
    let free: Vec<usize> = (r..n).collect();
    let directions = snf.v.select_columns(&free);
    let v = snf.v.to_rational();

    let moduli: Vec<u64> = diag[..r].iter().map(|d| d.to_u64().expect("small elementary divisor")).collect();
    let mut components = Vec::new();
    let mut digits = vec![0u64; r];
    loop {
        let mut w = vec![Rational::zero(); n];
        for i in 0..r {
            let d = Rational::from_integer(diag[i].clone());
            w[i] = (&c[i] + Rational::from_integer(digits[i].into())) / d;
        }
        components.push(AffineSubtorus::new(v.mul_vec(&w), &directions));
        // odometer over the product of residues
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
    components.sort();
    components.dedup();
    components
}
