use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::algebra::QAlgebra;
use super::lattice::{hilbert_basis, integer_kernel, lattice_basis, row_echelon, to_big, to_i64, IntMatrix};

/// Central monomials of a q-commutative algebra.
///
/// `x^nu` is central iff `M nu = 0`. The exponents of admissible monomials
/// form the cone where non-invertible coordinates are nonnegative, so the
/// central monomials are the lattice `ker M` cut down to that cone:
/// a group of central units (`unit_generators`, all non-invertible
/// coordinates zero) plus a monoid generated by `cone_generators` modulo
/// those units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterLattice {
    /// Basis of `{nu in Z^N : M nu = 0}`.
    pub lattice_basis: Vec<Vec<i64>>,
    /// Indices into `lattice_basis` of vectors outside the admissible cone.
    pub outside_cone: Vec<usize>,
    /// Lattice basis of the central unit monomials.
    pub unit_generators: Vec<Vec<i64>>,
    /// Hilbert basis of the remaining central monomials.
    pub cone_generators: Vec<Vec<i64>>,
}

impl CenterLattice {
    /// All generators of the central monomials: units first.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        self.unit_generators.iter().chain(&self.cone_generators).cloned().collect()
    }

    /// Whether the only central monomial is `1`, i.e. the center is `K`.
    pub fn is_trivial(&self) -> bool {
        self.unit_generators.is_empty() && self.cone_generators.is_empty()
    }
}

fn transpose(m: &IntMatrix, cols: usize) -> IntMatrix {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn center_lattice(alg: &QAlgebra) -> CenterLattice {
    let n = alg.ngens();
    let m = to_big(alg.comm());
    let kernel = lattice_basis(&integer_kernel(&m, n));
    let lattice: Vec<Vec<i64>> = kernel.iter().map(|v| to_i64(v)).collect();
    let restricted: Vec<usize> = (0..n).filter(|g| !alg.is_invertible(*g)).collect();
    let outside_cone = lattice
        .iter()
        .enumerate()
        .filter(|(_, v)| restricted.iter().any(|g| v[*g] < 0))
        .map(|(i, _)| i)
        .collect();

    let d = kernel.len();
    if d == 0 {
        return CenterLattice { lattice_basis: lattice, outside_cone, unit_generators: vec![], cone_generators: vec![] };
    }
    // K: n x d with the kernel basis as columns; W = rows of K at restricted coordinates.
    let k_cols = transpose(&kernel, n);
    let w: IntMatrix = restricted.iter().map(|g| k_cols[*g].clone()).collect();
    // W V = [W' | 0] via an echelon form of W^T; V = U^T.
    let (h, u, r) = if w.is_empty() {
        (Vec::new(), (0..d).map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect()).collect(), 0)
    } else {
        row_echelon(&transpose(&w, d))
    };
    let to_nu = |y: &[BigInt]| -> Vec<BigInt> { mat_vec(&k_cols, y) };

    let units: IntMatrix = u[r..].iter().map(|row| to_nu(row)).collect();
    let unit_generators = lattice_basis(&units).iter().map(|v| to_i64(v)).collect();

    let cone_generators = if r == 0 {
        Vec::new()
    } else {
        let w_prime: IntMatrix = (0..restricted.len()).map(|i| (0..r).map(|c| h[c][i].clone()).collect()).collect();
        let mut gens: Vec<Vec<i64>> = hilbert_basis(&w_prime, r)
            .iter()
            .map(|y| {
                let full: Vec<BigInt> = (0..d).map(|j| (0..r).map(|c| &y[c] * &u[c][j]).sum()).collect();
                to_i64(&to_nu(&full))
            })
            .collect();
        gens.sort();
        gens
    };
    debug_assert!(cone_generators_in_cone(&cone_generators, &restricted));
    CenterLattice { lattice_basis: lattice, outside_cone, unit_generators, cone_generators }
}

fn cone_generators_in_cone(gens: &[Vec<i64>], restricted: &[usize]) -> bool {
    gens.iter().all(|v| restricted.iter().all(|g| !BigInt::from(v[*g]).is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tq2(localized: bool) -> QAlgebra {
        QAlgebra::new(
            vec!["a[1,1]".into(), "a[1,2]".into(), "a[2,2]".into()],
            vec![localized, false, localized],
            vec![vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn polynomial_algebra_has_trivial_center() {
        let c = center_lattice(&tq2(false));
        assert!(c.is_trivial());
        assert_eq!(c.lattice_basis.len(), 1);
        assert_eq!(c.outside_cone, vec![0]);
    }

    #[test]
    fn localized_center_is_laurent_in_z() {
        let c = center_lattice(&tq2(true));
        assert_eq!(c.generators(), vec![vec![1, 0, -1]]);
        assert!(c.cone_generators.is_empty());
    }

    #[test]
    fn commutative_algebra_everything_central() {
        let alg = QAlgebra::new(vec!["x".into(), "y".into(), "z".into()], vec![false; 3], vec![vec![0; 3]; 3]).unwrap();
        let c = center_lattice(&alg);
        assert_eq!(c.generators(), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn mixed_cone() {
        // x invertible, y not, everything commutes: units x^{+-1}, cone y
        let alg = QAlgebra::new(vec!["x".into(), "y".into()], vec![true, false], vec![vec![0; 2]; 2]).unwrap();
        let c = center_lattice(&alg);
        assert_eq!(c.unit_generators, vec![vec![1, 0]]);
        assert_eq!(c.cone_generators.len(), 1);
        assert_eq!(c.cone_generators[0][1], 1);
    }

    #[test]
    fn affine_plane_center_trivial() {
        assert!(center_lattice(&QAlgebra::quantum_affine_space(2, "x")).is_trivial());
    }
}
