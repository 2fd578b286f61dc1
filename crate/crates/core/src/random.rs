//! Seeded random scalars and sparse elements for the checks and fuzzers.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{GaussianRational, ScalarQ};
use crate::qalgebra::{Element, Monomial, QAlgebra};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const POOL: [(i64, i64, i64, i64); 10] = [
    (1, 1, 0, 1),
    (-1, 1, 0, 1),
    (2, 1, 0, 1),
    (-3, 1, 0, 1),
    (1, 2, 0, 1),
    (-2, 3, 0, 1),
    (0, 1, 1, 1),
    (0, 1, -1, 1),
    (1, 1, 1, 1),
    (3, 2, -2, 1),
];

/// A nonzero coefficient from a small fixed pool.
pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R) -> GaussianRational {
    let (a, b, c, d) = *POOL.choose(rng).expect("pool is nonempty");
    GaussianRational::from_parts(a, b, c, d)
}

/// `c q^k` with `c` from the pool and `|k| <= 2`; always a unit.
pub fn random_unit_scalar<R: Rng + ?Sized>(rng: &mut R) -> ScalarQ {
    let k = rng.gen_range(-2..=2);
    ScalarQ::term(random_gaussian(rng), k)
}

/// A sum of one or two pool terms.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> ScalarQ {
    let mut s = random_unit_scalar(rng);
    if rng.gen_bool(0.3) {
        s = &s + &random_unit_scalar(rng);
    }
    s
}

/// A monomial supported on at most three generators; exponents lie in
/// `[-2, 2]` for invertible generators and `[0, 3]` otherwise.
pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, alg: &QAlgebra) -> Monomial {
    let n = alg.ngens();
    let mut exps = vec![0i64; n];
    if n == 0 {
        return Monomial::new(exps);
    }
    let support = rng.gen_range(0..=3.min(n));
    for _ in 0..support {
        let g = rng.gen_range(0..n);
        exps[g] = if alg.is_invertible(g) { rng.gen_range(-2..=2) } else { rng.gen_range(0..=3) };
    }
    Monomial::new(exps)
}

/// A random element with at most `max_terms` terms.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, alg: &Arc<QAlgebra>, max_terms: usize) -> Element {
    let count = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Monomial, ScalarQ)> =
        (0..count).map(|_| (random_monomial(rng, alg), random_scalar(rng))).collect();
    Element::from_terms(alg, terms).expect("sampled monomials are admissible")
}
