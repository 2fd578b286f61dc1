//! Automorphisms of `T_q(2)` and `UT_q(2)`: linear automorphisms, the
//! sextuple group and its Hopf subgroup.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::coeff::ScalarQ;
use crate::error::{Error, Result};
use crate::expr;
use crate::qalgebra::{Element, Linearity, MorphismSpec, Multiplicativity};
use crate::random::random_unit_scalar;
use crate::triangular::TriangularAlgebra;

/// `a[1,2] -> lambda a[1,2]`, `a[1,1] -> m11 a[1,1] + m21 a[2,2]`,
/// `a[2,2] -> m12 a[1,1] + m22 a[2,2]` where `matrix = [[m11, m12], [m21, m22]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAuto2 {
    pub lambda: ScalarQ,
    pub matrix: [[ScalarQ; 2]; 2],
}

impl LinearAuto2 {
    pub fn new(lambda: ScalarQ, matrix: [[ScalarQ; 2]; 2]) -> Self {
        Self { lambda, matrix }
    }

    pub fn det(&self) -> ScalarQ {
        let m = &self.matrix;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    /// `(lambda mu, A B)`.
    pub fn product(&self, other: &Self) -> Self {
        let (a, b) = (&self.matrix, &other.matrix);
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Self { lambda: &self.lambda * &other.lambda, matrix: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]] }
    }
}

fn require_t2(tri: &TriangularAlgebra, localized: bool) -> Result<()> {
    if tri.n() != 2 || tri.is_localized() != localized {
        let name = if localized { "UT_q(2)" } else { "T_q(2)" };
        return Err(Error::Invalid(format!("expected {name}")));
    }
    Ok(())
}

pub fn linear_auto_spec(tri: &TriangularAlgebra, phi: &LinearAuto2) -> Result<MorphismSpec> {
    require_t2(tri, false)?;
    if phi.lambda.is_zero() || phi.det().is_zero() {
        return Err(Error::Singular);
    }
    let (a11, a12, a22) = (tri.gen(1, 1)?, tri.gen(1, 2)?, tri.gen(2, 2)?);
    let m = &phi.matrix;
    let p11 = &a11.scale(&m[0][0]) + &a22.scale(&m[1][0]);
    let p22 = &a11.scale(&m[0][1]) + &a22.scale(&m[1][1]);
    let p12 = a12.scale(&phi.lambda);
    let alg = tri.algebra();
    MorphismSpec::new(alg, alg, vec![p11, p12, p22], Multiplicativity::Morphism, Linearity::Linear)
}

/// `(l12, l11, l22, j, k, l)`: `a[1,2] -> l12 a[1,1]^k a[2,2]^l a[1,2]` and
/// `a[i,i] -> lii z^j a[i,i]` with `z = a[1,1] a[2,2]^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sextuple {
    pub l12: ScalarQ,
    pub l11: ScalarQ,
    pub l22: ScalarQ,
    pub j: i64,
    pub k: i64,
    pub l: i64,
}

impl Sextuple {
    pub fn new(l12: ScalarQ, l11: ScalarQ, l22: ScalarQ, j: i64, k: i64, l: i64) -> Result<Self> {
        if let Some(bad) = [&l12, &l11, &l22].into_iter().find(|x| !x.is_unit()) {
            return Err(Error::NonUnit(bad.to_string()));
        }
        Ok(Self { l12, l11, l22, j, k, l })
    }

    pub fn identity() -> Self {
        Self::integers(0, 0, 0)
    }

    /// `(1, 1, 1, j, k, l)`.
    pub fn integers(j: i64, k: i64, l: i64) -> Self {
        Self { l12: ScalarQ::one(), l11: ScalarQ::one(), l22: ScalarQ::one(), j, k, l }
    }

    /// `(l12, l11, l22, 0, 0, 0)`.
    pub fn diagonal(l12: ScalarQ, l11: ScalarQ, l22: ScalarQ) -> Result<Self> {
        Self::new(l12, l11, l22, 0, 0, 0)
    }

    /// Parses `[l12,l11,l22,j,k,l]` with scalars in the text format.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or(Error::Parse {
            pos: 0,
            msg: "expected [l12,l11,l22,j,k,l]".into(),
        })?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(Error::Parse { pos: 0, msg: format!("expected 6 entries, found {}", parts.len()) });
        }
        let scalar = |s: &str| expr::parse_scalar(s);
        let int = |s: &str| {
            s.parse::<i64>().map_err(|_| Error::Parse { pos: inner.find(s).map_or(0, |p| p + 1), msg: format!("expected an integer, found '{s}'") })
        };
        Self::new(scalar(parts[0])?, scalar(parts[1])?, scalar(parts[2])?, int(parts[3])?, int(parts[4])?, int(parts[5])?)
    }
}

impl fmt::Display for Sextuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{},{}]", self.l12, self.l11, self.l22, self.j, self.k, self.l)
    }
}

fn upow(x: &ScalarQ, e: i64) -> ScalarQ {
    x.pow(e).expect("sextuple scalars are units")
}

fn ratio(s: &Sextuple) -> ScalarQ {
    &s.l11 * &s.l22.inv().expect("sextuple scalars are units")
}

pub fn g_to_endo(tri: &TriangularAlgebra, s: &Sextuple) -> Result<MorphismSpec> {
    require_t2(tri, true)?;
    let (a11, a12, a22) = (tri.gen(1, 1)?, tri.gen(1, 2)?, tri.gen(2, 2)?);
    let zj = tri.z()?.pow(s.j)?;
    let p11 = (&zj * &a11).scale(&s.l11);
    let p22 = (&zj * &a22).scale(&s.l22);
    let p12 = (&(&a11.pow(s.k)? * &a22.pow(s.l)?) * &a12).scale(&s.l12);
    let alg = tri.algebra();
    MorphismSpec::new(alg, alg, vec![p11, p12, p22], Multiplicativity::Morphism, Linearity::Linear)
}

/// Reads a sextuple back from the generator images of an endomorphism of
/// `UT_q(2)`; `None` if the images do not have that shape.
pub fn sextuple_of(tri: &TriangularAlgebra, spec: &MorphismSpec) -> Result<Option<Sextuple>> {
    require_t2(tri, true)?;
    let single = |e: &Element| {
        let mut it = e.terms();
        match (it.next(), it.next()) {
            (Some((m, c)), None) => Some((m.exps().to_vec(), c.clone())),
            _ => None,
        }
    };
    let (Some((e11, c11)), Some((e12, c12)), Some((e22, c22))) =
        (single(spec.image(0)), single(spec.image(1)), single(spec.image(2)))
    else {
        return Ok(None);
    };
    let j = -e11[2];
    if e11 != [1 + j, 0, -j] || e22 != [j, 0, 1 - j] || e12[1] != 1 {
        return Ok(None);
    }
    let (k, l) = (e12[0], e12[2]);
    let shape = &(&tri.gen(1, 1)?.pow(k)? * &tri.gen(2, 2)?.pow(l)?) * &tri.gen(1, 2)?;
    let Some((_, c)) = single(&shape) else { return Ok(None) };
    let l12 = c12.div_exact(&c).ok_or_else(|| Error::NonUnit(c.to_string()))?;
    Sextuple::new(l12, c11, c22, j, k, l).map(Some)
}

/// The product with `s1` as the outer map: `g_to_endo(s1) o g_to_endo(s2)`.
pub fn g_compose(s1: &Sextuple, s2: &Sextuple) -> Sextuple {
    let r = upow(&ratio(s1), s2.j);
    let shift = s1.j * (s2.k + s2.l);
    Sextuple {
        l12: &(&s1.l12 * &s2.l12) * &(&upow(&s1.l11, s2.k) * &upow(&s1.l22, s2.l)),
        l11: &(&s1.l11 * &s2.l11) * &r,
        l22: &(&s1.l22 * &s2.l22) * &r,
        j: s1.j + s2.j,
        k: s1.k + s2.k + shift,
        l: s1.l + s2.l - shift,
    }
}

pub fn g_inverse(s: &Sextuple) -> Sextuple {
    let r = upow(&ratio(s), s.j);
    let shift = s.j * (s.k + s.l);
    Sextuple {
        l12: &upow(&s.l12, -1) * &(&upow(&s.l11, s.k - shift) * &upow(&s.l22, s.l + shift)),
        l11: &upow(&s.l11, -1) * &r,
        l22: &upow(&s.l22, -1) * &r,
        j: -s.j,
        k: shift - s.k,
        l: -shift - s.l,
    }
}

/// The sextuple of `rho o g_to_endo(s) o rho`.
pub fn rho_conjugate(s: &Sextuple) -> Sextuple {
    Sextuple { l12: s.l12.clone(), l11: s.l22.clone(), l22: s.l11.clone(), j: -s.j, k: s.l, l: s.k }
}

/// `s = g1 * (g2 * g3)` with `g1 = (1,1,1,j,0,0)`,
/// `g2 = (1,1,1,0,k-j(k+l),l+j(k+l))` and `g3 = (l12,l11,l22,0,0,0)`.
pub fn g_decompose(s: &Sextuple) -> (Sextuple, Sextuple, Sextuple) {
    let shift = s.j * (s.k + s.l);
    (
        Sextuple::integers(s.j, 0, 0),
        Sextuple::integers(0, s.k - shift, s.l + shift),
        Sextuple { l12: s.l12.clone(), l11: s.l11.clone(), l22: s.l22.clone(), j: 0, k: 0, l: 0 },
    )
}

/// Membership in the Hopf automorphisms: `l11 = l22 = 1` and `(k, l) = (j, -j)`.
pub fn is_hopf_auto(s: &Sextuple) -> bool {
    s.l11.is_one() && s.l22.is_one() && s.k == s.j && s.l == -s.j
}

/// `(phi (x) phi) Delta = Delta phi` on the generators of `UT_q(2)`.
pub fn hopf_compatible(tri: &TriangularAlgebra, s: &Sextuple) -> Result<bool> {
    let phi = g_to_endo(tri, s)?;
    let sq = tri.square();
    let pp = MorphismSpec::tensor(&[&phi, &phi], sq, sq, &[0, 1])?;
    for g in 0..3 {
        let x = Element::generator(tri.algebra(), g);
        let left = pp.apply(tri.coproduct(&x)?.value())?;
        let right = tri.coproduct(&phi.apply(&x)?)?;
        if &left != right.value() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unit scalars `c q^k` and integers in `[-2, 2]`.
pub fn random_sextuple<R: Rng + ?Sized>(rng: &mut R) -> Sextuple {
    Sextuple {
        l12: random_unit_scalar(rng),
        l11: random_unit_scalar(rng),
        l22: random_unit_scalar(rng),
        j: rng.gen_range(-2..=2),
        k: rng.gen_range(-2..=2),
        l: rng.gen_range(-2..=2),
    }
}

/// A random element of the Hopf subgroup: `(lambda, 1, 1, j, j, -j)`.
pub fn random_hopf_sextuple<R: Rng + ?Sized>(rng: &mut R) -> Sextuple {
    let j = rng.gen_range(-3..=3);
    Sextuple { l12: random_unit_scalar(rng), l11: ScalarQ::one(), l22: ScalarQ::one(), j, k: j, l: -j }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::rng;

    fn ut2() -> TriangularAlgebra {
        TriangularAlgebra::build(2, true).unwrap()
    }

    fn s(l12: i64, l11: i64, l22: i64, j: i64, k: i64, l: i64) -> Sextuple {
        Sextuple::new(l12.into(), l11.into(), l22.into(), j, k, l).unwrap()
    }

    fn same_images(a: &MorphismSpec, b: &MorphismSpec) -> bool {
        a.images() == b.images()
    }

    #[test]
    fn linear_auto_examples() {
        let t = TriangularAlgebra::build(2, false).unwrap();
        let one = ScalarQ::one;
        let zero = ScalarQ::zero;
        let id = linear_auto_spec(&t, &LinearAuto2::new(one(), [[one(), zero()], [zero(), one()]])).unwrap();
        assert!(same_images(&id, &MorphismSpec::identity(t.algebra())));
        let anti = linear_auto_spec(&t, &LinearAuto2::new(one(), [[zero(), one()], [one(), zero()]])).unwrap();
        assert!(same_images(&anti, &t.rho_spec().unwrap()));
        let diag = linear_auto_spec(&t, &LinearAuto2::new(ScalarQ::q_pow(1), [[2.into(), zero()], [zero(), 3.into()]])).unwrap();
        assert_eq!(diag.image(1), &t.gen(1, 2).unwrap().shift_q(1));
        assert_eq!(diag.image(0), &t.gen(1, 1).unwrap().scale(&2.into()));
        let singular = LinearAuto2::new(one(), [[one(), one()], [one(), one()]]);
        assert!(matches!(linear_auto_spec(&t, &singular), Err(Error::Singular)));
    }

    #[test]
    fn g_to_endo_examples() {
        let u = ut2();
        let id = g_to_endo(&u, &Sextuple::identity()).unwrap();
        assert!(same_images(&id, &MorphismSpec::identity(u.algebra())));
        let zmap = g_to_endo(&u, &s(1, 1, 1, 1, 0, 0)).unwrap();
        let z = u.z().unwrap();
        assert_eq!(zmap.image(0), &(&z * &u.gen(1, 1).unwrap()));
        assert_eq!(zmap.image(1), &u.gen(1, 2).unwrap());
        let kmap = g_to_endo(&u, &s(1, 1, 1, 0, 1, 0)).unwrap();
        assert_eq!(kmap.image(1), &(&u.gen(1, 1).unwrap() * &u.gen(1, 2).unwrap()));
    }

    #[test]
    fn compose_examples() {
        let u = ut2();
        let a = s(1, 1, 1, 1, 0, 0);
        let b = s(1, 1, 1, 0, 1, 0);
        assert_eq!(g_compose(&a, &b), s(1, 1, 1, 1, 2, -1));
        assert_eq!(g_compose(&a, &Sextuple::identity()), a);
        let c = g_compose(&s(1, 2, 3, 0, 0, 0), &a);
        assert_eq!(c.l11, ScalarQ::from_ratio(4, 3));
        assert_eq!(c.l22, ScalarQ::from_integer(2));
        for (x, y) in [(&a, &b), (&b, &a), (&s(1, 2, 3, 0, 0, 0), &a)] {
            let composed = MorphismSpec::compose(&g_to_endo(&u, x).unwrap(), &g_to_endo(&u, y).unwrap()).unwrap();
            assert_eq!(sextuple_of(&u, &composed).unwrap(), Some(g_compose(x, y)));
        }
    }

    #[test]
    fn inverse_conjugate_decompose_examples() {
        assert_eq!(g_inverse(&Sextuple::identity()), Sextuple::identity());
        assert_eq!(g_inverse(&s(1, 1, 1, 1, 0, 0)), s(1, 1, 1, -1, 0, 0));
        assert_eq!(g_inverse(&s(1, 1, 1, 0, 2, 1)), s(1, 1, 1, 0, -2, -1));
        assert_eq!(rho_conjugate(&s(5, 2, 3, 1, 4, 7)), s(5, 3, 2, -1, 7, 4));
        assert_eq!(
            g_decompose(&s(1, 1, 1, 1, 2, -1)),
            (s(1, 1, 1, 1, 0, 0), s(1, 1, 1, 0, 1, 0), Sextuple::identity())
        );
        assert_eq!(g_decompose(&s(5, 2, 3, 0, 4, 7)), (Sextuple::identity(), s(1, 1, 1, 0, 4, 7), s(5, 2, 3, 0, 0, 0)));
    }

    #[test]
    fn rho_conjugation_matches_maps() {
        let u = ut2();
        let rho = u.rho_spec().unwrap();
        let mut r = rng(3);
        for _ in 0..10 {
            let x = random_sextuple(&mut r);
            let lhs = MorphismSpec::compose(&rho, &MorphismSpec::compose(&g_to_endo(&u, &x).unwrap(), &rho).unwrap()).unwrap();
            assert!(same_images(&lhs, &g_to_endo(&u, &rho_conjugate(&x)).unwrap()));
        }
    }

    #[test]
    fn hopf_examples() {
        let u = ut2();
        let h = Sextuple::new(ScalarQ::q_pow(2), ScalarQ::one(), ScalarQ::one(), 2, 2, -2).unwrap();
        assert!(is_hopf_auto(&h) && hopf_compatible(&u, &h).unwrap());
        assert!(is_hopf_auto(&Sextuple::identity()));
        let k = s(1, 1, 1, 0, 1, 0);
        assert!(!is_hopf_auto(&k) && !hopf_compatible(&u, &k).unwrap());
    }

    #[test]
    fn parse_and_display() {
        let x = Sextuple::parse("[q^2, 2, -1, 1, 0, -3]").unwrap();
        assert_eq!(x.l12, ScalarQ::q_pow(2));
        assert_eq!((x.j, x.k, x.l), (1, 0, -3));
        assert_eq!(Sextuple::parse(&x.to_string()).unwrap(), x);
        assert!(matches!(Sextuple::parse("[0,1,1,0,0,0]"), Err(Error::NonUnit(_))));
        assert!(Sextuple::parse("[1,1,1,0,0]").is_err());
    }
}
