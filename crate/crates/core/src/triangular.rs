//! The quantum upper triangular matrix bialgebra `T_q(n)` and its Hopf
//! localization `UT_q(n)` at the diagonal generators.

use std::sync::{Arc, OnceLock};

use crate::coeff::ScalarQ;
use crate::error::{Error, Result};
use crate::qalgebra::{
    Element, Linearity, Monomial, MorphismSpec, Multiplicativity, QAlgebra, TensorElement, TensorSpace,
};

/// Position `(i, j)` of an upper triangular generator, `1 <= i <= j <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriIndex {
    pub i: usize,
    pub j: usize,
}

impl TriIndex {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || i > j || j > n {
            return Err(Error::IndexOutOfRange(i, j));
        }
        Ok(Self { i, j })
    }
}

/// Exponent `e` of the relation `x y = q^e y x` if the ordered pair
/// `(x, y)` matches one of the four relation families.
fn family_exponents(x: TriIndex, y: TriIndex) -> Vec<i64> {
    let mut out = Vec::new();
    // a_jk a_ik = q a_ik a_jk, i < j <= k
    if x.j == y.j && y.i < x.i && x.i <= x.j {
        out.push(1);
    }
    // a_jk a_jl = q a_jl a_jk, j <= k < l
    if x.i == y.i && x.i <= x.j && x.j < y.j {
        out.push(1);
    }
    // a_ik a_jl = a_jl a_ik, i < j <= l, i <= k < l
    if x.i < y.i && y.i <= y.j && x.i <= x.j && x.j < y.j {
        out.push(0);
    }
    // a_jk a_il = q^2 a_il a_jk, i < j <= k < l
    if y.i < x.i && x.i <= x.j && x.j < y.j {
        out.push(2);
    }
    out
}

/// The `e` with `a_p a_r = q^e a_r a_p` in `T_q(n)`.
pub fn comm_exponent(p: TriIndex, r: TriIndex, n: usize) -> Result<i64> {
    if p.j > n || r.j > n || p.i == 0 || r.i == 0 || p.i > p.j || r.i > r.j {
        return Err(Error::IndexOutOfRange(p.i.max(r.i), p.j.max(r.j)));
    }
    let key = (p.i, p.j, r.i, r.j);
    if p == r {
        return Err(Error::RelationFamily(key));
    }
    let forward = family_exponents(p, r);
    let backward = family_exponents(r, p);
    match (forward.as_slice(), backward.as_slice()) {
        ([e], []) => Ok(*e),
        ([], [e]) => Ok(-*e),
        _ => Err(Error::RelationFamily(key)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `T_q(n)` (or `UT_q(n)` when `localized`), presented on the generators
/// `a[i,j]` in lexicographic order.
#[derive(Clone, Debug)]
pub struct TriangularAlgebra {
    n: usize,
    localized: bool,
    alg: Arc<QAlgebra>,
    indices: Vec<TriIndex>,
    ground: Arc<QAlgebra>,
    square: OnceLock<Arc<TensorSpace>>,
    cube: OnceLock<Arc<TensorSpace>>,
    delta: OnceLock<MorphismSpec>,
    counit: OnceLock<MorphismSpec>,
    antipode: OnceLock<MorphismSpec>,
}

impl TriangularAlgebra {
    pub fn build(n: usize, localized: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::SizeTooSmall(n));
        }
        let indices: Vec<TriIndex> =
            (1..=n).flat_map(|i| (i..=n).map(move |j| TriIndex { i, j })).collect();
        let names = indices.iter().map(|p| format!("a[{},{}]", p.i, p.j)).collect();
        let invertible = indices.iter().map(|p| localized && p.i == p.j).collect();
        let comm = indices
            .iter()
            .map(|p| indices.iter().map(|r| if p == r { Ok(0) } else { comm_exponent(*p, *r, n) }).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        let alg = Arc::new(QAlgebra::new(names, invertible, comm)?);
        Ok(Self {
            n,
            localized,
            alg,
            indices,
            ground: Arc::new(QAlgebra::ground()),
            square: OnceLock::new(),
            cube: OnceLock::new(),
            delta: OnceLock::new(),
            counit: OnceLock::new(),
            antipode: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_localized(&self) -> bool {
        self.localized
    }

    pub fn algebra(&self) -> &Arc<QAlgebra> {
        &self.alg
    }

    /// The ground field as a generator-free algebra (target of `epsilon`).
    pub fn ground(&self) -> &Arc<QAlgebra> {
        &self.ground
    }

    pub fn indices(&self) -> &[TriIndex] {
        &self.indices
    }

    pub fn gen_index(&self, i: usize, j: usize) -> Result<usize> {
        TriIndex::new(i, j, self.n)?;
        // Row i starts after rows 1..i-1, of lengths n, n-1, ...
        Ok((i - 1) * (2 * self.n + 2 - i) / 2 + (j - i))
    }

    /// `a[i,j]`.
    pub fn gen(&self, i: usize, j: usize) -> Result<Element> {
        Ok(Element::generator(&self.alg, self.gen_index(i, j)?))
    }

    fn a(&self, i: usize, j: usize) -> Element {
        self.gen(i, j).expect("index in range")
    }

    fn require_localized(&self, what: &'static str) -> Result<()> {
        if self.localized {
            Ok(())
        } else {
            Err(Error::NotLocalized(what))
        }
    }

    pub fn one(&self) -> Element {
        Element::one(&self.alg)
    }

    /// `det = a[1,1] a[2,2] ... a[n,n]`.
    pub fn qdet(&self) -> Element {
        (1..=self.n).fold(self.one(), |acc, k| &acc * &self.a(k, k))
    }

    /// `t = det^-1`.
    pub fn tgen(&self) -> Result<Element> {
        self.require_localized("t")?;
        self.qdet().inverse()
    }

    /// `z = a[1,1] a[2,2]^-1`.
    pub fn z(&self) -> Result<Element> {
        self.require_localized("z")?;
        Ok(&self.a(1, 1) * &self.a(2, 2).inverse()?)
    }

    /// Product of the diagonal generators `a[k,k]` with `k` not in `skip`.
    fn diagonal_product(&self, skip: &[usize]) -> Element {
        (1..=self.n).filter(|k| !skip.contains(k)).fold(self.one(), |acc, k| &acc * &self.a(k, k))
    }

    /// `A (x) A`.
    pub fn square(&self) -> &Arc<TensorSpace> {
        self.square.get_or_init(|| TensorSpace::square(&self.alg))
    }

    /// `A (x) A (x) A`.
    pub fn cube(&self) -> &Arc<TensorSpace> {
        self.cube.get_or_init(|| TensorSpace::cube(&self.alg))
    }

    /// `Delta(a[i,j]) = sum_k a[i,k] (x) a[k,j]`.
    pub fn delta_spec(&self) -> &MorphismSpec {
        self.delta.get_or_init(|| {
            let sq = self.square().clone();
            let images = self
                .indices
                .iter()
                .map(|p| {
                    (p.i..=p.j).fold(Element::zero(sq.combined()), |acc, k| {
                        let t = sq.pure(&[&self.a(p.i, k), &self.a(k, p.j)]).expect("factors of the square");
                        &acc + t.value()
                    })
                })
                .collect();
            MorphismSpec::new_unchecked(&self.alg, sq.combined(), images, Multiplicativity::Morphism, Linearity::Linear)
                .expect("diagonal images are group-like units")
        })
    }

    pub fn coproduct(&self, e: &Element) -> Result<TensorElement> {
        self.square().wrap(self.delta_spec().apply(e)?)
    }

    /// `epsilon(a[i,j]) = delta_ij`.
    pub fn counit_spec(&self) -> &MorphismSpec {
        self.counit.get_or_init(|| {
            let images = self
                .indices
                .iter()
                .map(|p| if p.i == p.j { Element::one(&self.ground) } else { Element::zero(&self.ground) })
                .collect();
            MorphismSpec::new_unchecked(&self.alg, &self.ground, images, Multiplicativity::Morphism, Linearity::Linear)
                .expect("counit images are units on the diagonal")
        })
    }

    pub fn counit(&self, e: &Element) -> Result<ScalarQ> {
        self.counit_spec().apply_scalar(e)
    }

    fn spec_from(&self, images: Vec<Element>, mult: Multiplicativity, lin: Linearity) -> Result<MorphismSpec> {
        MorphismSpec::new(&self.alg, &self.alg, images, mult, lin)
    }

    fn reflected(&self, p: TriIndex) -> Element {
        self.a(self.n + 1 - p.j, self.n + 1 - p.i)
    }

    /// `sigma(a[i,j]) = q^{2(i-j)} a[i,j]`.
    pub fn sigma_spec(&self) -> Result<MorphismSpec> {
        let images = self.indices.iter().map(|p| self.a(p.i, p.j).shift_q(2 * (p.i as i64 - p.j as i64))).collect();
        self.spec_from(images, Multiplicativity::Morphism, Linearity::Linear)
    }

    pub fn sigma_inverse_spec(&self) -> Result<MorphismSpec> {
        let images = self.indices.iter().map(|p| self.a(p.i, p.j).shift_q(2 * (p.j as i64 - p.i as i64))).collect();
        self.spec_from(images, Multiplicativity::Morphism, Linearity::Linear)
    }

    /// Reflection across the antidiagonal, `a[i,j] -> a[n+1-j, n+1-i]`.
    pub fn rho_spec(&self) -> Result<MorphismSpec> {
        let images = self.indices.iter().map(|p| self.reflected(*p)).collect();
        self.spec_from(images, Multiplicativity::Morphism, Linearity::Linear)
    }

    /// Signed reflection: `-a[n+1-j, n+1-i]` when `i <= n/2 < j`. Even `n` only.
    pub fn theta_spec(&self) -> Result<MorphismSpec> {
        if self.n % 2 == 1 {
            return Err(Error::OddSize("theta"));
        }
        let h = self.n / 2;
        let images = self
            .indices
            .iter()
            .map(|p| if p.i <= h && h < p.j { -self.reflected(*p) } else { self.reflected(*p) })
            .collect();
        self.spec_from(images, Multiplicativity::Morphism, Linearity::Linear)
    }

    /// The antilinear reflection.
    pub fn gamma_spec(&self) -> Result<MorphismSpec> {
        let images = self.indices.iter().map(|p| self.reflected(*p)).collect();
        self.spec_from(images, Multiplicativity::Morphism, Linearity::Antilinear)
    }

    /// `b[i,j]` as a signed sum over chains `i = i_0 < ... < i_s = j`.
    pub fn b_element(&self, i: usize, j: usize) -> Result<Element> {
        TriIndex::new(i, j, self.n)?;
        if i == j {
            return Ok(self.diagonal_product(&[i]));
        }
        let inner: Vec<usize> = ((i + 1)..j).collect();
        let mut out = Element::zero(&self.alg);
        for mask in 0u64..(1u64 << inner.len()) {
            let mut chain = vec![i];
            chain.extend(inner.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, k)| *k));
            chain.push(j);
            let s = chain.len() as i64 - 1;
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let coeff = ScalarQ::from_integer(sign).shift(2 * (j - i) as i64 - s);
            let path = chain.windows(2).fold(self.one(), |acc, w| &acc * &self.a(w[0], w[1]));
            out = &out + &(&path * &self.diagonal_product(&chain)).scale(&coeff);
        }
        Ok(out)
    }

    /// `b[i,j]` for `i < j` through the left or right recurrence. The
    /// value is computed in the localization and must lie in `T_q(n)`.
    pub fn b_recurrence(&self, i: usize, j: usize, side: Side) -> Result<Element> {
        TriIndex::new(i, j, self.n)?;
        if i == j {
            return Err(Error::Invalid("the recurrences need i < j".into()));
        }
        if !self.localized {
            let local = Self::build(self.n, true)?;
            return local.b_recurrence(i, j, side)?.with_algebra(&self.alg);
        }
        let mut out = Element::zero(&self.alg);
        match side {
            Side::Left => {
                let inv = self.a(i, i).inverse()?;
                for k in (i + 1)..=j {
                    let c = ScalarQ::from_integer(-1).shift(2 * (k - i) as i64 - 1);
                    let term = &(&self.a(i, k) * &inv) * &self.b_element(k, j)?;
                    out = &out + &term.scale(&c);
                }
            }
            Side::Right => {
                let inv = self.a(j, j).inverse()?;
                for l in i..j {
                    let c = ScalarQ::from_integer(-1).shift(2 * (j - l) as i64 - 1);
                    let term = &(&self.a(l, j) * &inv) * &self.b_element(i, l)?;
                    out = &out + &term.scale(&c);
                }
            }
        }
        Ok(out)
    }

    fn antipode_images(&self) -> Result<Vec<Element>> {
        let t = self.tgen()?;
        self.indices.iter().map(|p| Ok(&t * &self.b_element(p.i, p.j)?)).collect()
    }

    /// The antipode: the antimultiplicative map with `S(a[i,j]) = t b[i,j]`.
    pub fn antipode_spec(&self) -> Result<&MorphismSpec> {
        self.require_localized("the antipode")?;
        if let Some(s) = self.antipode.get() {
            return Ok(s);
        }
        let spec =
            self.spec_from(self.antipode_images()?, Multiplicativity::Antimorphism, Linearity::Linear)?;
        Ok(self.antipode.get_or_init(|| spec))
    }

    pub fn antipode(&self, e: &Element) -> Result<Element> {
        self.antipode_spec()?.apply(e)
    }

    /// `* = gamma . S`.
    pub fn star_spec(&self) -> Result<MorphismSpec> {
        MorphismSpec::compose(&self.gamma_spec()?, self.antipode_spec()?)
    }

    pub fn star(&self, e: &Element) -> Result<Element> {
        self.star_spec()?.apply(e)
    }

    /// The normal-form monomial `a^nu` for an exponent vector in
    /// generator order.
    pub fn monomial(&self, exps: Vec<i64>) -> Result<Element> {
        Element::monomial(&self.alg, Monomial::new(exps), ScalarQ::one())
    }
}
