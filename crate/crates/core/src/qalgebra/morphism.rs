use std::collections::HashMap;
use std::sync::Arc;

use crate::coeff::ScalarQ;
use crate::error::{Error, Result};

use super::algebra::{same_algebra, QAlgebra};
use super::element::Element;
use super::tensor::TensorSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicativity {
    Morphism,
    Antimorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Linearity {
    Linear,
    Antilinear,
}

impl Multiplicativity {
    fn compose(self, other: Self) -> Self {
        if self == other {
            Self::Morphism
        } else {
            Self::Antimorphism
        }
    }
}

impl Linearity {
    fn compose(self, other: Self) -> Self {
        if self == other {
            Self::Linear
        } else {
            Self::Antilinear
        }
    }
}

/// First generator pair `(a, b)` for which the images violate
/// `r_a r_b = q^{M[a][b]} r_b r_a` (or the opposite relation).
pub fn point_violation(images: &[Element], alg: &QAlgebra, opposite: bool) -> Option<(usize, usize)> {
    let sign = if opposite { -1 } else { 1 };
    for a in 0..images.len() {
        for b in (a + 1)..images.len() {
            let ab = images[a].try_mul(&images[b]);
            let ba = images[b].try_mul(&images[a]);
            match (ab, ba) {
                (Ok(ab), Ok(ba)) if ab == ba.shift_q(sign * alg.comm_exp(a, b)) => {}
                _ => return Some((a, b)),
            }
        }
    }
    None
}

/// Whether `images` is an R-point of `alg`: the images satisfy every
/// defining relation, and images of invertible generators are units.
pub fn is_point(images: &[Element], alg: &QAlgebra) -> bool {
    images.len() == alg.ngens()
        && images.iter().enumerate().all(|(g, e)| !alg.is_invertible(g) || e.is_unit())
        && point_violation(images, alg, false).is_none()
}

/// A map out of a q-commutative algebra determined by generator images.
///
/// Antimorphisms reverse products; antilinear maps conjugate scalars
/// coefficient-wise (fixing `q`). Negative powers of invertible generators
/// go to powers of the inverse of the (unit) image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    source: Arc<QAlgebra>,
    target: Arc<QAlgebra>,
    images: Vec<Element>,
    inverses: Vec<Option<Element>>,
    mult: Multiplicativity,
    lin: Linearity,
}

impl MorphismSpec {
    /// Validates the images (count, target algebra, unit images for
    /// invertible generators, defining relations) and builds the map.
    pub fn new(
        source: &Arc<QAlgebra>,
        target: &Arc<QAlgebra>,
        images: Vec<Element>,
        mult: Multiplicativity,
        lin: Linearity,
    ) -> Result<Self> {
        let spec = Self::new_unchecked(source, target, images, mult, lin)?;
        let opposite = mult == Multiplicativity::Antimorphism;
        if let Some((a, b)) = point_violation(&spec.images, source, opposite) {
            return Err(Error::NotAPoint { left: source.name(a).to_string(), right: source.name(b).to_string() });
        }
        Ok(spec)
    }

    /// Builds the map without checking the defining relations. Unit images
    /// for invertible generators are still required.
    pub fn new_unchecked(
        source: &Arc<QAlgebra>,
        target: &Arc<QAlgebra>,
        images: Vec<Element>,
        mult: Multiplicativity,
        lin: Linearity,
    ) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::ImageCount { expected: source.ngens(), got: images.len() });
        }
        if images.iter().any(|e| !same_algebra(e.algebra(), target)) {
            return Err(Error::AlgebraMismatch);
        }
        let inverses = images
            .iter()
            .enumerate()
            .map(|(g, e)| if source.is_invertible(g) { e.inverse().map(Some) } else { Ok(None) })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { source: source.clone(), target: target.clone(), images, inverses, mult, lin })
    }

    pub fn identity(alg: &Arc<QAlgebra>) -> Self {
        let images = (0..alg.ngens()).map(|g| Element::generator(alg, g)).collect();
        Self::new_unchecked(alg, alg, images, Multiplicativity::Morphism, Linearity::Linear)
            .expect("generators of a localized algebra are units")
    }

    pub fn source(&self) -> &Arc<QAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &Element {
        &self.images[gen]
    }

    pub fn multiplicativity(&self) -> Multiplicativity {
        self.mult
    }

    pub fn linearity(&self) -> Linearity {
        self.lin
    }

    /// Replaces one generator image without any validity check; used to
    /// build deliberately broken structure maps.
    pub fn with_image_unchecked(&self, gen: usize, image: Element) -> Result<Self> {
        let mut images = self.images.clone();
        images[gen] = image;
        Self::new_unchecked(&self.source, &self.target, images, self.mult, self.lin)
    }

    fn generator_power(&self, gen: usize, exp: i64, cache: &mut HashMap<(usize, i64), Element>) -> Result<Element> {
        if let Some(e) = cache.get(&(gen, exp)) {
            return Ok(e.clone());
        }
        let base = if exp < 0 {
            self.inverses[gen].as_ref().ok_or_else(|| Error::InadmissibleMonomial(self.source.name(gen).to_string()))?
        } else {
            &self.images[gen]
        };
        let v = base.pow(exp.abs())?;
        cache.insert((gen, exp), v.clone());
        Ok(v)
    }

    /// Image of `e` under the unique extension of this map.
    pub fn apply(&self, e: &Element) -> Result<Element> {
        if !same_algebra(e.algebra(), &self.source) {
            return Err(Error::AlgebraMismatch);
        }
        let mut cache = HashMap::new();
        let mut out = Element::zero(&self.target);
        for (m, c) in e.terms() {
            let mut value = Element::one(&self.target);
            let gens: Vec<(usize, i64)> =
                m.exps().iter().enumerate().filter(|(_, x)| **x != 0).map(|(g, x)| (g, *x)).collect();
            let ordered: Box<dyn Iterator<Item = &(usize, i64)>> = match self.mult {
                Multiplicativity::Morphism => Box::new(gens.iter()),
                Multiplicativity::Antimorphism => Box::new(gens.iter().rev()),
            };
            for &(g, x) in ordered {
                value = value.try_mul(&self.generator_power(g, x, &mut cache)?)?;
            }
            let coeff = match self.lin {
                Linearity::Linear => c.clone(),
                Linearity::Antilinear => c.conj(),
            };
            out = out.try_add(&value.scale(&coeff))?;
        }
        Ok(out)
    }

    /// `outer . inner` (apply `inner` first).
    pub fn compose(outer: &MorphismSpec, inner: &MorphismSpec) -> Result<MorphismSpec> {
        if !same_algebra(&inner.target, &outer.source) {
            return Err(Error::AlgebraMismatch);
        }
        let images = inner.images.iter().map(|e| outer.apply(e)).collect::<Result<Vec<_>>>()?;
        Self::new_unchecked(
            &inner.source,
            &outer.target,
            images,
            outer.mult.compose(inner.mult),
            outer.lin.compose(inner.lin),
        )
    }

    /// `f_1 (x) ... (x) f_k` from `source` into `target`, where `f_i` lands
    /// on the consecutive factors of `target` starting at `placements[i]`.
    pub fn tensor(
        parts: &[&MorphismSpec],
        source: &Arc<TensorSpace>,
        target: &Arc<TensorSpace>,
        placements: &[usize],
    ) -> Result<MorphismSpec> {
        if parts.len() != source.arity() || placements.len() != parts.len() {
            return Err(Error::Invalid("one map per tensor factor required".into()));
        }
        let mult = parts[0].mult;
        let lin = parts[0].lin;
        if parts.iter().any(|p| p.mult != mult || p.lin != lin) {
            return Err(Error::Invalid("tensor factors must share (anti)multiplicativity and (anti)linearity".into()));
        }
        let mut images = Vec::with_capacity(source.combined().ngens());
        for (slot, part) in parts.iter().enumerate() {
            if !same_algebra(part.source(), source.factor(slot)) {
                return Err(Error::AlgebraMismatch);
            }
            for img in &part.images {
                images.push(target.embed_from(placements[slot], img)?);
            }
        }
        Self::new_unchecked(source.combined(), target.combined(), images, mult, lin)
    }

    /// Moves tensor slot `i` of `source` to slot `perm[i]`; the target space
    /// has the permuted factors.
    pub fn slot_permutation(source: &Arc<TensorSpace>, perm: &[usize]) -> Result<(Arc<TensorSpace>, MorphismSpec)> {
        let k = source.arity();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|p| *p >= k || std::mem::replace(&mut seen[*p], true)) {
            return Err(Error::Invalid("not a permutation".into()));
        }
        let mut factors = vec![source.factor(0).clone(); k];
        for (i, p) in perm.iter().enumerate() {
            factors[*p] = source.factor(i).clone();
        }
        let target = TensorSpace::new(factors);
        let ids: Vec<MorphismSpec> = source.factors().iter().map(MorphismSpec::identity).collect();
        let refs: Vec<&MorphismSpec> = ids.iter().collect();
        let spec = Self::tensor(&refs, source, &target, perm)?;
        Ok((target, spec))
    }

    /// A map into the ground field, returned as a scalar.
    pub fn apply_scalar(&self, e: &Element) -> Result<ScalarQ> {
        self.apply(e)?.as_scalar().ok_or_else(|| Error::Invalid("map does not land in the ground field".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::Monomial;

    fn tq2(localized: bool) -> Arc<QAlgebra> {
        Arc::new(
            QAlgebra::new(
                vec!["a[1,1]".into(), "a[1,2]".into(), "a[2,2]".into()],
                vec![localized, false, localized],
                vec![vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]],
            )
            .unwrap(),
        )
    }

    fn gens(alg: &Arc<QAlgebra>) -> Vec<Element> {
        (0..alg.ngens()).map(|g| Element::generator(alg, g)).collect()
    }

    #[test]
    fn identity_point_and_counit_point() {
        let alg = tq2(false);
        assert!(is_point(&gens(&alg), &alg));
        let k = Arc::new(QAlgebra::ground());
        let deltas = vec![Element::one(&k), Element::zero(&k), Element::one(&k)];
        assert!(is_point(&deltas, &alg));
    }

    #[test]
    fn swapped_images_are_not_a_point() {
        let alg = tq2(false);
        let g = gens(&alg);
        let swapped = vec![g[1].clone(), g[0].clone(), g[2].clone()];
        assert!(!is_point(&swapped, &alg));
        assert_eq!(point_violation(&swapped, &alg, false), Some((0, 1)));
    }

    #[test]
    fn sigma_scales_a12() {
        let alg = tq2(false);
        let g = gens(&alg);
        let images = vec![g[0].clone(), g[1].shift_q(-2), g[2].clone()];
        let sigma =
            MorphismSpec::new(&alg, &alg, images, Multiplicativity::Morphism, Linearity::Linear).unwrap();
        assert_eq!(sigma.apply(&g[1]).unwrap(), g[1].shift_q(-2));
        let e = &(&g[1] * &g[1]) + &g[0];
        assert_eq!(sigma.apply(&e).unwrap(), &(&g[1] * &g[1]).shift_q(-4) + &g[0]);
    }

    #[test]
    fn negative_powers_use_inverse_images() {
        let alg = tq2(true);
        let g = gens(&alg);
        let images = vec![g[0].scale(&ScalarQ::from_integer(2)), g[1].clone(), g[2].clone()];
        let phi = MorphismSpec::new(&alg, &alg, images, Multiplicativity::Morphism, Linearity::Linear).unwrap();
        let inv = Element::monomial(&alg, Monomial::new(vec![-2, 0, 0]), ScalarQ::one()).unwrap();
        assert_eq!(phi.apply(&inv).unwrap(), inv.scale(&ScalarQ::from_ratio(1, 4)));
    }

    #[test]
    fn non_unit_image_of_invertible_generator() {
        let alg = tq2(true);
        let g = gens(&alg);
        let images = vec![&g[0] + &g[2], g[1].clone(), g[2].clone()];
        let r = MorphismSpec::new(&alg, &alg, images, Multiplicativity::Morphism, Linearity::Linear);
        assert!(matches!(r, Err(Error::NonUnit(_))));
    }

    #[test]
    fn antimorphism_reverses_products() {
        // identity images define an anti-automorphism only onto the
        // opposite algebra; inside T_q(2), a[1,2] -> a[1,2], a[i,i] -> a[j,j]
        // fails, but q -> q^-1 images work via opposite relations.
        let alg = tq2(false);
        let g = gens(&alg);
        let images = vec![g[2].clone(), g[1].clone(), g[0].clone()];
        assert!(MorphismSpec::new(&alg, &alg, images.clone(), Multiplicativity::Antimorphism, Linearity::Linear).is_err());
        let anti = MorphismSpec::new_unchecked(&alg, &alg, images, Multiplicativity::Antimorphism, Linearity::Linear).unwrap();
        let ab = &g[0] * &g[1];
        assert_eq!(anti.apply(&ab).unwrap(), &g[1] * &g[2]);
    }
}
