use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use crate::coeff::ScalarQ;
use crate::error::{Error, Result};

use super::algebra::{same_algebra, Monomial, QAlgebra};
use super::element::Element;

/// `A_1 (x) ... (x) A_k` for q-commutative factors.
///
/// Generators from different factors commute, so the tensor product is
/// itself q-commutative with a block-diagonal commutation matrix; that
/// combined presentation carries the arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    factors: Vec<Arc<QAlgebra>>,
    offsets: Vec<usize>,
    combined: Arc<QAlgebra>,
}

impl TensorSpace {
    pub fn new(factors: Vec<Arc<QAlgebra>>) -> Arc<Self> {
        let total: usize = factors.iter().map(|f| f.ngens()).sum();
        let mut names = Vec::with_capacity(total);
        let mut invertible = Vec::with_capacity(total);
        let mut comm = vec![vec![0i64; total]; total];
        let mut offsets = Vec::with_capacity(factors.len());
        let mut off = 0;
        for (slot, f) in factors.iter().enumerate() {
            offsets.push(off);
            for g in 0..f.ngens() {
                names.push(format!("{}#{}", f.name(g), slot + 1));
                invertible.push(f.is_invertible(g));
                for h in 0..f.ngens() {
                    comm[off + g][off + h] = f.comm_exp(g, h);
                }
            }
            off += f.ngens();
        }
        let combined = Arc::new(QAlgebra::new(names, invertible, comm).expect("block-diagonal matrix is antisymmetric"));
        Arc::new(Self { factors, offsets, combined })
    }

    /// `A (x) A`.
    pub fn square(alg: &Arc<QAlgebra>) -> Arc<Self> {
        Self::new(vec![alg.clone(), alg.clone()])
    }

    /// `A (x) A (x) A`.
    pub fn cube(alg: &Arc<QAlgebra>) -> Arc<Self> {
        Self::new(vec![alg.clone(), alg.clone(), alg.clone()])
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, slot: usize) -> &Arc<QAlgebra> {
        &self.factors[slot]
    }

    pub fn factors(&self) -> &[Arc<QAlgebra>] {
        &self.factors
    }

    pub fn offset(&self, slot: usize) -> usize {
        self.offsets[slot]
    }

    /// The q-commutative presentation of the whole tensor product.
    pub fn combined(&self) -> &Arc<QAlgebra> {
        &self.combined
    }

    /// Embeds an element living on the consecutive factors starting at
    /// `first` into the whole space.
    pub fn embed_from(&self, first: usize, e: &Element) -> Result<Element> {
        let n = e.algebra().ngens();
        let start = self.offsets.get(first).copied().ok_or(Error::AlgebraMismatch)?;
        if start + n > self.combined.ngens() {
            return Err(Error::AlgebraMismatch);
        }
        let total = self.combined.ngens();
        Element::from_terms(
            &self.combined,
            e.terms().map(|(m, c)| {
                let mut v = vec![0; total];
                v[start..start + n].copy_from_slice(m.exps());
                (Monomial::new(v), c.clone())
            }),
        )
    }

    /// `e` placed in tensor slot `slot`, with `1` elsewhere.
    pub fn embed(self: &Arc<Self>, slot: usize, e: &Element) -> Result<TensorElement> {
        let f = self.factors.get(slot).ok_or(Error::AlgebraMismatch)?;
        if !same_algebra(f, e.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(TensorElement { space: self.clone(), value: self.embed_from(slot, e)? })
    }

    /// `e_1 (x) ... (x) e_k`.
    pub fn pure(self: &Arc<Self>, parts: &[&Element]) -> Result<TensorElement> {
        if parts.len() != self.arity() {
            return Err(Error::AlgebraMismatch);
        }
        let mut acc = Element::one(&self.combined);
        for (slot, e) in parts.iter().enumerate() {
            if !same_algebra(&self.factors[slot], e.algebra()) {
                return Err(Error::AlgebraMismatch);
            }
            acc = acc.try_mul(&self.embed_from(slot, e)?)?;
        }
        Ok(TensorElement { space: self.clone(), value: acc })
    }

    /// Splits a combined monomial into one monomial per factor.
    pub fn split(&self, m: &Monomial) -> Vec<Monomial> {
        self.factors
            .iter()
            .zip(&self.offsets)
            .map(|(f, off)| Monomial::new(m.exps()[*off..*off + f.ngens()].to_vec()))
            .collect()
    }

    pub fn wrap(self: &Arc<Self>, value: Element) -> Result<TensorElement> {
        if !same_algebra(&self.combined, value.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(TensorElement { space: self.clone(), value })
    }
}

/// An element of a [`TensorSpace`], with the componentwise product
/// `(u (x) v)(u' (x) v') = uu' (x) vv'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    space: Arc<TensorSpace>,
    value: Element,
}

impl TensorElement {
    pub fn space(&self) -> &Arc<TensorSpace> {
        &self.space
    }

    /// The element of the combined presentation.
    pub fn value(&self) -> &Element {
        &self.value
    }

    pub fn into_value(self) -> Element {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Terms as `(per-factor monomials, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<Monomial>, &ScalarQ)> + '_ {
        self.value.terms().map(|(m, c)| (self.space.split(m), c))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self { space: self.space.clone(), value: self.value.try_mul(&other.value)? })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self { space: self.space.clone(), value: self.value.try_add(&other.value)? })
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        Self { space: self.space.clone(), value: self.value.scale(c) }
    }

    /// Applies a scalar-valued map to one slot and drops it,
    /// e.g. `(eps (x) id)`.
    pub fn contract(&self, slot: usize, f: impl Fn(&Monomial) -> Result<ScalarQ>) -> Result<Element> {
        let mut rest: Vec<Arc<QAlgebra>> = self.space.factors.clone();
        rest.remove(slot);
        let target = if rest.len() == 1 { rest[0].clone() } else { TensorSpace::new(rest).combined.clone() };
        let mut out = Element::zero(&target);
        for (m, c) in self.value.terms() {
            let mut parts = self.space.split(m);
            let dropped = parts.remove(slot);
            let s = f(&dropped)?;
            if s.is_zero() {
                continue;
            }
            let exps: Vec<i64> = parts.iter().flat_map(|p| p.exps().iter().copied()).collect();
            out.add_term(Monomial::new(exps), &(c * &s));
        }
        Ok(out)
    }
}

impl Mul for &TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        self.try_mul(rhs).expect("multiplying tensors of different spaces")
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.try_add(rhs).expect("adding tensors of different spaces")
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.try_add(&rhs.scale(&ScalarQ::from_integer(-1))).expect("subtracting tensors of different spaces")
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format_tensor(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tq2() -> Arc<QAlgebra> {
        Arc::new(
            QAlgebra::new(
                vec!["a[1,1]".into(), "a[1,2]".into(), "a[2,2]".into()],
                vec![false; 3],
                vec![vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]],
            )
            .unwrap(),
        )
    }

    #[test]
    fn componentwise_product() {
        let alg = tq2();
        let sp = TensorSpace::square(&alg);
        let one = Element::one(&alg);
        let a11 = Element::generator(&alg, 0);
        let a12 = Element::generator(&alg, 1);
        let left = sp.pure(&[&a11, &one]).unwrap();
        let right = sp.pure(&[&one, &a12]).unwrap();
        assert_eq!(&left * &right, sp.pure(&[&a11, &a12]).unwrap());
        assert_eq!(&right * &left, sp.pure(&[&a11, &a12]).unwrap());

        let unit = sp.pure(&[&one, &one]).unwrap();
        let s = &sp.pure(&[&a12, &a11]).unwrap() + &left;
        assert_eq!(&unit * &s, s);
    }

    #[test]
    fn left_factor_reorders() {
        let alg = tq2();
        let sp = TensorSpace::square(&alg);
        let one = Element::one(&alg);
        let a11 = Element::generator(&alg, 0);
        let a12 = Element::generator(&alg, 1);
        let prod = &sp.pure(&[&a12, &one]).unwrap() * &sp.pure(&[&a11, &one]).unwrap();
        let expected = sp.pure(&[&(&a11 * &a12).shift_q(-1), &one]).unwrap();
        assert_eq!(prod, expected);
        assert_eq!(expected, sp.pure(&[&(&a12 * &a11), &one]).unwrap());
    }

    #[test]
    fn contraction_recovers_factor() {
        let alg = tq2();
        let sp = TensorSpace::square(&alg);
        let a12 = Element::generator(&alg, 1);
        let a22 = Element::generator(&alg, 2);
        let t = sp.pure(&[&a22, &a12]).unwrap();
        // "counit" sending every a[i,i] to 1 and a[1,2] to 0
        let eps = |m: &Monomial| Ok(if m.exps()[1] == 0 { ScalarQ::one() } else { ScalarQ::zero() });
        assert_eq!(t.contract(0, eps).unwrap(), a12);
        assert!(t.contract(1, eps).unwrap().is_zero());
    }
}
