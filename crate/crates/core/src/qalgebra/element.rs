use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeff::{GaussianRational, ScalarQ};
use crate::error::{Error, Result};

use super::algebra::{monomial_mul, same_algebra, Monomial, QAlgebra};

/// An element of a q-commutative algebra in normal form: a finite sum of
/// normal-ordered monomials with nonzero [`ScalarQ`] coefficients.
#[derive(Clone, Debug)]
pub struct Element {
    alg: Arc<QAlgebra>,
    terms: BTreeMap<Monomial, ScalarQ>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(alg: &Arc<QAlgebra>) -> Self {
        Self { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<QAlgebra>) -> Self {
        Self::scalar(alg, ScalarQ::one())
    }

    pub fn scalar(alg: &Arc<QAlgebra>, c: ScalarQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(alg.ngens()), c);
        }
        Self { alg: alg.clone(), terms }
    }

    /// The generator `x_gen`. Panics if `gen` is out of range.
    pub fn generator(alg: &Arc<QAlgebra>, gen: usize) -> Self {
        assert!(gen < alg.ngens(), "generator index {gen} out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::generator(alg.ngens(), gen), ScalarQ::one());
        Self { alg: alg.clone(), terms }
    }

    /// `c * x^m`, where `m` is already in normal order.
    pub fn monomial(alg: &Arc<QAlgebra>, m: Monomial, c: ScalarQ) -> Result<Self> {
        alg.check_admissible(&m)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Ok(Self { alg: alg.clone(), terms })
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, ScalarQ)>>(alg: &Arc<QAlgebra>, it: I) -> Result<Self> {
        let mut e = Self::zero(alg);
        for (m, c) in it {
            alg.check_admissible(&m)?;
            e.add_term(m, &c);
        }
        Ok(e)
    }

    pub fn algebra(&self) -> &Arc<QAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarQ)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> ScalarQ {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Returns the scalar if this element lies in the ground field.
    pub fn as_scalar(&self) -> Option<ScalarQ> {
        match self.terms.len() {
            0 => Some(ScalarQ::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &ScalarQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.alg);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let (s, m) = monomial_mul(m1, m2, &self.alg)?;
                let c = (c1 * c2).shift(s);
                out.add_term(m, &c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        let mut out = Self::zero(&self.alg);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: i64) -> Self {
        Self {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift(k))).collect(),
        }
    }

    /// Coefficient-wise conjugation.
    pub fn conj(&self) -> Self {
        Self {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    /// Units of a localized q-commutative algebra: a unit scalar times a
    /// monomial in invertible generators.
    pub fn is_unit(&self) -> bool {
        self.unit_parts().is_some()
    }

    fn unit_parts(&self) -> Option<(&Monomial, &ScalarQ)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let ok = c.is_unit()
            && m.exps().iter().enumerate().all(|(g, e)| *e == 0 || self.alg.is_invertible(g));
        ok.then_some((m, c))
    }

    /// `(c x^mu)^{-1} = c^{-1} q^{-s} x^{-mu}` where `x^mu x^{-mu} = q^s`.
    pub fn inverse(&self) -> Result<Self> {
        let (m, c) = self.unit_parts().ok_or_else(|| Error::NonUnit(crate::expr::format(self)))?;
        let neg = m.checked_neg()?;
        let (s, _) = monomial_mul(m, &neg, &self.alg)?;
        let cinv = c.inv().ok_or_else(|| Error::NonUnit(c.to_string()))?;
        let s = s.checked_neg().ok_or(Error::ExponentOverflow)?;
        Self::monomial(&self.alg, neg, cinv.shift(s))
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(&self.alg);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Substitutes `q = q0` in every coefficient.
    pub fn eval_at(&self, q0: &GaussianRational) -> Result<BTreeMap<Monomial, GaussianRational>> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.eval(q0)?;
            if !v.is_zero() {
                out.insert(m.clone(), v);
            }
        }
        Ok(out)
    }

    /// Reinterprets this element in another algebra with the same
    /// number of generators (e.g. a structurally equal presentation).
    pub(crate) fn with_algebra(&self, alg: &Arc<QAlgebra>) -> Result<Self> {
        if alg.ngens() != self.alg.ngens() {
            return Err(Error::AlgebraMismatch);
        }
        Self::from_terms(alg, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("subtracting elements of different algebras")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("multiplying elements of different algebras")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&ScalarQ::from_integer(-1))
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format(self))
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

    fn ut2() -> Arc<QAlgebra> {
        let t = tq2();
        Arc::new(QAlgebra::new(t.names().to_vec(), vec![true, false, true], t.comm().to_vec()).unwrap())
    }

    #[test]
    fn sum_times_generator() {
        let alg = tq2();
        let (a11, a12, a22) = (Element::generator(&alg, 0), Element::generator(&alg, 1), Element::generator(&alg, 2));
        let lhs = &(&a11 + &a22) * &a12;
        let rhs = (&a12 * &a11).shift_q(1) + (&a12 * &a22).shift_q(1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_and_zero_products() {
        let alg = tq2();
        let e = &Element::generator(&alg, 0) + &Element::generator(&alg, 1).shift_q(3);
        assert_eq!(&e * &Element::one(&alg), e);
        assert!(e.scale(&ScalarQ::zero()).is_zero());
        assert!((&e + &-&e).is_zero());
    }

    #[test]
    fn a12_squared_times_a11() {
        // a12 a12 a11 = a12 q^{-1} a11 a12 = q^{-2} a11 a12^2
        let alg = tq2();
        let a12 = Element::generator(&alg, 1);
        let lhs = &(&a12 * &a12) * &Element::generator(&alg, 0);
        let expected = Element::monomial(&alg, Monomial::new(vec![1, 2, 0]), ScalarQ::q_pow(-2)).unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn q_plus_one_times_a12() {
        let alg = tq2();
        let a12 = Element::generator(&alg, 1);
        let s = &a12.shift_q(1) + &a12;
        assert_eq!(s, a12.scale(&(&ScalarQ::one() + &ScalarQ::q_pow(1))));
    }

    #[test]
    fn inverse_round_trips() {
        let alg = ut2();
        let m = Element::monomial(&alg, Monomial::new(vec![2, 0, -3]), ScalarQ::term(GaussianRational::from_parts(1, 2, 1, 1), 4)).unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).as_scalar().unwrap().is_one());
        assert!((&inv * &m).as_scalar().unwrap().is_one());
        assert!(Element::generator(&alg, 1).inverse().is_err());
        let two_terms = &Element::generator(&alg, 0) + &Element::one(&alg);
        assert!(two_terms.inverse().is_err());
    }

    #[test]
    fn inadmissible_monomial_rejected() {
        let alg = tq2();
        assert!(Element::monomial(&alg, Monomial::new(vec![-1, 0, 0]), ScalarQ::one()).is_err());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Element::one(&tq2());
        let b = Element::one(&ut2());
        assert_eq!(a.try_mul(&b), Err(Error::AlgebraMismatch));
    }
}
