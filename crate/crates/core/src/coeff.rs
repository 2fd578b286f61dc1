//! Scalars: Laurent polynomials in a formal parameter `q` with Gaussian
//! rational coefficients.
//!
//! [`GaussianRational`] is the coefficient field `Q(i)` with complex
//! conjugation; its conjugation-fixed part is `Q`. [`ScalarQ`] is the ring
//! `Q(i)[q, q^-1]`, stored sparsely so that equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `re + im*i` of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `num/den + 0i`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    /// `(re_num/re_den) + (im_num/im_den) i`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(
            BigRational::new(re_num.into(), re_den.into()),
            BigRational::new(im_num.into(), im_den.into()),
        )
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Some(acc)
    }

    /// True when the leading displayed sign would be a minus: a negative real
    /// number or a negative multiple of `i`.
    pub(crate) fn is_negative_like(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let imag = |v: &BigRational| {
            if v.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(v))
            }
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                return write!(f, "-{}", imag(&-self.im.clone()));
            }
            return f.write_str(&imag(&self.im));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "({} {} {})", fmt_rational(&self.re), sign, imag(&self.im.abs()))
    }
}

/// A Laurent polynomial `sum_k c_k q^k` with `c_k` in `Q(i)`.
///
/// No stored coefficient is zero, so two scalars are equal iff their term
/// maps are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ScalarQ {
    terms: BTreeMap<i64, GaussianRational>,
}

impl ScalarQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, 0)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::from_ratio(num, den))
    }

    /// `c * q^exp`.
    pub fn term(c: GaussianRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::term(GaussianRational::one(), exp)
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    /// Builds a scalar from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, GaussianRational)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (e, c) in it {
            s.add_term(e, &c);
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: i64) -> GaussianRational {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(GaussianRational::is_one)
    }

    /// Returns the constant if this scalar has no `q`-dependence.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Returns `(c, k)` if this scalar is a single term `c q^k`.
    pub fn as_monomial(&self) -> Option<(&GaussianRational, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    /// Units of `Q(i)[q, q^-1]` are exactly the nonzero single terms.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inv(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::term(c.inv()?, e.checked_neg()?))
    }

    pub fn pow(&self, exp: i64) -> Option<Self> {
        if exp < 0 {
            return self.inv()?.pow(exp.checked_neg()?);
        }
        let mut acc = Self::one();
        let mut sq = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    /// Coefficient-wise Gaussian conjugation; `q` is fixed.
    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect() }
    }

    /// Exact substitution `q = q0`. The parameter must stay a unit.
    pub fn eval(&self, q0: &GaussianRational) -> Result<GaussianRational> {
        if q0.is_zero() {
            return Err(Error::ZeroSubstitution);
        }
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let p = q0.pow(*e).ok_or(Error::ZeroSubstitution)?;
            acc = &acc + &(c * &p);
        }
        Ok(acc)
    }

    /// Lowest and highest `q`-exponent, if nonzero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        Some((lo, hi))
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.checked_add(shift).expect("q-exponent overflow"), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Exact division in `Q(i)[q, q^-1]`; `None` if `divisor` does not
    /// divide `self` (or is zero).
    pub fn div_exact(&self, divisor: &ScalarQ) -> Option<ScalarQ> {
        let (dlo, dhi) = divisor.degree_range()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead_inv = divisor.terms[&dhi].inv()?;
        let mut rem = self.clone();
        let mut quot = ScalarQ::zero();
        // Long division from the top degree down; a Laurent quotient exists
        // iff the remainder vanishes once its top degree drops below the
        // span of the divisor.
        while let Some((rlo, rhi)) = rem.degree_range() {
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let shift = rhi - dhi;
            let c = &rem.terms[&rhi] * &lead_inv;
            let t = ScalarQ::term(c, shift);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    fn add_term(&mut self, exp: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }
}

impl From<GaussianRational> for ScalarQ {
    fn from(c: GaussianRational) -> Self {
        ScalarQ::constant(c)
    }
}

impl From<i64> for ScalarQ {
    fn from(n: i64) -> Self {
        ScalarQ::from_integer(n)
    }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Add for ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: ScalarQ) -> ScalarQ {
        &self + &rhs
    }
}

impl AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, rhs: &ScalarQ) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Sub for ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: ScalarQ) -> ScalarQ {
        &self - &rhs
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        let mut out = ScalarQ::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.checked_add(*e2).expect("q-exponent overflow");
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: ScalarQ) -> ScalarQ {
        &self * &rhs
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

/// Renders `c q^k` without its sign. Returns `(negative, body)`; `body`
/// is empty for the unit term `1`.
pub(crate) fn term_parts(c: &GaussianRational, exp: i64) -> (bool, Vec<String>) {
    let negative = c.is_negative_like();
    let mag = if negative { -c } else { c.clone() };
    let mut parts = Vec::new();
    if !mag.is_one() {
        parts.push(mag.to_string());
    }
    match exp {
        0 => {}
        1 => parts.push("q".to_string()),
        e => parts.push(format!("q^{e}")),
    }
    (negative, parts)
}

/// Joins signed terms as `t1 + t2 - t3`, with a leading `- ` for a
/// negative first term.
pub(crate) fn join_signed(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in terms.iter().enumerate() {
        match (idx, neg) {
            (0, false) => {}
            (0, true) => out.push_str("- "),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(body);
    }
    out
}

impl serde::Serialize for ScalarQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(bool, String)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let (neg, parts) = term_parts(c, *e);
                let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
                (neg, body)
            })
            .collect();
        f.write_str(&join_signed(&terms))
    }
}

/// Parses a decimal integer that may exceed `i64`.
pub(crate) fn parse_bigint(s: &str) -> Option<BigInt> {
    s.parse::<BigInt>().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarQ {
        ScalarQ::q_pow(1)
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, 1, im, 1)
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!((&q() + &-q()).is_zero());
        let c = ScalarQ::constant(g(2, 3));
        let d = ScalarQ::constant(g(-2, -3));
        assert!((&c + &d).is_zero());
    }

    #[test]
    fn disjoint_exponents_merge() {
        let s = &(&ScalarQ::one() + &q()) + &ScalarQ::q_pow(-1);
        let terms: Vec<i64> = s.terms().map(|(e, _)| e).collect();
        assert_eq!(terms, vec![-1, 0, 1]);
        assert_eq!(s.to_string(), "q^-1 + 1 + q");
    }

    #[test]
    fn products() {
        assert!((&q() * &ScalarQ::q_pow(-1)).is_one());
        let lhs = &(&ScalarQ::one() - &q()) * &(&ScalarQ::one() + &q());
        assert_eq!(lhs, &ScalarQ::one() - &ScalarQ::q_pow(2));
        assert_eq!(&ScalarQ::i() * &ScalarQ::i(), ScalarQ::from_integer(-1));
    }

    #[test]
    fn conjugation() {
        let iq = &ScalarQ::i() * &q();
        assert_eq!(iq.conj(), -&iq);
        assert_eq!(ScalarQ::q_pow(2).conj(), ScalarQ::q_pow(2));
        let a = &ScalarQ::constant(g(1, 1)) + &ScalarQ::term(g(1, -1), 1);
        let b = &ScalarQ::constant(g(1, -1)) + &ScalarQ::term(g(1, 1), 1);
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn evaluation() {
        let s = &ScalarQ::q_pow(2) - &ScalarQ::one();
        assert_eq!(s.eval(&GaussianRational::from_integer(2)).unwrap(), GaussianRational::from_integer(3));
        let inv = ScalarQ::q_pow(-1);
        assert_eq!(inv.eval(&GaussianRational::from_ratio(1, 2)).unwrap(), GaussianRational::from_integer(2));
        assert!(ScalarQ::zero().eval(&GaussianRational::from_integer(7)).unwrap().is_zero());
        assert!(matches!(q().eval(&GaussianRational::zero()), Err(Error::ZeroSubstitution)));
    }

    #[test]
    fn exact_division() {
        let a = &ScalarQ::one() - &ScalarQ::q_pow(2);
        let b = &ScalarQ::one() + &q();
        assert_eq!(a.div_exact(&b).unwrap(), &ScalarQ::one() - &q());
        assert!(b.div_exact(&a).is_none());
        let shifted = a.shift(-5);
        assert_eq!(shifted.div_exact(&b).unwrap(), (&ScalarQ::one() - &q()).shift(-5));
        assert!(ScalarQ::one().div_exact(&ScalarQ::zero()).is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(ScalarQ::zero().to_string(), "0");
        assert_eq!((-&ScalarQ::q_pow(2)).to_string(), "- q^2");
        assert_eq!(ScalarQ::constant(g(1, -2)).to_string(), "(1 - 2*i)");
        assert_eq!(ScalarQ::term(GaussianRational::from_ratio(3, 2), -1).to_string(), "3/2*q^-1");
        assert_eq!(ScalarQ::term(g(0, -1), 1).to_string(), "- i*q");
    }
}
