//! JSON forms of scalars, algebra presentations and elements.
//!
//! A scalar is a list of `[exponent, re_num, re_den, im_num, im_den]`; an
//! algebra is `{"names", "invertible", "m"}`; an element is a list of
//! `[exponent_vector, scalar]`. Integers that do not fit in 64 bits are
//! written as decimal strings; both forms are accepted on input.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::coeff::{GaussianRational, ScalarQ};
use crate::error::{Error, Result};
use crate::qalgebra::{Element, Monomial, QAlgebra, TensorElement};

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("not an integer: {s}"))),
        _ => Err(bad(format!("not an integer: {v}"))),
    }
}

fn i64_from_json(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(format!("not a machine integer: {v}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be a list")))
}

fn rational(num: &Value, den: &Value) -> Result<BigRational> {
    let d = int_from_json(den)?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(int_from_json(num)?, d))
}

pub fn scalar_to_json(s: &ScalarQ) -> Value {
    Value::Array(
        s.terms()
            .map(|(e, c)| {
                json!([e, int_to_json(c.re.numer()), int_to_json(c.re.denom()), int_to_json(c.im.numer()), int_to_json(c.im.denom())])
            })
            .collect(),
    )
}

pub fn scalar_from_json(v: &Value) -> Result<ScalarQ> {
    let mut out = ScalarQ::zero();
    for t in array(v, "scalar")? {
        let t = array(t, "scalar term")?;
        if t.len() != 5 {
            return Err(bad("scalar term must have 5 entries"));
        }
        let c = GaussianRational::new(rational(&t[1], &t[2])?, rational(&t[3], &t[4])?);
        out += &ScalarQ::term(c, i64_from_json(&t[0])?);
    }
    Ok(out)
}

pub fn algebra_to_json(alg: &QAlgebra) -> Value {
    json!({ "names": alg.names(), "invertible": alg.invertible(), "m": alg.comm() })
}

pub fn algebra_from_json(v: &Value) -> Result<QAlgebra> {
    let names = array(&v["names"], "names")?
        .iter()
        .map(|n| n.as_str().map(String::from).ok_or_else(|| bad("names must be strings")))
        .collect::<Result<Vec<_>>>()?;
    let invertible = array(&v["invertible"], "invertible")?
        .iter()
        .map(|b| b.as_bool().ok_or_else(|| bad("invertible must hold booleans")))
        .collect::<Result<Vec<_>>>()?;
    let m = array(&v["m"], "m")?
        .iter()
        .map(|row| array(row, "m row")?.iter().map(i64_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    QAlgebra::new(names, invertible, m)
}

fn exps_to_json(m: &Monomial) -> Value {
    json!(m.exps())
}

fn exps_from_json(v: &Value) -> Result<Monomial> {
    Ok(Monomial::new(array(v, "exponent vector")?.iter().map(i64_from_json).collect::<Result<_>>()?))
}

pub fn element_to_json(e: &Element) -> Value {
    Value::Array(e.terms().map(|(m, c)| json!([exps_to_json(m), scalar_to_json(c)])).collect())
}

pub fn element_from_json(v: &Value, alg: &Arc<QAlgebra>) -> Result<Element> {
    let terms = array(v, "element")?
        .iter()
        .map(|t| {
            let t = array(t, "element term")?;
            if t.len() != 2 {
                return Err(bad("element term must be [exponents, scalar]"));
            }
            let m = exps_from_json(&t[0])?;
            if m.len() != alg.ngens() {
                return Err(bad(format!("expected {} exponents, got {}", alg.ngens(), m.len())));
            }
            Ok((m, scalar_from_json(&t[1])?))
        })
        .collect::<Result<Vec<_>>>()?;
    Element::from_terms(alg, terms)
}

/// A tensor is a list of `[[exponents per factor], scalar]`.
pub fn tensor_to_json(t: &TensorElement) -> Value {
    Value::Array(
        t.terms()
            .map(|(parts, c)| json!([parts.iter().map(exps_to_json).collect::<Vec<_>>(), scalar_to_json(c)]))
            .collect(),
    )
}
