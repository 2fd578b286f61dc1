//! Text form of elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' int)? | '-' factor
//! atom   := rational | 'i' | 'q' | 'a' '[' int ',' int ']' | 't' | 'det' | 'z' | '(' expr ')'
//! ```

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::{join_signed, parse_bigint, term_parts, GaussianRational, ScalarQ};
use crate::error::{Error, Result};
use crate::qalgebra::{Element, Monomial, QAlgebra, TensorElement};
use crate::triangular::TriangularAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Rational(BigRational),
    I,
    Q,
    Gen { i: usize, j: usize, pos: usize },
    T { pos: usize },
    Det { pos: usize },
    Z { pos: usize },
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow { base: Box<ExprAst>, exp: i64, pos: usize },
    Neg(Box<ExprAst>),
    Paren(Box<ExprAst>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|(_, c)| c).collect();
            out.push((Tok::Num(parse_bigint(&s).expect("digits")), pos));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_alphabetic() {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().map(|(_, c)| c).collect()), pos));
        } else if "+-*^/()[],".contains(c) {
            out.push((Tok::Sym(c), pos));
            k += 1;
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Num(v)) => {
                let v = v.clone();
                self.at += 1;
                Ok(v)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn small(&mut self) -> Result<usize> {
        let pos = self.pos();
        let v = self.number()?;
        usize::try_from(v).map_err(|_| Error::Parse { pos, msg: "index too large".into() })
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprAst> {
        if self.eat('-') {
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        let pos = self.pos();
        if self.eat('^') {
            let negative = self.eat('-');
            let v = self.number()?;
            let v = if negative { -v } else { v };
            let exp = i64::try_from(v).map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })?;
            return Ok(ExprAst::Pow { base: Box::new(base), exp, pos });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(num)) => {
                self.at += 1;
                if self.eat('/') {
                    let den = self.number()?;
                    if den == BigInt::from(0) {
                        return Err(Error::Parse { pos, msg: "zero denominator".into() });
                    }
                    return Ok(ExprAst::Rational(BigRational::new(num, den)));
                }
                Ok(ExprAst::Rational(BigRational::from_integer(num)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match name.as_str() {
                    "i" => Ok(ExprAst::I),
                    "q" => Ok(ExprAst::Q),
                    "t" => Ok(ExprAst::T { pos }),
                    "det" => Ok(ExprAst::Det { pos }),
                    "z" => Ok(ExprAst::Z { pos }),
                    "a" => {
                        self.expect('[')?;
                        let i = self.small()?;
                        self.expect(',')?;
                        let j = self.small()?;
                        self.expect(']')?;
                        Ok(ExprAst::Gen { i, j, pos })
                    }
                    other => Err(Error::Parse { pos, msg: format!("unknown symbol '{other}'") }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(ExprAst::Paren(Box::new(inner)))
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses text into a syntax tree without interpreting it.
pub fn parse_ast(text: &str) -> Result<ExprAst> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let ast = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(ast)
}

fn eval(ast: &ExprAst, alg: &Arc<QAlgebra>, tri: Option<&TriangularAlgebra>) -> Result<Element> {
    let need = |pos: usize| -> Result<&TriangularAlgebra> {
        tri.ok_or(Error::Parse { pos, msg: "generators are not allowed here".into() })
    };
    let at = |pos: usize, e: Error| -> Error {
        match e {
            Error::Parse { .. } => e,
            other => Error::Parse { pos, msg: other.to_string() },
        }
    };
    Ok(match ast {
        ExprAst::Rational(r) => {
            Element::scalar(alg, ScalarQ::constant(GaussianRational::new(r.clone(), BigRational::from_integer(0.into()))))
        }
        ExprAst::I => Element::scalar(alg, ScalarQ::i()),
        ExprAst::Q => Element::scalar(alg, ScalarQ::q_pow(1)),
        ExprAst::Gen { i, j, pos } => need(*pos)?.gen(*i, *j).map_err(|e| at(*pos, e))?,
        ExprAst::T { pos } => need(*pos)?.tgen().map_err(|e| at(*pos, e))?,
        ExprAst::Det { pos } => need(*pos)?.qdet(),
        ExprAst::Z { pos } => need(*pos)?.z().map_err(|e| at(*pos, e))?,
        ExprAst::Add(a, b) => eval(a, alg, tri)?.try_add(&eval(b, alg, tri)?)?,
        ExprAst::Sub(a, b) => eval(a, alg, tri)?.try_sub(&eval(b, alg, tri)?)?,
        ExprAst::Mul(a, b) => eval(a, alg, tri)?.try_mul(&eval(b, alg, tri)?)?,
        ExprAst::Pow { base, exp, pos } => eval(base, alg, tri)?.pow(*exp).map_err(|e| at(*pos, e))?,
        ExprAst::Neg(a) => -eval(a, alg, tri)?,
        ExprAst::Paren(a) => eval(a, alg, tri)?,
    })
}

/// Parses an element of `T_q(n)` or `UT_q(n)` and returns its normal form.
pub fn parse(text: &str, tri: &TriangularAlgebra) -> Result<Element> {
    eval(&parse_ast(text)?, tri.algebra(), Some(tri))
}

/// Parses a scalar: the same grammar without generators.
pub fn parse_scalar(text: &str) -> Result<ScalarQ> {
    let ground = Arc::new(QAlgebra::ground());
    let e = eval(&parse_ast(text)?, &ground, None)?;
    Ok(e.as_scalar().unwrap_or_else(ScalarQ::zero))
}

fn monomial_parts(m: &Monomial, alg: &QAlgebra) -> Vec<String> {
    m.word_key()
        .into_iter()
        .map(|(g, e)| if e == 1 { alg.name(g).to_string() } else { format!("{}^{}", alg.name(g), e) })
        .collect()
}

fn signed_term(c: &GaussianRational, qexp: i64, factors: Vec<String>) -> (bool, String) {
    let (neg, mut parts) = term_parts(c, qexp);
    parts.extend(factors);
    (neg, if parts.is_empty() { "1".to_string() } else { parts.join("*") })
}

fn by_word(a: &Monomial, b: &Monomial) -> Ordering {
    a.word_key().cmp(&b.word_key())
}

/// Canonical text: one `c*q^k*monomial` term per coefficient, monomials in
/// generator-word order, then increasing powers of `q`.
pub fn format(e: &Element) -> String {
    let alg = e.algebra();
    let mut mons: Vec<(&Monomial, &ScalarQ)> = e.terms().collect();
    mons.sort_by(|x, y| by_word(x.0, y.0));
    let terms: Vec<(bool, String)> = mons
        .into_iter()
        .flat_map(|(m, c)| {
            let factors = monomial_parts(m, alg);
            c.terms().map(move |(k, g)| signed_term(g, k, factors.clone())).collect::<Vec<_>>()
        })
        .collect();
    join_signed(&terms)
}

/// Like [`format`], with tensor factors joined by `(x)`.
pub fn format_tensor(t: &TensorElement) -> String {
    let space = t.space();
    let mut rows: Vec<(Vec<Monomial>, &ScalarQ)> = t.terms().collect();
    rows.sort_by(|x, y| {
        x.0.iter().zip(&y.0).map(|(a, b)| by_word(a, b)).find(|o| *o != Ordering::Equal).unwrap_or(Ordering::Equal)
    });
    let terms: Vec<(bool, String)> = rows
        .into_iter()
        .flat_map(|(parts, c)| {
            let body: Vec<String> = parts
                .iter()
                .enumerate()
                .map(|(slot, m)| {
                    let f = monomial_parts(m, space.factor(slot));
                    if f.is_empty() { "1".to_string() } else { f.join("*") }
                })
                .collect();
            let body = body.join(" (x) ");
            c.terms()
                .map(move |(k, g)| {
                    let (neg, parts) = term_parts(g, k);
                    let mut s = parts.join("*");
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(&body);
                    (neg, s)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    join_signed(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(n: usize, localized: bool) -> TriangularAlgebra {
        TriangularAlgebra::build(n, localized).unwrap()
    }

    #[test]
    fn parses_relations_to_zero() {
        let t = tri(2, false);
        assert!(parse("a[2,2]*a[1,2] - q*a[1,2]*a[2,2]", &t).unwrap().is_zero());
        assert_eq!(parse("1", &t).unwrap(), t.one());
        let u = tri(2, true);
        assert!(parse("t*det - 1", &u).unwrap().is_zero());
        assert_eq!(parse("z", &u).unwrap(), parse("a[1,1]*a[2,2]^-1", &u).unwrap());
    }

    #[test]
    fn formats_examples() {
        let u = tri(2, true);
        let s = u.antipode(&u.gen(1, 2).unwrap()).unwrap();
        assert_eq!(format(&s), "- a[1,1]^-1*a[1,2]*a[2,2]^-1");
        assert_eq!(format(&Element::zero(u.algebra())), "0");
        let t3 = tri(3, false);
        assert_eq!(format(&t3.b_element(1, 3).unwrap()), "q^2*a[1,2]*a[2,3] - q^3*a[1,3]*a[2,2]");
    }

    #[test]
    fn gaussian_coefficients_round_trip() {
        let t = tri(2, true);
        for text in ["(1/2 - 3*i)*q^-2*a[1,1]^-2 + i*a[1,2]", "-i*q + 2/3", "- q^2*a[2,2]^3 + (1+q)^2*a[1,2]"] {
            let e = parse(text, &t).unwrap();
            assert_eq!(parse(&format(&e), &t).unwrap(), e, "{text}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let t = tri(2, false);
        assert!(matches!(parse("a[1,2] +", &t), Err(Error::Parse { pos: 8, .. })));
        assert!(matches!(parse("a[3,3]", &t), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("a[1,1]^-1", &t), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse("2 t", &tri(2, true)), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("t", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse("z", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse("x", &t), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("1/0", &t), Err(Error::Parse { .. })));
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("q^-1 + 1").unwrap(), &ScalarQ::q_pow(-1) + &ScalarQ::one());
        assert_eq!(parse_scalar("(2/3)^-1").unwrap(), ScalarQ::from_ratio(3, 2));
        assert!(parse_scalar("a[1,1]").is_err());
        assert!(parse_scalar("(1+q)^-1").is_err());
    }
}
