use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Presentation of a q-commutative algebra: generators `x_0 .. x_{N-1}`
/// with `x_a x_b = q^{M[a][b]} x_b x_a`, optionally localized at some of
/// the generators.
///
/// `M` is antisymmetric with zero diagonal. The normal form of a monomial
/// lists generators in presentation order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QAlgebra {
    names: Vec<String>,
    invertible: Vec<bool>,
    #[serde(rename = "m")]
    comm: Vec<Vec<i64>>,
}

impl QAlgebra {
    pub fn new(names: Vec<String>, invertible: Vec<bool>, comm: Vec<Vec<i64>>) -> Result<Self> {
        let n = names.len();
        if invertible.len() != n || comm.len() != n || comm.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid("presentation dimensions disagree".into()));
        }
        for a in 0..n {
            if comm[a][a] != 0 {
                return Err(Error::Invalid(format!("nonzero diagonal entry at {a}")));
            }
            for b in 0..a {
                if comm[a][b] != -comm[b][a] {
                    return Err(Error::Invalid(format!("matrix not antisymmetric at ({a}, {b})")));
                }
            }
        }
        Ok(Self { names, invertible, comm })
    }

    /// The ground field as an algebra with no generators.
    pub fn ground() -> Self {
        Self { names: Vec::new(), invertible: Vec::new(), comm: Vec::new() }
    }

    /// `A_N(q)`: `x_a x_b = q x_b x_a` whenever `a > b`.
    pub fn quantum_affine_space(n: usize, prefix: &str) -> Self {
        let comm = (0..n)
            .map(|a| (0..n).map(|b| (a > b) as i64 - (a < b) as i64).collect())
            .collect();
        Self {
            names: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
            invertible: vec![false; n],
            comm,
        }
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn invertible(&self) -> &[bool] {
        &self.invertible
    }

    pub fn is_invertible(&self, gen: usize) -> bool {
        self.invertible[gen]
    }

    pub fn comm(&self) -> &[Vec<i64>] {
        &self.comm
    }

    /// `e` with `x_a x_b = q^e x_b x_a`.
    pub fn comm_exp(&self, a: usize, b: usize) -> i64 {
        self.comm[a][b]
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The opposite algebra: same generators, `M` negated.
    pub fn opposite(&self) -> Self {
        Self {
            names: self.names.clone(),
            invertible: self.invertible.clone(),
            comm: self.comm.iter().map(|r| r.iter().map(|v| -v).collect()).collect(),
        }
    }

    pub fn check_admissible(&self, m: &Monomial) -> Result<()> {
        if m.len() != self.ngens() {
            return Err(Error::Invalid(format!(
                "monomial has {} exponents, algebra has {} generators",
                m.len(),
                self.ngens()
            )));
        }
        for (g, e) in m.exps().iter().enumerate() {
            if *e < 0 && !self.invertible[g] {
                return Err(Error::InadmissibleMonomial(self.names[g].clone()));
            }
        }
        Ok(())
    }
}

pub(crate) fn same_algebra(a: &Arc<QAlgebra>, b: &Arc<QAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector of a normal-form monomial `x_0^{e_0} ... x_{N-1}^{e_{N-1}}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Self {
        Self(exps)
    }

    pub fn one(ngens: usize) -> Self {
        Self(vec![0; ngens])
    }

    pub fn generator(ngens: usize, gen: usize) -> Self {
        let mut v = vec![0; ngens];
        v[gen] = 1;
        Self(v)
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn checked_neg(&self) -> Result<Self> {
        self.0
            .iter()
            .map(|e| e.checked_neg().ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// Key ordering monomials by the word they spell: generators in
    /// presentation order, shorter prefixes first.
    pub(crate) fn word_key(&self) -> Vec<(usize, i64)> {
        self.0.iter().enumerate().filter(|(_, e)| **e != 0).map(|(g, e)| (g, *e)).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `x^alpha * x^beta = q^s * x^(alpha + beta)`, returning `(s, alpha + beta)`.
///
/// Moving `x_b^{beta_b}` left past `x_a^{alpha_a}` for `a > b` costs
/// `q^{alpha_a beta_b M[a][b]}`.
pub fn monomial_mul(alpha: &Monomial, beta: &Monomial, alg: &QAlgebra) -> Result<(i64, Monomial)> {
    let n = alg.ngens();
    if alpha.len() != n || beta.len() != n {
        return Err(Error::AlgebraMismatch);
    }
    let mut qpow: i64 = 0;
    for (a, &ea) in alpha.0.iter().enumerate() {
        if ea == 0 {
            continue;
        }
        for (b, &eb) in beta.0.iter().enumerate().take(a) {
            if eb == 0 || alg.comm[a][b] == 0 {
                continue;
            }
            let t = ea
                .checked_mul(eb)
                .and_then(|v| v.checked_mul(alg.comm[a][b]))
                .ok_or(Error::ExponentOverflow)?;
            qpow = qpow.checked_add(t).ok_or(Error::ExponentOverflow)?;
        }
    }
    let gamma = alpha
        .0
        .iter()
        .zip(&beta.0)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow))
        .collect::<Result<Vec<_>>>()?;
    Ok((qpow, Monomial(gamma)))
}
