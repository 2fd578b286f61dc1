//! Exhaustive verification suites for the bialgebra and Hopf structure.
//!
//! Every suite returns a [`CheckReport`]; a failing report carries the
//! first identity that did not hold together with both sides.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::Arc;

use serde::Serialize;

use crate::coeff::ScalarQ;
use crate::error::{Error, Result};
use crate::qalgebra::{
    is_point, point_violation, Element, Linearity, Monomial, MorphismSpec, Multiplicativity, QAlgebra,
    TensorElement, TensorSpace,
};
use crate::random::{random_element, random_unit_scalar, rng};
use crate::triangular::{Side, TriangularAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub left: String,
    pub right: String,
}

impl From<Error> for Witness {
    fn from(e: Error) -> Self {
        Witness { label: "computation failed".into(), left: e.to_string(), right: String::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub n: usize,
    pub passed: bool,
    /// Number of identities verified before the first failure.
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl CheckReport {
    fn from_outcome(name: &str, n: usize, outcome: std::result::Result<usize, (usize, Witness)>) -> Self {
        match outcome {
            Ok(checked) => Self { name: name.into(), n, passed: true, checked, witness: None },
            Err((checked, w)) => Self { name: name.into(), n, passed: false, checked, witness: Some(w) },
        }
    }

    /// One line: `name n=.. PASS (k identities)` or the failing identity.
    pub fn summary(&self) -> String {
        match &self.witness {
            None => format!("{} n={} PASS ({} identities)", self.name, self.n, self.checked),
            Some(w) => format!("{} n={} FAIL at {}: {} != {}", self.name, self.n, w.label, w.left, w.right),
        }
    }
}

/// Counts verified identities and stops at the first failure.
struct Tally {
    count: usize,
}

type Step<T = ()> = std::result::Result<T, (usize, Witness)>;

impl Tally {
    fn new() -> Self {
        Self { count: 0 }
    }

    fn eq<T: PartialEq + Display>(&mut self, label: impl FnOnce() -> String, left: &T, right: &T) -> Step {
        if left == right {
            self.count += 1;
            Ok(())
        } else {
            Err((self.count, Witness { label: label(), left: left.to_string(), right: right.to_string() }))
        }
    }

    fn holds(&mut self, label: impl FnOnce() -> String, ok: bool, detail: impl FnOnce() -> (String, String)) -> Step {
        if ok {
            self.count += 1;
            Ok(())
        } else {
            let (left, right) = detail();
            Err((self.count, Witness { label: label(), left, right }))
        }
    }

    fn try_<T>(&self, r: Result<T>) -> Step<T> {
        r.map_err(|e| (self.count, Witness::from(e)))
    }

    fn done(self) -> Step<usize> {
        Ok(self.count)
    }
}

/// The structure maps under test. Starts from the genuine coproduct and
/// `b[i,j]`; the `with_*` methods install deliberately wrong values for
/// negative controls.
#[derive(Clone, Debug)]
pub struct Structure {
    tri: TriangularAlgebra,
    delta: MorphismSpec,
    b: BTreeMap<(usize, usize), Element>,
}

impl Structure {
    pub fn standard(n: usize, localized: bool) -> Result<Self> {
        let tri = TriangularAlgebra::build(n, localized)?;
        let delta = tri.delta_spec().clone();
        let mut b = BTreeMap::new();
        for p in tri.indices() {
            b.insert((p.i, p.j), tri.b_element(p.i, p.j)?);
        }
        Ok(Self { tri, delta, b })
    }

    pub fn tri(&self) -> &TriangularAlgebra {
        &self.tri
    }

    pub fn delta(&self) -> &MorphismSpec {
        &self.delta
    }

    pub fn b(&self, i: usize, j: usize) -> &Element {
        &self.b[&(i, j)]
    }

    /// Replaces `Delta(a[i,j])`.
    pub fn with_coproduct_image(mut self, i: usize, j: usize, image: &TensorElement) -> Result<Self> {
        let g = self.tri.gen_index(i, j)?;
        self.delta = self.delta.with_image_unchecked(g, image.value().clone())?;
        Ok(self)
    }

    /// Replaces `b[i,j]`, and with it `S(a[i,j]) = t b[i,j]`.
    pub fn with_b(mut self, i: usize, j: usize, value: Element) -> Result<Self> {
        self.tri.gen_index(i, j)?;
        self.b.insert((i, j), value);
        Ok(self)
    }

    pub fn coproduct(&self, e: &Element) -> Result<TensorElement> {
        self.tri.square().wrap(self.delta.apply(e)?)
    }

    /// The antimultiplicative map `a[i,j] -> t b[i,j]`, unchecked so that
    /// wrong `b` values can be tested.
    pub fn antipode_spec(&self) -> Result<MorphismSpec> {
        let t = self.tri.tgen()?;
        let images = self.tri.indices().iter().map(|p| &t * &self.b[&(p.i, p.j)]).collect();
        let alg = self.tri.algebra();
        MorphismSpec::new_unchecked(alg, alg, images, Multiplicativity::Antimorphism, Linearity::Linear)
    }
}

/// Generators, followed by the inverses of the diagonal generators in
/// the localized case.
fn test_elements(tri: &TriangularAlgebra) -> Result<Vec<Element>> {
    let mut out: Vec<Element> = tri.indices().iter().map(|p| tri.gen(p.i, p.j)).collect::<Result<_>>()?;
    if tri.is_localized() {
        for k in 1..=tri.n() {
            out.push(tri.gen(k, k)?.inverse()?);
        }
    }
    Ok(out)
}

fn counit_of_monomial(tri: &TriangularAlgebra, m: &Monomial) -> Result<ScalarQ> {
    tri.counit(&Element::monomial(tri.algebra(), m.clone(), ScalarQ::one())?)
}

fn bialgebra_steps(s: &Structure) -> Step<usize> {
    let mut t = Tally::new();
    let tri = s.tri();
    let alg = tri.algebra();
    let id = MorphismSpec::identity(alg);
    let (sq, cube) = (tri.square(), tri.cube());
    let left = t.try_(MorphismSpec::tensor(&[s.delta(), &id], sq, cube, &[0, 2]))?;
    let right = t.try_(MorphismSpec::tensor(&[&id, s.delta()], sq, cube, &[0, 1]))?;

    let violation = point_violation(s.delta().images(), alg, false);
    t.holds(|| "Delta is multiplicative".into(), violation.is_none(), || pair_detail(alg, violation))?;
    let violation = point_violation(tri.counit_spec().images(), alg, false);
    t.holds(|| "epsilon is multiplicative".into(), violation.is_none(), || pair_detail(alg, violation))?;

    for g in t.try_(test_elements(tri))? {
        let d = t.try_(s.coproduct(&g))?;
        let l = t.try_(cube.wrap(t.try_(left.apply(d.value()))?))?;
        let r = t.try_(cube.wrap(t.try_(right.apply(d.value()))?))?;
        t.eq(|| format!("coassociativity on {g}"), &l, &r)?;
        let e1 = t.try_(d.contract(0, |m| counit_of_monomial(tri, m)))?;
        t.eq(|| format!("(eps (x) id) Delta({g})"), &e1, &g)?;
        let e2 = t.try_(d.contract(1, |m| counit_of_monomial(tri, m)))?;
        t.eq(|| format!("(id (x) eps) Delta({g})"), &e2, &g)?;
    }
    t.done()
}

fn pair_detail(alg: &QAlgebra, v: Option<(usize, usize)>) -> (String, String) {
    match v {
        Some((a, b)) => (alg.name(a).to_string(), alg.name(b).to_string()),
        None => (String::new(), String::new()),
    }
}

/// Bialgebra axioms for a (possibly mutated) structure.
pub fn bialgebra_report(s: &Structure) -> CheckReport {
    CheckReport::from_outcome("bialgebra", s.tri().n(), bialgebra_steps(s))
}

fn merged(name: &str, n: usize, parts: Vec<CheckReport>) -> CheckReport {
    let checked = parts.iter().map(|p| p.checked).sum();
    match parts.into_iter().find(|p| !p.passed) {
        Some(fail) => CheckReport { name: name.into(), n, passed: false, checked, witness: fail.witness },
        None => CheckReport { name: name.into(), n, passed: true, checked, witness: None },
    }
}

fn failed(name: &str, n: usize, e: Error) -> CheckReport {
    CheckReport::from_outcome(name, n, Err((0, Witness::from(e))))
}

/// Coassociativity, counit laws, and multiplicativity of `Delta` and
/// `epsilon` on `T_q(n)` and `UT_q(n)`.
pub fn check_bialgebra(n: usize) -> CheckReport {
    let parts = [false, true]
        .iter()
        .map(|loc| match Structure::standard(n, *loc) {
            Ok(s) => bialgebra_report(&s),
            Err(e) => failed("bialgebra", n, e),
        })
        .collect();
    merged("bialgebra", n, parts)
}

fn antipode_steps(s: &Structure) -> Step<usize> {
    let mut t = Tally::new();
    let tri = s.tri();
    let a = |i: usize, j: usize| tri.gen(i, j);
    // T_q(n) level: sum_k b_ik a_kj = det delta_ij = sum_k q^{2(k-j)} a_ik b_kj
    let det = tri.qdet();
    for p in tri.indices() {
        let (i, j) = (p.i, p.j);
        let expected = if i == j { det.clone() } else { Element::zero(tri.algebra()) };
        let mut left = Element::zero(tri.algebra());
        let mut right = Element::zero(tri.algebra());
        for k in i..=j {
            left = &left + &(s.b(i, k) * &t.try_(a(k, j))?);
            right = &right + &(&t.try_(a(i, k))? * s.b(k, j)).shift_q(2 * (k as i64 - j as i64));
        }
        t.eq(|| format!("sum_k b[{i},k] a[k,{j}]"), &left, &expected)?;
        t.eq(|| format!("sum_k q^(2(k-{j})) a[{i},k] b[k,{j}]"), &right, &expected)?;
    }
    if !tri.is_localized() {
        return t.done();
    }
    let spec = t.try_(s.antipode_spec())?;
    for p in tri.indices() {
        let (i, j) = (p.i, p.j);
        let eps = Element::scalar(tri.algebra(), if i == j { ScalarQ::one() } else { ScalarQ::zero() });
        let mut left = Element::zero(tri.algebra());
        let mut right = Element::zero(tri.algebra());
        for k in i..=j {
            left = &left + &(&t.try_(spec.apply(&t.try_(a(i, k))?))? * &t.try_(a(k, j))?);
            right = &right + &(&t.try_(a(i, k))? * &t.try_(spec.apply(&t.try_(a(k, j))?))?);
        }
        t.eq(|| format!("sum_k S(a[{i},k]) a[k,{j}]"), &left, &eps)?;
        t.eq(|| format!("sum_k a[{i},k] S(a[k,{j}])"), &right, &eps)?;
    }
    t.done()
}

pub fn antipode_report(s: &Structure) -> CheckReport {
    CheckReport::from_outcome("antipode", s.tri().n(), antipode_steps(s))
}

/// `sum_k S(a_ik) a_kj = epsilon(a_ij) = sum_k a_ik S(a_kj)` in `UT_q(n)`
/// and both orientations of `sum b a = det delta` in `T_q(n)`.
pub fn check_antipode(n: usize) -> CheckReport {
    let parts = [false, true]
        .iter()
        .map(|loc| match Structure::standard(n, *loc) {
            Ok(s) => antipode_report(&s),
            Err(e) => failed("antipode", n, e),
        })
        .collect();
    merged("antipode", n, parts)
}

fn s_squared_steps(n: usize) -> Step<usize> {
    let mut t = Tally::new();
    let tri = t.try_(TriangularAlgebra::build(n, true))?;
    for g in t.try_(test_elements(&tri))? {
        let once = t.try_(tri.antipode(&g))?;
        let twice = t.try_(tri.antipode(&once))?;
        t.eq(|| format!("S^2({g})"), &twice, &g)?;
    }
    t.done()
}

/// `S^2 = id` on the generators of `UT_q(n)` and the inverse diagonals.
pub fn check_s_squared(n: usize) -> CheckReport {
    CheckReport::from_outcome("s-squared", n, s_squared_steps(n))
}

fn m_diag(k: usize, i: usize, j: usize) -> i64 {
    if k < i || k > j {
        0
    } else if k == i || k == j {
        1
    } else {
        2
    }
}

fn m_akl(k: usize, l: usize, i: usize, j: usize) -> i64 {
    if l < i || k > j {
        0
    } else if l == i || k == j {
        1
    } else {
        2
    }
}

fn m_bkl(k: usize, l: usize, i: usize, j: usize) -> i64 {
    if (k == i && l < j) || (i < k && l == j) {
        1
    } else if i < k && l < j {
        2
    } else if (i == k && j < l) || (k < i && l == j) {
        -1
    } else if k < i && j < l {
        -2
    } else {
        0
    }
}

fn commutation_steps(n: usize) -> Step<usize> {
    let mut t = Tally::new();
    let tri = t.try_(TriangularAlgebra::build(n, false))?;
    let sigma = t.try_(tri.sigma_spec())?;
    let a = |i: usize, j: usize| tri.gen(i, j).expect("index in range");
    let b = |i: usize, j: usize| tri.b_element(i, j).expect("index in range");
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect();
    let bs: BTreeMap<(usize, usize), Element> =
        (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).map(|(i, j)| ((i, j), b(i, j))).collect();
    let sb: BTreeMap<(usize, usize), Element> =
        bs.iter().map(|(k, v)| Ok((*k, sigma.apply(v)?))).collect::<Result<_>>().map_err(|e| (0, e.into()))?;

    for &(i, j) in &pairs {
        for k in 1..=n {
            let m = m_diag(k, i, j);
            let l1 = &a(k, k) * &bs[&(i, j)];
            let r1 = (&bs[&(i, j)] * &a(k, k)).shift_q(m);
            t.eq(|| format!("a[{k},{k}] b[{i},{j}] (m={m})"), &l1, &r1)?;
            let l2 = &bs[&(k, k)] * &sb[&(i, j)];
            let r2 = (&bs[&(i, j)] * &bs[&(k, k)]).shift_q(-m);
            t.eq(|| format!("b[{k},{k}] sigma(b[{i},{j}]) (m={m})"), &l2, &r2)?;
        }
        for &(k, l) in &pairs {
            let m = m_akl(k, l, i, j);
            let lhs = &a(k, l) * &bs[&(i, j)];
            let rhs = (&bs[&(i, j)] * &t.try_(sigma.apply(&a(k, l)))?).shift_q(m);
            t.eq(|| format!("a[{k},{l}] b[{i},{j}] (m={m})"), &lhs, &rhs)?;
            let m = m_bkl(k, l, i, j);
            let lhs = &bs[&(k, l)] * &sb[&(i, j)];
            let rhs = (&bs[&(i, j)] * &sb[&(k, l)]).shift_q(-m);
            t.eq(|| format!("b[{k},{l}] sigma(b[{i},{j}]) (m={m})"), &lhs, &rhs)?;
        }
        // a_ij prod_{x in X} a_xx = q^m (prod) a_ij
        for mask in 0u32..(1 << n) {
            let xs: Vec<usize> = (1..=n).filter(|x| mask >> (x - 1) & 1 == 1).collect();
            let prod = xs.iter().fold(tri.one(), |acc, x| &acc * &a(*x, *x));
            let inside = xs.iter().filter(|x| i < **x && **x < j).count() as i64;
            let ends = xs.iter().filter(|x| **x == i || **x == j).count() as i64;
            let m = -2 * inside - ends;
            let lhs = &a(i, j) * &prod;
            let rhs = (&prod * &a(i, j)).shift_q(m);
            t.eq(|| format!("a[{i},{j}] prod_X a[x,x], X={xs:?} (m={m})"), &lhs, &rhs)?;
        }
    }
    t.done()
}

/// The four commutation tables between `a`, `b` and `sigma(b)`, plus the
/// rule for moving `a[i,j]` past products of diagonal generators; every
/// admissible index combination.
pub fn check_commutation_lemmas(n: usize) -> CheckReport {
    CheckReport::from_outcome("commutation", n, commutation_steps(n))
}

fn flip(sq: &Arc<TensorSpace>) -> Result<MorphismSpec> {
    Ok(MorphismSpec::slot_permutation(sq, &[1, 0])?.1)
}

fn symmetry_steps(n: usize, localized: bool) -> Step<usize> {
    let mut t = Tally::new();
    let tri = t.try_(TriangularAlgebra::build(n, localized))?;
    let sq = tri.square().clone();
    let tau = t.try_(flip(&sq))?;
    let sigma = t.try_(tri.sigma_spec())?;
    let rho = t.try_(tri.rho_spec())?;
    let gamma = t.try_(tri.gamma_spec())?;
    let ss = t.try_(MorphismSpec::tensor(&[&sigma, &sigma], &sq, &sq, &[0, 1]))?;
    let rr = t.try_(MorphismSpec::tensor(&[&rho, &rho], &sq, &sq, &[0, 1]))?;
    let gg = t.try_(MorphismSpec::tensor(&[&gamma, &gamma], &sq, &sq, &[0, 1]))?;
    let wrap = |e: Element| sq.wrap(e);

    for g in t.try_(test_elements(&tri))? {
        let d = t.try_(tri.coproduct(&g))?;
        // sigma is a bialgebra map
        let l = t.try_(wrap(t.try_(ss.apply(d.value()))?))?;
        let r = t.try_(tri.coproduct(&t.try_(sigma.apply(&g))?))?;
        t.eq(|| format!("(sigma (x) sigma) Delta({g})"), &l, &r)?;
        let e = t.try_(tri.counit(&t.try_(sigma.apply(&g))?))?;
        t.eq(|| format!("epsilon(sigma({g}))"), &e, &t.try_(tri.counit(&g))?)?;
        // rho and gamma reverse the coproduct
        for (name, spec, pair) in [("rho", &rho, &rr), ("gamma", &gamma, &gg)] {
            let l = t.try_(wrap(t.try_(pair.apply(d.value()))?))?;
            let dr = t.try_(tri.coproduct(&t.try_(spec.apply(&g))?))?;
            let r = t.try_(wrap(t.try_(tau.apply(dr.value()))?))?;
            t.eq(|| format!("({name} (x) {name}) Delta({g}) = tau Delta {name}({g})"), &l, &r)?;
            let e = t.try_(tri.counit(&t.try_(spec.apply(&g))?))?;
            let base = t.try_(tri.counit(&g))?;
            let expected = if name == "gamma" { base.conj() } else { base };
            t.eq(|| format!("epsilon({name}({g}))"), &e, &expected)?;
        }
        let rr2 = t.try_(rho.apply(&t.try_(rho.apply(&g))?))?;
        t.eq(|| format!("rho^2({g})"), &rr2, &g)?;
        if localized {
            for (name, spec) in [("rho", &rho), ("gamma", &gamma)] {
                let l = t.try_(spec.apply(&t.try_(tri.antipode(&g))?))?;
                let r = t.try_(tri.antipode(&t.try_(spec.apply(&g))?))?;
                t.eq(|| format!("{name} S({g}) = S {name}({g})"), &l, &r)?;
            }
        }
    }
    if n % 2 == 0 {
        let theta = tri.theta_spec();
        t.holds(
            || "theta images satisfy the relations".into(),
            theta.as_ref().map(|th| is_point(th.images(), tri.algebra())).unwrap_or(false),
            || (format!("{:?}", theta.as_ref().err()), String::new()),
        )?;
    }
    t.done()
}

/// `sigma` is a bialgebra automorphism; `rho` and `gamma` are coalgebra
/// antiautomorphisms commuting with `S`; `theta` respects the relations.
pub fn check_morphism_symmetries(n: usize) -> CheckReport {
    let parts = [false, true]
        .iter()
        .map(|loc| CheckReport::from_outcome("symmetries", n, symmetry_steps(n, *loc)))
        .collect();
    merged("symmetries", n, parts)
}

fn star_steps(n: usize, seed: u64, samples: usize) -> Step<usize> {
    let mut t = Tally::new();
    let tri = t.try_(TriangularAlgebra::build(n, true))?;
    let alg = tri.algebra().clone();
    let star = t.try_(tri.star_spec())?;
    t.holds(
        || "star is antilinear and antimultiplicative".into(),
        star.linearity() == Linearity::Antilinear && star.multiplicativity() == Multiplicativity::Antimorphism,
        || (format!("{:?}", star.linearity()), format!("{:?}", star.multiplicativity())),
    )?;
    let sq = tri.square().clone();
    let ss = t.try_(MorphismSpec::tensor(&[&star, &star], &sq, &sq, &[0, 1]))?;
    let star_s = t.try_(MorphismSpec::compose(&star, t.try_(tri.antipode_spec())?))?;

    let mut r = rng(seed);
    let mut elements = t.try_(test_elements(&tri))?;
    elements.extend((0..samples).map(|_| random_element(&mut r, &alg, 4)));
    for x in &elements {
        let sx = t.try_(star.apply(x))?;
        t.eq(|| format!("**({x})"), &t.try_(star.apply(&sx))?, x)?;
        let l = t.try_(tri.coproduct(&sx))?;
        let rr = t.try_(sq.wrap(t.try_(ss.apply(t.try_(tri.coproduct(x))?.value()))?))?;
        t.eq(|| format!("Delta(*({x}))"), &l, &rr)?;
        let twice = t.try_(star_s.apply(&t.try_(star_s.apply(x))?))?;
        t.eq(|| format!("(* S)^2({x})"), &twice, x)?;
        let c = random_unit_scalar(&mut r);
        let l = t.try_(star.apply(&x.scale(&c)))?;
        t.eq(|| format!("*(c {x})"), &l, &sx.scale(&c.conj()))?;
    }
    for pair in elements.windows(2).take(samples.max(1)) {
        let (x, y) = (&pair[0], &pair[1]);
        let l = t.try_(star.apply(&(x * y)))?;
        let r = &t.try_(star.apply(y))? * &t.try_(star.apply(x))?;
        t.eq(|| format!("*(({x})({y}))"), &l, &r)?;
    }
    let ia12 = t.try_(tri.gen(1, 2))?.scale(&ScalarQ::i());
    let l = t.try_(star.apply(&ia12))?;
    let r = t.try_(star.apply(&t.try_(tri.gen(1, 2))?))?.scale(&-ScalarQ::i());
    t.eq(|| "(i a[1,2])*".into(), &l, &r)?;
    t.done()
}

/// The Hopf `*`-structure `* = gamma . S` on `UT_q(n)`, on generators and
/// `samples` seeded random elements.
pub fn check_star_with(n: usize, seed: u64, samples: usize) -> CheckReport {
    CheckReport::from_outcome("star", n, star_steps(n, seed, samples))
}

pub fn check_star(n: usize) -> CheckReport {
    check_star_with(n, 0, 20)
}

/// The entries of `AB` with `A = (a[i,j] (x) 1)` and `B` given.
pub fn point_product(tri: &TriangularAlgebra, b_images: &[Element]) -> Result<Vec<Element>> {
    let sq = tri.square();
    let one = tri.one();
    tri.indices()
        .iter()
        .map(|p| {
            let mut acc = Element::zero(sq.combined());
            for k in p.i..=p.j {
                let a = sq.pure(&[&tri.gen(p.i, k)?, &one])?;
                let b = sq.wrap(b_images[tri.gen_index(k, p.j)?].clone())?;
                acc = acc.try_add(a.try_mul(&b)?.value())?;
            }
            Ok(acc)
        })
        .collect()
}

pub fn point_product_report(tri: &TriangularAlgebra, b_images: &[Element]) -> CheckReport {
    let outcome = (|| {
        let mut t = Tally::new();
        let ab = t.try_(point_product(tri, b_images))?;
        let v = point_violation(&ab, tri.algebra(), false);
        t.holds(|| "AB is a point".into(), v.is_none(), || pair_detail(tri.algebra(), v))?;
        t.done()
    })();
    CheckReport::from_outcome("point-product", tri.n(), outcome)
}

/// `B = (1 (x) a[i,j])` in `T_q(n) (x) T_q(n)`.
pub fn standard_b_images(tri: &TriangularAlgebra) -> Result<Vec<Element>> {
    let sq = tri.square();
    let one = tri.one();
    tri.indices().iter().map(|p| Ok(sq.pure(&[&one, &tri.gen(p.i, p.j)?])?.into_value())).collect()
}

/// `AB` is a `T_q(n) (x) T_q(n)`-point for `A = (a (x) 1)`, `B = (1 (x) a)`.
pub fn check_point_product(n: usize) -> CheckReport {
    match TriangularAlgebra::build(n, false).and_then(|tri| Ok((standard_b_images(&tri)?, tri))) {
        Ok((b, tri)) => point_product_report(&tri, &b),
        Err(e) => failed("point-product", n, e),
    }
}

fn determinant_steps(n: usize, seed: u64) -> Step<usize> {
    let mut t = Tally::new();
    let tri = t.try_(TriangularAlgebra::build(n, false))?;
    let det = tri.qdet();
    let sigma = t.try_(tri.sigma_spec())?;
    let sigma_inv = t.try_(tri.sigma_inverse_spec())?;
    let rho = t.try_(tri.rho_spec())?;
    for p in tri.indices() {
        let (i, j) = (p.i, p.j);
        let a = t.try_(tri.gen(i, j))?;
        t.eq(|| format!("det a[{i},{j}]"), &(&det * &a), &(&a * &det).shift_q(2 * (j as i64 - i as i64)))?;
        let b = t.try_(tri.b_element(i, j))?;
        let rb = t.try_(tri.b_element(n + 1 - j, n + 1 - i))?;
        t.eq(|| format!("rho(b[{i},{j}])"), &t.try_(rho.apply(&b))?, &rb)?;
        t.eq(|| format!("sigma(b[{i},{j}])"), &t.try_(sigma.apply(&b))?, &b.shift_q(2 * (i as i64 - j as i64)))?;
        t.eq(|| format!("det b[{i},{j}]"), &(&det * &b), &(&t.try_(sigma_inv.apply(&b))? * &det))?;
    }
    let mut r = rng(seed);
    for _ in 0..10 {
        let x = random_element(&mut r, tri.algebra(), 4);
        t.eq(|| format!("det ({x})"), &(&det * &x), &(&t.try_(sigma_inv.apply(&x))? * &det))?;
    }
    t.done()
}

/// `det a_ij = q^{2(j-i)} a_ij det`, `det b = sigma^-1(b) det`, and the
/// action of `rho`, `sigma` on `b[i,j]`.
pub fn check_determinant(n: usize) -> CheckReport {
    CheckReport::from_outcome("determinant", n, determinant_steps(n, 0))
}

fn recurrence_steps(n: usize) -> Step<usize> {
    let mut t = Tally::new();
    let tri = t.try_(TriangularAlgebra::build(n, true))?;
    for i in 1..=n {
        for j in (i + 1)..=n {
            let b = t.try_(tri.b_element(i, j))?;
            for side in [Side::Left, Side::Right] {
                let r = t.try_(tri.b_recurrence(i, j, side))?;
                t.eq(|| format!("{side:?} recurrence for b[{i},{j}]"), &r, &b)?;
            }
            // the variant with a_ii^-1 to the right of b_kj
            let inv = t.try_(t.try_(tri.gen(i, i))?.inverse())?;
            let mut alt = Element::zero(tri.algebra());
            for k in (i + 1)..=j {
                let c = ScalarQ::from_integer(-1).shift(2 * (k - i) as i64 - 1);
                let term = &(&t.try_(tri.gen(i, k))? * &t.try_(tri.b_element(k, j))?) * &inv;
                alt = &alt + &term.scale(&c);
            }
            t.eq(|| format!("left recurrence with a[{i},{i}]^-1 last, b[{i},{j}]"), &alt, &b)?;
        }
    }
    t.done()
}

/// Left and right recurrences for `b[i,j]` agree with the chain sums.
pub fn check_b_recurrences(n: usize) -> CheckReport {
    CheckReport::from_outcome("b-recurrence", n, recurrence_steps(n))
}

fn coaction_steps(n: usize) -> Step<usize> {
    let mut t = Tally::new();
    let tri = t.try_(TriangularAlgebra::build(n, false))?;
    let an = Arc::new(QAlgebra::quantum_affine_space(n, "x"));
    let space = TensorSpace::new(vec![tri.algebra().clone(), an.clone()]);
    let x = |k: usize| Element::generator(&an, k - 1);
    let build = |reflect: bool| -> Result<Vec<TensorElement>> {
        (1..=n)
            .map(|i| {
                let mut acc = space.wrap(Element::zero(space.combined()))?;
                for j in i..=n {
                    let a = if reflect { tri.gen(n + 1 - j, n + 1 - i)? } else { tri.gen(i, j)? };
                    acc = acc.try_add(&space.pure(&[&a, &x(j)])?)?;
                }
                Ok(acc)
            })
            .collect()
    };
    for (name, xs) in [("x'", t.try_(build(false))?), ("x''", t.try_(build(true))?)] {
        for i in 1..=n {
            for j in (i + 1)..=n {
                let l = &xs[j - 1] * &xs[i - 1];
                let r = (&xs[i - 1] * &xs[j - 1]).scale(&ScalarQ::q_pow(1));
                t.eq(|| format!("{name}_{j} {name}_{i} = q {name}_{i} {name}_{j}"), &l, &r)?;
            }
        }
    }
    t.done()
}

/// `x'_i = sum_j a_ij (x) x_j` and its reflected form satisfy the
/// relations of `A_n(q)` in `T_q(n) (x) A_n(q)`.
pub fn check_coaction(n: usize) -> CheckReport {
    CheckReport::from_outcome("coaction", n, coaction_steps(n))
}

pub const SUITES: [&str; 10] = [
    "bialgebra",
    "antipode",
    "s-squared",
    "commutation",
    "symmetries",
    "star",
    "point-product",
    "determinant",
    "b-recurrence",
    "coaction",
];

/// Runs a suite by name. `seed` drives the random elements of `star`.
pub fn run_suite(name: &str, n: usize, seed: u64) -> Result<CheckReport> {
    Ok(match name {
        "bialgebra" => check_bialgebra(n),
        "antipode" => check_antipode(n),
        "s-squared" => check_s_squared(n),
        "commutation" => check_commutation_lemmas(n),
        "symmetries" => check_morphism_symmetries(n),
        "star" => check_star_with(n, seed, 20),
        "point-product" => check_point_product(n),
        "determinant" => CheckReport::from_outcome("determinant", n, determinant_steps(n, seed)),
        "b-recurrence" => check_b_recurrences(n),
        "coaction" => check_coaction(n),
        other => return Err(Error::Invalid(format!("unknown suite '{other}'"))),
    })
}

/// Negative controls: each returns the report of a suite run on a
/// deliberately broken structure; all of them must fail.
pub fn negative_controls() -> Result<Vec<(String, CheckReport)>> {
    let mut out = Vec::new();

    let s = Structure::standard(2, false)?;
    let a12 = s.tri().gen(1, 2)?;
    let bad = s.tri().square().pure(&[&a12, &a12])?;
    let mutated = s.with_coproduct_image(1, 2, &bad)?;
    out.push(("Delta(a[1,2]) = a[1,2] (x) a[1,2]".to_string(), bialgebra_report(&mutated)));

    let s = Structure::standard(2, true)?;
    let flipped = -s.b(1, 2);
    let mutated = s.with_b(1, 2, flipped)?;
    out.push(("b[1,2] with its sign flipped".to_string(), antipode_report(&mutated)));

    let tri = TriangularAlgebra::build(2, false)?;
    let mut b = standard_b_images(&tri)?;
    let sq = tri.square();
    b[tri.gen_index(1, 2)?] = sq.pure(&[&tri.one(), &tri.gen(1, 1)?])?.into_value();
    out.push(("B[1,2] = 1 (x) a[1,1]".to_string(), point_product_report(&tri, &b)));
    Ok(out)
}
