//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use qtri::autos::{
    g_compose, g_decompose, g_inverse, g_to_endo, hopf_compatible, is_hopf_auto, random_hopf_sextuple,
    random_sextuple, rho_conjugate, sextuple_of, Sextuple,
};
use qtri::deriv::{classify_report, h1_membership_t2, utq2_derivation_table};
use qtri::expr;
use qtri::qalgebra::center_lattice;
use qtri::random::{random_element, rng};
use qtri::structure::{self, CheckReport};
use qtri::{GaussianRational, MorphismSpec, TriIndex, TriangularAlgebra};

type Outcome = Result<String, String>;

fn reports(rs: Vec<CheckReport>) -> Outcome {
    let total: usize = rs.iter().map(|r| r.checked).sum();
    match rs.iter().find(|r| !r.passed) {
        Some(r) => Err(r.summary()),
        None => Ok(format!("{} reports, {} identities", rs.len(), total)),
    }
}

fn over(ns: impl IntoIterator<Item = usize>, f: fn(usize) -> CheckReport) -> Outcome {
    reports(ns.into_iter().map(f).collect())
}

fn centers() -> Outcome {
    for n in 2..=5 {
        let c = center_lattice(TriangularAlgebra::build(n, false).map_err(|e| e.to_string())?.algebra());
        if !c.is_trivial() {
            return Err(format!("T_q({n}) has central generators {:?}", c.generators()));
        }
    }
    let c = center_lattice(TriangularAlgebra::build(2, true).map_err(|e| e.to_string())?.algebra());
    if c.generators() != vec![vec![1, 0, -1]] {
        return Err(format!("UT_q(2) center generators {:?}", c.generators()));
    }
    Ok("T_q(n) trivial for n <= 5, UT_q(2) generated by (1,0,-1)".into())
}

fn derivations() -> Outcome {
    reports(vec![classify_report(3), h1_membership_t2(3)])
}

fn sextuples() -> Outcome {
    let u = TriangularAlgebra::build(2, true).map_err(|e| e.to_string())?;
    let mut r = rng(2024);
    let id = Sextuple::identity();
    for _ in 0..1000 {
        let (a, b, c) = (random_sextuple(&mut r), random_sextuple(&mut r), random_sextuple(&mut r));
        if g_compose(&g_compose(&a, &b), &c) != g_compose(&a, &g_compose(&b, &c)) {
            return Err(format!("associativity fails for {a}, {b}, {c}"));
        }
        if g_compose(&a, &g_inverse(&a)) != id || g_compose(&g_inverse(&a), &a) != id {
            return Err(format!("inverse fails for {a}"));
        }
        let ra = rho_conjugate(&a);
        if rho_conjugate(&ra) != a || rho_conjugate(&g_compose(&a, &b)) != g_compose(&ra, &rho_conjugate(&b)) {
            return Err(format!("rho conjugation fails for {a}, {b}"));
        }
        let (g1, g2, g3) = g_decompose(&a);
        if g_compose(&g1, &g_compose(&g2, &g3)) != a {
            return Err(format!("decomposition fails for {a}"));
        }
    }
    for _ in 0..1000 {
        let (a, b) = (random_sextuple(&mut r), random_sextuple(&mut r));
        let fa = g_to_endo(&u, &a).map_err(|e| e.to_string())?;
        let fb = g_to_endo(&u, &b).map_err(|e| e.to_string())?;
        let composed = MorphismSpec::compose(&fa, &fb).map_err(|e| e.to_string())?;
        let read = sextuple_of(&u, &composed).map_err(|e| e.to_string())?;
        if read.as_ref() != Some(&g_compose(&a, &b)) {
            return Err(format!("composition oracle fails for {a}, {b}"));
        }
    }
    Ok("1000 triples, 1000 composition pairs".into())
}

fn hopf() -> Outcome {
    let u = TriangularAlgebra::build(2, true).map_err(|e| e.to_string())?;
    let mut r = rng(77);
    let mut members = 0;
    for i in 0..500 {
        let s = if i % 2 == 0 { random_sextuple(&mut r) } else { random_hopf_sextuple(&mut r) };
        let direct = hopf_compatible(&u, &s).map_err(|e| e.to_string())?;
        if direct != is_hopf_auto(&s) {
            return Err(format!("membership disagrees with the coproduct check for {s}"));
        }
        members += direct as usize;
    }
    for _ in 0..200 {
        let (a, b) = (random_hopf_sextuple(&mut r), random_hopf_sextuple(&mut r));
        if !is_hopf_auto(&g_compose(&a, &b)) || !is_hopf_auto(&g_inverse(&a)) {
            return Err(format!("Hopf subgroup not closed at {a}, {b}"));
        }
    }
    Ok(format!("500 samples, {members} members"))
}

fn star() -> Outcome {
    reports(vec![structure::check_star_with(2, 0, 200), structure::check_star_with(3, 0, 200)])
}

fn negative_controls() -> Outcome {
    let controls = structure::negative_controls().map_err(|e| e.to_string())?;
    for (name, r) in &controls {
        match &r.witness {
            Some(w) if !r.passed && !w.label.is_empty() => {}
            _ => return Err(format!("control '{name}' was not detected")),
        }
    }
    Ok(format!("{} controls rejected", controls.len()))
}

fn parser() -> Outcome {
    let mut r = rng(13);
    let mut count = 0;
    for n in 2..=4 {
        for localized in [false, true] {
            let tri = TriangularAlgebra::build(n, localized).map_err(|e| e.to_string())?;
            let rounds = if n < 4 { 167 } else { 166 };
            for _ in 0..rounds {
                let e = random_element(&mut r, tri.algebra(), 5);
                let text = expr::format(&e);
                let back = expr::parse(&text, &tri).map_err(|err| format!("{text}: {err}"))?;
                if back != e {
                    return Err(format!("round trip changed {text}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} round trips"))
}

// Criterion 14: an independent evaluation at q = 2. Words in the generators
// are straightened by bubble sort using the defining relations directly.

type Word = Vec<(TriIndex, i64)>;
type Numeric = BTreeMap<Word, BigRational>;

/// `e` with `x_p x_r = q^e x_r x_p`, read off the relations of the algebra.
fn swap_exponent(p: TriIndex, r: TriIndex) -> i64 {
    let forward = |p: TriIndex, r: TriIndex| -> Option<i64> {
        let (j, k) = (p.i, p.j);
        // same column, then same row
        if (r.j == k && r.i < j) || (r.i == j && k < r.j) {
            Some(1)
        } else if r.i < j && k < r.j {
            Some(2)
        } else {
            None
        }
    };
    forward(p, r).or_else(|| forward(r, p).map(|e| -e)).unwrap_or(0)
}

fn two_pow(e: i64) -> BigRational {
    let base = BigRational::from_integer(2.into());
    if e >= 0 {
        (0..e).fold(BigRational::one(), |acc, _| acc * &base)
    } else {
        (0..-e).fold(BigRational::one(), |acc, _| acc / &base)
    }
}

fn straighten(mut letters: Vec<(TriIndex, i64)>) -> (i64, Word) {
    let mut exp = 0;
    let mut changed = true;
    while changed {
        changed = false;
        let mut k = 0;
        while k + 1 < letters.len() {
            let (a, sa) = letters[k];
            let (b, sb) = letters[k + 1];
            if a == b && sa == -sb {
                letters.drain(k..k + 2);
                changed = true;
                continue;
            }
            if (a.i, a.j) > (b.i, b.j) {
                exp += sa * sb * swap_exponent(a, b);
                letters.swap(k, k + 1);
                changed = true;
            }
            k += 1;
        }
    }
    let mut word: Word = Vec::new();
    for (g, s) in letters {
        match word.last_mut() {
            Some((h, e)) if *h == g => *e += s,
            _ => word.push((g, s)),
        }
    }
    word.retain(|(_, e)| *e != 0);
    (exp, word)
}

fn letters(w: &Word) -> Vec<(TriIndex, i64)> {
    w.iter().flat_map(|(g, e)| std::iter::repeat_n((*g, e.signum()), e.unsigned_abs() as usize)).collect()
}

fn numeric_mul(x: &Numeric, y: &Numeric) -> Numeric {
    let mut out = Numeric::new();
    for (wx, cx) in x {
        for (wy, cy) in y {
            let mut l = letters(wx);
            l.extend(letters(wy));
            let (exp, w) = straighten(l);
            *out.entry(w).or_insert_with(BigRational::zero) += cx * cy * two_pow(exp);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn numeric_add(x: &mut Numeric, y: &Numeric) {
    for (w, c) in y {
        *x.entry(w.clone()).or_insert_with(BigRational::zero) += c;
    }
    x.retain(|_, c| !c.is_zero());
}

fn at_two(tri: &TriangularAlgebra, e: &qtri::Element) -> Result<Numeric, String> {
    let q0 = GaussianRational::from_integer(2);
    let mut out = Numeric::new();
    for (m, c) in e.eval_at(&q0).map_err(|err| err.to_string())? {
        if !c.im.is_zero() {
            return Err("unexpected imaginary coefficient".into());
        }
        let word: Word =
            m.exps().iter().enumerate().filter(|(_, x)| **x != 0).map(|(g, x)| (tri.indices()[g], *x)).collect();
        out.insert(word, c.re);
    }
    Ok(out)
}

fn numeric_antipode() -> Outcome {
    let n = 3;
    let tri = TriangularAlgebra::build(n, true).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for i in 1..=n {
        for j in i..=n {
            let expected: Numeric =
                if i == j { [(Word::new(), BigRational::one())].into_iter().collect() } else { Numeric::new() };
            for left in [true, false] {
                let mut independent = Numeric::new();
                let mut symbolic = qtri::Element::zero(tri.algebra());
                for k in i..=j {
                    let s = |a, b| tri.antipode(&tri.gen(a, b).map_err(|e| e.to_string())?).map_err(|e| e.to_string());
                    let g = |a, b| tri.gen(a, b).map_err(|e| e.to_string());
                    let (x, y) = if left { (s(i, k)?, g(k, j)?) } else { (g(i, k)?, s(k, j)?) };
                    numeric_add(&mut independent, &numeric_mul(&at_two(&tri, &x)?, &at_two(&tri, &y)?));
                    symbolic = &symbolic + &(&x * &y);
                }
                let symbolic = at_two(&tri, &symbolic)?;
                if independent != expected || symbolic != expected {
                    let side = if left { "S(a) a" } else { "a S(a)" };
                    return Err(format!("{side} at ({i},{j}): independent {independent:?}, symbolic {symbolic:?}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} entries at q = 2"))
}

struct Criterion {
    number: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { number: 1, name: "bialgebra n=2..4", budget: secs(15), run: || over(2..=4, structure::check_bialgebra) },
        Criterion { number: 2, name: "antipode n=2..4", budget: secs(10), run: || over(2..=4, structure::check_antipode) },
        Criterion { number: 3, name: "S^2 = id n=2..4", budget: secs(10), run: || over(2..=4, structure::check_s_squared) },
        Criterion {
            number: 4,
            name: "commutation lemmas n=2..5",
            budget: secs(60),
            run: || over(2..=5, structure::check_commutation_lemmas),
        },
        Criterion { number: 5, name: "b recurrences n=2..5", budget: secs(30), run: || over(2..=5, structure::check_b_recurrences) },
        Criterion { number: 6, name: "centers", budget: secs(1), run: centers },
        Criterion { number: 7, name: "T_q(2) derivations", budget: secs(30), run: derivations },
        Criterion { number: 8, name: "UT_q(2) derivation table", budget: secs(5), run: || reports(vec![utq2_derivation_table()]) },
        Criterion { number: 9, name: "sextuple group", budget: secs(10), run: sextuples },
        Criterion { number: 10, name: "Hopf automorphisms", budget: secs(10), run: hopf },
        Criterion { number: 11, name: "star structure n=2,3", budget: secs(10), run: star },
        Criterion { number: 12, name: "negative controls", budget: secs(5), run: negative_controls },
        Criterion { number: 13, name: "parser round trips", budget: secs(5), run: parser },
        Criterion { number: 14, name: "antipode at q = 2, n=3", budget: secs(1), run: numeric_antipode },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match &outcome {
            Ok(d) if elapsed <= c.budget => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; over the {:?} budget", c.budget)),
            Err(d) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {status} {} ({:.2?}): {detail}", c.number, c.name, elapsed);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
