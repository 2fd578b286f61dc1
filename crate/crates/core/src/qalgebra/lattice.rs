//! Small exact integer-lattice routines: echelon forms with unimodular
//! transforms, integer kernels, and Hilbert bases of pointed rational
//! cones `{y : W y >= 0}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|v| BigInt::from(*v)).collect()).collect()
}

pub fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("lattice entry fits in i64")).collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src) {
        *t -= factor * s;
    }
}

/// Row echelon form `H = U A` over the integers with `U` unimodular.
/// Pivots are positive. Returns `(H, U, rank)`.
pub fn row_echelon(a: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut h = a.clone();
    let mut u = identity(rows);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            let best = (pivot_row..rows)
                .filter(|r| !h[*r][col].is_zero())
                .min_by(|x, y| h[*x][col].abs().cmp(&h[*y][col].abs()));
            let Some(best) = best else { break };
            h.swap(pivot_row, best);
            u.swap(pivot_row, best);
            let mut done = true;
            for r in (pivot_row + 1)..rows {
                if h[r][col].is_zero() {
                    continue;
                }
                let f = h[r][col].div_floor(&h[pivot_row][col]);
                row_axpy(&mut h, r, pivot_row, &f);
                row_axpy(&mut u, r, pivot_row, &f);
                if !h[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (pivot_row..rows).all(|r| h[r][col].is_zero()) {
            continue;
        }
        if h[pivot_row][col].is_negative() {
            for v in h[pivot_row].iter_mut().chain(u[pivot_row].iter_mut()) {
                *v = -v.clone();
            }
        }
        pivot_row += 1;
    }
    (h, u, pivot_row)
}

/// Basis of `{v in Z^c : A v = 0}` for an `r x c` matrix `A`.
pub fn integer_kernel(a: &IntMatrix, cols: usize) -> IntMatrix {
    let at: IntMatrix = (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
    let (_, u, rank) = row_echelon(&at);
    u[rank..].to_vec()
}

/// Echelon basis of the lattice spanned by `vectors`.
pub fn lattice_basis(vectors: &IntMatrix) -> IntMatrix {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (h, _, rank) = row_echelon(vectors);
    h[..rank].to_vec()
}

fn rational_rank(rows: &[Vec<BigRational>]) -> (usize, Vec<Vec<BigRational>>) {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|r| !m[*r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let src = m[rank].clone();
                for (t, s) in m[r].iter_mut().zip(src) {
                    *t -= &f * s;
                }
            }
        }
        rank += 1;
    }
    (rank, m)
}

/// A nonzero primitive integer vector spanning the one-dimensional
/// rational nullspace of `rows`, if it is one-dimensional.
fn line_through(rows: &[Vec<BigInt>], dim: usize) -> Option<Vec<BigInt>> {
    let rat: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
    let (rank, rref) = rational_rank(&rat);
    if rank + 1 != dim {
        return None;
    }
    let pivots: Vec<usize> =
        rref[..rank].iter().map(|r| r.iter().position(|v| !v.is_zero()).expect("nonzero pivot row")).collect();
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); dim];
    v[free] = BigRational::one();
    for (row, p) in rref[..rank].iter().zip(&pivots) {
        v[*p] = -row[free].clone();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &g).collect())
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Primitive extreme rays of the pointed cone `{y : W y >= 0}`, where `W`
/// has full column rank `dim`.
pub fn extreme_rays(w: &IntMatrix, dim: usize) -> IntMatrix {
    let mut rays: IntMatrix = Vec::new();
    if dim == 1 {
        for s in [BigInt::one(), -BigInt::one()] {
            if w.iter().all(|r| !(&r[0] * &s).is_negative()) {
                rays.push(vec![s]);
            }
        }
        return rays;
    }
    for sub in subsets(w.len(), dim - 1) {
        let rows: Vec<Vec<BigInt>> = sub.iter().map(|i| w[*i].clone()).collect();
        let Some(v) = line_through(&rows, dim) else { continue };
        for cand in [v.clone(), v.iter().map(|x| -x).collect()] {
            if w.iter().all(|r| !dot(r, &cand).is_negative()) && !rays.contains(&cand) {
                rays.push(cand);
            }
        }
    }
    rays.sort();
    rays
}

/// Hilbert basis of the monoid `{y in Z^dim : W y >= 0}` for a pointed cone.
///
/// Every Hilbert basis element lies in the zonotope spanned by the extreme
/// rays, so its slack vector `W y` is bounded by the sum of the rays'
/// slacks; candidates are enumerated through their slack vectors.
pub fn hilbert_basis(w: &IntMatrix, dim: usize) -> IntMatrix {
    let rays = extreme_rays(w, dim);
    if rays.is_empty() {
        return Vec::new();
    }
    let slack = |y: &[BigInt]| -> Vec<BigInt> { w.iter().map(|r| dot(r, y)).collect() };
    let bound: Vec<BigInt> = rays.iter().map(|r| slack(r)).fold(vec![BigInt::zero(); w.len()], |acc, s| {
        acc.into_iter().zip(s).map(|(a, b)| a + b).collect()
    });
    // Recover y from a slack vector through a fixed set of independent rows.
    let rat: Vec<Vec<BigRational>> =
        w.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
    let mut basis_rows = Vec::new();
    let mut chosen: Vec<Vec<BigRational>> = Vec::new();
    for (i, row) in rat.iter().enumerate() {
        let mut trial = chosen.clone();
        trial.push(row.clone());
        if rational_rank(&trial).0 > chosen.len() {
            chosen = trial;
            basis_rows.push(i);
        }
        if chosen.len() == dim {
            break;
        }
    }
    let inverse = invert(&chosen);

    let mut points: IntMatrix = Vec::new();
    let mut s: Vec<BigInt> = vec![BigInt::zero(); basis_rows.len()];
    loop {
        let y: Vec<BigRational> = inverse
            .iter()
            .map(|row| row.iter().zip(&s).map(|(a, b)| a * BigRational::from_integer(b.clone())).sum())
            .collect();
        if y.iter().all(|v| v.is_integer()) {
            let y: Vec<BigInt> = y.iter().map(|v| v.to_integer()).collect();
            let sl = slack(&y);
            if y.iter().any(|v| !v.is_zero())
                && sl.iter().zip(&bound).all(|(a, b)| !a.is_negative() && a <= b)
            {
                points.push(y);
            }
        }
        let mut idx = 0;
        loop {
            if idx == s.len() {
                return irreducible(points, &slack);
            }
            s[idx] += 1;
            if s[idx] <= bound[basis_rows[idx]] {
                break;
            }
            s[idx] = BigInt::zero();
            idx += 1;
        }
    }
}

fn irreducible(points: IntMatrix, slack: &dyn Fn(&[BigInt]) -> Vec<BigInt>) -> IntMatrix {
    let slacks: Vec<Vec<BigInt>> = points.iter().map(|p| slack(p)).collect();
    let mut out: IntMatrix = points
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            !points.iter().enumerate().any(|(j, other)| {
                j != *i
                    && slacks[j].iter().zip(&slacks[*i]).all(|(a, b)| a <= b)
                    && {
                        let diff: Vec<BigInt> = p.iter().zip(other).map(|(a, b)| a - b).collect();
                        diff.iter().any(|v| !v.is_zero())
                    }
            })
        })
        .map(|(_, p)| p.clone())
        .collect();
    out.sort();
    out
}

fn invert(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let (_, rref) = rational_rank(&aug);
    aug = rref;
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let a = to_big(&[vec![1, 0, -1]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(&a[0], v).is_zero());
        }
    }

    #[test]
    fn echelon_is_unimodular_transform() {
        let a = to_big(&[vec![2, 4], vec![3, 5], vec![1, 1]]);
        let (h, u, rank) = row_echelon(&a);
        assert_eq!(rank, 2);
        for (hrow, urow) in h.iter().zip(&u) {
            for c in 0..2 {
                let v: BigInt = urow.iter().zip(&a).map(|(x, row)| x * &row[c]).sum();
                assert_eq!(v, hrow[c]);
            }
        }
    }

    #[test]
    fn orthant_hilbert_basis() {
        let w = to_big(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(to_i64_all(&hilbert_basis(&w, 3)), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn non_unimodular_cone() {
        // y1 >= 0, 2 y0 - y1 >= 0: rays (1,0) and (1,2), Hilbert basis adds (1,1)
        let w = to_big(&[vec![0, 1], vec![2, -1]]);
        assert_eq!(to_i64_all(&hilbert_basis(&w, 2)), vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    fn to_i64_all(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.iter().map(|v| to_i64(v)).collect()
    }
}
