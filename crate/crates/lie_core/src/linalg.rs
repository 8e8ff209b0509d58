//! Exact linear algebra over the rationals.
//!
//! Rows are cleared of denominators and reduced with Bareiss' fraction-free
//! elimination, so intermediate entries stay integral and bounded by minors.
//! Only the final back substitution divides.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{denominator_lcm, Scalar};

/// Dense row-major rational matrix.
pub type Matrix = Vec<Vec<Scalar>>;

/// Row echelon form of an integer-scaled copy of a matrix.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

fn integer_rows(a: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let l = denominator_lcm(row);
            row.iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Fraction-free forward elimination.
pub fn echelon(a: &[Vec<Scalar>], ncols: usize) -> Echelon {
    let mut m = integer_rows(a, ncols);
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0;
    for c in 0..ncols {
        if k == nrows {
            break;
        }
        let Some(p) = (k..nrows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(k, p);
        for i in k + 1..nrows {
            for j in c + 1..ncols {
                let v = &m[k][c] * &m[i][j] - &m[i][c] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[k][c].clone();
        pivots.push(c);
        k += 1;
    }
    m.truncate(k);
    Echelon { rows: m, pivots, ncols }
}

pub fn rank(a: &[Vec<Scalar>], ncols: usize) -> usize {
    echelon(a, ncols).pivots.len()
}

/// Reduced row echelon form over the rationals, derived from the integer echelon.
fn reduced(e: &Echelon) -> Vec<Vec<Scalar>> {
    let mut r: Vec<Vec<Scalar>> = e
        .rows
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    for (k, &c) in e.pivots.iter().enumerate().rev() {
        let p = r[k][c].clone();
        for x in r[k].iter_mut() {
            *x = &*x / &p;
        }
        for i in 0..k {
            let f = r[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..e.ncols {
                let v = &r[k][j] * &f;
                r[i][j] -= v;
            }
        }
    }
    r
}

/// Basis of `{x : a x = 0}`, one vector per free column with that entry set to 1.
pub fn nullspace(a: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let e = echelon(a, ncols);
    let r = reduced(&e);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (k, &c) in e.pivots.iter().enumerate() {
                v[c] = -r[k][f].clone();
            }
            v
        })
        .collect()
}

/// Solution set of an inhomogeneous system.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution {
    /// The solution with every free variable set to zero.
    pub particular: Vec<Scalar>,
    pub homogeneous: Vec<Vec<Scalar>>,
}

/// Solves `a x = b`; `None` when inconsistent.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<AffineSolution> {
    assert_eq!(a.len(), b.len(), "right-hand side length");
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let e = echelon(&aug, ncols + 1);
    if e.pivots.last() == Some(&ncols) {
        return None;
    }
    let r = reduced(&e);
    let mut particular = vec![Scalar::zero(); ncols];
    for (k, &c) in e.pivots.iter().enumerate() {
        particular[c] = r[k][ncols].clone();
    }
    Some(AffineSolution {
        particular,
        homogeneous: nullspace(a, ncols),
    })
}

/// A solution of `a x = b` with the fewest nonzero entries. Supports are tried
/// by increasing size and, within a size, in lexicographic order of indices.
pub fn min_support_solution(a: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    solve(a, b, ncols)?;
    for size in 0..=ncols {
        let mut found = None;
        for_each_combination(ncols, size, &mut |support| {
            if found.is_some() {
                return;
            }
            let sub: Matrix = a
                .iter()
                .map(|row| support.iter().map(|&j| row[j].clone()).collect())
                .collect();
            if let Some(sol) = solve(&sub, b, support.len()) {
                let mut x = vec![Scalar::zero(); ncols];
                for (pos, &j) in support.iter().enumerate() {
                    x[j] = sol.particular[pos].clone();
                }
                found = Some(x);
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

pub fn determinant(a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for i in c + 1..n {
            let f = &m[i][c] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &m[c][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    det
}

pub fn inverse(a: &[Vec<Scalar>]) -> Option<Matrix> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[j] = Scalar::one();
        let s = solve(a, &e, n)?;
        if !s.homogeneous.is_empty() {
            return None;
        }
        cols.push(s.particular);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn transpose(a: &[Vec<Scalar>], ncols: usize) -> Matrix {
    (0..ncols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coordinates_in(basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    let dim = v.len();
    let a = transpose(basis, dim);
    let a = if basis.is_empty() { vec![Vec::new(); dim] } else { a };
    let s = solve(&a, v, basis.len())?;
    Some(s.particular)
}

pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    coordinates_in(basis, v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a, 3), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_inconsistent_and_consistent() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[int(1), int(3)], 2).is_none());
        let s = solve(&a, &[int(1), int(2)], 2).unwrap();
        assert_eq!(mat_vec(&a, &s.particular), vec![int(1), int(2)]);
        assert_eq!(s.homogeneous.len(), 1);
    }

    #[test]
    fn rational_entries() {
        let a = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(1, 4), frac(1, 5)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_vec(&a, &mat_vec(&inv, &[int(7), int(-2)])), vec![int(7), int(-2)]);
        assert_eq!(determinant(&a), frac(1, 10) - frac(1, 12));
    }

    #[test]
    fn minimum_support() {
        // x + y + z = 2, y - z = 0: the sparsest solution is x = 2.
        let a = m(&[&[1, 1, 1], &[0, 1, -1]]);
        let x = min_support_solution(&a, &[int(2), int(0)], 3).unwrap();
        assert_eq!(x, vec![int(2), int(0), int(0)]);
        let a = m(&[&[0, 1, 1]]);
        let x = min_support_solution(&a, &[int(3)], 3).unwrap();
        assert_eq!(x, vec![int(0), int(3), int(0)]);
    }

    #[test]
    fn empty_span() {
        assert!(in_span(&[], &[int(0), int(0)]));
        assert!(!in_span(&[], &[int(1), int(0)]));
    }
}
