//! The standard bialgebra structure of `sl(n)` generated from the R-map
//! (`−A` on strictly upper triangular, `0` on diagonal, `A` on strictly lower
//! triangular matrices) with `[A,B]* = [RA,B] + [A,RB]`, and `sl(n)*`
//! identified with `sl(n)` through the trace form.

use lie_core::{int, linalg, LieAlgebra, Matrix, Scalar, Vector};
use num_traits::Zero;

use crate::{BialgebraError, LieBialgebra};

/// A basis of a matrix Lie algebra, each element an `n × n` rational matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixBasis {
    pub n: usize,
    pub labels: Vec<String>,
    pub mats: Vec<Matrix>,
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let ab = mul(a, b);
    let ba = mul(b, a);
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn trace_product(a: &Matrix, b: &Matrix) -> Scalar {
    let n = a.len();
    (0..n).flat_map(|i| (0..n).map(move |k| (i, k))).map(|(i, k)| &a[i][k] * &b[k][i]).sum()
}

fn r_map(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => -a[i][j].clone(),
                    std::cmp::Ordering::Equal => Scalar::zero(),
                    std::cmp::Ordering::Greater => a[i][j].clone(),
                })
                .collect()
        })
        .collect()
}

fn combine(coeffs: &[Scalar], mats: &[Matrix], n: usize) -> Matrix {
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for (c, m) in coeffs.iter().zip(mats) {
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out[i][j] += c * &m[i][j];
            }
        }
    }
    out
}

fn flat(m: &Matrix) -> Vec<Scalar> {
    m.iter().flatten().cloned().collect()
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = vec![vec![Scalar::zero(); n]; n];
    m[i][j] = int(1);
    m
}

impl MatrixBasis {
    pub fn new(n: usize, labels: Vec<String>, mats: Vec<Matrix>) -> Result<Self, BialgebraError> {
        if labels.len() != mats.len() {
            return Err(BialgebraError::MatrixBasis("label count differs from matrix count".into()));
        }
        if mats.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(BialgebraError::MatrixBasis(format!("every matrix must be {n} x {n}")));
        }
        let rows: Vec<Vec<Scalar>> = mats.iter().map(flat).collect();
        if linalg::rank(&rows, n * n) != mats.len() {
            return Err(BialgebraError::MatrixBasis("matrices are linearly dependent".into()));
        }
        Ok(MatrixBasis { n, labels, mats })
    }

    /// Basis `D_i = E_ii − E_{i+1,i+1}`, `S_ij = E_ij + E_ji`, `Q_ij = E_ij − E_ji` (i < j) of `sl(n)`.
    pub fn sl_dsq(n: usize) -> Self {
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        for i in 0..n - 1 {
            labels.push(format!("D{}", i + 1));
            let mut m = unit(n, i, i);
            m[i + 1][i + 1] = int(-1);
            mats.push(m);
        }
        for (name, sign) in [("S", 1), ("Q", -1)] {
            for i in 0..n {
                for j in i + 1..n {
                    labels.push(format!("{name}{}{}", i + 1, j + 1));
                    let mut m = unit(n, i, j);
                    m[j][i] = int(sign);
                    mats.push(m);
                }
            }
        }
        MatrixBasis::new(n, labels, mats).expect("valid basis")
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    /// Coordinates of a matrix in this basis, if it lies in the span.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let rows: Vec<Vec<Scalar>> = self.mats.iter().map(flat).collect();
        linalg::coordinates_in(&rows, &flat(m))
    }

    pub fn matrix_of(&self, v: &Vector) -> Matrix {
        combine(&v.0, &self.mats, self.n)
    }

    /// The Lie algebra spanned by the basis under the matrix commutator.
    pub fn algebra(&self) -> Result<LieAlgebra, BialgebraError> {
        let d = self.dim();
        let mut g = LieAlgebra::new(self.labels.clone());
        for i in 0..d {
            for j in i + 1..d {
                let c = commutator(&self.mats[i], &self.mats[j]);
                let coords = self
                    .coordinates(&c)
                    .ok_or_else(|| BialgebraError::MatrixBasis("span is not closed under commutators".into()))?;
                g.set_bracket(i, j, &Vector(coords));
            }
        }
        Ok(g)
    }

    /// Matrices `M_i` with `tr(M_i B_j) = δ_ij`, representing the dual basis.
    pub fn trace_dual(&self) -> Result<Vec<Matrix>, BialgebraError> {
        let d = self.dim();
        let gram: Matrix = (0..d)
            .map(|i| (0..d).map(|j| trace_product(&self.mats[i], &self.mats[j])).collect())
            .collect();
        let inv = linalg::inverse(&gram)
            .ok_or_else(|| BialgebraError::MatrixBasis("trace form is degenerate on the span".into()))?;
        Ok((0..d).map(|i| combine(&inv[i], &self.mats, self.n)).collect())
    }
}

/// Dual structure constants from the R-map, in the dual basis, scaled by `eta`.
pub fn rmap_dual(basis: &MatrixBasis, eta: &Scalar) -> Result<LieAlgebra, BialgebraError> {
    let d = basis.dim();
    let duals = basis.trace_dual()?;
    let labels = basis.labels.iter().map(|l| format!("{l}*")).collect();
    let mut dual = LieAlgebra::new(labels);
    for i in 0..d {
        for j in i + 1..d {
            let a = commutator(&r_map(&duals[i]), &duals[j]);
            let b = commutator(&duals[i], &r_map(&duals[j]));
            let sum: Matrix = a.iter().zip(&b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect();
            let coords: Vec<Scalar> = basis.mats.iter().map(|bk| trace_product(&sum, bk) * eta).collect();
            dual.set_bracket(i, j, &Vector(coords));
        }
    }
    Ok(dual)
}

/// Standard bialgebra on `sl(n)` in the `D, S, Q` basis.
pub fn standard_sln(n: usize, eta: &Scalar) -> Result<(MatrixBasis, LieBialgebra), BialgebraError> {
    if n < 2 {
        return Err(BialgebraError::MatrixBasis("n must be at least 2".into()));
    }
    let basis = MatrixBasis::sl_dsq(n);
    let g = basis.algebra()?;
    let dual = rmap_dual(&basis, eta)?;
    let b = LieBialgebra::from_dual(g, &dual)?;
    Ok((basis, b))
}
