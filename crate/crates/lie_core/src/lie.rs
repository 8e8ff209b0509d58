//! Lie algebras given by structure constants.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{self, Matrix};
use crate::scalar::{int, Scalar};
use crate::LieError;

/// Element of the algebra, as coordinates in its basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Scalar>);

/// Element of the dual space, as coordinates in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covector(pub Vec<Scalar>);

macro_rules! coords_impl {
    ($t:ident) => {
        impl $t {
            pub fn zero(dim: usize) -> Self {
                $t(vec![Scalar::zero(); dim])
            }

            pub fn basis(dim: usize, i: usize) -> Self {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = int(1);
                $t(v)
            }

            pub fn from_ints(xs: &[i64]) -> Self {
                $t(xs.iter().map(|&x| int(x)).collect())
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|x| x.is_zero())
            }

            pub fn add(&self, o: &Self) -> Self {
                assert_eq!(self.dim(), o.dim(), "dimension mismatch");
                $t(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, o: &Self) -> Self {
                assert_eq!(self.dim(), o.dim(), "dimension mismatch");
                $t(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
            }

            pub fn scale(&self, c: &Scalar) -> Self {
                $t(self.0.iter().map(|a| a * c).collect())
            }

            pub fn support(&self) -> usize {
                self.0.iter().filter(|x| !x.is_zero()).count()
            }
        }
    };
}

coords_impl!(Vector);
coords_impl!(Covector);

impl Covector {
    /// The pairing `<self, v>`.
    pub fn eval(&self, v: &Vector) -> Scalar {
        assert_eq!(self.dim(), v.dim(), "dimension mismatch");
        self.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }
}

/// Finite-dimensional Lie algebra over the rationals.
///
/// Only brackets `[X_i, X_j]` with `i < j` are stored; the others follow by
/// antisymmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    table: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
}

impl LieAlgebra {
    pub fn abelian(labels: &[&str]) -> Self {
        Self::new(labels.iter().map(|s| s.to_string()).collect())
    }

    pub fn new(labels: Vec<String>) -> Self {
        assert!(!labels.is_empty(), "a Lie algebra needs at least one basis vector");
        LieAlgebra { labels, table: BTreeMap::new() }
    }

    /// Builds an algebra from bracket triples `[X_i, X_j] = sum c_k X_k`.
    /// Pairs may be given in either order; listing a pair twice is an error
    /// unless both entries agree.
    pub fn from_brackets(
        labels: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, Scalar)>)],
    ) -> Result<Self, LieError> {
        let mut alg = Self::new(labels);
        let m = alg.dim();
        let mut seen: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (i, j, rhs) in brackets {
            let (i, j) = (*i, *j);
            if i >= m || j >= m || rhs.iter().any(|(k, _)| *k >= m) {
                return Err(LieError::Index(format!("bracket ({i},{j}) outside dimension {m}")));
            }
            let mut v = Vector::zero(m);
            for (k, c) in rhs {
                v.0[*k] += c;
            }
            if i == j {
                if !v.is_zero() {
                    return Err(LieError::Asymmetry(alg.labels[i].clone(), alg.labels[j].clone()));
                }
                continue;
            }
            let (a, b, v) = if i < j { (i, j, v) } else { (j, i, v.scale(&int(-1))) };
            if let Some(prev) = seen.get(&(a, b)) {
                if *prev != v {
                    return Err(LieError::Asymmetry(alg.labels[a].clone(), alg.labels[b].clone()));
                }
                continue;
            }
            seen.insert((a, b), v.clone());
            alg.set_bracket(a, b, &v);
        }
        Ok(alg)
    }

    /// Sets `[X_i, X_j] = v` (and hence `[X_j, X_i] = -v`).
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &Vector) {
        assert!(i != j, "diagonal bracket");
        let (a, b, sign) = if i < j { (i, j, int(1)) } else { (j, i, int(-1)) };
        let entry: BTreeMap<usize, Scalar> = v
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c * &sign))
            .collect();
        if entry.is_empty() {
            self.table.remove(&(a, b));
        } else {
            self.table.insert((a, b), entry);
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Nonzero brackets with `i < j`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &BTreeMap<usize, Scalar>)> {
        self.table.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// Structure constant `C[i][j][k]`.
    pub fn structure(&self, i: usize, j: usize, k: usize) -> Scalar {
        if i == j {
            return Scalar::zero();
        }
        let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.table.get(&(a, b)).and_then(|row| row.get(&k)) {
            Some(c) if neg => -c.clone(),
            Some(c) => c.clone(),
            None => Scalar::zero(),
        }
    }

    /// `[X_i, X_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let m = self.dim();
        let mut v = Vector::zero(m);
        if i == j {
            return v;
        }
        let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
        if let Some(row) = self.table.get(&(a, b)) {
            for (&k, c) in row {
                v.0[k] = if neg { -c.clone() } else { c.clone() };
            }
        }
        v
    }

    pub fn bracket(&self, u: &Vector, v: &Vector) -> Result<Vector, LieError> {
        let m = self.dim();
        if u.dim() != m || v.dim() != m {
            return Err(LieError::Dimension { expected: m, got: u.dim().max(v.dim()) });
        }
        let mut out = Vector::zero(m);
        for (&(i, j), row) in &self.table {
            let first = !u.0[i].is_zero() && !v.0[j].is_zero();
            let second = !u.0[j].is_zero() && !v.0[i].is_zero();
            let coef = match (first, second) {
                (false, false) => continue,
                (true, false) => &u.0[i] * &v.0[j],
                (false, true) => -(&u.0[j] * &v.0[i]),
                (true, true) => &u.0[i] * &v.0[j] - &u.0[j] * &v.0[i],
            };
            if coef.is_zero() {
                continue;
            }
            for (&k, c) in row {
                out.0[k] += &coef * c;
            }
        }
        Ok(out)
    }

    /// Bracket for callers that already know the dimensions agree.
    pub fn br(&self, u: &Vector, v: &Vector) -> Vector {
        self.bracket(u, v).expect("dimension mismatch")
    }

    /// `[X_i, w]`, touching only the support of `w`.
    fn ad_basis(&self, i: usize, w: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim());
        for (l, c) in w.0.iter().enumerate() {
            if c.is_zero() || l == i {
                continue;
            }
            let (a, b, neg) = if i < l { (i, l, false) } else { (l, i, true) };
            if let Some(row) = self.table.get(&(a, b)) {
                for (&k, s) in row {
                    let t = c * s;
                    if neg {
                        out.0[k] -= t;
                    } else {
                        out.0[k] += t;
                    }
                }
            }
        }
        out
    }

    /// Exact Jacobiator on all basis triples.
    pub fn jacobi_check(&self) -> JacobiVerdict {
        let m = self.dim();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let jac = self
                        .ad_basis(i, &self.bracket_basis(j, k))
                        .add(&self.ad_basis(j, &self.bracket_basis(k, i)))
                        .add(&self.ad_basis(k, &self.bracket_basis(i, j)));
                    if !jac.is_zero() {
                        return JacobiVerdict::Violation { triple: (i, j, k), jacobiator: jac };
                    }
                }
            }
        }
        JacobiVerdict::Ok
    }

    /// Matrix of `ad_X`: column `j` holds `[X, X_j]`.
    pub fn adjoint_matrix(&self, x: &Vector) -> Matrix {
        let m = self.dim();
        let cols: Vec<Vector> = (0..m).map(|j| self.br(x, &Vector::basis(m, j))).collect();
        (0..m).map(|i| (0..m).map(|j| cols[j].0[i].clone()).collect()).collect()
    }

    /// `chi(X_a) = sum_b C[a][b][b]`, the trace of `ad_{X_a}`.
    pub fn modular_character(&self) -> Covector {
        let m = self.dim();
        Covector((0..m).map(|a| (0..m).map(|b| self.structure(a, b, b)).sum()).collect())
    }

    pub fn is_unimodular(&self) -> bool {
        self.modular_character().is_zero()
    }

    /// True when `theta([X_i, X_j]) = 0` for all basis pairs.
    pub fn is_closed_one_form(&self, theta: &Covector) -> bool {
        self.table.values().all(|row| {
            row.iter().map(|(&k, c)| c * &theta.0[k]).sum::<Scalar>().is_zero()
        })
    }

    /// Linear conditions `theta([X_i, X_j]) = 0`, one row per nonzero bracket.
    pub fn closedness_rows(&self) -> Matrix {
        let m = self.dim();
        self.table
            .values()
            .map(|row| {
                let mut r = vec![Scalar::zero(); m];
                for (&k, c) in row {
                    r[k] = c.clone();
                }
                r
            })
            .collect()
    }

    /// Decides whether `span(basis)` is closed under the bracket.
    pub fn is_subalgebra(&self, basis: &[Vector]) -> Result<bool, LieError> {
        let rows: Vec<Vec<Scalar>> = basis.iter().map(|v| v.0.clone()).collect();
        if linalg::rank(&rows, self.dim()) != basis.len() {
            return Err(LieError::DependentBasis);
        }
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let w = self.bracket(&basis[a], &basis[b])?;
                if !linalg::in_span(&rows, &w.0) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Basis of the annihilator of `h` in the dual space.
    pub fn annihilator(&self, h: &Subalgebra) -> Vec<Covector> {
        let rows: Vec<Vec<Scalar>> = h.basis.iter().map(|v| v.0.clone()).collect();
        linalg::nullspace(&rows, self.dim()).into_iter().map(Covector).collect()
    }

    /// Structure constants of `span(basis)` in that basis, when it is closed.
    pub fn induced_structure(&self, basis: &[Vector]) -> Result<LieAlgebra, LieError> {
        let n = basis.len();
        let rows: Vec<Vec<Scalar>> = basis.iter().map(|v| v.0.clone()).collect();
        let labels = (0..n).map(|i| format!("h{}", i + 1)).collect();
        let mut brackets = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let w = self.bracket(&basis[a], &basis[b])?;
                let c = linalg::coordinates_in(&rows, &w.0).ok_or(LieError::NotClosed)?;
                brackets.push((a, b, c.into_iter().enumerate().collect()));
            }
        }
        if n == 0 {
            return Ok(LieAlgebra { labels: vec![], table: BTreeMap::new() });
        }
        LieAlgebra::from_brackets(labels, &brackets)
    }

    /// Relabels the basis and permutes coordinates: new basis vector `p` is old `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> LieAlgebra {
        let m = self.dim();
        let mut inv = vec![0; m];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let labels = perm.iter().map(|&o| self.labels[o].clone()).collect();
        let mut out = LieAlgebra::new(labels);
        for (&(i, j), row) in &self.table {
            let mut v = Vector::zero(m);
            for (&k, c) in row {
                v.0[inv[k]] = c.clone();
            }
            out.set_bracket(inv[i], inv[j], &v);
        }
        out
    }
}

/// Outcome of an exact Jacobi identity test.
#[derive(Debug, Clone, PartialEq)]
pub enum JacobiVerdict {
    Ok,
    Violation { triple: (usize, usize, usize), jacobiator: Vector },
}

impl JacobiVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, JacobiVerdict::Ok)
    }
}

/// Subspace of an algebra spanned by linearly independent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Subalgebra {
    pub basis: Vec<Vector>,
    /// Set once closure under the bracket has been checked.
    pub verified: bool,
}

impl Subalgebra {
    /// Checks independence and closure.
    pub fn new(alg: &LieAlgebra, basis: Vec<Vector>) -> Result<Self, LieError> {
        if basis.iter().any(|v| v.dim() != alg.dim()) {
            return Err(LieError::Dimension { expected: alg.dim(), got: 0 });
        }
        if !alg.is_subalgebra(&basis)? {
            return Err(LieError::NotClosed);
        }
        Ok(Subalgebra { basis, verified: true })
    }

    pub fn trivial() -> Self {
        Subalgebra { basis: Vec::new(), verified: true }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Values of `theta` on each basis vector.
    pub fn restrict(&self, theta: &Covector) -> Vec<Scalar> {
        self.basis.iter().map(|v| theta.eval(v)).collect()
    }

    /// Modular character of the subalgebra, as values on its own basis.
    pub fn modular_character(&self, alg: &LieAlgebra) -> Result<Vec<Scalar>, LieError> {
        if self.basis.is_empty() {
            return Ok(Vec::new());
        }
        Ok(alg.induced_structure(&self.basis)?.modular_character().0)
    }
}

/// Evaluates `theta` on the basis of `h`.
pub fn restrict_covector(theta: &Covector, h: &Subalgebra) -> Vec<Scalar> {
    h.restrict(theta)
}
