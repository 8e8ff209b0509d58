//! Graded exterior algebra over a Lie algebra `g` (multivectors) and over its
//! dual (forms), with the Chevalley–Eilenberg differential, interior products,
//! the adjoint action extended as a derivation and the algebraic Schouten
//! square of a bivector.

use std::collections::BTreeMap;
use std::fmt;

use lie_core::{int, linalg, Covector, LieAlgebra, LieError, Scalar, Subalgebra, Vector};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExteriorError {
    #[error("operands live in different spaces ({0:?} and {1:?})")]
    MixedSpaces(Space, Space),
    #[error("expected an element of the {expected:?} exterior algebra")]
    WrongSpace { expected: Space },
    #[error("cannot contract a degree-0 element")]
    DegreeZero,
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("the volume element is zero")]
    ZeroVolume,
    #[error("the volume element is not annihilated by the subalgebra")]
    NotAnnihilated,
    #[error("internal identity failed: {0}")]
    Identity(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Which exterior algebra an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// Multivectors, `Λg`.
    Primal,
    /// Forms, `Λg*`.
    Dual,
}

/// Homogeneous element of `Λ^k g` or `Λ^k g*` with exact coefficients,
/// keyed by strictly increasing index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    dim: usize,
    space: Space,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

/// Sorts `idx` in place and returns the sign of the permutation, or `None`
/// when an index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl ExteriorElement {
    pub fn zero(dim: usize, space: Space, degree: usize) -> Self {
        ExteriorElement { dim, space, degree, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, space: Space, c: Scalar) -> Self {
        let mut e = Self::zero(dim, space, 0);
        e.add_term(Vec::new(), c);
        e
    }

    /// `c * e_{i1} ∧ ... ∧ e_{ik}` for indices in any order.
    pub fn monomial(dim: usize, space: Space, indices: &[usize], c: Scalar) -> Self {
        let mut e = Self::zero(dim, space, indices.len());
        assert!(indices.iter().all(|&i| i < dim), "index out of range");
        let mut idx = indices.to_vec();
        if let Some(sign) = sort_with_sign(&mut idx) {
            e.add_term(idx, c * int(sign));
        }
        e
    }

    pub fn from_vector(v: &Vector) -> Self {
        let mut e = Self::zero(v.dim(), Space::Primal, 1);
        for (i, c) in v.0.iter().enumerate() {
            e.add_term(vec![i], c.clone());
        }
        e
    }

    pub fn from_covector(v: &Covector) -> Self {
        let mut e = Self::zero(v.dim(), Space::Dual, 1);
        for (i, c) in v.0.iter().enumerate() {
            e.add_term(vec![i], c.clone());
        }
        e
    }

    /// Wedge product of a list of degree-one covectors.
    pub fn wedge_all_covectors(dim: usize, xs: &[Covector]) -> Self {
        xs.iter().fold(Self::scalar(dim, Space::Dual, Scalar::one()), |acc, x| {
            acc.wedge(&Self::from_covector(x)).expect("same space")
        })
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(idx.len(), self.degree);
        let entry = self.terms.entry(idx.clone()).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    /// Coefficient of `e_{i1} ∧ ... ∧ e_{ik}`, indices in any order.
    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            None => Scalar::zero(),
            Some(sign) => self.terms.get(&idx).map(|c| c * int(sign)).unwrap_or_else(Scalar::zero),
        }
    }

    fn compatible(&self, o: &Self) -> Result<(), ExteriorError> {
        if self.space != o.space {
            return Err(ExteriorError::MixedSpaces(self.space, o.space));
        }
        if self.dim != o.dim {
            return Err(ExteriorError::Dimension { expected: self.dim, got: o.dim });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.compatible(o)?;
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != o.degree {
            return Err(ExteriorError::WrongDegree { expected: self.degree, got: o.degree });
        }
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.dim, self.space, self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.compatible(o)?;
        let mut out = Self::zero(self.dim, self.space, self.degree + o.degree);
        if out.degree > self.dim {
            return Ok(out);
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some(sign) = sort_with_sign(&mut idx) {
                    out.add_term(idx, ca * cb * int(sign));
                }
            }
        }
        Ok(out)
    }

    fn contract(&self, arg: &[Scalar]) -> Result<Self, ExteriorError> {
        if self.degree == 0 {
            return Err(ExteriorError::DegreeZero);
        }
        if arg.len() != self.dim {
            return Err(ExteriorError::Dimension { expected: self.dim, got: arg.len() });
        }
        let mut out = Self::zero(self.dim, self.space, self.degree - 1);
        for (idx, c) in &self.terms {
            for (s, &i) in idx.iter().enumerate() {
                if arg[i].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = idx.iter().enumerate().filter(|&(t, _)| t != s).map(|(_, &j)| j).collect();
                let sign = if s % 2 == 0 { int(1) } else { int(-1) };
                out.add_term(rest, c * &arg[i] * sign);
            }
        }
        Ok(out)
    }

    /// Contraction of a multivector by a covector, on the first slot.
    pub fn interior_covector(&self, xi: &Covector) -> Result<Self, ExteriorError> {
        if self.space != Space::Primal {
            return Err(ExteriorError::WrongSpace { expected: Space::Primal });
        }
        self.contract(&xi.0)
    }

    /// Contraction of a form by a vector, on the first slot.
    pub fn interior_vector(&self, x: &Vector) -> Result<Self, ExteriorError> {
        if self.space != Space::Dual {
            return Err(ExteriorError::WrongSpace { expected: Space::Dual });
        }
        self.contract(&x.0)
    }

    /// Coordinates of a degree-one element.
    pub fn as_coordinates(&self) -> Result<Vec<Scalar>, ExteriorError> {
        if self.degree != 1 && !self.is_zero() {
            return Err(ExteriorError::WrongDegree { expected: 1, got: self.degree });
        }
        let mut v = vec![Scalar::zero(); self.dim];
        for (k, c) in &self.terms {
            v[k[0]] = c.clone();
        }
        Ok(v)
    }

    /// Value of a scalar (degree 0) element.
    pub fn as_scalar(&self) -> Scalar {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Evaluates a k-form on k vectors: `sum_I w_I det(v_j[I_a])`.
    pub fn eval_form(&self, vectors: &[Vector]) -> Result<Scalar, ExteriorError> {
        if self.space != Space::Dual {
            return Err(ExteriorError::WrongSpace { expected: Space::Dual });
        }
        if vectors.len() != self.degree && !self.is_zero() {
            return Err(ExteriorError::WrongDegree { expected: self.degree, got: vectors.len() });
        }
        let mut total = Scalar::zero();
        for (idx, c) in &self.terms {
            let minor: Vec<Vec<Scalar>> =
                idx.iter().map(|&i| vectors.iter().map(|v| v.0[i].clone()).collect()).collect();
            total += c * linalg::determinant(&minor);
        }
        Ok(total)
    }

    /// Maps every basis index through `perm` (new index `p` is old `perm[p]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; self.dim];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut out = Self::zero(self.dim, self.space, self.degree);
        for (idx, c) in &self.terms {
            let mapped: Vec<usize> = idx.iter().map(|&i| inv[i]).collect();
            out = out.add(&Self::monomial(self.dim, self.space, &mapped, c.clone())).expect("same space");
        }
        out
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let sep = match self.space {
            Space::Primal => "^",
            Space::Dual => "^",
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let names: Vec<String> = idx
                    .iter()
                    .map(|&i| match self.space {
                        Space::Primal => labels[i].clone(),
                        Space::Dual => format!("{}*", labels[i]),
                    })
                    .collect();
                if names.is_empty() {
                    c.to_string()
                } else {
                    format!("{} {}", c, names.join(sep))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.dim).map(|i| format!("e{i}")).collect();
        write!(f, "{}", self.render(&labels))
    }
}

/// `d e^k = -sum_{i<j} C[i][j][k] e^i ∧ e^j`, so that `dθ(X,Y) = -θ([X,Y])`.
fn differential_of_basis_covector(g: &LieAlgebra, k: usize) -> ExteriorElement {
    let m = g.dim();
    let mut out = ExteriorElement::zero(m, Space::Dual, 2);
    for (i, j, row) in g.nonzero_brackets() {
        if let Some(c) = row.get(&k) {
            out.add_term(vec![i, j], -c.clone());
        }
    }
    out
}

/// Chevalley–Eilenberg differential on forms, extended from degree one as a
/// graded derivation.
pub fn ce_differential(g: &LieAlgebra, w: &ExteriorElement) -> Result<ExteriorElement, ExteriorError> {
    if w.space != Space::Dual {
        return Err(ExteriorError::WrongSpace { expected: Space::Dual });
    }
    let m = g.dim();
    if w.dim != m {
        return Err(ExteriorError::Dimension { expected: m, got: w.dim });
    }
    let basis_d: Vec<ExteriorElement> = (0..m).map(|k| differential_of_basis_covector(g, k)).collect();
    let mut out = ExteriorElement::zero(m, Space::Dual, w.degree + 1);
    for (idx, c) in &w.terms {
        for s in 0..idx.len() {
            let prefix = ExteriorElement::monomial(m, Space::Dual, &idx[..s], Scalar::one());
            let suffix = ExteriorElement::monomial(m, Space::Dual, &idx[s + 1..], Scalar::one());
            let sign = if s % 2 == 0 { int(1) } else { int(-1) };
            let term = prefix.wedge(&basis_d[idx[s]])?.wedge(&suffix)?.scale(&(c * sign));
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

/// `ad_X` extended to multivectors as a derivation.
pub fn ad_extension(g: &LieAlgebra, x: &Vector, p: &ExteriorElement) -> Result<ExteriorElement, ExteriorError> {
    if p.space != Space::Primal {
        return Err(ExteriorError::WrongSpace { expected: Space::Primal });
    }
    let m = g.dim();
    if p.dim != m || x.dim() != m {
        return Err(ExteriorError::Dimension { expected: m, got: p.dim.max(x.dim()) });
    }
    let images: Vec<ExteriorElement> =
        (0..m).map(|j| ExteriorElement::from_vector(&g.br(x, &Vector::basis(m, j)))).collect();
    let mut out = ExteriorElement::zero(m, Space::Primal, p.degree);
    for (idx, c) in &p.terms {
        for s in 0..idx.len() {
            let prefix = ExteriorElement::monomial(m, Space::Primal, &idx[..s], Scalar::one());
            let suffix = ExteriorElement::monomial(m, Space::Primal, &idx[s + 1..], Scalar::one());
            let term = prefix.wedge(&images[idx[s]])?.wedge(&suffix)?.scale(c);
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

/// Algebraic Schouten bracket of two multivectors, expanded on monomials as
/// `[X1..Xp, Y1..Yq] = sum (-1)^(i+j) [Xi,Yj] ∧ X1..^Xi..Xp ∧ Y1..^Yj..Yq`.
pub fn schouten_bracket(
    g: &LieAlgebra,
    a: &ExteriorElement,
    b: &ExteriorElement,
) -> Result<ExteriorElement, ExteriorError> {
    if a.space != Space::Primal || b.space != Space::Primal {
        return Err(ExteriorError::WrongSpace { expected: Space::Primal });
    }
    let m = g.dim();
    let degree = (a.degree + b.degree).saturating_sub(1);
    let mut out = ExteriorElement::zero(m, Space::Primal, degree);
    for (xi, ca) in &a.terms {
        for (yj, cb) in &b.terms {
            for (i, &xa) in xi.iter().enumerate() {
                for (j, &yb) in yj.iter().enumerate() {
                    let br = g.bracket_basis(xa, yb);
                    if br.is_zero() {
                        continue;
                    }
                    let xs: Vec<usize> = xi.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &v)| v).collect();
                    let ys: Vec<usize> = yj.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &v)| v).collect();
                    let sign = if (i + j) % 2 == 0 { int(1) } else { int(-1) };
                    let term = ExteriorElement::from_vector(&br)
                        .wedge(&ExteriorElement::monomial(m, Space::Primal, &xs, Scalar::one()))?
                        .wedge(&ExteriorElement::monomial(m, Space::Primal, &ys, Scalar::one()))?
                        .scale(&(ca * cb * sign));
                    out = out.add(&term)?;
                }
            }
        }
    }
    Ok(out)
}

/// `[r, r]` for a bivector `r`.
pub fn schouten_square(g: &LieAlgebra, r: &ExteriorElement) -> Result<ExteriorElement, ExteriorError> {
    if r.space != Space::Primal {
        return Err(ExteriorError::WrongSpace { expected: Space::Primal });
    }
    if r.degree != 2 && !r.is_zero() {
        return Err(ExteriorError::WrongDegree { expected: 2, got: r.degree });
    }
    let mut out = schouten_bracket(g, r, r)?;
    out.degree = 3;
    Ok(out)
}

/// True when `ad_X w = 0` for every basis vector `X`.
pub fn is_ad_invariant(g: &LieAlgebra, w: &ExteriorElement) -> Result<bool, ExteriorError> {
    let m = g.dim();
    for i in 0..m {
        if !ad_extension(g, &Vector::basis(m, i), w)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Completes the basis of `h` with standard basis vectors, greedily in index order.
pub fn complete_basis(m: usize, h: &[Vector]) -> Vec<Vector> {
    let mut rows: Vec<Vec<Scalar>> = h.iter().map(|v| v.0.clone()).collect();
    let mut extra = Vec::new();
    for i in 0..m {
        if rows.len() == m {
            break;
        }
        let e = Vector::basis(m, i);
        let mut trial = rows.clone();
        trial.push(e.0.clone());
        if linalg::rank(&trial, m) == trial.len() {
            rows = trial;
            extra.push(e);
        }
    }
    extra
}

/// Given a nonzero top form `v0` on the annihilator of `h`, returns `θ0`
/// with `d v0 = -θ0 ∧ v0`, built by completing `h` to a basis `X_i, W_j` and
/// setting `θ0(X_i) = -(d v0)(X_i, W..) / v0(W..)`, `θ0(W_j) = 0`.
pub fn theta0_from_v0(g: &LieAlgebra, h: &Subalgebra, v0: &ExteriorElement) -> Result<Covector, ExteriorError> {
    let m = g.dim();
    let n = h.dim();
    if v0.space != Space::Dual {
        return Err(ExteriorError::WrongSpace { expected: Space::Dual });
    }
    if v0.is_zero() {
        return Err(ExteriorError::ZeroVolume);
    }
    if v0.degree != m - n {
        return Err(ExteriorError::WrongDegree { expected: m - n, got: v0.degree });
    }
    for x in &h.basis {
        if m - n > 0 && !v0.interior_vector(x)?.is_zero() {
            return Err(ExteriorError::NotAnnihilated);
        }
    }
    let w = complete_basis(m, &h.basis);
    let denom = v0.eval_form(&w)?;
    if denom.is_zero() {
        return Err(ExteriorError::ZeroVolume);
    }
    let dv0 = ce_differential(g, v0)?;
    let full: Vec<Vec<Scalar>> = h.basis.iter().chain(&w).map(|v| v.0.clone()).collect();
    // Columns of `full^T` are the basis; rows of its inverse are the dual basis.
    let b = linalg::transpose(&full, m);
    let dual = linalg::inverse(&b).ok_or_else(|| ExteriorError::Identity("basis completion is singular".into()))?;
    let mut theta = Covector::zero(m);
    for (i, x) in h.basis.iter().enumerate() {
        let mut args = vec![x.clone()];
        args.extend(w.iter().cloned());
        let val = -dv0.eval_form(&args)? / &denom;
        if val.is_zero() {
            continue;
        }
        theta = theta.add(&Covector(dual[i].clone()).scale(&val));
    }
    let lhs = dv0;
    let rhs = ExteriorElement::from_covector(&theta).wedge(v0)?.scale(&int(-1));
    if lhs != rhs {
        return Err(ExteriorError::Identity("d V0 = -theta0 ^ V0 failed".into()));
    }
    Ok(theta)
}

/// The linear map `X_i ↦ δ(X_i) ∈ Λ²g`.
#[derive(Debug, Clone, PartialEq)]
pub struct CocommutatorMap {
    pub images: Vec<ExteriorElement>,
}

impl CocommutatorMap {
    pub fn new(dim: usize, images: Vec<ExteriorElement>) -> Result<Self, ExteriorError> {
        if images.len() != dim {
            return Err(ExteriorError::Dimension { expected: dim, got: images.len() });
        }
        for im in &images {
            if im.space != Space::Primal {
                return Err(ExteriorError::WrongSpace { expected: Space::Primal });
            }
            if im.dim != dim {
                return Err(ExteriorError::Dimension { expected: dim, got: im.dim });
            }
            if !im.is_zero() && im.degree != 2 {
                return Err(ExteriorError::WrongDegree { expected: 2, got: im.degree });
            }
        }
        let images = images
            .into_iter()
            .map(|mut im| {
                im.degree = 2;
                im
            })
            .collect();
        Ok(CocommutatorMap { images })
    }

    pub fn zero(dim: usize) -> Self {
        CocommutatorMap { images: vec![ExteriorElement::zero(dim, Space::Primal, 2); dim] }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    /// `δ(X)` for an arbitrary vector, by linearity.
    pub fn apply(&self, x: &Vector) -> ExteriorElement {
        let m = self.dim();
        let mut out = ExteriorElement::zero(m, Space::Primal, 2);
        for (i, c) in x.0.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.images[i].scale(c)).expect("same space");
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|i| i.is_zero())
    }
}
