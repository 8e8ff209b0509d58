//! Lie bialgebras: cobrackets from r-matrices, dual brackets, the 1-cocycle
//! condition, the bracket of the double `g ⊕ g*` and the dual modular character.

mod sln;

use exterior_algebra::{ad_extension, CocommutatorMap, ExteriorElement, ExteriorError, Space};
use lie_core::{Covector, JacobiVerdict, LieAlgebra, LieError, Scalar, Vector};
use num_traits::Zero;

pub use sln::{rmap_dual, standard_sln, MatrixBasis};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BialgebraError {
    #[error("the dual bracket fails the Jacobi identity on basis triple {0:?}")]
    DualNotLie((usize, usize, usize)),
    #[error("the cobracket is not a 1-cocycle on basis pair {0:?}")]
    NotCocycle((usize, usize)),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix basis: {0}")]
    MatrixBasis(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `δ(X_i) = ad_{X_i} r` for every basis vector.
pub fn cocommutator_from_rmatrix(g: &LieAlgebra, r: &ExteriorElement) -> Result<CocommutatorMap, BialgebraError> {
    let m = g.dim();
    if r.space() != Space::Primal {
        return Err(ExteriorError::WrongSpace { expected: Space::Primal }.into());
    }
    if !r.is_zero() && r.degree() != 2 {
        return Err(ExteriorError::WrongDegree { expected: 2, got: r.degree() }.into());
    }
    let images = (0..m)
        .map(|i| ad_extension(g, &Vector::basis(m, i), r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CocommutatorMap::new(m, images)?)
}

fn dual_labels(g: &LieAlgebra) -> Vec<String> {
    g.labels().iter().map(|l| format!("{l}*")).collect()
}

/// Dual structure constants `[X^i, X^j]* = sum_k (δX_k)^{ij} X^k`, without
/// checking the Jacobi identity.
pub fn dual_structure(labels: Vec<String>, delta: &CocommutatorMap) -> LieAlgebra {
    let m = delta.dim();
    let mut dual = LieAlgebra::new(labels);
    for i in 0..m {
        for j in i + 1..m {
            let v: Vec<Scalar> = (0..m).map(|k| delta.images[k].coeff(&[i, j])).collect();
            dual.set_bracket(i, j, &Vector(v));
        }
    }
    dual
}

/// Dual Lie algebra of a cobracket; fails when the constants violate Jacobi.
pub fn dual_constants(g: &LieAlgebra, delta: &CocommutatorMap) -> Result<LieAlgebra, BialgebraError> {
    if delta.dim() != g.dim() {
        return Err(BialgebraError::Dimension { expected: g.dim(), got: delta.dim() });
    }
    let dual = dual_structure(dual_labels(g), delta);
    match dual.jacobi_check() {
        JacobiVerdict::Ok => Ok(dual),
        JacobiVerdict::Violation { triple, .. } => Err(BialgebraError::DualNotLie(triple)),
    }
}

/// Transposes dual structure constants back into a cobracket.
pub fn delta_from_dual(dual: &LieAlgebra) -> CocommutatorMap {
    let m = dual.dim();
    let mut images = vec![ExteriorElement::zero(m, Space::Primal, 2); m];
    for (i, j, row) in dual.nonzero_brackets() {
        for (&k, c) in row {
            let term = ExteriorElement::monomial(m, Space::Primal, &[i, j], c.clone());
            images[k] = images[k].add(&term).expect("same space");
        }
    }
    CocommutatorMap::new(m, images).expect("degree-two images")
}

#[derive(Debug, Clone, PartialEq)]
pub enum CocycleVerdict {
    Ok,
    /// First basis pair `(i, j)` with `δ[X_i,X_j] ≠ ad_{X_i}δX_j − ad_{X_j}δX_i`, and the defect.
    Violation { pair: (usize, usize), defect: ExteriorElement },
}

impl CocycleVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, CocycleVerdict::Ok)
    }
}

pub fn cocycle_check(g: &LieAlgebra, delta: &CocommutatorMap) -> Result<CocycleVerdict, BialgebraError> {
    let m = g.dim();
    if delta.dim() != m {
        return Err(BialgebraError::Dimension { expected: m, got: delta.dim() });
    }
    for i in 0..m {
        for j in i + 1..m {
            let lhs = delta.apply(&g.bracket_basis(i, j));
            let a = ad_extension(g, &Vector::basis(m, i), &delta.images[j])?;
            let b = ad_extension(g, &Vector::basis(m, j), &delta.images[i])?;
            let defect = lhs.sub(&a.sub(&b)?)?;
            if !defect.is_zero() {
                return Ok(CocycleVerdict::Violation { pair: (i, j), defect });
            }
        }
    }
    Ok(CocycleVerdict::Ok)
}

/// A Lie algebra together with a compatible cobracket and its dual algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct LieBialgebra {
    g: LieAlgebra,
    delta: CocommutatorMap,
    dual: LieAlgebra,
}

impl LieBialgebra {
    /// Validates the cocycle condition and the Jacobi identity of the dual.
    pub fn new(g: LieAlgebra, delta: CocommutatorMap) -> Result<Self, BialgebraError> {
        if let CocycleVerdict::Violation { pair, .. } = cocycle_check(&g, &delta)? {
            return Err(BialgebraError::NotCocycle(pair));
        }
        let dual = dual_constants(&g, &delta)?;
        Ok(LieBialgebra { g, delta, dual })
    }

    pub fn from_rmatrix(g: LieAlgebra, r: &ExteriorElement) -> Result<Self, BialgebraError> {
        let delta = cocommutator_from_rmatrix(&g, r)?;
        Self::new(g, delta)
    }

    /// Builds the bialgebra from dual structure constants given in the dual basis.
    pub fn from_dual(g: LieAlgebra, dual: &LieAlgebra) -> Result<Self, BialgebraError> {
        if dual.dim() != g.dim() {
            return Err(BialgebraError::Dimension { expected: g.dim(), got: dual.dim() });
        }
        Self::new(g, delta_from_dual(dual))
    }

    /// The bialgebra with zero cobracket.
    pub fn trivial(g: LieAlgebra) -> Self {
        let m = g.dim();
        Self::new(g, CocommutatorMap::zero(m)).expect("zero cobracket is compatible")
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn delta(&self) -> &CocommutatorMap {
        &self.delta
    }

    pub fn dual(&self) -> &LieAlgebra {
        &self.dual
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `χ_{g*}`, the modular character of the dual algebra read as a vector of `g`.
    pub fn dual_modular_character(&self) -> Vector {
        dual_modular_character(&self.dual)
    }

    pub fn double_bracket(&self, a: &DoubleElement, b: &DoubleElement) -> DoubleElement {
        double_bracket(&self.g, &self.dual, a, b)
    }

    pub fn double_jacobi_check(&self) -> JacobiVerdict {
        double_jacobi_check(&self.g, &self.dual)
    }

    /// The double as a `2m`-dimensional Lie algebra, `g` first.
    pub fn double_algebra(&self) -> LieAlgebra {
        double_algebra(&self.g, &self.dual)
    }
}

pub fn dual_modular_character(dual: &LieAlgebra) -> Vector {
    Vector(dual.modular_character().0)
}

/// Element `X + ξ` of the double `g ⊕ g*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleElement {
    pub g_part: Vector,
    pub dual_part: Covector,
}

impl DoubleElement {
    pub fn from_g(x: Vector) -> Self {
        let m = x.dim();
        DoubleElement { g_part: x, dual_part: Covector::zero(m) }
    }

    pub fn from_dual(xi: Covector) -> Self {
        let m = xi.dim();
        DoubleElement { g_part: Vector::zero(m), dual_part: xi }
    }

    /// Basis element `k` of the double: `X_k` for `k < m`, else `X^{k-m}`.
    pub fn basis(m: usize, k: usize) -> Self {
        if k < m {
            Self::from_g(Vector::basis(m, k))
        } else {
            Self::from_dual(Covector::basis(m, k - m))
        }
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.g_part.0.iter().chain(&self.dual_part.0).cloned().collect()
    }
}

/// Coadjoint action of `g*` on `g`: component `a` of the result is `⟨[X^a, ξ]*, X⟩`.
fn coad_dual_on_g(dual: &LieAlgebra, xi: &Covector, x: &Vector) -> Vector {
    let m = dual.dim();
    let xi_v = Vector(xi.0.clone());
    Vector(
        (0..m)
            .map(|a| {
                let br = dual.br(&Vector::basis(m, a), &xi_v);
                br.0.iter().zip(&x.0).map(|(p, q)| p * q).sum()
            })
            .collect(),
    )
}

/// Coadjoint action of `g` on `g*`: `(ad^g)*_X ξ (X') = −ξ([X, X'])`.
fn coad_g_on_dual(g: &LieAlgebra, x: &Vector, xi: &Covector) -> Covector {
    let m = g.dim();
    Covector((0..m).map(|b| -xi.eval(&g.br(x, &Vector::basis(m, b)))).collect())
}

/// `[X1+ξ1, X2+ξ2] = ([X1,X2] + coad_{ξ1}X2 − coad_{ξ2}X1) + ([ξ1,ξ2]* + coad_{X1}ξ2 − coad_{X2}ξ1)`.
pub fn double_bracket(g: &LieAlgebra, dual: &LieAlgebra, a: &DoubleElement, b: &DoubleElement) -> DoubleElement {
    let g_part = g
        .br(&a.g_part, &b.g_part)
        .add(&coad_dual_on_g(dual, &a.dual_part, &b.g_part))
        .sub(&coad_dual_on_g(dual, &b.dual_part, &a.g_part));
    let xi_br = dual.br(&Vector(a.dual_part.0.clone()), &Vector(b.dual_part.0.clone()));
    let dual_part = Covector(xi_br.0)
        .add(&coad_g_on_dual(g, &a.g_part, &b.dual_part))
        .sub(&coad_g_on_dual(g, &b.g_part, &a.dual_part));
    DoubleElement { g_part, dual_part }
}

pub fn double_algebra(g: &LieAlgebra, dual: &LieAlgebra) -> LieAlgebra {
    let m = g.dim();
    let labels: Vec<String> = g.labels().iter().chain(dual.labels()).cloned().collect();
    let mut d = LieAlgebra::new(labels);
    for i in 0..2 * m {
        for j in i + 1..2 * m {
            let v = double_bracket(g, dual, &DoubleElement::basis(m, i), &DoubleElement::basis(m, j));
            if v.flatten().iter().any(|c| !c.is_zero()) {
                d.set_bracket(i, j, &Vector(v.flatten()));
            }
        }
    }
    d
}

/// Jacobi identity of the double bracket on all basis triples.
pub fn double_jacobi_check(g: &LieAlgebra, dual: &LieAlgebra) -> JacobiVerdict {
    double_algebra(g, dual).jacobi_check()
}
