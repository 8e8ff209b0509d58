//! Decision procedures for Poisson homogeneous spaces `G/H` described at the
//! Lie algebra level by a bialgebra `(g, δ)` and a subalgebra `h`.

use bialgebra::{DoubleElement, LieBialgebra};
use exterior_algebra::{ce_differential, ExteriorElement, ExteriorError};
use lie_core::linalg::{self, AffineSolution};
use lie_core::{Covector, LieError, Scalar, Subalgebra, Vector};
use num_traits::{One, Zero};
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HomspaceError {
    #[error("the annihilator of h is not a subalgebra of the dual")]
    NotCoisotropic,
    #[error("subalgebra vectors have dimension {got}, algebra has {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("internal identity failed: {0}")]
    Identity(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// A homogeneous space: bialgebra, isotropy subalgebra and a display name.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousSpaceSpec {
    pub name: String,
    pub bialgebra: LieBialgebra,
    pub h: Subalgebra,
}

impl HomogeneousSpaceSpec {
    /// Checks that `h_basis` spans a subalgebra of `g`.
    pub fn new(name: impl Into<String>, bialgebra: LieBialgebra, h_basis: Vec<Vector>) -> Result<Self, HomspaceError> {
        let m = bialgebra.dim();
        if let Some(v) = h_basis.iter().find(|v| v.dim() != m) {
            return Err(HomspaceError::Dimension { expected: m, got: v.dim() });
        }
        let h = Subalgebra::new(bialgebra.g(), h_basis)?;
        Ok(HomogeneousSpaceSpec { name: name.into(), bialgebra, h })
    }

    pub fn dim_g(&self) -> usize {
        self.bialgebra.dim()
    }

    /// Basis of `h⁰ ⊂ g*`.
    pub fn annihilator(&self) -> Vec<Covector> {
        self.bialgebra.g().annihilator(&self.h)
    }

    fn annihilator_as_vectors(&self) -> Vec<Vector> {
        self.annihilator().into_iter().map(|c| Vector(c.0)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupType {
    PoissonLieSubgroup,
    CoisotropicOnly,
    NotCoisotropic,
}

impl SubgroupType {
    pub fn as_str(&self) -> &'static str {
        match self {
            SubgroupType::PoissonLieSubgroup => "poisson_lie_subgroup",
            SubgroupType::CoisotropicOnly => "coisotropic_only",
            SubgroupType::NotCoisotropic => "not_coisotropic",
        }
    }
}

/// `h⁰` is a subalgebra of `g*`.
pub fn coisotropy_check(s: &HomogeneousSpaceSpec) -> bool {
    let ann = s.annihilator_as_vectors();
    if ann.is_empty() {
        return true;
    }
    s.bialgebra.dual().is_subalgebra(&ann).expect("annihilator basis is independent")
}

/// Ideal test `[h⁰, g*] ⊆ h⁰` on top of coisotropy.
pub fn subgroup_type(s: &HomogeneousSpaceSpec) -> SubgroupType {
    if !coisotropy_check(s) {
        return SubgroupType::NotCoisotropic;
    }
    let ann = s.annihilator_as_vectors();
    let rows: Vec<Vec<Scalar>> = ann.iter().map(|v| v.0.clone()).collect();
    let m = s.dim_g();
    let dual = s.bialgebra.dual();
    let ideal = ann
        .iter()
        .all(|y| (0..m).all(|k| linalg::in_span(&rows, &dual.br(y, &Vector::basis(m, k)).0)));
    if ideal {
        SubgroupType::PoissonLieSubgroup
    } else {
        SubgroupType::CoisotropicOnly
    }
}

/// Modular character of `(h⁰, [·,·]*)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiH0 {
    /// Values on the annihilator basis returned by [`HomogeneousSpaceSpec::annihilator`].
    pub on_basis: Vec<Scalar>,
    /// A vector of `g` pairing with `h⁰` as the character does, with fewest nonzero entries.
    pub lift: Vector,
}

impl ChiH0 {
    pub fn is_zero(&self) -> bool {
        self.on_basis.iter().all(|c| c.is_zero())
    }
}

pub fn chi_h0(s: &HomogeneousSpaceSpec) -> Result<ChiH0, HomspaceError> {
    if !coisotropy_check(s) {
        return Err(HomspaceError::NotCoisotropic);
    }
    let ann = s.annihilator_as_vectors();
    let m = s.dim_g();
    let on_basis = if ann.is_empty() {
        Vec::new()
    } else {
        s.bialgebra.dual().induced_structure(&ann)?.modular_character().0
    };
    let rows: Vec<Vec<Scalar>> = ann.iter().map(|v| v.0.clone()).collect();
    let lift = if rows.is_empty() {
        Vector::zero(m)
    } else {
        Vector(
            linalg::min_support_solution(&rows, &on_basis, m)
                .ok_or_else(|| HomspaceError::Identity("annihilator pairing is not surjective".into()))?,
        )
    };
    Ok(ChiH0 { on_basis, lift })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeKind {
    Invariant,
    SemiInvariantAlgebraLevel,
    None,
}

impl VolumeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VolumeKind::Invariant => "invariant",
            VolumeKind::SemiInvariantAlgebraLevel => "semi_invariant_algebra_level",
            VolumeKind::None => "none",
        }
    }
}

/// Top form `V0` on `h⁰` with an optional `θ0` such that `d V0 = −θ0 ∧ V0`.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeCertificate {
    pub v0: ExteriorElement,
    pub theta0: Option<Covector>,
    pub kind: VolumeKind,
}

/// `V0 = Y^1 ∧ ... ∧ Y^{m-n}` over the annihilator basis.
pub fn top_form(s: &HomogeneousSpaceSpec) -> ExteriorElement {
    ExteriorElement::wedge_all_covectors(s.dim_g(), &s.annihilator())
}

/// `χg|h − χh` on the basis of `h`.
pub fn restriction_target(s: &HomogeneousSpaceSpec) -> Result<Vec<Scalar>, HomspaceError> {
    let g = s.bialgebra.g();
    let chi_h = s.h.modular_character(g)?;
    Ok(s.h.restrict(&g.modular_character()).into_iter().zip(chi_h).map(|(a, b)| a - b).collect())
}

/// Tests `χg|h = χh`; when it holds, the top form on `h⁰` is closed.
pub fn invariant_volume_exists(s: &HomogeneousSpaceSpec) -> Result<(bool, VolumeCertificate), HomspaceError> {
    let v0 = top_form(s);
    let exists = restriction_target(s)?.iter().all(|c| c.is_zero());
    if exists {
        if !ce_differential(s.bialgebra.g(), &v0)?.is_zero() {
            return Err(HomspaceError::Identity("invariant volume is not closed".into()));
        }
        let theta0 = Some(Covector::zero(s.dim_g()));
        Ok((true, VolumeCertificate { v0, theta0, kind: VolumeKind::Invariant }))
    } else {
        Ok((false, VolumeCertificate { v0, theta0: None, kind: VolumeKind::None }))
    }
}

/// Affine set of closed `θ0` with `θ0|h = χg|h − χh`.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiInvariantSolutions {
    pub solution: Option<AffineSolution>,
    /// Integration of the cocycle to a multiplicative function is only guaranteed on simply connected groups.
    pub algebra_level: bool,
}

impl SemiInvariantSolutions {
    pub fn feasible(&self) -> bool {
        self.solution.is_some()
    }
}

fn semi_invariant_system(s: &HomogeneousSpaceSpec) -> Result<(Vec<Vec<Scalar>>, Vec<Scalar>), HomspaceError> {
    let g = s.bialgebra.g();
    let mut rows = g.closedness_rows();
    let mut rhs = vec![Scalar::zero(); rows.len()];
    for (x, t) in s.h.basis.iter().zip(restriction_target(s)?) {
        rows.push(x.0.clone());
        rhs.push(t);
    }
    Ok((rows, rhs))
}

fn solve_or_empty(rows: &[Vec<Scalar>], rhs: &[Scalar], m: usize) -> Option<AffineSolution> {
    if rows.is_empty() {
        return Some(AffineSolution {
            particular: vec![Scalar::zero(); m],
            homogeneous: (0..m).map(|i| Vector::basis(m, i).0).collect(),
        });
    }
    linalg::solve(rows, rhs, m)
}

pub fn semi_invariant_solutions(s: &HomogeneousSpaceSpec) -> Result<SemiInvariantSolutions, HomspaceError> {
    let (rows, rhs) = semi_invariant_system(s)?;
    Ok(SemiInvariantSolutions { solution: solve_or_empty(&rows, &rhs, s.dim_g()), algebra_level: true })
}

/// Is `θ0` a closed covector with the prescribed restriction to `h`?
pub fn is_semi_invariant_cocycle(s: &HomogeneousSpaceSpec, theta0: &Covector) -> Result<bool, HomspaceError> {
    Ok(s.bialgebra.g().is_closed_one_form(theta0) && s.h.restrict(theta0) == restriction_target(s)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MuStatus {
    MultiplicativeUnimodular,
    FailsConditionI,
    FailsConditionII,
}

impl MuStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            MuStatus::MultiplicativeUnimodular => "multiplicative_unimodular",
            MuStatus::FailsConditionI => "fails_condition_i",
            MuStatus::FailsConditionII => "fails_condition_ii",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularityReport {
    pub chi_h0: ChiH0,
    pub h0_unimodular: bool,
    pub mu_witness_theta0: Option<Covector>,
    pub mu_status: MuStatus,
    /// Dimension of the solution set of the second condition (0 when infeasible).
    pub cocycle_solution_space_dim: usize,
    /// The exactness condition on the group is assumed, as for simply connected groups.
    pub assumes_simply_connected: bool,
}

/// Residual of `½([X,χ_{g*}] − i(χg)δX) + i(θ0)δX` for basis vector `X_b`.
fn condition_ii_residual(s: &HomogeneousSpaceSpec, theta0: &Covector, b: usize) -> Result<Vector, HomspaceError> {
    let bi = &s.bialgebra;
    let m = bi.dim();
    let g = bi.g();
    let half = Scalar::new(1.into(), 2.into());
    let chi_dual = bi.dual_modular_character();
    let chi_g = g.modular_character();
    let dx = &bi.delta().images[b];
    let first = g.br(&Vector::basis(m, b), &chi_dual);
    let contract = |c: &Covector| -> Result<Vector, HomspaceError> {
        if dx.is_zero() {
            return Ok(Vector::zero(m));
        }
        Ok(Vector(dx.interior_covector(c)?.as_coordinates()?))
    };
    Ok(first.sub(&contract(&chi_g)?).scale(&half).add(&contract(theta0)?))
}

/// Linear system in `θ0` encoding the semi-invariance constraints and the
/// vanishing of the residual above for every basis vector.
fn condition_ii_system(s: &HomogeneousSpaceSpec) -> Result<(Vec<Vec<Scalar>>, Vec<Scalar>), HomspaceError> {
    let m = s.dim_g();
    let (mut rows, mut rhs) = semi_invariant_system(s)?;
    let zero = Covector::zero(m);
    for b in 0..m {
        let constant = condition_ii_residual(s, &zero, b)?;
        let columns: Vec<Vector> = (0..m)
            .map(|k| {
                condition_ii_residual(s, &Covector::basis(m, k), b).map(|r| r.sub(&constant))
            })
            .collect::<Result<_, _>>()?;
        for a in 0..m {
            rows.push(columns.iter().map(|c| c.0[a].clone()).collect());
            rhs.push(-constant.0[a].clone());
        }
    }
    Ok((rows, rhs))
}

/// Checks a candidate `θ0` against both constraints of the second condition.
pub fn verify_mu_witness(s: &HomogeneousSpaceSpec, theta0: &Covector) -> Result<bool, HomspaceError> {
    let g = s.bialgebra.g();
    let v0 = top_form(s);
    let dv0 = ce_differential(g, &v0)?;
    let rhs = ExteriorElement::from_covector(theta0).wedge(&v0)?.scale(&-Scalar::one());
    if dv0 != rhs || !g.is_closed_one_form(theta0) {
        return Ok(false);
    }
    for b in 0..s.dim_g() {
        if !condition_ii_residual(s, theta0, b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn multiplicative_unimodularity_check(s: &HomogeneousSpaceSpec) -> Result<UnimodularityReport, HomspaceError> {
    let chi = chi_h0(s)?;
    let h0_unimodular = chi.is_zero();
    let m = s.dim_g();
    let (rows, rhs) = condition_ii_system(s)?;
    let solution = solve_or_empty(&rows, &rhs, m);
    let cocycle_solution_space_dim = solution.as_ref().map(|a| a.homogeneous.len()).unwrap_or(0);
    let witness = match &solution {
        None => None,
        Some(_) => {
            let chi_g = s.bialgebra.g().modular_character();
            let half = chi_g.scale(&Scalar::new(1.into(), 2.into()));
            let mut found = None;
            for cand in [chi_g, half] {
                if verify_mu_witness(s, &cand)? {
                    found = Some(cand);
                    break;
                }
            }
            match found {
                Some(c) => Some(c),
                None => {
                    let sol = linalg::min_support_solution(&rows, &rhs, m)
                        .ok_or_else(|| HomspaceError::Identity("feasible system without a solution".into()))?;
                    Some(Covector(sol))
                }
            }
        }
    };
    if let Some(w) = &witness {
        if !verify_mu_witness(s, w)? {
            return Err(HomspaceError::Identity("witness fails re-verification".into()));
        }
    }
    let mu_status = if !h0_unimodular {
        MuStatus::FailsConditionI
    } else if witness.is_none() {
        MuStatus::FailsConditionII
    } else {
        MuStatus::MultiplicativeUnimodular
    };
    if mu_status == MuStatus::MultiplicativeUnimodular {
        assert!(chi.is_zero(), "multiplicative unimodularity forces a unimodular annihilator");
    }
    Ok(UnimodularityReport {
        chi_h0: chi,
        h0_unimodular,
        mu_witness_theta0: witness,
        mu_status,
        cocycle_solution_space_dim,
        assumes_simply_connected: true,
    })
}

/// Both sides of `χ_l(ξ) = ⟨ξ, −χ_{g*} + 2 x_{h⁰}⟩` on the annihilator basis,
/// where `l = h ⊕ h⁰` sits inside the double.
#[derive(Debug, Clone, PartialEq)]
pub struct LuCrosscheck {
    pub lagrangian_character: Vec<Scalar>,
    pub predicted: Vec<Scalar>,
    pub x_l: Vector,
}

impl LuCrosscheck {
    pub fn ok(&self) -> bool {
        self.lagrangian_character == self.predicted
    }
}

pub fn lu_xl_crosscheck(s: &HomogeneousSpaceSpec) -> Result<LuCrosscheck, HomspaceError> {
    let chi = chi_h0(s)?;
    let bi = &s.bialgebra;
    let m = bi.dim();
    let ann = s.annihilator();
    let l_basis: Vec<DoubleElement> = s
        .h
        .basis
        .iter()
        .map(|x| DoubleElement::from_g(x.clone()))
        .chain(ann.iter().map(|c| DoubleElement::from_dual(c.clone())))
        .collect();
    let rows: Vec<Vec<Scalar>> = l_basis.iter().map(DoubleElement::flatten).collect();
    let mut lagrangian_character = Vec::with_capacity(ann.len());
    for xi in &ann {
        let xi_d = DoubleElement::from_dual(xi.clone());
        let mut trace = Scalar::zero();
        for (p, e) in l_basis.iter().enumerate() {
            let img = bi.double_bracket(&xi_d, e);
            let coords = linalg::coordinates_in(&rows, &img.flatten())
                .ok_or_else(|| HomspaceError::Identity("h ⊕ h⁰ is not closed in the double".into()))?;
            trace += &coords[p];
        }
        lagrangian_character.push(trace);
    }
    let x_l = bi.dual_modular_character().scale(&-Scalar::one()).add(&chi.lift.scale(&Scalar::from_integer(2.into())));
    let predicted = ann.iter().map(|xi| xi.eval(&x_l)).collect();
    debug_assert_eq!(x_l.dim(), m);
    Ok(LuCrosscheck { lagrangian_character, predicted, x_l })
}

/// One table row per homogeneous space.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationRow {
    pub name: String,
    pub subgroup_type: SubgroupType,
    /// `None` when `h⁰` is not a subalgebra.
    pub chi_h0_zero: Option<bool>,
    pub invariant_volume: bool,
    pub semi_invariant: bool,
    pub mu_status: Option<MuStatus>,
    pub mu_witness: Option<Covector>,
}

pub fn classify(s: &HomogeneousSpaceSpec) -> Result<ClassificationRow, HomspaceError> {
    let subgroup_type = subgroup_type(s);
    let (invariant_volume, _) = invariant_volume_exists(s)?;
    let semi_invariant = semi_invariant_solutions(s)?.feasible();
    let (chi_h0_zero, mu_status, mu_witness) = if subgroup_type == SubgroupType::NotCoisotropic {
        (None, None, None)
    } else {
        let r = multiplicative_unimodularity_check(s)?;
        (Some(r.h0_unimodular), Some(r.mu_status), r.mu_witness_theta0)
    };
    Ok(ClassificationRow {
        name: s.name.clone(),
        subgroup_type,
        chi_h0_zero,
        invariant_volume,
        semi_invariant,
        mu_status,
        mu_witness,
    })
}

/// Classifies every spec, in parallel, preserving input order.
pub fn classification_report(specs: &[HomogeneousSpaceSpec]) -> Result<Vec<ClassificationRow>, HomspaceError> {
    specs.par_iter().map(classify).collect()
}
