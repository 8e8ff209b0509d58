//! Built-in homogeneous spaces with their expected verdicts.

use bialgebra::{standard_sln, LieBialgebra};
use exterior_algebra::{CocommutatorMap, ExteriorElement, Space};
use homspace_analysis::{HomogeneousSpaceSpec, MuStatus, SubgroupType};
use lie_core::{int, Covector, LieAlgebra, Scalar, Vector};

/// Verdicts a catalog entry must reproduce. `None` fields are not pinned.
#[derive(Debug, Clone, PartialEq)]
pub struct Golden {
    pub subgroup_type: SubgroupType,
    pub chi_h0_zero: Option<bool>,
    pub invariant_volume: Option<bool>,
    pub semi_invariant: Option<bool>,
    pub mu_status: Option<MuStatus>,
    pub witness: Option<Covector>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    /// Table or worked example the golden data comes from.
    pub anchors: Vec<String>,
    pub spec: HomogeneousSpaceSpec,
    pub golden: Golden,
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn biv(m: usize, i: usize, j: usize, c: Scalar) -> ExteriorElement {
    ExteriorElement::monomial(m, Space::Primal, &[i, j], c)
}

pub fn so3() -> LieAlgebra {
    LieAlgebra::from_brackets(
        labels(&["J1", "J2", "J3"]),
        &[(0, 1, vec![(2, int(1))]), (1, 2, vec![(0, int(1))]), (2, 0, vec![(1, int(1))])],
    )
    .expect("so(3) constants")
}

/// `sl(2,R)` in the basis `P1, P2, J12`.
pub fn sl2_p() -> LieAlgebra {
    LieAlgebra::from_brackets(
        labels(&["P1", "P2", "J12"]),
        &[(0, 2, vec![(1, int(-1))]), (1, 2, vec![(0, int(-1))]), (0, 1, vec![(2, int(1))])],
    )
    .expect("sl(2) constants")
}

/// `sl(2,R)` in the basis `J3, J+, J-`.
pub fn sl2_j() -> LieAlgebra {
    LieAlgebra::from_brackets(
        labels(&["J3", "J+", "J-"]),
        &[(0, 1, vec![(1, int(2))]), (0, 2, vec![(2, int(-2))]), (1, 2, vec![(0, int(1))])],
    )
    .expect("sl(2) constants")
}

pub fn so3_bialgebra(eta: &Scalar) -> LieBialgebra {
    LieBialgebra::from_rmatrix(so3(), &biv(3, 0, 1, eta.clone())).expect("so(3) bialgebra")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Structure {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

impl Sl2Structure {
    pub const ALL: [Sl2Structure; 3] = [Sl2Structure::Hyperbolic, Sl2Structure::Elliptic, Sl2Structure::Parabolic];

    pub fn as_str(&self) -> &'static str {
        match self {
            Sl2Structure::Hyperbolic => "hyperbolic",
            Sl2Structure::Elliptic => "elliptic",
            Sl2Structure::Parabolic => "parabolic",
        }
    }

    /// r-matrix in the `P1, P2, J12` basis.
    pub fn rmatrix(&self, eta: &Scalar) -> ExteriorElement {
        match self {
            Sl2Structure::Hyperbolic => biv(3, 0, 1, int(2) * eta),
            Sl2Structure::Elliptic => biv(3, 2, 1, int(2) * eta),
            Sl2Structure::Parabolic => biv(3, 2, 0, eta.clone()).add(&biv(3, 2, 1, eta.clone())).expect("same space"),
        }
    }

    pub fn bialgebra(&self, eta: &Scalar) -> LieBialgebra {
        LieBialgebra::from_rmatrix(sl2_p(), &self.rmatrix(eta)).expect("sl(2) bialgebra")
    }
}

/// The three one-dimensional isotropy directions, in the `P1, P2, J12` basis.
pub fn sl2_quotients() -> [(&'static str, Vector); 3] {
    [
        ("ads2", Vector::from_ints(&[0, 0, 1])),
        ("hyperbolic-plane", Vector::from_ints(&[1, 0, 0])),
        ("light-cone", Vector::from_ints(&[1, 1, 0])),
    ]
}

/// `[X1,X3] = X2`, `[X2,X3] = −X2`, `δ(X3) = X1∧X2`, `h = ⟨X1⟩`.
pub fn solvable_plane() -> HomogeneousSpaceSpec {
    let g = LieAlgebra::from_brackets(labels(&["X1", "X2", "X3"]), &[(0, 2, vec![(1, int(1))]), (1, 2, vec![(1, int(-1))])])
        .expect("constants");
    let mut images = vec![ExteriorElement::zero(3, Space::Primal, 2); 3];
    images[2] = biv(3, 0, 1, int(1));
    let b = LieBialgebra::new(g, CocommutatorMap::new(3, images).expect("images")).expect("bialgebra");
    HomogeneousSpaceSpec::new("solvable-plane", b, vec![Vector::from_ints(&[1, 0, 0])]).expect("subalgebra")
}

/// `[X3,X4] = −X3`, `δ(X1) = X1∧X2`, `δ(X3) = X2∧X3`, `h = ⟨X4⟩`.
pub fn solvable_threefold() -> HomogeneousSpaceSpec {
    let g = LieAlgebra::from_brackets(labels(&["X1", "X2", "X3", "X4"]), &[(2, 3, vec![(2, int(-1))])]).expect("constants");
    let mut images = vec![ExteriorElement::zero(4, Space::Primal, 2); 4];
    images[0] = biv(4, 0, 1, int(1));
    images[2] = biv(4, 1, 2, int(1));
    let b = LieBialgebra::new(g, CocommutatorMap::new(4, images).expect("images")).expect("bialgebra");
    HomogeneousSpaceSpec::new("solvable-threefold", b, vec![Vector::from_ints(&[0, 0, 0, 1])]).expect("subalgebra")
}

/// `[X3,X1] = X1`, `[X3,X2] = X2`, `δ(X1) = −X2∧X3`, trivial isotropy.
pub fn full_group() -> HomogeneousSpaceSpec {
    let g = LieAlgebra::from_brackets(labels(&["X1", "X2", "X3"]), &[(2, 0, vec![(0, int(1))]), (2, 1, vec![(1, int(1))])])
        .expect("constants");
    let mut images = vec![ExteriorElement::zero(3, Space::Primal, 2); 3];
    images[0] = biv(3, 1, 2, int(-1));
    let b = LieBialgebra::new(g, CocommutatorMap::new(3, images).expect("images")).expect("bialgebra");
    HomogeneousSpaceSpec::new("full-group", b, vec![]).expect("subalgebra")
}

/// `SL(3,R)/SO(3)` with the standard structure on `sl(3)`.
pub fn toda_n3(eta: &Scalar) -> HomogeneousSpaceSpec {
    let (basis, b) = standard_sln(3, eta).expect("sl(3) bialgebra");
    let q: Vec<Vector> = basis
        .labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.starts_with('Q'))
        .map(|(i, _)| Vector::basis(8, i))
        .collect();
    HomogeneousSpaceSpec::new("toda-n3", b, q).expect("so(3) inside sl(3)")
}

fn golden(subgroup_type: SubgroupType, chi_zero: bool, mu: MuStatus) -> Golden {
    Golden {
        subgroup_type,
        chi_h0_zero: Some(chi_zero),
        invariant_volume: None,
        semi_invariant: None,
        mu_status: Some(mu),
        witness: None,
    }
}

/// The two sphere quotients of SU(2).
pub fn sphere_entries(eta: &Scalar) -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "subgroup-sphere".into(),
            anchors: vec!["sphere table: subgroup sphere".into()],
            spec: HomogeneousSpaceSpec::new("subgroup-sphere", so3_bialgebra(eta), vec![Vector::from_ints(&[0, 0, 1])])
                .expect("subalgebra"),
            golden: golden(SubgroupType::PoissonLieSubgroup, true, MuStatus::FailsConditionII),
        },
        CatalogEntry {
            name: "coisotropic-sphere".into(),
            anchors: vec!["sphere table: coisotropic sphere".into()],
            spec: HomogeneousSpaceSpec::new("coisotropic-sphere", so3_bialgebra(eta), vec![Vector::from_ints(&[1, 0, 0])])
                .expect("subalgebra"),
            golden: golden(SubgroupType::CoisotropicOnly, false, MuStatus::FailsConditionI),
        },
    ]
}

/// The nine quotients of SL(2,R) by the three structures. Each structure has
/// exactly one Poisson-Lie subgroup quotient, which fails the second
/// condition; the two coisotropic ones fail the first.
pub fn sl2_entries(eta: &Scalar) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for (si, s) in Sl2Structure::ALL.into_iter().enumerate() {
        for (qi, (q, h)) in sl2_quotients().into_iter().enumerate() {
            let name = format!("{}/{q}", s.as_str());
            let mut g = if si == qi {
                golden(SubgroupType::PoissonLieSubgroup, true, MuStatus::FailsConditionII)
            } else {
                golden(SubgroupType::CoisotropicOnly, false, MuStatus::FailsConditionI)
            };
            g.invariant_volume = Some(true);
            out.push(CatalogEntry {
                anchors: vec![format!("sl2 quotient table: {} structure, {q}", s.as_str())],
                spec: HomogeneousSpaceSpec::new(name.clone(), s.bialgebra(eta), vec![h]).expect("subalgebra"),
                name,
                golden: g,
            });
        }
    }
    out
}

/// Worked examples beyond the two tables.
pub fn worked_entries(eta: &Scalar) -> Vec<CatalogEntry> {
    let mut v = solvable_entries();
    v.push(toda_entry(eta));
    v
}

/// The three solvable worked examples; none depends on the parameter.
pub fn solvable_entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "solvable-plane".into(),
            anchors: vec!["worked example: multiplicative unimodular plane, witness equals the modular character".into()],
            spec: solvable_plane(),
            golden: Golden {
                subgroup_type: SubgroupType::PoissonLieSubgroup,
                chi_h0_zero: Some(true),
                invariant_volume: Some(true),
                semi_invariant: Some(true),
                mu_status: Some(MuStatus::MultiplicativeUnimodular),
                witness: Some(Covector::from_ints(&[0, 0, 1])),
            },
        },
        CatalogEntry {
            name: "solvable-threefold".into(),
            anchors: vec!["worked example: semi-invariant but no invariant volume, witness X^4".into()],
            spec: solvable_threefold(),
            golden: Golden {
                subgroup_type: SubgroupType::PoissonLieSubgroup,
                chi_h0_zero: Some(true),
                invariant_volume: Some(false),
                semi_invariant: Some(true),
                mu_status: Some(MuStatus::MultiplicativeUnimodular),
                witness: Some(Covector::from_ints(&[0, 0, 0, 1])),
            },
        },
        CatalogEntry {
            name: "full-group".into(),
            anchors: vec!["worked example: trivial isotropy, witness is half the modular character".into()],
            spec: full_group(),
            golden: Golden {
                subgroup_type: SubgroupType::PoissonLieSubgroup,
                chi_h0_zero: Some(true),
                invariant_volume: None,
                semi_invariant: Some(true),
                mu_status: Some(MuStatus::MultiplicativeUnimodular),
                witness: Some(Covector::from_ints(&[0, 0, 1])),
            },
        },
    ]
}

/// `SL(3,R)/SO(3)`, the quotient behind the Toda example.
pub fn toda_entry(eta: &Scalar) -> CatalogEntry {
    CatalogEntry {
        name: "toda-n3".into(),
        anchors: vec!["Toda example: SL(3)/SO(3) is coisotropic and not unimodular".into()],
        spec: toda_n3(eta),
        golden: Golden {
            subgroup_type: SubgroupType::CoisotropicOnly,
            chi_h0_zero: Some(false),
            invariant_volume: Some(true),
            semi_invariant: None,
            mu_status: Some(MuStatus::FailsConditionI),
            witness: None,
        },
    }
}

pub fn all_entries(eta: &Scalar) -> Vec<CatalogEntry> {
    let mut v = sphere_entries(eta);
    v.extend(sl2_entries(eta));
    v.extend(worked_entries(eta));
    v
}

pub const ENTRY_COUNT: usize = 15;

/// Entry `k` of [`all_entries`], building only what it needs.
pub fn entry_at(k: usize, eta: &Scalar) -> CatalogEntry {
    match k {
        0 | 1 => sphere_entries(eta).swap_remove(k),
        2..=10 => sl2_entries(eta).swap_remove(k - 2),
        11..=13 => solvable_entries().swap_remove(k - 11),
        _ => toda_entry(eta),
    }
}

pub fn find(name: &str, eta: &Scalar) -> Option<CatalogEntry> {
    all_entries(eta).into_iter().find(|e| e.name == name)
}
