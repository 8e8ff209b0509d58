use bialgebra::{standard_sln, LieBialgebra};
use exterior_algebra::{ce_differential, CocommutatorMap, ExteriorElement, Space};
use homspace_analysis::*;
use lie_core::{frac, int, linalg, Covector, LieAlgebra, Scalar, Vector};
use num_traits::Zero;
use proptest::prelude::*;

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn so3() -> LieAlgebra {
    LieAlgebra::from_brackets(
        labels(&["J1", "J2", "J3"]),
        &[(0, 1, vec![(2, int(1))]), (1, 2, vec![(0, int(1))]), (2, 0, vec![(1, int(1))])],
    )
    .unwrap()
}

fn sl2_p() -> LieAlgebra {
    LieAlgebra::from_brackets(
        labels(&["P1", "P2", "J12"]),
        &[(0, 2, vec![(1, int(-1))]), (1, 2, vec![(0, int(-1))]), (0, 1, vec![(2, int(1))])],
    )
    .unwrap()
}

fn biv(m: usize, i: usize, j: usize, c: Scalar) -> ExteriorElement {
    ExteriorElement::monomial(m, Space::Primal, &[i, j], c)
}

fn v(xs: &[i64]) -> Vector {
    Vector::from_ints(xs)
}

fn eta() -> Scalar {
    frac(2, 3)
}

fn so3_bialgebra() -> LieBialgebra {
    LieBialgebra::from_rmatrix(so3(), &biv(3, 0, 1, eta())).unwrap()
}

#[derive(Clone, Copy, Debug)]
enum Structure {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

fn sl2_bialgebra(s: Structure) -> LieBialgebra {
    let e = eta();
    let r = match s {
        Structure::Hyperbolic => biv(3, 0, 1, int(2) * &e),
        Structure::Elliptic => biv(3, 2, 1, int(2) * &e),
        Structure::Parabolic => biv(3, 2, 0, e.clone()).add(&biv(3, 2, 1, e)).unwrap(),
    };
    LieBialgebra::from_rmatrix(sl2_p(), &r).unwrap()
}

fn quotients() -> [(&'static str, Vector); 3] {
    [("ads2", v(&[0, 0, 1])), ("hyperbolic-plane", v(&[1, 0, 0])), ("light-cone", v(&[1, 1, 0]))]
}

fn solvable_plane() -> HomogeneousSpaceSpec {
    let g = LieAlgebra::from_brackets(labels(&["X1", "X2", "X3"]), &[(0, 2, vec![(1, int(1))]), (1, 2, vec![(1, int(-1))])])
        .unwrap();
    let mut images = vec![ExteriorElement::zero(3, Space::Primal, 2); 3];
    images[2] = biv(3, 0, 1, int(1));
    let b = LieBialgebra::new(g, CocommutatorMap::new(3, images).unwrap()).unwrap();
    HomogeneousSpaceSpec::new("solvable-plane", b, vec![v(&[1, 0, 0])]).unwrap()
}

fn solvable_threefold() -> HomogeneousSpaceSpec {
    let g = LieAlgebra::from_brackets(labels(&["X1", "X2", "X3", "X4"]), &[(2, 3, vec![(2, int(-1))])]).unwrap();
    let mut images = vec![ExteriorElement::zero(4, Space::Primal, 2); 4];
    images[0] = biv(4, 0, 1, int(1));
    images[2] = biv(4, 1, 2, int(1));
    let b = LieBialgebra::new(g, CocommutatorMap::new(4, images).unwrap()).unwrap();
    HomogeneousSpaceSpec::new("solvable-threefold", b, vec![v(&[0, 0, 0, 1])]).unwrap()
}

fn full_group() -> HomogeneousSpaceSpec {
    let g = LieAlgebra::from_brackets(labels(&["X1", "X2", "X3"]), &[(2, 0, vec![(0, int(1))]), (2, 1, vec![(1, int(1))])])
        .unwrap();
    let mut images = vec![ExteriorElement::zero(3, Space::Primal, 2); 3];
    images[0] = biv(3, 1, 2, int(-1));
    let b = LieBialgebra::new(g, CocommutatorMap::new(3, images).unwrap()).unwrap();
    HomogeneousSpaceSpec::new("full-group", b, vec![]).unwrap()
}

fn toda() -> HomogeneousSpaceSpec {
    let (basis, b) = standard_sln(3, &int(1)).unwrap();
    let q: Vec<Vector> = basis
        .labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.starts_with('Q'))
        .map(|(i, _)| Vector::basis(8, i))
        .collect();
    HomogeneousSpaceSpec::new("toda-n3", b, q).unwrap()
}

fn all_specs() -> Vec<HomogeneousSpaceSpec> {
    let mut specs = vec![
        HomogeneousSpaceSpec::new("subgroup-sphere", so3_bialgebra(), vec![v(&[0, 0, 1])]).unwrap(),
        HomogeneousSpaceSpec::new("coisotropic-sphere", so3_bialgebra(), vec![v(&[1, 0, 0])]).unwrap(),
    ];
    for s in [Structure::Hyperbolic, Structure::Elliptic, Structure::Parabolic] {
        for (name, h) in quotients() {
            specs.push(HomogeneousSpaceSpec::new(format!("{s:?}-{name}"), sl2_bialgebra(s), vec![h]).unwrap());
        }
    }
    specs.extend([solvable_plane(), solvable_threefold(), full_group(), toda()]);
    specs
}

#[test]
fn sphere_table() {
    let sub = HomogeneousSpaceSpec::new("subgroup-sphere", so3_bialgebra(), vec![v(&[0, 0, 1])]).unwrap();
    assert!(coisotropy_check(&sub));
    assert_eq!(subgroup_type(&sub), SubgroupType::PoissonLieSubgroup);
    assert!(chi_h0(&sub).unwrap().is_zero());
    assert_eq!(multiplicative_unimodularity_check(&sub).unwrap().mu_status, MuStatus::FailsConditionII);

    let coi = HomogeneousSpaceSpec::new("coisotropic-sphere", so3_bialgebra(), vec![v(&[1, 0, 0])]).unwrap();
    assert!(coisotropy_check(&coi));
    assert_eq!(subgroup_type(&coi), SubgroupType::CoisotropicOnly);
    assert!(!chi_h0(&coi).unwrap().is_zero());
    assert_eq!(multiplicative_unimodularity_check(&coi).unwrap().mu_status, MuStatus::FailsConditionI);
}

#[test]
fn sl2_quotient_table() {
    let pl_cells = [(0usize, 0usize), (1, 1), (2, 2)];
    for (si, s) in [Structure::Hyperbolic, Structure::Elliptic, Structure::Parabolic].into_iter().enumerate() {
        for (qi, (name, h)) in quotients().into_iter().enumerate() {
            let spec = HomogeneousSpaceSpec::new(name, sl2_bialgebra(s), vec![h]).unwrap();
            let row = classify(&spec).unwrap();
            let ctx = format!("{s:?} / {name}");
            assert!(row.invariant_volume, "{ctx}");
            if pl_cells.contains(&(si, qi)) {
                assert_eq!(row.subgroup_type, SubgroupType::PoissonLieSubgroup, "{ctx}");
                assert_eq!(row.chi_h0_zero, Some(true), "{ctx}");
                assert_eq!(row.mu_status, Some(MuStatus::FailsConditionII), "{ctx}");
            } else {
                assert_eq!(row.subgroup_type, SubgroupType::CoisotropicOnly, "{ctx}");
                assert_eq!(row.chi_h0_zero, Some(false), "{ctx}");
                assert_eq!(row.mu_status, Some(MuStatus::FailsConditionI), "{ctx}");
            }
        }
    }
}

#[test]
fn trivial_cobracket_is_coisotropic_for_any_h() {
    let b = LieBialgebra::trivial(sl2_p());
    for (_, h) in quotients() {
        let s = HomogeneousSpaceSpec::new("trivial", b.clone(), vec![h]).unwrap();
        assert!(coisotropy_check(&s));
        let lu = lu_xl_crosscheck(&s).unwrap();
        assert!(lu.ok());
        assert!(lu.lagrangian_character.iter().all(|c| c.is_zero()));
    }
}

#[test]
fn solvable_plane_is_multiplicative_unimodular() {
    let s = solvable_plane();
    let (exists, cert) = invariant_volume_exists(&s).unwrap();
    assert!(exists);
    assert_eq!(cert.kind, VolumeKind::Invariant);
    let expected = ExteriorElement::monomial(3, Space::Dual, &[1, 2], int(1));
    let ratio = cert.v0.coeff(&[1, 2]);
    assert!(!ratio.is_zero());
    assert_eq!(cert.v0, expected.scale(&ratio));
    assert_eq!(subgroup_type(&s), SubgroupType::PoissonLieSubgroup);
    let r = multiplicative_unimodularity_check(&s).unwrap();
    assert_eq!(r.mu_status, MuStatus::MultiplicativeUnimodular);
    assert_eq!(r.mu_witness_theta0, Some(Covector::from_ints(&[0, 0, 1])));
    assert!(r.assumes_simply_connected);
}

#[test]
fn solvable_threefold_has_only_semi_invariant_volumes() {
    let s = solvable_threefold();
    assert!(!invariant_volume_exists(&s).unwrap().0);
    let sol = semi_invariant_solutions(&s).unwrap();
    assert!(sol.feasible());
    assert!(sol.algebra_level);
    let x4 = Covector::from_ints(&[0, 0, 0, 1]);
    assert!(is_semi_invariant_cocycle(&s, &x4).unwrap());
    let aff = sol.solution.unwrap();
    let diff: Vec<Scalar> = x4.0.iter().zip(&aff.particular).map(|(a, b)| a - b).collect();
    assert!(linalg::in_span(&aff.homogeneous, &diff));
    let r = multiplicative_unimodularity_check(&s).unwrap();
    assert_eq!(r.mu_status, MuStatus::MultiplicativeUnimodular);
    assert_eq!(r.mu_witness_theta0, Some(x4));
}

#[test]
fn full_group_uses_half_modular_character() {
    let s = full_group();
    assert_eq!(s.annihilator().len(), 3);
    assert_eq!(s.bialgebra.g().modular_character(), Covector::from_ints(&[0, 0, 2]));
    assert!(s.bialgebra.dual().is_unimodular());
    let r = multiplicative_unimodularity_check(&s).unwrap();
    assert_eq!(r.mu_status, MuStatus::MultiplicativeUnimodular);
    assert_eq!(r.mu_witness_theta0, Some(Covector::from_ints(&[0, 0, 1])));
    assert!(!verify_mu_witness(&s, &Covector::from_ints(&[0, 0, 2])).unwrap());
}

#[test]
fn toda_quotient() {
    let s = toda();
    assert!(coisotropy_check(&s));
    assert!(invariant_volume_exists(&s).unwrap().0);
    let chi = chi_h0(&s).unwrap();
    assert_eq!(chi.lift, v(&[-2, -2, 0, 0, 0, 0, 0, 0]));
    assert_eq!(multiplicative_unimodularity_check(&s).unwrap().mu_status, MuStatus::FailsConditionI);
    assert!(lu_xl_crosscheck(&s).unwrap().ok());
}

#[test]
fn perfect_algebra_with_non_unimodular_h_has_no_semi_invariant_volume() {
    let b = LieBialgebra::trivial(sl2_p());
    let borel = HomogeneousSpaceSpec::new("borel", b, vec![v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
    assert!(!borel.h.modular_character(borel.bialgebra.g()).unwrap().iter().all(|c| c.is_zero()));
    assert!(!semi_invariant_solutions(&borel).unwrap().feasible());
}

#[test]
fn unimodular_h_admits_modular_character_as_cocycle() {
    for s in all_specs() {
        let chi_h = s.h.modular_character(s.bialgebra.g()).unwrap();
        if chi_h.iter().all(|c| c.is_zero()) {
            let chi_g = s.bialgebra.g().modular_character();
            assert!(is_semi_invariant_cocycle(&s, &chi_g).unwrap(), "{}", s.name);
            assert!(semi_invariant_solutions(&s).unwrap().feasible());
        }
    }
}

#[test]
fn lagrangian_crosscheck_on_every_coisotropic_spec() {
    for s in all_specs() {
        if coisotropy_check(&s) {
            let lu = lu_xl_crosscheck(&s).unwrap();
            assert!(lu.ok(), "{}: {:?} vs {:?}", s.name, lu.lagrangian_character, lu.predicted);
        }
    }
}

#[test]
fn report_properties_over_catalog() {
    let specs = all_specs();
    let rows = classification_report(&specs).unwrap();
    assert_eq!(rows.len(), specs.len());
    for (s, row) in specs.iter().zip(&rows) {
        assert_eq!(s.name, row.name);
        if row.mu_status == Some(MuStatus::MultiplicativeUnimodular) {
            assert_eq!(row.chi_h0_zero, Some(true));
            let w = row.mu_witness.as_ref().unwrap();
            assert!(is_semi_invariant_cocycle(s, w).unwrap());
        }
        // Invariant volumes exist exactly when zero is an admissible cocycle.
        let zero_ok = is_semi_invariant_cocycle(s, &Covector::zero(s.dim_g())).unwrap();
        assert_eq!(row.invariant_volume, zero_ok, "{}", s.name);
    }
    assert!(classification_report(&[]).unwrap().is_empty());
}

#[test]
fn non_coisotropic_subalgebra_is_reported() {
    // Abelian g whose dual is so(3): no plane of so(3) is a subalgebra.
    let dual = LieAlgebra::from_brackets(
        labels(&["X1*", "X2*", "X3*"]),
        &[(0, 1, vec![(2, int(1))]), (1, 2, vec![(0, int(1))]), (2, 0, vec![(1, int(1))])],
    )
    .unwrap();
    let b = LieBialgebra::from_dual(LieAlgebra::abelian(&["X1", "X2", "X3"]), &dual).unwrap();
    let s = HomogeneousSpaceSpec::new("abelian-over-so3", b, vec![v(&[1, 0, 0])]).unwrap();
    assert!(!coisotropy_check(&s));
    assert_eq!(subgroup_type(&s), SubgroupType::NotCoisotropic);
    assert_eq!(chi_h0(&s), Err(HomspaceError::NotCoisotropic));
    assert!(multiplicative_unimodularity_check(&s).is_err());
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lemma_equivalence_on_random_closed_forms(idx in 0usize..16, coeffs in proptest::collection::vec(small_rational(), 8)) {
        let specs = all_specs();
        let s = &specs[idx % specs.len()];
        let g = s.bialgebra.g();
        let m = g.dim();
        let closed = linalg::nullspace(&g.closedness_rows(), m);
        let theta = closed.iter().zip(&coeffs).fold(Covector::zero(m), |acc, (b, c)| acc.add(&Covector(b.clone()).scale(c)));
        let v0 = top_form(s);
        let wedge_identity = ce_differential(g, &v0).unwrap()
            == ExteriorElement::from_covector(&theta).wedge(&v0).unwrap().scale(&int(-1));
        let restriction = s.h.restrict(&theta) == restriction_target(s).unwrap();
        prop_assert_eq!(wedge_identity, restriction);
    }

    #[test]
    fn verdicts_ignore_h_basis_recombination(idx in 0usize..16, c in small_rational(), d in small_rational()) {
        prop_assume!(!c.is_zero());
        let specs = all_specs();
        let s = &specs[idx % specs.len()];
        let basis: Vec<Vector> = match s.h.basis.len() {
            0 => vec![],
            1 => vec![s.h.basis[0].scale(&c)],
            _ => {
                let mut b = s.h.basis.clone();
                b[0] = b[0].scale(&c).add(&b[1].scale(&d));
                b[1] = b[1].add(&b[0]);
                b
            }
        };
        let t = HomogeneousSpaceSpec::new(s.name.clone(), s.bialgebra.clone(), basis).unwrap();
        let a = classify(s).unwrap();
        let b = classify(&t).unwrap();
        prop_assert_eq!(a.subgroup_type, b.subgroup_type);
        prop_assert_eq!(a.chi_h0_zero, b.chi_h0_zero);
        prop_assert_eq!(a.invariant_volume, b.invariant_volume);
        prop_assert_eq!(a.semi_invariant, b.semi_invariant);
        prop_assert_eq!(a.mu_status, b.mu_status);
        if coisotropy_check(s) {
            prop_assert_eq!(chi_h0(s).unwrap().lift, chi_h0(&t).unwrap().lift);
        }
    }
}
