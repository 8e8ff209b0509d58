use bialgebra::{
    cocommutator_from_rmatrix, cocycle_check, delta_from_dual, double_jacobi_check, dual_constants, rmap_dual,
    standard_sln, BialgebraError, CocycleVerdict, DoubleElement, LieBialgebra, MatrixBasis,
};
use exterior_algebra::{CocommutatorMap, ExteriorElement, Space};
use lie_core::{frac, int, Covector, LieAlgebra, Scalar, Vector};
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

fn sl2_j() -> LieAlgebra {
    LieAlgebra::from_brackets(
        labels(&["J3", "J+", "J-"]),
        &[(0, 1, vec![(1, int(2))]), (0, 2, vec![(2, int(-2))]), (1, 2, vec![(0, int(1))])],
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

fn solvable4() -> LieAlgebra {
    LieAlgebra::from_brackets(labels(&["X1", "X2", "X3", "X4"]), &[(2, 3, vec![(2, int(-1))])]).unwrap()
}

fn biv(m: usize, i: usize, j: usize, c: Scalar) -> ExteriorElement {
    ExteriorElement::monomial(m, Space::Primal, &[i, j], c)
}

fn eta() -> Scalar {
    frac(3, 5)
}

#[test]
fn so3_cobracket_and_dual() {
    let g = so3();
    let d = cocommutator_from_rmatrix(&g, &biv(3, 0, 1, eta())).unwrap();
    assert_eq!(d.images[0], biv(3, 0, 2, eta()));
    assert_eq!(d.images[1], biv(3, 1, 2, eta()));
    assert!(d.images[2].is_zero());
    let dual = dual_constants(&g, &d).unwrap();
    assert_eq!(dual.bracket_basis(0, 2), Vector::basis(3, 0).scale(&eta()));
    assert_eq!(dual.bracket_basis(1, 2), Vector::basis(3, 1).scale(&eta()));
    assert!(dual.bracket_basis(0, 1).is_zero());
}

#[test]
fn zero_rmatrix_gives_abelian_dual() {
    let g = so3();
    let d = cocommutator_from_rmatrix(&g, &ExteriorElement::zero(3, Space::Primal, 2)).unwrap();
    assert!(d.is_zero());
    let dual = dual_constants(&g, &d).unwrap();
    assert_eq!(dual.nonzero_brackets().count(), 0);
    assert!(LieBialgebra::trivial(g).dual_modular_character().is_zero());
}

#[test]
fn hyperbolic_sl2_cobracket_and_dual() {
    let g = sl2_j();
    let d = cocommutator_from_rmatrix(&g, &biv(3, 1, 2, eta())).unwrap();
    assert!(d.images[0].is_zero());
    assert_eq!(d.images[1], biv(3, 1, 0, eta()));
    assert_eq!(d.images[2], biv(3, 2, 0, eta()));
    let dual = dual_constants(&g, &d).unwrap();
    assert_eq!(dual.bracket_basis(0, 1), Vector::basis(3, 1).scale(&-eta()));
    assert_eq!(dual.bracket_basis(0, 2), Vector::basis(3, 2).scale(&-eta()));
    assert!(dual.bracket_basis(1, 2).is_zero());
}

#[test]
fn cocycle_verdicts() {
    let g4 = solvable4();
    let m = 4;
    let mut images = vec![ExteriorElement::zero(m, Space::Primal, 2); m];
    images[0] = biv(m, 0, 1, int(1));
    images[2] = biv(m, 1, 2, int(1));
    let delta = CocommutatorMap::new(m, images).unwrap();
    assert!(cocycle_check(&g4, &delta).unwrap().is_ok());
    let b = LieBialgebra::new(g4, delta).unwrap();
    assert_eq!(b.dual().bracket_basis(0, 1), Vector::basis(4, 0));
    assert_eq!(b.dual().bracket_basis(1, 2), Vector::basis(4, 2));

    let g = so3();
    let mut d = cocommutator_from_rmatrix(&g, &biv(3, 0, 1, int(1))).unwrap();
    assert!(cocycle_check(&g, &d).unwrap().is_ok());
    d.images[2] = biv(3, 0, 1, int(1));
    match cocycle_check(&g, &d).unwrap() {
        CocycleVerdict::Violation { pair, defect } => {
            assert_eq!(pair, (0, 1));
            assert!(!defect.is_zero());
        }
        CocycleVerdict::Ok => panic!("altered cobracket must fail"),
    }
    assert!(matches!(LieBialgebra::new(g, d), Err(BialgebraError::NotCocycle(_))));
}

#[test]
fn double_bracket_examples() {
    let b = LieBialgebra::from_rmatrix(so3(), &biv(3, 0, 1, int(1))).unwrap();
    let x = |i| DoubleElement::from_g(Vector::basis(3, i));
    let xi = |i| DoubleElement::from_dual(Covector::basis(3, i));
    assert_eq!(b.double_bracket(&x(0), &x(1)), x(2));
    assert_eq!(b.double_bracket(&xi(0), &xi(2)), xi(0));
    // [J3, J^1]: the g-part vanishes since no [X^a, J^1]* has a J^3 component,
    // and the dual part is −J^1([J3, ·]) = J^2.
    assert_eq!(b.double_bracket(&x(2), &xi(0)), xi(1));
    assert!(b.double_jacobi_check().is_ok());
    assert!(LieBialgebra::trivial(so3()).double_jacobi_check().is_ok());
}

#[test]
fn incompatible_pair_breaks_double_jacobi() {
    // The three-dimensional factor [X^1,X^2] = X^1, [X^2,X^3] = X^3 of a
    // solvable dual, paired with so(3).
    let dual = LieAlgebra::from_brackets(
        labels(&["X1*", "X2*", "X3*"]),
        &[(0, 1, vec![(0, int(1))]), (1, 2, vec![(2, int(1))])],
    )
    .unwrap();
    assert!(dual.jacobi_check().is_ok());
    assert!(!double_jacobi_check(&so3(), &dual).is_ok());
    assert!(LieBialgebra::from_dual(so3(), &dual).is_err());
}

#[test]
fn dual_modular_characters() {
    let e = eta();
    let so = LieBialgebra::from_rmatrix(so3(), &biv(3, 0, 1, e.clone())).unwrap();
    assert_eq!(so.dual_modular_character(), Vector::basis(3, 2).scale(&(int(-2) * &e)));
    let elliptic = LieBialgebra::from_rmatrix(sl2_p(), &biv(3, 2, 1, int(2) * &e)).unwrap();
    assert_eq!(elliptic.dual_modular_character(), Vector::basis(3, 0).scale(&(int(-4) * &e)));
    let hyperbolic = LieBialgebra::from_rmatrix(sl2_p(), &biv(3, 0, 1, int(2) * &e)).unwrap();
    assert_eq!(hyperbolic.dual_modular_character(), Vector::basis(3, 2).scale(&(int(-4) * &e)));
    let parabolic = LieBialgebra::from_rmatrix(sl2_j(), &biv(3, 0, 1, &e / int(2))).unwrap();
    assert_eq!(parabolic.dual_modular_character(), Vector::basis(3, 1).scale(&(int(-2) * &e)));
    let parabolic_p = LieBialgebra::from_rmatrix(
        sl2_p(),
        &biv(3, 2, 0, e.clone()).add(&biv(3, 2, 1, e.clone())).unwrap(),
    )
    .unwrap();
    assert_eq!(parabolic_p.dual_modular_character(), Vector::from_ints(&[1, 1, 0]).scale(&(int(-2) * &e)));
}

#[test]
fn standard_sl3_from_rmap() {
    let (basis, b) = standard_sln(3, &int(1)).unwrap();
    assert_eq!(basis.labels, labels(&["D1", "D2", "S12", "S13", "S23", "Q12", "Q13", "Q23"]));
    assert!(b.dual().jacobi_check().is_ok());
    assert!(cocycle_check(b.g(), b.delta()).unwrap().is_ok());
    assert!(b.double_jacobi_check().is_ok());
    let chi = b.dual_modular_character();
    assert_eq!(chi, Vector::from_ints(&[-4, -4, 0, 0, 0, 0, 0, 0]));
    // -4 (D1 + D2) = -4 (E11 - E33)
    let mat = basis.matrix_of(&chi);
    assert_eq!(mat[0][0], int(-4));
    assert_eq!(mat[2][2], int(4));
    assert_eq!(mat[1][1], int(0));
}

#[test]
fn rmap_matches_hyperbolic_for_n2() {
    let j3 = vec![vec![int(1), int(0)], vec![int(0), int(-1)]];
    let jp = vec![vec![int(0), int(1)], vec![int(0), int(0)]];
    let jm = vec![vec![int(0), int(0)], vec![int(1), int(0)]];
    let basis = MatrixBasis::new(2, labels(&["J3", "J+", "J-"]), vec![j3, jp, jm]).unwrap();
    assert_eq!(basis.algebra().unwrap(), sl2_j());
    let e = eta();
    let from_rmap = rmap_dual(&basis, &e).unwrap();
    let hyper = LieBialgebra::from_rmatrix(sl2_j(), &biv(3, 1, 2, e.clone())).unwrap();
    assert_eq!(&from_rmap, hyper.dual());
    assert_eq!(from_rmap.bracket_basis(0, 1), Vector::basis(3, 1).scale(&-e));
}

#[test]
fn matrix_basis_validation() {
    let z = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
    assert!(MatrixBasis::new(2, labels(&["A"]), vec![z]).is_err());
    assert!(MatrixBasis::new(2, labels(&["A", "B"]), vec![vec![vec![int(1)]]]).is_err());
}

#[test]
fn dual_round_trip() {
    let g = sl2_p();
    let d = cocommutator_from_rmatrix(&g, &biv(3, 2, 1, int(2))).unwrap();
    let dual = dual_constants(&g, &d).unwrap();
    assert_eq!(delta_from_dual(&dual), d);
    let (_, b) = standard_sln(3, &frac(1, 2)).unwrap();
    assert_eq!(&delta_from_dual(b.dual()), b.delta());
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

fn bivector3() -> impl Strategy<Value = ExteriorElement> {
    (small_rational(), small_rational(), small_rational()).prop_map(|(a, b, c)| {
        biv(3, 0, 1, a).add(&biv(3, 0, 2, b)).unwrap().add(&biv(3, 1, 2, c)).unwrap()
    })
}

fn double_element() -> impl Strategy<Value = DoubleElement> {
    proptest::collection::vec(small_rational(), 6).prop_map(|v| DoubleElement {
        g_part: Vector(v[..3].to_vec()),
        dual_part: Covector(v[3..].to_vec()),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn coboundaries_on_simple_algebras_are_bialgebras(r in bivector3(), which in 0usize..3) {
        let g = [so3(), sl2_j(), sl2_p()][which].clone();
        let d = cocommutator_from_rmatrix(&g, &r).unwrap();
        prop_assert!(cocycle_check(&g, &d).unwrap().is_ok());
        let dual = dual_constants(&g, &d).unwrap();
        prop_assert!(dual.jacobi_check().is_ok());
        prop_assert_eq!(delta_from_dual(&dual), d.clone());
        let b = LieBialgebra::new(g, d).unwrap();
        prop_assert!(b.double_jacobi_check().is_ok());
    }

    #[test]
    fn double_restricts_to_summands(r in bivector3(), a in double_element(), c in double_element()) {
        let b = LieBialgebra::from_rmatrix(sl2_p(), &r).unwrap();
        let ga = DoubleElement::from_g(a.g_part.clone());
        let gc = DoubleElement::from_g(c.g_part.clone());
        let out = b.double_bracket(&ga, &gc);
        prop_assert_eq!(out.g_part, b.g().br(&a.g_part, &c.g_part));
        prop_assert!(out.dual_part.is_zero());
        let da = DoubleElement::from_dual(a.dual_part.clone());
        let dc = DoubleElement::from_dual(c.dual_part.clone());
        let out = b.double_bracket(&da, &dc);
        prop_assert!(out.g_part.is_zero());
        let expect = b.dual().br(&Vector(a.dual_part.0.clone()), &Vector(c.dual_part.0.clone()));
        prop_assert_eq!(out.dual_part.0, expect.0);
        // Antisymmetry of the full bracket.
        let ab = b.double_bracket(&a, &c).flatten();
        let ba = b.double_bracket(&c, &a).flatten();
        prop_assert!(ab.iter().zip(&ba).all(|(x, y)| (x + y).is_zero()));
    }
}
