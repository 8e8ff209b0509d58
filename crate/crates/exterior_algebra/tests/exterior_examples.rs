use exterior_algebra::{
    ad_extension, ce_differential, is_ad_invariant, schouten_square, theta0_from_v0, CocommutatorMap, ExteriorElement,
    ExteriorError, Space,
};
use lie_core::{frac, int, Covector, LieAlgebra, Scalar, Subalgebra, Vector};
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

fn solvable3() -> LieAlgebra {
    LieAlgebra::from_brackets(labels(&["X1", "X2", "X3"]), &[(0, 2, vec![(1, int(1))]), (1, 2, vec![(1, int(-1))])])
        .unwrap()
}

fn solvable4() -> LieAlgebra {
    LieAlgebra::from_brackets(labels(&["X1", "X2", "X3", "X4"]), &[(2, 3, vec![(2, int(-1))])]).unwrap()
}

fn dilation3() -> LieAlgebra {
    LieAlgebra::from_brackets(labels(&["X1", "X2", "X3"]), &[(2, 0, vec![(0, int(1))]), (2, 1, vec![(1, int(1))])])
        .unwrap()
}

fn catalog() -> Vec<LieAlgebra> {
    vec![so3(), sl2_j(), solvable3(), solvable4(), dilation3(), LieAlgebra::abelian(&["a", "b", "c", "d"])]
}

fn form(m: usize, idx: &[usize], c: Scalar) -> ExteriorElement {
    ExteriorElement::monomial(m, Space::Dual, idx, c)
}

fn mv(m: usize, idx: &[usize], c: Scalar) -> ExteriorElement {
    ExteriorElement::monomial(m, Space::Primal, idx, c)
}

#[test]
fn wedge_signs() {
    let x1 = form(4, &[0], int(1));
    assert!(x1.wedge(&x1).unwrap().is_zero());
    let x4 = form(4, &[3], int(1));
    let x123 = form(4, &[0, 1, 2], int(1));
    assert_eq!(x4.wedge(&x123).unwrap(), form(4, &[0, 1, 2, 3], int(-1)));
    let lambda = frac(7, 3);
    let lhs = x4.scale(&int(-1)).wedge(&x123.scale(&lambda)).unwrap();
    assert_eq!(lhs, form(4, &[0, 1, 2, 3], lambda));
}

#[test]
fn wedge_rejects_mixed_spaces() {
    let a = form(3, &[0], int(1));
    let b = mv(3, &[1], int(1));
    assert!(matches!(a.wedge(&b), Err(ExteriorError::MixedSpaces(..))));
}

#[test]
fn interior_products() {
    let w = form(3, &[0, 1], int(1));
    assert_eq!(w.interior_vector(&Vector::basis(3, 0)).unwrap(), form(3, &[1], int(1)));
    assert_eq!(w.interior_vector(&Vector::basis(3, 1)).unwrap(), form(3, &[0], int(-1)));
    let scalar = ExteriorElement::scalar(3, Space::Dual, int(1));
    assert_eq!(scalar.interior_vector(&Vector::basis(3, 0)), Err(ExteriorError::DegreeZero));
    // so(3) is unimodular, so contracting with its modular character gives zero.
    let g = so3();
    let delta_j1 = ad_extension(&g, &Vector::basis(3, 0), &mv(3, &[0, 1], int(1))).unwrap();
    assert!(delta_j1.interior_covector(&g.modular_character()).unwrap().is_zero());
    assert!(matches!(w.interior_covector(&Covector::basis(3, 0)), Err(ExteriorError::WrongSpace { .. })));
}

#[test]
fn differential_examples() {
    let lambda = frac(5, 2);
    let s3 = solvable3();
    assert!(ce_differential(&s3, &form(3, &[1, 2], lambda.clone())).unwrap().is_zero());
    let s4 = solvable4();
    let v0 = form(4, &[0, 1, 2], lambda.clone());
    assert_eq!(ce_differential(&s4, &v0).unwrap(), form(4, &[0, 1, 2, 3], lambda));
    let ab = LieAlgebra::abelian(&["a", "b", "c"]);
    assert!(ce_differential(&ab, &form(3, &[0, 2], int(3))).unwrap().is_zero());
    assert!(ce_differential(&ab, &mv(3, &[0], int(1))).is_err());
}

#[test]
fn degree_one_differential_is_minus_theta_of_bracket() {
    for g in catalog() {
        let m = g.dim();
        for k in 0..m {
            let theta = Covector::basis(m, k);
            let d = ce_differential(&g, &ExteriorElement::from_covector(&theta)).unwrap();
            for i in 0..m {
                for j in 0..m {
                    let val = d.eval_form(&[Vector::basis(m, i), Vector::basis(m, j)]).unwrap();
                    assert_eq!(val, -theta.eval(&g.bracket_basis(i, j)));
                }
            }
        }
    }
}

#[test]
fn adjoint_extension_examples() {
    let g = so3();
    assert!(ad_extension(&g, &Vector::basis(3, 2), &mv(3, &[0, 1], int(1))).unwrap().is_zero());
    let eta = frac(3, 4);
    let got = ad_extension(&g, &Vector::basis(3, 0), &mv(3, &[0, 1], eta.clone())).unwrap();
    assert_eq!(got, mv(3, &[0, 2], eta));
    let ab = LieAlgebra::abelian(&["a", "b", "c"]);
    assert!(ad_extension(&ab, &Vector::basis(3, 0), &mv(3, &[1, 2], int(1))).unwrap().is_zero());
    assert!(ad_extension(&g, &Vector::basis(3, 0), &form(3, &[1], int(1))).is_err());
}

#[test]
fn schouten_square_examples() {
    let g = sl2_j();
    let eta = frac(2, 3);
    let parabolic = mv(3, &[0, 1], eta.clone() / int(2));
    assert!(schouten_square(&g, &parabolic).unwrap().is_zero());
    assert!(schouten_square(&g, &ExteriorElement::zero(3, Space::Primal, 2)).unwrap().is_zero());
    let hyperbolic = mv(3, &[1, 2], eta.clone());
    let sq = schouten_square(&g, &hyperbolic).unwrap();
    assert!(!sq.is_zero());
    assert_eq!(sq.degree(), 3);
    assert!(is_ad_invariant(&g, &sq).unwrap());
    assert!(schouten_square(&g, &mv(3, &[0], int(1))).is_err());
    let so = so3();
    let sq = schouten_square(&so, &mv(3, &[0, 1], eta)).unwrap();
    assert!(!sq.is_zero());
    assert!(is_ad_invariant(&so, &sq).unwrap());
}

#[test]
fn theta0_examples() {
    let lambda = frac(-4, 7);
    let s4 = solvable4();
    let h = Subalgebra::new(&s4, vec![Vector::basis(4, 3)]).unwrap();
    let theta = theta0_from_v0(&s4, &h, &form(4, &[0, 1, 2], lambda.clone())).unwrap();
    assert_eq!(h.restrict(&theta), vec![int(1)]);
    let s3 = solvable3();
    let h = Subalgebra::new(&s3, vec![Vector::basis(3, 0)]).unwrap();
    let theta = theta0_from_v0(&s3, &h, &form(3, &[1, 2], lambda)).unwrap();
    assert_eq!(h.restrict(&theta), vec![int(0)]);
    let ab = LieAlgebra::abelian(&["a", "b", "c"]);
    let h = Subalgebra::new(&ab, vec![Vector::basis(3, 1)]).unwrap();
    assert!(theta0_from_v0(&ab, &h, &form(3, &[0, 2], int(1))).unwrap().is_zero());
}

#[test]
fn theta0_errors() {
    let s4 = solvable4();
    let h = Subalgebra::new(&s4, vec![Vector::basis(4, 3)]).unwrap();
    let zero = ExteriorElement::zero(4, Space::Dual, 3);
    assert_eq!(theta0_from_v0(&s4, &h, &zero), Err(ExteriorError::ZeroVolume));
    let wrong = form(4, &[0, 1, 3], int(1));
    assert_eq!(theta0_from_v0(&s4, &h, &wrong), Err(ExteriorError::NotAnnihilated));
}

#[test]
fn cocommutator_map_validation() {
    let g = so3();
    let r = mv(3, &[0, 1], int(1));
    let images: Vec<_> = (0..3).map(|i| ad_extension(&g, &Vector::basis(3, i), &r).unwrap()).collect();
    let map = CocommutatorMap::new(3, images).unwrap();
    assert_eq!(map.apply(&Vector::from_ints(&[1, 1, 0])), mv(3, &[0, 2], int(1)).add(&mv(3, &[1, 2], int(1))).unwrap());
    assert!(CocommutatorMap::new(3, vec![mv(3, &[0], int(1)); 3]).is_err());
    assert!(CocommutatorMap::new(2, vec![]).is_err());
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

/// Random homogeneous element of degree `k` in dimension 4.
fn element(space: Space, k: usize) -> impl Strategy<Value = ExteriorElement> {
    proptest::collection::vec((proptest::collection::vec(0usize..4, k), small_rational()), 0..5).prop_map(
        move |terms| {
            terms.into_iter().fold(ExteriorElement::zero(4, space, k), |acc, (idx, c)| {
                acc.add(&ExteriorElement::monomial(4, space, &idx, c)).unwrap()
            })
        },
    )
}

fn restrict_to(w: &ExteriorElement, m: usize) -> Option<ExteriorElement> {
    let mut out = ExteriorElement::zero(m, w.space(), w.degree());
    for (idx, c) in w.terms() {
        if idx.iter().any(|&i| i >= m) {
            continue;
        }
        out = out.add(&ExteriorElement::monomial(m, w.space(), idx, c.clone())).ok()?;
    }
    Some(out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn differential_squares_to_zero(idx in 0usize..6, k in 0usize..4, seed in element(Space::Dual, 2)) {
        let g = &catalog()[idx];
        let m = g.dim();
        // Build a form of degree k from the random degree-2 seed and basis covectors.
        let base = restrict_to(&seed, m).unwrap();
        let w = match k {
            0 => ExteriorElement::scalar(m, Space::Dual, int(3)),
            1 => ExteriorElement::from_covector(&Covector::from_ints(&(0..m as i64).map(|i| i - 1).collect::<Vec<_>>())),
            2 => base,
            _ => base.wedge(&ExteriorElement::monomial(m, Space::Dual, &[m - 1], int(1))).unwrap(),
        };
        let dd = ce_differential(g, &ce_differential(g, &w).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative_and_associative(
        a in element(Space::Dual, 1), b in element(Space::Dual, 2), c in element(Space::Primal, 1),
        d in element(Space::Dual, 1),
    ) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab.clone(), ba);
        let ad = a.wedge(&d).unwrap();
        let da = d.wedge(&a).unwrap();
        prop_assert!(ad.add(&da).unwrap().is_zero());
        prop_assert_eq!(ab.wedge(&d).unwrap(), a.wedge(&b.wedge(&d).unwrap()).unwrap());
        prop_assert!(c.wedge(&c).unwrap().is_zero());
    }

    #[test]
    fn interior_twice_vanishes(w in element(Space::Dual, 3), v in proptest::collection::vec(small_rational(), 4)) {
        let v = Vector(v);
        let once = w.interior_vector(&v).unwrap();
        prop_assert!(once.interior_vector(&v).unwrap().is_zero());
    }

    #[test]
    fn schouten_square_is_quadratic(r in element(Space::Primal, 2), c in small_rational(), idx in 0usize..6) {
        let g = &catalog()[idx];
        let r = restrict_to(&r, g.dim()).unwrap();
        let lhs = schouten_square(g, &r.scale(&c)).unwrap();
        let rhs = schouten_square(g, &r).unwrap().scale(&(c.clone() * c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta0_restriction_and_ambiguity(
        idx in 0usize..6, v in proptest::collection::vec(-3i64..=3, 4), shift in proptest::collection::vec(small_rational(), 4),
    ) {
        let g = &catalog()[idx];
        let m = g.dim();
        let v = Vector::from_ints(&v[..m]);
        prop_assume!(!v.is_zero());
        let h = Subalgebra::new(g, vec![v]).unwrap();
        let ann = g.annihilator(&h);
        let v0 = ExteriorElement::wedge_all_covectors(m, &ann);
        let theta = theta0_from_v0(g, &h, &v0).unwrap();
        let expected: Vec<Scalar> = h
            .restrict(&g.modular_character())
            .into_iter()
            .zip(h.modular_character(g).unwrap())
            .map(|(a, b)| a - b)
            .collect();
        prop_assert_eq!(h.restrict(&theta), expected);
        // Shifting by an element of the annihilator keeps d V0 = -theta ∧ V0.
        let xi = ann.iter().zip(&shift).fold(Covector::zero(m), |acc, (a, c)| acc.add(&a.scale(c)));
        let shifted = theta.add(&xi);
        let dv0 = ce_differential(g, &v0).unwrap();
        let rhs = ExteriorElement::from_covector(&shifted).wedge(&v0).unwrap().scale(&int(-1));
        prop_assert_eq!(dv0, rhs);
        prop_assert!(h.restrict(&xi).iter().all(|x| *x == int(0)));
    }
}
