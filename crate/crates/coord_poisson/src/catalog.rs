//! Coordinate models of the Poisson-Lie groups and dynamical systems used
//! throughout the catalog, with the transcribed left and right translates of
//! the dual modular character, horizontal fields, kernel covectors and
//! witness points.
//!
//! Orientation: every group model here has bracket `→r − ←r` for its listed
//! r-matrix, so its linearization at the identity equals minus the cobracket
//! in the frame of the listed tangent vectors. [`CatalogModel::linearization_frame`]
//! returns the negated vectors, which makes the comparison direct.

use std::collections::HashMap;

use exterior_algebra::{ad_extension, CocommutatorMap, ExteriorElement, Space};
use lie_core::{frac, int, linalg, LieAlgebra, Scalar, Vector};

use crate::model::{PolyVectorField, PolynomialPoissonModel};
use crate::polynomial::Polynomial;
use crate::sampling::VarietySampler;

/// Covector of polynomials annihilated by the bracket, with a point of the
/// variety at which it detects the horizontal field.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateData {
    pub covector: Vec<Polynomial>,
    pub witness: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogModel {
    pub model: PolynomialPoissonModel,
    /// Left translate of the dual modular character.
    pub left_chi: PolyVectorField,
    /// Right translate of the dual modular character.
    pub right_chi: PolyVectorField,
    /// Horizontal field `½(right − left)` as displayed for the model.
    pub horizontal: PolyVectorField,
    pub basis_labels: Vec<String>,
    /// Tangent vectors at the base point of the Lie algebra basis.
    pub basis_at_e: Vec<Vec<Scalar>>,
    pub rmatrix: Option<ExteriorElement>,
    pub certificate: Option<CertificateData>,
    /// Basic function on the quotient used by the preservation checks.
    pub basic_function: Option<Polynomial>,
    /// Tangent vectors at the base point spanning the isotropy subalgebra.
    pub vertical_at_e: Vec<Vec<Scalar>>,
    /// Transcribed invariant fields, named like `left:J1` or `right:J3`.
    pub frame_fields: Vec<(String, PolyVectorField)>,
    pub notes: Vec<String>,
}

impl CatalogModel {
    pub fn name(&self) -> &str {
        self.model.name()
    }

    /// The Lie algebra on `basis_at_e`, read off the group law.
    pub fn algebra(&self) -> Option<LieAlgebra> {
        self.model.group_mult()?;
        let m = self.basis_at_e.len();
        let mut alg = LieAlgebra::new(self.basis_labels.clone());
        for i in 0..m {
            for j in i + 1..m {
                let v = self.model.group_bracket_at_base(&self.basis_at_e[i], &self.basis_at_e[j]).ok()?;
                let c = linalg::coordinates_in(&self.basis_at_e, &v)?;
                alg.set_bracket(i, j, &Vector(c));
            }
        }
        Some(alg)
    }

    pub fn cocommutator(&self) -> Option<CocommutatorMap> {
        let g = self.algebra()?;
        let r = self.rmatrix.as_ref()?;
        let m = g.dim();
        let images = (0..m).map(|i| ad_extension(&g, &Vector::basis(m, i), r).ok()).collect::<Option<Vec<_>>>()?;
        CocommutatorMap::new(m, images).ok()
    }

    pub fn linearization_frame(&self) -> Vec<Vec<Scalar>> {
        self.basis_at_e.iter().map(|v| v.iter().map(|c| -c.clone()).collect()).collect()
    }

    /// Left-invariant fields of the isotropy directions, derived from the group law.
    pub fn vertical_fields(&self) -> Vec<PolyVectorField> {
        self.vertical_at_e
            .iter()
            .filter_map(|v| self.model.left_invariant_field(v).ok())
            .collect()
    }

    pub fn frame_field(&self, name: &str) -> Option<&PolyVectorField> {
        self.frame_fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn params(eta: &Scalar) -> HashMap<String, Scalar> {
    HashMap::from([("eta".to_string(), eta.clone())])
}

fn poly(vars: &[String], eta: &Scalar, text: &str) -> Polynomial {
    Polynomial::parse(text, vars, &params(eta)).unwrap_or_else(|e| panic!("catalog polynomial `{text}`: {e}"))
}

fn field(vars: &[String], eta: &Scalar, comps: &[&str]) -> PolyVectorField {
    PolyVectorField::new(comps.iter().map(|c| poly(vars, eta, c)).collect())
}

fn point(xs: &[(i64, i64)]) -> Vec<Scalar> {
    xs.iter().map(|&(n, d)| frac(n, d)).collect()
}

fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&n| int(n)).collect()
}

fn upper(vars: &[String], eta: &Scalar, entries: &[(usize, usize, &str)]) -> Vec<((usize, usize), Polynomial)> {
    entries.iter().map(|&(i, j, t)| ((i, j), poly(vars, eta, t))).collect()
}

fn biv(m: usize, i: usize, j: usize, c: Scalar) -> ExteriorElement {
    ExteriorElement::monomial(m, Space::Primal, &[i, j], c)
}

fn sl2_mult() -> Vec<Polynomial> {
    let v = names(&["x", "y", "z", "t", "X", "Y", "Z", "T"]);
    let z = int(0);
    ["x X + y Z", "x Y + y T", "z X + t Z", "z Y + t T"].iter().map(|s| poly(&v, &z, s)).collect()
}

fn sl2_model(name: &str, eta: &Scalar, entries: &[(usize, usize, &str)]) -> PolynomialPoissonModel {
    let v = names(&["x", "y", "z", "t"]);
    PolynomialPoissonModel::from_upper(name, v.clone(), upper(&v, eta, entries))
        .and_then(|m| m.with_constraints(vec![poly(&v, eta, "x t - y z - 1")], VarietySampler::SpecialLinear(2)))
        .and_then(|m| m.with_group_mult(sl2_mult()))
        .and_then(|m| m.with_base_point(ints(&[1, 0, 0, 1]), true))
        .unwrap_or_else(|e| panic!("catalog model {name}: {e}"))
}

fn p_basis() -> (Vec<String>, Vec<Vec<Scalar>>) {
    (
        names(&["J12", "P1", "P2"]),
        vec![point(&[(1, 2), (0, 1), (0, 1), (-1, 2)]), point(&[(0, 1), (1, 2), (-1, 2), (0, 1)]), point(&[(0, 1), (1, 2), (1, 2), (0, 1)])],
    )
}

fn j_basis() -> (Vec<String>, Vec<Vec<Scalar>>) {
    (names(&["J3", "J+", "J-"]), vec![ints(&[1, 0, 0, -1]), ints(&[0, 1, 0, 0]), ints(&[0, 0, 1, 0])])
}

/// SU(2) as the unit quaternions with the standard Poisson-Lie structure for
/// `r = η J1∧J2`; the isotropy `⟨J3⟩` gives the subgroup sphere.
pub fn su2(eta: &Scalar) -> CatalogModel {
    let v = names(&["x", "y", "z", "t"]);
    let e = eta;
    let mv = names(&["x", "y", "z", "t", "X", "Y", "Z", "T"]);
    let mult = ["X x - Y y - Z z - T t", "X y + Y x + Z t - T z", "X z - Y t + Z x + T y", "X t + Y z - Z y + T x"]
        .iter()
        .map(|s| poly(&mv, e, s))
        .collect();
    let model = PolynomialPoissonModel::from_upper(
        "su2",
        v.clone(),
        upper(
            &v,
            e,
            &[
                (0, 1, "eta/2 (z^2 + t^2)"),
                (0, 2, "-eta/2 y z"),
                (0, 3, "-eta/2 y t"),
                (1, 2, "eta/2 x z"),
                (1, 3, "eta/2 x t"),
            ],
        ),
    )
    .and_then(|m| m.with_constraints(vec![poly(&v, e, "x^2 + y^2 + z^2 + t^2 - 1")], VarietySampler::Sphere3))
    .and_then(|m| m.with_group_mult(mult))
    .and_then(|m| m.with_base_point(ints(&[1, 0, 0, 0]), true))
    .expect("su2 model");
    let frame_fields = vec![
        ("left:J1".to_string(), field(&v, e, &["-t/2", "-z/2", "y/2", "x/2"])),
        ("left:J2".to_string(), field(&v, e, &["-z/2", "t/2", "x/2", "-y/2"])),
        ("left:J3".to_string(), field(&v, e, &["-y/2", "x/2", "-t/2", "z/2"])),
        ("right:J1".to_string(), field(&v, e, &["-t/2", "z/2", "-y/2", "x/2"])),
        ("right:J2".to_string(), field(&v, e, &["-z/2", "-t/2", "x/2", "y/2"])),
        ("right:J3".to_string(), field(&v, e, &["-y/2", "x/2", "t/2", "-z/2"])),
    ];
    CatalogModel {
        model,
        left_chi: field(&v, e, &["eta y", "-eta x", "eta t", "-eta z"]),
        right_chi: field(&v, e, &["eta y", "-eta x", "-eta t", "eta z"]),
        horizontal: field(&v, e, &["0", "0", "-eta t", "eta z"]),
        basis_labels: names(&["J1", "J2", "J3"]),
        basis_at_e: vec![point(&[(0, 1), (0, 1), (0, 1), (1, 2)]), point(&[(0, 1), (0, 1), (1, 2), (0, 1)]), point(&[(0, 1), (1, 2), (0, 1), (0, 1)])],
        rmatrix: Some(biv(3, 0, 1, e.clone())),
        certificate: Some(CertificateData {
            covector: vec![Polynomial::zero(4), Polynomial::zero(4), poly(&v, e, "-t"), poly(&v, e, "z")],
            witness: ints(&[0, 0, 1, 0]),
        }),
        basic_function: Some(poly(&v, e, "(x^2 + y^2)(z^2 + t^2)")),
        vertical_at_e: vec![point(&[(0, 1), (1, 2), (0, 1), (0, 1)])],
        frame_fields,
        notes: vec!["bracket equals →r − ←r for r = η J1∧J2".into()],
    }
}

/// SL(2,R) with the hyperbolic structure `r = 2η P1∧P2`.
pub fn sl2_hyperbolic(eta: &Scalar) -> CatalogModel {
    let v = names(&["x", "y", "z", "t"]);
    let e = eta;
    let model = sl2_model(
        "sl2-hyperbolic",
        e,
        &[(0, 1, "eta x y"), (0, 2, "eta x z"), (0, 3, "2 eta y z"), (1, 3, "eta y t"), (2, 3, "eta z t")],
    );
    let (labels, basis) = p_basis();
    CatalogModel {
        model,
        left_chi: field(&v, e, &["-2 eta x", "2 eta y", "-2 eta z", "2 eta t"]),
        right_chi: field(&v, e, &["-2 eta x", "-2 eta y", "2 eta z", "2 eta t"]),
        horizontal: field(&v, e, &["0", "-2 eta y", "2 eta z", "0"]),
        basis_labels: labels,
        basis_at_e: basis,
        rmatrix: Some(biv(3, 1, 2, int(2) * e)),
        certificate: Some(CertificateData {
            covector: vec![Polynomial::zero(4), poly(&v, e, "z"), poly(&v, e, "-y"), Polynomial::zero(4)],
            witness: ints(&[1, 1, 1, 2]),
        }),
        basic_function: None,
        vertical_at_e: vec![point(&[(1, 2), (0, 1), (0, 1), (-1, 2)])],
        frame_fields: Vec::new(),
        notes: vec![
            "bracket equals →r − ←r for r = 2η P1∧P2".into(),
            "kernel covector (0, z, −y, 0) reconstructed from the sign argument on φ".into(),
        ],
    }
}

/// SL(2,R) with the elliptic structure `r = 2η J12∧P2`.
pub fn sl2_elliptic(eta: &Scalar) -> CatalogModel {
    let v = names(&["x", "y", "z", "t"]);
    let e = eta;
    let model = sl2_model(
        "sl2-elliptic",
        e,
        &[
            (0, 1, "eta/2 (x (t - x) - y (y + z))"),
            (0, 2, "eta/2 (x (x - t) + z (y + z))"),
            (0, 3, "eta/2 (x - t)(y - z)"),
            (1, 2, "eta/2 (x + t)(y + z)"),
            (1, 3, "eta/2 (-t (x - t) + y (y + z))"),
            (2, 3, "eta/2 (t (x - t) - z (y + z))"),
        ],
    );
    let (labels, basis) = p_basis();
    CatalogModel {
        model,
        left_chi: field(&v, e, &["2 eta y", "-2 eta x", "2 eta t", "-2 eta z"]),
        right_chi: field(&v, e, &["-2 eta z", "-2 eta t", "2 eta x", "2 eta y"]),
        horizontal: field(&v, e, &["-eta (y + z)", "eta (x - t)", "eta (x - t)", "eta (y + z)"]),
        basis_labels: labels,
        basis_at_e: basis,
        rmatrix: Some(biv(3, 0, 2, int(2) * e)),
        certificate: Some(CertificateData {
            covector: vec![poly(&v, e, "-(y + z)"), poly(&v, e, "x - t"), poly(&v, e, "x - t"), poly(&v, e, "y + z")],
            witness: ints(&[1, 1, 0, 1]),
        }),
        basic_function: Some(poly(&v, e, "(x^2 + y^2 + z^2 + t^2)/2")),
        vertical_at_e: vec![point(&[(0, 1), (1, 2), (-1, 2), (0, 1)])],
        frame_fields: Vec::new(),
        notes: vec![
            "bracket equals →r − ←r for r = 2η J12∧P2".into(),
            "kernel covector built from the pair (x − t, y + z) behind the relation φ² = −16".into(),
        ],
    }
}

/// SL(2,R) with the parabolic (triangular) structure `r = ½η J3∧J+`.
pub fn sl2_parabolic(eta: &Scalar) -> CatalogModel {
    let v = names(&["x", "y", "z", "t"]);
    let e = eta;
    let model = sl2_model(
        "sl2-parabolic",
        e,
        &[
            (0, 1, "eta/2 (-x (x - t) - y z)"),
            (0, 2, "eta/2 z^2"),
            (0, 3, "-eta/2 (x - t) z"),
            (1, 2, "eta/2 (x + t) z"),
            (1, 3, "eta/2 (-t (x - t) + y z)"),
            (2, 3, "-eta/2 z^2"),
        ],
    );
    let (labels, basis) = j_basis();
    CatalogModel {
        model,
        left_chi: field(&v, e, &["0", "-2 eta x", "0", "-2 eta z"]),
        right_chi: field(&v, e, &["-2 eta z", "-2 eta t", "0", "0"]),
        horizontal: field(&v, e, &["-eta z", "eta (x - t)", "0", "eta z"]),
        basis_labels: labels,
        basis_at_e: basis,
        rmatrix: Some(biv(3, 0, 1, e / int(2))),
        certificate: Some(CertificateData {
            covector: vec![poly(&v, e, "-z"), Polynomial::zero(4), poly(&v, e, "x - t"), poly(&v, e, "z")],
            witness: ints(&[1, 0, 1, 1]),
        }),
        basic_function: None,
        vertical_at_e: vec![ints(&[1, 0, 0, -1])],
        frame_fields: Vec::new(),
        notes: vec!["bracket equals →r − ←r for r = ½η J3∧J+".into()],
    }
}

fn toda_vars() -> Vec<String> {
    (1..=3).flat_map(|i| (1..=3).map(move |j| format!("a{i}{j}"))).collect()
}

/// SL(3,R) with the Toda structure `{a_ij, a_kl} = (sgn(k−i) + sgn(l−j)) a_il a_kj`,
/// dual modular character `−4(E11 − E33)` and isotropy `so(3)`.
pub fn toda_n3() -> CatalogModel {
    let v = toda_vars();
    let n = 9;
    let idx = |i: usize, j: usize| 3 * i + j;
    let sgn = |a: usize, b: usize| (b as i64 - a as i64).signum();
    let mut entries = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let (p, q) = (idx(i, j), idx(k, l));
                    if p >= q {
                        continue;
                    }
                    let c = sgn(i, k) + sgn(j, l);
                    if c != 0 {
                        let mono = &Polynomial::var(n, idx(i, l)) * &Polynomial::var(n, idx(k, j));
                        entries.push(((p, q), mono.scale(&int(c))));
                    }
                }
            }
        }
    }
    let mult: Vec<Polynomial> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut acc = Polynomial::zero(18);
            for k in 0..3 {
                acc = &acc + &(&Polynomial::var(18, idx(i, k)) * &Polynomial::var(18, 9 + idx(k, j)));
            }
            acc
        })
        .collect();
    let z = int(0);
    let det = poly(&v, &z, "a11 (a22 a33 - a23 a32) - a12 (a21 a33 - a23 a31) + a13 (a21 a32 - a22 a31) - 1");
    let identity: Vec<Scalar> = (0..9).map(|p| if p % 4 == 0 { int(1) } else { int(0) }).collect();
    let model = PolynomialPoissonModel::from_upper("toda-n3", v.clone(), entries)
        .and_then(|m| m.with_constraints(vec![det], VarietySampler::SpecialLinear(3)))
        .and_then(|m| m.with_group_mult(mult))
        .and_then(|m| m.with_base_point(identity, true))
        .expect("toda model");
    let chi_diag = [int(-4), int(0), int(4)];
    let left = PolyVectorField::new(
        (0..9).map(|p| Polynomial::var(n, p).scale(&chi_diag[p % 3])).collect(),
    );
    let right = PolyVectorField::new(
        (0..9).map(|p| Polynomial::var(n, p).scale(&chi_diag[p / 3])).collect(),
    );
    let horizontal = right.sub(&left).scale(&frac(1, 2));
    let mut vertical_at_e = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mut q = vec![int(0); 9];
        q[idx(i, j)] = int(1);
        q[idx(j, i)] = int(-1);
        vertical_at_e.push(q);
    }
    let basic = (0..9).fold(Polynomial::zero(n), |acc, p| &acc + &Polynomial::var(n, p).pow(2));
    CatalogModel {
        model,
        left_chi: left,
        right_chi: right,
        horizontal,
        basis_labels: Vec::new(),
        basis_at_e: Vec::new(),
        rmatrix: None,
        certificate: None,
        basic_function: Some(basic),
        vertical_at_e,
        frame_fields: Vec::new(),
        notes: vec![
            "bracket written in the sign form (sgn(k−i) + sgn(l−j)) a_il a_kj".into(),
            "horizontal field taken as ½(→χ − ←χ) with χ = −4(E11 − E33)".into(),
        ],
    }
}

/// The point `g(a)` with rows `(0, a, 0)`, `(−1/a, 0, 0)`, `(0, 0, 1)`.
pub fn toda_point(a: &Scalar) -> Vec<Scalar> {
    let z = int(0);
    let one = int(1);
    vec![z.clone(), a.clone(), z.clone(), -(one.clone() / a), z.clone(), z.clone(), z.clone(), z, one]
}

/// Closed form of the horizontal field applied to `Σ a_ij²` at `g(a)`.
pub fn toda_expected_value(a: &Scalar) -> Scalar {
    let one = int(1);
    -(int(4) / (a * a)) * (a * a + &one) * (a + &one) * (a - &one)
}

/// Three-compartment model with `{x1,x2} = x1 − 1`, `{x2,x3} = x3` and
/// Hamiltonian `x1 + x2 + x3`.
pub fn compartmental() -> (PolynomialPoissonModel, Polynomial) {
    let v = names(&["x1", "x2", "x3"]);
    let z = int(0);
    let model = PolynomialPoissonModel::from_upper("compartmental", v.clone(), upper(&v, &z, &[(0, 1, "x1 - 1"), (1, 2, "x3")]))
        .expect("compartmental model");
    (model, poly(&v, &z, "x1 + x2 + x3"))
}

/// Canonical plane `{q, p} = 1` with the harmonic oscillator.
pub fn canonical_plane() -> (PolynomialPoissonModel, Polynomial) {
    let v = names(&["q", "p"]);
    let z = int(0);
    let model = PolynomialPoissonModel::from_upper("canonical-plane", v.clone(), upper(&v, &z, &[(0, 1, "1")]))
        .expect("canonical model");
    (model, poly(&v, &z, "(q^2 + p^2)/2"))
}

/// The four group models carrying kernel obstruction certificates.
pub fn group_models(eta: &Scalar) -> Vec<CatalogModel> {
    vec![su2(eta), sl2_hyperbolic(eta), sl2_elliptic(eta), sl2_parabolic(eta)]
}
