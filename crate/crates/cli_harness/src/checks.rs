//! The full verification run: calibrations, golden verdicts, certificates,
//! dynamics, numeric spot checks and the property suites.
//!
//! Checks are independent and run in parallel; results come back in manifest
//! order so a single writer can print them.

use bialgebra::LieBialgebra;
use coord_poisson::catalog as models;
use coord_poisson::Polynomial;
use exterior_algebra::{ce_differential, theta0_from_v0, ExteriorElement, Space};
use homspace_analysis::{classify, coisotropy_check, lu_xl_crosscheck, verify_mu_witness};
use lie_core::{frac, int, Covector, Scalar, Subalgebra, Vector};
use num_traits::Zero;
use rayon::prelude::*;

use crate::catalog::{all_entries, full_group, sl2_j, so3_bialgebra, solvable_plane, solvable_threefold, Sl2Structure};
use crate::dynamics::{run_case, DynamicsCase, NO_PRESERVED_VOLUME, VOLUME_PRESERVED};
use crate::properties::{catalog_bialgebras, run_suite, SUITES};
use crate::report::check_entry;
use crate::tables::reproduce_tables;

type CheckFn = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

pub struct Check {
    pub name: String,
    pub anchor: String,
    run: CheckFn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    pub detail: Option<String>,
}

fn check(name: impl Into<String>, anchor: impl Into<String>, run: impl Fn() -> Result<(), String> + Send + Sync + 'static) -> Check {
    Check { name: name.into(), anchor: anchor.into(), run: Box::new(run) }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn etas(eta: &Scalar) -> Vec<Scalar> {
    let mut v = vec![int(1), int(2), frac(1, 3)];
    if !v.contains(eta) {
        v.push(eta.clone());
    }
    v
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// The manifest in execution order. The differential calibration comes
/// first so a sign error in the exterior layer is the first failure shown.
pub fn manifest(eta: &Scalar, seed: u64) -> Vec<Check> {
    let mut out = calibrations();
    out.extend(dual_characters(eta));
    out.extend(double_checks(eta));
    out.extend(golden_checks(eta));
    out.extend(table_checks(eta));
    out.extend(coordinate_checks(eta, seed));
    out.extend(dynamics_checks());
    for (i, (name, _)) in SUITES.iter().enumerate() {
        out.push(check(format!("property suite: {name}"), "randomized invariants over the catalog", move || {
            let r = run_suite(i, seed, crate::properties::MIN_INSTANCES);
            ensure(r.ok(), || format!("{} failures, first: {:?}", r.failures.len(), r.failures.first()))
        }));
    }
    out
}

pub fn run_checks(checks: &[Check]) -> Vec<CheckResult> {
    checks
        .par_iter()
        .map(|c| {
            let r = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (c.run)()))
                .unwrap_or_else(|_| Err("panicked".into()));
            CheckResult { name: c.name.clone(), anchor: c.anchor.clone(), passed: r.is_ok(), detail: r.err() }
        })
        .collect()
}

fn calibrations() -> Vec<Check> {
    vec![
        check("differential calibration: d(l X1^X2^X3) = l X1^X2^X3^X4", "worked example: semi-invariant volume on a 4-dimensional algebra", || {
            let spec = solvable_threefold();
            let g = spec.bialgebra.g();
            let lambda = frac(5, 2);
            let v0 = ExteriorElement::monomial(4, Space::Dual, &[0, 1, 2], lambda.clone());
            let dv0 = ce_differential(g, &v0).map_err(err)?;
            let want = ExteriorElement::monomial(4, Space::Dual, &[0, 1, 2, 3], lambda);
            ensure(dv0 == want, || format!("d v0 = {}", dv0.render(g.labels())))?;
            let x4 = Covector::basis(4, 3);
            let wedge = ExteriorElement::from_covector(&x4).wedge(&v0).map_err(err)?.scale(&int(-1));
            ensure(dv0 == wedge, || "d v0 differs from -X4 ^ v0".into())?;
            let h = Subalgebra::new(g, vec![Vector::basis(4, 3)]).map_err(err)?;
            let theta = theta0_from_v0(g, &h, &v0).map_err(err)?;
            ensure(h.restrict(&theta) == vec![int(1)], || format!("theta0 restricts to {:?}", h.restrict(&theta)))
        }),
        check("witness calibration: solvable plane has theta0 = X3", "worked example: witness equals the modular character", || {
            let s = solvable_plane();
            let x3 = Covector::basis(3, 2);
            ensure(verify_mu_witness(&s, &x3) == Ok(true), || "X3 is not a witness".into())?;
            let row = classify(&s).map_err(err)?;
            ensure(row.mu_witness == Some(x3), || format!("reported witness {:?}", row.mu_witness))
        }),
        check("witness calibration: trivial isotropy has theta0 = chi_g / 2", "worked example: trivial isotropy", || {
            let s = full_group();
            let half = s.bialgebra.g().modular_character().scale(&frac(1, 2));
            ensure(verify_mu_witness(&s, &half) == Ok(true), || "half the modular character is not a witness".into())?;
            ensure(verify_mu_witness(&s, &s.bialgebra.g().modular_character()) == Ok(false), || "the full character should fail".into())?;
            let row = classify(&s).map_err(err)?;
            ensure(row.mu_witness == Some(half), || format!("reported witness {:?}", row.mu_witness))
        }),
    ]
}

fn dual_characters(eta: &Scalar) -> Vec<Check> {
    type Case = (&'static str, fn(&Scalar) -> LieBialgebra, fn(&Scalar) -> Vector);
    let cases: [Case; 5] = [
        ("so(3): -2 eta J3", so3_bialgebra, |e| Vector::basis(3, 2).scale(&(int(-2) * e))),
        ("hyperbolic: -4 eta J12", |e| Sl2Structure::Hyperbolic.bialgebra(e), |e| Vector::basis(3, 2).scale(&(int(-4) * e))),
        ("elliptic: -4 eta P1", |e| Sl2Structure::Elliptic.bialgebra(e), |e| Vector::basis(3, 0).scale(&(int(-4) * e))),
        (
            "parabolic: -2 eta J+",
            |e| {
                let r = ExteriorElement::monomial(3, Space::Primal, &[0, 1], e / int(2));
                LieBialgebra::from_rmatrix(sl2_j(), &r).expect("parabolic bialgebra")
            },
            |e| Vector::basis(3, 1).scale(&(int(-2) * e)),
        ),
        (
            "parabolic in the P basis: -2 eta (P1 + P2)",
            |e| Sl2Structure::Parabolic.bialgebra(e),
            |e| Vector::from_ints(&[1, 1, 0]).scale(&(int(-2) * e)),
        ),
    ];
    cases
        .into_iter()
        .map(|(name, build, want)| {
            let etas = etas(eta);
            check(format!("dual modular character {name}"), "dual modular characters of the group catalog", move || {
                for e in &etas {
                    let got = build(e).dual_modular_character();
                    ensure(got == want(e), || format!("eta = {e}: got {got:?}"))?;
                }
                Ok(())
            })
        })
        .collect()
}

fn double_checks(eta: &Scalar) -> Vec<Check> {
    catalog_bialgebras(eta)
        .into_iter()
        .map(|(name, b)| {
            check(format!("Jacobi on the double of {name}"), "Drinfeld double of every catalog bialgebra", move || {
                ensure(b.double_jacobi_check().is_ok(), || "double fails Jacobi".into())?;
                ensure(b.dual().jacobi_check().is_ok(), || "dual fails Jacobi".into())
            })
        })
        .collect()
}

fn golden_checks(eta: &Scalar) -> Vec<Check> {
    all_entries(eta)
        .into_iter()
        .map(|e| {
            let anchor = e.anchors.join("; ");
            check(format!("golden verdicts: {}", e.name), anchor, move || {
                let (_, diff) = check_entry(&e).map_err(err)?;
                ensure(diff.is_empty(), || diff.join("; "))
            })
        })
        .collect()
}

fn table_checks(eta: &Scalar) -> Vec<Check> {
    let e1 = eta.clone();
    let e2 = eta.clone();
    vec![
        check("table reproduction: 2 + 9 cells", "sphere table and sl2 quotient table", move || {
            let t = reproduce_tables(&e1, None).map_err(err)?;
            ensure(t.cells.len() == 11 && t.ok(), || t.diffs.join("; "))
        }),
        check("Lagrangian character cross-check on coisotropic entries", "Lu's formula for the modular class", move || {
            for e in all_entries(&e2) {
                if coisotropy_check(&e.spec) {
                    let c = lu_xl_crosscheck(&e.spec).map_err(err)?;
                    ensure(c.ok(), || format!("{}: {c:?}", e.name))?;
                }
            }
            Ok(())
        }),
    ]
}

fn coordinate_checks(eta: &Scalar, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for idx in 0..4 {
        let etas = etas(eta);
        let name = models::group_models(&int(1))[idx].name().to_string();
        out.push(check(format!("kernel obstruction certificate: {name}"), "non-Hamiltonian horizontal fields on the group catalog", move || {
            for e in &etas {
                let c = models::group_models(e).swap_remove(idx);
                let data = c.certificate.as_ref().ok_or("no certificate")?;
                let cert = c.model.kernel_obstruction_verify(&data.covector, &c.horizontal, Some(&data.witness)).map_err(err)?;
                ensure(cert.is_valid() && c.model.on_variety(&cert.witness), || format!("eta = {e}: invalid certificate"))?;
            }
            Ok(())
        }));
    }
    let e = eta.clone();
    out.push(check("horizontal fields from the modular character translates", "horizontal modular field formula", move || {
        for c in models::group_models(&e) {
            let n = c.model.dim();
            let h = c.model.field_from_character_data(&c.left_chi, &c.right_chi, None, &Polynomial::zero(n)).map_err(err)?;
            ensure(h == c.horizontal, || format!("{}: mismatch", c.name()))?;
        }
        Ok(())
    }));
    let e = eta.clone();
    out.push(check("Jacobi identity of the group models", "Poisson-Lie group models", move || {
        for c in models::group_models(&e).into_iter().chain([models::toda_n3()]) {
            let r = c.model.jacobi_symbolic(100, seed);
            ensure(r.is_ok(), || format!("{}: {r:?}", c.name()))?;
        }
        Ok(())
    }));
    for build in [models::su2 as fn(&Scalar) -> models::CatalogModel, models::sl2_hyperbolic] {
        let name = build(&int(1)).name().to_string();
        let e = eta.clone();
        out.push(check(format!("multiplicativity spot check: {name}"), "multiplicativity of the bracket", move || {
            let r = build(&e).model.multiplicativity_spotcheck(100, seed).map_err(err)?;
            ensure(r < 1e-10, || format!("residual {r:e}"))
        }));
    }
    let e = eta.clone();
    out.push(check("linearization at e matches the cobracket", "cobracket as linearization of the bracket", move || {
        for c in models::group_models(&e) {
            let delta = c.cocommutator().ok_or("no cobracket")?;
            let r = c.model.linearization_vs_cocommutator(&delta, &c.linearization_frame(), 1e-4).map_err(err)?;
            ensure(r < 1e-6, || format!("{}: residual {r:e}", c.name()))?;
        }
        Ok(())
    }));
    let e = eta.clone();
    out.push(check("bracket vanishes at the identity", "Poisson-Lie group models", move || {
        for c in models::group_models(&e) {
            let base = c.model.base_point().ok_or("no base point")?;
            ensure(c.model.bracket_at(base).iter().flatten().all(Zero::is_zero), || c.name().to_string())?;
        }
        Ok(())
    }));
    out
}

fn dynamics_checks() -> Vec<Check> {
    [
        (DynamicsCase::Compartmental, VOLUME_PRESERVED, "compartmental model: divergence-free Hamiltonian flow"),
        (DynamicsCase::TodaN3, NO_PRESERVED_VOLUME, "Toda example: value -15 at g(2)"),
        (DynamicsCase::SphereMorse, VOLUME_PRESERVED, "H-Morse example on the sphere"),
        (DynamicsCase::CanonicalPlane, VOLUME_PRESERVED, "canonical plane sanity run"),
    ]
    .into_iter()
    .map(|(case, want, anchor)| {
        let horizon = 10.0;
        check(format!("dynamics: {case}"), anchor, move || {
            let out = run_case(case, horizon, 1e-3).map_err(|e| e.to_string())?;
            ensure(out.passed && out.verdict == want, || out.summary.join("; "))
        })
    })
    .collect()
}
