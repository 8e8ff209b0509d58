//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use bialgebra::LieBialgebra;
use cli_harness::catalog::{self, Sl2Structure};
use cli_harness::dynamics::{run_case, DynamicsCase, NO_PRESERVED_VOLUME, VOLUME_PRESERVED};
use cli_harness::properties::{run_all, MIN_INSTANCES};
use cli_harness::report::check_entry;
use coord_poisson::catalog as models;
use coord_poisson::Polynomial;
use exterior_algebra::{ce_differential, ExteriorElement, Space};
use homspace_analysis::{classify, MuStatus, SubgroupType};
use lie_core::{frac, int, Covector, Scalar, Vector};
use num_traits::Zero;

type Outcome = Result<String, String>;

fn etas() -> [Scalar; 3] {
    [int(1), int(2), frac(1, 3)]
}

fn within(limit: Duration, start: Instant) -> Result<String, String> {
    let t = start.elapsed();
    if t < limit {
        Ok(format!("{:.3}s", t.as_secs_f64()))
    } else {
        Err(format!("took {:.3}s, limit {:.0}s", t.as_secs_f64(), limit.as_secs_f64()))
    }
}

fn entries_match(entries: Vec<catalog::CatalogEntry>) -> Result<(), String> {
    for e in entries {
        let (_, diff) = check_entry(&e).map_err(|x| x.to_string())?;
        if !diff.is_empty() {
            return Err(diff.join("; "));
        }
    }
    Ok(())
}

fn sphere_table() -> Outcome {
    let start = Instant::now();
    for eta in etas() {
        entries_match(catalog::sphere_entries(&eta))?;
        let rows: Vec<_> = catalog::sphere_entries(&eta).iter().map(|e| classify(&e.spec).unwrap()).collect();
        let sub = &rows[0];
        if (sub.chi_h0_zero, sub.subgroup_type, sub.mu_status)
            != (Some(true), SubgroupType::PoissonLieSubgroup, Some(MuStatus::FailsConditionII))
        {
            return Err(format!("subgroup sphere at eta = {eta}: {sub:?}"));
        }
        if rows[1].chi_h0_zero != Some(false) {
            return Err(format!("coisotropic sphere at eta = {eta}: {:?}", rows[1]));
        }
    }
    within(Duration::from_secs(1), start)
}

fn sl2_table() -> Outcome {
    let start = Instant::now();
    for eta in etas() {
        let entries = catalog::sl2_entries(&eta);
        entries_match(entries.clone())?;
        for (si, s) in Sl2Structure::ALL.iter().enumerate() {
            let row: Vec<_> = entries[3 * si..3 * si + 3].iter().map(|e| classify(&e.spec).unwrap()).collect();
            let pl: Vec<_> = row.iter().filter(|r| r.subgroup_type == SubgroupType::PoissonLieSubgroup).collect();
            if pl.len() != 1 || pl[0].mu_status != Some(MuStatus::FailsConditionII) {
                return Err(format!("{}: expected one PL subgroup failing ii", s.as_str()));
            }
            let others = row.iter().filter(|r| r.subgroup_type == SubgroupType::CoisotropicOnly);
            if others.clone().count() != 2 || others.clone().any(|r| r.mu_status != Some(MuStatus::FailsConditionI)) {
                return Err(format!("{}: coisotropic quotients must fail i", s.as_str()));
            }
        }
    }
    within(Duration::from_secs(1), start)
}

fn calibrations() -> Outcome {
    let s4 = catalog::solvable_threefold();
    let g = s4.bialgebra.g();
    let lambda = frac(-7, 3);
    let v0 = ExteriorElement::monomial(4, Space::Dual, &[0, 1, 2], lambda.clone());
    let dv0 = ce_differential(g, &v0).map_err(|e| e.to_string())?;
    if dv0 != ExteriorElement::monomial(4, Space::Dual, &[0, 1, 2, 3], lambda) {
        return Err(format!("d v0 = {}", dv0.render(g.labels())));
    }
    let expect = [
        ("solvable-threefold", Covector::basis(4, 3)),
        ("solvable-plane", Covector::basis(3, 2)),
        ("full-group", catalog::full_group().bialgebra.g().modular_character().scale(&frac(1, 2))),
    ];
    for (name, want) in expect {
        let e = catalog::find(name, &int(1)).unwrap();
        let got = classify(&e.spec).unwrap().mu_witness;
        if got.as_ref() != Some(&want) {
            return Err(format!("{name}: witness {got:?}"));
        }
    }
    Ok("d v0, X4, X3 and half the modular character".into())
}

fn dual_characters() -> Outcome {
    for eta in etas() {
        let parabolic_j =
            LieBialgebra::from_rmatrix(catalog::sl2_j(), &ExteriorElement::monomial(3, Space::Primal, &[0, 1], &eta / int(2)))
                .unwrap();
        let cases = [
            ("so(3)", catalog::so3_bialgebra(&eta), Vector::basis(3, 2).scale(&(int(-2) * &eta))),
            ("hyperbolic", Sl2Structure::Hyperbolic.bialgebra(&eta), Vector::basis(3, 2).scale(&(int(-4) * &eta))),
            ("elliptic", Sl2Structure::Elliptic.bialgebra(&eta), Vector::basis(3, 0).scale(&(int(-4) * &eta))),
            ("parabolic", parabolic_j, Vector::basis(3, 1).scale(&(int(-2) * &eta))),
        ];
        for (name, b, want) in cases {
            if b.dual_modular_character() != want {
                return Err(format!("{name} at eta = {eta}: {:?}", b.dual_modular_character()));
            }
        }
    }
    Ok("eta in {1, 2, 1/3}".into())
}

fn certificates() -> Outcome {
    let start = Instant::now();
    for eta in etas() {
        for c in models::group_models(&eta) {
            let data = c.certificate.as_ref().ok_or("missing certificate")?;
            let cert = c
                .model
                .kernel_obstruction_verify(&data.covector, &c.horizontal, Some(&data.witness))
                .map_err(|e| format!("{}: {e}", c.name()))?;
            if !cert.is_valid() || !cert.kernel_residual.iter().all(Polynomial::is_zero) || cert.witness_value.is_zero() {
                return Err(format!("{} at eta = {eta}: invalid certificate", c.name()));
            }
        }
    }
    within(Duration::from_secs(1), start)
}

fn dynamics_case(case: DynamicsCase, horizon: f64, want: &str) -> Outcome {
    let r = run_case(case, horizon, 1e-3).map_err(|e| e.to_string())?;
    if r.passed && r.verdict == want {
        Ok(r.verdict.to_string())
    } else {
        Err(r.summary.join("; "))
    }
}

fn toda() -> Outcome {
    let toda = models::toda_n3();
    let h = toda.basic_function.clone().unwrap();
    let xh = toda.model.hamiltonian_vf(&h).map_err(|e| e.to_string())?;
    for a in [int(2), int(3), frac(1, 2)] {
        let g = models::toda_point(&a);
        let want = -(int(4) / (&a * &a)) * (&a * &a + int(1)) * (&a + int(1)) * (&a - int(1));
        if !xh.eval(&g).iter().all(Zero::is_zero) || toda.horizontal.apply(&h).eval(&g) != want {
            return Err(format!("g({a})"));
        }
    }
    dynamics_case(DynamicsCase::TodaN3, 0.1, NO_PRESERVED_VOLUME)
}

fn spot_checks() -> Outcome {
    for c in [models::su2(&frac(1, 3)), models::sl2_hyperbolic(&int(2))] {
        let r = c.model.multiplicativity_spotcheck(100, 7).map_err(|e| e.to_string())?;
        if r >= 1e-10 {
            return Err(format!("{}: multiplicativity residual {r:e}", c.name()));
        }
    }
    for eta in etas() {
        for c in models::group_models(&eta) {
            let delta = c.cocommutator().ok_or("no cobracket")?;
            let r = c.model.linearization_vs_cocommutator(&delta, &c.linearization_frame(), 1e-4).map_err(|e| e.to_string())?;
            if r >= 1e-6 {
                return Err(format!("{}: linearization residual {r:e}", c.name()));
            }
            let e = c.model.base_point().ok_or("no base point")?;
            if !c.model.bracket_at(e).iter().flatten().all(Zero::is_zero) {
                return Err(format!("{}: bracket nonzero at e", c.name()));
            }
        }
    }
    Ok("multiplicativity, linearization, bracket at e".into())
}

fn properties() -> Outcome {
    let start = Instant::now();
    let outcomes = run_all(2024);
    for o in &outcomes {
        if !o.ok() {
            return Err(format!("{}: {:?}", o.name, o.failures.first()));
        }
    }
    let total: usize = outcomes.iter().map(|o| o.instances).sum();
    within(Duration::from_secs(30), start).map(|t| format!("{} suites, {total} instances (>= {MIN_INSTANCES} each), {t}", outcomes.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("sphere table", sphere_table),
        ("sl2 quotient table", sl2_table),
        ("calibration identities", calibrations),
        ("dual modular characters", dual_characters),
        ("kernel obstruction certificates", certificates),
        ("Toda quotient", toda),
        ("compartmental model", || dynamics_case(DynamicsCase::Compartmental, 10.0, VOLUME_PRESERVED)),
        ("H-Morse sphere", || dynamics_case(DynamicsCase::SphereMorse, 1.0, VOLUME_PRESERVED)),
        ("numeric spot checks", spot_checks),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
