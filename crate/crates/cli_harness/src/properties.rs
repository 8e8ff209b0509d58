//! Seeded randomized suites over the catalog. Every suite draws at least
//! [`MIN_INSTANCES`] instances from a ChaCha stream derived from the seed.

use bialgebra::LieBialgebra;
use exterior_algebra::{ce_differential, CocommutatorMap, ExteriorElement, Space};
use homspace_analysis::{
    classify, coisotropy_check, lu_xl_crosscheck, restriction_target, top_form, verify_mu_witness,
    HomogeneousSpaceSpec,
};
use lie_core::{frac, linalg, Covector, LieAlgebra, Scalar, Vector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{entry_at, ENTRY_COUNT, full_group, so3_bialgebra, solvable_plane, solvable_threefold, toda_n3, Sl2Structure};

pub const MIN_INSTANCES: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.instances >= MIN_INSTANCES
    }
}

type Suite = fn(&mut ChaCha8Rng, usize) -> Vec<String>;

pub const SUITES: [(&str, Suite); 7] = [
    ("differential squares to zero", d_squared),
    ("wedge associativity and graded commutativity", wedge_laws),
    ("Jacobi for algebras, duals and doubles", jacobi_all),
    ("volume-form identity equals the restriction condition", lemma_equivalence),
    ("modular characters are closed", chi_closed),
    ("Lagrangian character cross-check", lu_crosscheck),
    ("verdicts are invariant under basis permutation", basis_change),
];

/// Runs one suite with `instances` draws.
pub fn run_suite(index: usize, seed: u64, instances: usize) -> SuiteOutcome {
    let (name, suite) = SUITES[index];
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
    SuiteOutcome { name, instances, failures: suite(&mut rng, instances) }
}

pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    (0..SUITES.len()).into_par_iter().map(|i| run_suite(i, seed, MIN_INSTANCES)).collect()
}

fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    frac(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let n = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    frac(n, rng.gen_range(1..=4))
}

fn random_element(rng: &mut ChaCha8Rng, m: usize, space: Space, k: usize) -> ExteriorElement {
    let mut out = ExteriorElement::zero(m, space, k);
    for _ in 0..rng.gen_range(1..=4) {
        let mut idx: Vec<usize> = (0..m).collect();
        idx.shuffle(rng);
        idx.truncate(k);
        idx.sort_unstable();
        out = out.add(&ExteriorElement::monomial(m, space, &idx, small_rational(rng))).expect("same shape");
    }
    out
}

pub const BIALGEBRA_COUNT: usize = 8;

/// Catalog bialgebra `k` at a given parameter.
pub fn catalog_bialgebra(k: usize, eta: &Scalar) -> (String, LieBialgebra) {
    match k {
        0 => ("so(3)".to_string(), so3_bialgebra(eta)),
        1..=3 => {
            let s = Sl2Structure::ALL[k - 1];
            (format!("sl(2) {}", s.as_str()), s.bialgebra(eta))
        }
        _ => {
            let spec = match k {
                4 => solvable_plane(),
                5 => solvable_threefold(),
                6 => full_group(),
                _ => toda_n3(eta),
            };
            (spec.name.clone(), spec.bialgebra)
        }
    }
}

/// All catalog bialgebras at a given parameter.
pub fn catalog_bialgebras(eta: &Scalar) -> Vec<(String, LieBialgebra)> {
    (0..BIALGEBRA_COUNT).map(|k| catalog_bialgebra(k, eta)).collect()
}

fn catalog_algebras(eta: &Scalar) -> Vec<(String, LieAlgebra)> {
    let mut v = Vec::new();
    for (name, b) in catalog_bialgebras(eta) {
        v.push((format!("{name} dual"), b.dual().clone()));
        v.push((name, b.g().clone()));
    }
    v
}

fn d_squared(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let algebras = catalog_algebras(&Scalar::from_integer(1.into()));
    let mut fails = Vec::new();
    for i in 0..n {
        let (name, g) = &algebras[i % algebras.len()];
        let m = g.dim();
        let k = rng.gen_range(0..=m - 2);
        let w = random_element(rng, m, Space::Dual, k);
        let dd = ce_differential(g, &w).and_then(|d| ce_differential(g, &d));
        match dd {
            Ok(x) if x.is_zero() => {}
            other => fails.push(format!("{name}: d(d w) = {other:?} for degree {k}")),
        }
    }
    fails
}

fn wedge_laws(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let mut fails = Vec::new();
    let m = 5;
    for _ in 0..n {
        let (p, q, r) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=1));
        let a = random_element(rng, m, Space::Dual, p);
        let b = random_element(rng, m, Space::Dual, q);
        let c = random_element(rng, m, Space::Dual, r);
        let left = a.wedge(&b).and_then(|ab| ab.wedge(&c));
        let right = b.wedge(&c).and_then(|bc| a.wedge(&bc));
        if left != right {
            fails.push(format!("associativity fails in degrees ({p},{q},{r})"));
        }
        let sign = if (p * q) % 2 == 0 { Scalar::from_integer(1.into()) } else { Scalar::from_integer((-1).into()) };
        let ab = a.wedge(&b);
        let ba = b.wedge(&a).map(|x| x.scale(&sign));
        if ab != ba {
            fails.push(format!("graded commutativity fails in degrees ({p},{q})"));
        }
    }
    fails
}

fn jacobi_all(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let mut fails = Vec::new();
    for i in 0..n {
        let eta = nonzero_rational(rng);
        let (name, b) = catalog_bialgebra(i % BIALGEBRA_COUNT, &eta);
        for (part, ok) in [
            ("algebra", b.g().jacobi_check().is_ok()),
            ("dual", b.dual().jacobi_check().is_ok()),
            ("double", b.double_jacobi_check().is_ok()),
        ] {
            if !ok {
                fails.push(format!("{name} at eta = {eta}: Jacobi fails on the {part}"));
            }
        }
    }
    fails
}

fn random_entry(rng: &mut ChaCha8Rng, i: usize) -> (Scalar, HomogeneousSpaceSpec) {
    let eta = nonzero_rational(rng);
    let spec = entry_at(i % ENTRY_COUNT, &eta).spec;
    (eta, spec)
}

fn lemma_equivalence(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let mut fails = Vec::new();
    for i in 0..n {
        let (_, s) = random_entry(rng, i);
        let g = s.bialgebra.g();
        let m = g.dim();
        let closed = linalg::nullspace(&g.closedness_rows(), m);
        let theta = closed.iter().fold(Covector::zero(m), |acc, b| acc.add(&Covector(b.clone()).scale(&small_rational(rng))));
        let v0 = top_form(&s);
        let wedge_identity = match (ce_differential(g, &v0), ExteriorElement::from_covector(&theta).wedge(&v0)) {
            (Ok(d), Ok(w)) => d == w.scale(&Scalar::from_integer((-1).into())),
            _ => {
                fails.push(format!("{}: exterior computation failed", s.name));
                continue;
            }
        };
        let restriction = restriction_target(&s).map(|t| s.h.restrict(&theta) == t);
        if restriction != Ok(wedge_identity) {
            fails.push(format!("{}: identity {wedge_identity}, restriction {restriction:?}", s.name));
        }
    }
    fails
}

fn chi_closed(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let mut fails = Vec::new();
    for i in 0..n {
        let eta = nonzero_rational(rng);
        let (name, b) = catalog_bialgebra(i % BIALGEBRA_COUNT, &eta);
        if !b.g().is_closed_one_form(&b.g().modular_character()) {
            fails.push(format!("{name}: modular character of g is not closed"));
        }
        if !b.dual().is_closed_one_form(&b.dual().modular_character()) {
            fails.push(format!("{name} at eta = {eta}: modular character of the dual is not closed"));
        }
    }
    fails
}

fn lu_crosscheck(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let mut fails = Vec::new();
    for i in 0..n {
        let (eta, s) = random_entry(rng, i);
        if !coisotropy_check(&s) {
            continue;
        }
        match lu_xl_crosscheck(&s) {
            Ok(c) if c.ok() => {}
            other => fails.push(format!("{} at eta = {eta}: {other:?}", s.name)),
        }
    }
    fails
}

/// The same homogeneous space written in a reordered basis: new basis vector
/// `p` is old `perm[p]`.
pub fn permute_spec(s: &HomogeneousSpaceSpec, perm: &[usize]) -> HomogeneousSpaceSpec {
    let m = s.dim_g();
    let g = s.bialgebra.g().permuted(perm);
    let images = perm.iter().map(|&o| s.bialgebra.delta().images[o].permuted(perm)).collect();
    let delta = CocommutatorMap::new(m, images).expect("permuted images keep their shape");
    let b = LieBialgebra::new(g, delta).expect("permutation preserves the bialgebra axioms");
    let h = s.h.basis.iter().map(|v| Vector(perm.iter().map(|&o| v.0[o].clone()).collect())).collect();
    HomogeneousSpaceSpec::new(s.name.clone(), b, h).expect("permutation preserves subalgebras")
}

fn basis_change(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let mut fails = Vec::new();
    for i in 0..n {
        let (eta, s) = random_entry(rng, i);
        let mut perm: Vec<usize> = (0..s.dim_g()).collect();
        perm.shuffle(rng);
        let t = permute_spec(&s, &perm);
        let (a, b) = match (classify(&s), classify(&t)) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                fails.push(format!("{}: classification failed: {a:?} / {b:?}", s.name));
                continue;
            }
        };
        let same = a.subgroup_type == b.subgroup_type
            && a.chi_h0_zero == b.chi_h0_zero
            && a.invariant_volume == b.invariant_volume
            && a.semi_invariant == b.semi_invariant
            && a.mu_status == b.mu_status
            && a.mu_witness.is_some() == b.mu_witness.is_some();
        if !same {
            fails.push(format!("{} at eta = {eta}, perm {perm:?}: verdicts differ", s.name));
        }
        if let Some(w) = &a.mu_witness {
            let moved = Covector(perm.iter().map(|&o| w.0[o].clone()).collect());
            if verify_mu_witness(&t, &moved) != Ok(true) {
                fails.push(format!("{} at eta = {eta}: witness does not transport", s.name));
            }
        }
    }
    fails
}
