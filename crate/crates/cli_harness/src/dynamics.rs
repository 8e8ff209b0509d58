//! Flow runs with divergence bookkeeping and a preservation verdict per case.

use std::fmt;
use std::str::FromStr;

use coord_poisson::catalog::{self, CatalogModel};
use coord_poisson::{rk4_flow, FlowTrace, Polynomial, PolynomialPoissonModel};
use lie_core::{frac, int, Scalar};
use num_traits::Zero;

use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynamicsCase {
    Compartmental,
    TodaN3,
    SphereMorse,
    CanonicalPlane,
}

impl DynamicsCase {
    pub const ALL: [DynamicsCase; 4] =
        [DynamicsCase::Compartmental, DynamicsCase::TodaN3, DynamicsCase::SphereMorse, DynamicsCase::CanonicalPlane];

    pub fn as_str(&self) -> &'static str {
        match self {
            DynamicsCase::Compartmental => "compartmental",
            DynamicsCase::TodaN3 => "toda-n3",
            DynamicsCase::SphereMorse => "sphere-morse",
            DynamicsCase::CanonicalPlane => "canonical-plane",
        }
    }
}

impl fmt::Display for DynamicsCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DynamicsCase {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DynamicsCase::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| HarnessError::UnknownCase(s.into()))
    }
}

pub const VOLUME_PRESERVED: &str = "volume preserved";
pub const NO_PRESERVED_VOLUME: &str = "no preserved volume (certificate)";

#[derive(Debug, Clone)]
pub struct DynamicsOutcome {
    pub case: DynamicsCase,
    pub trace: FlowTrace,
    pub summary: Vec<String>,
    pub verdict: &'static str,
    /// Every exact check behind the verdict held.
    pub passed: bool,
}

struct Collector {
    lines: Vec<String>,
    passed: bool,
}

impl Collector {
    fn check(&mut self, ok: bool, text: String) {
        self.lines.push(format!("[{}] {text}", if ok { "ok" } else { "FAIL" }));
        self.passed &= ok;
    }
}

pub fn run_case(case: DynamicsCase, horizon: f64, dt: f64) -> Result<DynamicsOutcome, HarnessError> {
    let mut c = Collector { lines: Vec::new(), passed: true };
    let (trace, verdict) = match case {
        DynamicsCase::Compartmental => compartmental(&mut c, horizon, dt)?,
        DynamicsCase::TodaN3 => toda(&mut c, horizon, dt)?,
        DynamicsCase::SphereMorse => sphere_morse(&mut c, horizon, dt)?,
        DynamicsCase::CanonicalPlane => {
            let (model, h) = catalog::canonical_plane();
            flow_with_divergence(&mut c, &model, &h, &[1.0, 0.0], horizon, dt, 1e-12)?
        }
    };
    c.lines.push(format!("verdict: {verdict}"));
    Ok(DynamicsOutcome { case, trace, summary: c.lines, verdict, passed: c.passed })
}

fn flow_with_divergence(
    c: &mut Collector,
    model: &PolynomialPoissonModel,
    h: &Polynomial,
    x0: &[f64],
    horizon: f64,
    dt: f64,
    tol: f64,
) -> Result<(FlowTrace, &'static str), HarnessError> {
    let n = model.dim();
    let x = model.hamiltonian_vf(h)?;
    let div = model.divergence(&x, &Polynomial::zero(n))?;
    c.check(div.is_zero(), format!("divergence of X_h is the zero polynomial ({})", div.render(model.vars())));
    let trace = rk4_flow(model, h, x0, horizon, dt, &Polynomial::zero(n))?;
    let worst = trace.max_abs_divint();
    c.check(worst < tol, format!("max |integral of div| over [0, {horizon}] = {worst:.3e} (tolerance {tol:.0e})"));
    let verdict = if div.is_zero() && worst < tol { VOLUME_PRESERVED } else { NO_PRESERVED_VOLUME };
    Ok((trace, verdict))
}

fn compartmental(c: &mut Collector, horizon: f64, dt: f64) -> Result<(FlowTrace, &'static str), HarnessError> {
    let (model, h) = catalog::compartmental();
    let x = model.hamiltonian_vf(&h)?;
    let none = Default::default();
    let want = ["1 - x1", "x1 - 1 - x3", "x3"];
    for (k, w) in want.iter().enumerate() {
        let w = model.parse(w, &none)?;
        c.check(x.components[k] == w, format!("dx{}/dt = {}", k + 1, x.components[k].render(model.vars())));
    }
    flow_with_divergence(c, &model, &h, &[1.0, 1.0, 1.0], horizon, dt, 1e-9)
}

fn sphere_morse(c: &mut Collector, horizon: f64, dt: f64) -> Result<(FlowTrace, &'static str), HarnessError> {
    let so = catalog::su2(&int(1));
    let m = &so.model;
    let h = so.basic_function.clone().expect("sphere model has a basic function");
    let e = m.base_point().expect("base point").to_vec();
    let critical = h.gradient().iter().all(|d| d.eval(&e).is_zero());
    c.check(critical, "dh(e) = 0".into());
    let j12 = [frame(&so, "left:J1"), frame(&so, "left:J2")];
    let hess = m.hessian_at(&h, &e, &j12)?;
    let half = frac(1, 2);
    let want = vec![vec![half.clone(), int(0)], vec![int(0), half]];
    c.check(hess == want, format!("Hessian at e = {}", render_matrix(&hess)));
    let j3 = frame(&so, "left:J3");
    c.check(m.basic_function_check(&h, &[j3]), "left J3 annihilates h as a polynomial identity".into());
    let zero = Polynomial::zero(4);
    let res = m.preservation_residual(&h, &zero, &zero, &so.left_chi, &so.right_chi, None)?;
    c.check(res.is_zero(), "horizontal field applied to h is the zero polynomial".into());
    let s = 0.6f64;
    let x0 = [s, 0.0, 0.0, (1.0 - s * s).sqrt()];
    let (trace, verdict) = flow_with_divergence(c, m, &h, &x0, horizon, dt, 1e-8)?;
    Ok((trace, if res.is_zero() { verdict } else { NO_PRESERVED_VOLUME }))
}

fn toda(c: &mut Collector, horizon: f64, dt: f64) -> Result<(FlowTrace, &'static str), HarnessError> {
    let toda = catalog::toda_n3();
    let m = &toda.model;
    let h = toda.basic_function.clone().expect("toda model has a basic function");
    c.check(m.basic_function_check(&h, &toda.vertical_fields()), "h is invariant under the isotropy".into());
    let xh = m.hamiltonian_vf(&h)?;
    for a in [int(2), int(3), frac(1, 2)] {
        let g = catalog::toda_point(&a);
        let singular = m.on_variety(&g) && xh.eval(&g).iter().all(Zero::is_zero);
        c.check(singular, format!("X_h(g({a})) = 0"));
        let value = toda.horizontal.apply(&h).eval(&g);
        let want = catalog::toda_expected_value(&a);
        c.check(value == want, format!("horizontal field applied to h at g({a}) = {value}"));
    }
    let z = Polynomial::zero(9);
    let res = m.preservation_residual(&h, &z, &z, &toda.left_chi, &toda.right_chi, None)?;
    let at2 = res.eval(&catalog::toda_point(&int(2)));
    c.check(!res.is_zero() && at2 == int(-15), format!("preservation residual nonzero, equal to {at2} at g(2)"));
    let x0 = [1.0, 0.5, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
    let trace = rk4_flow(m, &h, &x0, horizon, dt, &Polynomial::zero(9))?;
    c.lines.push(format!("flow of X_h from a unipotent start: final integral of div = {:.6e}", trace.final_divint()));
    Ok((trace, if res.is_zero() { VOLUME_PRESERVED } else { NO_PRESERVED_VOLUME }))
}

fn frame(model: &CatalogModel, name: &str) -> coord_poisson::PolyVectorField {
    model.frame_field(name).unwrap_or_else(|| panic!("catalog frame field {name}")).clone()
}

fn render_matrix(m: &[Vec<Scalar>]) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")).collect();
    format!("[[{}]]", rows.join("], ["))
}
