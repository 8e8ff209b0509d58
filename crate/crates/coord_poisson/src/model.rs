//! Polynomial Poisson models and the vector fields living on them.

use exterior_algebra::CocommutatorMap;
use lie_core::scalar::to_f64;
use lie_core::Scalar;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::polynomial::Polynomial;
use crate::sampling::VarietySampler;
use crate::CoordError;

/// Vector field `Σ X_i ∂/∂x_i` with polynomial components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    pub components: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Polynomial>) -> Self {
        PolyVectorField { components }
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField { components: vec![Polynomial::zero(n); n] }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Derivative `X(f)`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.nvars());
        for (i, c) in self.components.iter().enumerate() {
            out = &out + &(c * &f.derivative(i));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        PolyVectorField::new(self.components.iter().zip(&o.components).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        PolyVectorField::new(self.components.iter().zip(&o.components).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PolyVectorField::new(self.components.iter().map(|p| p.scale(c)).collect())
    }

    /// `Σ X_i ∂_i` over `Q`; divergence with respect to the coordinate volume.
    pub fn euclidean_divergence(&self) -> Polynomial {
        let n = self.components.first().map(Polynomial::nvars).unwrap_or(0);
        let mut out = Polynomial::zero(n);
        for (i, c) in self.components.iter().enumerate() {
            out = &out + &c.derivative(i);
        }
        out
    }

    pub fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(vars)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| format!("({}) d/d{v}", c.render(vars)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiMethod {
    /// Jacobiator expanded to polynomials.
    Symbolic,
    /// Jacobiator evaluated exactly at rational points of the variety.
    Sampled { points: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiReport {
    pub method: JacobiMethod,
    /// First coordinate triple with a nonzero Jacobiator.
    pub violation: Option<(usize, usize, usize)>,
    /// Largest absolute Jacobiator value seen, as a float.
    pub max_abs: f64,
}

impl JacobiReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Proof that a field is not Hamiltonian: a covector annihilated by the
/// bracket which pairs nontrivially with the field somewhere on the variety.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelObstructionCertificate {
    pub covector: Vec<Polynomial>,
    pub target: PolyVectorField,
    pub kernel_residual: Vec<Polynomial>,
    pub obstruction: Polynomial,
    pub witness: Vec<Scalar>,
    pub witness_value: Scalar,
}

impl KernelObstructionCertificate {
    pub fn is_valid(&self) -> bool {
        self.kernel_residual.iter().all(Polynomial::is_zero) && !self.witness_value.is_zero()
    }
}

/// Named coordinates with an antisymmetric polynomial bracket matrix,
/// optional constraints, base point and group law.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialPoissonModel {
    name: String,
    vars: Vec<String>,
    bracket: Vec<Vec<Polynomial>>,
    constraints: Vec<Polynomial>,
    group_mult: Option<Vec<Polynomial>>,
    base_point: Option<Vec<Scalar>>,
    poisson_lie: bool,
    sampler: VarietySampler,
}

impl PolynomialPoissonModel {
    /// Checks the matrix shape and exact antisymmetry.
    pub fn new(name: &str, vars: Vec<String>, bracket: Vec<Vec<Polynomial>>) -> Result<Self, CoordError> {
        let n = vars.len();
        if bracket.len() != n {
            return Err(CoordError::Dimension { expected: n, got: bracket.len() });
        }
        for row in &bracket {
            if row.len() != n {
                return Err(CoordError::Dimension { expected: n, got: row.len() });
            }
            if let Some(p) = row.iter().find(|p| p.nvars() != n) {
                return Err(CoordError::Dimension { expected: n, got: p.nvars() });
            }
        }
        for i in 0..n {
            for j in i..n {
                if !(&bracket[i][j] + &bracket[j][i]).is_zero() {
                    return Err(CoordError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(PolynomialPoissonModel {
            name: name.into(),
            vars,
            bracket,
            constraints: Vec::new(),
            group_mult: None,
            base_point: None,
            poisson_lie: false,
            sampler: VarietySampler::Unconstrained(n),
        })
    }

    /// Builds the matrix from the entries above the diagonal; missing pairs are zero.
    pub fn from_upper(name: &str, vars: Vec<String>, entries: Vec<((usize, usize), Polynomial)>) -> Result<Self, CoordError> {
        let n = vars.len();
        let mut bracket = vec![vec![Polynomial::zero(n); n]; n];
        for ((i, j), p) in entries {
            if i >= n || j >= n {
                return Err(CoordError::Dimension { expected: n, got: i.max(j) + 1 });
            }
            bracket[j][i] = -&p;
            bracket[i][j] = p;
        }
        Self::new(name, vars, bracket)
    }

    pub fn with_constraints(mut self, constraints: Vec<Polynomial>, sampler: VarietySampler) -> Result<Self, CoordError> {
        let n = self.dim();
        if let Some(c) = constraints.iter().find(|c| c.nvars() != n) {
            return Err(CoordError::Dimension { expected: n, got: c.nvars() });
        }
        if sampler.ambient_dim() != n {
            return Err(CoordError::Dimension { expected: n, got: sampler.ambient_dim() });
        }
        self.constraints = constraints;
        self.sampler = sampler;
        Ok(self)
    }

    /// Multiplication map: `n` polynomials in `2n` variables, first factor first.
    pub fn with_group_mult(mut self, mult: Vec<Polynomial>) -> Result<Self, CoordError> {
        let n = self.dim();
        if mult.len() != n {
            return Err(CoordError::Dimension { expected: n, got: mult.len() });
        }
        if let Some(p) = mult.iter().find(|p| p.nvars() != 2 * n) {
            return Err(CoordError::Dimension { expected: 2 * n, got: p.nvars() });
        }
        self.group_mult = Some(mult);
        Ok(self)
    }

    /// Sets the base point; when `poisson_lie` is set the bracket must vanish there.
    pub fn with_base_point(mut self, point: Vec<Scalar>, poisson_lie: bool) -> Result<Self, CoordError> {
        let n = self.dim();
        if point.len() != n {
            return Err(CoordError::Dimension { expected: n, got: point.len() });
        }
        if let Some(k) = self.constraints.iter().position(|c| !c.eval(&point).is_zero()) {
            return Err(CoordError::BaseNotOnVariety(k));
        }
        if poisson_lie {
            for i in 0..n {
                for j in i + 1..n {
                    if !self.bracket[i][j].eval(&point).is_zero() {
                        return Err(CoordError::NonzeroAtBase(i, j));
                    }
                }
            }
        }
        self.base_point = Some(point);
        self.poisson_lie = poisson_lie;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn bracket_entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.bracket[i][j]
    }

    pub fn bracket_matrix(&self) -> &[Vec<Polynomial>] {
        &self.bracket
    }

    pub fn constraints(&self) -> &[Polynomial] {
        &self.constraints
    }

    pub fn group_mult(&self) -> Option<&[Polynomial]> {
        self.group_mult.as_deref()
    }

    pub fn base_point(&self) -> Option<&[Scalar]> {
        self.base_point.as_deref()
    }

    pub fn is_poisson_lie(&self) -> bool {
        self.poisson_lie
    }

    pub fn sampler(&self) -> &VarietySampler {
        &self.sampler
    }

    /// Parses a polynomial over this model's variables.
    pub fn parse(&self, text: &str, params: &std::collections::HashMap<String, Scalar>) -> Result<Polynomial, CoordError> {
        Polynomial::parse(text, &self.vars, params)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.dim(), i)
    }

    pub fn on_variety(&self, point: &[Scalar]) -> bool {
        self.constraints.iter().all(|c| c.eval(point).is_zero())
    }

    /// `n` exact points on the variety from a seeded stream.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<Scalar>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sampler.sample(&mut rng)).collect()
    }

    fn check_vars(&self, p: &Polynomial) -> Result<(), CoordError> {
        if p.nvars() != self.dim() {
            return Err(CoordError::Dimension { expected: self.dim(), got: p.nvars() });
        }
        Ok(())
    }

    fn check_field(&self, x: &PolyVectorField) -> Result<(), CoordError> {
        if x.dim() != self.dim() {
            return Err(CoordError::Dimension { expected: self.dim(), got: x.dim() });
        }
        x.components.iter().try_for_each(|c| self.check_vars(c))
    }

    /// `{f, g} = Σ ∂f/∂x_i ∂g/∂x_j Π[i][j]`.
    pub fn poisson_bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, CoordError> {
        self.check_vars(f)?;
        self.check_vars(g)?;
        let df = f.gradient();
        let dg = g.gradient();
        let mut out = Polynomial::zero(self.dim());
        for (i, a) in df.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in dg.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if !self.bracket[i][j].is_zero() {
                    out = &out + &(&(a * b) * &self.bracket[i][j]);
                }
            }
        }
        Ok(out)
    }

    /// `Π♯` of a polynomial one-form: component `j` is `Σ_i α_i Π[i][j]`.
    pub fn sharp(&self, alpha: &[Polynomial]) -> Result<PolyVectorField, CoordError> {
        let n = self.dim();
        if alpha.len() != n {
            return Err(CoordError::Dimension { expected: n, got: alpha.len() });
        }
        alpha.iter().try_for_each(|a| self.check_vars(a))?;
        let comps = (0..n)
            .map(|j| {
                let mut acc = Polynomial::zero(n);
                for (i, a) in alpha.iter().enumerate() {
                    if !a.is_zero() && !self.bracket[i][j].is_zero() {
                        acc = &acc + &(a * &self.bracket[i][j]);
                    }
                }
                acc
            })
            .collect();
        Ok(PolyVectorField::new(comps))
    }

    /// `X_h(x_j) = Σ_i ∂h/∂x_i Π[i][j]`, so that `X_h(f) = {h, f}`.
    pub fn hamiltonian_vf(&self, h: &Polynomial) -> Result<PolyVectorField, CoordError> {
        self.check_vars(h)?;
        self.sharp(&h.gradient())
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Polynomial {
        let n = self.dim();
        let xi = self.var(i);
        let xj = self.var(j);
        let xk = self.var(k);
        let br = |a: &Polynomial, b: &Polynomial| self.poisson_bracket(a, b).expect("same variables");
        let t1 = br(&xi, &self.bracket[j][k]);
        let t2 = br(&xj, &self.bracket[k][i]);
        let t3 = br(&xk, &self.bracket[i][j]);
        let mut out = Polynomial::zero(n);
        for t in [t1, t2, t3] {
            out = &out + &t;
        }
        out
    }

    /// Jacobi identity of the bracket. Unconstrained models expand the
    /// Jacobiator symbolically; constrained ones evaluate it exactly at
    /// `points` sampled rational points of the variety.
    pub fn jacobi_symbolic(&self, points: usize, seed: u64) -> JacobiReport {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .collect();
        if self.constraints.is_empty() {
            for &(i, j, k) in &triples {
                let jac = self.jacobiator(i, j, k);
                if !jac.is_zero() {
                    return JacobiReport { method: JacobiMethod::Symbolic, violation: Some((i, j, k)), max_abs: f64::NAN };
                }
            }
            return JacobiReport { method: JacobiMethod::Symbolic, violation: None, max_abs: 0.0 };
        }
        let pts = self.sample_points(points, seed);
        let method = JacobiMethod::Sampled { points: pts.len() };
        let mut max_abs = 0.0f64;
        let mut violation = None;
        for &(i, j, k) in &triples {
            let jac = self.jacobiator(i, j, k);
            for p in &pts {
                let v = jac.eval(p);
                if !v.is_zero() {
                    max_abs = max_abs.max(to_f64(&v).abs());
                    violation.get_or_insert((i, j, k));
                }
            }
        }
        JacobiReport { method, violation, max_abs }
    }

    /// `Σ ∂X_i/∂x_i + X(log_density)`.
    pub fn divergence(&self, x: &PolyVectorField, log_density: &Polynomial) -> Result<Polynomial, CoordError> {
        self.check_field(x)?;
        self.check_vars(log_density)?;
        Ok(&x.euclidean_divergence() + &x.apply(log_density))
    }

    /// Verifies `Σ_j c_j Π[i][j] = 0` for every `i` and finds a point of the
    /// variety where `Σ_j c_j H_j` does not vanish. The supplied witness is
    /// tried first, then the base point, then sampled points.
    pub fn kernel_obstruction_verify(
        &self,
        covector: &[Polynomial],
        target: &PolyVectorField,
        witness: Option<&[Scalar]>,
    ) -> Result<KernelObstructionCertificate, CoordError> {
        let n = self.dim();
        self.check_field(target)?;
        if covector.len() != n {
            return Err(CoordError::Dimension { expected: n, got: covector.len() });
        }
        covector.iter().try_for_each(|c| self.check_vars(c))?;
        let kernel_residual: Vec<Polynomial> = (0..n)
            .map(|i| {
                let mut acc = Polynomial::zero(n);
                for (j, c) in covector.iter().enumerate() {
                    acc = &acc + &(c * &self.bracket[i][j]);
                }
                acc
            })
            .collect();
        if let Some(i) = kernel_residual.iter().position(|r| !r.is_zero()) {
            return Err(CoordError::KernelResidual(i));
        }
        let mut obstruction = Polynomial::zero(n);
        for (c, h) in covector.iter().zip(&target.components) {
            obstruction = &obstruction + &(c * h);
        }
        let mut candidates: Vec<Vec<Scalar>> = Vec::new();
        if let Some(w) = witness {
            if w.len() != n {
                return Err(CoordError::Dimension { expected: n, got: w.len() });
            }
            if let Some(k) = self.constraints.iter().position(|c| !c.eval(w).is_zero()) {
                return Err(CoordError::NotOnVariety(k));
            }
            candidates.push(w.to_vec());
        }
        candidates.extend(self.base_point.iter().cloned());
        candidates.extend(self.sample_points(200, 0x6b65726e));
        for p in candidates {
            let v = obstruction.eval(&p);
            if !v.is_zero() {
                return Ok(KernelObstructionCertificate {
                    covector: covector.to_vec(),
                    target: target.clone(),
                    kernel_residual,
                    obstruction,
                    witness: p,
                    witness_value: v,
                });
            }
        }
        Err(CoordError::ObstructionVanishes)
    }

    /// `−Π♯(dσ) + ½(right − left + Π♯(α))` with `α` the coordinate one-form of
    /// the right-translated modular character of the group, or zero.
    pub fn field_from_character_data(
        &self,
        left: &PolyVectorField,
        right: &PolyVectorField,
        chi_g_form: Option<&[Polynomial]>,
        log_density: &Polynomial,
    ) -> Result<PolyVectorField, CoordError> {
        self.check_field(left)?;
        self.check_field(right)?;
        let half = Scalar::one() / lie_core::int(2);
        let mut inner = right.sub(left);
        if let Some(alpha) = chi_g_form {
            inner = inner.add(&self.sharp(alpha)?);
        }
        Ok(inner.scale(&half).sub(&self.hamiltonian_vf(log_density)?))
    }

    /// `X_h(σ + τ) + ½(right(h) − left(h) − α(X_h))`, which vanishes when the
    /// Hamiltonian flow of a basic `h` preserves the volume.
    pub fn preservation_residual(
        &self,
        h: &Polynomial,
        sigma: &Polynomial,
        tau: &Polynomial,
        left: &PolyVectorField,
        right: &PolyVectorField,
        chi_g_form: Option<&[Polynomial]>,
    ) -> Result<Polynomial, CoordError> {
        self.check_field(left)?;
        self.check_field(right)?;
        let xh = self.hamiltonian_vf(h)?;
        let mut inner = &right.apply(h) - &left.apply(h);
        if let Some(alpha) = chi_g_form {
            if alpha.len() != self.dim() {
                return Err(CoordError::Dimension { expected: self.dim(), got: alpha.len() });
            }
            for (a, x) in alpha.iter().zip(&xh.components) {
                inner = &inner - &(a * x);
            }
        }
        let half = Scalar::one() / lie_core::int(2);
        Ok(&xh.apply(&(sigma + tau)) + &inner.scale(&half))
    }

    /// True iff every supplied vertical field kills `h`.
    pub fn basic_function_check(&self, h: &Polynomial, vertical: &[PolyVectorField]) -> bool {
        vertical.iter().all(|v| v.apply(h).is_zero())
    }

    /// `H_ij = V_i(V_j(h))` at a point where every `V_i(h)` vanishes.
    pub fn hessian_at(
        &self,
        h: &Polynomial,
        point: &[Scalar],
        frame: &[PolyVectorField],
    ) -> Result<Vec<Vec<Scalar>>, CoordError> {
        self.check_vars(h)?;
        if point.len() != self.dim() {
            return Err(CoordError::Dimension { expected: self.dim(), got: point.len() });
        }
        frame.iter().try_for_each(|v| self.check_field(v))?;
        let firsts: Vec<Polynomial> = frame.iter().map(|v| v.apply(h)).collect();
        if let Some(i) = firsts.iter().position(|d| !d.eval(point).is_zero()) {
            return Err(CoordError::NotCritical(i));
        }
        let m = frame.len();
        let hess: Vec<Vec<Scalar>> =
            (0..m).map(|i| (0..m).map(|j| frame[i].apply(&firsts[j]).eval(point)).collect()).collect();
        for i in 0..m {
            for j in i + 1..m {
                if hess[i][j] != hess[j][i] {
                    return Err(CoordError::HessianAsymmetric(i, j));
                }
            }
        }
        Ok(hess)
    }

    fn mult(&self) -> Result<&[Polynomial], CoordError> {
        self.group_mult.as_deref().ok_or(CoordError::NoGroupMultiplication)
    }

    fn base(&self) -> Result<&[Scalar], CoordError> {
        self.base_point.as_deref().ok_or(CoordError::NoBasePoint)
    }

    /// Left-invariant field `g ↦ d/ds m(g, e + sξ)` derived from the group law.
    pub fn left_invariant_field(&self, xi: &[Scalar]) -> Result<PolyVectorField, CoordError> {
        let n = self.dim();
        let mult = self.mult()?;
        let e = self.base()?;
        let subs: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::var(n, i))
            .chain(e.iter().map(|c| Polynomial::constant(n, c.clone())))
            .collect();
        Ok(PolyVectorField::new(
            mult.iter()
                .map(|mk| {
                    let mut acc = Polynomial::zero(2 * n);
                    for (l, x) in xi.iter().enumerate() {
                        acc = &acc + &mk.derivative(n + l).scale(x);
                    }
                    acc.compose(&subs)
                })
                .collect(),
        ))
    }

    /// Right-invariant field `g ↦ d/ds m(e + sξ, g)` derived from the group law.
    pub fn right_invariant_field(&self, xi: &[Scalar]) -> Result<PolyVectorField, CoordError> {
        let n = self.dim();
        let mult = self.mult()?;
        let e = self.base()?;
        let subs: Vec<Polynomial> = e
            .iter()
            .map(|c| Polynomial::constant(n, c.clone()))
            .chain((0..n).map(|i| Polynomial::var(n, i)))
            .collect();
        Ok(PolyVectorField::new(
            mult.iter()
                .map(|mk| {
                    let mut acc = Polynomial::zero(2 * n);
                    for (l, x) in xi.iter().enumerate() {
                        acc = &acc + &mk.derivative(l).scale(x);
                    }
                    acc.compose(&subs)
                })
                .collect(),
        ))
    }

    /// Largest exact discrepancy between a transcribed field and the field
    /// derived from the group law, over `count` sampled variety points.
    pub fn invariant_field_crosscheck(
        &self,
        transcribed: &PolyVectorField,
        left: bool,
        count: usize,
        seed: u64,
    ) -> Result<Scalar, CoordError> {
        self.check_field(transcribed)?;
        let e = self.base()?.to_vec();
        let xi = transcribed.eval(&e);
        let derived = if left { self.left_invariant_field(&xi)? } else { self.right_invariant_field(&xi)? };
        let mut worst = Scalar::zero();
        for p in self.sample_points(count, seed) {
            for (a, b) in transcribed.eval(&p).iter().zip(derived.eval(&p)) {
                let d = num_traits::Signed::abs(&(a - &b));
                if d > worst {
                    worst = d;
                }
            }
        }
        Ok(worst)
    }

    /// Bracket `[X, Y]` of tangent vectors at the base point, from the
    /// antisymmetrized mixed second derivative of the group law.
    pub fn group_bracket_at_base(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, CoordError> {
        let n = self.dim();
        let mult = self.mult()?;
        let e = self.base()?;
        let ee: Vec<Scalar> = e.iter().chain(e.iter()).cloned().collect();
        Ok(mult
            .iter()
            .map(|mk| {
                let mut acc = Scalar::zero();
                for a in 0..n {
                    for b in 0..n {
                        let coeff = &x[a] * &y[b] - &y[a] * &x[b];
                        if !coeff.is_zero() {
                            acc += coeff * mk.derivative(a).derivative(n + b).eval(&ee);
                        }
                    }
                }
                acc
            })
            .collect())
    }

    pub fn bracket_at(&self, point: &[Scalar]) -> Vec<Vec<Scalar>> {
        self.bracket.iter().map(|row| row.iter().map(|p| p.eval(point)).collect()).collect()
    }

    /// Largest entry of `Π(gh) − J₂Π(h)J₂ᵀ − J₁Π(g)J₁ᵀ` over `pairs` sampled
    /// pairs, where `J₁`, `J₂` are the Jacobians of the group law in each
    /// factor. Evaluated exactly, reported as a float. Requires `Π(e) = 0`.
    pub fn multiplicativity_spotcheck(&self, pairs: usize, seed: u64) -> Result<f64, CoordError> {
        let n = self.dim();
        let mult = self.mult()?;
        let e = self.base()?;
        let at_e = self.bracket_at(e);
        for (i, row) in at_e.iter().enumerate() {
            if let Some(j) = row.iter().position(|v| !v.is_zero()) {
                return Err(CoordError::NonzeroAtBase(i, j));
            }
        }
        let jac: Vec<Vec<Polynomial>> = mult.iter().map(|mk| (0..2 * n).map(|v| mk.derivative(v)).collect()).collect();
        let pts = self.sample_points(2 * pairs, seed);
        let mut worst = 0.0f64;
        for pair in pts.chunks(2) {
            let (g, h) = (&pair[0], &pair[1]);
            let gh_args: Vec<Scalar> = g.iter().chain(h.iter()).cloned().collect();
            let prod: Vec<Scalar> = mult.iter().map(|mk| mk.eval(&gh_args)).collect();
            let j1: Vec<Vec<Scalar>> = (0..n).map(|k| (0..n).map(|a| jac[k][a].eval(&gh_args)).collect()).collect();
            let j2: Vec<Vec<Scalar>> = (0..n).map(|k| (0..n).map(|a| jac[k][n + a].eval(&gh_args)).collect()).collect();
            let pg = self.bracket_at(g);
            let ph = self.bracket_at(h);
            let pgh = self.bracket_at(&prod);
            for k in 0..n {
                for l in 0..n {
                    let mut r = pgh[k][l].clone();
                    for a in 0..n {
                        for b in 0..n {
                            r -= &j2[k][a] * &ph[a][b] * &j2[l][b];
                            r -= &j1[k][a] * &pg[a][b] * &j1[l][b];
                        }
                    }
                    worst = worst.max(to_f64(&r).abs());
                }
            }
        }
        Ok(worst)
    }

    /// Central differences of `Π` at the base point along each frame vector,
    /// compared with the cobracket pushed through the same frame:
    /// `DΠ(u_k) ≈ Σ_{a<b} δ(X_k)^{ab} (u_a u_bᵀ − u_b u_aᵀ)`.
    pub fn linearization_vs_cocommutator(
        &self,
        delta: &CocommutatorMap,
        frame: &[Vec<Scalar>],
        step: f64,
    ) -> Result<f64, CoordError> {
        let n = self.dim();
        let e: Vec<f64> = self.base()?.iter().map(to_f64).collect();
        if delta.dim() != frame.len() {
            return Err(CoordError::Dimension { expected: frame.len(), got: delta.dim() });
        }
        let u: Vec<Vec<f64>> = frame.iter().map(|v| v.iter().map(to_f64).collect()).collect();
        if let Some(v) = u.iter().find(|v| v.len() != n) {
            return Err(CoordError::Dimension { expected: n, got: v.len() });
        }
        let eval = |p: &[f64]| -> Vec<Vec<f64>> {
            self.bracket.iter().map(|row| row.iter().map(|q| q.eval_f64(p)).collect()).collect()
        };
        let mut worst = 0.0f64;
        for (k, uk) in u.iter().enumerate() {
            let plus: Vec<f64> = e.iter().zip(uk).map(|(a, b)| a + step * b).collect();
            let minus: Vec<f64> = e.iter().zip(uk).map(|(a, b)| a - step * b).collect();
            let (pp, pm) = (eval(&plus), eval(&minus));
            let mut expected = vec![vec![0.0; n]; n];
            for (idx, c) in delta.images[k].terms() {
                let (a, b) = (idx[0], idx[1]);
                let c = to_f64(c);
                for r in 0..n {
                    for s in 0..n {
                        expected[r][s] += c * (u[a][r] * u[b][s] - u[b][r] * u[a][s]);
                    }
                }
            }
            for r in 0..n {
                for s in 0..n {
                    let fd = (pp[r][s] - pm[r][s]) / (2.0 * step);
                    worst = worst.max((fd - expected[r][s]).abs());
                }
            }
        }
        Ok(worst)
    }
}
