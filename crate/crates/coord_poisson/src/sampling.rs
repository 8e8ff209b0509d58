//! Exact rational points on the varieties used by the catalog models.

use lie_core::{frac, int, Scalar};
use num_traits::{One, Zero};
use rand::Rng;

/// How to draw rational points on a model's variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietySampler {
    /// All of `Q^n`.
    Unconstrained(usize),
    /// The unit sphere `x² + y² + z² + t² = 1`, by inverse stereographic projection.
    Sphere3,
    /// Matrices of determinant one in row-major coordinates, as `L·U` with `L`
    /// unit lower triangular and `U` upper triangular with unit-product diagonal.
    SpecialLinear(usize),
}

fn small_rational<R: Rng>(rng: &mut R) -> Scalar {
    frac(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let q = small_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

impl VarietySampler {
    pub fn ambient_dim(&self) -> usize {
        match self {
            VarietySampler::Unconstrained(n) => *n,
            VarietySampler::Sphere3 => 4,
            VarietySampler::SpecialLinear(n) => n * n,
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Vec<Scalar> {
        match self {
            VarietySampler::Unconstrained(n) => (0..*n).map(|_| small_rational(rng)).collect(),
            VarietySampler::Sphere3 => {
                let u: Vec<Scalar> = (0..3).map(|_| small_rational(rng)).collect();
                let s: Scalar = u.iter().map(|x| x * x).sum();
                let den = Scalar::one() + &s;
                let mut p = vec![(Scalar::one() - &s) / &den];
                p.extend(u.iter().map(|x| int(2) * x / &den));
                p
            }
            VarietySampler::SpecialLinear(n) => {
                let n = *n;
                let mut diag: Vec<Scalar> = (0..n.saturating_sub(1)).map(|_| nonzero_rational(rng)).collect();
                let prod: Scalar = diag.iter().fold(Scalar::one(), |a, d| a * d);
                diag.push(Scalar::one() / prod);
                let mut lower = vec![vec![Scalar::zero(); n]; n];
                let mut upper = vec![vec![Scalar::zero(); n]; n];
                for i in 0..n {
                    lower[i][i] = Scalar::one();
                    upper[i][i] = diag[i].clone();
                    for j in 0..i {
                        lower[i][j] = small_rational(rng);
                    }
                    for j in i + 1..n {
                        upper[i][j] = small_rational(rng);
                    }
                }
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        out.push((0..n).map(|k| &lower[i][k] * &upper[k][j]).sum());
                    }
                }
                out
            }
        }
    }
}
