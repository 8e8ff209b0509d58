//! Polynomial Poisson structures in coordinates: Hamiltonian and horizontal
//! vector fields, divergences, kernel-covector obstructions, Hessians at
//! critical points, numeric spot checks against the group law and RK4 flows
//! with log-volume monitoring.

pub mod catalog;
pub mod flow;
pub mod model;
pub mod polynomial;
pub mod sampling;

pub use flow::{rk4_flow, FlowTrace};
pub use model::{
    JacobiMethod, JacobiReport, KernelObstructionCertificate, PolyVectorField, PolynomialPoissonModel,
};
pub use polynomial::Polynomial;
pub use sampling::VarietySampler;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoordError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("expected {expected} variables or components, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("bracket matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("base point violates constraint {0}")]
    BaseNotOnVariety(usize),
    #[error("point violates constraint {0}")]
    NotOnVariety(usize),
    #[error("bracket does not vanish at the base point in entry ({0}, {1})")]
    NonzeroAtBase(usize, usize),
    #[error("model has no base point")]
    NoBasePoint,
    #[error("model has no group multiplication")]
    NoGroupMultiplication,
    #[error("covector is not in the kernel of the bracket: row {0} is nonzero")]
    KernelResidual(usize),
    #[error("obstruction vanishes at every tried point of the variety")]
    ObstructionVanishes,
    #[error("point is not critical along frame direction {0}")]
    NotCritical(usize),
    #[error("Hessian is not symmetric at ({0}, {1})")]
    HessianAsymmetric(usize, usize),
    #[error("constraint drift {drift:e} exceeds the limit at t = {t}")]
    ConstraintDrift { t: f64, drift: f64 },
    #[error("initial point is off the variety by {0:e}")]
    InitialDrift(f64),
    #[error("time step must be positive and no larger than the horizon")]
    BadStep,
}
