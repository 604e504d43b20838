//! Nonlinear Cosserat rod elements for slender-structure dynamics.
//!
//! A rod is described by its centerline plus an orthonormal director triad
//! attached to each cross-section. The crate builds two-node rod elements
//! whose shape functions are quasi-static perturbation solutions of the rod
//! equilibrium equations, carried to third order in the twelve nodal
//! displacements. Element mass, stiffness and quadratic/cubic force operators
//! follow from energy quadrature over those shape functions; global systems
//! are assembled by direct stiffness, reduced by free/restrained
//! partitioning, and solved by symmetric-definite eigenanalysis or adaptive
//! Runge-Kutta time integration.
//!
//! Module map:
//!
//! - [`so3`]: rotation-vector algebra (spin matrix, exponential, logarithm).
//! - [`jets`]: truncated multivariate polynomial arithmetic that carries the
//!   perturbation bookkeeping.
//! - [`poly`]: polynomials in the arc-length coordinate with ring-valued
//!   coefficients.
//! - [`kinematics`]: director frames, rotation-parameter maps, strain
//!   measures.
//! - [`section`]: cross-section constitutive and inertial properties.
//! - [`shapefn`]: perturbation shape functions of a rod element.
//! - [`element`]: element operators (mass, stiffness, nonlinear forces) and
//!   the closed-form cantilever oracle.
//! - [`system`]: global assembly, modal analysis, transient integration.

pub mod element;
pub mod jets;
pub mod kinematics;
pub mod ode;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod section;
pub mod shapefn;
pub mod so3;
pub mod system;

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("degenerate rod axis: |r'| = {norm:e} must be positive")]
    DegenerateAxis { norm: f64 },
    #[error("jet domain error: {0}")]
    JetDomain(String),
    #[error("rotation vector norm {0} is outside the canonical branch [0, 2*pi)")]
    RotationBranch(f64),
    #[error("not a rotation matrix: {0}")]
    NotRotation(String),
    #[error("shape-function ansatz degree {degree} exceeds cap {cap} at order {order}")]
    AnsatzDegree {
        degree: usize,
        cap: usize,
        order: usize,
    },
    #[error("invalid section: {0}")]
    BadSection(String),
    #[error("mass matrix is not positive definite")]
    MassNotPositiveDefinite,
    #[error("integration failed at t = {t}: {reason}")]
    Integrator { t: f64, reason: String },
    #[error("sigma = {sigma} outside element range [0, {l}]")]
    SigmaRange { sigma: f64, l: f64 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
