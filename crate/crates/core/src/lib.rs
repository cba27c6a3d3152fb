//! Classification and canonical reduction of planar second-order elliptic
//! systems with constant coefficients
//!
//! ```text
//! A f_xx + 2B f_xy + C f_yy = 0,   A, B, C ∈ M₂(ℝ),  f = u + iv,
//! ```
//!
//! together with the decision procedure for non-negatively determined
//! quadratic energy functionals `½∫(E∇f, ∇f)` whose Euler–Lagrange system is
//! the given one, and a finite-difference Dirichlet solver used to check the
//! algebra numerically.

pub mod canonical;
pub mod descriptor;
pub mod dirichlet;
pub mod energy;
mod error;
pub mod expr;
pub mod linalg;
pub mod report;
pub mod selftest;
pub mod system;
pub mod transforms;

pub use canonical::{canonicalize, CanonicalParams, CanonicalReport};
pub use energy::{energy_decision, EnergyDecision, EnergyMatrix};
pub use error::{Error, Result};
pub use linalg::{ComplexScalar, Mat2, Mat4Sym};
pub use system::{ComplexEquation, SystemSpec};
pub use transforms::{AdmissibleTransform, TransformKind};

/// Default tolerance for root reality and the other classification margins.
pub const DEFAULT_TOL: f64 = 1e-9;
