//! Admissible transformations and their action on systems, characteristic
//! roots and energy matrices.
//!
//! Conventions:
//! * kind 1 (`Variables`): `ζ = T z`, `f(z) = g(Tz)`; the new coefficients are
//!   `A' = (t₁₁, t₁₂) 𝔐 (t₁₁, t₁₂)ᵗ`, `B' = (t₁₁, t₁₂) 𝔐 (t₂₁, t₂₂)ᵗ`,
//!   `C' = (t₂₁, t₂₂) 𝔐 (t₂₁, t₂₂)ᵗ` with `𝔐 = [[A, B], [B, C]]`.
//! * kind 2 (`Unknowns`): substitution `f = Q φ`, giving `A' = AQ` etc.
//! * kind 3 (`Equations`): left multiplication, `A' = PA` etc.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexScalar, Mat2, Mat4Sym};
use crate::system::SystemSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    Variables,
    Unknowns,
    Equations,
}

impl TransformKind {
    pub fn index(self) -> u8 {
        match self {
            TransformKind::Variables => 1,
            TransformKind::Unknowns => 2,
            TransformKind::Equations => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibleTransform {
    pub kind: TransformKind,
    pub matrix: Mat2,
}

impl AdmissibleTransform {
    pub fn new(kind: TransformKind, matrix: Mat2) -> Result<Self> {
        check_nonsingular(&matrix)?;
        Ok(Self { kind, matrix })
    }

    pub fn apply(&self, spec: &SystemSpec) -> Result<SystemSpec> {
        match self.kind {
            TransformKind::Variables => change_variables(spec, &self.matrix),
            TransformKind::Unknowns => change_unknowns(spec, &self.matrix),
            TransformKind::Equations => combine_equations(spec, &self.matrix),
        }
    }
}

/// Replays a transform trace from the first entry to the last.
pub fn replay(spec: &SystemSpec, trace: &[AdmissibleTransform]) -> Result<SystemSpec> {
    trace.iter().try_fold(*spec, |s, t| t.apply(&s))
}

fn check_nonsingular(m: &Mat2) -> Result<()> {
    let det = m.det();
    let n = m.norm();
    if !m.is_finite() || n == 0.0 || det.abs() <= 1e-12 * n * n {
        return Err(Error::SingularTransform { det });
    }
    Ok(())
}

pub fn change_variables(spec: &SystemSpec, t: &Mat2) -> Result<SystemSpec> {
    check_nonsingular(t)?;
    let [[t11, t12], [t21, t22]] = t.0;
    let (a, b, c) = (spec.a, spec.b, spec.c);
    Ok(SystemSpec {
        a: a * (t11 * t11) + b * (2.0 * t11 * t12) + c * (t12 * t12),
        b: a * (t11 * t21) + b * (t11 * t22 + t12 * t21) + c * (t12 * t22),
        c: a * (t21 * t21) + b * (2.0 * t21 * t22) + c * (t22 * t22),
    })
}

pub fn change_unknowns(spec: &SystemSpec, q: &Mat2) -> Result<SystemSpec> {
    check_nonsingular(q)?;
    Ok(SystemSpec { a: spec.a * *q, b: spec.b * *q, c: spec.c * *q })
}

pub fn combine_equations(spec: &SystemSpec, p: &Mat2) -> Result<SystemSpec> {
    check_nonsingular(p)?;
    Ok(SystemSpec { a: *p * spec.a, b: *p * spec.b, c: *p * spec.c })
}

/// Replaces a point of the lower half-plane by its conjugate.
pub fn fold_upper(z: ComplexScalar) -> ComplexScalar {
    if z.im < 0.0 {
        z.conj()
    } else {
        z
    }
}

/// Image of a characteristic root under the variable change `T`:
/// `Λ_T(λ) = (t₂₂λ - t₂₁) / (-t₁₂λ + t₁₁)`, folded to the upper half-plane.
pub fn moebius_of_matrix(t: &Mat2, lambda: ComplexScalar) -> Result<ComplexScalar> {
    let [[t11, t12], [t21, t22]] = t.0;
    let num = lambda * t22 - t21;
    let den = -lambda * t12 + t11;
    if den.norm() <= 1e-12 * (1.0 + lambda.norm()) * t.norm() {
        return Err(Error::PoleHit);
    }
    Ok(fold_upper(num / den))
}

fn kron_left(t: &Mat2) -> [[f64; 4]; 4] {
    let mut s = [[0.0; 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for i in 0..2 {
                s[2 * a + i][2 * b + i] = t.0[a][b];
            }
        }
    }
    s
}

/// `E₀ = (T ⊗ I) E (Tᵗ ⊗ I)`: each block pair combined with scalar weights `tᵢⱼ`.
///
/// For `ζ = Tz` the energy becomes `½∫(E₀∇_ζ g, ∇_ζ g) dm₂(ζ) / |det T|`; the
/// Jacobian factor is omitted here since it does not affect definiteness or
/// the Euler–Lagrange system.
pub fn transform_energy_variables(e: &Mat4Sym, t: &Mat2) -> Result<Mat4Sym> {
    check_nonsingular(t)?;
    Ok(e.congruence(&kron_left(t)))
}

/// Blockwise `K₁ = QᵗKQ`, `L₁ = QᵗLQ`, `M₁ = QᵗMQ` for the substitution `f = Qφ`.
pub fn transform_energy_unknowns(e: &Mat4Sym, q: &Mat2) -> Result<Mat4Sym> {
    check_nonsingular(q)?;
    let qt = q.transpose();
    let mut s = [[0.0; 4]; 4];
    for a in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                s[2 * a + i][2 * a + j] = qt.0[i][j];
            }
        }
    }
    Ok(e.congruence(&s))
}

/// Random matrix with entries uniform in `[-half_width, half_width]`,
/// rejected until `|det| >= min_det·‖M‖²` (and `det > 0` when requested).
pub fn random_nonsingular<R: Rng + ?Sized>(
    rng: &mut R,
    half_width: f64,
    min_det: f64,
    positive_det: bool,
) -> Mat2 {
    loop {
        let m = Mat2::new(
            rng.gen_range(-half_width..=half_width),
            rng.gen_range(-half_width..=half_width),
            rng.gen_range(-half_width..=half_width),
            rng.gen_range(-half_width..=half_width),
        );
        let n = m.norm();
        let det = m.det();
        if det.abs() >= min_det * n * n && (!positive_det || det > 0.0) {
            return m;
        }
    }
}
