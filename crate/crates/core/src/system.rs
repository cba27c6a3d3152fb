//! Constant-coefficient systems `A f_xx + 2B f_xy + C f_yy = 0`, their
//! characteristic quartic and the ellipticity test.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{solve_quartic, ComplexScalar, Mat2};

/// Coefficient matrices of `𝓛 = A∂ₓₓ + 2B∂ₓᵧ + C∂ᵧᵧ` acting on `f = (u, v)ᵗ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemSpec {
    #[serde(rename = "A")]
    pub a: Mat2,
    #[serde(rename = "B")]
    pub b: Mat2,
    #[serde(rename = "C")]
    pub c: Mat2,
}

impl SystemSpec {
    pub fn new(a: Mat2, b: Mat2, c: Mat2) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParams("non-finite matrix entry".into()));
        }
        Ok(Self { a, b, c })
    }

    /// `A = C = I`, `B = 0`.
    pub fn laplace() -> Self {
        Self { a: Mat2::IDENTITY, b: Mat2::ZERO, c: Mat2::IDENTITY }
    }

    /// Scale used by relative tolerances: `max(‖A‖, ‖B‖, ‖C‖)`.
    pub fn norm(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm())
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &SystemSpec) -> f64 {
        (self.a - other.a)
            .max_abs()
            .max((self.b - other.b).max_abs())
            .max((self.c - other.c).max_abs())
    }

    /// Applies `𝓛` to second derivatives `(f_xx, f_xy, f_yy)`.
    pub fn apply(&self, fxx: [f64; 2], fxy: [f64; 2], fyy: [f64; 2]) -> [f64; 2] {
        let a = self.a.mul_vec(fxx);
        let b = self.b.mul_vec(fxy);
        let c = self.c.mul_vec(fyy);
        [a[0] + 2.0 * b[0] + c[0], a[1] + 2.0 * b[1] + c[1]]
    }
}

/// Scalar equation `a f_xx + 2b f_xy + c f_yy = 0` with complex coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEquation {
    pub a: ComplexScalar,
    pub b: ComplexScalar,
    pub c: ComplexScalar,
}

impl ComplexEquation {
    pub fn new(a: ComplexScalar, b: ComplexScalar, c: ComplexScalar) -> Result<Self> {
        let all = [a, b, c];
        if all.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidParams("non-finite complex coefficient".into()));
        }
        if all.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::InvalidParams("all complex coefficients vanish".into()));
        }
        Ok(Self { a, b, c })
    }
}

/// Embeds each coefficient via `x + iy ↦ [[x, -y], [y, x]]`.
pub fn from_complex_equation(eq: &ComplexEquation) -> SystemSpec {
    SystemSpec {
        a: Mat2::from_complex(eq.a),
        b: Mat2::from_complex(eq.b),
        c: Mat2::from_complex(eq.c),
    }
}

/// `det(Aλ² + 2Bλ + C) = c4 λ⁴ + c3 λ³ + c2 λ² + c1 λ + c0`.
///
/// The homogeneous form is `𝓕(ξ, η) = Σ cₖ ξᵏ η⁴⁻ᵏ`; in particular
/// `𝓕(t, 0) = c4 t⁴` with `c4 = det A` and `𝓕(0, t) = c0 t⁴` with `c0 = det C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharacteristicQuartic {
    /// `[c4, c3, c2, c1, c0]`.
    pub coeffs: [f64; 5],
}

impl CharacteristicQuartic {
    pub fn form(&self, xi: f64, eta: f64) -> f64 {
        let c = &self.coeffs;
        c[0] * xi.powi(4) + c[1] * xi.powi(3) * eta + c[2] * xi * xi * eta * eta + c[3] * xi * eta.powi(3)
            + c[4] * eta.powi(4)
    }

    pub fn roots(&self) -> Result<[ComplexScalar; 4]> {
        let c = &self.coeffs;
        solve_quartic(c[0], c[1], c[2], c[3], c[4])
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

/// `det(X + Y) - det X - det Y`.
fn mixed_det(x: &Mat2, y: &Mat2) -> f64 {
    let (x, y) = (&x.0, &y.0);
    x[0][0] * y[1][1] + x[1][1] * y[0][0] - x[0][1] * y[1][0] - x[1][0] * y[0][1]
}

pub fn characteristic_quartic(spec: &SystemSpec) -> CharacteristicQuartic {
    let b2 = spec.b * 2.0;
    CharacteristicQuartic {
        coeffs: [
            spec.a.det(),
            mixed_det(&spec.a, &b2),
            b2.det() + mixed_det(&spec.a, &spec.c),
            mixed_det(&b2, &spec.c),
            spec.c.det(),
        ],
    }
}

/// How far a system is from the ellipticity boundary.
///
/// `det_a` is `|det A| / ‖A‖²`; `roots` is `min |Im λ| / (1 + |λ|)` over the
/// four characteristic roots (zero when they cannot be computed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticityMargin {
    pub det_a: f64,
    pub roots: f64,
}

impl EllipticityMargin {
    pub fn min(&self) -> f64 {
        self.det_a.min(self.roots)
    }
}

pub fn ellipticity_margin(spec: &SystemSpec) -> EllipticityMargin {
    let an = spec.a.norm();
    let det_a = if an > 0.0 { spec.a.det().abs() / (an * an) } else { 0.0 };
    let roots = match characteristic_quartic(spec).roots() {
        Ok(r) => r.iter().map(|z| z.im.abs() / (1.0 + z.norm())).fold(f64::INFINITY, f64::min),
        Err(_) => 0.0,
    };
    EllipticityMargin { det_a, roots }
}

/// True iff `|det A| > tol·‖A‖²` and no characteristic root is real within
/// `|Im λ| <= tol·(1 + |λ|)`.
pub fn is_elliptic(spec: &SystemSpec, tol: f64) -> bool {
    let m = ellipticity_margin(spec);
    m.det_a > tol && m.roots > tol
}

/// The two characteristic roots in the upper half-plane, ordered by modulus
/// (then by real part). Their conjugates are the remaining two roots.
pub fn characteristic_roots(spec: &SystemSpec, tol: f64) -> Result<(ComplexScalar, ComplexScalar)> {
    if !is_elliptic(spec, tol) {
        return Err(Error::NotElliptic);
    }
    let mut roots = characteristic_quartic(spec).roots()?;
    roots.sort_by(|a, b| b.im.total_cmp(&a.im));
    let mut upper = [roots[0], roots[1]];
    if upper[1].im <= 0.0 {
        return Err(Error::InternalInconsistency(
            "characteristic roots do not split into conjugate pairs".into(),
        ));
    }
    upper.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.re.total_cmp(&b.re)));
    Ok((upper[0], upper[1]))
}

/// The system form of the canonical operator `𝓛_{τ,σ}`:
///
/// ```text
/// A = (1+τ) diag(1+σ, 1-σ),  B = [[0, τ-σ], [-(τ+σ), 0]],  C = (1-τ) diag(1-σ, 1+σ).
/// ```
pub fn from_canonical_params(tau: f64, sigma: f64) -> Result<SystemSpec> {
    if !tau.is_finite() || !sigma.is_finite() {
        return Err(Error::InvalidParams(format!("non-finite (tau={tau}, sigma={sigma})")));
    }
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::InvalidParams(format!("tau={tau} outside [0, 1)")));
    }
    if (sigma.abs() - 1.0).abs() <= 1e-12 {
        return Err(Error::InvalidParams(format!("|sigma|=1 (sigma={sigma})")));
    }
    Ok(SystemSpec {
        a: Mat2::diag(1.0 + sigma, 1.0 - sigma) * (1.0 + tau),
        b: Mat2::new(0.0, tau - sigma, -(tau + sigma), 0.0),
        c: Mat2::diag(1.0 - sigma, 1.0 + sigma) * (1.0 - tau),
    })
}
