//! Reduction of an elliptic system to the canonical form
//!
//! ```text
//! A = I,  B = [[0, 1], [-¼(1-λ)(1-κ²/λ), 0]],  C = diag(λ, κ²/λ)
//! ```
//!
//! by a chain of admissible transforms, and the derived parameters
//! `τ = (1-κ)/(1+κ)`, `σ = (κ-λ)/(κ+λ)`.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{jordan_2x2, ComplexScalar, JordanCase, Mat2};
use crate::system::{characteristic_roots, ellipticity_margin, SystemSpec};
use crate::transforms::{AdmissibleTransform, TransformKind};

/// Relative margin below which `λ = κ²` (a reducible system) is declared.
pub const REDUCIBILITY_TOL: f64 = 1e-8;

/// Serializes `±∞` as `"inf"`/`"-inf"` and finite values as numbers.
pub fn serialize_extended<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_infinite() {
        s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
    } else {
        s.serialize_f64(*x)
    }
}

pub fn serialize_extended_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_extended(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalParams {
    pub kappa: f64,
    /// Absent for reducible systems.
    pub lambda: Option<f64>,
    pub tau: f64,
    /// `f64::INFINITY` encodes `λ = -κ`.
    #[serde(serialize_with = "serialize_extended_opt")]
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalMargins {
    /// `min(|det A|/‖A‖², min |Im λ|/(1+|λ|))` of the input.
    pub ellipticity: f64,
    /// `|λ - κ²| / κ²`, when `λ` was extracted.
    pub reducibility: Option<f64>,
    /// Largest entrywise deviation of the final matrices from the canonical form.
    pub final_form: Option<f64>,
    /// Largest entrywise deviation of the replayed trace from the final matrices.
    pub replay: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalReport {
    pub elliptic: bool,
    pub reducible: bool,
    pub strongly_elliptic: bool,
    /// Set when the ellipticity margin is within `10·tol`.
    pub marginal: bool,
    pub tol: f64,
    pub params: Option<CanonicalParams>,
    pub jordan_case: Option<JordanCase>,
    pub trace: Vec<AdmissibleTransform>,
    pub final_matrices: Option<SystemSpec>,
    pub margins: CanonicalMargins,
}

impl CanonicalReport {
    pub fn require_elliptic(self) -> Result<Self> {
        if self.elliptic {
            Ok(self)
        } else {
            Err(Error::NotElliptic)
        }
    }
}

/// Möbius map sending `λ₂ ↦ i` and `λ₁ ↦ κi` with `κ ∈ (0, 1]`, returned as
/// the variable-change matrix `T = [[d, -c], [-b, a]]` of
/// `Λ(ζ) = (aζ + b)/(cζ + d)`, together with `κ`.
///
/// `Λ` is the affine map `ζ ↦ (ζ - Re λ₂)/Im λ₂` followed by the elliptic
/// rotation about `i` that brings the image of `λ₁` onto the segment `(0, i]`.
/// Since `κ` is fixed by the hyperbolic distance between the roots, it never
/// exceeds one and the labeling of the roots does not matter.
pub fn build_moebius_to_imaginary(l1: ComplexScalar, l2: ComplexScalar) -> Result<(Mat2, f64)> {
    if !(l1.im > 0.0 && l2.im > 0.0) || !(l1.is_finite() && l2.is_finite()) {
        return Err(Error::InvalidParams(format!("roots {l1} and {l2} must lie in the upper half-plane")));
    }
    let i = ComplexScalar::i();
    let shift = Mat2::new(1.0, -l2.re, 0.0, l2.im);
    let w = (l1 - l2.re) / l2.im;
    let d = (w - i) / (w + i);
    let r = d.norm();
    let kappa = (1.0 - r) / (1.0 + r);
    let theta = if r == 0.0 { 0.0 } else { 0.5 * (-d.conj()).arg() };
    let (s, c) = theta.sin_cos();
    let rot = Mat2::new(c, s, -s, c);
    let [[a, b], [cc, dd]] = (rot * shift).0;
    Ok((Mat2::new(dd, -cc, -b, a), kappa))
}

fn check_kappa_lambda(kappa: f64, lambda: f64) -> Result<()> {
    let slack = 1e-9;
    let valid = kappa.is_finite()
        && lambda.is_finite()
        && kappa > 0.0
        && kappa <= 1.0 + slack
        && lambda.abs() <= kappa + slack
        && lambda != 0.0;
    if !valid {
        return Err(Error::InvalidParams(format!("(kappa={kappa}, lambda={lambda}) is not admissible")));
    }
    Ok(())
}

/// `τ = (1-κ)/(1+κ)` and `σ = (κ-λ)/(κ+λ)`, with `σ = ∞` when `λ = -κ`.
///
/// The reducible value `λ = κ²` is accepted and gives `σ = τ`.
pub fn to_tau_sigma(kappa: f64, lambda: f64) -> Result<(f64, f64)> {
    check_kappa_lambda(kappa, lambda)?;
    let tau = (1.0 - kappa) / (1.0 + kappa);
    let sigma = if (lambda + kappa).abs() <= 1e-12 * kappa {
        f64::INFINITY
    } else {
        (kappa - lambda) / (kappa + lambda)
    };
    Ok((tau, sigma))
}

/// Inverse of [`to_tau_sigma`]: `κ = (1-τ)/(1+τ)`, `λ = κ(1-σ)/(1+σ)`.
pub fn kappa_lambda(tau: f64, sigma: f64) -> (f64, f64) {
    let kappa = (1.0 - tau) / (1.0 + tau);
    let lambda = if sigma.is_infinite() { -kappa } else { kappa * (1.0 - sigma) / (1.0 + sigma) };
    (kappa, lambda)
}

/// The canonical matrices for given `(κ, λ)`.
pub fn canonical_matrices(kappa: f64, lambda: f64) -> SystemSpec {
    let mu = kappa * kappa / lambda;
    SystemSpec {
        a: Mat2::IDENTITY,
        b: Mat2::new(0.0, 1.0, -0.25 * (1.0 - lambda) * (1.0 - mu), 0.0),
        c: Mat2::diag(lambda, mu),
    }
}

/// Coefficients of `f_zz, f_zz̄, f_z̄z̄, f̄_zz̄` in the single complex equation
/// equivalent to the canonical system:
/// `(1-κ)(κ+λ), (1+κ)(κ+λ), (1+κ)(κ-λ), (1-κ)(κ-λ)`.
pub fn complex_canonical_equation(kappa: f64, lambda: f64) -> Result<[f64; 4]> {
    check_kappa_lambda(kappa, lambda)?;
    Ok([
        (1.0 - kappa) * (kappa + lambda),
        (1.0 + kappa) * (kappa + lambda),
        (1.0 + kappa) * (kappa - lambda),
        (1.0 - kappa) * (kappa - lambda),
    ])
}

struct Pipeline {
    spec: SystemSpec,
    trace: Vec<AdmissibleTransform>,
}

impl Pipeline {
    fn push(&mut self, kind: TransformKind, m: Mat2) -> Result<()> {
        let t = AdmissibleTransform::new(kind, m)?;
        self.spec = t.apply(&self.spec)?;
        self.trace.push(t);
        Ok(())
    }

    /// `M ↦ X M X⁻¹` on all three matrices: combine equations by `X`, then
    /// substitute `f = X⁻¹φ`.
    fn conjugate(&mut self, x: Mat2) -> Result<()> {
        let xi = x.inverse().ok_or(Error::SingularTransform { det: x.det() })?;
        self.push(TransformKind::Equations, x)?;
        self.push(TransformKind::Unknowns, xi)
    }
}

/// `[v, Mv]` for the candidate `v ∈ {e₁, e₂, e₁+e₂}` maximizing `|det|`.
fn cyclic_basis(m: &Mat2) -> Mat2 {
    [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
        .into_iter()
        .map(|v| Mat2::from_columns(v, m.mul_vec(v)))
        .max_by(|x, y| x.det().abs().total_cmp(&y.det().abs()))
        .unwrap()
}

/// Runs the reduction. Non-elliptic input yields `elliptic = false` and an
/// empty trace; see [`CanonicalReport::require_elliptic`].
pub fn canonicalize(spec: &SystemSpec, tol: f64) -> Result<CanonicalReport> {
    let margin = ellipticity_margin(spec).min();
    let mut report = CanonicalReport {
        elliptic: false,
        reducible: false,
        strongly_elliptic: false,
        marginal: margin > tol && margin <= 10.0 * tol,
        tol,
        params: None,
        jordan_case: None,
        trace: Vec::new(),
        final_matrices: None,
        margins: CanonicalMargins { ellipticity: margin, reducibility: None, final_form: None, replay: None },
    };
    let (l1, l2) = match characteristic_roots(spec, tol) {
        Ok(r) => r,
        Err(Error::NotElliptic) => return Ok(report),
        Err(e) => return Err(e),
    };
    report.elliptic = true;

    // Step 1: characteristic roots to κi and i.
    let (t1, kappa) = build_moebius_to_imaginary(l1, l2)?;
    let mut p = Pipeline { spec: *spec, trace: Vec::new() };
    p.push(TransformKind::Variables, t1)?;

    // Step 2: A ↦ I.
    let a_inv = p.spec.a.inverse().ok_or(Error::SingularTransform { det: p.spec.a.det() })?;
    p.push(TransformKind::Equations, a_inv)?;

    // Step 3: C to its real Jordan form.
    let jd = jordan_2x2(&p.spec.c, tol);
    report.jordan_case = Some(jd.case);
    let s = jd.p;
    let s_inv = s.inverse().ok_or(Error::SingularTransform { det: s.det() })?;
    p.push(TransformKind::Equations, s_inv)?;
    p.push(TransformKind::Unknowns, s)?;

    let k2 = kappa * kappa;
    let lambda = jd.j.0[0][0];
    let mut reducible = match jd.case {
        JordanCase::ComplexPair => {
            return Err(Error::InternalInconsistency(format!(
                "Jordan form of C has complex eigenvalues {} ± {}i",
                jd.j.0[0][0], jd.j.0[1][0]
            )));
        }
        JordanCase::RepeatedRealBlock => true,
        JordanCase::DistinctReal | JordanCase::RepeatedRealDiagonal => {
            let mu = jd.j.0[1][1];
            if (lambda * mu - k2).abs() > 1e-6 * k2 {
                return Err(Error::InternalInconsistency(format!(
                    "eigenvalue product {} differs from kappa^2 = {k2}",
                    lambda * mu
                )));
            }
            let red = (lambda - k2).abs() / k2;
            report.margins.reducibility = Some(red);
            red <= REDUCIBILITY_TOL
        }
    };

    // Step 4: normalize B.
    if !reducible {
        let b3 = p.spec.b;
        let scale = b3.norm().max(p.spec.c.norm());
        if jd.case == JordanCase::DistinctReal {
            let b2 = b3.0[0][1];
            if b2.abs() <= 1e3 * tol * scale {
                reducible = true;
            } else {
                p.conjugate(Mat2::diag(1.0 / b2, 1.0))?;
            }
        } else {
            let target = canonical_matrices(kappa, lambda).b;
            let sb = cyclic_basis(&b3);
            let st = cyclic_basis(&target);
            if sb.det().abs() <= 1e3 * tol * scale * scale {
                reducible = true;
            } else {
                let sb_inv = sb.inverse().ok_or(Error::SingularTransform { det: sb.det() })?;
                p.conjugate(st * sb_inv)?;
            }
        }
    }

    report.reducible = reducible;
    report.strongly_elliptic = lambda > 0.0;
    let tau = (1.0 - kappa) / (1.0 + kappa);
    report.params = Some(if reducible {
        CanonicalParams { kappa, lambda: None, tau, sigma: None }
    } else {
        let (_, sigma) = to_tau_sigma(kappa, lambda)?;
        report.margins.final_form = Some(p.spec.max_abs_diff(&canonical_matrices(kappa, lambda)));
        CanonicalParams { kappa, lambda: Some(lambda), tau, sigma: Some(sigma) }
    });
    let replayed = crate::transforms::replay(spec, &p.trace)?;
    report.margins.replay = Some(replayed.max_abs_diff(&p.spec));
    report.final_matrices = Some(p.spec);
    report.trace = p.trace;
    Ok(report)
}

/// Direct test of strong ellipticity: `det(αA + 2βB + γC) ≠ 0` whenever
/// `β² < αγ`.
///
/// By homogeneity it suffices to take `α + γ = 2`, i.e. `α = 1+s`, `γ = 1-s`
/// with `s² + β² < 1`. On the unit circle `(α, β, γ)` is a rank-one point
/// `(ξ², ξη, η²)` where `D = 𝓕(ξ, η)`, which has constant sign for elliptic
/// systems. `D` is quadratic in `(s, β)`; it is scanned on a polar grid and
/// its critical point is added when it falls inside the disk.
pub fn strong_ellipticity_direct(spec: &SystemSpec, tol: f64) -> Result<bool> {
    Ok(strong_ellipticity_margin(spec, tol)? > 1e-10)
}

/// `min sgn·D / ‖spec‖²` over the closed disk, where `sgn` is the sign of `D`
/// on the boundary.
pub fn strong_ellipticity_margin(spec: &SystemSpec, tol: f64) -> Result<f64> {
    if !crate::system::is_elliptic(spec, tol) {
        return Err(Error::NotElliptic);
    }
    let m0 = spec.a + spec.c;
    let m1 = spec.a - spec.c;
    let m2 = spec.b * 2.0;
    let sgn = spec.a.det().signum();
    let d = |s: f64, b: f64| sgn * (m0 + m1 * s + m2 * b).det();

    const RADII: usize = 64;
    const ANGLES: usize = 256;
    let mut best = d(0.0, 0.0);
    for ri in 1..=RADII {
        let r = ri as f64 / RADII as f64;
        for k in 0..ANGLES {
            let (sn, cs) = (std::f64::consts::TAU * k as f64 / ANGLES as f64).sin_cos();
            best = best.min(d(r * cs, r * sn));
        }
    }

    // D(x) = d0 + gᵗx + ½xᵗHx; the gradient and Hessian follow from the
    // mixed determinant (multilinear in the matrix arguments).
    let mixed = |x: &Mat2, y: &Mat2| (*x + *y).det() - x.det() - y.det();
    let g = [sgn * mixed(&m0, &m1), sgn * mixed(&m0, &m2)];
    let h = Mat2::new(2.0 * sgn * m1.det(), sgn * mixed(&m1, &m2), sgn * mixed(&m1, &m2), 2.0 * sgn * m2.det());
    if let Some(hi) = h.inverse() {
        let x = hi.mul_vec(g);
        let (s, b) = (-x[0], -x[1]);
        if s * s + b * b <= 1.0 {
            best = best.min(d(s, b));
        }
    }
    let n = spec.norm();
    Ok(best / (n * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{from_canonical_params, from_complex_equation, ComplexEquation};
    use crate::transforms::moebius_of_matrix;
    use crate::DEFAULT_TOL;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn bitsadze() -> SystemSpec {
        from_complex_equation(&ComplexEquation::new(c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)).unwrap())
    }

    fn images(t: &Mat2, l1: ComplexScalar, l2: ComplexScalar) -> (ComplexScalar, ComplexScalar) {
        (moebius_of_matrix(t, l1).unwrap(), moebius_of_matrix(t, l2).unwrap())
    }

    #[test]
    fn moebius_identity_case() {
        let (t, k) = build_moebius_to_imaginary(c(0.0, 1.0), c(0.0, 1.0)).unwrap();
        assert_eq!(t, Mat2::IDENTITY);
        assert_eq!(k, 1.0);
    }

    #[test]
    fn moebius_vertical_line() {
        let (t, k) = build_moebius_to_imaginary(c(0.0, 1.0), c(0.0, 2.0)).unwrap();
        assert!((k - 0.5).abs() < 1e-15);
        // ζ ↦ ζ/2 up to a scalar multiple of the matrix.
        assert!((t.0[0][0] - 2.0).abs() < 1e-15 && t.0[0][1].abs() < 1e-15);
        assert!(t.0[1][0].abs() < 1e-15 && (t.0[1][1] - 1.0).abs() < 1e-15);
        let (a, b) = images(&t, c(0.0, 1.0), c(0.0, 2.0));
        assert!((a - c(0.0, 0.5)).norm() < 1e-15 && (b - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn moebius_generic_circle() {
        let (l1, l2) = (c(-1.0, 1.0), c(1.0, 1.0));
        let (t, k) = build_moebius_to_imaginary(l1, l2).unwrap();
        assert!(k > 0.0 && k <= 1.0);
        // Oracle: with ζ* = -√2, ζ** = √2 the map (ζ-ζ*)/(ζ-ζ**) sends the two
        // roots to points of equal argument; the ratio of moduli is 1/κ or κ.
        let r2 = 2f64.sqrt();
        let f = |z: ComplexScalar| (z + r2) / (z - r2);
        let (f1, f2) = (f(l1), f(l2));
        let ratio = f1.norm() / f2.norm();
        let want = ratio.min(1.0 / ratio);
        assert!((k - want).abs() < 1e-14, "{k} vs {want}");
        let (a, b) = images(&t, l1, l2);
        assert!((a - c(0.0, k)).norm() < 1e-14, "{a}");
        assert!((b - c(0.0, 1.0)).norm() < 1e-14, "{b}");
    }

    #[test]
    fn moebius_random_pairs_land_on_axis() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let l1 = c(rng.gen_range(-5.0..5.0), rng.gen_range(0.01..5.0));
            let l2 = c(rng.gen_range(-5.0..5.0), rng.gen_range(0.01..5.0));
            let (t, k) = build_moebius_to_imaginary(l1, l2).unwrap();
            assert!(t.det() > 0.0 && k > 0.0 && k <= 1.0);
            let (a, b) = images(&t, l1, l2);
            assert!((a - c(0.0, k)).norm() < 1e-9 * (1.0 + l1.norm() / l1.im));
            assert!((b - c(0.0, 1.0)).norm() < 1e-9 * (1.0 + l2.norm() / l2.im));
        }
    }

    #[test]
    fn tau_sigma_examples() {
        assert_eq!(to_tau_sigma(1.0, 1.0).unwrap(), (0.0, 0.0));
        let (t, s) = to_tau_sigma(0.5, 0.5).unwrap();
        assert_eq!((t, s), (1.0 / 3.0, 0.0));
        let (t, s) = to_tau_sigma(1.0, 1.0 / 3.0).unwrap();
        assert_eq!(t, 0.0);
        assert!((s - 0.5).abs() < 1e-15);
        assert_eq!(to_tau_sigma(1.0, -1.0).unwrap(), (0.0, f64::INFINITY));
        assert!(to_tau_sigma(0.5, 0.0).is_err());
        assert!(to_tau_sigma(0.5, 0.6).is_err());
        assert!(to_tau_sigma(1.5, 0.6).is_err());
    }

    #[test]
    fn kappa_lambda_inverts() {
        assert_eq!(kappa_lambda(0.0, 0.0), (1.0, 1.0));
        assert_eq!(kappa_lambda(0.0, f64::INFINITY), (1.0, -1.0));
        let (k, l) = kappa_lambda(0.3, 0.6);
        let (t, s) = to_tau_sigma(k, l).unwrap();
        assert!((t - 0.3).abs() < 1e-15 && (s - 0.6).abs() < 1e-15);
    }

    #[test]
    fn complex_equation_coefficients() {
        assert_eq!(complex_canonical_equation(1.0, 1.0).unwrap(), [0.0, 4.0, 0.0, 0.0]);
        assert!(complex_canonical_equation(1.0, 0.0).is_err());
        assert!(complex_canonical_equation(0.5, 0.75).is_err());
        let q = complex_canonical_equation(1.0, 1.0 / 3.0).unwrap();
        let want = [0.0, 8.0 / 3.0, 4.0 / 3.0, 0.0];
        for k in 0..4 {
            assert!((q[k] - want[k]).abs() < 1e-15);
        }
        assert_eq!(complex_canonical_equation(0.5, 0.25).unwrap(), [0.375, 1.125, 0.375, 0.125]);
    }

    #[test]
    fn laplace_is_reducible() {
        let r = canonicalize(&SystemSpec::laplace(), DEFAULT_TOL).unwrap();
        assert!(r.elliptic && r.reducible && r.strongly_elliptic);
        let p = r.params.unwrap();
        assert_eq!((p.kappa, p.lambda, p.sigma), (1.0, None, None));
    }

    #[test]
    fn canonical_point_recovered() {
        let r = canonicalize(&from_canonical_params(0.0, 0.5).unwrap(), DEFAULT_TOL).unwrap();
        assert!(r.elliptic && !r.reducible && r.strongly_elliptic);
        let p = r.params.unwrap();
        assert!((p.kappa - 1.0).abs() < 1e-9);
        assert!((p.lambda.unwrap() - 1.0 / 3.0).abs() < 1e-9);
        assert!(p.tau.abs() < 1e-9 && (p.sigma.unwrap() - 0.5).abs() < 1e-9);
        assert!(r.margins.final_form.unwrap() < 1e-8);
        assert!(r.margins.replay.unwrap() < 1e-8);
    }

    #[test]
    fn bitsadze_canonical() {
        let r = canonicalize(&bitsadze(), DEFAULT_TOL).unwrap();
        assert!(r.elliptic && !r.reducible && !r.strongly_elliptic);
        let p = r.params.unwrap();
        assert!((p.kappa - 1.0).abs() < 1e-9);
        assert!((p.lambda.unwrap() + 1.0).abs() < 1e-9);
        assert_eq!(p.sigma, Some(f64::INFINITY));
        assert!(r.margins.final_form.unwrap() < 1e-8);
    }

    #[test]
    fn wave_type_is_not_elliptic() {
        let wave = SystemSpec { a: Mat2::IDENTITY, b: Mat2::ZERO, c: -Mat2::IDENTITY };
        let r = canonicalize(&wave, DEFAULT_TOL).unwrap();
        assert!(!r.elliptic && r.trace.is_empty());
        assert_eq!(r.require_elliptic(), Err(Error::NotElliptic));
    }

    #[test]
    fn scalar_c_branch() {
        // σ = 0 gives λ = κ and a scalar C after step 3.
        let r = canonicalize(&from_canonical_params(0.4, 0.0).unwrap(), DEFAULT_TOL).unwrap();
        assert!(!r.reducible);
        let p = r.params.unwrap();
        assert!((p.tau - 0.4).abs() < 1e-9 && p.sigma.unwrap().abs() < 1e-9);
        assert!(r.margins.final_form.unwrap() < 1e-8);
    }

    #[test]
    fn reducible_when_lambda_is_kappa_squared() {
        // σ = τ is exactly λ = κ².
        let r = canonicalize(&from_canonical_params(0.3, 0.3).unwrap(), DEFAULT_TOL).unwrap();
        assert!(r.reducible);
    }

    #[test]
    fn strong_ellipticity_examples() {
        assert!(strong_ellipticity_direct(&SystemSpec::laplace(), DEFAULT_TOL).unwrap());
        assert!(!strong_ellipticity_direct(&bitsadze(), DEFAULT_TOL).unwrap());
        assert!(strong_ellipticity_direct(&from_canonical_params(0.3, 0.6).unwrap(), DEFAULT_TOL).unwrap());
        assert!(!strong_ellipticity_direct(&from_canonical_params(0.3, 1.6).unwrap(), DEFAULT_TOL).unwrap());
        let wave = SystemSpec { a: Mat2::IDENTITY, b: Mat2::ZERO, c: -Mat2::IDENTITY };
        assert_eq!(strong_ellipticity_direct(&wave, DEFAULT_TOL), Err(Error::NotElliptic));
    }
}
