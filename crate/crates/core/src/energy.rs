//! Quadratic energy functionals `½∫(E∇f, ∇f)` with `∇f = (u_x, v_x, u_y, v_y)ᵗ`
//! and `E = [[K, L], [Lᵗ, M]]`, their Euler–Lagrange systems and the
//! existence decision for a non-negatively determined `E`.

use serde::Serialize;

use crate::canonical::{canonicalize, serialize_extended_opt};
use crate::error::{Error, Result};
use crate::linalg::{eig_sym, Mat2, Mat4Sym};
use crate::system::SystemSpec;

/// Relative eigenvalue slack used when calling an energy matrix non-negative.
pub const NONNEG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyMatrix {
    #[serde(rename = "E")]
    pub e: Mat4Sym,
}

impl EnergyMatrix {
    pub fn new(e: Mat4Sym) -> Self {
        Self { e }
    }

    pub fn from_blocks(k: Mat2, l: Mat2, m: Mat2) -> Self {
        Self { e: Mat4Sym::from_blocks(k, l, m) }
    }

    pub fn blocks(&self) -> (Mat2, Mat2, Mat2) {
        self.e.blocks()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        eig_sym(&self.e)[0]
    }

    /// `λ_min >= -NONNEG_TOL·‖E‖`.
    pub fn is_nonneg(&self) -> bool {
        self.min_eigenvalue() >= -NONNEG_TOL * self.e.norm()
    }
}

/// `A = K`, `B = (L + Lᵗ)/2`, `C = M`.
pub fn euler_lagrange_system(e: &EnergyMatrix) -> SystemSpec {
    let (k, l, m) = e.blocks();
    SystemSpec { a: k, b: (l + l.transpose()) * 0.5, c: m }
}

fn check_multiplier(tau: f64, sigma: f64) -> Result<()> {
    if !tau.is_finite() || !sigma.is_finite() {
        return Err(Error::InvalidParams(format!("non-finite (tau={tau}, sigma={sigma})")));
    }
    if sigma + tau == 0.0 || sigma - tau == 0.0 {
        return Err(Error::DegenerateMultiplier);
    }
    Ok(())
}

/// The canonical system left-multiplied by `diag(σ+τ, σ-τ)`:
///
/// ```text
/// A = (1+τ) diag((1+σ)(σ+τ), (1-σ)(σ-τ))
/// B = (τ²-σ²) [[0, 1], [1, 0]]
/// C = (1-τ) diag((1-σ)(σ+τ), (1+σ)(σ-τ))
/// ```
pub fn symmetric_canonical_matrices(tau: f64, sigma: f64) -> Result<SystemSpec> {
    check_multiplier(tau, sigma)?;
    let (sp, sm) = (sigma + tau, sigma - tau);
    let off = tau * tau - sigma * sigma;
    // Evaluated as the symmetric part of the energy's off-diagonal block so
    // that the Euler–Lagrange system of that energy reproduces it bit for bit.
    let off = ((1.0 + sigma) * off + (1.0 - sigma) * off) * 0.5;
    Ok(SystemSpec {
        a: Mat2::diag((1.0 + tau) * ((1.0 + sigma) * sp), (1.0 + tau) * ((1.0 - sigma) * sm)),
        b: Mat2::new(0.0, off, off, 0.0),
        c: Mat2::diag((1.0 - tau) * ((1.0 - sigma) * sp), (1.0 - tau) * ((1.0 + sigma) * sm)),
    })
}

/// `K = A`, `M = C` of the symmetric canonical system and
/// `L = [[0, (1+σ)(τ²-σ²)], [(1-σ)(τ²-σ²), 0]]`, so that `L + Lᵗ = 2B`.
pub fn construct_energy_matrix(tau: f64, sigma: f64) -> Result<EnergyMatrix> {
    if !(tau.is_finite() && sigma.is_finite() && tau >= 0.0 && tau < sigma && sigma < 1.0) {
        return Err(Error::OutOfTheoremRange { tau, sigma });
    }
    let s = symmetric_canonical_matrices(tau, sigma)?;
    let off = tau * tau - sigma * sigma;
    let l = Mat2::new(0.0, (1.0 + sigma) * off, (1.0 - sigma) * off, 0.0);
    Ok(EnergyMatrix::from_blocks(s.a, l, s.c))
}

/// Smallest diagonal entry (= eigenvalue) of the symmetric canonical `A`;
/// negative exactly when `σ < τ`, in which case no non-negative `E` exists.
pub fn necessity_witness(tau: f64, sigma: f64) -> Result<f64> {
    let s = symmetric_canonical_matrices(tau, sigma)?;
    Ok(s.a.0[0][0].min(s.a.0[1][1]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EnergyReason {
    NotElliptic,
    Reducible,
    NotStronglyElliptic,
    SigmaLeqTau,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyDecision {
    pub exists: bool,
    pub reason: EnergyReason,
    pub tau: Option<f64>,
    #[serde(serialize_with = "serialize_extended_opt")]
    pub sigma: Option<f64>,
    #[serde(rename = "E")]
    pub e: Option<Mat4Sym>,
    pub symmetric_system: Option<SystemSpec>,
    pub min_eigenvalue: Option<f64>,
}

impl EnergyDecision {
    pub fn energy(&self) -> Option<EnergyMatrix> {
        self.e.map(EnergyMatrix::new)
    }
}

/// Decides whether the system is the Euler–Lagrange system of some
/// non-negatively determined energy, up to admissible transforms.
///
/// The criterion is: elliptic, not reducible, strongly elliptic (`λ > 0`)
/// and `σ > τ`. When it holds, the energy of the canonical representative is
/// returned.
pub fn energy_decision(spec: &SystemSpec, tol: f64) -> Result<EnergyDecision> {
    let report = canonicalize(spec, tol)?;
    let mut d = EnergyDecision {
        exists: false,
        reason: EnergyReason::NotElliptic,
        tau: None,
        sigma: None,
        e: None,
        symmetric_system: None,
        min_eigenvalue: None,
    };
    if !report.elliptic {
        return Err(Error::NotElliptic);
    }
    let params = report.params.ok_or_else(|| Error::InternalInconsistency("missing parameters".into()))?;
    d.tau = Some(params.tau);
    d.sigma = params.sigma;
    let sigma = match params.sigma {
        Some(s) if !report.reducible => s,
        _ => {
            d.reason = EnergyReason::Reducible;
            return Ok(d);
        }
    };
    if !report.strongly_elliptic {
        d.reason = EnergyReason::NotStronglyElliptic;
        return Ok(d);
    }
    if sigma <= params.tau {
        d.reason = EnergyReason::SigmaLeqTau;
        return Ok(d);
    }
    let e = construct_energy_matrix(params.tau, sigma)?;
    d.exists = true;
    d.reason = EnergyReason::Exists;
    d.min_eigenvalue = Some(e.min_eigenvalue());
    d.symmetric_system = Some(euler_lagrange_system(&e));
    d.e = Some(e.e);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{from_canonical_params, from_complex_equation, ComplexEquation};
    use crate::transforms::{
        change_unknowns, change_variables, combine_equations, random_nonsingular, transform_energy_unknowns,
        transform_energy_variables,
    };
    use crate::{ComplexScalar, DEFAULT_TOL};
    use rand::SeedableRng;

    fn close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol
    }

    #[test]
    fn el_examples() {
        assert_eq!(euler_lagrange_system(&EnergyMatrix::new(Mat4Sym::identity())), SystemSpec::laplace());
        let e = EnergyMatrix::from_blocks(
            Mat2::diag(0.75, 0.25),
            Mat2::new(0.0, -0.375, -0.125, 0.0),
            Mat2::diag(0.25, 0.75),
        );
        let s = euler_lagrange_system(&e);
        assert_eq!(s.b, Mat2::new(0.0, -0.25, -0.25, 0.0));
        let d = EnergyMatrix::from_blocks(Mat2::new(2.0, 1.0, 1.0, 3.0), Mat2::ZERO, Mat2::diag(1.0, 5.0));
        assert_eq!(euler_lagrange_system(&d).b, Mat2::ZERO);
    }

    #[test]
    fn symmetric_matrices_examples() {
        let s = symmetric_canonical_matrices(0.0, 0.5).unwrap();
        assert_eq!(s.a, Mat2::diag(0.75, 0.25));
        assert_eq!(s.b, Mat2::new(0.0, -0.25, -0.25, 0.0));
        assert_eq!(s.c, Mat2::diag(0.25, 0.75));
        let s = symmetric_canonical_matrices(0.2, 0.6).unwrap();
        assert!(close(&s.a, &Mat2::diag(1.536, 0.192), 1e-15));
        assert_eq!(symmetric_canonical_matrices(0.3, 0.3), Err(Error::DegenerateMultiplier));
        assert_eq!(symmetric_canonical_matrices(0.3, -0.3), Err(Error::DegenerateMultiplier));
    }

    #[test]
    fn symmetric_matrices_are_left_multiples() {
        for &(t, s) in &[(0.0, 0.5), (0.2, 0.6), (0.7, 0.1), (0.4, -0.3)] {
            let x1 = from_canonical_params(t, s).unwrap();
            let p = Mat2::diag(s + t, s - t);
            let want = combine_equations(&x1, &p).unwrap();
            let got = symmetric_canonical_matrices(t, s).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-15, "({t}, {s})");
        }
    }

    #[test]
    fn energy_at_half() {
        let e = construct_energy_matrix(0.0, 0.5).unwrap();
        let (k, l, m) = e.blocks();
        assert_eq!(k, Mat2::diag(0.75, 0.25));
        assert_eq!(l, Mat2::new(0.0, -0.375, -0.125, 0.0));
        assert_eq!(m, Mat2::diag(0.25, 0.75));
        let ev = eig_sym(&e.e);
        for (a, b) in ev.iter().zip([0.125, 0.375, 0.375, 1.125]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn energy_range_checks() {
        assert!(construct_energy_matrix(0.2, 0.6).unwrap().min_eigenvalue() > 0.0);
        let e = construct_energy_matrix(0.5, 0.500001).unwrap();
        assert!(e.is_nonneg() && e.min_eigenvalue() < 1e-5);
        assert!(matches!(construct_energy_matrix(0.5, 0.5), Err(Error::OutOfTheoremRange { .. })));
        assert!(matches!(construct_energy_matrix(0.5, 0.2), Err(Error::OutOfTheoremRange { .. })));
        assert!(matches!(construct_energy_matrix(0.0, 1.0), Err(Error::OutOfTheoremRange { .. })));
    }

    #[test]
    fn sufficiency_grid() {
        for i in 0..20 {
            for j in (i + 1)..20 {
                let (t, s) = (0.05 * i as f64, 0.05 * j as f64);
                let e = construct_energy_matrix(t, s).unwrap();
                assert_eq!(euler_lagrange_system(&e), symmetric_canonical_matrices(t, s).unwrap());
                assert!(e.min_eigenvalue() >= -1e-10, "({t}, {s})");
            }
        }
    }

    #[test]
    fn necessity_grid() {
        assert_eq!(necessity_witness(0.0, 0.5).unwrap(), 0.25);
        assert!((necessity_witness(0.5, 0.2).unwrap() + 0.36).abs() < 1e-15);
        assert_eq!(necessity_witness(0.3, 0.3), Err(Error::DegenerateMultiplier));
        for i in 0..20 {
            for j in 0..i {
                let (t, s) = (0.05 * i as f64, 0.05 * j as f64);
                assert!(necessity_witness(t, s).unwrap() < 0.0, "({t}, {s})");
            }
        }
    }

    #[test]
    fn transform_closure() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let e = construct_energy_matrix(0.2, 0.6).unwrap();
        let s = euler_lagrange_system(&e);
        for _ in 0..200 {
            let t = random_nonsingular(&mut rng, 2.0, 0.05, false);
            let e0 = EnergyMatrix::new(transform_energy_variables(&e.e, &t).unwrap());
            assert!(e0.is_nonneg());
            let want = change_variables(&s, &t).unwrap();
            assert!(euler_lagrange_system(&e0).max_abs_diff(&want) < 1e-9);

            let e1 = EnergyMatrix::new(transform_energy_unknowns(&e.e, &t).unwrap());
            assert!(e1.is_nonneg());
            let want = combine_equations(&change_unknowns(&s, &t).unwrap(), &t.transpose()).unwrap();
            assert!(euler_lagrange_system(&e1).max_abs_diff(&want) < 1e-9);
        }
    }

    #[test]
    fn decisions() {
        let d = energy_decision(&from_canonical_params(0.2, 0.5).unwrap(), DEFAULT_TOL).unwrap();
        assert!(d.exists && d.reason == EnergyReason::Exists);
        assert!(d.min_eigenvalue.unwrap() >= 0.0);

        let d = energy_decision(&from_canonical_params(0.5, 0.2).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!((d.exists, d.reason), (false, EnergyReason::SigmaLeqTau));

        let c = ComplexScalar::new;
        let bits = from_complex_equation(&ComplexEquation::new(c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)).unwrap());
        let d = energy_decision(&bits, DEFAULT_TOL).unwrap();
        assert_eq!((d.exists, d.reason), (false, EnergyReason::NotStronglyElliptic));

        let d = energy_decision(&SystemSpec::laplace(), DEFAULT_TOL).unwrap();
        assert_eq!(d.reason, EnergyReason::Reducible);

        let wave = SystemSpec { a: Mat2::IDENTITY, b: Mat2::ZERO, c: -Mat2::IDENTITY };
        assert_eq!(energy_decision(&wave, DEFAULT_TOL), Err(Error::NotElliptic));
    }
}
