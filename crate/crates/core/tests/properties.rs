use elliptic_canon::canonical::{canonicalize, kappa_lambda, to_tau_sigma};
use elliptic_canon::energy::{construct_energy_matrix, euler_lagrange_system, necessity_witness, symmetric_canonical_matrices};
use elliptic_canon::expr::parse_boundary_expr;
use elliptic_canon::system::{characteristic_quartic, from_canonical_params};
use elliptic_canon::{AdmissibleTransform, Mat2, TransformKind, DEFAULT_TOL};
use proptest::prelude::*;

/// Matrices with entries in [-3, 3] and `|det| >= 0.1·‖M‖²`.
fn well_conditioned() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-3.0..3.0_f64)
        .prop_map(|[a, b, c, d]| Mat2::new(a, b, c, d))
        .prop_filter("ill-conditioned", |m| m.det().abs() >= 0.1 * m.norm() * m.norm())
}

fn kind() -> impl Strategy<Value = TransformKind> {
    prop_oneof![Just(TransformKind::Variables), Just(TransformKind::Unknowns), Just(TransformKind::Equations)]
}

/// `0 <= tau < sigma < 1` with a gap so the system is clearly not reducible.
fn sigma_above_tau() -> impl Strategy<Value = (f64, f64)> {
    (0.0..0.9_f64, 0.01..1.0_f64)
        .prop_map(|(t, g)| (t, t + g * (1.0 - t)))
        .prop_filter("gap", |(t, s)| s - t > 1e-3 && *s < 1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_parameters_round_trip((tau, sigma) in sigma_above_tau()) {
        let report = canonicalize(&from_canonical_params(tau, sigma).unwrap(), DEFAULT_TOL).unwrap();
        let p = report.params.unwrap();
        prop_assert!(!report.reducible);
        prop_assert!((p.tau - tau).abs() <= 1e-7, "tau {} vs {}", p.tau, tau);
        prop_assert!((p.sigma.unwrap() - sigma).abs() <= 1e-7, "sigma {:?} vs {}", p.sigma, sigma);
    }

    #[test]
    fn invariants_survive_admissible_transforms((tau, sigma) in sigma_above_tau(), k in kind(), m in well_conditioned()) {
        let spec = from_canonical_params(tau, sigma).unwrap();
        // Orientation-preserving changes of variables only.
        let m = if k == TransformKind::Variables && m.det() < 0.0 { Mat2::diag(-1.0, 1.0) * m } else { m };
        let moved = AdmissibleTransform { kind: k, matrix: m }.apply(&spec).unwrap();
        let a = canonicalize(&spec, DEFAULT_TOL).unwrap().params.unwrap();
        let b = canonicalize(&moved, DEFAULT_TOL).unwrap().params.unwrap();
        prop_assert!((a.kappa - b.kappa).abs() <= 1e-6);
        prop_assert!((a.lambda.unwrap() - b.lambda.unwrap()).abs() <= 1e-6);
    }

    /// Left and right multiplication scale the characteristic form by the determinant.
    #[test]
    fn characteristic_form_scales_by_determinant((tau, sigma) in sigma_above_tau(), m in well_conditioned(), left in any::<bool>()) {
        let spec = from_canonical_params(tau, sigma).unwrap();
        let kind = if left { TransformKind::Equations } else { TransformKind::Unknowns };
        let moved = AdmissibleTransform { kind, matrix: m }.apply(&spec).unwrap();
        let q0 = characteristic_quartic(&spec).coeffs;
        let q1 = characteristic_quartic(&moved).coeffs;
        for k in 0..5 {
            prop_assert!((q1[k] - m.det() * q0[k]).abs() <= 1e-11 * (1.0 + (m.det() * q0[k]).abs()));
        }
    }

    #[test]
    fn energy_exists_exactly_above_the_diagonal(tau in 0.0..0.99_f64, sigma in 0.0..0.99_f64) {
        prop_assume!((sigma - tau).abs() > 1e-6);
        if sigma > tau {
            let e = construct_energy_matrix(tau, sigma).unwrap();
            prop_assert!(e.min_eigenvalue() >= -1e-10);
            prop_assert_eq!(euler_lagrange_system(&e), symmetric_canonical_matrices(tau, sigma).unwrap());
        } else {
            prop_assert!(necessity_witness(tau, sigma).unwrap() < 0.0);
        }
    }

    #[test]
    fn kappa_lambda_and_tau_sigma_are_inverse((tau, sigma) in sigma_above_tau()) {
        let (kappa, lambda) = kappa_lambda(tau, sigma);
        let (t, s) = to_tau_sigma(kappa, lambda).unwrap();
        prop_assert!((t - tau).abs() <= 1e-12 && (s - sigma).abs() <= 1e-9 * (1.0 + sigma));
    }

    /// Printing a polynomial in x, y and parsing it back evaluates identically.
    #[test]
    fn polynomial_expressions_evaluate(c in prop::array::uniform3(-5i32..5), x in 0.0..1.0_f64, y in 0.0..1.0_f64) {
        let src = format!("{} * x^2 - {} * x * y + ({}) * y^3 - 1", c[0], c[1], c[2]);
        let expr = parse_boundary_expr(&src).unwrap();
        let want = c[0] as f64 * x * x - c[1] as f64 * x * y + c[2] as f64 * y * y * y - 1.0;
        prop_assert!((expr.eval(x, y).unwrap() - want).abs() <= 1e-12);
    }
}
