//! Seeded invariant suites at reduced sizes, run by the `selftest` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{canonicalize, strong_ellipticity_margin};
use crate::dirichlet::{el_consistency_check, BoundaryData, Grid};
use crate::energy::{construct_energy_matrix, euler_lagrange_system, necessity_witness, symmetric_canonical_matrices};
use crate::linalg::{ComplexScalar, Mat2};
use crate::system::{characteristic_quartic, ellipticity_margin, from_canonical_params, is_elliptic, SystemSpec};
use crate::transforms::{
    change_variables, moebius_of_matrix, random_nonsingular, AdmissibleTransform, TransformKind,
};
use crate::DEFAULT_TOL;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfTestReport {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteOutcome>,
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    max_error: f64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: 0, max_error: 0.0 }
    }

    /// Records a case with error `err` against bound `tol`.
    fn check(&mut self, err: f64, tol: f64) {
        self.cases += 1;
        if !(err <= tol) {
            self.failures += 1;
        }
        if err.is_nan() || err > self.max_error {
            self.max_error = err;
        }
    }

    fn flag(&mut self, ok: bool) {
        self.check(if ok { 0.0 } else { 1.0 }, 0.0);
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            max_error: self.max_error,
            passed: self.failures == 0 && self.cases > 0,
        }
    }
}

fn random_mat<R: Rng>(rng: &mut R, w: f64) -> Mat2 {
    Mat2::new(rng.gen_range(-w..=w), rng.gen_range(-w..=w), rng.gen_range(-w..=w), rng.gen_range(-w..=w))
}

/// Random system with entries in `[-2, 2]` whose ellipticity margin exceeds `min_margin`.
pub fn random_elliptic_spec<R: Rng>(rng: &mut R, min_margin: f64) -> SystemSpec {
    loop {
        let s = SystemSpec { a: random_mat(rng, 2.0), b: random_mat(rng, 2.0), c: random_mat(rng, 2.0) };
        if is_elliptic(&s, DEFAULT_TOL) && ellipticity_margin(&s).min() > min_margin {
            return s;
        }
    }
}

fn upper_roots(s: &SystemSpec) -> Option<Vec<ComplexScalar>> {
    let r = characteristic_quartic(s).roots().ok()?;
    Some(r.iter().filter(|z| z.im > 0.0).copied().collect())
}

/// Set-wise distance between two pairs of points (best matching).
fn pair_distance(a: &[ComplexScalar], b: &[ComplexScalar]) -> f64 {
    if a.len() != 2 || b.len() != 2 {
        return f64::INFINITY;
    }
    let rel = |x: ComplexScalar, y: ComplexScalar| (x - y).norm() / (1.0 + y.norm());
    let straight = rel(a[0], b[0]).max(rel(a[1], b[1]));
    let crossed = rel(a[0], b[1]).max(rel(a[1], b[0]));
    straight.min(crossed)
}

fn root_covariance(rng: &mut ChaCha8Rng, cases: usize) -> SuiteOutcome {
    let mut t = Tally::new("root_covariance");
    for _ in 0..cases {
        let s = random_elliptic_spec(rng, 1e-3);
        let m = random_nonsingular(rng, 3.0, 0.05, false);
        let s2 = change_variables(&s, &m).expect("nonsingular");
        let (Some(r0), Some(r1)) = (upper_roots(&s), upper_roots(&s2)) else {
            t.flag(false);
            continue;
        };
        let mapped: Option<Vec<_>> = r0.iter().map(|&z| moebius_of_matrix(&m, z).ok()).collect();
        match mapped {
            Some(mapped) => t.check(pair_distance(&mapped, &r1), 1e-7),
            None => t.flag(false),
        }
    }
    t.finish()
}

fn det_scaling(rng: &mut ChaCha8Rng, cases: usize) -> SuiteOutcome {
    let mut t = Tally::new("characteristic_form_scaling");
    for _ in 0..cases {
        let s = SystemSpec { a: random_mat(rng, 2.0), b: random_mat(rng, 2.0), c: random_mat(rng, 2.0) };
        let p = random_nonsingular(rng, 3.0, 0.05, false);
        let q0 = characteristic_quartic(&s).coeffs;
        for kind in [TransformKind::Equations, TransformKind::Unknowns] {
            let s2 = AdmissibleTransform { kind, matrix: p }.apply(&s).expect("nonsingular");
            let q1 = characteristic_quartic(&s2).coeffs;
            let scale = q0.iter().fold(1.0_f64, |m, c| m.max(c.abs())) * p.det().abs();
            let err = (0..5).map(|k| (q1[k] - p.det() * q0[k]).abs()).fold(0.0, f64::max) / scale;
            t.check(err, 1e-12);
        }
    }
    t.finish()
}

fn round_trip() -> SuiteOutcome {
    let mut t = Tally::new("canonical_round_trip");
    for i in 0..=4 {
        for j in 0..=4 {
            let tau = 0.2 * i as f64;
            let sigma = 0.1 + 0.2 * j as f64;
            if (sigma - tau).abs() < 1e-9 {
                continue;
            }
            let r = from_canonical_params(tau, sigma).and_then(|s| canonicalize(&s, DEFAULT_TOL));
            match r.ok().and_then(|r| r.params) {
                Some(p) => {
                    let sig = p.sigma.unwrap_or(f64::NAN);
                    t.check((p.tau - tau).abs().max((sig - sigma).abs()), 1e-7);
                }
                None => t.flag(false),
            }
        }
    }
    t.finish()
}

fn transform_invariance(rng: &mut ChaCha8Rng, cases: usize) -> SuiteOutcome {
    let mut t = Tally::new("transform_invariance");
    for &(tau, sigma) in &[(0.3, 0.6), (0.2, 1.5), (0.1, -0.4)] {
        let s = from_canonical_params(tau, sigma).expect("valid parameters");
        let base = canonicalize(&s, DEFAULT_TOL).ok().and_then(|r| r.params);
        for k in 0..cases {
            let kind = [TransformKind::Variables, TransformKind::Unknowns, TransformKind::Equations][k % 3];
            let m = random_nonsingular(rng, 3.0, 0.05, kind == TransformKind::Variables);
            let s2 = AdmissibleTransform { kind, matrix: m }.apply(&s).expect("nonsingular");
            let p = canonicalize(&s2, DEFAULT_TOL).ok().and_then(|r| r.params);
            match (base, p) {
                (Some(b), Some(p)) => {
                    let dl = (b.lambda.unwrap_or(f64::NAN) - p.lambda.unwrap_or(f64::NAN)).abs();
                    t.check((b.kappa - p.kappa).abs().max(dl), 1e-6);
                }
                _ => t.flag(false),
            }
        }
    }
    t.finish()
}

fn strong_ellipticity(rng: &mut ChaCha8Rng, cases: usize) -> SuiteOutcome {
    let mut t = Tally::new("strong_ellipticity_consistency");
    let mut done = 0;
    while done < cases {
        let s = random_elliptic_spec(rng, 1e-3);
        let Ok(r) = canonicalize(&s, DEFAULT_TOL) else {
            t.flag(false);
            done += 1;
            continue;
        };
        let Ok(margin) = strong_ellipticity_margin(&s, DEFAULT_TOL) else {
            t.flag(false);
            done += 1;
            continue;
        };
        if margin.abs() < 10.0 * DEFAULT_TOL {
            continue;
        }
        t.flag(r.strongly_elliptic == (margin > 1e-10));
        done += 1;
    }
    t.finish()
}

fn energy_grid() -> SuiteOutcome {
    let mut t = Tally::new("energy_sufficiency_necessity");
    for i in 0..10 {
        for j in 0..10 {
            let (tau, sigma) = (0.1 * i as f64, 0.1 * j as f64);
            if j > i {
                let ok = construct_energy_matrix(tau, sigma).is_ok_and(|e| {
                    e.min_eigenvalue() >= -1e-10
                        && symmetric_canonical_matrices(tau, sigma).is_ok_and(|s| s == euler_lagrange_system(&e))
                });
                t.flag(ok);
            } else if j < i {
                t.flag(necessity_witness(tau, sigma).is_ok_and(|w| w < 0.0));
            }
        }
    }
    t.finish()
}

fn ellipticity_invariance(rng: &mut ChaCha8Rng, cases: usize) -> SuiteOutcome {
    let mut t = Tally::new("ellipticity_invariance");
    for k in 0..cases {
        let s = SystemSpec { a: random_mat(rng, 2.0), b: random_mat(rng, 2.0), c: random_mat(rng, 2.0) };
        let margin = ellipticity_margin(&s).min();
        if margin < 1e-3 && margin > 0.0 {
            continue;
        }
        let kind = [TransformKind::Variables, TransformKind::Unknowns, TransformKind::Equations][k % 3];
        let m = random_nonsingular(rng, 5.0, 0.05, false);
        let s2 = AdmissibleTransform { kind, matrix: m }.apply(&s).expect("nonsingular");
        // Only well-separated cases: transforms may shrink the margin.
        let m2 = ellipticity_margin(&s2).min();
        if m2 < 1e-6 && m2 > 0.0 {
            continue;
        }
        t.flag(is_elliptic(&s, DEFAULT_TOL) == is_elliptic(&s2, DEFAULT_TOL));
    }
    t.finish()
}

fn dirichlet_consistency() -> SuiteOutcome {
    let mut t = Tally::new("variational_direct_consistency");
    let grid = Grid::new(9).expect("n >= 3");
    let bc = BoundaryData::new(|x, y| [x * x - y * y, 2.0 * x * y]).expect("smooth data");
    for &(tau, sigma) in &[(0.0, 0.5), (0.2, 0.6)] {
        match construct_energy_matrix(tau, sigma).and_then(|e| el_consistency_check(&e, grid, &bc, DEFAULT_TOL)) {
            Ok((r, _, _)) => t.check(r.max_difference, 1e-8),
            Err(_) => t.flag(false),
        }
    }
    t.finish()
}

pub fn run_selftest(seed: u64) -> SelfTestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![
        root_covariance(&mut rng, 100),
        det_scaling(&mut rng, 100),
        round_trip(),
        transform_invariance(&mut rng, 30),
        strong_ellipticity(&mut rng, 100),
        energy_grid(),
        ellipticity_invariance(&mut rng, 150),
        dirichlet_consistency(),
    ];
    SelfTestReport { seed, passed: suites.iter().all(|s| s.passed), suites }
}
