use serde::Serialize;

use super::Mat2;

/// Shape of the real Jordan form of a 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum JordanCase {
    /// `diag(λ, μ)` with `|λ| <= |μ|`, `λ ≠ μ`.
    DistinctReal,
    /// `[[λ, 1], [0, λ]]`.
    RepeatedRealBlock,
    /// `λ I`.
    RepeatedRealDiagonal,
    /// `[[α, -β], [β, α]]`, `β > 0`, eigenvalues `α ± iβ`.
    ComplexPair,
}

/// `M = P J P⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JordanDecomposition {
    pub case: JordanCase,
    pub j: Mat2,
    pub p: Mat2,
}

impl JordanDecomposition {
    pub fn reconstruct(&self) -> Mat2 {
        self.p * self.j * self.p.inverse().unwrap_or(Mat2::ZERO)
    }
}

/// Real Jordan canonical form of a 2×2 matrix.
///
/// `M` is treated as scalar when `‖N‖ <= tol·‖M‖` for `N = M - (tr/2) I`, and
/// as having a repeated eigenvalue when the discriminant `-det N` is within
/// `1000·tol·‖N‖²` of zero, i.e. when `N` is close to nilpotent relative to its
/// own size. Distinct real eigenvalues are ordered by
/// modulus; the tie `λ = -μ` puts the positive eigenvalue first.
pub fn jordan_2x2(m: &Mat2, tol: f64) -> JordanDecomposition {
    let norm = m.norm();
    let half_trace = 0.5 * m.trace();
    let nil = *m - Mat2::scalar(half_trace);
    if norm == 0.0 || nil.norm() <= tol * norm {
        return JordanDecomposition {
            case: JordanCase::RepeatedRealDiagonal,
            j: Mat2::scalar(half_trace),
            p: Mat2::IDENTITY,
        };
    }
    let [[a, b], [c, d]] = m.0;
    let half_diff = 0.5 * (a - d);
    let disc = half_diff * half_diff + b * c;
    let nn = nil.norm();
    let disc_tol = 1e3 * tol * nn * nn;

    if disc > disc_tol {
        let s = disc.sqrt();
        // Stable pair: the larger-modulus root avoids cancellation, the other from the determinant.
        let big = if half_trace >= 0.0 { half_trace + s } else { half_trace - s };
        let small = if big != 0.0 { m.det() / big } else { half_trace - s };
        let (lam, mu) = if small.abs() < big.abs() || (small.abs() == big.abs() && small > big) {
            (small, big)
        } else {
            (big, small)
        };
        let p = Mat2::from_columns(eigenvector(m, lam), eigenvector(m, mu));
        return JordanDecomposition { case: JordanCase::DistinctReal, j: Mat2::diag(lam, mu), p };
    }

    if disc < -disc_tol {
        let beta = (-disc).sqrt();
        // Eigenvector w = p + iq of α - iβ gives M[p q] = [p q] [[α, -β], [β, α]].
        let (wr, wi) = if b.abs() >= c.abs() {
            ([b, half_trace - a], [0.0, -beta])
        } else {
            ([half_trace - d, c], [-beta, 0.0])
        };
        let p = Mat2::new(wr[0], wi[0], wr[1], wi[1]);
        return JordanDecomposition {
            case: JordanCase::ComplexPair,
            j: Mat2::new(half_trace, -beta, beta, half_trace),
            p,
        };
    }

    // Repeated eigenvalue with a nontrivial nilpotent part N = M - λI.
    let lam = half_trace;
    let col0 = [nil.0[0][0], nil.0[1][0]];
    let col1 = [nil.0[0][1], nil.0[1][1]];
    let v2 = if col0[0].hypot(col0[1]) >= col1[0].hypot(col1[1]) { [1.0, 0.0] } else { [0.0, 1.0] };
    let v1 = nil.mul_vec(v2);
    JordanDecomposition {
        case: JordanCase::RepeatedRealBlock,
        j: Mat2::new(lam, 1.0, 0.0, lam),
        p: Mat2::from_columns(v1, v2),
    }
}

/// Kernel vector of the rank-one matrix `M - e I`, taken from whichever row is larger.
fn eigenvector(m: &Mat2, e: f64) -> [f64; 2] {
    let [[a, b], [c, d]] = m.0;
    let r1 = [b, e - a];
    let r2 = [e - d, c];
    if r1[0].hypot(r1[1]) >= r2[0].hypot(r2[1]) {
        r1
    } else {
        r2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: Mat2, case: JordanCase) -> JordanDecomposition {
        let jd = jordan_2x2(&m, 1e-9);
        assert_eq!(jd.case, case, "{m:?} -> {jd:?}");
        let err = (m - jd.reconstruct()).norm();
        assert!(err <= 1e-12 * m.norm().max(1.0), "{m:?} -> {jd:?}: {err:e}");
        jd
    }

    #[test]
    fn diagonal_distinct() {
        let jd = check(Mat2::diag(2.0, 3.0), JordanCase::DistinctReal);
        assert_eq!(jd.j, Mat2::diag(2.0, 3.0));
    }

    #[test]
    fn modulus_ordering() {
        let jd = check(Mat2::diag(-5.0, 1.0), JordanCase::DistinctReal);
        assert_eq!(jd.j, Mat2::diag(1.0, -5.0));
    }

    #[test]
    fn tie_puts_positive_first() {
        let jd = check(Mat2::diag(-2.0, 2.0), JordanCase::DistinctReal);
        assert_eq!(jd.j, Mat2::diag(2.0, -2.0));
    }

    #[test]
    fn rotation_is_complex_pair() {
        let jd = check(Mat2::new(0.0, -1.0, 1.0, 0.0), JordanCase::ComplexPair);
        assert_eq!(jd.j, Mat2::new(0.0, -1.0, 1.0, 0.0));
        check(Mat2::new(0.5, 3.0, -1.0, 0.0), JordanCase::ComplexPair);
        check(Mat2::new(0.5, 0.1, -9.0, 0.0), JordanCase::ComplexPair);
    }

    #[test]
    fn shear_is_block() {
        let jd = check(Mat2::new(1.0, 1.0, 0.0, 1.0), JordanCase::RepeatedRealBlock);
        assert_eq!(jd.j, Mat2::new(1.0, 1.0, 0.0, 1.0));
        check(Mat2::new(3.0, 0.0, 2.0, 3.0), JordanCase::RepeatedRealBlock);
    }

    #[test]
    fn scalar_is_diagonal() {
        let jd = check(Mat2::scalar(-0.7), JordanCase::RepeatedRealDiagonal);
        assert_eq!(jd.p, Mat2::IDENTITY);
        let near = Mat2::new(2.0, 1e-12, 0.0, 2.0);
        assert_eq!(jordan_2x2(&near, 1e-9).case, JordanCase::RepeatedRealDiagonal);
    }

    #[test]
    fn close_eigenvalues_stay_distinct() {
        let s = Mat2::new(1.0, 0.3, -0.2, 1.0);
        let m = s * Mat2::diag(0.5, 0.5 + 1e-7) * s.inverse().unwrap();
        let jd = jordan_2x2(&m, 1e-9);
        assert_eq!(jd.case, JordanCase::DistinctReal);
        assert!((jd.j.0[0][0] - 0.5).abs() < 1e-12);
    }
}
