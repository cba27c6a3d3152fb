//! Small dense linear algebra: 2×2 matrices, symmetric 4×4 matrices, a
//! companion-matrix quartic solver, Jacobi eigenvalues and the real Jordan
//! form of a 2×2 matrix.

mod eigen;
mod jordan;
mod quartic;

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use eigen::{eig_sym, inertia, Inertia};
pub use jordan::{jordan_2x2, JordanCase, JordanDecomposition};
pub use quartic::{eval_poly, solve_quartic};

/// Complex scalar used for characteristic roots.
pub type ComplexScalar = num_complex::Complex64;

/// Real 2×2 matrix, row-major.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2([[a11, a12], [a21, a22]])
    }

    pub const fn diag(d1: f64, d2: f64) -> Self {
        Mat2([[d1, 0.0], [0.0, d2]])
    }

    pub fn scalar(s: f64) -> Self {
        Self::diag(s, s)
    }

    /// Embedding of `x + iy` into `[[x, -y], [y, x]]`.
    pub fn from_complex(z: ComplexScalar) -> Self {
        Self::new(z.re, -z.im, z.im, z.re)
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    /// Inverse, or `None` when `|det| <= 1e-300`.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.abs() <= 1e-300 || !d.is_finite() {
            return None;
        }
        let m = &self.0;
        Some(Self::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn mul_vec(&self, v: [f64; 2]) -> [f64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Matrix whose columns are `c1`, `c2`.
    pub fn from_columns(c1: [f64; 2], c2: [f64; 2]) -> Self {
        Self::new(c1[0], c2[0], c1[1], c2[1])
    }

    /// True when the matrix lies in M₂♯, i.e. has the form `[[x, -y], [y, x]]`.
    pub fn is_complex_form(&self) -> bool {
        let m = &self.0;
        m[0][0] == m[1][1] && m[0][1] == -m[1][0]
    }

    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        self.0[1][0].abs() <= tol
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.0[0], self.0[1])
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2::new(a[0][0] - b[0][0], a[0][1] - b[0][1], a[1][0] - b[1][0], a[1][1] - b[1][1])
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self * -1.0
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        let a = self.0;
        Mat2::new(a[0][0] * s, a[0][1] * s, a[1][0] * s, a[1][1] * s)
    }
}

impl Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, m: Mat2) -> Mat2 {
        m * self
    }
}

/// Symmetric real 4×4 matrix.
///
/// Only constructible from data that is symmetric by construction: either
/// from the blocks `[[K, L], [Lᵗ, M]]` with `K`, `M` symmetrized, or from an
/// upper triangle.
#[derive(Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Mat4Sym([[f64; 4]; 4]);

impl Mat4Sym {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Mat4Sym(m)
    }

    pub fn zero() -> Self {
        Mat4Sym([[0.0; 4]; 4])
    }

    /// Builds from the upper triangle of `m`; the lower triangle is ignored.
    pub fn from_upper(m: [[f64; 4]; 4]) -> Self {
        let mut s = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                s[i][j] = m[i][j];
                s[j][i] = m[i][j];
            }
        }
        Mat4Sym(s)
    }

    /// Assembles `[[K, L], [Lᵗ, M]]`. `K` and `M` contribute their upper
    /// triangles only, so the result is exactly symmetric.
    pub fn from_blocks(k: Mat2, l: Mat2, m: Mat2) -> Self {
        let mut e = [[0.0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                e[i][j] = k.0[i.min(j)][i.max(j)];
                e[i + 2][j + 2] = m.0[i.min(j)][i.max(j)];
                e[i][j + 2] = l.0[i][j];
                e[j + 2][i] = l.0[i][j];
            }
        }
        Mat4Sym(e)
    }

    pub fn blocks(&self) -> (Mat2, Mat2, Mat2) {
        let e = &self.0;
        let k = Mat2::new(e[0][0], e[0][1], e[1][0], e[1][1]);
        let l = Mat2::new(e[0][2], e[0][3], e[1][2], e[1][3]);
        let m = Mat2::new(e[2][2], e[2][3], e[3][2], e[3][3]);
        (k, l, m)
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut e = self.0;
        e.iter_mut().flatten().for_each(|x| *x *= s);
        Mat4Sym(e)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `(E x, x)`.
    pub fn quadratic_form(&self, x: [f64; 4]) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += self.0[i][j] * x[i] * x[j];
            }
        }
        s
    }

    pub fn mul_vec(&self, x: [f64; 4]) -> [f64; 4] {
        let mut y = [0.0; 4];
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = (0..4).map(|j| self.0[i][j] * x[j]).sum();
        }
        y
    }

    /// `S E Sᵗ` for a general 4×4 `S`, symmetrized from the upper triangle.
    pub fn congruence(&self, s: &[[f64; 4]; 4]) -> Self {
        let mut se = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                se[i][j] = (0..4).map(|k| s[i][k] * self.0[k][j]).sum();
            }
        }
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                out[i][j] = (0..4).map(|k| se[i][k] * s[j][k]).sum();
            }
        }
        Mat4Sym::from_upper(out)
    }
}

impl fmt::Debug for Mat4Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}
