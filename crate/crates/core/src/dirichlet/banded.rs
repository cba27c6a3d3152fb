//! Banded LU factorization with partial pivoting.

use crate::error::{Error, Result};

/// Square sparse matrix stored by rows, with a known lower/upper bandwidth.
#[derive(Debug, Clone)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl BandedMatrix {
    pub fn new(n: usize, kl: usize, ku: usize) -> Self {
        Self { n, kl, ku, rows: vec![Vec::new(); n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Adds `v` to entry `(i, j)`. Panics when `(i, j)` lies outside the band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(j + self.kl >= i && j <= i + self.ku, "entry ({i}, {j}) outside band");
        if v == 0.0 {
            return;
        }
        match self.rows[i].iter_mut().find(|(c, _)| *c == j) {
            Some((_, x)) => *x += v,
            None => self.rows[i].push((j, v)),
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().map(|&(j, v)| v * x[j]).sum()).collect()
    }

    pub fn factor(&self) -> Result<BandedLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let w = 2 * kl + ku + 1;
        let mut ab = vec![0.0; n * w];
        // Column j of row i lives at i*w + (j + kl - i).
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r {
                ab[i * w + j + kl - i] += v;
            }
        }
        let idx = |i: usize, j: usize| i * w + j + kl - i;
        let mut piv = vec![0usize; n];
        let mut mult = vec![0.0; n * kl];
        let scale = ab.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let p = (k..=last).max_by(|&a, &b| ab[idx(a, k)].abs().total_cmp(&ab[idx(b, k)].abs())).unwrap();
            let pv = ab[idx(p, k)];
            if pv.abs() <= f64::EPSILON * scale * (n as f64).sqrt() {
                return Err(Error::SolverDiverged { residual: f64::INFINITY });
            }
            piv[k] = p;
            let jmax = (k + kl + ku).min(n - 1);
            if p != k {
                for j in k..=jmax {
                    ab.swap(idx(k, j), idx(p, j));
                }
            }
            for i in (k + 1)..=last {
                let m = ab[idx(i, k)] / pv;
                mult[k * kl + (i - k - 1)] = m;
                ab[idx(i, k)] = 0.0;
                if m != 0.0 {
                    for j in (k + 1)..=jmax {
                        ab[idx(i, j)] -= m * ab[idx(k, j)];
                    }
                }
            }
        }
        Ok(BandedLu { n, kl, ku, w, ab, piv, mult })
    }

    /// Solves `Ax = b` by LU with up to three steps of iterative refinement;
    /// fails unless `‖Ax - b‖₂ <= rel_tol·‖b‖₂`.
    pub fn solve(&self, b: &[f64], rel_tol: f64) -> Result<(Vec<f64>, f64)> {
        let lu = self.factor()?;
        let bn = norm2(b);
        let mut x = lu.solve(b);
        let mut res = self.residual(&x, b);
        for _ in 0..3 {
            if norm2(&res) <= rel_tol * bn {
                break;
            }
            let dx = lu.solve(&res);
            x.iter_mut().zip(&dx).for_each(|(xi, d)| *xi += d);
            res = self.residual(&x, b);
        }
        let rel = if bn > 0.0 { norm2(&res) / bn } else { norm2(&res) };
        if !(rel <= rel_tol) {
            return Err(Error::SolverDiverged { residual: rel });
        }
        Ok((x, rel))
    }

    /// `b - Ax`.
    fn residual(&self, x: &[f64], b: &[f64]) -> Vec<f64> {
        self.mul_vec(x).iter().zip(b).map(|(ax, bi)| bi - ax).collect()
    }
}

pub(crate) fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    w: usize,
    ab: Vec<f64>,
    piv: Vec<usize>,
    mult: Vec<f64>,
}

impl BandedLu {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let (n, kl, ku, w) = (self.n, self.kl, self.ku, self.w);
        let idx = |i: usize, j: usize| i * w + j + kl - i;
        let mut y = b.to_vec();
        for k in 0..n {
            y.swap(k, self.piv[k]);
            let last = (k + kl).min(n - 1);
            for i in (k + 1)..=last {
                y[i] -= self.mult[k * kl + (i - k - 1)] * y[k];
            }
        }
        for k in (0..n).rev() {
            let jmax = (k + kl + ku).min(n - 1);
            let s: f64 = ((k + 1)..=jmax).map(|j| self.ab[idx(k, j)] * y[j]).sum();
            y[k] = (y[k] - s) / self.ab[idx(k, k)];
        }
        y
    }
}
