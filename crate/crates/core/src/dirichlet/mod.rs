//! Finite-difference Dirichlet problem `𝓛f = 0` on the unit square.
//!
//! Lattice nodes are `(i, j)` with `0 <= i, j <= n+1`, `x = ih`, `y = jh`,
//! `h = 1/(n+1)`; node `(i, j)` is stored at `j·(n+2) + i`.

mod banded;
mod variational;

use std::io::{self, Write};

use serde::Serialize;

use crate::energy::{energy_decision, EnergyReason};
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::system::{is_elliptic, SystemSpec};

pub use banded::{BandedLu, BandedMatrix};
pub use variational::{
    discrete_energy, el_consistency_check, energy_gradient, minimize_energy, ConsistencyReport, Minimization,
};

/// Relative residual required from the direct solver.
pub const DIRECT_RESIDUAL_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    n: usize,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::GridTooSmall(n));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        1.0 / (self.n + 1) as f64
    }

    /// Points per side including the boundary.
    pub fn side(&self) -> usize {
        self.n + 2
    }

    pub fn node(&self, i: usize, j: usize) -> usize {
        j * self.side() + i
    }

    pub fn coord(&self, i: usize) -> f64 {
        if i == self.n + 1 {
            1.0
        } else {
            i as f64 * self.h()
        }
    }

    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.n + 1 || j == self.n + 1
    }

    /// Index of the interior node among the `n²` unknown pairs.
    fn interior(&self, i: usize, j: usize) -> usize {
        (j - 1) * self.n + (i - 1)
    }
}

/// Values of `u` and `v` on the whole lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteField {
    pub grid: Grid,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl DiscreteField {
    pub fn zeros(grid: Grid) -> Self {
        let m = grid.side() * grid.side();
        Self { grid, u: vec![0.0; m], v: vec![0.0; m] }
    }

    /// Samples `f` at every lattice node.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> [f64; 2]) -> Self {
        let mut out = Self::zeros(grid);
        for j in 0..grid.side() {
            for i in 0..grid.side() {
                let [u, v] = f(grid.coord(i), grid.coord(j));
                let k = grid.node(i, j);
                out.u[k] = u;
                out.v[k] = v;
            }
        }
        out
    }

    pub fn at(&self, i: usize, j: usize) -> [f64; 2] {
        let k = self.grid.node(i, j);
        [self.u[k], self.v[k]]
    }

    /// `max |f - g|` over all nodes and both components.
    pub fn max_abs_diff(&self, other: &DiscreteField) -> f64 {
        self.u
            .iter()
            .zip(&other.u)
            .chain(self.v.iter().zip(&other.v))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `max |f|` over interior nodes.
    pub fn interior_max_abs(&self) -> f64 {
        let g = self.grid;
        let mut m = 0.0_f64;
        for j in 1..=g.n() {
            for i in 1..=g.n() {
                let [u, v] = self.at(i, j);
                m = m.max(u.abs()).max(v.abs());
            }
        }
        m
    }

    /// Writes the header `n h` followed by one `i j u v` row per node.
    pub fn dump<W: Write>(&self, mut w: W) -> io::Result<()> {
        let g = self.grid;
        writeln!(w, "{} {:.16e}", g.n(), g.h())?;
        for j in 0..g.side() {
            for i in 0..g.side() {
                let [u, v] = self.at(i, j);
                writeln!(w, "{i} {j} {u:.16e} {v:.16e}")?;
            }
        }
        Ok(())
    }
}

/// Dirichlet data on the boundary of the unit square.
pub struct BoundaryData<'a> {
    f: Box<dyn Fn(f64, f64) -> [f64; 2] + 'a>,
}

impl<'a> BoundaryData<'a> {
    /// Wraps `f` after a sampled sanity check along the boundary: values must
    /// be finite and the largest jump between neighbouring samples must
    /// shrink under refinement, which rules out jump discontinuities.
    pub fn new(f: impl Fn(f64, f64) -> [f64; 2] + 'a) -> Result<Self> {
        let bd = Self { f: Box::new(f) };
        let coarse = bd.max_jump(1 << 11)?;
        let fine = bd.max_jump(1 << 13)?;
        let scale = bd.max_abs(1 << 11).max(1.0);
        if fine > 1e-9 * scale && fine > 0.75 * coarse {
            return Err(Error::InvalidBoundary(format!(
                "boundary data looks discontinuous (jump {fine:e} does not shrink under refinement)"
            )));
        }
        Ok(bd)
    }

    pub fn eval(&self, x: f64, y: f64) -> [f64; 2] {
        (self.f)(x, y)
    }

    /// Point at perimeter parameter `t ∈ [0, 4]`, counterclockwise from the origin.
    fn perimeter(t: f64) -> (f64, f64) {
        match t {
            t if t < 1.0 => (t, 0.0),
            t if t < 2.0 => (1.0, t - 1.0),
            t if t < 3.0 => (3.0 - t, 1.0),
            t => (0.0, (4.0 - t).max(0.0)),
        }
    }

    fn samples(&self, per_side: usize) -> Result<Vec<[f64; 2]>> {
        let m = 4 * per_side;
        (0..=m)
            .map(|k| {
                let (x, y) = Self::perimeter(4.0 * k as f64 / m as f64);
                let v = self.eval(x, y);
                if v[0].is_finite() && v[1].is_finite() {
                    Ok(v)
                } else {
                    Err(Error::InvalidBoundary(format!("non-finite value at ({x}, {y})")))
                }
            })
            .collect()
    }

    fn max_jump(&self, per_side: usize) -> Result<f64> {
        let s = self.samples(per_side)?;
        Ok(s.windows(2).map(|w| (w[0][0] - w[1][0]).abs().max((w[0][1] - w[1][1]).abs())).fold(0.0, f64::max))
    }

    fn max_abs(&self, per_side: usize) -> f64 {
        self.samples(per_side)
            .map(|s| s.iter().map(|v| v[0].abs().max(v[1].abs())).fold(0.0, f64::max))
            .unwrap_or(f64::INFINITY)
    }

    /// Field with boundary values from the data and zero interior.
    pub fn lift(&self, grid: Grid) -> DiscreteField {
        let mut f = DiscreteField::zeros(grid);
        for j in 0..grid.side() {
            for i in 0..grid.side() {
                if grid.is_boundary(i, j) {
                    let [u, v] = self.eval(grid.coord(i), grid.coord(j));
                    let k = grid.node(i, j);
                    f.u[k] = u;
                    f.v[k] = v;
                }
            }
        }
        f
    }
}

/// The `2n²` equations of the discretized system, multiplied by `h²`.
/// Unknown `2k` is `u` and `2k+1` is `v` at interior node `k = (j-1)n + (i-1)`.
#[derive(Debug, Clone)]
pub struct DirectSystem {
    pub matrix: BandedMatrix,
    pub rhs: Vec<f64>,
    boundary: DiscreteField,
}

/// Central differences: `f_xx ≈ (f₍ᵢ₋₁ⱼ₎ - 2f₍ᵢⱼ₎ + f₍ᵢ₊₁ⱼ₎)/h²`, likewise
/// `f_yy`, and the cross stencil `f_xy ≈ (f₍ᵢ₊₁ⱼ₊₁₎ - f₍ᵢ₊₁ⱼ₋₁₎ - f₍ᵢ₋₁ⱼ₊₁₎ + f₍ᵢ₋₁ⱼ₋₁₎)/(4h²)`.
/// Boundary contributions are moved to the right-hand side.
pub fn assemble_direct(spec: &SystemSpec, grid: Grid, bc: &BoundaryData, tol: f64) -> Result<DirectSystem> {
    if !is_elliptic(spec, tol) {
        return Err(Error::NotElliptic);
    }
    let n = grid.n();
    let band = 2 * n + 3;
    let mut matrix = BandedMatrix::new(2 * n * n, band, band);
    let mut rhs = vec![0.0; 2 * n * n];
    let boundary = bc.lift(grid);
    let half_b = spec.b * 0.5;
    let stencil: [(isize, isize, Mat2); 9] = [
        (0, 0, (spec.a + spec.c) * -2.0),
        (1, 0, spec.a),
        (-1, 0, spec.a),
        (0, 1, spec.c),
        (0, -1, spec.c),
        (1, 1, half_b),
        (-1, -1, half_b),
        (1, -1, -half_b),
        (-1, 1, -half_b),
    ];
    for j in 1..=n {
        for i in 1..=n {
            let row = 2 * grid.interior(i, j);
            for &(di, dj, m) in &stencil {
                let (ii, jj) = ((i as isize + di) as usize, (j as isize + dj) as usize);
                if grid.is_boundary(ii, jj) {
                    let f = boundary.at(ii, jj);
                    let mf = m.mul_vec(f);
                    rhs[row] -= mf[0];
                    rhs[row + 1] -= mf[1];
                } else {
                    let col = 2 * grid.interior(ii, jj);
                    for r in 0..2 {
                        for c in 0..2 {
                            matrix.add(row + r, col + c, m.0[r][c]);
                        }
                    }
                }
            }
        }
    }
    Ok(DirectSystem { matrix, rhs, boundary })
}

/// Solves the assembled system by banded LU with partial pivoting.
pub fn solve_direct(system: &DirectSystem) -> Result<DiscreteField> {
    let (x, _) = system.matrix.solve(&system.rhs, DIRECT_RESIDUAL_TOL)?;
    let mut f = system.boundary.clone();
    let g = f.grid;
    for j in 1..=g.n() {
        for i in 1..=g.n() {
            let k = grid_unknown(&g, i, j);
            let node = g.node(i, j);
            f.u[node] = x[k];
            f.v[node] = x[k + 1];
        }
    }
    Ok(f)
}

fn grid_unknown(g: &Grid, i: usize, j: usize) -> usize {
    2 * g.interior(i, j)
}

/// Assembles and solves in one step.
pub fn solve_dirichlet(spec: &SystemSpec, grid: Grid, bc: &BoundaryData, tol: f64) -> Result<DiscreteField> {
    solve_direct(&assemble_direct(spec, grid, bc, tol)?)
}

/// `max |f - exact|` over interior nodes.
pub fn max_nodal_error(f: &DiscreteField, exact: impl Fn(f64, f64) -> [f64; 2]) -> f64 {
    let g = f.grid;
    let mut e = 0.0_f64;
    for j in 1..=g.n() {
        for i in 1..=g.n() {
            let [u, v] = f.at(i, j);
            let [ue, ve] = exact(g.coord(i), g.coord(j));
            e = e.max((u - ue).abs()).max((v - ve).abs());
        }
    }
    e
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub h: f64,
    /// `max |f|` over interior nodes of the direct solution.
    pub direct_interior_max: f64,
    pub energy_exists: bool,
    pub energy_reason: EnergyReason,
    /// Present when an energy exists: minimizer against the direct solution
    /// of its Euler–Lagrange system.
    pub consistency: Option<ConsistencyReport>,
}

/// Solves the Dirichlet problem for `spec` directly and, when the system
/// admits a non-negative energy, cross-checks the energy minimizer against
/// the direct solution of the symmetric system. Returns the report and the
/// direct solution for `spec`.
pub fn verify(spec: &SystemSpec, grid: Grid, bc: &BoundaryData, tol: f64) -> Result<(VerifyReport, DiscreteField)> {
    let decision = energy_decision(spec, tol)?;
    let direct = solve_dirichlet(spec, grid, bc, tol)?;
    let consistency = match decision.energy() {
        Some(e) => Some(el_consistency_check(&e, grid, bc, tol)?.0),
        None => None,
    };
    let report = VerifyReport {
        n: grid.n(),
        h: grid.h(),
        direct_interior_max: direct.interior_max_abs(),
        energy_exists: decision.exists,
        energy_reason: decision.reason,
        consistency,
    };
    Ok((report, direct))
}
