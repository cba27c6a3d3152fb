//! Discrete energy `½∫(E∇f, ∇f)` and its minimization by conjugate gradients.
//!
//! Each cell `[xᵢ, xᵢ₊₁] × [yⱼ, yⱼ₊₁]` contributes the average over its four
//! corners of `∇ᵗE∇`, where at a corner the gradient is formed from the two
//! one-sided differences along the cell edges meeting there (the gradients of
//! the linear interpolants on the four corner triangles of both
//! triangulations). The quadrature weight per corner is `h²/8`.

use serde::Serialize;

use super::banded::norm2;
use super::{solve_direct, assemble_direct, BoundaryData, DiscreteField, Grid};
use crate::energy::{euler_lagrange_system, EnergyMatrix};
use crate::error::{Error, Result};

/// Corner offsets `(di, dj)` within a cell and the directions `(sx, sy)` of
/// the edges leaving that corner.
const CORNERS: [(usize, usize, isize, isize); 4] = [(0, 0, 1, 1), (1, 0, -1, 1), (0, 1, 1, -1), (1, 1, -1, -1)];

fn offset(i: usize, d: isize) -> usize {
    (i as isize + d) as usize
}

/// Visits every corner gradient `(u_x, v_x, u_y, v_y)` with its node indices
/// `(corner, x-neighbour, y-neighbour)` and edge directions.
fn for_each_corner(f: &DiscreteField, mut visit: impl FnMut([f64; 4], [usize; 3], f64, f64)) {
    let g = f.grid;
    let h = g.h();
    for j in 0..=g.n() {
        for i in 0..=g.n() {
            for &(di, dj, sx, sy) in &CORNERS {
                let (ci, cj) = (i + di, j + dj);
                let c = g.node(ci, cj);
                let nx = g.node(offset(ci, sx), cj);
                let ny = g.node(ci, offset(cj, sy));
                let (sx, sy) = (sx as f64 / h, sy as f64 / h);
                let grad = [
                    sx * (f.u[nx] - f.u[c]),
                    sx * (f.v[nx] - f.v[c]),
                    sy * (f.u[ny] - f.u[c]),
                    sy * (f.v[ny] - f.v[c]),
                ];
                visit(grad, [c, nx, ny], sx, sy);
            }
        }
    }
}

pub fn discrete_energy(e: &EnergyMatrix, f: &DiscreteField) -> f64 {
    let h = f.grid.h();
    let w = h * h / 8.0;
    let mut total = 0.0;
    for_each_corner(f, |grad, _, _, _| total += w * e.e.quadratic_form(grad));
    total
}

/// Exact gradient of [`discrete_energy`] with respect to the interior nodal
/// values; boundary entries are zero.
pub fn energy_gradient(e: &EnergyMatrix, f: &DiscreteField) -> DiscreteField {
    let g = f.grid;
    let h = g.h();
    let w = h * h / 4.0;
    let mut out = DiscreteField::zeros(g);
    for_each_corner(f, |grad, [c, nx, ny], sx, sy| {
        let eg = e.e.mul_vec(grad);
        let (gx_u, gx_v, gy_u, gy_v) = (w * eg[0] * sx, w * eg[1] * sx, w * eg[2] * sy, w * eg[3] * sy);
        out.u[nx] += gx_u;
        out.v[nx] += gx_v;
        out.u[ny] += gy_u;
        out.v[ny] += gy_v;
        out.u[c] -= gx_u + gy_u;
        out.v[c] -= gx_v + gy_v;
    });
    zero_boundary(&mut out);
    out
}

fn zero_boundary(f: &mut DiscreteField) {
    let g = f.grid;
    for j in 0..g.side() {
        for i in 0..g.side() {
            if g.is_boundary(i, j) {
                let k = g.node(i, j);
                f.u[k] = 0.0;
                f.v[k] = 0.0;
            }
        }
    }
}

fn dot(a: &DiscreteField, b: &DiscreteField) -> f64 {
    a.u.iter().zip(&b.u).chain(a.v.iter().zip(&b.v)).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut DiscreteField, a: f64, x: &DiscreteField) {
    y.u.iter_mut().zip(&x.u).for_each(|(yi, xi)| *yi += a * xi);
    y.v.iter_mut().zip(&x.v).for_each(|(yi, xi)| *yi += a * xi);
}

fn field_norm(f: &DiscreteField) -> f64 {
    norm2(&f.u).hypot(norm2(&f.v))
}

#[derive(Debug, Clone)]
pub struct Minimization {
    pub field: DiscreteField,
    pub iterations: usize,
    pub gradient_norm: f64,
    /// Energy after each iteration, starting with the initial guess.
    pub energy_history: Vec<f64>,
}

impl Minimization {
    /// True when no step raised the energy by more than `rel·|E₀|` (roundoff slack).
    pub fn energy_non_increasing(&self, rel: f64) -> bool {
        let scale = self.energy_history.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        self.energy_history.windows(2).all(|w| w[1] <= w[0] + rel * scale)
    }
}

/// Conjugate gradients on the interior values with boundary values fixed,
/// starting from zero interior values, until `‖∇𝓔‖₂ <= tol`.
pub fn minimize_energy(
    e: &EnergyMatrix,
    grid: Grid,
    bc: &BoundaryData,
    tol: f64,
    max_iterations: usize,
) -> Result<Minimization> {
    let mut x = bc.lift(grid);
    let mut r = energy_gradient(e, &x);
    r.u.iter_mut().chain(r.v.iter_mut()).for_each(|v| *v = -*v);
    let mut p = r.clone();
    let mut rr = dot(&r, &r);
    let mut history = vec![discrete_energy(e, &x)];
    let mut iterations = 0;
    while rr.sqrt() > tol {
        if iterations >= max_iterations {
            return Err(Error::MaxIterations { iterations, gradient_norm: rr.sqrt() });
        }
        // p vanishes on the boundary, so the gradient at p is the Hessian applied to p.
        let hp = energy_gradient(e, &p);
        let php = dot(&p, &hp);
        if !(php > 0.0) {
            return Err(Error::IndefiniteEnergy);
        }
        let alpha = rr / php;
        axpy(&mut x, alpha, &p);
        axpy(&mut r, -alpha, &hp);
        let rr_new = dot(&r, &r);
        let beta = rr_new / rr;
        rr = rr_new;
        p.u.iter_mut().zip(&r.u).for_each(|(pi, ri)| *pi = ri + beta * *pi);
        p.v.iter_mut().zip(&r.v).for_each(|(pi, ri)| *pi = ri + beta * *pi);
        iterations += 1;
        history.push(discrete_energy(e, &x));
    }
    let gradient_norm = field_norm(&energy_gradient(e, &x));
    Ok(Minimization { field: x, iterations, gradient_norm, energy_history: history })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub n: usize,
    /// `max |f_min - f_direct|` over the lattice.
    pub max_difference: f64,
    pub cg_iterations: usize,
    pub gradient_norm: f64,
    pub energy_non_increasing: bool,
    pub minimum_energy: f64,
}

/// Minimizes the discrete energy and compares the minimizer with the direct
/// solution of the Euler–Lagrange system `A = K`, `B = (L+Lᵗ)/2`, `C = M`.
pub fn el_consistency_check(e: &EnergyMatrix, grid: Grid, bc: &BoundaryData, tol: f64) -> Result<(ConsistencyReport, Minimization, DiscreteField)> {
    if !e.is_nonneg() {
        return Err(Error::IndefiniteEnergy);
    }
    let direct = solve_direct(&assemble_direct(&euler_lagrange_system(e), grid, bc, tol)?)?;
    let unknowns = 2 * grid.n() * grid.n();
    let scale = bc.lift(grid).u.iter().chain(&bc.lift(grid).v).fold(1.0_f64, |m, x| m.max(x.abs()));
    let min = minimize_energy(e, grid, bc, 1e-13 * scale * e.e.norm(), 20 * unknowns)?;
    let report = ConsistencyReport {
        n: grid.n(),
        max_difference: min.field.max_abs_diff(&direct),
        cg_iterations: min.iterations,
        gradient_norm: min.gradient_norm,
        energy_non_increasing: min.energy_non_increasing(1e-13),
        minimum_energy: *min.energy_history.last().unwrap(),
    };
    Ok((report, min, direct))
}
