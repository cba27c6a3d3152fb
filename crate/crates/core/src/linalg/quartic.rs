//! Real quartic roots via eigenvalues of the (balanced) companion matrix.

use super::ComplexScalar;
use crate::error::{Error, Result};

const MAX_QR_ITERATIONS: usize = 60;

/// Evaluates `c[0] x^n + ... + c[n]` by Horner's rule.
pub fn eval_poly(coeffs: &[f64], x: ComplexScalar) -> ComplexScalar {
    coeffs
        .iter()
        .fold(ComplexScalar::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn eval_abs_poly(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * r + c.abs())
}

/// All four roots (with multiplicity) of `c4 x⁴ + c3 x³ + c2 x² + c1 x + c0`.
///
/// Roots are eigenvalues of the companion matrix, computed by balancing and
/// the shifted Hessenberg QR iteration. Each root is then polished by Newton
/// steps that are kept only when they reduce `|p|`. Clusters of two roots
/// closer than `1e-6` (relative) whose midpoint-refined value is a root of
/// `p'` to working precision are replaced by that double root: a perturbed
/// double root splits by `O(√ε)`, while the cluster centre is accurate to
/// `O(ε)`.
pub fn solve_quartic(c4: f64, c3: f64, c2: f64, c1: f64, c0: f64) -> Result<[ComplexScalar; 4]> {
    let coeffs = [c4, c3, c2, c1, c0];
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParams("non-finite quartic coefficient".into()));
    }
    let cmax = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if c4.abs() <= 1e-14 * cmax || cmax == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient { c4 });
    }

    // 1-indexed Hessenberg storage keeps the QR sweep close to its textbook form.
    let mut h = [[0.0_f64; 5]; 5];
    for k in 1..=4 {
        h[1][k] = -coeffs[k] / c4;
    }
    for k in 2..=4 {
        h[k][k - 1] = 1.0;
    }
    balance(&mut h, 4);
    let (wr, wi) = hessenberg_qr(&mut h, 4)?;

    let mut roots: Vec<ComplexScalar> = (1..=4).map(|k| ComplexScalar::new(wr[k], wi[k])).collect();
    for r in roots.iter_mut() {
        *r = polish(&coeffs, *r);
    }
    merge_double_roots(&coeffs, &mut roots);
    Ok([roots[0], roots[1], roots[2], roots[3]])
}

fn polish(coeffs: &[f64; 5], mut r: ComplexScalar) -> ComplexScalar {
    let deriv = [4.0 * coeffs[0], 3.0 * coeffs[1], 2.0 * coeffs[2], coeffs[3]];
    let mut best = eval_poly(coeffs, r).norm();
    for _ in 0..3 {
        let dp = eval_poly(&deriv, r);
        if dp.norm() == 0.0 {
            break;
        }
        let cand = r - eval_poly(coeffs, r) / dp;
        let val = eval_poly(coeffs, cand).norm();
        if val < best {
            best = val;
            r = cand;
        } else {
            break;
        }
    }
    r
}

fn merge_double_roots(coeffs: &[f64; 5], roots: &mut [ComplexScalar]) {
    let deriv = [4.0 * coeffs[0], 3.0 * coeffs[1], 2.0 * coeffs[2], coeffs[3]];
    let deriv2 = [12.0 * coeffs[0], 6.0 * coeffs[1], 2.0 * coeffs[2]];
    let n = roots.len();
    let mut merged = vec![false; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if merged[i] || merged[j] {
                continue;
            }
            let (a, b) = (roots[i], roots[j]);
            let scale = 1.0 + a.norm().max(b.norm());
            if (a - b).norm() > 1e-6 * scale {
                continue;
            }
            // Newton on p' from the midpoint: the double root is a simple root of p'.
            let mut m = (a + b) * 0.5;
            for _ in 0..4 {
                let d2 = eval_poly(&deriv2, m);
                if d2.norm() == 0.0 {
                    break;
                }
                m -= eval_poly(&deriv, m) / d2;
            }
            let resid = eval_poly(coeffs, m).norm();
            let bound = 64.0 * f64::EPSILON * eval_abs_poly(coeffs, m.norm());
            if resid <= bound && (m - (a + b) * 0.5).norm() <= 1e-6 * scale {
                // A real cluster keeps a real root; a complex one keeps its half-plane.
                let m = if a.im == 0.0 && b.im == 0.0 { ComplexScalar::new(m.re, 0.0) } else { m };
                roots[i] = m;
                roots[j] = m;
                merged[i] = true;
                merged[j] = true;
            }
        }
    }
}

/// Diagonal similarity scaling by powers of two (Parlett–Reinsch).
fn balance(a: &mut [[f64; 5]; 5], n: usize) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 1..=n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 1..=n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 1..=n {
                        a[i][j] *= g;
                    }
                    for j in 1..=n {
                        a[j][i] *= f;
                    }
                }
            }
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by the Francis double-shift QR
/// iteration. `a` is 1-indexed and destroyed.
fn hessenberg_qr(a: &mut [[f64; 5]; 5], n: usize) -> Result<([f64; 5], [f64; 5])> {
    let mut wr = [0.0; 5];
    let mut wi = [0.0; 5];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in (i.max(2) - 1)..=n {
            anorm += a[i][j].abs();
        }
    }
    let mut nn = n as isize;
    let mut t = 0.0;
    while nn >= 1 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l >= 2 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() + s == s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu];
            if l == nu {
                wr[nu] = x + t;
                wi[nu] = 0.0;
                nn -= 1;
            } else {
                let mut y = a[nu - 1][nu - 1];
                let mut w = a[nu][nu - 1] * a[nu - 1][nu];
                if l == nu - 1 {
                    let p = 0.5 * (y - x);
                    let q = p * p + w;
                    let mut z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + z.copysign(p);
                        wr[nu - 1] = x + z;
                        wr[nu] = x + z;
                        if z != 0.0 {
                            wr[nu] = x - w / z;
                        }
                        wi[nu - 1] = 0.0;
                        wi[nu] = 0.0;
                    } else {
                        wr[nu - 1] = x + p;
                        wr[nu] = x + p;
                        wi[nu - 1] = -z;
                        wi[nu] = z;
                    }
                    nn -= 2;
                } else {
                    if its == MAX_QR_ITERATIONS {
                        return Err(Error::InternalInconsistency(
                            "Hessenberg QR iteration did not converge".into(),
                        ));
                    }
                    if its == 10 || its == 20 {
                        // Exceptional shift.
                        t += x;
                        for i in 1..=nu {
                            a[i][i] -= x;
                        }
                        let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    let (mut p, mut q, mut r);
                    let mut m = nu - 2;
                    loop {
                        let z = a[m][m];
                        let rr = x - z;
                        let ss = y - z;
                        p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - rr - ss;
                        r = a[m + 2][m + 1];
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                        if u + v == v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in (m + 2)..=nu {
                        a[i][i - 2] = 0.0;
                        if i != m + 2 {
                            a[i][i - 3] = 0.0;
                        }
                    }
                    let mut k = m;
                    while k < nu {
                        let mut xx = 0.0;
                        if k != m {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = 0.0;
                            if k != nu - 1 {
                                r = a[k + 2][k - 1];
                            }
                            xx = p.abs() + q.abs() + r.abs();
                            if xx != 0.0 {
                                p /= xx;
                                q /= xx;
                                r /= xx;
                            }
                        }
                        let s = (p * p + q * q + r * r).sqrt().copysign(p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    a[k][k - 1] = -a[k][k - 1];
                                }
                            } else {
                                a[k][k - 1] = -s * xx;
                            }
                            p += s;
                            let x1 = p / s;
                            let y1 = q / s;
                            let z1 = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nu {
                                let mut pp = a[k][j] + q * a[k + 1][j];
                                if k != nu - 1 {
                                    pp += r * a[k + 2][j];
                                    a[k + 2][j] -= pp * z1;
                                }
                                a[k + 1][j] -= pp * y1;
                                a[k][j] -= pp * x1;
                            }
                            let mmin = nu.min(k + 3);
                            for i in l..=mmin {
                                let mut pp = x1 * a[i][k] + y1 * a[i][k + 1];
                                if k != nu - 1 {
                                    pp += z1 * a[i][k + 2];
                                    a[i][k + 2] -= pp * r;
                                }
                                a[i][k + 1] -= pp * q;
                                a[i][k] -= pp;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if nn < 1 || l + 1 >= nn as usize {
                break;
            }
        }
    }
    Ok((wr, wi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut r: [ComplexScalar; 4]) -> Vec<(f64, f64)> {
        r.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        r.iter().map(|z| (z.re, z.im)).collect()
    }

    fn assert_roots(got: [ComplexScalar; 4], want: &[(f64, f64)], tol: f64) {
        let mut remaining: Vec<ComplexScalar> = got.to_vec();
        for &(re, im) in want {
            let w = ComplexScalar::new(re, im);
            let (idx, d) = remaining
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (z - w).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            assert!(d <= tol, "root {w} not found in {:?} (closest {d:e})", sorted(got));
            remaining.remove(idx);
        }
    }

    #[test]
    fn double_imaginary_pair() {
        let r = solve_quartic(1.0, 0.0, 2.0, 0.0, 1.0).unwrap();
        assert_roots(r, &[(0.0, 1.0), (0.0, 1.0), (0.0, -1.0), (0.0, -1.0)], 1e-12);
    }

    #[test]
    fn canonical_characteristic_form_half() {
        let k: f64 = 0.5;
        let r = solve_quartic(1.0, 0.0, 1.0 + k * k, 0.0, k * k).unwrap();
        assert_roots(r, &[(0.0, 1.0), (0.0, -1.0), (0.0, 0.5), (0.0, -0.5)], 1e-12);
    }

    #[test]
    fn integer_roots() {
        // Oracle: p(1)=p(2)=p(3)=p(4)=0 in exact integer arithmetic.
        let p = |x: i64| x.pow(4) - 10 * x.pow(3) + 35 * x * x - 50 * x + 24;
        assert!((1..=4).all(|x| p(x) == 0));
        let r = solve_quartic(1.0, -10.0, 35.0, -50.0, 24.0).unwrap();
        assert_roots(r, &[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0)], 1e-10);
    }

    #[test]
    fn degenerate_leading_coefficient() {
        assert!(matches!(
            solve_quartic(1e-20, 1.0, 0.0, 0.0, 1.0),
            Err(Error::DegenerateLeadingCoefficient { .. })
        ));
        assert!(solve_quartic(0.0, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn quadruple_root() {
        // (x - 2)^4
        let r = solve_quartic(1.0, -8.0, 24.0, -32.0, 16.0).unwrap();
        for z in r {
            assert!((z - ComplexScalar::new(2.0, 0.0)).norm() < 1e-3);
        }
    }

    #[test]
    fn residual_bound_on_mixed_roots() {
        let coeffs = [3.0, -2.0, 7.5, 0.25, -4.0];
        let r = solve_quartic(coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]).unwrap();
        for z in r {
            let scale = 7.5 * 1.0_f64.max(z.norm()).powi(4);
            assert!(eval_poly(&coeffs, z).norm() <= 1e-9 * scale);
        }
    }
}
