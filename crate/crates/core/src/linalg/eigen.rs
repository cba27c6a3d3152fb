use super::Mat4Sym;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a symmetric 4×4 matrix, ascending, by cyclic Jacobi rotations.
pub fn eig_sym(m: &Mat4Sym) -> [f64; 4] {
    let mut a = *m.entries();
    let scale = m.norm();
    if scale == 0.0 {
        return [0.0; 4];
    }
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev = [a[0][0], a[1][1], a[2][2], a[3][3]];
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// Counts of positive, zero and negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

/// Signature of `m`; eigenvalues with `|ev| <= tol·‖m‖` count as zero.
pub fn inertia(m: &Mat4Sym, tol: f64) -> Inertia {
    let thr = tol * m.norm();
    let ev = eig_sym(m);
    Inertia {
        positive: ev.iter().filter(|&&x| x > thr).count(),
        zero: ev.iter().filter(|&&x| x.abs() <= thr).count(),
        negative: ev.iter().filter(|&&x| x < -thr).count(),
    }
}
