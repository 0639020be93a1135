//! Active-set nonnegative least squares (Lawson–Hanson).

use nalgebra::{DMatrix, DVector};

use crate::linalg::Vector;

#[derive(Debug, Clone)]
pub(crate) struct NnlsSolution {
    pub coefficients: Vec<f64>,
    pub residual: f64,
}

/// Least-squares solution restricted to the columns flagged in `passive`.
fn restricted_ls(a: &DMatrix<f64>, b: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let idx: Vec<usize> = (0..passive.len()).filter(|&j| passive[j]).collect();
    let mut z = DVector::zeros(passive.len());
    if idx.is_empty() {
        return z;
    }
    let sub = a.select_columns(&idx);
    let svd = sub.svd(true, true);
    let cutoff = svd.singular_values.max() * 1e-13;
    let sol = svd.solve(b, cutoff).expect("singular vectors were requested");
    for (k, &j) in idx.iter().enumerate() {
        z[j] = sol[k];
    }
    z
}

/// Solves `min_{t >= 0} || sum_j t_j columns[j] - target ||`.
pub(crate) fn nnls(columns: &[Vector], target: &Vector) -> NnlsSolution {
    let n = columns.len();
    let m = target.dim();
    if n == 0 {
        return NnlsSolution {
            coefficients: Vec::new(),
            residual: target.norm(),
        };
    }
    let a = DMatrix::from_fn(m, n, |i, j| columns[j][i]);
    let b = DVector::from_column_slice(target.coords());
    let col_scale = columns.iter().map(Vector::norm).fold(0.0, f64::max);
    let tol_w = 1e-12 * col_scale * (1.0 + target.norm());

    let mut x = DVector::<f64>::zeros(n);
    let mut passive = vec![false; n];
    let mut blocked = vec![false; n];

    for _ in 0..(3 * n + 10) {
        let w = a.transpose() * (&b - &a * &x);
        let candidate = (0..n)
            .filter(|&j| !passive[j] && !blocked[j] && w[j] > tol_w)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else { break };
        passive[j] = true;

        let mut z = restricted_ls(&a, &b, &passive);
        if z[j] <= 0.0 {
            // numerically useless direction; retry without it until x moves
            passive[j] = false;
            blocked[j] = true;
            continue;
        }
        for _ in 0..=n {
            if (0..n).all(|i| !passive[i] || z[i] > 0.0) {
                break;
            }
            let mut alpha = f64::INFINITY;
            for i in 0..n {
                if passive[i] && z[i] <= 0.0 {
                    alpha = alpha.min(x[i] / (x[i] - z[i]));
                }
            }
            x += (&z - &x) * alpha;
            for i in 0..n {
                if passive[i] && x[i] <= 1e-15 * (1.0 + x.amax()) {
                    passive[i] = false;
                    x[i] = 0.0;
                }
            }
            z = restricted_ls(&a, &b, &passive);
        }
        for i in 0..n {
            x[i] = if passive[i] { z[i].max(0.0) } else { 0.0 };
        }
        blocked.iter_mut().for_each(|f| *f = false);
    }

    let residual = (&a * &x - &b).norm();
    NnlsSolution {
        coefficients: x.iter().copied().collect(),
        residual,
    }
}
