//! Gram-Schmidt QR of a tall real matrix.

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;

/// Column `i` is declared dependent when its residual norm falls to this
/// fraction of its original norm.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Thin QR factorization `h = q * r` by Gram-Schmidt.
///
/// `q` has orthonormal columns and `r` is upper triangular with a strictly
/// positive diagonal, so `r[j][i] = <q_j, h_i>` and `r[i][i] = ||r_i||`.
/// Each column is orthogonalized twice against its predecessors (modified
/// update order) and the corrections are accumulated into `r`.
pub fn gram_schmidt_qr(h: &RealMatrix) -> Result<(RealMatrix, RealMatrix)> {
    let (m, n) = h.shape();
    if m < n {
        return Err(Error::Underdetermined { rows: m, cols: n });
    }

    let mut qs: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut r = RealMatrix::zeros(n, n);

    for i in 0..n {
        let hi = h.column(i);
        let h_norm = norm(&hi);
        let mut v = hi;
        for _pass in 0..2 {
            for (j, qj) in qs.iter().enumerate() {
                let c = dot(qj, &v);
                axpy(-c, qj, &mut v);
                r.set(j, i, r.get(j, i) + c);
            }
        }
        let v_norm = norm(&v);
        if v_norm <= RANK_TOLERANCE * h_norm || v_norm == 0.0 {
            return Err(Error::RankDeficient { column: i });
        }
        v.iter_mut().for_each(|x| *x /= v_norm);
        r.set(i, i, v_norm);
        qs.push(v);
    }

    Ok((RealMatrix::from_columns(&qs)?, r))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
