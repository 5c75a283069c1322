//! Test-only numerical oracles, kept independent of the faer-backed paths
//! they are used to check.

use ndarray::{Array1, Array2, ArrayView2};

/// Cyclic Jacobi eigendecomposition for symmetric matrices.
///
/// Slow but self-contained; serves as the independent route against which
/// the production eigendecomposition and everything built on it is tested.
/// Returns eigenvalues ascending with matching eigenvector columns.
pub fn jacobi_eigh(a: ArrayView2<'_, f64>) -> (Array1<f64>, Array2<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.to_owned();
    let mut v = Array2::<f64>::eye(n);

    for _sweep in 0..200 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[[i, j]] * m[[i, j]];
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + frobenius(&m)) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[[q, q]] - m[[p, p]]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = c * mkp - s * mkq;
                    m[[k, q]] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = c * mpk - s * mqk;
                    m[[q, k]] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[[i, i]].total_cmp(&m[[j, j]]));
    let values = Array1::from_iter(order.iter().map(|&i| m[[i, i]]));
    let vectors = Array2::from_shape_fn((n, n), |(i, j)| v[[i, order[j]]]);
    (values, vectors)
}

/// Pseudoinverse square root and kernel projector via the Jacobi route.
pub fn jacobi_inv_sqrt(a: ArrayView2<'_, f64>, rel_tol: f64) -> (Array2<f64>, Array2<f64>) {
    let n = a.nrows();
    let (w, v) = jacobi_eigh(a);
    let lambda_max = w.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = rel_tol * lambda_max;
    let mut inv_sqrt = Array2::<f64>::zeros((n, n));
    let mut kernel = Array2::<f64>::zeros((n, n));
    for k in 0..n {
        let col = v.column(k);
        if w[k] <= cutoff {
            for i in 0..n {
                for j in 0..n {
                    kernel[[i, j]] += col[i] * col[j];
                }
            }
        } else {
            let scale = 1.0 / w[k].sqrt();
            for i in 0..n {
                for j in 0..n {
                    inv_sqrt[[i, j]] += scale * col[i] * col[j];
                }
            }
        }
    }
    (inv_sqrt, kernel)
}

fn frobenius(a: &Array2<f64>) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn jacobi_diagonalizes_a_known_matrix() {
        let a = array![[2.0, 1.0], [1.0, 2.0]];
        let (w, v) = jacobi_eigh(a.view());
        assert!((w[0] - 1.0).abs() < 1e-12);
        assert!((w[1] - 3.0).abs() < 1e-12);
        let recomposed = v.dot(&Array2::from_diag(&w)).dot(&v.t());
        for (x, y) in a.iter().zip(recomposed.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
