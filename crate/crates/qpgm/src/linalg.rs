//! Dense symmetric linear algebra shared by the classifiers.

use ndarray::{s, Array1, Array2, ArrayView1, ArrayView2};

/// Eigendecomposition of a symmetric matrix.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvalues in ascending order
/// and eigenvectors as columns, so `a == V diag(w) V^T`.
pub fn eigh_sym(a: ArrayView2<'_, f64>) -> (Array1<f64>, Array2<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eigh_sym expects a square matrix");
    let m = faer::Mat::from_fn(n, n, |i, j| a[[i, j]]);
    let eig = m
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("symmetric eigendecomposition failed to converge");
    let s = eig.S().column_vector();
    let u = eig.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].total_cmp(&s[j]));
    let values = Array1::from_iter(order.iter().map(|&i| s[i]));
    let vectors = Array2::from_shape_fn((n, n), |(i, j)| u[(i, order[j])]);
    (values, vectors)
}

/// Kronecker product of two matrices.
pub fn kron(a: ArrayView2<'_, f64>, b: ArrayView2<'_, f64>) -> Array2<f64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let scale = a[[i, j]];
            if scale == 0.0 {
                continue;
            }
            let mut block = out.slice_mut(s![i * br..(i + 1) * br, j * bc..(j + 1) * bc]);
            block.scaled_add(scale, &b);
        }
    }
    out
}

/// Kronecker product of two vectors.
pub fn vec_kron(a: ArrayView1<'_, f64>, b: ArrayView1<'_, f64>) -> Array1<f64> {
    let mut out = Array1::zeros(a.len() * b.len());
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        let mut block = out.slice_mut(s![i * b.len()..(i + 1) * b.len()]);
        block.scaled_add(ai, &b);
    }
    out
}

/// n-fold Kronecker power of a vector.
pub fn vec_tensor_power(v: ArrayView1<'_, f64>, n: usize) -> Array1<f64> {
    assert!(n >= 1, "tensor power requires n >= 1");
    let mut out = v.to_owned();
    for _ in 1..n {
        out = vec_kron(out.view(), v);
    }
    out
}

/// Quadratic form v^T F v.
pub fn quad_form(f: ArrayView2<'_, f64>, v: ArrayView1<'_, f64>) -> f64 {
    f.dot(&v).dot(&v)
}

/// Replace `a` by its symmetric part (a + a^T)/2.
pub fn symmetrize(a: &mut Array2<f64>) {
    let n = a.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (a[[i, j]] + a[[j, i]]);
            a[[i, j]] = m;
            a[[j, i]] = m;
        }
    }
}

/// Largest absolute asymmetry |a_ij - a_ji|.
pub fn max_asymmetry(a: ArrayView2<'_, f64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((a[[i, j]] - a[[j, i]]).abs());
        }
    }
    worst
}

/// Largest absolute entry of a - I.
pub fn max_dev_from_identity(a: ArrayView2<'_, f64>) -> f64 {
    let mut worst = 0.0f64;
    for ((i, j), &v) in a.indexed_iter() {
        let target = if i == j { 1.0 } else { 0.0 };
        worst = worst.max((v - target).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn eigh_recomposes_the_input() {
        let a = array![[2.0, 1.0, 0.0], [1.0, 3.0, 0.5], [0.0, 0.5, 1.0]];
        let (w, v) = eigh_sym(a.view());
        assert!(w.windows(2).into_iter().all(|p| p[0] <= p[1]));
        let recomposed = v.dot(&Array2::from_diag(&w)).dot(&v.t());
        for (x, y) in a.iter().zip(recomposed.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
        // eigenvectors orthonormal
        assert!(max_dev_from_identity(v.t().dot(&v).view()) < 1e-12);
    }

    #[test]
    fn kron_matches_hand_expansion() {
        let a = array![[1.0, 2.0], [3.0, 4.0]];
        let b = array![[0.0, 1.0], [1.0, 0.0]];
        let k = kron(a.view(), b.view());
        let expected = array![
            [0.0, 1.0, 0.0, 2.0],
            [1.0, 0.0, 2.0, 0.0],
            [0.0, 3.0, 0.0, 4.0],
            [3.0, 0.0, 4.0, 0.0]
        ];
        assert_eq!(k, expected);
    }

    #[test]
    fn vec_kron_agrees_with_matrix_kron_on_outer_products() {
        let u = array![1.0, -2.0, 0.5];
        let v = array![0.25, 3.0];
        let w = vec_kron(u.view(), v.view());
        assert_eq!(w.len(), 6);
        for i in 0..3 {
            for j in 0..2 {
                assert_eq!(w[i * 2 + j], u[i] * v[j]);
            }
        }
    }
}
