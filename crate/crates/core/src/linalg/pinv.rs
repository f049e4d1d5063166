use super::Matrix;

/// Singular values below this fraction of the largest are treated as zero.
const CUTOFF: f64 = 1e-12;

/// Moore-Penrose pseudoinverse from a full SVD.
pub fn pinv_svd(x: &Matrix) -> Matrix {
    let (rows, cols) = x.shape();
    if rows == 0 || cols == 0 {
        return Matrix::zeros(cols, rows);
    }
    let svd = x.clone().svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let s = &svd.singular_values;
    let threshold = CUTOFF * s.max();
    let mut out = Matrix::zeros(cols, rows);
    for (k, &sk) in s.iter().enumerate() {
        if sk > threshold {
            // out += v_k u_k^T / s_k
            out.ger(1.0 / sk, &v_t.row(k).transpose(), &u.column(k), 1.0);
        }
    }
    out
}

/// Singular values of `x` in no particular order.
pub fn singular_values(x: &Matrix) -> Vec<f64> {
    x.singular_values().iter().copied().collect()
}
