//! Cholesky-based projectors and minimum-norm interpolation.

use super::{Matrix, Vector};
use crate::error::{Error, Result};

/// Relative jitter added to the diagonal on the single retry.
const JITTER: f64 = 1e-12;
/// A projector is refused once the pivot ratio exceeds this.
const MAX_CONDITION: f64 = 1e10;

/// Lower-triangular Cholesky factor `L` with `G = L L^T`.
#[derive(Clone, Debug)]
pub struct Cholesky {
    l: Matrix,
}

impl Cholesky {
    /// Returns `None` when `g` is not numerically positive definite.
    pub fn factor(g: &Matrix) -> Option<Cholesky> {
        let n = g.nrows();
        assert_eq!(n, g.ncols(), "Cholesky needs a square matrix");
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut diag = g[(j, j)];
            for k in 0..j {
                diag -= l[(j, k)] * l[(j, k)];
            }
            if !diag.is_finite() || diag <= 0.0 {
                return None;
            }
            let pivot = diag.sqrt();
            l[(j, j)] = pivot;
            for i in (j + 1)..n {
                let mut s = g[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / pivot;
            }
        }
        Some(Cholesky { l })
    }

    /// Factor, retrying once with `1e-12 * trace / n` added to the diagonal.
    pub fn factor_with_jitter(g: &Matrix) -> Result<Cholesky> {
        if let Some(c) = Cholesky::factor(g) {
            return Ok(c);
        }
        let n = g.nrows().max(1);
        let shift = JITTER * g.trace() / n as f64;
        let mut shifted = g.clone();
        for i in 0..g.nrows() {
            shifted[(i, i)] += shift;
        }
        Cholesky::factor(&shifted).ok_or(Error::Singular {
            condition: f64::INFINITY,
        })
    }

    pub fn dim(&self) -> usize {
        self.l.nrows()
    }

    pub fn factor_l(&self) -> &Matrix {
        &self.l
    }

    /// Ratio of the largest to the smallest pivot. For a Gram matrix `B B^T`
    /// this estimates `sigma_max(B) / sigma_min(B)`.
    pub fn condition_estimate(&self) -> f64 {
        let d = self.l.diagonal();
        if d.is_empty() {
            return 1.0;
        }
        d.max() / d.min()
    }

    /// z <- L^{-1} b
    pub fn forward(&self, b: &Vector) -> Vector {
        let n = self.dim();
        let mut z = b.clone();
        for i in 0..n {
            let mut s = z[i];
            for k in 0..i {
                s -= self.l[(i, k)] * z[k];
            }
            z[i] = s / self.l[(i, i)];
        }
        z
    }

    /// x <- L^{-T} z
    pub fn backward(&self, z: &Vector) -> Vector {
        let n = self.dim();
        let mut x = z.clone();
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in (i + 1)..n {
                s -= self.l[(k, i)] * x[k];
            }
            x[i] = s / self.l[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &Vector) -> Vector {
        self.backward(&self.forward(b))
    }
}

/// Orthogonal projector onto the row space of a full-row-rank `k x p` matrix
/// `B`, i.e. `P = B^T (B B^T)^{-1} B`. Never formed densely unless asked for.
#[derive(Clone, Debug)]
pub struct Projector {
    rows: Matrix,
    chol: Cholesky,
}

impl Projector {
    /// Projector onto `range(X^T)`.
    pub fn onto_rows(x: &Matrix) -> Result<Self> {
        if x.nrows() > x.ncols() {
            return Err(Error::InvalidDimension(format!(
                "row-space projector needs at most as many rows as columns, got {} x {}",
                x.nrows(),
                x.ncols()
            )));
        }
        let gram = x * x.transpose();
        let chol = Cholesky::factor(&gram).ok_or(Error::Singular {
            condition: f64::INFINITY,
        })?;
        let condition = chol.condition_estimate();
        if condition > MAX_CONDITION {
            return Err(Error::Singular { condition });
        }
        Ok(Projector {
            rows: x.clone(),
            chol,
        })
    }

    /// Projector onto `range(M)` for `M` with full column rank.
    pub fn onto_columns(m: &Matrix) -> Result<Self> {
        Self::onto_rows(&m.transpose())
    }

    /// Row-space factorization used by the interpolating solver: no condition
    /// cut-off, one jitter retry, and `n > p` rejected as out of regime.
    pub fn for_solve(x: &Matrix) -> Result<Self> {
        let (n, p) = x.shape();
        if n > p {
            return Err(Error::UnsupportedRegime { n, p });
        }
        let gram = x * x.transpose();
        let chol = Cholesky::factor_with_jitter(&gram)?;
        Ok(Projector {
            rows: x.clone(),
            chol,
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows.ncols()
    }

    pub fn condition_estimate(&self) -> f64 {
        self.chol.condition_estimate()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let coeffs = self.chol.solve(&(&self.rows * v));
        self.rows.tr_mul(&coeffs)
    }

    /// `||P v||^2 = ||L^{-1} B v||^2`, without forming `P v`.
    pub fn norm_sq(&self, v: &Vector) -> f64 {
        self.chol.forward(&(&self.rows * v)).norm_squared()
    }

    pub fn to_matrix(&self) -> Matrix {
        let k = self.rank();
        let mut ginv_b = Matrix::zeros(k, self.ambient_dim());
        for (j, col) in self.rows.column_iter().enumerate() {
            ginv_b.set_column(j, &self.chol.solve(&col.into_owned()));
        }
        self.rows.tr_mul(&ginv_b)
    }

    /// Minimum-distance interpolator: `argmin ||b - b0||` subject to `X b = y`,
    /// i.e. `b0 + X^T (X X^T)^{-1} (y - X b0)`.
    pub fn min_norm_solve(&self, y: &Vector, beta0: &Vector) -> Result<Vector> {
        check_len("response", self.rank(), y.len())?;
        check_len("initialization", self.ambient_dim(), beta0.len())?;
        let residual = y - &self.rows * beta0;
        let coeffs = self.chol.solve(&residual);
        Ok(beta0 + self.rows.tr_mul(&coeffs))
    }
}

fn check_len(what: &str, expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: format!("{what} of length {expected}"),
            actual: format!("length {actual}"),
        })
    }
}

/// Dense `M (M^T M)^{-1} M^T`.
pub fn projector_onto_columns(m: &Matrix) -> Result<Matrix> {
    Ok(Projector::onto_columns(m)?.to_matrix())
}

/// Solves `argmin ||b - beta0||` subject to `X b = y` for `X` of shape `n x p`, `n <= p`.
pub fn min_norm_solve(x: &Matrix, y: &Vector, beta0: &Vector) -> Result<Vector> {
    Projector::for_solve(x)?.min_norm_solve(y, beta0)
}
