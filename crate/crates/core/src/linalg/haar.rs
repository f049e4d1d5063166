//! Haar-distributed orthogonal matrices and uniform random permutations.
//!
//! A Haar orthogonal matrix is sampled as the sign-corrected `Q` factor of a
//! Householder QR factorization of an i.i.d. standard Gaussian matrix. The
//! factorization is done lazily: the `k`-th reflector is built from a fresh
//! `N(0, I_{p-k})` vector, which has the same law as the `k`-th trailing
//! column after the first `k` reflections (rotational invariance). The result
//! is kept in factored form, so applying `Q` to a vector costs `O(p^2)` and
//! applying it to the rows of an `n x p` matrix costs `O(n p^2)` instead of the
//! `O(p^3)` needed to materialize `Q`.

use nalgebra::DVector;
use rand::seq::SliceRandom;

use super::rng::SeededRng;
use super::{Matrix, Vector};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Reflector {
    /// First coordinate the reflector acts on.
    offset: usize,
    v: DVector<f64>,
    tau: f64,
}

impl Reflector {
    fn sample(dim: usize, offset: usize, rng: &mut SeededRng) -> (Reflector, f64) {
        let mut g = vec![0.0; dim - offset];
        rng.fill_standard_normal(&mut g);
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        let s = if g[0] >= 0.0 { 1.0 } else { -1.0 };
        if norm == 0.0 {
            let v = DVector::from_vec(g);
            return (
                Reflector {
                    offset,
                    v,
                    tau: 0.0,
                },
                1.0,
            );
        }
        // H g = alpha e_0 with alpha = -s ||g||; R_kk = alpha.
        g[0] += s * norm;
        // v^T v = 2 ||g|| (||g|| + |g_0|) = 2 ||g|| |v_0|
        let vtv = 2.0 * norm * g[0].abs();
        let v = DVector::from_vec(g);
        let tau = 2.0 / vtv;
        (Reflector { offset, v, tau }, -s)
    }

    /// x[offset..] <- H x[offset..]
    fn apply(&self, x: &mut [f64]) {
        let tail = &mut x[self.offset..];
        let dot: f64 = tail.iter().zip(self.v.iter()).map(|(a, b)| a * b).sum();
        let scale = self.tau * dot;
        for (a, b) in tail.iter_mut().zip(self.v.iter()) {
            *a -= scale * b;
        }
    }

    /// M[:, offset..] <- M[:, offset..] H
    fn apply_right(&self, m: &mut Matrix, work: &mut DVector<f64>) {
        let mut block = m.columns_range_mut(self.offset..);
        work.gemv(1.0, &block, &self.v, 0.0);
        block.ger(-self.tau, work, &self.v, 1.0);
    }

    /// M[offset.., :] <- H M[offset.., :]
    fn apply_left(&self, m: &mut Matrix, work: &mut DVector<f64>) {
        let mut block = m.rows_range_mut(self.offset..);
        work.gemv_tr(1.0, &block, &self.v, 0.0);
        block.ger(-self.tau, &self.v, work, 1.0);
    }
}

/// A Haar-random `p x p` orthogonal matrix `Q = H_0 H_1 ... H_{p-1} D` held as
/// Householder reflectors `H_k` and the sign correction `D = diag(sign R_kk)`.
#[derive(Clone, Debug)]
pub struct HaarOrthogonal {
    dim: usize,
    reflectors: Vec<Reflector>,
    signs: Vec<f64>,
}

impl HaarOrthogonal {
    pub fn sample(p: usize, rng: &mut SeededRng) -> Result<Self> {
        Self::sample_partial(p, p, rng)
    }

    fn sample_partial(p: usize, count: usize, rng: &mut SeededRng) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidDimension(
                "orthogonal matrix dimension must be at least 1".into(),
            ));
        }
        let mut reflectors = Vec::with_capacity(count);
        let mut signs = Vec::with_capacity(count);
        for k in 0..count {
            let (h, s) = Reflector::sample(p, k, rng);
            reflectors.push(h);
            signs.push(s);
        }
        Ok(HaarOrthogonal {
            dim: p,
            reflectors,
            signs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// x <- Q x
    pub fn apply_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        for (xi, s) in x.iter_mut().zip(&self.signs) {
            *xi *= s;
        }
        for h in self.reflectors.iter().rev() {
            h.apply(x);
        }
    }

    /// x <- Q^T x
    pub fn apply_transpose_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        for h in &self.reflectors {
            h.apply(x);
        }
        for (xi, s) in x.iter_mut().zip(&self.signs) {
            *xi *= s;
        }
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = v.clone();
        self.apply_in_place(out.as_mut_slice());
        out
    }

    pub fn apply_transpose(&self, v: &Vector) -> Vector {
        let mut out = v.clone();
        self.apply_transpose_in_place(out.as_mut_slice());
        out
    }

    /// Returns `X Q^T`, i.e. every row `x_i` of `X` replaced by `Q x_i`.
    pub fn apply_to_rows(&self, x: &Matrix) -> Matrix {
        assert_eq!(x.ncols(), self.dim, "row length must match Q");
        let mut y = x.clone();
        for (j, s) in self.signs.iter().enumerate() {
            if *s < 0.0 {
                y.column_mut(j).neg_mut();
            }
        }
        let mut work = DVector::zeros(x.nrows());
        for h in self.reflectors.iter().rev() {
            h.apply_right(&mut y, &mut work);
        }
        y
    }

    pub fn to_matrix(&self) -> Matrix {
        self.apply_to_rows(&Matrix::identity(self.dim, self.dim))
            .transpose()
    }
}

/// First `k` columns of a Haar orthogonal `p x p` matrix. Only the leading `k`
/// reflectors are drawn; they coincide with the first `k` reflectors that
/// [`HaarOrthogonal::sample`] would draw from the same stream.
pub fn haar_leading_columns(p: usize, k: usize, rng: &mut SeededRng) -> Result<Matrix> {
    if k > p {
        return Err(Error::InvalidDimension(format!(
            "cannot take {k} columns of a {p} x {p} matrix"
        )));
    }
    let q = HaarOrthogonal::sample_partial(p, k, rng)?;
    let mut m = Matrix::zeros(p, k);
    for (j, s) in q.signs.iter().enumerate() {
        m[(j, j)] = *s;
    }
    let mut work = DVector::zeros(k);
    for h in q.reflectors.iter().rev() {
        h.apply_left(&mut m, &mut work);
    }
    Ok(m)
}

/// Dense Haar-distributed orthogonal matrix.
pub fn haar_orthogonal(p: usize, rng: &mut SeededRng) -> Result<Matrix> {
    Ok(HaarOrthogonal::sample(p, rng)?.to_matrix())
}

/// Permutation matrix `P` with `P[i, map[i]] = 1`, so `(P x)_i = x[map[i]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Uniform over the symmetric group (Fisher-Yates shuffle).
    pub fn sample(p: usize, rng: &mut SeededRng) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidDimension(
                "permutation dimension must be at least 1".into(),
            ));
        }
        let mut map: Vec<usize> = (0..p).collect();
        map.shuffle(rng);
        Ok(Permutation { map })
    }

    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            if i >= map.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidDimension(format!(
                    "{map:?} is not a permutation"
                )));
            }
        }
        Ok(Permutation { map })
    }

    pub fn dim(&self) -> usize {
        self.map.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector::from_fn(self.map.len(), |i, _| v[self.map[i]])
    }

    pub fn apply_transpose(&self, v: &Vector) -> Vector {
        let mut out = Vector::zeros(self.map.len());
        for (i, &j) in self.map.iter().enumerate() {
            out[j] = v[i];
        }
        out
    }

    /// Returns `X P^T`: column `i` of the result is column `map[i]` of `X`.
    pub fn apply_to_rows(&self, x: &Matrix) -> Matrix {
        Matrix::from_fn(x.nrows(), x.ncols(), |r, c| x[(r, self.map[c])])
    }

    pub fn to_matrix(&self) -> Matrix {
        let p = self.map.len();
        let mut m = Matrix::zeros(p, p);
        for (i, &j) in self.map.iter().enumerate() {
            m[(i, j)] = 1.0;
        }
        m
    }
}

/// Dense uniformly random permutation matrix.
pub fn random_permutation(p: usize, rng: &mut SeededRng) -> Result<Matrix> {
    Ok(Permutation::sample(p, rng)?.to_matrix())
}
