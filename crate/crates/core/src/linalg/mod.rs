//! Dense linear-algebra primitives shared by the rest of the crate.

mod haar;
mod pinv;
mod rng;
mod solve;

pub use haar::{
    haar_leading_columns, haar_orthogonal, random_permutation, HaarOrthogonal, Permutation,
};
pub use pinv::{pinv_svd, singular_values};
pub use rng::{derive_seed, streams, SeededRng};
pub use solve::{min_norm_solve, projector_onto_columns, Cholesky, Projector};

/// Dense `f64` matrix (column-major storage).
pub type Matrix = nalgebra::DMatrix<f64>;
/// Dense `f64` column vector.
pub type Vector = nalgebra::DVector<f64>;

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).amax()
}
