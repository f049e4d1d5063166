//! Catastrophic forgetting in overparameterized latent-space linear regression.
//!
//! Two regression tasks share responses `y`; task B sees the task-A features
//! through a random orthogonal map (or a permutation). Training the
//! min-norm interpolator on A and then on B, initialized at the A solution,
//! raises the task-A risk by an amount that shrinks as the number of features
//! `p` grows relative to the sample count `n`. This crate simulates that
//! setting, evaluates the risks in closed form, computes the high-probability
//! bound `(66 sqrt(n/p) + 12/(p gamma)) |theta|^2` on the increase, and checks
//! the supporting random-matrix facts by Monte Carlo.
//!
//! Modules, bottom-up: [`linalg`] (seeded sampling, projectors, solvers),
//! [`model`] (problem instances), [`estimate`] (the three interpolators),
//! [`theory`] (risks and the bound), [`oracles`] (Monte Carlo lemma checks),
//! [`harness`] (parameter sweeps, CSV and SVG output, CLI).

pub mod error;
pub mod estimate;
pub mod harness;
pub mod linalg;
pub mod model;
pub mod oracles;
pub mod parallel;
pub mod theory;

pub use error::{Error, Result};
