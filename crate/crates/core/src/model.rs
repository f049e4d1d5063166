//! Latent space model (LSM) instances and the equivalent anisotropic
//! regression model (ARM).
//!
//! An LSM example draws latent features `z ~ N(0, I_d)`, a noiseless response
//! `y = z^T theta`, and observed features `x = W z + u` with `u ~ N(0, I_p)`.
//! `W` is `sqrt(p gamma)` times `d` orthonormal columns spanning a Haar-random
//! subspace, so `W^T W = p gamma I_d`. The pair `(y, x)` has the same law as an
//! ARM with `x ~ N(0, Sigma)`, `y = x^T beta + eps`, where
//!
//! ```text
//! Sigma  = W W^T + I_p            = p gamma P_W + I_p
//! beta   = W (W^T W + I_d)^{-1} theta = W theta / (p gamma + 1)
//! sigma2 = theta^T (W^T W + I_d)^{-1} theta = |theta|^2 / (p gamma + 1)
//! ```
//!
//! Task B reuses `y` with features `X_B = X_A T^T` for a random orthogonal or
//! permutation `T`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{
    haar_leading_columns, streams, Cholesky, HaarOrthogonal, Matrix, Permutation, Projector,
    SeededRng, Vector,
};

/// Tolerated `max |W^T W - p gamma I| / (p gamma)` before the ARM shortcuts are refused.
const ASSUMPTION_TOL: f64 = 1e-6;
const SAMPLE_CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Orthogonal,
    Permutation,
    /// Task B equals task A. Not part of the studied model; a control case.
    Identity,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Orthogonal => "orthogonal",
            RelationKind::Permutation => "permutation",
            RelationKind::Identity => "identity",
        })
    }
}

impl FromStr for RelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "orthogonal" => Ok(RelationKind::Orthogonal),
            "permutation" => Ok(RelationKind::Permutation),
            "identity" => Ok(RelationKind::Identity),
            other => Err(Error::Config(format!(
                "unknown relation {other:?} (expected orthogonal, permutation or identity)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelConfig {
    pub d: usize,
    pub n: usize,
    pub p: usize,
    pub gamma: f64,
    pub theta: Vector,
    pub relation: RelationKind,
    pub seed: u64,
}

impl ModelConfig {
    pub fn new(
        d: usize,
        n: usize,
        p: usize,
        gamma: f64,
        theta: Vector,
        relation: RelationKind,
        seed: u64,
    ) -> Result<Self> {
        let config = ModelConfig {
            d,
            n,
            p,
            gamma,
            theta,
            relation,
            seed,
        };
        config.validate()?;
        Ok(config)
    }

    /// Same as [`ModelConfig::new`] with `theta ~ N(0, I_d)` drawn from the
    /// seed's dedicated theta stream.
    pub fn with_gaussian_theta(
        d: usize,
        n: usize,
        p: usize,
        gamma: f64,
        relation: RelationKind,
        seed: u64,
    ) -> Result<Self> {
        Self::new(d, n, p, gamma, sample_theta(d, seed), relation, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 1 {
            return Err(Error::Config(
                "latent dimension d must be at least 1".into(),
            ));
        }
        if self.n < self.d {
            return Err(Error::Config(format!(
                "need n >= d, got n = {} and d = {}",
                self.n, self.d
            )));
        }
        if self.p <= self.n {
            return Err(Error::Config(format!(
                "need p > n, got p = {} and n = {}",
                self.p, self.n
            )));
        }
        if !self.gamma.is_finite() || self.gamma <= 0.0 {
            return Err(Error::Config(format!(
                "gamma must be positive and finite, got {}",
                self.gamma
            )));
        }
        if self.theta.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: format!("theta of length d = {}", self.d),
                actual: format!("length {}", self.theta.len()),
            });
        }
        if self.theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::Config("theta has non-finite entries".into()));
        }
        Ok(())
    }

    pub fn theta_norm2(&self) -> f64 {
        self.theta.norm_squared()
    }
}

pub fn sample_theta(d: usize, seed: u64) -> Vector {
    SeededRng::new(seed, streams::THETA).gaussian_vector(d)
}

/// The map `T` relating the two tasks, kept in operator form.
#[derive(Clone, Debug)]
pub enum TaskRelation {
    Orthogonal(HaarOrthogonal),
    Permutation(Permutation),
    Identity(usize),
}

impl TaskRelation {
    pub fn sample(kind: RelationKind, p: usize, rng: &mut SeededRng) -> Result<Self> {
        Ok(match kind {
            RelationKind::Orthogonal => TaskRelation::Orthogonal(HaarOrthogonal::sample(p, rng)?),
            RelationKind::Permutation => TaskRelation::Permutation(Permutation::sample(p, rng)?),
            RelationKind::Identity => TaskRelation::Identity(p),
        })
    }

    pub fn kind(&self) -> RelationKind {
        match self {
            TaskRelation::Orthogonal(_) => RelationKind::Orthogonal,
            TaskRelation::Permutation(_) => RelationKind::Permutation,
            TaskRelation::Identity(_) => RelationKind::Identity,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TaskRelation::Orthogonal(q) => q.dim(),
            TaskRelation::Permutation(perm) => perm.dim(),
            TaskRelation::Identity(p) => *p,
        }
    }

    /// `T v`
    pub fn apply(&self, v: &Vector) -> Vector {
        match self {
            TaskRelation::Orthogonal(q) => q.apply(v),
            TaskRelation::Permutation(perm) => perm.apply(v),
            TaskRelation::Identity(_) => v.clone(),
        }
    }

    /// `T^T v`
    pub fn apply_transpose(&self, v: &Vector) -> Vector {
        match self {
            TaskRelation::Orthogonal(q) => q.apply_transpose(v),
            TaskRelation::Permutation(perm) => perm.apply_transpose(v),
            TaskRelation::Identity(_) => v.clone(),
        }
    }

    /// `X T^T`
    pub fn apply_to_rows(&self, x: &Matrix) -> Matrix {
        match self {
            TaskRelation::Orthogonal(q) => q.apply_to_rows(x),
            TaskRelation::Permutation(perm) => perm.apply_to_rows(x),
            TaskRelation::Identity(_) => x.clone(),
        }
    }

    /// Dense `p x p` form; `O(p^3)` for the orthogonal case.
    pub fn to_matrix(&self) -> Matrix {
        match self {
            TaskRelation::Orthogonal(q) => q.to_matrix(),
            TaskRelation::Permutation(perm) => perm.to_matrix(),
            TaskRelation::Identity(p) => Matrix::identity(*p, *p),
        }
    }
}

/// One realized draw of both tasks.
#[derive(Clone, Debug)]
pub struct TaskPair {
    pub w: Matrix,
    pub x_a: Matrix,
    pub y: Vector,
    pub relation: TaskRelation,
    pub x_b: Matrix,
    pub z: Matrix,
    pub u: Matrix,
    pub theta: Vector,
    pub gamma: f64,
}

impl TaskPair {
    pub fn n(&self) -> usize {
        self.x_a.nrows()
    }

    pub fn p(&self) -> usize {
        self.x_a.ncols()
    }

    pub fn d(&self) -> usize {
        self.w.ncols()
    }

    pub fn arm(&self) -> Result<ArmQuantities> {
        arm_quantities(&self.w, &self.theta, self.gamma)
    }
}

/// `sqrt(p gamma)` times the first `d` columns of a Haar orthogonal `p x p` matrix.
pub fn make_w(d: usize, p: usize, gamma: f64, rng: &mut SeededRng) -> Result<Matrix> {
    if d > p {
        return Err(Error::InvalidDimension(format!(
            "latent dimension d = {d} exceeds observed dimension p = {p}"
        )));
    }
    Ok(haar_leading_columns(p, d, rng)? * (p as f64 * gamma).sqrt())
}

/// Draws `count` LSM examples: returns `(X, y)` with rows `x_i = W z_i + u_i`
/// and `y_i = z_i^T theta`.
pub fn sample_lsm_rows(
    w: &Matrix,
    theta: &Vector,
    count: usize,
    rng: &mut SeededRng,
) -> (Matrix, Vector) {
    let z = rng.gaussian_matrix(count, w.ncols());
    let mut x = rng.gaussian_matrix(count, w.nrows());
    x.gemm(1.0, &z, &w.transpose(), 1.0);
    (x, z * theta)
}

/// Task A only: everything in a [`TaskPair`] except the relation and `X_B`.
#[derive(Clone, Debug)]
pub struct TaskA {
    pub w: Matrix,
    pub x_a: Matrix,
    pub y: Vector,
    pub z: Matrix,
    pub u: Matrix,
}

/// Draws task A from the streams of `config.seed`; [`generate_task_pair`]
/// draws the identical task A.
pub fn generate_task_a(config: &ModelConfig) -> Result<TaskA> {
    config.validate()?;
    let ModelConfig { d, n, p, gamma, .. } = *config;
    let seed = config.seed;
    let w = make_w(d, p, gamma, &mut SeededRng::new(seed, streams::FEATURE_MAP))?;
    let z = SeededRng::new(seed, streams::LATENT).gaussian_matrix(n, d);
    let u = SeededRng::new(seed, streams::FEATURE_NOISE).gaussian_matrix(n, p);
    let y = &z * &config.theta;
    let mut x_a = u.clone();
    x_a.gemm(1.0, &z, &w.transpose(), 1.0);
    Ok(TaskA { w, x_a, y, z, u })
}

pub fn sample_relation(config: &ModelConfig) -> Result<TaskRelation> {
    TaskRelation::sample(
        config.relation,
        config.p,
        &mut SeededRng::new(config.seed, streams::RELATION),
    )
}

pub fn generate_task_pair(config: &ModelConfig) -> Result<TaskPair> {
    let TaskA { w, x_a, y, z, u } = generate_task_a(config)?;
    let relation = sample_relation(config)?;
    let x_b = relation.apply_to_rows(&x_a);
    Ok(TaskPair {
        w,
        x_a,
        y,
        relation,
        x_b,
        z,
        u,
        theta: config.theta.clone(),
        gamma: config.gamma,
    })
}

/// ARM parameters with `Sigma` kept factored as `p gamma P_W + I`.
#[derive(Clone, Debug)]
pub struct ArmQuantities {
    pub p_gamma: f64,
    pub w: Matrix,
    pub proj_w: Projector,
    pub beta: Vector,
    pub sigma2: f64,
    pub theta_norm2: f64,
}

impl ArmQuantities {
    pub fn dim(&self) -> usize {
        self.w.nrows()
    }

    /// `v^T Sigma v = p gamma |P_W v|^2 + |v|^2`
    pub fn quad_form(&self, v: &Vector) -> f64 {
        self.p_gamma * self.proj_w.norm_sq(v) + v.norm_squared()
    }

    /// Dense `W W^T + I`.
    pub fn sigma_dense(&self) -> Matrix {
        let p = self.dim();
        let mut s = Matrix::identity(p, p);
        s.gemm(1.0, &self.w, &self.w.transpose(), 1.0);
        s
    }

    pub fn assumption_residual(&self) -> f64 {
        assumption_residual(&self.w, self.p_gamma)
    }
}

/// `max |W^T W - p gamma I| / (p gamma)`
pub fn assumption_residual(w: &Matrix, p_gamma: f64) -> f64 {
    let d = w.ncols();
    (w.tr_mul(w) - Matrix::identity(d, d) * p_gamma).amax() / p_gamma
}

pub fn arm_quantities(w: &Matrix, theta: &Vector, gamma: f64) -> Result<ArmQuantities> {
    let (p, d) = w.shape();
    if theta.len() != d {
        return Err(Error::DimensionMismatch {
            expected: format!("theta of length {d}"),
            actual: format!("length {}", theta.len()),
        });
    }
    let p_gamma = p as f64 * gamma;
    let residual = assumption_residual(w, p_gamma);
    if residual > ASSUMPTION_TOL {
        return Err(Error::ModelAssumption(format!(
            "W^T W deviates from p*gamma*I by {residual:.3e} (relative)"
        )));
    }
    let mut m = w.tr_mul(w);
    for i in 0..d {
        m[(i, i)] += 1.0;
    }
    let chol = Cholesky::factor(&m).ok_or(Error::Singular {
        condition: f64::INFINITY,
    })?;
    let c = chol.solve(theta);
    let beta = w * &c;
    let sigma2 = theta.dot(&c);
    Ok(ArmQuantities {
        p_gamma,
        w: w.clone(),
        proj_w: Projector::onto_columns(w)?,
        beta,
        sigma2,
        theta_norm2: theta.norm_squared(),
    })
}

/// Max-entry gap between `(I + W W^T)^{-1} W` (dense `p x p` inverse) and
/// `W (W^T W + I)^{-1}` (`d x d` inverse), for any `W`.
pub fn push_through_discrepancy(w: &Matrix) -> f64 {
    let (p, d) = w.shape();
    let mut big = Matrix::identity(p, p);
    big.gemm(1.0, w, &w.transpose(), 1.0);
    let lhs = big.try_inverse().expect("I + W W^T is positive definite") * w;
    let mut small = w.tr_mul(w);
    for i in 0..d {
        small[(i, i)] += 1.0;
    }
    let rhs = w * small.try_inverse().expect("I + W^T W is positive definite");
    (lhs - rhs).amax()
}

/// Relative Frobenius errors between the empirical second-moment matrix of
/// `(y_i, x_i)` and its ARM closed form, block by block. A block whose closed
/// form is zero reports the absolute error instead.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovarianceErrors {
    /// `E[y^2]` against `|theta|^2`.
    pub response: f64,
    /// `E[y x]` against `W theta`.
    pub cross: f64,
    /// `E[x x^T]` against `I + W W^T`.
    pub features: f64,
    /// Whole `(p + 1) x (p + 1)` matrix.
    pub total: f64,
}

impl CovarianceErrors {
    pub fn max_block(&self) -> f64 {
        self.response.max(self.cross).max(self.features)
    }
}

fn relative_or_absolute(err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        err / scale
    } else {
        err
    }
}

pub fn lsm_arm_covariance_check(
    config: &ModelConfig,
    sample_count: usize,
) -> Result<CovarianceErrors> {
    if config.d < 1 || config.p <= config.d {
        return Err(Error::Config(format!(
            "covariance check needs 1 <= d < p, got d = {}, p = {}",
            config.d, config.p
        )));
    }
    if sample_count == 0 {
        return Err(Error::Config("sample_count must be positive".into()));
    }
    let p = config.p;
    let w = make_w(
        config.d,
        p,
        config.gamma,
        &mut SeededRng::new(config.seed, streams::FEATURE_MAP),
    )?;
    let mut rng = SeededRng::new(config.seed, streams::FRESH_SAMPLES);
    let mut moment = Matrix::zeros(p + 1, p + 1);
    let mut remaining = sample_count;
    while remaining > 0 {
        let chunk = remaining.min(SAMPLE_CHUNK);
        let (x, y) = sample_lsm_rows(&w, &config.theta, chunk, &mut rng);
        let mut joint = Matrix::zeros(chunk, p + 1);
        joint.set_column(0, &y);
        joint.columns_mut(1, p).copy_from(&x);
        moment.gemm_tr(1.0, &joint, &joint, 1.0);
        remaining -= chunk;
    }
    moment /= sample_count as f64;

    let theta_norm2 = config.theta.norm_squared();
    let w_theta = &w * &config.theta;
    let mut sigma = Matrix::identity(p, p);
    sigma.gemm(1.0, &w, &w.transpose(), 1.0);
    let mut analytic = Matrix::zeros(p + 1, p + 1);
    analytic[(0, 0)] = theta_norm2;
    analytic.view_mut((1, 0), (p, 1)).copy_from(&w_theta);
    analytic
        .view_mut((0, 1), (1, p))
        .copy_from(&w_theta.transpose());
    analytic.view_mut((1, 1), (p, p)).copy_from(&sigma);

    let response = relative_or_absolute((moment[(0, 0)] - theta_norm2).abs(), theta_norm2);
    let cross_err = (moment.view((1, 0), (p, 1)) - &w_theta).norm();
    let cross = relative_or_absolute(cross_err, w_theta.norm());
    let features = (moment.view((1, 1), (p, p)) - &sigma).norm() / sigma.norm();
    let total = (&moment - &analytic).norm() / analytic.norm();
    Ok(CovarianceErrors {
        response,
        cross,
        features,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(d: usize, n: usize, p: usize, gamma: f64, relation: RelationKind) -> ModelConfig {
        ModelConfig::with_gaussian_theta(d, n, p, gamma, relation, 17).unwrap()
    }

    #[test]
    fn config_validation() {
        let theta = Vector::zeros(3);
        let ok = |d, n, p, g: f64| {
            ModelConfig::new(d, n, p, g, Vector::zeros(d), RelationKind::Orthogonal, 0).is_ok()
        };
        assert!(ok(3, 3, 4, 1.0));
        assert!(!ok(3, 2, 10, 1.0));
        assert!(!ok(3, 5, 5, 1.0));
        assert!(!ok(3, 5, 10, 0.0));
        assert!(!ok(3, 5, 10, f64::NAN));
        assert!(
            ModelConfig::new(0, 1, 2, 1.0, Vector::zeros(0), RelationKind::Identity, 0).is_err()
        );
        assert!(matches!(
            ModelConfig::new(4, 5, 10, 1.0, theta, RelationKind::Identity, 0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn relation_kind_round_trips() {
        for kind in [
            RelationKind::Orthogonal,
            RelationKind::Permutation,
            RelationKind::Identity,
        ] {
            assert_eq!(kind.to_string().parse::<RelationKind>().unwrap(), kind);
        }
        assert!("rotation".parse::<RelationKind>().is_err());
    }

    #[test]
    fn w_column_norm_for_single_column() {
        let w = make_w(1, 2, 1.0, &mut SeededRng::new(1, 1)).unwrap();
        assert!((w.column(0).norm_squared() - 2.0).abs() <= 1e-10);
    }

    #[test]
    fn w_gram_is_scaled_identity() {
        let w = make_w(3, 40, 0.5, &mut SeededRng::new(2, 1)).unwrap();
        assert!((w.tr_mul(&w) - Matrix::identity(3, 3) * 20.0).amax() <= 1e-8);
    }

    #[test]
    fn w_gram_outer_is_scaled_projector() {
        let w = make_w(4, 25, 1.3, &mut SeededRng::new(3, 1)).unwrap();
        let p_w = crate::linalg::projector_onto_columns(&w).unwrap();
        let outer = &w * w.transpose();
        assert!((outer - p_w * (25.0 * 1.3)).amax() <= 1e-8);
    }

    #[test]
    fn w_rejects_d_above_p() {
        assert!(matches!(
            make_w(5, 4, 1.0, &mut SeededRng::new(0, 0)),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn identity_relation_copies_features() {
        let tasks = generate_task_pair(&config(3, 6, 15, 1.0, RelationKind::Identity)).unwrap();
        assert_eq!(tasks.x_a, tasks.x_b);
    }

    #[test]
    fn task_pair_structure() {
        for kind in [RelationKind::Orthogonal, RelationKind::Permutation] {
            let cfg = config(3, 8, 20, 0.7, kind);
            let tasks = generate_task_pair(&cfg).unwrap();
            assert!(assumption_residual(&tasks.w, 20.0 * 0.7) <= 1e-8);
            assert!((&tasks.z * &cfg.theta - &tasks.y).amax() <= 1e-10);
            let t = tasks.relation.to_matrix();
            assert!((&tasks.x_a * t.transpose() - &tasks.x_b).amax() <= 1e-10);
            let rebuilt = &tasks.z * tasks.w.transpose() + &tasks.u;
            assert!((rebuilt - &tasks.x_a).amax() <= 1e-12);
        }
    }

    #[test]
    fn zero_theta_gives_zero_response() {
        let cfg =
            ModelConfig::new(2, 4, 9, 1.0, Vector::zeros(2), RelationKind::Orthogonal, 5).unwrap();
        let tasks = generate_task_pair(&cfg).unwrap();
        assert!(tasks.y.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = config(2, 5, 12, 1.0, RelationKind::Orthogonal);
        let a = generate_task_pair(&cfg).unwrap();
        let b = generate_task_pair(&cfg).unwrap();
        assert_eq!(a.x_b, b.x_b);
        assert_eq!(a.y, b.y);
    }

    #[test]
    fn arm_closed_forms() {
        let cfg = config(4, 10, 30, 0.8, RelationKind::Orthogonal);
        let tasks = generate_task_pair(&cfg).unwrap();
        let arm = tasks.arm().unwrap();
        let pg: f64 = 30.0 * 0.8;
        let t2 = cfg.theta_norm2();
        assert!((arm.beta.norm() - pg.sqrt() / (pg + 1.0) * t2.sqrt()).abs() <= 1e-10);
        assert!((arm.sigma2 - t2 / (pg + 1.0)).abs() <= 1e-10 * t2);
        assert!((&arm.beta - &tasks.w * &cfg.theta / (pg + 1.0)).amax() <= 1e-12);
        // beta lies in range(W)
        assert!((arm.proj_w.apply(&arm.beta) - &arm.beta).amax() <= 1e-8);
        let v = SeededRng::new(1, 9).gaussian_vector(30);
        let dense = v.dot(&(arm.sigma_dense() * &v));
        assert!((arm.quad_form(&v) - dense).abs() <= 1e-9 * dense);
    }

    #[test]
    fn arm_sigma_spectrum() {
        let w = make_w(2, 7, 1.0, &mut SeededRng::new(4, 1)).unwrap();
        let arm = arm_quantities(&w, &Vector::from_vec(vec![1.0, -1.0]), 1.0).unwrap();
        let mut eig: Vec<f64> = arm
            .sigma_dense()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        eig.sort_by(f64::total_cmp);
        for e in &eig[..5] {
            assert!((e - 1.0).abs() < 1e-10);
        }
        for e in &eig[5..] {
            assert!((e - 8.0).abs() < 1e-10);
        }
    }

    #[test]
    fn arm_zero_theta() {
        let w = make_w(3, 10, 1.0, &mut SeededRng::new(5, 1)).unwrap();
        let arm = arm_quantities(&w, &Vector::zeros(3), 1.0).unwrap();
        assert_eq!(arm.beta, Vector::zeros(10));
        assert_eq!(arm.sigma2, 0.0);
    }

    #[test]
    fn arm_rejects_general_w() {
        let w = SeededRng::new(6, 0).gaussian_matrix(10, 3);
        assert!(matches!(
            arm_quantities(&w, &Vector::zeros(3), 1.0),
            Err(Error::ModelAssumption(_))
        ));
    }

    #[test]
    fn push_through_small_dense() {
        let w = make_w(2, 6, 1.0, &mut SeededRng::new(7, 1)).unwrap();
        let theta = Vector::from_vec(vec![0.3, -1.2]);
        let mut big = Matrix::identity(6, 6) + &w * w.transpose();
        big.try_inverse_mut();
        let lhs = big * &w * &theta;
        let arm = arm_quantities(&w, &theta, 1.0).unwrap();
        assert!((lhs - arm.beta).amax() <= 1e-10);
        assert!(push_through_discrepancy(&w) <= 1e-10);
    }

    #[test]
    fn push_through_hand_example() {
        // d = 1, p = 2, W = (1, 0)^T: both sides equal (0.5, 0)^T
        let w = Matrix::from_column_slice(2, 1, &[1.0, 0.0]);
        assert!(push_through_discrepancy(&w) < 1e-15);
        assert_eq!(push_through_discrepancy(&Matrix::zeros(4, 2)), 0.0);
    }

    #[test]
    fn covariance_check_zero_theta() {
        let cfg =
            ModelConfig::new(2, 2, 8, 1.0, Vector::zeros(2), RelationKind::Orthogonal, 3).unwrap();
        let errs = lsm_arm_covariance_check(&cfg, 2000).unwrap();
        assert!(errs.response < 3.0 / (2000f64).sqrt());
    }

    #[test]
    fn covariance_check_rejects_empty() {
        let cfg = config(2, 2, 8, 1.0, RelationKind::Orthogonal);
        assert!(lsm_arm_covariance_check(&cfg, 0).is_err());
    }
}
