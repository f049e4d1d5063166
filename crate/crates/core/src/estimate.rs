//! The three interpolating estimators and the norms used to bound forgetting.

use crate::error::Result;
use crate::linalg::{Projector, Vector};
use crate::model::{ArmQuantities, TaskPair};

#[derive(Clone, Debug)]
pub struct EstimatorSet {
    /// Min-norm interpolator of task A.
    pub beta_hat_a: Vector,
    /// Min-norm interpolator of task B.
    pub beta_hat_b: Vector,
    /// Interpolator of task B closest to `beta_hat_a`.
    pub beta_hat_ba: Vector,
    /// ARM coefficient `beta`.
    pub beta_true: Vector,
    pub residual_a: f64,
    pub residual_b: f64,
    pub residual_ba: f64,
}

pub fn fit_sequential(tasks: &TaskPair, arm: &ArmQuantities) -> Result<EstimatorSet> {
    let solver_a = Projector::for_solve(&tasks.x_a)?;
    let solver_b = Projector::for_solve(&tasks.x_b)?;
    let zero = Vector::zeros(tasks.p());
    let beta_hat_a = solver_a.min_norm_solve(&tasks.y, &zero)?;
    let beta_hat_b = solver_b.min_norm_solve(&tasks.y, &zero)?;
    let beta_hat_ba = solver_b.min_norm_solve(&tasks.y, &beta_hat_a)?;
    let residual = |x: &crate::linalg::Matrix, b: &Vector| (x * b - &tasks.y).norm();
    Ok(EstimatorSet {
        residual_a: residual(&tasks.x_a, &beta_hat_a),
        residual_b: residual(&tasks.x_b, &beta_hat_b),
        residual_ba: residual(&tasks.x_b, &beta_hat_ba),
        beta_hat_a,
        beta_hat_b,
        beta_hat_ba,
        beta_true: arm.beta.clone(),
    })
}

/// Norms appearing in the forgetting bound. With `A = X_A`, `B = X_B` and the
/// induced ARM noise `eps = y - A beta`, the task-A estimator splits exactly as
/// `beta_hat_a = P_{A^T} beta + A^+ eps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decomposition {
    /// `|P_W beta_hat_b|`
    pub proj_w_beta_b: f64,
    /// `|P_{B^T} beta_hat_a|`
    pub proj_b_beta_a: f64,
    pub norm_beta_a: f64,
    pub norm_beta_b: f64,
    pub norm_beta_true: f64,
    /// `|P_{A^T} beta|`
    pub signal_part: f64,
    /// `|A^+ eps|`
    pub noise_part: f64,
    /// `|beta_hat_a - P_{A^T} beta - A^+ eps|`, zero up to rounding.
    pub split_residual: f64,
}

pub fn decompose_estimator(
    tasks: &TaskPair,
    arm: &ArmQuantities,
    est: &EstimatorSet,
) -> Result<Decomposition> {
    let rows_a = Projector::for_solve(&tasks.x_a)?;
    let rows_b = Projector::for_solve(&tasks.x_b)?;
    let eps = &tasks.y - &tasks.x_a * &arm.beta;
    let signal = rows_a.apply(&arm.beta);
    let noise = rows_a.min_norm_solve(&eps, &Vector::zeros(tasks.p()))?;
    Ok(Decomposition {
        proj_w_beta_b: arm.proj_w.norm_sq(&est.beta_hat_b).sqrt(),
        proj_b_beta_a: rows_b.norm_sq(&est.beta_hat_a).sqrt(),
        norm_beta_a: est.beta_hat_a.norm(),
        norm_beta_b: est.beta_hat_b.norm(),
        norm_beta_true: arm.beta.norm(),
        signal_part: signal.norm(),
        noise_part: noise.norm(),
        split_residual: (&est.beta_hat_a - &signal - &noise).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate_task_pair, ModelConfig, RelationKind};

    fn fit(relation: RelationKind, seed: u64) -> (TaskPair, ArmQuantities, EstimatorSet) {
        let cfg = ModelConfig::with_gaussian_theta(3, 10, 40, 1.0, relation, seed).unwrap();
        let tasks = generate_task_pair(&cfg).unwrap();
        let arm = tasks.arm().unwrap();
        let est = fit_sequential(&tasks, &arm).unwrap();
        (tasks, arm, est)
    }

    #[test]
    fn identity_relation_keeps_task_a_solution() {
        let (_, _, est) = fit(RelationKind::Identity, 1);
        assert!((&est.beta_hat_ba - &est.beta_hat_a).amax() <= 1e-9);
    }

    #[test]
    fn every_estimator_interpolates() {
        for relation in [RelationKind::Orthogonal, RelationKind::Permutation] {
            let (tasks, _, est) = fit(relation, 2);
            let tol = 1e-8 * tasks.y.norm().max(1.0);
            assert!(est.residual_a <= tol);
            assert!(est.residual_b <= tol);
            assert!(est.residual_ba <= tol);
        }
    }

    #[test]
    fn orthogonal_task_b_solution_is_rotated_task_a_solution() {
        let (tasks, _, est) = fit(RelationKind::Orthogonal, 3);
        let rotated = tasks.relation.apply(&est.beta_hat_a);
        assert!((rotated - &est.beta_hat_b).amax() <= 1e-9);
    }

    #[test]
    fn decomposition_is_consistent() {
        let (tasks, arm, est) = fit(RelationKind::Orthogonal, 4);
        let dec = decompose_estimator(&tasks, &arm, &est).unwrap();
        assert!(dec.proj_b_beta_a <= dec.norm_beta_a * (1.0 + 1e-12));
        assert!(dec.proj_w_beta_b <= dec.norm_beta_b * (1.0 + 1e-12));
        assert!(dec.split_residual <= 1e-9 * dec.norm_beta_a.max(1.0));
    }
}
