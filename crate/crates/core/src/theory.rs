//! Closed-form task-A risk, the forgetting bound, and its preconditions.

use std::fmt;

use crate::error::{Error, Result};
use crate::estimate::{decompose_estimator, EstimatorSet};
use crate::linalg::Vector;
use crate::model::{ArmQuantities, TaskPair};

/// `R(b) = sigma^2 + (b - beta)^T Sigma (b - beta)`, evaluated in factored form.
pub fn risk(beta_hat: &Vector, arm: &ArmQuantities) -> Result<f64> {
    if beta_hat.len() != arm.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("estimator of length {}", arm.dim()),
            actual: format!("length {}", beta_hat.len()),
        });
    }
    let delta = beta_hat - &arm.beta;
    Ok(arm.sigma2 + arm.quad_form(&delta))
}

/// A violated precondition of the forgetting bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precondition {
    /// `n < d`
    TooFewSamples,
    /// `p < 17 n`
    TooFewParameters,
    /// `p < 1 / gamma`
    NoisyFeatures,
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precondition::TooFewSamples => "n < d",
            Precondition::TooFewParameters => "p < 17n",
            Precondition::NoisyFeatures => "p < 1/gamma",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub bound: f64,
    pub applicable: bool,
    pub violated: Vec<Precondition>,
}

/// `(66 sqrt(n/p) + 12/(p gamma)) |theta|^2`, applicable iff `n >= d` and
/// `p >= max(17 n, 1/gamma)`.
pub fn theorem_bound(d: usize, n: usize, p: usize, gamma: f64, theta_norm2: f64) -> BoundCheck {
    let (nf, pf) = (n as f64, p as f64);
    let bound = (66.0 * (nf / pf).sqrt() + 12.0 / (pf * gamma)) * theta_norm2;
    let mut violated = Vec::new();
    if n < d {
        violated.push(Precondition::TooFewSamples);
    }
    if p < 17 * n {
        violated.push(Precondition::TooFewParameters);
    }
    if pf * gamma < 1.0 {
        violated.push(Precondition::NoisyFeatures);
    }
    BoundCheck {
        bound,
        applicable: violated.is_empty(),
        violated,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RiskReport {
    pub risk_null: f64,
    pub risk_a: f64,
    pub risk_ba: f64,
    /// `risk_ba - risk_a`
    pub drop: f64,
    pub bound: f64,
    pub bound_applicable: bool,
    /// `8 (p g)^{3/2} / (p g + 1) |theta| |P_W beta_hat_b|`
    pub term_i: f64,
    /// `14 sqrt(p g) |theta| |P_{B^T} beta_hat_a|`
    pub term_ii: f64,
    /// `12 p g / (p g + 1)^2 |theta|^2`
    pub term_iii: f64,
    /// Both `|beta_hat_a|` and `|beta_hat_b|` are at most `2 |beta|`.
    pub norms_controlled: bool,
}

impl RiskReport {
    pub fn terms_sum(&self) -> f64 {
        self.term_i + self.term_ii + self.term_iii
    }
}

pub fn performance_drop(
    tasks: &TaskPair,
    est: &EstimatorSet,
    arm: &ArmQuantities,
) -> Result<RiskReport> {
    let risk_null = risk(&Vector::zeros(arm.dim()), arm)?;
    let risk_a = risk(&est.beta_hat_a, arm)?;
    let risk_ba = risk(&est.beta_hat_ba, arm)?;
    let check = theorem_bound(
        tasks.d(),
        tasks.n(),
        tasks.p(),
        tasks.gamma,
        arm.theta_norm2,
    );
    let dec = decompose_estimator(tasks, arm, est)?;
    let pg = arm.p_gamma;
    let theta_norm = arm.theta_norm2.sqrt();
    Ok(RiskReport {
        risk_null,
        risk_a,
        risk_ba,
        drop: risk_ba - risk_a,
        bound: check.bound,
        bound_applicable: check.applicable,
        term_i: 8.0 * pg * pg.sqrt() / (pg + 1.0) * theta_norm * dec.proj_w_beta_b,
        term_ii: 14.0 * pg.sqrt() * theta_norm * dec.proj_b_beta_a,
        term_iii: 12.0 * pg / ((pg + 1.0) * (pg + 1.0)) * arm.theta_norm2,
        norms_controlled: dec.norm_beta_a <= 2.0 * dec.norm_beta_true
            && dec.norm_beta_b <= 2.0 * dec.norm_beta_true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimate::fit_sequential;
    use crate::model::{generate_task_pair, ModelConfig, RelationKind};

    fn instance(relation: RelationKind) -> (TaskPair, ArmQuantities, EstimatorSet) {
        let cfg = ModelConfig::with_gaussian_theta(4, 12, 60, 1.0, relation, 21).unwrap();
        let tasks = generate_task_pair(&cfg).unwrap();
        let arm = tasks.arm().unwrap();
        let est = fit_sequential(&tasks, &arm).unwrap();
        (tasks, arm, est)
    }

    #[test]
    fn true_coefficient_has_floor_risk() {
        let (_, arm, _) = instance(RelationKind::Orthogonal);
        assert_eq!(risk(&arm.beta, &arm).unwrap(), arm.sigma2);
    }

    #[test]
    fn zero_estimator_has_null_risk() {
        let (_, arm, _) = instance(RelationKind::Orthogonal);
        let r = risk(&Vector::zeros(60), &arm).unwrap();
        assert!((r - arm.theta_norm2).abs() <= 1e-9 * arm.theta_norm2);
    }

    #[test]
    fn risk_rejects_wrong_length() {
        let (_, arm, _) = instance(RelationKind::Orthogonal);
        assert!(matches!(
            risk(&Vector::zeros(3), &arm),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bound_spot_value() {
        let check = theorem_bound(20, 100, 2000, 1.0, 20.0);
        let expected = (66.0 * 0.05f64.sqrt() + 12.0 / 2000.0) * 20.0;
        assert!((check.bound - expected).abs() < 1e-12);
        assert!((check.bound - 295.28).abs() < 0.01);
        assert!(check.applicable);
    }

    #[test]
    fn bound_preconditions() {
        let check = theorem_bound(20, 100, 1600, 1.0, 1.0);
        assert!(!check.applicable);
        assert_eq!(check.violated, vec![Precondition::TooFewParameters]);
        let check = theorem_bound(200, 100, 2000, 1e-4, 1.0);
        assert_eq!(
            check.violated,
            vec![Precondition::TooFewSamples, Precondition::NoisyFeatures]
        );
        assert_eq!(Precondition::TooFewParameters.to_string(), "p < 17n");
    }

    #[test]
    fn bound_large_gamma_limit() {
        let check = theorem_bound(1, 10, 1000, 1e12, 3.0);
        assert!((check.bound - 66.0 * 0.1 * 3.0).abs() < 1e-9);
    }

    #[test]
    fn identity_relation_has_no_drop() {
        let (tasks, arm, est) = instance(RelationKind::Identity);
        let report = performance_drop(&tasks, &est, &arm).unwrap();
        assert!(report.drop.abs() <= 1e-9 * arm.theta_norm2);
    }

    #[test]
    fn report_is_internally_consistent() {
        let (tasks, arm, est) = instance(RelationKind::Orthogonal);
        let r = performance_drop(&tasks, &est, &arm).unwrap();
        assert_eq!(r.drop, r.risk_ba - r.risk_a);
        assert!(r.risk_a >= arm.sigma2 - 1e-12);
        assert!(r.risk_ba >= arm.sigma2 - 1e-12);
        assert!(!r.bound_applicable);
    }
}
