use forgetting::estimate::{decompose_estimator, fit_sequential, EstimatorSet};
use forgetting::linalg::{derive_seed, pinv_svd, projector_onto_columns, Vector};
use forgetting::model::{generate_task_pair, ArmQuantities, ModelConfig, RelationKind, TaskPair};
use forgetting::parallel::{map_indexed, Execution};
use proptest::prelude::*;

fn fit(cfg: &ModelConfig) -> (TaskPair, ArmQuantities, EstimatorSet) {
    let tasks = generate_task_pair(cfg).unwrap();
    let arm = tasks.arm().unwrap();
    let est = fit_sequential(&tasks, &arm).unwrap();
    (tasks, arm, est)
}

fn rel_gap(a: &Vector, b: &Vector) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Closed form of the sequential estimator, built from SVD pseudoinverses only.
fn closed_form_ba(tasks: &TaskPair) -> Vector {
    let pinv_a = pinv_svd(&tasks.x_a);
    let pinv_b = pinv_svd(&tasks.x_b);
    let beta_a = &pinv_a * &tasks.y;
    let beta_b = &pinv_b * &tasks.y;
    let proj_b = &pinv_b * &tasks.x_b;
    &beta_a + beta_b - proj_b * &beta_a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sequential_estimator_matches_closed_form(
        d in 1usize..=5,
        extra_n in 0usize..=15,
        extra_p in 1usize..=40,
        kind in 0usize..2,
        seed in any::<u64>(),
    ) {
        let n = (d + extra_n).min(20);
        let p = (n + extra_p).min(60);
        let relation = [RelationKind::Orthogonal, RelationKind::Permutation][kind];
        let cfg = ModelConfig::with_gaussian_theta(d, n, p, 1.0, relation, seed).unwrap();
        let (tasks, _, est) = fit(&cfg);
        prop_assert!(rel_gap(&est.beta_hat_ba, &closed_form_ba(&tasks)) <= 1e-8);

        let tol = 1e-8 * tasks.y.norm().max(1.0);
        prop_assert!(est.residual_a <= tol);
        prop_assert!(est.residual_b <= tol);
        prop_assert!(est.residual_ba <= tol);
    }

    #[test]
    fn estimators_have_minimal_norm(
        d in 1usize..=4,
        extra_n in 0usize..=8,
        extra_p in 1usize..=30,
        seed in any::<u64>(),
    ) {
        let n = d + extra_n;
        let p = n + extra_p;
        let cfg = ModelConfig::with_gaussian_theta(d, n, p, 0.7, RelationKind::Orthogonal, seed).unwrap();
        let (tasks, _, est) = fit(&cfg);
        let rows_a = projector_onto_columns(&tasks.x_a.transpose()).unwrap();
        let rows_b = projector_onto_columns(&tasks.x_b.transpose()).unwrap();
        let a = &est.beta_hat_a;
        prop_assert!((a - &rows_a * a).norm() <= 1e-8 * a.norm().max(1e-12));
        let step = &est.beta_hat_ba - a;
        prop_assert!((&step - &rows_b * &step).norm() <= 1e-8 * step.norm().max(1.0));
    }
}

#[test]
fn small_closed_form_example() {
    let cfg =
        ModelConfig::with_gaussian_theta(2, 5, 12, 1.0, RelationKind::Orthogonal, 12).unwrap();
    let (tasks, _, est) = fit(&cfg);
    assert!(rel_gap(&est.beta_hat_ba, &closed_form_ba(&tasks)) <= 1e-8);
}

#[test]
fn identity_relation_keeps_the_task_a_solution() {
    let cfg = ModelConfig::with_gaussian_theta(3, 10, 50, 1.0, RelationKind::Identity, 3).unwrap();
    let (_, _, est) = fit(&cfg);
    assert!((&est.beta_hat_ba - &est.beta_hat_a).amax() <= 1e-9);
}

#[test]
fn effective_noise_split_is_exact() {
    let cfg =
        ModelConfig::with_gaussian_theta(5, 20, 200, 1.0, RelationKind::Orthogonal, 4).unwrap();
    let (tasks, arm, est) = fit(&cfg);
    let dec = decompose_estimator(&tasks, &arm, &est).unwrap();
    assert!(dec.split_residual <= 1e-9 * dec.norm_beta_a);
    assert!(dec.proj_b_beta_a <= dec.norm_beta_a);
}

#[test]
fn projections_of_estimators_are_small_at_large_p() {
    let (d, n, p) = (20, 100, 2000);
    let seeds: Vec<u64> = (0..100).map(|t| derive_seed(0xE57, &[t])).collect();
    let hits = map_indexed(Execution::from_env(), seeds.len(), |t| {
        let cfg =
            ModelConfig::with_gaussian_theta(d, n, p, 1.0, RelationKind::Orthogonal, seeds[t])
                .unwrap();
        let (tasks, arm, est) = fit(&cfg);
        let dec = decompose_estimator(&tasks, &arm, &est).unwrap();
        let w_ok = dec.proj_w_beta_b.powi(2) <= 2.0 * d as f64 / p as f64 * dec.norm_beta_b.powi(2);
        let b_ok = dec.proj_b_beta_a.powi(2) <= 2.0 * n as f64 / p as f64 * dec.norm_beta_a.powi(2);
        (w_ok, b_ok)
    });
    let w_hits = hits.iter().filter(|h| h.0).count();
    let b_hits = hits.iter().filter(|h| h.1).count();
    assert!(w_hits >= 99, "P_W bound held in {w_hits}/100");
    assert!(b_hits >= 99, "P_B bound held in {b_hits}/100");
}

#[test]
fn estimator_norms_stay_within_twice_beta() {
    let trials = 1000;
    let controlled = map_indexed(Execution::from_env(), trials, |t| {
        let seed = derive_seed(0xB0B, &[t as u64]);
        let cfg =
            ModelConfig::with_gaussian_theta(20, 100, 1700, 1.0, RelationKind::Orthogonal, seed)
                .unwrap();
        let (tasks, arm, est) = fit(&cfg);
        let dec = decompose_estimator(&tasks, &arm, &est).unwrap();
        dec.norm_beta_a <= 2.0 * dec.norm_beta_true && dec.norm_beta_b <= 2.0 * dec.norm_beta_true
    });
    let rate = controlled.iter().filter(|&&c| c).count() as f64 / trials as f64;
    assert!(rate >= 0.99, "norm event rate {rate}");
}
