//! Monte Carlo checks of the random-matrix facts the forgetting bound rests on.
//!
//! Every check runs independent trials, each on its own derived stream, and
//! reports how many trials satisfied the inequality or identity together with
//! the worst observed margin (`lhs / rhs`, or error over tolerance; a value
//! above 1 is a violation). The absolute constants in the probability bounds
//! are unknown, so the pass-rate thresholds for probabilistic checks are
//! operational choices rather than guaranteed rates.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{
    derive_seed, singular_values, streams, HaarOrthogonal, Matrix, Projector, SeededRng, Vector,
};
use crate::model::{
    arm_quantities, generate_task_a, lsm_arm_covariance_check, make_w, push_through_discrepancy,
    sample_lsm_rows, ModelConfig, RelationKind,
};
use crate::parallel::{try_map_indexed, Execution};
use crate::theory::risk;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    RowNormMoment,
    GaussNormConc,
    ProjWHaar,
    ProjBHaar,
    SigmaMin,
    PinvNoise,
    BetaLower,
    PushThrough,
    NullRisk,
    CovEquiv,
}

impl LemmaId {
    pub const ALL: [LemmaId; 10] = [
        LemmaId::RowNormMoment,
        LemmaId::GaussNormConc,
        LemmaId::ProjWHaar,
        LemmaId::ProjBHaar,
        LemmaId::SigmaMin,
        LemmaId::PinvNoise,
        LemmaId::BetaLower,
        LemmaId::PushThrough,
        LemmaId::NullRisk,
        LemmaId::CovEquiv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::RowNormMoment => "RowNormMoment",
            LemmaId::GaussNormConc => "GaussNormConc",
            LemmaId::ProjWHaar => "ProjW_Haar",
            LemmaId::ProjBHaar => "ProjB_Haar",
            LemmaId::SigmaMin => "SigmaMin",
            LemmaId::PinvNoise => "PinvNoise",
            LemmaId::BetaLower => "BetaLower",
            LemmaId::PushThrough => "PushThrough",
            LemmaId::NullRisk => "NullRisk",
            LemmaId::CovEquiv => "CovEquiv",
        }
    }

    /// Deterministic identities and inequalities must hold in every trial.
    pub fn is_deterministic(self) -> bool {
        matches!(
            self,
            LemmaId::BetaLower | LemmaId::PushThrough | LemmaId::NullRisk
        )
    }

    pub fn default_threshold(self) -> f64 {
        match self {
            LemmaId::GaussNormConc => 0.999,
            LemmaId::ProjWHaar | LemmaId::ProjBHaar | LemmaId::SigmaMin | LemmaId::PinvNoise => {
                0.99
            }
            // every sub-check must pass
            LemmaId::RowNormMoment
            | LemmaId::CovEquiv
            | LemmaId::BetaLower
            | LemmaId::PushThrough
            | LemmaId::NullRisk => 1.0,
        }
    }

    fn stream_tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaVerdict {
    pub lemma_id: LemmaId,
    pub trials: usize,
    pub passes: usize,
    pub pass_rate: f64,
    pub worst_margin: f64,
    /// Mean of the per-trial statistic each check documents.
    pub mean_statistic: f64,
    pub threshold: f64,
}

impl LemmaVerdict {
    pub fn passed(&self) -> bool {
        self.pass_rate >= self.threshold
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    fn from_outcomes(lemma_id: LemmaId, outcomes: &[Outcome]) -> Self {
        let trials = outcomes.len();
        let passes = outcomes.iter().filter(|o| o.passed).count();
        let worst_margin = outcomes
            .iter()
            .map(|o| o.margin)
            .fold(f64::NEG_INFINITY, f64::max);
        let mean_statistic = if trials == 0 {
            f64::NAN
        } else {
            outcomes.iter().map(|o| o.statistic).sum::<f64>() / trials as f64
        };
        LemmaVerdict {
            lemma_id,
            trials,
            passes,
            pass_rate: if trials == 0 {
                0.0
            } else {
                passes as f64 / trials as f64
            },
            worst_margin,
            mean_statistic,
            threshold: lemma_id.default_threshold(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Outcome {
    passed: bool,
    margin: f64,
    statistic: f64,
}

impl Outcome {
    /// Pass iff `lhs <= rhs`; `0 <= 0` counts as a pass with margin 0.
    fn at_most(lhs: f64, rhs: f64, statistic: f64) -> Self {
        let margin = if lhs == 0.0 { 0.0 } else { lhs / rhs };
        Outcome {
            passed: lhs <= rhs,
            margin,
            statistic,
        }
    }
}

fn trial_rng(seed: u64, lemma: LemmaId, trial: usize, stream: u64) -> SeededRng {
    SeededRng::new(
        derive_seed(seed, &[lemma.stream_tag(), trial as u64]),
        stream,
    )
}

fn run_trials<F>(lemma: LemmaId, trials: usize, exec: Execution, trial: F) -> Result<LemmaVerdict>
where
    F: Fn(usize) -> Result<Outcome> + Sync + Send,
{
    let outcomes = try_map_indexed(exec, trials, trial)?;
    Ok(LemmaVerdict::from_outcomes(lemma, &outcomes))
}

/// Norm concentration of a standard Gaussian vector: counts trials with
/// `dim (1 - eps) <= |x|^2 <= dim (1 + eps)`.
/// Statistic: `|x|^2 / dim`. Margin: `| |x|^2/dim - 1 | / eps`.
pub fn check_gauss_norm_concentration(
    dim: usize,
    eps: f64,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<LemmaVerdict> {
    if dim == 0 || !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Config(format!(
            "need dim >= 1 and 0 < eps <= 1, got dim = {dim}, eps = {eps}"
        )));
    }
    let lemma = LemmaId::GaussNormConc;
    run_trials(lemma, trials, exec, |t| {
        let mut rng = trial_rng(seed, lemma, t, streams::ORACLE);
        let ratio = rng.gaussian_vector(dim).norm_squared() / dim as f64;
        let dev = (ratio - 1.0).abs();
        Ok(Outcome {
            passed: dev <= eps,
            margin: dev / eps,
            statistic: ratio,
        })
    })
}

/// Which unit vector the Haar projection check rotates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ProbeVector {
    /// `e_1`
    Fixed,
    /// Fresh uniform unit vector per trial.
    #[default]
    Random,
}

/// `|P_W O v|^2 <= (2d/p) |v|^2` for a fresh `W` and Haar `O` per trial.
/// Statistic: `|P_W O v|^2 / |v|^2`.
pub fn check_proj_w_haar(
    d: usize,
    p: usize,
    trials: usize,
    probe: ProbeVector,
    seed: u64,
    exec: Execution,
) -> Result<LemmaVerdict> {
    if d == 0 || d > p {
        return Err(Error::Config(format!(
            "need 1 <= d <= p, got d = {d}, p = {p}"
        )));
    }
    let lemma = LemmaId::ProjWHaar;
    let limit = 2.0 * d as f64 / p as f64;
    run_trials(lemma, trials, exec, |t| {
        let w = make_w(
            d,
            p,
            1.0,
            &mut trial_rng(seed, lemma, t, streams::FEATURE_MAP),
        )?;
        let o = HaarOrthogonal::sample(p, &mut trial_rng(seed, lemma, t, streams::RELATION))?;
        let v = match probe {
            ProbeVector::Fixed => {
                let mut e = Vector::zeros(p);
                e[0] = 1.0;
                e
            }
            ProbeVector::Random => {
                let g = trial_rng(seed, lemma, t, streams::ORACLE).gaussian_vector(p);
                let norm = g.norm();
                g / norm
            }
        };
        let ratio = Projector::onto_columns(&w)?.norm_sq(&o.apply(&v)) / v.norm_squared();
        Ok(Outcome::at_most(ratio, limit, ratio))
    })
}

/// `|P_{O A^T} v|^2 <= (2n/p) |v|^2` for `v = P_{A^T} g`, with `A = X_A` a
/// fresh task-A design and `O` a fresh Haar matrix per trial. With
/// `extra_rotation`, `O` is replaced by `O Q` for an independent Haar `Q`.
/// Statistic: `|P_{O A^T} v|^2 / |v|^2`.
pub fn check_proj_b_haar(
    config: &ModelConfig,
    trials: usize,
    extra_rotation: bool,
    exec: Execution,
) -> Result<LemmaVerdict> {
    config.validate()?;
    let lemma = LemmaId::ProjBHaar;
    let limit = 2.0 * config.n as f64 / config.p as f64;
    run_trials(lemma, trials, exec, |t| {
        let cfg = trial_config(config, lemma, t);
        let task = generate_task_a(&cfg)?;
        let rows_a = Projector::onto_rows(&task.x_a)?;
        let g = trial_rng(cfg.seed, lemma, t, streams::ORACLE).gaussian_vector(cfg.p);
        let v = rows_a.apply(&g);
        let o = HaarOrthogonal::sample(cfg.p, &mut SeededRng::new(cfg.seed, streams::RELATION))?;
        // P_{O A^T} = O P_{A^T} O^T, so |P_{O A^T} v| = |P_{A^T} O^T v|
        let mut rotated = o.apply_transpose(&v);
        if extra_rotation {
            let q =
                HaarOrthogonal::sample(cfg.p, &mut SeededRng::new(cfg.seed, streams::ORACLE_AUX))?;
            rotated = q.apply_transpose(&rotated);
        }
        let ratio = rows_a.norm_sq(&rotated) / v.norm_squared();
        Ok(Outcome::at_most(ratio, limit, ratio))
    })
}

fn trial_config(config: &ModelConfig, lemma: LemmaId, trial: usize) -> ModelConfig {
    ModelConfig {
        seed: derive_seed(config.seed, &[lemma.stream_tag(), trial as u64]),
        ..config.clone()
    }
}

fn sigma_min_floor(config: &ModelConfig) -> Result<f64> {
    let (d, n, p) = (config.d, config.n, config.p);
    if p <= d + 4 * n {
        return Err(Error::Config(format!(
            "need p > d + 4n for an informative bound, got d = {d}, n = {n}, p = {p}"
        )));
    }
    let root = ((p - d) as f64).sqrt() - 2.0 * (n as f64).sqrt();
    Ok(root * root)
}

/// `sigma_min(X_A)^2 >= (sqrt(p - d) - 2 sqrt(n))^2`, with the smallest
/// singular value taken from an SVD of `X_A`.
/// Statistic: `sigma_min(X_A)^2`. Margin: `floor / sigma_min^2`.
pub fn check_sigma_min(
    config: &ModelConfig,
    trials: usize,
    exec: Execution,
) -> Result<LemmaVerdict> {
    config.validate()?;
    let floor = sigma_min_floor(config)?;
    let lemma = LemmaId::SigmaMin;
    run_trials(lemma, trials, exec, |t| {
        let task = generate_task_a(&trial_config(config, lemma, t))?;
        let smin = singular_values(&task.x_a)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let s2 = smin * smin;
        Ok(Outcome::at_most(floor, s2, s2))
    })
}

/// `|A^+ eps|^2 <= n |theta|^2 / (p gamma (sqrt(p - d) - 2 sqrt(n))^2)` with
/// `eps ~ N(0, sigma^2 I_n)` drawn independently of `A = X_A`.
/// Statistic: `|A^+ eps|^2`.
pub fn check_pinv_noise(
    config: &ModelConfig,
    trials: usize,
    exec: Execution,
) -> Result<LemmaVerdict> {
    config.validate()?;
    let floor = sigma_min_floor(config)?;
    let lemma = LemmaId::PinvNoise;
    let pg = config.p as f64 * config.gamma;
    let rhs = config.n as f64 * config.theta_norm2() / (pg * floor);
    run_trials(lemma, trials, exec, |t| {
        let cfg = trial_config(config, lemma, t);
        let task = generate_task_a(&cfg)?;
        let arm = arm_quantities(&task.w, &cfg.theta, cfg.gamma)?;
        let eps =
            SeededRng::new(cfg.seed, streams::ORACLE).gaussian_vector(cfg.n) * arm.sigma2.sqrt();
        let lhs = Projector::for_solve(&task.x_a)?
            .min_norm_solve(&eps, &Vector::zeros(cfg.p))?
            .norm_squared();
        Ok(Outcome::at_most(lhs, rhs, lhs))
    })
}

/// `sqrt(n) |theta| / (sqrt(p gamma) (sqrt(p - d) - 2 sqrt(n))) <= |beta|`
/// whenever `p >= 1/gamma` and `p >= 16 n + d`. Statistic: `|beta|`.
pub fn check_beta_lower(
    config: &ModelConfig,
    trials: usize,
    exec: Execution,
) -> Result<LemmaVerdict> {
    config.validate()?;
    let (d, n, p) = (config.d, config.n, config.p);
    let pg = p as f64 * config.gamma;
    if pg < 1.0 || p < 16 * n + d {
        return Err(Error::Config(format!(
            "need p >= 1/gamma and p >= 16n + d, got d = {d}, n = {n}, p = {p}, gamma = {}",
            config.gamma
        )));
    }
    let root = ((p - d) as f64).sqrt() - 2.0 * (n as f64).sqrt();
    let lower = (n as f64).sqrt() * config.theta_norm2().sqrt() / (pg.sqrt() * root);
    let lemma = LemmaId::BetaLower;
    run_trials(lemma, trials, exec, |t| {
        let cfg = trial_config(config, lemma, t);
        let w = make_w(
            d,
            p,
            cfg.gamma,
            &mut SeededRng::new(cfg.seed, streams::FEATURE_MAP),
        )?;
        let beta_norm = arm_quantities(&w, &cfg.theta, cfg.gamma)?.beta.norm();
        Ok(Outcome::at_most(lower, beta_norm, beta_norm))
    })
}

const PUSH_THROUGH_TOL: f64 = 1e-9;
const PUSH_THROUGH_MAX_P: usize = 500;

/// `(I + W W^T)^{-1} W = W (W^T W + I)^{-1}` for general `W` with i.i.d.
/// `N(0, 1/p)` entries, to `1e-9` relative. Statistic: relative discrepancy.
pub fn check_push_through(
    d: usize,
    p: usize,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<LemmaVerdict> {
    if p == 0 || d == 0 || p > PUSH_THROUGH_MAX_P {
        return Err(Error::Config(format!(
            "need d >= 1 and 1 <= p <= {PUSH_THROUGH_MAX_P}, got d = {d}, p = {p}"
        )));
    }
    let lemma = LemmaId::PushThrough;
    run_trials(lemma, trials, exec, |t| {
        let w =
            trial_rng(seed, lemma, t, streams::ORACLE).gaussian_matrix(p, d) / (p as f64).sqrt();
        let scale = w.amax().max(f64::MIN_POSITIVE);
        let rel = push_through_discrepancy(&w) / scale;
        Ok(Outcome {
            passed: rel <= PUSH_THROUGH_TOL,
            margin: rel / PUSH_THROUGH_TOL,
            statistic: rel,
        })
    })
}

const NULL_RISK_TOL: f64 = 1e-9;

/// Risk of the zero estimator equals `|theta|^2` to `1e-9` relative, over
/// random instances with `d` in `[1, 50]`, `p` in `[d + 2, 3000]` and
/// log-uniform `gamma` in `[0.01, 10]`. Statistic: relative error.
pub fn check_null_risk(trials: usize, seed: u64, exec: Execution) -> Result<LemmaVerdict> {
    let lemma = LemmaId::NullRisk;
    run_trials(lemma, trials, exec, |t| {
        let mut rng = trial_rng(seed, lemma, t, streams::ORACLE);
        let d = 1 + (rng.uniform() * 50.0) as usize;
        let p = d + 2 + (rng.uniform() * (3000 - d - 1) as f64) as usize;
        let gamma = 10f64.powf(-2.0 + 3.0 * rng.uniform());
        let theta = rng.gaussian_vector(d);
        let w = make_w(
            d,
            p,
            gamma,
            &mut trial_rng(seed, lemma, t, streams::FEATURE_MAP),
        )?;
        let arm = arm_quantities(&w, &theta, gamma)?;
        let target = theta.norm_squared();
        let rel = (risk(&Vector::zeros(p), &arm)? - target).abs() / target;
        Ok(Outcome {
            passed: rel <= NULL_RISK_TOL,
            margin: rel / NULL_RISK_TOL,
            statistic: rel,
        })
    })
}

const ROW_NORM_TOL: f64 = 0.02;
const ROW_CHUNK: usize = 2000;

/// Empirical mean of `|x|^2` over `rows` LSM rows against `d p gamma + p`, one
/// trial per `(d, p, gamma)` triple, each within 2%. Statistic: relative error.
pub fn check_row_norm_moment(
    configs: &[(usize, usize, f64)],
    rows: usize,
    seed: u64,
    exec: Execution,
) -> Result<LemmaVerdict> {
    if rows == 0 {
        return Err(Error::Config("rows must be positive".into()));
    }
    let lemma = LemmaId::RowNormMoment;
    run_trials(lemma, configs.len(), exec, |t| {
        let (d, p, gamma) = configs[t];
        let w = make_w(
            d,
            p,
            gamma,
            &mut trial_rng(seed, lemma, t, streams::FEATURE_MAP),
        )?;
        let theta = Vector::zeros(d);
        let mut rng = trial_rng(seed, lemma, t, streams::FRESH_SAMPLES);
        let mut total = 0.0;
        let mut remaining = rows;
        while remaining > 0 {
            let chunk = remaining.min(ROW_CHUNK);
            let (x, _) = sample_lsm_rows(&w, &theta, chunk, &mut rng);
            total += x.norm_squared();
            remaining -= chunk;
        }
        let expected = d as f64 * p as f64 * gamma + p as f64;
        let rel = (total / rows as f64 - expected).abs() / expected;
        Ok(Outcome {
            passed: rel <= ROW_NORM_TOL,
            margin: rel / ROW_NORM_TOL,
            statistic: rel,
        })
    })
}

/// Out-of-sample mean squared error of `beta_hat` over `samples` fresh LSM
/// draws `(x, y)` with feature map `w`: a sampling estimate of the closed-form
/// task-A risk.
pub fn monte_carlo_risk(
    w: &Matrix,
    theta: &Vector,
    beta_hat: &Vector,
    samples: usize,
    rng: &mut SeededRng,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::Config("samples must be positive".into()));
    }
    if beta_hat.len() != w.nrows() || theta.len() != w.ncols() {
        return Err(Error::DimensionMismatch {
            expected: format!(
                "estimator of length {} and theta of length {}",
                w.nrows(),
                w.ncols()
            ),
            actual: format!("lengths {} and {}", beta_hat.len(), theta.len()),
        });
    }
    let mut total = 0.0;
    let mut remaining = samples;
    while remaining > 0 {
        let chunk = remaining.min(ROW_CHUNK);
        let (x, y) = sample_lsm_rows(w, theta, chunk, rng);
        total += (x * beta_hat - y).norm_squared();
        remaining -= chunk;
    }
    Ok(total / samples as f64)
}

const COV_TOL: f64 = 0.05;

/// LSM/ARM second-moment agreement, one trial per block (response, cross,
/// features), each within 5% relative Frobenius error. Statistic: block error.
pub fn check_cov_equiv(config: &ModelConfig, samples: usize) -> Result<LemmaVerdict> {
    let errs = lsm_arm_covariance_check(config, samples)?;
    let outcomes: Vec<Outcome> = [errs.response, errs.cross, errs.features]
        .into_iter()
        .map(|e| Outcome {
            passed: e <= COV_TOL,
            margin: e / COV_TOL,
            statistic: e,
        })
        .collect();
    Ok(LemmaVerdict::from_outcomes(LemmaId::CovEquiv, &outcomes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn trials(self) -> usize {
        match self {
            Profile::Quick => 100,
            Profile::Full => 1000,
        }
    }
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(Error::Config(format!(
                "unknown profile {other:?} (expected quick or full)"
            ))),
        }
    }
}

/// Default sizes: `d = 20`, `n = 100`, `p = 2000`, `gamma = 1`.
pub fn run_all_oracles(profile: Profile, seed: u64, exec: Execution) -> Result<Vec<LemmaVerdict>> {
    let trials = profile.trials();
    let sub = |tag: u64| derive_seed(seed, &[0xA11, tag]);
    let default_config = |tag: u64| {
        ModelConfig::with_gaussian_theta(20, 100, 2000, 1.0, RelationKind::Orthogonal, sub(tag))
    };
    let cov_config =
        ModelConfig::with_gaussian_theta(5, 5, 30, 1.0, RelationKind::Orthogonal, sub(9))?;
    Ok(vec![
        check_row_norm_moment(
            &[(20, 500, 1.0), (5, 200, 0.3), (50, 1000, 2.0)],
            10_000,
            sub(0),
            exec,
        )?,
        check_gauss_norm_concentration(1000, 0.3, trials, sub(1), exec)?,
        check_proj_w_haar(20, 2000, trials, ProbeVector::Random, sub(2), exec)?,
        check_proj_b_haar(&default_config(3)?, trials, false, exec)?,
        check_sigma_min(&default_config(4)?, trials, exec)?,
        check_pinv_noise(&default_config(5)?, trials, exec)?,
        check_beta_lower(&default_config(6)?, trials, exec)?,
        check_push_through(10, 200, trials, sub(7), exec)?,
        check_null_risk(trials, sub(8), exec)?,
        check_cov_equiv(&cov_config, 100_000)?,
    ])
}

/// Plain-text table of verdicts.
pub fn format_verdicts(verdicts: &[LemmaVerdict]) -> String {
    let mut out = format!(
        "{:<14} {:>7} {:>7} {:>9} {:>13} {:>9}  {}\n",
        "lemma", "trials", "passes", "rate", "worst_margin", "threshold", "status"
    );
    for v in verdicts {
        let note = if v.lemma_id.is_deterministic() {
            ""
        } else {
            " *"
        };
        out.push_str(&format!(
            "{:<14} {:>7} {:>7} {:>9.4} {:>13.4e} {:>9.3}  {}{}\n",
            v.lemma_id.name(),
            v.trials,
            v.passes,
            v.pass_rate,
            v.worst_margin,
            v.threshold,
            v.status(),
            note
        ));
    }
    out.push_str("* threshold is operational, not paper-guaranteed\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEQ: Execution = Execution::Sequential;

    #[test]
    fn names_are_stable() {
        let names: Vec<&str> = LemmaId::ALL.iter().map(|l| l.name()).collect();
        assert_eq!(
            names,
            [
                "RowNormMoment",
                "GaussNormConc",
                "ProjW_Haar",
                "ProjB_Haar",
                "SigmaMin",
                "PinvNoise",
                "BetaLower",
                "PushThrough",
                "NullRisk",
                "CovEquiv"
            ]
        );
    }

    #[test]
    fn verdict_counts_are_consistent() {
        let v = check_gauss_norm_concentration(50, 0.2, 40, 1, SEQ).unwrap();
        assert_eq!(v.trials, 40);
        assert!(v.passes <= v.trials);
        assert_eq!(v.pass_rate, v.passes as f64 / 40.0);
    }

    #[test]
    fn eps_one_only_upper_side_binds() {
        let v = check_gauss_norm_concentration(3, 1.0, 200, 2, SEQ).unwrap();
        // |x|^2 >= 0 always, so the only failures are |x|^2 > 2 dim;
        // P(chi2_3 <= 6) = 0.8884
        assert!((v.pass_rate - 0.8884).abs() < 0.07);
        assert!(check_gauss_norm_concentration(3, 0.0, 1, 2, SEQ).is_err());
    }

    #[test]
    fn full_dimension_projection_always_passes() {
        let v = check_proj_w_haar(6, 6, 20, ProbeVector::Fixed, 3, SEQ).unwrap();
        assert_eq!(v.passes, 20);
        assert!((v.mean_statistic - 1.0).abs() < 1e-10);
    }

    #[test]
    fn nearly_square_task_passes_trivially() {
        let cfg =
            ModelConfig::with_gaussian_theta(2, 10, 11, 1.0, RelationKind::Orthogonal, 4).unwrap();
        let v = check_proj_b_haar(&cfg, 10, false, SEQ).unwrap();
        assert_eq!(v.passes, 10);
    }

    #[test]
    fn sigma_min_requires_informative_regime() {
        let cfg =
            ModelConfig::with_gaussian_theta(2, 10, 40, 1.0, RelationKind::Orthogonal, 5).unwrap();
        assert!(check_sigma_min(&cfg, 1, SEQ).is_err());
    }

    #[test]
    fn sigma_min_single_row() {
        let cfg =
            ModelConfig::with_gaussian_theta(1, 1, 100, 1.0, RelationKind::Orthogonal, 6).unwrap();
        let v = check_sigma_min(&cfg, 50, SEQ).unwrap();
        // a single row of length ~ sqrt(100 + 100 gamma) against (sqrt 99 - 2)^2 ~ 63.6
        assert!(v.pass_rate >= 0.98);
        assert!(v.mean_statistic > 63.6);
    }

    #[test]
    fn pinv_noise_zero_theta_is_vacuous() {
        let cfg =
            ModelConfig::new(2, 4, 40, 1.0, Vector::zeros(2), RelationKind::Orthogonal, 7).unwrap();
        let v = check_pinv_noise(&cfg, 10, SEQ).unwrap();
        assert_eq!(v.passes, 10);
        assert_eq!(v.worst_margin, 0.0);
    }

    #[test]
    fn pinv_noise_is_homogeneous_in_theta() {
        let theta = Vector::from_vec(vec![0.5, -1.0, 2.0]);
        let a =
            ModelConfig::new(3, 10, 300, 0.5, theta.clone(), RelationKind::Orthogonal, 8).unwrap();
        let b = ModelConfig {
            theta: theta * 2.0,
            ..a.clone()
        };
        let va = check_pinv_noise(&a, 30, SEQ).unwrap();
        let vb = check_pinv_noise(&b, 30, SEQ).unwrap();
        assert_eq!(va.passes, vb.passes);
        assert!((va.worst_margin - vb.worst_margin).abs() < 1e-9);
    }

    #[test]
    fn push_through_tiny_case() {
        let v = check_push_through(1, 2, 20, 9, SEQ).unwrap();
        assert_eq!(v.passes, 20);
        assert!(check_push_through(2, 600, 1, 9, SEQ).is_err());
    }

    #[test]
    fn null_risk_is_exact() {
        let v = check_null_risk(20, 10, SEQ).unwrap();
        assert_eq!(v.pass_rate, 1.0);
    }

    #[test]
    fn beta_lower_holds() {
        let cfg = ModelConfig::with_gaussian_theta(5, 10, 200, 1.0, RelationKind::Orthogonal, 11)
            .unwrap();
        let v = check_beta_lower(&cfg, 20, SEQ).unwrap();
        assert_eq!(v.pass_rate, 1.0);
        let tight = ModelConfig { p: 150, ..cfg };
        assert!(check_beta_lower(&tight, 1, SEQ).is_err());
    }

    #[test]
    fn table_mentions_operational_thresholds() {
        let v = check_null_risk(2, 1, SEQ).unwrap();
        let table = format_verdicts(&[v]);
        assert!(table.contains("NullRisk"));
        assert!(table.contains("operational"));
    }

    #[test]
    fn monte_carlo_risk_of_zero_is_response_power() {
        let theta = Vector::from_vec(vec![1.0, -2.0]);
        let w = make_w(2, 10, 1.0, &mut SeededRng::new(1, streams::FEATURE_MAP)).unwrap();
        let mut rng = SeededRng::new(1, streams::FRESH_SAMPLES);
        let r = monte_carlo_risk(&w, &theta, &Vector::zeros(10), 40_000, &mut rng).unwrap();
        assert!((r / 5.0 - 1.0).abs() < 0.05, "{r}");
        assert!(monte_carlo_risk(&w, &theta, &Vector::zeros(3), 10, &mut rng).is_err());
    }
}
