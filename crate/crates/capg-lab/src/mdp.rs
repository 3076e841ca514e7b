//! Integrator MDP training with an affine-in-state policy.
//!
//! Each update plays a batch of episodes, flattens them into discounted
//! return-to-go samples with a batch-mean baseline, and takes one Adam step.
//! Under the pre-clip action penalty the immediate reward depends on the raw
//! action, so the clipped-action estimator is only applied to the
//! continuation term; the penalized immediate term keeps the plain score.
//! The recorded metric is the batch's mean undiscounted return.

use capg_core::envs::{trajectory_to_batch, trajectory_to_decomposed, IntegratorMdp, Weighting};
use capg_core::estimator::{
    apply_baseline, estimate, estimate_decomposed, BaselineMode, Batch, BatchEntry,
    DecomposedEntry, EstimatorKind, GradientEstimate,
};
use capg_core::optim::{AdamHyper, AdamState, Direction};
use capg_core::policy::GaussianPolicyParams;

use crate::config::{ExperimentConfig, PenaltyChoice};
use crate::seeding::{estimator_index, stream_rng, DOMAIN_MDP};
use crate::table::{fmt_f64, Table};
use crate::{LabError, TrainCurve};

pub const HEADER: [&str; 4] = ["seed", "update_index", "smoothed_return", "estimator"];

/// Runs one MDP training run and returns its return curve.
pub fn train_mdp(
    cfg: &ExperimentConfig,
    seed: u64,
    kind: EstimatorKind,
) -> Result<TrainCurve, LabError> {
    if cfg.d != 1 {
        return Err(LabError::Config(format!(
            "the mdp experiment is one-dimensional, got d = {}",
            cfg.d
        )));
    }
    let env = IntegratorMdp::new(
        cfg.gamma,
        cfg.horizon,
        cfg.bounds(),
        cfg.init_state_std,
        cfg.penalty.to_mode(),
        cfg.penalty_coef,
    )
    .expect("validated mdp parameters");
    let mut policy = GaussianPolicyParams::affine(
        vec![vec![0.0]],
        vec![cfg.init_mean],
        vec![cfg.init_log_std()],
    )
    .expect("validated initial policy");
    let mut adam = AdamState::new(policy.param_count(), AdamHyper::default())
        .expect("default hyperparameters are valid");
    let mut rng = stream_rng(seed, DOMAIN_MDP, estimator_index(kind));

    let bounds = cfg.bounds();
    let split_tails = kind == EstimatorKind::Capg && cfg.penalty == PenaltyChoice::Preclip;
    let mut raw = Vec::with_capacity(cfg.updates);
    for _ in 0..cfg.updates {
        let trajs: Vec<_> = (0..cfg.batch_size)
            .map(|_| env.rollout(&policy, &mut rng).expect("policy is 1x1"))
            .collect();
        raw.push(
            trajs.iter().map(|t| t.undiscounted_return()).sum::<f64>()
                / cfg.batch_size as f64,
        );

        let grad = if split_tails {
            decomposed_gradient(&trajs, &policy, &bounds)
        } else {
            merged_gradient(&trajs, &policy, &bounds, kind)
        };

        let mut flat = policy.to_flat();
        adam.step(&mut flat, &grad.to_flat(), Direction::Ascend)
            .expect("flat layouts agree");
        crate::bandit::clamp_log_std(&mut flat, 1);
        policy = policy.with_flat(&flat).expect("clamped parameters are valid");
    }
    Ok(TrainCurve::from_raw(raw))
}

/// Merges a batch of episodes into one weighted sample set and estimates.
fn merged_gradient(
    trajs: &[capg_core::envs::Trajectory],
    policy: &GaussianPolicyParams,
    bounds: &capg_core::policy::ActionBounds,
    kind: EstimatorKind,
) -> GradientEstimate {
    let mut entries: Vec<BatchEntry> = Vec::new();
    for traj in trajs {
        let batch = trajectory_to_batch(traj, BaselineMode::None, Weighting::GammaT)
            .expect("trajectory entries are finite");
        entries.extend_from_slice(batch.entries());
    }
    let merged = Batch::new(entries).expect("nonempty by construction");
    let merged = apply_baseline(&merged, BaselineMode::BatchMean);
    estimate(&merged, policy, bounds, kind).expect("shapes match")
}

/// Splits each timestep into an immediate and a continuation term, centers
/// the continuation weights, and estimates. The constant shift keeps the
/// estimate unbiased for the same reason a batch-mean baseline does.
fn decomposed_gradient(
    trajs: &[capg_core::envs::Trajectory],
    policy: &GaussianPolicyParams,
    bounds: &capg_core::policy::ActionBounds,
) -> GradientEstimate {
    let mut entries: Vec<DecomposedEntry> = Vec::new();
    for traj in trajs {
        entries.extend(trajectory_to_decomposed(traj, Weighting::GammaT));
    }
    let mean_cont = entries.iter().map(|e| e.continuation_weight).sum::<f64>()
        / entries.len() as f64;
    for e in &mut entries {
        e.continuation_weight -= mean_cont;
    }
    estimate_decomposed(&entries, policy, bounds).expect("shapes match")
}

/// Runs every configured (seed, estimator) pair and tabulates the smoothed
/// curves.
pub fn run_mdp_training(cfg: &ExperimentConfig) -> Result<Table, LabError> {
    let mut table = Table::new(HEADER.to_vec());
    for &seed in &cfg.seeds {
        for kind in cfg.estimator.kinds() {
            let curve = train_mdp(cfg, seed, kind)?;
            for (t, &s) in curve.smoothed.iter().enumerate() {
                table.push_row(vec![
                    seed.to_string(),
                    t.to_string(),
                    fmt_f64(s),
                    kind.tag().to_string(),
                ]);
            }
        }
    }
    Ok(table)
}
