//! Small environments with hard action boxes, sized for estimator studies
//! rather than for learning anything interesting.
//!
//! The bandit rewards only the clipped action, so both plain and clipped
//! score estimators apply. The integrator MDP can be configured to penalize
//! the raw pre-clip action, which makes naive clipped-score weighting biased
//! and exercises the reward-decomposed estimator instead.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::estimator::{apply_baseline, Batch, BatchEntry, BaselineMode, DecomposedEntry};
use crate::policy::{sample_action, ActionBounds, GaussianPolicyParams};

/// Elementwise clamp of a raw action into the box.
pub fn clip_action(u: &[f64], bounds: &ActionBounds) -> Vec<f64> {
    bounds.clip(u)
}

/// A stateless environment: reward is the negated mean absolute value of the
/// clipped action, maximized by steering every coordinate to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditEnv {
    dim: usize,
    bounds: ActionBounds,
}

impl BanditEnv {
    pub fn new(dim: usize, bounds: ActionBounds) -> Result<Self> {
        if bounds.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "bandit dim {dim} vs bounds dim {}",
                bounds.dim()
            )));
        }
        Ok(Self { dim, bounds })
    }

    /// The default box `[-1, 1]^d`.
    pub fn standard(dim: usize) -> Self {
        Self {
            dim,
            bounds: ActionBounds::symmetric(dim, 1.0).expect("dim checked by caller"),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bounds(&self) -> &ActionBounds {
        &self.bounds
    }

    /// `-(1/d) * sum_i |clip(u)_i|`, a function of the clipped action only.
    pub fn reward(&self, u: &[f64]) -> f64 {
        let clipped = self.bounds.clip(u);
        -clipped.iter().map(|a| a.abs()).sum::<f64>() / self.dim as f64
    }

    /// Adds a quadratic penalty on the raw action:
    /// `reward(u) - c * (1/d) * sum_i u_i^2`. The penalty sees what the
    /// policy actually sampled, not what the environment executed.
    pub fn penalty_reward(&self, u: &[f64], c: f64) -> f64 {
        assert_eq!(u.len(), self.dim, "action dimension mismatch");
        assert!(c >= 0.0 && c.is_finite(), "penalty coefficient {c}");
        self.reward(u) - c * u.iter().map(|x| x * x).sum::<f64>() / self.dim as f64
    }
}

/// Which action the integrator's quadratic control cost is charged on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PenaltyMode {
    None,
    Clipped,
    Preclip,
}

/// One-dimensional integrator: `s' = s + clip(u)`, cost on the current state
/// plus (optionally) on the action, over a fixed horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorMdp {
    gamma: f64,
    horizon: usize,
    bounds: ActionBounds,
    init_state_std: f64,
    penalty: PenaltyMode,
    penalty_coef: f64,
}

impl IntegratorMdp {
    pub fn new(
        gamma: f64,
        horizon: usize,
        bounds: ActionBounds,
        init_state_std: f64,
        penalty: PenaltyMode,
        penalty_coef: f64,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::InvalidParameter(format!("gamma {gamma}")));
        }
        if horizon == 0 {
            return Err(Error::InvalidParameter("zero horizon".into()));
        }
        if bounds.dim() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "integrator is one-dimensional, bounds dim {}",
                bounds.dim()
            )));
        }
        if !init_state_std.is_finite() || init_state_std < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "init_state_std {init_state_std}"
            )));
        }
        if !penalty_coef.is_finite() || penalty_coef < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "penalty_coef {penalty_coef}"
            )));
        }
        Ok(Self {
            gamma,
            horizon,
            bounds,
            init_state_std,
            penalty,
            penalty_coef,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn bounds(&self) -> &ActionBounds {
        &self.bounds
    }

    pub fn penalty(&self) -> PenaltyMode {
        self.penalty
    }

    /// One transition from state `s` under raw action `u`.
    /// Returns `(next_state, reward)`; the state cost is charged on `s`.
    pub fn step(&self, s: f64, u: f64) -> (f64, f64) {
        assert!(s.is_finite() && u.is_finite(), "non-finite step input");
        let a = u.clamp(self.bounds.lower()[0], self.bounds.upper()[0]);
        let cost = match self.penalty {
            PenaltyMode::None => 0.0,
            PenaltyMode::Clipped => self.penalty_coef * a * a,
            PenaltyMode::Preclip => self.penalty_coef * u * u,
        };
        (s + a, -s * s - cost)
    }

    /// Plays one episode with `s0 ~ N(0, init_state_std^2)` and the policy
    /// conditioned on the feature vector `(s_t)`.
    pub fn rollout<R: Rng + ?Sized>(
        &self,
        params: &GaussianPolicyParams,
        rng: &mut R,
    ) -> Result<Trajectory> {
        if params.dim() != 1 || params.feature_dim() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "integrator policy must be 1x1, got dim {} feature_dim {}",
                params.dim(),
                params.feature_dim()
            )));
        }
        let eps: f64 = rng.sample(StandardNormal);
        let mut s = self.init_state_std * eps;
        let mut steps = Vec::with_capacity(self.horizon);
        let mut discount = 1.0;
        for _ in 0..self.horizon {
            let u = sample_action(params, &[s], rng)[0];
            let (next, reward) = self.step(s, u);
            steps.push(TrajectoryStep {
                state: s,
                pre_clip_action: u,
                clipped_action: u.clamp(self.bounds.lower()[0], self.bounds.upper()[0]),
                reward,
                discount_weight: discount,
                return_to_go: 0.0,
                next_return_to_go: 0.0,
            });
            s = next;
            discount *= self.gamma;
        }
        // Discounted return-to-go, filled backwards from the terminal step.
        let mut rtg = 0.0;
        for step in steps.iter_mut().rev() {
            step.next_return_to_go = rtg;
            rtg = step.reward + self.gamma * rtg;
            step.return_to_go = rtg;
        }
        Ok(Trajectory {
            gamma: self.gamma,
            steps,
        })
    }
}

/// Everything recorded about one timestep of an episode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryStep {
    pub state: f64,
    pub pre_clip_action: f64,
    pub clipped_action: f64,
    pub reward: f64,
    /// `gamma^t`.
    pub discount_weight: f64,
    /// `G_t = r_t + gamma * G_{t+1}`, with `G_horizon = 0`.
    pub return_to_go: f64,
    /// `G_{t+1}`; zero on the terminal step.
    pub next_return_to_go: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    gamma: f64,
    pub steps: Vec<TrajectoryStep>,
}

impl Trajectory {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Plain sum of rewards, the quantity training curves report.
    pub fn undiscounted_return(&self) -> f64 {
        self.steps.iter().map(|s| s.reward).sum()
    }
}

/// How trajectory weights fold in the discount.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// `w_t = gamma^t * G_t`, the estimator the discounted objective calls
    /// for.
    GammaT,
    /// `w_t = G_t`, the common undiscounted-weight shortcut.
    Flat,
}

/// Flattens an episode into weighted `(state, pre-clip action)` samples for
/// [`crate::estimator::estimate`].
pub fn trajectory_to_batch(
    traj: &Trajectory,
    baseline: BaselineMode,
    weighting: Weighting,
) -> Result<Batch> {
    let entries = traj
        .steps
        .iter()
        .map(|st| BatchEntry {
            state: vec![st.state],
            action: vec![st.pre_clip_action],
            weight: match weighting {
                Weighting::GammaT => st.discount_weight * st.return_to_go,
                Weighting::Flat => st.return_to_go,
            },
        })
        .collect();
    Ok(apply_baseline(&Batch::new(entries)?, baseline))
}

/// Splits each timestep's weight into the immediate reward and the
/// discounted continuation, for [`crate::estimator::estimate_decomposed`].
/// The two parts sum back to the [`trajectory_to_batch`] weight:
/// `gamma^t * G_t = gamma^t * r_t + gamma^(t+1) * G_(t+1)`.
pub fn trajectory_to_decomposed(
    traj: &Trajectory,
    weighting: Weighting,
) -> Vec<DecomposedEntry> {
    traj.steps
        .iter()
        .map(|st| {
            let scale = match weighting {
                Weighting::GammaT => st.discount_weight,
                Weighting::Flat => 1.0,
            };
            DecomposedEntry {
                state: vec![st.state],
                action: vec![st.pre_clip_action],
                immediate_reward: scale * st.reward,
                continuation_weight: scale * traj.gamma * st.next_return_to_go,
            }
        })
        .collect()
}
