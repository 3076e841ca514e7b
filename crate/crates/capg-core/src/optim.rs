//! Adam over a flat parameter vector.
//!
//! The policy flattens its parameters into one vector
//! ([`crate::policy::GaussianPolicyParams::to_flat`]) and a single
//! [`AdamState`] covers all of them, mean head and log standard deviations
//! alike.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdamHyper {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

/// The conventional defaults: lr 1e-3, betas (0.9, 0.999), epsilon 1e-8.
impl Default for AdamHyper {
    fn default() -> Self {
        Self {
            lr: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

impl AdamHyper {
    fn validate(&self) -> Result<()> {
        if !self.lr.is_finite() || self.lr <= 0.0 {
            return Err(Error::InvalidParameter(format!("lr {}", self.lr)));
        }
        for (name, beta) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(0.0..1.0).contains(&beta) {
                return Err(Error::InvalidParameter(format!("{name} {beta}")));
            }
        }
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!("epsilon {}", self.epsilon)));
        }
        Ok(())
    }
}

/// Whether a step follows the gradient or its negation. Policy improvement
/// ascends an expected-return objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascend,
    Descend,
}

/// Moment estimates for one flat parameter vector. Serializable so a run can
/// be snapshotted and resumed with bit-identical behavior.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdamState {
    step_count: u64,
    first_moment: Vec<f64>,
    second_moment: Vec<f64>,
    hyper: AdamHyper,
}

impl AdamState {
    pub fn new(param_count: usize, hyper: AdamHyper) -> Result<Self> {
        hyper.validate()?;
        Ok(Self {
            step_count: 0,
            first_moment: vec![0.0; param_count],
            second_moment: vec![0.0; param_count],
            hyper,
        })
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    pub fn hyper(&self) -> AdamHyper {
        self.hyper
    }

    /// One bias-corrected update, in place:
    /// `p += dir * lr * m_hat / (sqrt(v_hat) + eps)`.
    pub fn step(
        &mut self,
        params: &mut [f64],
        gradient: &[f64],
        direction: Direction,
    ) -> Result<()> {
        if params.len() != self.first_moment.len() || gradient.len() != params.len() {
            return Err(Error::DimensionMismatch(format!(
                "params {} / gradient {} / state {}",
                params.len(),
                gradient.len(),
                self.first_moment.len()
            )));
        }
        assert!(
            gradient.iter().all(|g| g.is_finite()),
            "non-finite gradient handed to Adam"
        );
        let h = self.hyper;
        self.step_count += 1;
        let t = self.step_count as f64;
        let m_corr = 1.0 - h.beta1.powf(t);
        let v_corr = 1.0 - h.beta2.powf(t);
        let sign = match direction {
            Direction::Ascend => 1.0,
            Direction::Descend => -1.0,
        };
        for i in 0..params.len() {
            let g = gradient[i];
            let m = h.beta1 * self.first_moment[i] + (1.0 - h.beta1) * g;
            let v = h.beta2 * self.second_moment[i] + (1.0 - h.beta2) * g * g;
            self.first_moment[i] = m;
            self.second_moment[i] = v;
            let m_hat = m / m_corr;
            let v_hat = v / v_corr;
            params[i] += sign * h.lr * m_hat / (v_hat.sqrt() + h.epsilon);
        }
        Ok(())
    }
}
