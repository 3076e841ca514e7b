//! Experiment harness for the clipped-action policy gradient estimators.
//!
//! The library half of the `capg-lab` binary: configuration parsing, seed
//! derivation, the three experiment drivers (fixed-policy variance grid,
//! bandit training, integrator MDP training), and a statistical verification
//! suite. Every run is a pure function from a configuration to a CSV table,
//! which keeps the binary thin and the experiments testable.

pub mod bandit;
pub mod config;
pub mod mdp;
pub mod seeding;
pub mod stats;
pub mod table;
pub mod variance;
pub mod verify;

/// Harness-level failure.
///
/// `Config` covers everything the user can fix by editing the config file or
/// command line, including unreadable inputs and unwritable outputs. Failed
/// verification checks are not errors; they are reported in the output table.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Config(String),
}

/// Trailing window for training-curve smoothing.
pub const SMOOTHING_WINDOW: usize = 100;

/// One training run's per-update metric, raw and smoothed.
#[derive(Debug, Clone)]
pub struct TrainCurve {
    pub raw: Vec<f64>,
    /// Trailing mean over the last [`SMOOTHING_WINDOW`] updates; shorter
    /// prefixes average whatever history exists.
    pub smoothed: Vec<f64>,
}

impl TrainCurve {
    pub fn from_raw(raw: Vec<f64>) -> Self {
        let mut smoothed = Vec::with_capacity(raw.len());
        let mut window_sum = 0.0;
        for (t, &r) in raw.iter().enumerate() {
            window_sum += r;
            if t >= SMOOTHING_WINDOW {
                window_sum -= raw[t - SMOOTHING_WINDOW];
            }
            let len = (t + 1).min(SMOOTHING_WINDOW) as f64;
            smoothed.push(window_sum / len);
        }
        TrainCurve { raw, smoothed }
    }

    /// Final smoothed value, the summary statistic training comparisons use.
    pub fn final_smoothed(&self) -> f64 {
        *self.smoothed.last().expect("curve is nonempty")
    }
}
