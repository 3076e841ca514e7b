//! Experiment configuration: a flat `key = value` text format.
//!
//! Blank lines and lines starting with `#` are ignored. Every key has a
//! default, so an empty file is a valid configuration; unknown keys are
//! rejected outright so that a typo cannot silently fall back to a default.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::LabError;

/// Which experiment a configuration drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    /// Fixed-policy gradient mean/variance grid.
    Variance,
    /// Bandit training curves.
    Bandit,
    /// Integrator MDP training curves.
    Mdp,
    /// Statistical verification suite.
    Verify,
}

impl Experiment {
    fn parse(value: &str) -> Option<Self> {
        match value {
            "variance" => Some(Experiment::Variance),
            "bandit" => Some(Experiment::Bandit),
            "mdp" => Some(Experiment::Mdp),
            "verify" => Some(Experiment::Verify),
            _ => None,
        }
    }

    /// Lower-case name as written in config files.
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Variance => "variance",
            Experiment::Bandit => "bandit",
            Experiment::Mdp => "mdp",
            Experiment::Verify => "verify",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which estimators a training experiment runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorChoice {
    Pg,
    Capg,
    Both,
}

impl EstimatorChoice {
    pub fn parse(value: &str) -> Option<Self> {
        match value {
            "pg" => Some(EstimatorChoice::Pg),
            "capg" => Some(EstimatorChoice::Capg),
            "both" => Some(EstimatorChoice::Both),
            _ => None,
        }
    }

    /// Concrete estimator kinds to run, in fixed output order.
    pub fn kinds(self) -> Vec<capg_core::estimator::EstimatorKind> {
        use capg_core::estimator::EstimatorKind;
        match self {
            EstimatorChoice::Pg => vec![EstimatorKind::Pg],
            EstimatorChoice::Capg => vec![EstimatorKind::Capg],
            EstimatorChoice::Both => vec![EstimatorKind::Pg, EstimatorKind::Capg],
        }
    }
}

/// How pre-clip actions are penalized in the MDP experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PenaltyChoice {
    None,
    Clipped,
    Preclip,
}

impl PenaltyChoice {
    fn parse(value: &str) -> Option<Self> {
        match value {
            "none" => Some(PenaltyChoice::None),
            "clipped" => Some(PenaltyChoice::Clipped),
            "preclip" => Some(PenaltyChoice::Preclip),
            _ => None,
        }
    }

    pub fn to_mode(self) -> capg_core::envs::PenaltyMode {
        use capg_core::envs::PenaltyMode;
        match self {
            PenaltyChoice::None => PenaltyMode::None,
            PenaltyChoice::Clipped => PenaltyMode::Clipped,
            PenaltyChoice::Preclip => PenaltyMode::Preclip,
        }
    }
}

/// Fully resolved experiment configuration.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Experiment the file says it is for; the subcommand must agree.
    pub experiment: Option<Experiment>,
    pub estimator: EstimatorChoice,
    /// Action dimension.
    pub d: usize,
    /// Initial policy mean, replicated across dimensions.
    pub init_mean: f64,
    /// Initial policy variance, replicated across dimensions.
    pub init_var: f64,
    pub batch_size: usize,
    /// Gradient updates per training run.
    pub updates: usize,
    /// Training seeds; runs are keyed by seed value, not list position.
    pub seeds: Vec<u64>,
    /// Batches per grid cell in the variance experiment.
    pub mc_batches: usize,
    /// Sample budget for the heaviest verification checks.
    pub mc_samples: usize,
    pub bound_lower: f64,
    pub bound_upper: f64,
    /// Policy means swept by the variance grid.
    pub grid_means: Vec<f64>,
    /// Policy variances swept by the variance grid.
    pub grid_vars: Vec<f64>,
    pub gamma: f64,
    pub horizon: usize,
    pub init_state_std: f64,
    pub penalty: PenaltyChoice,
    pub penalty_coef: f64,
    /// Output CSV path; empty means `<experiment>.csv`.
    pub output_path: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: None,
            estimator: EstimatorChoice::Both,
            d: 1,
            init_mean: 0.0,
            init_var: 1.0,
            batch_size: 5,
            updates: 10_000,
            seeds: (0..10).collect(),
            mc_batches: 10_000,
            mc_samples: 10_000_000,
            bound_lower: -1.0,
            bound_upper: 1.0,
            grid_means: vec![0.0, 0.5, 1.0, 1.5],
            grid_vars: vec![0.1, 1.0, 10.0],
            gamma: 0.99,
            horizon: 20,
            init_state_std: 1.0,
            penalty: PenaltyChoice::None,
            penalty_coef: 0.1,
            output_path: String::new(),
        }
    }
}

impl ExperimentConfig {
    /// Reads and parses a config file.
    pub fn from_file(path: &Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            LabError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    /// Parses config text and validates the result.
    pub fn parse(text: &str) -> Result<Self, LabError> {
        let mut cfg = ExperimentConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                LabError::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            cfg.apply(key.trim(), value.trim())
                .map_err(|e| LabError::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "experiment" => {
                self.experiment = Some(
                    Experiment::parse(value)
                        .ok_or_else(|| format!("unknown experiment `{value}`"))?,
                );
            }
            "estimator" => {
                self.estimator = EstimatorChoice::parse(value)
                    .ok_or_else(|| format!("unknown estimator `{value}`"))?;
            }
            "d" => self.d = parse_one(key, value)?,
            "init_mean" => self.init_mean = parse_one(key, value)?,
            "init_var" => self.init_var = parse_one(key, value)?,
            "batch_size" => self.batch_size = parse_one(key, value)?,
            "updates" => self.updates = parse_one(key, value)?,
            "seeds" => self.seeds = parse_list(key, value)?,
            "mc_batches" => self.mc_batches = parse_one(key, value)?,
            "mc_samples" => self.mc_samples = parse_one(key, value)?,
            "bound_lower" => self.bound_lower = parse_one(key, value)?,
            "bound_upper" => self.bound_upper = parse_one(key, value)?,
            "grid_means" => self.grid_means = parse_list(key, value)?,
            "grid_vars" => self.grid_vars = parse_list(key, value)?,
            "gamma" => self.gamma = parse_one(key, value)?,
            "horizon" => self.horizon = parse_one(key, value)?,
            "init_state_std" => self.init_state_std = parse_one(key, value)?,
            "penalty" => {
                self.penalty = PenaltyChoice::parse(value)
                    .ok_or_else(|| format!("unknown penalty `{value}`"))?;
            }
            "penalty_coef" => self.penalty_coef = parse_one(key, value)?,
            "output_path" => self.output_path = value.to_string(),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Enforces cross-field constraints; called by `parse`, and again by the
    /// CLI after flag overrides.
    pub fn validate(&self) -> Result<(), LabError> {
        let err = |msg: String| Err(LabError::Config(msg));
        if self.d == 0 {
            return err("d must be at least 1".into());
        }
        if !self.init_mean.is_finite() {
            return err("init_mean must be finite".into());
        }
        if !(self.init_var.is_finite() && self.init_var > 0.0) {
            return err(format!("init_var must be positive, got {}", self.init_var));
        }
        if self.batch_size == 0 {
            return err("batch_size must be at least 1".into());
        }
        if self.updates == 0 {
            return err("updates must be at least 1".into());
        }
        if self.seeds.is_empty() {
            return err("seeds must be nonempty".into());
        }
        if self.mc_batches < 2 {
            return err("mc_batches must be at least 2".into());
        }
        if self.mc_samples < 2 {
            return err("mc_samples must be at least 2".into());
        }
        if !(self.bound_lower.is_finite()
            && self.bound_upper.is_finite()
            && self.bound_lower < self.bound_upper)
        {
            return err(format!(
                "bounds must be finite with bound_lower < bound_upper, got [{}, {}]",
                self.bound_lower, self.bound_upper
            ));
        }
        if self.grid_means.is_empty() || self.grid_means.iter().any(|m| !m.is_finite()) {
            return err("grid_means must be a nonempty list of finite values".into());
        }
        if self.grid_vars.is_empty()
            || self.grid_vars.iter().any(|v| !(v.is_finite() && *v > 0.0))
        {
            return err("grid_vars must be a nonempty list of positive values".into());
        }
        if !(self.gamma.is_finite() && (0.0..1.0).contains(&self.gamma)) {
            return err(format!("gamma must lie in [0, 1), got {}", self.gamma));
        }
        if self.horizon == 0 {
            return err("horizon must be at least 1".into());
        }
        if !(self.init_state_std.is_finite() && self.init_state_std >= 0.0) {
            return err(format!(
                "init_state_std must be nonnegative, got {}",
                self.init_state_std
            ));
        }
        if !(self.penalty_coef.is_finite() && self.penalty_coef >= 0.0) {
            return err(format!(
                "penalty_coef must be nonnegative, got {}",
                self.penalty_coef
            ));
        }
        Ok(())
    }

    /// Output path, defaulting to `<experiment>.csv` in the working directory.
    pub fn effective_output(&self, experiment: Experiment) -> PathBuf {
        if self.output_path.is_empty() {
            PathBuf::from(format!("{}.csv", experiment.name()))
        } else {
            PathBuf::from(&self.output_path)
        }
    }

    /// Action bounds shared by every experiment.
    pub fn bounds(&self) -> capg_core::policy::ActionBounds {
        capg_core::policy::ActionBounds::new(
            vec![self.bound_lower; self.d],
            vec![self.bound_upper; self.d],
        )
        .expect("bounds were validated")
    }

    /// Initial log standard deviation implied by `init_var`.
    pub fn init_log_std(&self) -> f64 {
        0.5 * self.init_var.ln()
    }
}

fn parse_one<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse::<T>()
        .map_err(|_| format!("invalid value `{value}` for {key}"))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, String> {
    value
        .split(',')
        .map(|item| parse_one(key, item.trim()))
        .collect()
}
