//! Monte-Carlo policy-gradient estimators over batches of weighted samples.
//!
//! Both estimators compute `(1/N) * sum_i w_i * score(s_i, u_i)` and differ
//! only in which score they use. Per-parameter accumulation is compensated
//! (Neumaier), so reordering a batch moves the result by at most a few ulps
//! and the estimate of a large batch does not drift with partial-sum
//! magnitude.

use crate::error::{Error, Result};
use crate::policy::{
    score_capg, score_pg, ActionBounds, GaussianPolicyParams, ScoreResult,
};

/// A gradient estimate has exactly the shape of the score it averages.
pub type GradientEstimate = ScoreResult;

/// One weighted on-policy sample: the action is the raw, pre-clip draw.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchEntry {
    pub state: Vec<f64>,
    pub action: Vec<f64>,
    pub weight: f64,
}

/// A validated, nonempty collection of samples with consistent shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    entries: Vec<BatchEntry>,
}

impl Batch {
    pub fn new(entries: Vec<BatchEntry>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty batch".into()))?;
        let (dim, feature_dim) = (first.action.len(), first.state.len());
        if dim == 0 {
            return Err(Error::InvalidParameter("zero-dimensional actions".into()));
        }
        for e in &entries {
            if e.action.len() != dim || e.state.len() != feature_dim {
                return Err(Error::DimensionMismatch(format!(
                    "entry shape ({}, {}) vs batch shape ({dim}, {feature_dim})",
                    e.action.len(),
                    e.state.len()
                )));
            }
            if e.action.iter().any(|u| !u.is_finite()) {
                return Err(Error::NonFinite("batch action"));
            }
            if e.state.iter().any(|s| !s.is_finite()) {
                return Err(Error::NonFinite("batch state"));
            }
            if !e.weight.is_finite() {
                return Err(Error::NonFinite("batch weight"));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[BatchEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        // Construction rejects empty batches.
        self.entries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.entries[0].action.len()
    }

    pub fn feature_dim(&self) -> usize {
        self.entries[0].state.len()
    }
}

/// Which likelihood score the estimator averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    Pg,
    Capg,
}

impl EstimatorKind {
    pub fn tag(self) -> &'static str {
        match self {
            EstimatorKind::Pg => "pg",
            EstimatorKind::Capg => "capg",
        }
    }
}

impl std::fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineMode {
    None,
    BatchMean,
}

/// Subtracts a baseline from every weight. A constant shift leaves the
/// estimator's expectation alone because every score has mean zero.
pub fn apply_baseline(batch: &Batch, mode: BaselineMode) -> Batch {
    match mode {
        BaselineMode::None => batch.clone(),
        BaselineMode::BatchMean => {
            let mut acc = Neumaier::default();
            for e in &batch.entries {
                acc.add(e.weight);
            }
            let mean = acc.value() / batch.len() as f64;
            let entries = batch
                .entries
                .iter()
                .map(|e| BatchEntry {
                    state: e.state.clone(),
                    action: e.action.clone(),
                    weight: e.weight - mean,
                })
                .collect();
            Batch { entries }
        }
    }
}

/// `(1/N) * sum_i w_i * score(s_i, u_i)` with the chosen score.
pub fn estimate(
    batch: &Batch,
    params: &GaussianPolicyParams,
    bounds: &ActionBounds,
    kind: EstimatorKind,
) -> Result<GradientEstimate> {
    check_shapes(batch.dim(), batch.feature_dim(), params, bounds)?;
    let mut acc = FlatAccumulator::new(params.param_count());
    for e in &batch.entries {
        let score = match kind {
            EstimatorKind::Pg => score_pg(params, &e.state, &e.action),
            EstimatorKind::Capg => score_capg(params, &e.state, &e.action, bounds),
        };
        acc.add_scaled(&score, e.weight);
    }
    acc.mean(batch.len(), params)
}

/// One sample for the reward-decomposed estimator.
///
/// `immediate_reward` may depend on the raw action arbitrarily and is paired
/// with the plain score; `continuation_weight` (typically `gamma` times the
/// downstream return estimate) must depend on the action only through
/// `clip(u)`, which is what licenses pairing it with the clipped score.
#[derive(Debug, Clone, PartialEq)]
pub struct DecomposedEntry {
    pub state: Vec<f64>,
    pub action: Vec<f64>,
    pub immediate_reward: f64,
    pub continuation_weight: f64,
}

/// `(1/N) * sum_i [ r_i * score_pg + c_i * score_capg ]`.
///
/// Applies the clipped score only to the part of the weight that is provably
/// clip-invariant, so it stays unbiased even when rewards leak information
/// about the raw action, where the plain clipped estimator would not.
pub fn estimate_decomposed(
    entries: &[DecomposedEntry],
    params: &GaussianPolicyParams,
    bounds: &ActionBounds,
) -> Result<GradientEstimate> {
    let first = entries
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty batch".into()))?;
    let (dim, feature_dim) = (first.action.len(), first.state.len());
    for e in entries {
        if e.action.len() != dim || e.state.len() != feature_dim {
            return Err(Error::DimensionMismatch("ragged decomposed batch".into()));
        }
        if e.action.iter().any(|u| !u.is_finite())
            || e.state.iter().any(|s| !s.is_finite())
            || !e.immediate_reward.is_finite()
            || !e.continuation_weight.is_finite()
        {
            return Err(Error::NonFinite("decomposed batch entry"));
        }
    }
    check_shapes(dim, feature_dim, params, bounds)?;
    let mut acc = FlatAccumulator::new(params.param_count());
    for e in entries {
        acc.add_scaled(&score_pg(params, &e.state, &e.action), e.immediate_reward);
        acc.add_scaled(
            &score_capg(params, &e.state, &e.action, bounds),
            e.continuation_weight,
        );
    }
    acc.mean(entries.len(), params)
}

fn check_shapes(
    dim: usize,
    feature_dim: usize,
    params: &GaussianPolicyParams,
    bounds: &ActionBounds,
) -> Result<()> {
    if dim != params.dim() {
        return Err(Error::DimensionMismatch(format!(
            "batch action dim {dim} vs policy dim {}",
            params.dim()
        )));
    }
    if feature_dim != params.feature_dim() {
        return Err(Error::DimensionMismatch(format!(
            "batch state dim {feature_dim} vs policy feature_dim {}",
            params.feature_dim()
        )));
    }
    if bounds.dim() != params.dim() {
        return Err(Error::DimensionMismatch(format!(
            "bounds dim {} vs policy dim {}",
            bounds.dim(),
            params.dim()
        )));
    }
    Ok(())
}

/// Neumaier-compensated scalar sum.
#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

struct FlatAccumulator {
    slots: Vec<Neumaier>,
}

impl FlatAccumulator {
    fn new(len: usize) -> Self {
        Self {
            slots: vec![Neumaier::default(); len],
        }
    }

    fn add_scaled(&mut self, score: &ScoreResult, w: f64) {
        for (slot, g) in self.slots.iter_mut().zip(score.to_flat()) {
            slot.add(w * g);
        }
    }

    fn mean(self, n: usize, params: &GaussianPolicyParams) -> Result<GradientEstimate> {
        let flat: Vec<f64> = self.slots.iter().map(|s| s.value() / n as f64).collect();
        ScoreResult::from_flat(params.dim(), params.feature_dim(), &flat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(u: f64, w: f64) -> BatchEntry {
        BatchEntry {
            state: vec![],
            action: vec![u],
            weight: w,
        }
    }

    fn unit_setup() -> (GaussianPolicyParams, ActionBounds) {
        (
            GaussianPolicyParams::state_independent(vec![0.0], vec![0.0]).unwrap(),
            ActionBounds::symmetric(1, 1.0).unwrap(),
        )
    }

    #[test]
    fn batch_validation() {
        assert!(Batch::new(vec![]).is_err());
        assert!(Batch::new(vec![entry(f64::NAN, 1.0)]).is_err());
        assert!(Batch::new(vec![entry(0.0, f64::INFINITY)]).is_err());
        assert!(Batch::new(vec![
            entry(0.0, 1.0),
            BatchEntry {
                state: vec![],
                action: vec![0.0, 1.0],
                weight: 1.0
            }
        ])
        .is_err());
    }

    #[test]
    fn interior_batch_makes_both_estimators_identical() {
        let (p, b) = unit_setup();
        let batch = Batch::new(vec![entry(0.3, 1.0), entry(-0.9, 2.0)]).unwrap();
        let pg = estimate(&batch, &p, &b, EstimatorKind::Pg).unwrap();
        let capg = estimate(&batch, &p, &b, EstimatorKind::Capg).unwrap();
        assert_eq!(pg, capg);
        // Hand value: mean of w * (u - mu) / sigma^2.
        let want = (1.0 * 0.3 + 2.0 * -0.9) / 2.0;
        assert!((pg.d_mean_bias[0] - want).abs() < 1e-15);
    }

    #[test]
    fn capg_batch_uses_tail_scores() {
        let (p, b) = unit_setup();
        let batch = Batch::new(vec![entry(-1.7, 2.0), entry(0.5, 1.0)]).unwrap();
        let g = estimate(&batch, &p, &b, EstimatorKind::Capg).unwrap();
        let mills = 1.525135276160981;
        let want_mu = (2.0 * -mills + 1.0 * 0.5) / 2.0;
        let want_ls = (2.0 * mills + 1.0 * (0.25 - 1.0)) / 2.0;
        assert!((g.d_mean_bias[0] - want_mu).abs() < 1e-12);
        assert!((g.d_log_std[0] - want_ls).abs() < 1e-12);
    }

    #[test]
    fn baseline_modes() {
        let batch = Batch::new(vec![entry(0.1, 3.0), entry(0.2, -1.0), entry(0.3, 1.0)])
            .unwrap();
        assert_eq!(apply_baseline(&batch, BaselineMode::None), batch);
        let centered = apply_baseline(&batch, BaselineMode::BatchMean);
        let sum: f64 = centered.entries().iter().map(|e| e.weight).sum();
        assert!(sum.abs() < 1e-15);
        assert_eq!(centered.entries()[0].weight, 2.0);
    }

    #[test]
    fn weight_linearity_and_scaling() {
        let (p, b) = unit_setup();
        let us = [-1.4, 0.2, 0.9, 1.8, -0.3];
        let w1 = [1.0, -0.5, 2.0, 0.25, 1.5];
        let w2 = [0.5, 0.5, -1.0, 1.0, 0.0];
        let make = |ws: &[f64]| {
            Batch::new(us.iter().zip(ws).map(|(&u, &w)| entry(u, w)).collect()).unwrap()
        };
        let sum_batch = make(
            &w1.iter()
                .zip(&w2)
                .map(|(a, c)| a + c)
                .collect::<Vec<_>>(),
        );
        for kind in [EstimatorKind::Pg, EstimatorKind::Capg] {
            let g1 = estimate(&make(&w1), &p, &b, kind).unwrap().to_flat();
            let g2 = estimate(&make(&w2), &p, &b, kind).unwrap().to_flat();
            let g12 = estimate(&sum_batch, &p, &b, kind).unwrap().to_flat();
            for i in 0..g1.len() {
                assert!(
                    (g1[i] + g2[i] - g12[i]).abs() <= 1e-13 * g12[i].abs().max(1.0),
                    "additivity, {kind} slot {i}"
                );
            }
            let scaled = make(&w1.map(|w| w * -3.5));
            let gs = estimate(&scaled, &p, &b, kind).unwrap().to_flat();
            for i in 0..g1.len() {
                assert!(
                    (gs[i] - -3.5 * g1[i]).abs() <= 1e-13 * gs[i].abs().max(1.0),
                    "scaling, {kind} slot {i}"
                );
            }
        }
    }

    #[test]
    fn permutation_changes_estimate_by_ulps_only() {
        let (p, b) = unit_setup();
        let entries: Vec<BatchEntry> = (0..257)
            .map(|k| {
                let u = ((k * 37 % 101) as f64 - 50.0) / 25.0;
                entry(u, ((k * 17 % 13) as f64 - 6.0) * 1.75)
            })
            .collect();
        let mut shuffled = entries.clone();
        shuffled.reverse();
        shuffled.swap(3, 200);
        shuffled.rotate_left(41);
        for kind in [EstimatorKind::Pg, EstimatorKind::Capg] {
            let a = estimate(&Batch::new(entries.clone()).unwrap(), &p, &b, kind)
                .unwrap()
                .to_flat();
            let c = estimate(&Batch::new(shuffled.clone()).unwrap(), &p, &b, kind)
                .unwrap()
                .to_flat();
            for i in 0..a.len() {
                assert!(
                    (a[i] - c[i]).abs() <= 1e-12 * a[i].abs().max(1.0),
                    "{kind} slot {i}: {} vs {}",
                    a[i],
                    c[i]
                );
            }
        }
    }

    #[test]
    fn decomposed_reduces_to_each_plain_estimator() {
        let (p, b) = unit_setup();
        let us = [-1.3, 0.4, 2.2, -0.1];
        let ws = [0.7, -1.1, 0.3, 2.0];
        let batch = Batch::new(us.iter().zip(&ws).map(|(&u, &w)| entry(u, w)).collect())
            .unwrap();
        let dec = |imm: &[f64], cont: &[f64]| {
            us.iter()
                .enumerate()
                .map(|(i, &u)| DecomposedEntry {
                    state: vec![],
                    action: vec![u],
                    immediate_reward: imm[i],
                    continuation_weight: cont[i],
                })
                .collect::<Vec<_>>()
        };
        // All continuation weight zero: exactly the PG estimate.
        let pg_only = estimate_decomposed(&dec(&ws, &[0.0; 4]), &p, &b).unwrap();
        assert_eq!(pg_only, estimate(&batch, &p, &b, EstimatorKind::Pg).unwrap());
        // All immediate reward zero: exactly the CAPG estimate.
        let capg_only = estimate_decomposed(&dec(&[0.0; 4], &ws), &p, &b).unwrap();
        assert_eq!(
            capg_only,
            estimate(&batch, &p, &b, EstimatorKind::Capg).unwrap()
        );
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let (p, b) = unit_setup();
        let wide = Batch::new(vec![BatchEntry {
            state: vec![],
            action: vec![0.0, 0.0],
            weight: 1.0,
        }])
        .unwrap();
        assert!(estimate(&wide, &p, &b, EstimatorKind::Pg).is_err());
        let stateful = Batch::new(vec![BatchEntry {
            state: vec![1.0],
            action: vec![0.0],
            weight: 1.0,
        }])
        .unwrap();
        assert!(estimate(&stateful, &p, &b, EstimatorKind::Capg).is_err());
        let wide_bounds = ActionBounds::symmetric(2, 1.0).unwrap();
        let ok = Batch::new(vec![entry(0.0, 1.0)]).unwrap();
        assert!(estimate(&ok, &p, &wide_bounds, EstimatorKind::Capg).is_err());
        assert!(estimate_decomposed(&[], &p, &b).is_err());
    }
}
