//! Diagonal Gaussian policies and their likelihood scores, with and without
//! action clipping.
//!
//! A policy samples `u ~ N(mu(s), diag(sigma^2))` and the environment receives
//! `clip(u)` into the box `[alpha, beta]`. The distribution of the clipped
//! action is a mixture: point masses `Phi(z_alpha)` and `1 - Phi(z_beta)` on
//! the faces plus the untruncated density in between. [`score_capg`] is the
//! exact likelihood score of that mixture, branching per dimension on where
//! the raw sample landed:
//!
//! - `u_i <= alpha_i`: gradient of `log Phi(z_alpha)`,
//! - `alpha_i < u_i < beta_i`: the ordinary Gaussian score,
//! - `u_i >= beta_i`: gradient of `log (1 - Phi(z_beta))`.
//!
//! Swapping it for [`score_pg`] in a policy-gradient estimator leaves the
//! expectation untouched whenever the weights depend on `u` only through
//! `clip(u)`, and can only shrink the variance: everything an out-of-box
//! sample contributes is pooled through the tail probability instead of the
//! sample's own (arbitrarily large) score.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::gauss;

/// Lower limit on per-dimension `log sigma`. Below this the standard
/// deviation is degenerate for f64 work and score magnitudes explode.
pub const LOG_STD_FLOOR: f64 = -20.0;

/// Parameters of a diagonal Gaussian policy with an affine mean head.
///
/// Dimension `i` of the mean is `w_i . features(s) + b_i`; a policy with no
/// features (empty weight rows) is state-independent, which is what the
/// bandit experiments use. Standard deviations are stored as `log sigma`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianPolicyParams {
    mean_weights: Vec<Vec<f64>>,
    mean_bias: Vec<f64>,
    log_std: Vec<f64>,
}

impl GaussianPolicyParams {
    /// A state-independent policy: the mean head is just the bias vector.
    pub fn state_independent(mean: Vec<f64>, log_std: Vec<f64>) -> Result<Self> {
        let weights = vec![Vec::new(); mean.len()];
        Self::affine(weights, mean, log_std)
    }

    pub fn affine(
        mean_weights: Vec<Vec<f64>>,
        mean_bias: Vec<f64>,
        log_std: Vec<f64>,
    ) -> Result<Self> {
        let dim = mean_bias.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("policy needs at least one action dimension".into()));
        }
        if mean_weights.len() != dim || log_std.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "mean head rows {} / log_std {} / bias {dim}",
                mean_weights.len(),
                log_std.len()
            )));
        }
        let feature_dim = mean_weights[0].len();
        for row in &mean_weights {
            if row.len() != feature_dim {
                return Err(Error::DimensionMismatch("ragged mean weight rows".into()));
            }
            if row.iter().any(|w| !w.is_finite()) {
                return Err(Error::NonFinite("mean weight"));
            }
        }
        if mean_bias.iter().any(|b| !b.is_finite()) {
            return Err(Error::NonFinite("mean bias"));
        }
        for &ls in &log_std {
            if !ls.is_finite() {
                return Err(Error::NonFinite("log_std"));
            }
            if ls < LOG_STD_FLOOR {
                return Err(Error::InvalidParameter(format!(
                    "log_std {ls} below floor {LOG_STD_FLOOR}"
                )));
            }
        }
        Ok(Self {
            mean_weights,
            mean_bias,
            log_std,
        })
    }

    pub fn dim(&self) -> usize {
        self.mean_bias.len()
    }

    pub fn feature_dim(&self) -> usize {
        self.mean_weights[0].len()
    }

    pub fn log_std(&self) -> &[f64] {
        &self.log_std
    }

    pub fn std(&self, i: usize) -> f64 {
        self.log_std[i].exp()
    }

    /// Mean vector at a given feature vector.
    pub fn mean(&self, state: &[f64]) -> Vec<f64> {
        self.check_state(state);
        (0..self.dim()).map(|i| self.mean_i(state, i)).collect()
    }

    fn mean_i(&self, state: &[f64], i: usize) -> f64 {
        let dot: f64 = self.mean_weights[i]
            .iter()
            .zip(state)
            .map(|(w, s)| w * s)
            .sum();
        dot + self.mean_bias[i]
    }

    fn check_state(&self, state: &[f64]) {
        assert_eq!(
            state.len(),
            self.feature_dim(),
            "state feature length {} does not match policy feature_dim {}",
            state.len(),
            self.feature_dim()
        );
        assert!(state.iter().all(|s| s.is_finite()), "non-finite state feature");
    }

    fn check_action(&self, action: &[f64]) {
        assert_eq!(
            action.len(),
            self.dim(),
            "action length {} does not match policy dim {}",
            action.len(),
            self.dim()
        );
        assert!(action.iter().all(|u| u.is_finite()), "non-finite action");
    }

    /// Number of scalar parameters in the canonical flat layout.
    pub fn param_count(&self) -> usize {
        self.dim() * (self.feature_dim() + 1) + self.dim()
    }

    /// Canonical flat layout: per dimension the weight row then the bias,
    /// then all log standard deviations. [`ScoreResult::to_flat`] matches it.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat = Vec::with_capacity(self.param_count());
        for i in 0..self.dim() {
            flat.extend_from_slice(&self.mean_weights[i]);
            flat.push(self.mean_bias[i]);
        }
        flat.extend_from_slice(&self.log_std);
        flat
    }

    /// Rebuilds a policy of this shape from a flat vector, re-running all
    /// construction-time validation.
    pub fn with_flat(&self, flat: &[f64]) -> Result<Self> {
        if flat.len() != self.param_count() {
            return Err(Error::DimensionMismatch(format!(
                "flat vector length {} vs param_count {}",
                flat.len(),
                self.param_count()
            )));
        }
        let f = self.feature_dim();
        let d = self.dim();
        let mut weights = Vec::with_capacity(d);
        let mut bias = Vec::with_capacity(d);
        for i in 0..d {
            let row = &flat[i * (f + 1)..i * (f + 1) + f];
            weights.push(row.to_vec());
            bias.push(flat[i * (f + 1) + f]);
        }
        let log_std = flat[d * (f + 1)..].to_vec();
        Self::affine(weights, bias, log_std)
    }
}

/// Box constraints on actions, one `[alpha_i, beta_i]` interval per
/// dimension, each finite with `alpha_i < beta_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl ActionBounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::DimensionMismatch(format!(
                "bounds lower {} vs upper {}",
                lower.len(),
                upper.len()
            )));
        }
        for (a, b) in lower.iter().zip(&upper) {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::NonFinite("bound"));
            }
            if a >= b {
                return Err(Error::InvalidParameter(format!(
                    "lower bound {a} not below upper bound {b}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The box `[-half_width, half_width]^d`.
    pub fn symmetric(dim: usize, half_width: f64) -> Result<Self> {
        Self::new(vec![-half_width; dim], vec![half_width; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Elementwise clamp into the box. Exact: a clipped coordinate compares
    /// bit-equal to the stored bound, which endpoint detection relies on.
    pub fn clip(&self, u: &[f64]) -> Vec<f64> {
        assert_eq!(u.len(), self.dim(), "action/bounds dimension mismatch");
        u.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&x, (&a, &b))| x.clamp(a, b))
            .collect()
    }

    pub fn contains(&self, u: &[f64]) -> bool {
        u.len() == self.dim()
            && u.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&a, &b))| a <= x && x <= b)
    }
}

/// Gradient of a log-likelihood with respect to [`GaussianPolicyParams`],
/// laid out exactly like the parameters themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreResult {
    pub d_mean_weights: Vec<Vec<f64>>,
    pub d_mean_bias: Vec<f64>,
    pub d_log_std: Vec<f64>,
}

impl ScoreResult {
    pub fn zeros(dim: usize, feature_dim: usize) -> Self {
        Self {
            d_mean_weights: vec![vec![0.0; feature_dim]; dim],
            d_mean_bias: vec![0.0; dim],
            d_log_std: vec![0.0; dim],
        }
    }

    pub fn zeros_like(params: &GaussianPolicyParams) -> Self {
        Self::zeros(params.dim(), params.feature_dim())
    }

    pub fn dim(&self) -> usize {
        self.d_mean_bias.len()
    }

    pub fn feature_dim(&self) -> usize {
        self.d_mean_weights.first().map_or(0, Vec::len)
    }

    /// Same canonical order as [`GaussianPolicyParams::to_flat`].
    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat =
            Vec::with_capacity(self.dim() * (self.feature_dim() + 1) + self.dim());
        for i in 0..self.dim() {
            flat.extend_from_slice(&self.d_mean_weights[i]);
            flat.push(self.d_mean_bias[i]);
        }
        flat.extend_from_slice(&self.d_log_std);
        flat
    }

    pub fn from_flat(dim: usize, feature_dim: usize, flat: &[f64]) -> Result<Self> {
        let expected = dim * (feature_dim + 1) + dim;
        if flat.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "flat vector length {} vs expected {expected}",
                flat.len()
            )));
        }
        let mut out = Self::zeros(dim, feature_dim);
        for i in 0..dim {
            let base = i * (feature_dim + 1);
            out.d_mean_weights[i].copy_from_slice(&flat[base..base + feature_dim]);
            out.d_mean_bias[i] = flat[base + feature_dim];
        }
        out.d_log_std.copy_from_slice(&flat[dim * (feature_dim + 1)..]);
        Ok(out)
    }
}

/// Draws `u = mu(s) + sigma * eps` with `eps ~ N(0, I)`. No clipping.
pub fn sample_action<R: Rng + ?Sized>(
    params: &GaussianPolicyParams,
    state: &[f64],
    rng: &mut R,
) -> Vec<f64> {
    params.check_state(state);
    (0..params.dim())
        .map(|i| {
            let eps: f64 = rng.sample(StandardNormal);
            params.mean_i(state, i) + params.std(i) * eps
        })
        .collect()
}

/// Draws from the clipped policy: [`sample_action`] clamped into the box.
pub fn sample_clipped<R: Rng + ?Sized>(
    params: &GaussianPolicyParams,
    state: &[f64],
    bounds: &ActionBounds,
    rng: &mut R,
) -> Vec<f64> {
    bounds.clip(&sample_action(params, state, rng))
}

/// Gaussian log-density of an unclipped action.
pub fn log_prob(params: &GaussianPolicyParams, state: &[f64], action: &[f64]) -> f64 {
    params.check_state(state);
    params.check_action(action);
    (0..params.dim())
        .map(|i| {
            let z = gauss::standardize(action[i], params.mean_i(state, i), params.std(i));
            -params.log_std[i] - gauss::LN_SQRT_2PI - 0.5 * z * z
        })
        .sum()
}

/// Plain likelihood-ratio score `d log pi(u|s) / d theta`.
pub fn score_pg(
    params: &GaussianPolicyParams,
    state: &[f64],
    action: &[f64],
) -> ScoreResult {
    params.check_state(state);
    params.check_action(action);
    let mut out = ScoreResult::zeros_like(params);
    for i in 0..params.dim() {
        let sigma = params.std(i);
        let z = gauss::standardize(action[i], params.mean_i(state, i), sigma);
        fill_dim(&mut out, state, i, z / sigma, z * z - 1.0);
    }
    out
}

/// Clipped-action score: the likelihood score of the clipped sampling
/// distribution, evaluated per dimension at the branch the raw sample `u`
/// falls in. Ties go to the tails, matching what an exactly-clipped sample
/// reports.
pub fn score_capg(
    params: &GaussianPolicyParams,
    state: &[f64],
    action: &[f64],
    bounds: &ActionBounds,
) -> ScoreResult {
    params.check_state(state);
    params.check_action(action);
    assert_eq!(bounds.dim(), params.dim(), "bounds/policy dimension mismatch");
    let mut out = ScoreResult::zeros_like(params);
    for i in 0..params.dim() {
        let sigma = params.std(i);
        let mu = params.mean_i(state, i);
        let u = action[i];
        let (d_mu, d_ls) = if u <= bounds.lower[i] {
            let za = gauss::clamp_tail(gauss::standardize(bounds.lower[i], mu, sigma));
            let m = gauss::inv_mills_lower_raw(za);
            (-m / sigma, -za * m)
        } else if u >= bounds.upper[i] {
            let zb = gauss::clamp_tail(gauss::standardize(bounds.upper[i], mu, sigma));
            let m = gauss::inv_mills_upper_raw(zb);
            (m / sigma, zb * m)
        } else {
            let z = gauss::standardize(u, mu, sigma);
            (z / sigma, z * z - 1.0)
        };
        fill_dim(&mut out, state, i, d_mu, d_ls);
    }
    out
}

fn fill_dim(out: &mut ScoreResult, state: &[f64], i: usize, d_mu: f64, d_log_std: f64) {
    for (g, s) in out.d_mean_weights[i].iter_mut().zip(state) {
        *g = d_mu * s;
    }
    out.d_mean_bias[i] = d_mu;
    out.d_log_std[i] = d_log_std;
}

/// Log-likelihood of a clipped action under the clipped policy.
///
/// Per dimension: `log Phi(z_alpha)` on the lower face (a point mass),
/// `log (1 - Phi(z_beta))` on the upper face, the Gaussian log-density
/// strictly inside. Face detection is exact float equality with the stored
/// bounds, which [`ActionBounds::clip`] guarantees for clipped samples.
pub fn log_prob_clipped(
    params: &GaussianPolicyParams,
    state: &[f64],
    action: &[f64],
    bounds: &ActionBounds,
) -> Result<f64> {
    params.check_state(state);
    params.check_action(action);
    assert_eq!(bounds.dim(), params.dim(), "bounds/policy dimension mismatch");
    let mut total = 0.0;
    for i in 0..params.dim() {
        let u = action[i];
        let (a, b) = (bounds.lower[i], bounds.upper[i]);
        if u < a || u > b {
            return Err(Error::OutOfBounds(format!(
                "coordinate {i}: {u} outside [{a}, {b}]"
            )));
        }
        let sigma = params.std(i);
        let mu = params.mean_i(state, i);
        total += if u == a {
            gauss::log_cdf_raw(gauss::standardize(a, mu, sigma))
        } else if u == b {
            gauss::log_sf_raw(gauss::standardize(b, mu, sigma))
        } else {
            let z = gauss::standardize(u, mu, sigma);
            -params.log_std[i] - gauss::LN_SQRT_2PI - 0.5 * z * z
        };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const INV_MILLS_AT_MINUS_1: f64 = 1.525135276160981;

    fn unit_policy(mean: f64) -> GaussianPolicyParams {
        GaussianPolicyParams::state_independent(vec![mean], vec![0.0]).unwrap()
    }

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!(
            (a - b).abs() <= tol * b.abs().max(1.0),
            "{what}: {a} vs {b}"
        );
    }

    #[test]
    fn construction_validates_shapes_and_floor() {
        assert!(GaussianPolicyParams::state_independent(vec![], vec![]).is_err());
        assert!(GaussianPolicyParams::state_independent(vec![0.0], vec![0.0, 1.0]).is_err());
        assert!(GaussianPolicyParams::state_independent(vec![0.0], vec![-20.5]).is_err());
        assert!(GaussianPolicyParams::state_independent(vec![f64::NAN], vec![0.0]).is_err());
        assert!(GaussianPolicyParams::affine(
            vec![vec![1.0], vec![1.0, 2.0]],
            vec![0.0, 0.0],
            vec![0.0, 0.0]
        )
        .is_err());
        // At the floor exactly is allowed.
        assert!(GaussianPolicyParams::state_independent(vec![0.0], vec![-20.0]).is_ok());
    }

    #[test]
    fn bounds_validate() {
        assert!(ActionBounds::new(vec![0.0], vec![0.0]).is_err());
        assert!(ActionBounds::new(vec![1.0], vec![-1.0]).is_err());
        assert!(ActionBounds::new(vec![f64::NEG_INFINITY], vec![0.0]).is_err());
        assert!(ActionBounds::new(vec![-1.0], vec![1.0, 2.0]).is_err());
        let b = ActionBounds::symmetric(3, 1.0).unwrap();
        assert_eq!(b.lower(), &[-1.0, -1.0, -1.0]);
        assert_eq!(b.clip(&[-3.0, 0.25, 7.0]), vec![-1.0, 0.25, 1.0]);
        assert!(b.contains(&[-1.0, 0.0, 1.0]));
        assert!(!b.contains(&[-1.1, 0.0, 1.0]));
    }

    #[test]
    fn affine_mean_head() {
        let p = GaussianPolicyParams::affine(
            vec![vec![2.0, -1.0], vec![0.5, 0.0]],
            vec![1.0, -0.5],
            vec![0.0, 0.0],
        )
        .unwrap();
        assert_eq!(p.mean(&[1.0, 3.0]), vec![2.0 - 3.0 + 1.0, 0.5 - 0.5]);
        assert_eq!(p.feature_dim(), 2);
    }

    #[test]
    fn log_prob_reference_values() {
        let p = unit_policy(0.0);
        assert_close(log_prob(&p, &[], &[0.0]), -0.9189385332046727, 1e-15, "mode");
        assert_close(log_prob(&p, &[], &[2.0]), -2.9189385332046727, 1e-15, "u=2");
        // Independent dimensions add.
        let p2 =
            GaussianPolicyParams::state_independent(vec![0.0, 0.0], vec![0.0, 0.0]).unwrap();
        assert_close(
            log_prob(&p2, &[], &[0.0, 2.0]),
            -0.9189385332046727 - 2.9189385332046727,
            1e-15,
            "additivity",
        );
    }

    #[test]
    fn score_pg_closed_form() {
        let p = unit_policy(0.0);
        let s = score_pg(&p, &[], &[2.0]);
        assert_close(s.d_mean_bias[0], 2.0, 1e-15, "d_mu");
        assert_close(s.d_log_std[0], 3.0, 1e-15, "d_log_std");

        // Chain rule through the mean head: d/dw = d/dmu * feature.
        let p = GaussianPolicyParams::affine(vec![vec![1.0]], vec![0.0], vec![0.0]).unwrap();
        let s = score_pg(&p, &[0.5], &[2.0]);
        let d_mu = (2.0 - 0.5) / 1.0;
        assert_close(s.d_mean_bias[0], d_mu, 1e-15, "bias");
        assert_close(s.d_mean_weights[0][0], d_mu * 0.5, 1e-15, "weight");
    }

    #[test]
    fn score_capg_branches() {
        let p = unit_policy(0.0);
        let b = ActionBounds::symmetric(1, 1.0).unwrap();

        // Interior: identical to the plain score, bit for bit.
        let interior = score_capg(&p, &[], &[0.3], &b);
        assert_eq!(interior, score_pg(&p, &[], &[0.3]));

        // Lower tail, z_alpha = -1.
        let lo = score_capg(&p, &[], &[-1.7], &b);
        assert_close(lo.d_mean_bias[0], -INV_MILLS_AT_MINUS_1, 1e-12, "lower d_mu");
        assert_close(lo.d_log_std[0], INV_MILLS_AT_MINUS_1, 1e-12, "lower d_ls");

        // Upper tail, z_beta = +1, mirrored signs.
        let hi = score_capg(&p, &[], &[1.7], &b);
        assert_close(hi.d_mean_bias[0], INV_MILLS_AT_MINUS_1, 1e-12, "upper d_mu");
        assert_close(hi.d_log_std[0], INV_MILLS_AT_MINUS_1, 1e-12, "upper d_ls");

        // Exactly on a face counts as tail, and depends on u only through
        // clip(u): any further-out sample reports the same score.
        assert_eq!(score_capg(&p, &[], &[-1.0], &b), lo);
        assert_eq!(score_capg(&p, &[], &[-55.0], &b), lo);
        assert_eq!(score_capg(&p, &[], &[1.0], &b), hi);
    }

    #[test]
    fn score_capg_mixes_branches_across_dimensions() {
        let p = GaussianPolicyParams::state_independent(vec![0.0, 0.0, 0.0], vec![0.0; 3])
            .unwrap();
        let b = ActionBounds::symmetric(3, 1.0).unwrap();
        let s = score_capg(&p, &[], &[-2.0, 0.5, 3.0], &b);
        assert_close(s.d_mean_bias[0], -INV_MILLS_AT_MINUS_1, 1e-12, "dim 0 lower");
        assert_close(s.d_mean_bias[1], 0.5, 1e-15, "dim 1 interior");
        assert_close(s.d_mean_bias[2], INV_MILLS_AT_MINUS_1, 1e-12, "dim 2 upper");
    }

    #[test]
    fn log_prob_clipped_faces_and_interior() {
        let p = unit_policy(0.0);
        let b = ActionBounds::symmetric(1, 1.0).unwrap();
        assert_close(
            log_prob_clipped(&p, &[], &[-1.0], &b).unwrap(),
            -1.8410216450092636,
            1e-13,
            "lower face log Phi(-1)",
        );
        assert_close(
            log_prob_clipped(&p, &[], &[1.0], &b).unwrap(),
            -1.8410216450092636,
            1e-13,
            "upper face, symmetric here",
        );
        assert_eq!(
            log_prob_clipped(&p, &[], &[0.25], &b).unwrap(),
            log_prob(&p, &[], &[0.25]),
            "interior must be the plain Gaussian term"
        );
        assert!(matches!(
            log_prob_clipped(&p, &[], &[1.2], &b),
            Err(Error::OutOfBounds(_))
        ));
        assert!(log_prob_clipped(&p, &[], &[-1.0000001], &b).is_err());
    }

    #[test]
    fn sampling_is_seed_deterministic_and_clipping_matches() {
        let p = GaussianPolicyParams::state_independent(vec![0.0, 1.0], vec![0.4, -0.3])
            .unwrap();
        let b = ActionBounds::symmetric(2, 1.0).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let raw = sample_action(&p, &[], &mut r1);
            let clipped = sample_clipped(&p, &[], &b, &mut r2);
            assert_eq!(b.clip(&raw), clipped);
            assert!(b.contains(&clipped));
        }
    }

    #[test]
    fn flat_round_trips_preserve_layout() {
        let p = GaussianPolicyParams::affine(
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            vec![5.0, 6.0],
            vec![-0.5, 0.25],
        )
        .unwrap();
        let flat = p.to_flat();
        assert_eq!(flat, vec![1.0, 2.0, 5.0, 3.0, 4.0, 6.0, -0.5, 0.25]);
        assert_eq!(p.with_flat(&flat).unwrap(), p);
        assert_eq!(p.param_count(), flat.len());

        let s = ScoreResult {
            d_mean_weights: vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            d_mean_bias: vec![5.0, 6.0],
            d_log_std: vec![7.0, 8.0],
        };
        let sf = s.to_flat();
        assert_eq!(sf, vec![1.0, 2.0, 5.0, 3.0, 4.0, 6.0, 7.0, 8.0]);
        assert_eq!(ScoreResult::from_flat(2, 2, &sf).unwrap(), s);
        // Rebuilding enforces the floor again.
        assert!(p.with_flat(&[1.0, 2.0, 5.0, 3.0, 4.0, 6.0, -30.0, 0.25]).is_err());
    }
}
