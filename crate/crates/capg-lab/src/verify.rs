//! Statistical verification of the estimator identities.
//!
//! Each check emits one row (name, statistic, threshold, pass). Statistics
//! are phrased as either an error bound (pass when at most the threshold) or
//! a separation requirement in standard-error units (pass when at least the
//! threshold), so the CSV is readable without knowing the internals.
//!
//! [`Corruption`] deliberately mis-wires the clipped score. It exists so the
//! suite can demonstrate that it detects broken tail handling rather than
//! passing vacuously; normal operation always uses [`Corruption::None`].

use capg_core::envs::BanditEnv;
use capg_core::policy::{
    log_prob, log_prob_clipped, sample_action, sample_clipped, score_capg, score_pg,
    ActionBounds, GaussianPolicyParams, ScoreResult,
};
use rand::Rng;

use crate::config::ExperimentConfig;
use crate::seeding::{stream_rng, DOMAIN_VERIFY};
use crate::stats::Moments;
use crate::table::{fmt_f64, Table};
use crate::LabError;

/// Deliberate faults for the mutation smoke test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// The real implementation.
    None,
    /// Negates the pooled score of upper-saturated dimensions.
    FlipUpperSign,
    /// Replaces the pooled tail scores with plain interior scores.
    DropTailPooling,
}

/// The clipped score under the requested fault.
fn capg_score(
    params: &GaussianPolicyParams,
    state: &[f64],
    action: &[f64],
    bounds: &ActionBounds,
    corruption: Corruption,
) -> ScoreResult {
    let mut score = score_capg(params, state, action, bounds);
    match corruption {
        Corruption::None => {}
        Corruption::FlipUpperSign => {
            for i in 0..params.dim() {
                if action[i] >= bounds.upper()[i] {
                    for w in &mut score.d_mean_weights[i] {
                        *w = -*w;
                    }
                    score.d_mean_bias[i] = -score.d_mean_bias[i];
                    score.d_log_std[i] = -score.d_log_std[i];
                }
            }
        }
        Corruption::DropTailPooling => {
            let plain = score_pg(params, state, action);
            for i in 0..params.dim() {
                if action[i] <= bounds.lower()[i] || action[i] >= bounds.upper()[i] {
                    score.d_mean_weights[i].clone_from(&plain.d_mean_weights[i]);
                    score.d_mean_bias[i] = plain.d_mean_bias[i];
                    score.d_log_std[i] = plain.d_log_std[i];
                }
            }
        }
    }
    score
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Default)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    fn at_most(&mut self, name: &str, statistic: f64, threshold: f64) {
        self.rows.push(CheckRow {
            name: name.to_string(),
            statistic,
            threshold,
            pass: statistic <= threshold,
        });
    }

    fn at_least(&mut self, name: &str, statistic: f64, threshold: f64) {
        self.rows.push(CheckRow {
            name: name.to_string(),
            statistic,
            threshold,
            pass: statistic >= threshold,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.name.as_str())
            .collect()
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(vec!["name", "statistic", "threshold", "pass"]);
        for row in &self.rows {
            table.push_row(vec![
                row.name.clone(),
                fmt_f64(row.statistic),
                fmt_f64(row.threshold),
                (if row.pass { "pass" } else { "fail" }).to_string(),
            ]);
        }
        table
    }
}

/// Runs the full suite. Heavy tail checks use `mc_samples` draws and the
/// paired checks a tenth of that, floored at ten thousand. The variance
/// partition check holds a one-percent tolerance, which takes a million
/// draws regardless of the configured budget.
pub fn run_verification(
    cfg: &ExperimentConfig,
    corruption: Corruption,
) -> Result<VerifyReport, LabError> {
    let seed = cfg.seeds[0];
    let n_heavy = cfg.mc_samples;
    let n_med = (cfg.mc_samples / 10).max(10_000);
    let n_partition = n_med.max(1_000_000);

    let mut report = VerifyReport::default();
    check_fd(corruption, seed, &mut report);
    check_interior_equivalence(corruption, seed, &mut report);
    check_clipped_mass(cfg, &mut report);
    check_face_frequencies(cfg, seed, n_med, &mut report);
    check_tail_identities(cfg, corruption, seed, n_heavy, &mut report);
    check_paired_scalar(cfg, corruption, seed, n_med, &mut report);
    check_paired_vector(corruption, seed, n_med, &mut report);
    check_variance_partition(cfg, corruption, seed, n_partition, &mut report);
    check_decomposed(cfg, corruption, seed, n_med, &mut report);
    Ok(report)
}

/// One-dimensional policy/bounds/env triple described by the config.
fn scalar_setup(cfg: &ExperimentConfig) -> (GaussianPolicyParams, ActionBounds, BanditEnv) {
    let policy = GaussianPolicyParams::state_independent(
        vec![cfg.init_mean],
        vec![cfg.init_log_std()],
    )
    .expect("validated policy parameters");
    let bounds = ActionBounds::new(vec![cfg.bound_lower], vec![cfg.bound_upper])
        .expect("validated bounds");
    let env = BanditEnv::new(1, bounds.clone()).expect("dimensions agree");
    (policy, bounds, env)
}

/// Standard-normal tail masses below `lower` and above `upper`.
fn tail_probabilities(cfg: &ExperimentConfig) -> (f64, f64) {
    let sigma = cfg.init_var.sqrt();
    let z_low = (cfg.bound_lower - cfg.init_mean) / sigma;
    let z_high = (cfg.bound_upper - cfg.init_mean) / sigma;
    let p_low = capg_core::gauss::std_normal_log_cdf(z_low)
        .expect("finite standardized bound")
        .exp();
    let p_high = capg_core::gauss::std_normal_log_sf(z_high)
        .expect("finite standardized bound")
        .exp();
    (p_low, p_high)
}

/// Ratio of `diff` to a standard error, with the degenerate cases pinned.
fn se_units(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff.abs() <= 1e-9 {
        0.0
    } else {
        // A nonzero difference with no measured spread cannot pass a
        // standard-error test; report a sentinel that fails every threshold.
        1e300_f64.copysign(diff)
    }
}

const FD_STEP: f64 = 1e-5;

/// Central-difference gradient of `f` in the flat parameter layout.
fn fd_flat_gradient(
    params: &GaussianPolicyParams,
    mut f: impl FnMut(&GaussianPolicyParams) -> f64,
) -> Vec<f64> {
    let base = params.to_flat();
    (0..base.len())
        .map(|k| {
            let mut hi = base.clone();
            hi[k] += FD_STEP;
            let mut lo = base.clone();
            lo[k] -= FD_STEP;
            let up = f(&params.with_flat(&hi).expect("perturbed parameters stay valid"));
            let down = f(&params.with_flat(&lo).expect("perturbed parameters stay valid"));
            (up - down) / (2.0 * FD_STEP)
        })
        .collect()
}

/// Worst per-component deviation, relative for large components and absolute
/// for components near zero.
fn mixed_deviation(analytic: &[f64], fd: &[f64]) -> f64 {
    analytic
        .iter()
        .zip(fd)
        .map(|(a, g)| (a - g).abs() / a.abs().max(1.0))
        .fold(0.0, f64::max)
}

/// Both scores against central differences of their log-probabilities, on
/// random configurations with one action per branch.
fn check_fd(corruption: Corruption, seed: u64, report: &mut VerifyReport) {
    let mut rng = stream_rng(seed, DOMAIN_VERIFY, 0);
    let mut worst_pg = 0.0_f64;
    let mut worst_capg = 0.0_f64;
    for _ in 0..100 {
        let d = rng.gen_range(1..=3);
        let f = rng.gen_range(0..=2);
        let weights: Vec<Vec<f64>> = (0..d)
            .map(|_| (0..f).map(|_| rng.gen_range(-0.5..0.5)).collect())
            .collect();
        let bias: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let log_std: Vec<f64> = (0..d)
            .map(|_| rng.gen_range(0.5_f64.ln()..2.0_f64.ln()))
            .collect();
        let params = GaussianPolicyParams::affine(weights, bias, log_std)
            .expect("sampled parameters are in range");
        let state: Vec<f64> = (0..f).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let lower: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..-0.2)).collect();
        let upper: Vec<f64> = (0..d).map(|_| rng.gen_range(0.2..2.0)).collect();
        let bounds =
            ActionBounds::new(lower.clone(), upper.clone()).expect("lower < upper");

        let actions: [Vec<f64>; 3] = [
            lower.iter().map(|a| a - 1.0).collect(),
            lower.iter().zip(&upper).map(|(a, b)| 0.5 * (a + b)).collect(),
            upper.iter().map(|b| b + 1.0).collect(),
        ];
        for u in &actions {
            let analytic = score_pg(&params, &state, u).to_flat();
            let fd = fd_flat_gradient(&params, |p| log_prob(p, &state, u));
            worst_pg = worst_pg.max(mixed_deviation(&analytic, &fd));

            let analytic = capg_score(&params, &state, u, &bounds, corruption).to_flat();
            let clipped = bounds.clip(u);
            let fd = fd_flat_gradient(&params, |p| {
                log_prob_clipped(p, &state, &clipped, &bounds)
                    .expect("clipped action lies in bounds")
            });
            worst_capg = worst_capg.max(mixed_deviation(&analytic, &fd));
        }
    }
    report.at_most("fd_score_pg", worst_pg, 1e-6);
    report.at_most("fd_score_capg", worst_capg, 1e-6);
}

/// With bounds no sample can reach, the clipped score must equal the plain
/// score bit for bit.
fn check_interior_equivalence(corruption: Corruption, seed: u64, report: &mut VerifyReport) {
    let params =
        GaussianPolicyParams::state_independent(vec![0.0, 0.5], vec![0.0, 0.2]).unwrap();
    let bounds = ActionBounds::new(vec![-50.0; 2], vec![50.0; 2]).unwrap();
    let mut rng = stream_rng(seed, DOMAIN_VERIFY, 1);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let u = sample_action(&params, &[], &mut rng);
        let plain = score_pg(&params, &[], &u).to_flat();
        let clipped = capg_score(&params, &[], &u, &bounds, corruption).to_flat();
        for (a, b) in plain.iter().zip(&clipped) {
            worst = worst.max((a - b).abs());
        }
    }
    report.at_most("interior_equivalence", worst, 0.0);
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    fn rule(f: &dyn Fn(f64) -> f64, a: f64, m: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        m: f64,
        b: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let left = rule(f, a, lm, m);
        let right = rule(f, m, rm, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            return left + right + delta / 15.0;
        }
        recurse(f, a, lm, m, left, 0.5 * eps, depth - 1)
            + recurse(f, m, rm, b, right, 0.5 * eps, depth - 1)
    }
    let m = 0.5 * (a + b);
    recurse(f, a, m, b, rule(f, a, m, b), eps, 40)
}

/// Face atoms plus the quadrature of the interior density must give total
/// mass one.
fn check_clipped_mass(cfg: &ExperimentConfig, report: &mut VerifyReport) {
    let cases = [
        (cfg.init_mean, cfg.init_var.sqrt(), cfg.bound_lower, cfg.bound_upper),
        (0.9, 2.0, -1.0, 1.0),
        (-0.3, 0.25, -0.5, 2.0),
    ];
    let mut worst = 0.0_f64;
    for (mu, sigma, lo, hi) in cases {
        let params =
            GaussianPolicyParams::state_independent(vec![mu], vec![sigma.ln()]).unwrap();
        let bounds = ActionBounds::new(vec![lo], vec![hi]).unwrap();
        let atom_low = log_prob_clipped(&params, &[], &[lo], &bounds)
            .expect("face action")
            .exp();
        let atom_high = log_prob_clipped(&params, &[], &[hi], &bounds)
            .expect("face action")
            .exp();
        let density = |u: f64| log_prob(&params, &[], &[u]).exp();
        let interior = adaptive_simpson(&density, lo, hi, 1e-13);
        worst = worst.max((atom_low + atom_high + interior - 1.0).abs());
    }
    report.at_most("clipped_mass", worst, 1e-9);
}

/// Sampled face frequencies against the analytic atom masses.
fn check_face_frequencies(
    cfg: &ExperimentConfig,
    seed: u64,
    n: usize,
    report: &mut VerifyReport,
) {
    let (params, bounds, _) = scalar_setup(cfg);
    let p_low = log_prob_clipped(&params, &[], &[cfg.bound_lower], &bounds)
        .expect("face action")
        .exp();
    let p_high = log_prob_clipped(&params, &[], &[cfg.bound_upper], &bounds)
        .expect("face action")
        .exp();
    let mut rng = stream_rng(seed, DOMAIN_VERIFY, 2);
    let mut hits_low = 0u64;
    let mut hits_high = 0u64;
    for _ in 0..n {
        let a = sample_clipped(&params, &[], &bounds, &mut rng)[0];
        if a == cfg.bound_lower {
            hits_low += 1;
        } else if a == cfg.bound_upper {
            hits_high += 1;
        }
    }
    for (name, hits, p) in [
        ("face_freq_lower", hits_low, p_low),
        ("face_freq_upper", hits_high, p_high),
    ] {
        let freq = hits as f64 / n as f64;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        report.at_most(name, se_units((freq - p).abs(), se), 3.0);
    }
}

/// Tail mean identity and tail variance ordering, measured in one pass.
///
/// The pooled tail score is a constant, so the masked mean of the plain
/// score must equal tail probability times that constant, and the masked
/// variance of the pooled score can never exceed the plain one.
fn check_tail_identities(
    cfg: &ExperimentConfig,
    corruption: Corruption,
    seed: u64,
    n: usize,
    report: &mut VerifyReport,
) {
    let (params, bounds, _) = scalar_setup(cfg);
    let (p_low, p_high) = tail_probabilities(cfg);
    let pooled = [
        capg_score(&params, &[], &[cfg.bound_lower - 1.0], &bounds, corruption).to_flat(),
        capg_score(&params, &[], &[cfg.bound_upper + 1.0], &bounds, corruption).to_flat(),
    ];

    let mut rng = stream_rng(seed, DOMAIN_VERIFY, 3);
    let mut masked_plain = [[Moments::new(), Moments::new()], [Moments::new(), Moments::new()]];
    let mut masked_pooled = [[Moments::new(), Moments::new()], [Moments::new(), Moments::new()]];
    for _ in 0..n {
        let u = sample_action(&params, &[], &mut rng)[0];
        let plain = score_pg(&params, &[], &[u]).to_flat();
        let in_tail = [u <= cfg.bound_lower, u >= cfg.bound_upper];
        for tail in 0..2 {
            let mask = if in_tail[tail] { 1.0 } else { 0.0 };
            for param in 0..2 {
                masked_plain[tail][param].push(mask * plain[param]);
                masked_pooled[tail][param].push(mask * pooled[tail][param]);
            }
        }
    }

    let tails = [("lower", p_low), ("upper", p_high)];
    for (tail, (tag, p)) in tails.iter().enumerate() {
        for (param, pname) in ["mu", "logsigma"].iter().enumerate() {
            let acc = &masked_plain[tail][param];
            let expected = p * pooled[tail][param];
            let stat = se_units((acc.mean() - expected).abs(), acc.se_mean());
            report.at_most(&format!("tail_mean_{tag}_{pname}"), stat, 4.0);
        }
    }
    for (tail, (tag, p)) in tails.iter().enumerate() {
        for (param, pname) in ["mu", "logsigma"].iter().enumerate() {
            let plain = &masked_plain[tail][param];
            let pooled_acc = &masked_pooled[tail][param];
            let diff = plain.variance() - pooled_acc.variance();
            let se = plain.se_variance().hypot(pooled_acc.se_variance());
            // Strict separation only when the tail carries real mass;
            // otherwise both variances are essentially zero.
            let threshold = if *p > 0.01 { 5.0 } else { -4.0 };
            report.at_least(&format!("tail_var_order_{tag}_{pname}"), se_units(diff, se), threshold);
        }
    }
}

/// Paired single-sample gradient terms under a clip-invariant weight: equal
/// means (unbiasedness transfers) and smaller clipped-score variance.
fn check_paired_scalar(
    cfg: &ExperimentConfig,
    corruption: Corruption,
    seed: u64,
    n: usize,
    report: &mut VerifyReport,
) {
    let (params, bounds, env) = scalar_setup(cfg);
    let (p_low, p_high) = tail_probabilities(cfg);
    let mut rng = stream_rng(seed, DOMAIN_VERIFY, 4);
    let mut diff = [Moments::new(), Moments::new()];
    let mut plain_acc = [Moments::new(), Moments::new()];
    let mut clipped_acc = [Moments::new(), Moments::new()];
    for _ in 0..n {
        let u = sample_action(&params, &[], &mut rng);
        let w = env.reward(&u);
        let plain = score_pg(&params, &[], &u).to_flat();
        let clipped = capg_score(&params, &[], &u, &bounds, corruption).to_flat();
        for param in 0..2 {
            let a = w * plain[param];
            let b = w * clipped[param];
            plain_acc[param].push(a);
            clipped_acc[param].push(b);
            diff[param].push(a - b);
        }
    }
    for (param, pname) in ["mu", "logsigma"].iter().enumerate() {
        let stat = se_units(diff[param].mean().abs(), diff[param].se_mean());
        report.at_most(&format!("paired_mean_{pname}"), stat, 4.0);
    }
    let threshold = if p_low + p_high >= 0.05 { 5.0 } else { -4.0 };
    for (param, pname) in ["mu", "logsigma"].iter().enumerate() {
        let dv = plain_acc[param].variance() - clipped_acc[param].variance();
        let se = plain_acc[param].se_variance().hypot(clipped_acc[param].se_variance());
        report.at_least(&format!("paired_var_order_{pname}"), se_units(dv, se), threshold);
    }
}

/// The same paired comparison on a fixed three-dimensional policy whose
/// means sit at increasing depths against the box.
fn check_paired_vector(
    corruption: Corruption,
    seed: u64,
    n: usize,
    report: &mut VerifyReport,
) {
    let params = GaussianPolicyParams::state_independent(
        vec![0.0, 0.5, 1.0],
        vec![0.0, 0.0, 0.0],
    )
    .unwrap();
    let bounds = ActionBounds::new(vec![-1.0; 3], vec![1.0; 3]).unwrap();
    let env = BanditEnv::new(3, bounds.clone()).unwrap();
    let p = params.param_count();
    let mut rng = stream_rng(seed, DOMAIN_VERIFY, 5);
    let mut diff = vec![Moments::new(); p];
    let mut plain_acc = vec![Moments::new(); p];
    let mut clipped_acc = vec![Moments::new(); p];
    for _ in 0..n {
        let u = sample_action(&params, &[], &mut rng);
        let w = env.reward(&u);
        let plain = score_pg(&params, &[], &u).to_flat();
        let clipped = capg_score(&params, &[], &u, &bounds, corruption).to_flat();
        for param in 0..p {
            let a = w * plain[param];
            let b = w * clipped[param];
            plain_acc[param].push(a);
            clipped_acc[param].push(b);
            diff[param].push(a - b);
        }
    }
    let worst_mean = (0..p)
        .map(|k| se_units(diff[k].mean().abs(), diff[k].se_mean()))
        .fold(0.0, f64::max);
    report.at_most("paired_mean_d3", worst_mean, 4.0);
    // Every dimension of this policy keeps at least five percent clip mass,
    // so strict separation applies across the board.
    let least_var_gap = (0..p)
        .map(|k| {
            let dv = plain_acc[k].variance() - clipped_acc[k].variance();
            let se = plain_acc[k].se_variance().hypot(clipped_acc[k].se_variance());
            se_units(dv, se)
        })
        .fold(f64::INFINITY, f64::min);
    report.at_least("paired_var_order_d3", least_var_gap, 5.0);
}

/// Variance of the full gradient term against its reconstruction from the
/// three region-masked pieces, using independent streams for the two sides.
fn check_variance_partition(
    cfg: &ExperimentConfig,
    corruption: Corruption,
    seed: u64,
    n: usize,
    report: &mut VerifyReport,
) {
    let (params, bounds, env) = scalar_setup(cfg);
    let mut rng_total = stream_rng(seed, DOMAIN_VERIFY, 6);
    let mut rng_parts = stream_rng(seed, DOMAIN_VERIFY, 7);

    let mut total = [Moments::new(), Moments::new()];
    for _ in 0..n {
        let u = sample_action(&params, &[], &mut rng_total);
        let w = env.reward(&u);
        let clipped = capg_score(&params, &[], &u, &bounds, corruption).to_flat();
        for param in 0..2 {
            total[param].push(w * clipped[param]);
        }
    }

    // masked[region][param], regions: below, interior, above.
    let mut masked = [
        [Moments::new(), Moments::new()],
        [Moments::new(), Moments::new()],
        [Moments::new(), Moments::new()],
    ];
    for _ in 0..n {
        let u = sample_action(&params, &[], &mut rng_parts);
        let w = env.reward(&u);
        let clipped = capg_score(&params, &[], &u, &bounds, corruption).to_flat();
        let region = if u[0] <= cfg.bound_lower {
            0
        } else if u[0] >= cfg.bound_upper {
            2
        } else {
            1
        };
        for param in 0..2 {
            for r in 0..3 {
                let mask = if r == region { 1.0 } else { 0.0 };
                masked[r][param].push(mask * w * clipped[param]);
            }
        }
    }

    for (param, pname) in ["mu", "logsigma"].iter().enumerate() {
        let lhs = total[param].variance();
        let vars: Vec<f64> = (0..3).map(|r| masked[r][param].variance()).collect();
        let means: Vec<f64> = (0..3).map(|r| masked[r][param].mean()).collect();
        let cross = means[0] * means[1] + means[0] * means[2] + means[1] * means[2];
        let rhs = vars.iter().sum::<f64>() - 2.0 * cross;
        let stat = if lhs > 0.0 { (rhs / lhs - 1.0).abs() } else { 0.0 };
        report.at_most(&format!("var_partition_{pname}"), stat, 0.01);
    }
}

/// The split estimator (plain score on the pre-clip penalty, pooled score on
/// the clip-invariant part) against the plain estimator on the total reward.
fn check_decomposed(
    cfg: &ExperimentConfig,
    corruption: Corruption,
    seed: u64,
    n: usize,
    report: &mut VerifyReport,
) {
    let (params, bounds, env) = scalar_setup(cfg);
    let (p_low, p_high) = tail_probabilities(cfg);
    let c = if cfg.penalty_coef > 0.0 { cfg.penalty_coef } else { 0.1 };
    let mut rng = stream_rng(seed, DOMAIN_VERIFY, 8);
    let mut diff = [Moments::new(), Moments::new()];
    let mut plain_acc = [Moments::new(), Moments::new()];
    let mut split_acc = [Moments::new(), Moments::new()];
    for _ in 0..n {
        let u = sample_action(&params, &[], &mut rng);
        let invariant = env.reward(&u);
        let immediate = env.penalty_reward(&u, c) - invariant;
        let plain = score_pg(&params, &[], &u).to_flat();
        let clipped = capg_score(&params, &[], &u, &bounds, corruption).to_flat();
        for param in 0..2 {
            let a = (immediate + invariant) * plain[param];
            let b = immediate * plain[param] + invariant * clipped[param];
            plain_acc[param].push(a);
            split_acc[param].push(b);
            diff[param].push(a - b);
        }
    }
    for (param, pname) in ["mu", "logsigma"].iter().enumerate() {
        let stat = se_units(diff[param].mean().abs(), diff[param].se_mean());
        report.at_most(&format!("decomposed_mean_{pname}"), stat, 4.0);
    }
    // Without clip mass the two estimators differ only by floating-point
    // re-association, so the comparison is only meaningful within noise.
    let threshold = if p_low + p_high >= 0.05 { 0.0 } else { -4.0 };
    for (param, pname) in ["mu", "logsigma"].iter().enumerate() {
        let dv = plain_acc[param].variance() - split_acc[param].variance();
        let se = plain_acc[param].se_variance().hypot(split_acc[param].se_variance());
        report.at_least(&format!("decomposed_var_{pname}"), se_units(dv, se), threshold);
    }
}
