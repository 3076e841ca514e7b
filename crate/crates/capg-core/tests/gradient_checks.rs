//! The analytic scores against central finite differences of the
//! log-likelihoods they claim to be gradients of.

use capg_core::policy::{
    log_prob, log_prob_clipped, score_capg, score_pg, ActionBounds, GaussianPolicyParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FD_STEP: f64 = 1e-5;
const REL_TOL: f64 = 1e-6;
/// Components whose true magnitude sits below central-difference resolution
/// (function values carry ~1e-14 absolute rounding, so the quotient carries
/// ~1e-9) are held to an absolute tolerance instead.
const ABS_TOL: f64 = 1e-7;

fn fd_gradient(
    params: &GaussianPolicyParams,
    f: impl Fn(&GaussianPolicyParams) -> f64,
) -> Vec<f64> {
    let flat = params.to_flat();
    (0..flat.len())
        .map(|j| {
            let mut up = flat.clone();
            up[j] += FD_STEP;
            let mut dn = flat.clone();
            dn[j] -= FD_STEP;
            let hi = f(&params.with_flat(&up).expect("perturbed params valid"));
            let lo = f(&params.with_flat(&dn).expect("perturbed params valid"));
            (hi - lo) / (2.0 * FD_STEP)
        })
        .collect()
}

fn assert_gradients_match(analytic: &[f64], fd: &[f64], what: &str) {
    for (j, (&a, &n)) in analytic.iter().zip(fd).enumerate() {
        let err = (a - n).abs();
        let ok = err <= REL_TOL * a.abs().max(n.abs()) || err <= ABS_TOL;
        assert!(ok, "{what}, component {j}: analytic {a}, fd {n}, err {err:e}");
    }
}

struct Config {
    params: GaussianPolicyParams,
    bounds: ActionBounds,
    state: Vec<f64>,
}

/// Random policy / bounds / state with every tail coordinate kept inside
/// |z| <= 8, where the face log-probabilities are still steep enough for the
/// finite-difference quotient to resolve.
fn random_config(rng: &mut ChaCha8Rng) -> Config {
    loop {
        let d = rng.gen_range(1..=3);
        let f = rng.gen_range(0..=2);
        let state: Vec<f64> = (0..f).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let weights: Vec<Vec<f64>> = (0..d)
            .map(|_| (0..f).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let bias: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let log_std: Vec<f64> = (0..d)
            .map(|_| rng.gen_range(0.1f64.ln()..10.0f64.ln()))
            .collect();
        let lower: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..-0.1)).collect();
        let upper: Vec<f64> = (0..d).map(|_| rng.gen_range(0.1..2.0)).collect();
        let params = GaussianPolicyParams::affine(weights, bias, log_std).unwrap();
        let bounds = ActionBounds::new(lower, upper).unwrap();
        let mean = params.mean(&state);
        let in_range = (0..d).all(|i| {
            let za = (bounds.lower()[i] - mean[i]) / params.std(i);
            let zb = (bounds.upper()[i] - mean[i]) / params.std(i);
            za.abs() <= 8.0 && zb.abs() <= 8.0
        });
        if in_range {
            return Config {
                params,
                bounds,
                state,
            };
        }
    }
}

/// Per-dimension action maker for one of the three branches.
fn action(cfg: &Config, pick: impl Fn(usize) -> u8, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..cfg.params.dim())
        .map(|i| {
            let (a, b) = (cfg.bounds.lower()[i], cfg.bounds.upper()[i]);
            match pick(i) {
                0 => a - rng.gen_range(0.0..2.0) * cfg.params.std(i),
                1 => a + (b - a) * rng.gen_range(0.05..0.95),
                _ => b + rng.gen_range(0.0..2.0) * cfg.params.std(i),
            }
        })
        .collect()
}

#[test]
fn pg_score_matches_finite_differences_on_100_random_configs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFD0);
    for k in 0..100 {
        let cfg = random_config(&mut rng);
        for branch in 0..3u8 {
            let u = action(&cfg, |_| branch, &mut rng);
            let analytic = score_pg(&cfg.params, &cfg.state, &u).to_flat();
            let fd = fd_gradient(&cfg.params, |p| log_prob(p, &cfg.state, &u));
            assert_gradients_match(&analytic, &fd, &format!("config {k} branch {branch}"));
        }
    }
}

#[test]
fn capg_score_matches_finite_differences_in_every_branch() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFD1);
    for k in 0..100 {
        let cfg = random_config(&mut rng);
        // Pure branches, exact faces, and a per-dimension mixture.
        let cases: Vec<(String, Vec<f64>)> = vec![
            ("lower".into(), action(&cfg, |_| 0, &mut rng)),
            ("interior".into(), action(&cfg, |_| 1, &mut rng)),
            ("upper".into(), action(&cfg, |_| 2, &mut rng)),
            ("lower face".into(), cfg.bounds.lower().to_vec()),
            ("upper face".into(), cfg.bounds.upper().to_vec()),
            ("mixed".into(), action(&cfg, |i| (i % 3) as u8, &mut rng)),
        ];
        for (name, u) in cases {
            let analytic = score_capg(&cfg.params, &cfg.state, &u, &cfg.bounds).to_flat();
            // The clipped score is the likelihood gradient of the *clipped*
            // sample, so differentiate the clipped log-density at clip(u).
            let at = cfg.bounds.clip(&u);
            let fd = fd_gradient(&cfg.params, |p| {
                log_prob_clipped(p, &cfg.state, &at, &cfg.bounds).unwrap()
            });
            assert_gradients_match(&analytic, &fd, &format!("config {k}, {name}"));
        }
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_setup() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>)>
    {
        // (bias, log_std, lower, upper, raw action offsets), all length d.
        (1usize..=3).prop_flat_map(|d| {
            (
                prop::collection::vec(-2.0..2.0f64, d),
                prop::collection::vec(0.1f64.ln()..10.0f64.ln(), d),
                prop::collection::vec(-2.0..-0.1f64, d),
                prop::collection::vec(0.1..2.0f64, d),
                prop::collection::vec(-3.0..3.0f64, d),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        /// Strictly interior samples make the two scores identical, bitwise.
        #[test]
        fn interior_scores_agree_exactly((bias, log_std, lower, upper, ts) in arb_setup()) {
            let params = GaussianPolicyParams::state_independent(bias, log_std).unwrap();
            let bounds = ActionBounds::new(lower, upper).unwrap();
            let u: Vec<f64> = (0..params.dim())
                .map(|i| {
                    let (a, b) = (bounds.lower()[i], bounds.upper()[i]);
                    let t = 0.05 + 0.9 * ((ts[i] / 6.0) + 0.5);
                    a + (b - a) * t
                })
                .collect();
            prop_assert!(bounds.contains(&u));
            let pg = score_pg(&params, &[], &u);
            let capg = score_capg(&params, &[], &u, &bounds);
            prop_assert_eq!(pg, capg);
        }

        /// The clipped score depends on the action only through clip(u).
        #[test]
        fn capg_score_is_clip_invariant((bias, log_std, lower, upper, offs) in arb_setup()) {
            let params = GaussianPolicyParams::state_independent(bias, log_std).unwrap();
            let bounds = ActionBounds::new(lower, upper).unwrap();
            let u: Vec<f64> = (0..params.dim())
                .map(|i| bounds.lower()[i] + offs[i] * 2.0)
                .collect();
            let clipped = bounds.clip(&u);
            let at_raw = score_capg(&params, &[], &u, &bounds);
            let at_clip = score_capg(&params, &[], &clipped, &bounds);
            prop_assert_eq!(at_raw, at_clip);
        }

        /// Inside the box the clipped log-density is the Gaussian one.
        #[test]
        fn clipped_log_prob_matches_gaussian_inside((bias, log_std, lower, upper, ts) in arb_setup()) {
            let params = GaussianPolicyParams::state_independent(bias, log_std).unwrap();
            let bounds = ActionBounds::new(lower, upper).unwrap();
            let u: Vec<f64> = (0..params.dim())
                .map(|i| {
                    let (a, b) = (bounds.lower()[i], bounds.upper()[i]);
                    a + (b - a) * (0.1 + 0.8 * ((ts[i] / 6.0) + 0.5))
                })
                .collect();
            let lp = log_prob_clipped(&params, &[], &u, &bounds).unwrap();
            prop_assert_eq!(lp, log_prob(&params, &[], &u));
        }
    }
}
