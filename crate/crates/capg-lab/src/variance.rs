//! Fixed-policy gradient statistics over a (mean, variance) grid.
//!
//! For every grid cell both estimators see the same baselined batches, so a
//! variance comparison between their output columns is a paired comparison
//! with the batch noise cancelled.

use capg_core::envs::BanditEnv;
use capg_core::estimator::{apply_baseline, estimate, BaselineMode, Batch, BatchEntry, EstimatorKind};
use capg_core::policy::{sample_action, GaussianPolicyParams};

use crate::config::ExperimentConfig;
use crate::seeding::{stream_rng, DOMAIN_VARIANCE};
use crate::stats::Moments;
use crate::table::{fmt_f64, Table};
use crate::LabError;

pub const HEADER: [&str; 9] = [
    "mean",
    "var",
    "d",
    "parameter",
    "estimator",
    "grad_mean",
    "grad_std",
    "n_batches",
    "batch_size",
];

/// Flat-parameter display name for a state-independent policy.
fn parameter_name(index: usize, d: usize) -> String {
    if index < d {
        format!("mu_{index}")
    } else {
        format!("logsigma_{}", index - d)
    }
}

/// Runs the grid and returns one row per (cell, parameter, estimator).
pub fn run_variance_grid(cfg: &ExperimentConfig) -> Result<Table, LabError> {
    let bounds = cfg.bounds();
    let env = BanditEnv::new(cfg.d, bounds.clone()).expect("bounds match d");
    let master_seed = cfg.seeds[0];
    let mut table = Table::new(HEADER.to_vec());

    for (mi, &mean) in cfg.grid_means.iter().enumerate() {
        for (vi, &var) in cfg.grid_vars.iter().enumerate() {
            let cell = (mi * cfg.grid_vars.len() + vi) as u64;
            let mut rng = stream_rng(master_seed, DOMAIN_VARIANCE, cell);
            let policy = GaussianPolicyParams::state_independent(
                vec![mean; cfg.d],
                vec![0.5 * var.ln(); cfg.d],
            )
            .expect("grid cell parameters were validated");

            let p = policy.param_count();
            let mut pg_acc = vec![Moments::new(); p];
            let mut capg_acc = vec![Moments::new(); p];
            for _ in 0..cfg.mc_batches {
                let entries = (0..cfg.batch_size)
                    .map(|_| {
                        let action = sample_action(&policy, &[], &mut rng);
                        let weight = env.reward(&action);
                        BatchEntry { state: vec![], action, weight }
                    })
                    .collect();
                let batch = Batch::new(entries).expect("batch built from policy samples");
                let batch = apply_baseline(&batch, BaselineMode::BatchMean);
                let pg = estimate(&batch, &policy, &bounds, EstimatorKind::Pg)
                    .expect("shapes match by construction");
                let capg = estimate(&batch, &policy, &bounds, EstimatorKind::Capg)
                    .expect("shapes match by construction");
                for (acc, g) in pg_acc.iter_mut().zip(pg.to_flat()) {
                    acc.push(g);
                }
                for (acc, g) in capg_acc.iter_mut().zip(capg.to_flat()) {
                    acc.push(g);
                }
            }

            for param in 0..p {
                for (kind, acc) in [
                    (EstimatorKind::Pg, &pg_acc[param]),
                    (EstimatorKind::Capg, &capg_acc[param]),
                ] {
                    table.push_row(vec![
                        fmt_f64(mean),
                        fmt_f64(var),
                        cfg.d.to_string(),
                        parameter_name(param, cfg.d),
                        kind.tag().to_string(),
                        fmt_f64(acc.mean()),
                        fmt_f64(acc.std_dev()),
                        cfg.mc_batches.to_string(),
                        cfg.batch_size.to_string(),
                    ]);
                }
            }
        }
    }
    Ok(table)
}
