//! Policy-gradient building blocks for Gaussian policies whose actions are
//! clipped into a box before they reach the environment.
//!
//! Clipping piles probability mass onto the box faces. The plain likelihood
//! score ignores that and pays for it in variance; the clipped-action score
//! replaces the per-dimension score with the gradient of the tail
//! log-probability whenever the sampled action lands outside the box. Both
//! estimators have the same expectation, the clipped one never has more
//! variance.
//!
//! Module layout:
//! - [`gauss`]: log-space standard-normal tail functions.
//! - [`policy`]: diagonal Gaussian policies, their scores and the clipped
//!   sampling distribution.
//! - [`estimator`]: batch gradient estimators over either score.
//! - [`optim`]: Adam on the flattened parameter vector.
//! - [`envs`]: the toy environments the estimators are exercised on.

pub mod envs;
pub mod estimator;
pub mod gauss;
pub mod optim;
pub mod policy;

mod error;

pub use error::{Error, Result};
