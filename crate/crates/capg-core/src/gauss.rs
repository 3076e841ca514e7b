//! Standard-normal primitives for tail-aware gradient computations.
//!
//! Everything here works in log space so that tail quantities stay usable far
//! past the point where `Φ(z)` itself would round to 0 or 1. The CDF goes
//! through `erfc`, never through a naive `ln(Φ(z))`.

use crate::error::{Error, Result};

/// ln(sqrt(2π)).
pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Largest |z| the log-tail functions evaluate exactly. `Φ(-37)` is about
/// 5.7e-300, still a normal f64; a few steps further out erfc underflows and
/// log quantities would degenerate to `-inf`.
pub const Z_LIMIT: f64 = 37.0;

/// A standardized coordinate `z = (x - mu) / sigma`, validated finite.
///
/// The subtraction can overflow for extreme but finite inputs; the value is
/// saturated so `z` never becomes infinite or NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardizedPoint {
    z: f64,
}

impl StandardizedPoint {
    pub fn new(x: f64, mu: f64, sigma: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NonFinite("x"));
        }
        if !mu.is_finite() {
            return Err(Error::NonFinite("mu"));
        }
        if !sigma.is_finite() {
            return Err(Error::NonFinite("sigma"));
        }
        if sigma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        Ok(Self {
            z: standardize(x, mu, sigma),
        })
    }

    pub fn z(self) -> f64 {
        self.z
    }
}

/// `(x - mu) / sigma`, saturated to the finite range.
pub(crate) fn standardize(x: f64, mu: f64, sigma: f64) -> f64 {
    let raw = (x - mu) / sigma;
    if raw.is_finite() {
        raw
    } else {
        f64::MAX.copysign(raw)
    }
}

fn ensure_finite(z: f64) -> Result<f64> {
    if z.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite("z"))
    }
}

/// Clamps |z| to [`Z_LIMIT`] so log-tail results stay finite. Reaching the
/// clamp means the caller's policy has drifted somewhere pathological, which
/// is worth flagging but not worth killing a training run over.
pub(crate) fn clamp_tail(z: f64) -> f64 {
    if z.abs() > Z_LIMIT {
        log::warn!("standardized value {z:e} beyond ±{Z_LIMIT}, clamping");
        z.clamp(-Z_LIMIT, Z_LIMIT)
    } else {
        z
    }
}

/// Standard normal density φ(z).
pub fn std_normal_pdf(z: f64) -> Result<f64> {
    Ok(pdf_raw(ensure_finite(z)?))
}

pub(crate) fn pdf_raw(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

pub(crate) fn log_pdf_raw(z: f64) -> f64 {
    -0.5 * z * z - LN_SQRT_2PI
}

/// log Φ(z), accurate over the whole clamped range.
///
/// For z ≤ 0 this is `ln(erfc(-z/√2) / 2)`: erfc of a positive argument
/// carries the tail at full relative precision down to z = -37. For z > 0 it
/// switches to `log1p(-Φ(-z))` so the result keeps relative accuracy as it
/// approaches 0 from below.
pub fn std_normal_log_cdf(z: f64) -> Result<f64> {
    Ok(log_cdf_raw(ensure_finite(z)?))
}

pub(crate) fn log_cdf_raw(z: f64) -> f64 {
    let z = clamp_tail(z);
    if z <= 0.0 {
        (0.5 * libm::erfc(-z / SQRT_2)).ln()
    } else {
        (-0.5 * libm::erfc(z / SQRT_2)).ln_1p()
    }
}

/// log(1 - Φ(z)), by reflection: delegates to [`std_normal_log_cdf`] at -z,
/// so the two functions agree bit for bit.
pub fn std_normal_log_sf(z: f64) -> Result<f64> {
    Ok(log_sf_raw(ensure_finite(z)?))
}

pub(crate) fn log_sf_raw(z: f64) -> f64 {
    log_cdf_raw(-z)
}

/// Lower inverse Mills ratio φ(z)/Φ(z), the slope of log Φ.
///
/// Evaluated as `exp(log φ(z) - log Φ(z))`: the direct ratio would need
/// φ and Φ separately, and both underflow long before their log-space
/// difference loses accuracy. Grows like -z in the left tail.
pub fn inv_mills_lower(z: f64) -> Result<f64> {
    Ok(inv_mills_lower_raw(ensure_finite(z)?))
}

pub(crate) fn inv_mills_lower_raw(z: f64) -> f64 {
    let z = clamp_tail(z);
    (log_pdf_raw(z) - log_cdf_raw(z)).exp()
}

/// Upper inverse Mills ratio φ(z)/(1 - Φ(z)), by reflection of
/// [`inv_mills_lower`].
pub fn inv_mills_upper(z: f64) -> Result<f64> {
    Ok(inv_mills_upper_raw(ensure_finite(z)?))
}

pub(crate) fn inv_mills_upper_raw(z: f64) -> f64 {
    inv_mills_lower_raw(-z)
}
