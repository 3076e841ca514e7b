//! Streaming moment accumulators for Monte-Carlo summaries.

/// Online mean/variance with third and fourth central moments, so both the
/// standard error of the mean and the standard error of the sample variance
/// are available without a second pass.
#[derive(Debug, Clone, Default)]
pub struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
    m3: f64,
    m4: f64,
}

impl Moments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        debug_assert!(x.is_finite(), "non-finite sample {x}");
        self.n += 1;
        let n = self.n as f64;
        let delta = x - self.mean;
        let delta_n = delta / n;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * (n - 1.0);
        self.m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * self.m2
            - 4.0 * delta_n * self.m3;
        self.m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * self.m2;
        self.m2 += term1;
        self.mean += delta_n;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        assert!(self.n > 0, "mean of empty accumulator");
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        assert!(self.n > 1, "variance needs at least two samples");
        self.m2 / (self.n as f64 - 1.0)
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Standard error of the sample mean.
    pub fn se_mean(&self) -> f64 {
        (self.variance() / self.n as f64).sqrt()
    }

    /// Asymptotic standard error of the sample variance,
    /// sqrt((m4 - (n-3)/(n-1) * s^4) / n).
    pub fn se_variance(&self) -> f64 {
        assert!(self.n > 3, "variance standard error needs several samples");
        let n = self.n as f64;
        let s2 = self.variance();
        let m4 = self.m4 / n;
        let inner = (m4 - (n - 3.0) / (n - 1.0) * s2 * s2) / n;
        inner.max(0.0).sqrt()
    }
}
