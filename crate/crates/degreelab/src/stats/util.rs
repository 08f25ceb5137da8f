//! Small numeric helpers shared by the estimators.

/// Kahan compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// Number of batches used by every batch-means standard error in the crate.
pub(crate) const BATCHES: usize = 20;

/// Assigns item `i` of `total` to a contiguous batch.
#[inline]
pub(crate) fn batch_of(i: u64, total: u64) -> usize {
    ((i as u128 * BATCHES as u128) / total.max(1) as u128) as usize
}

/// Standard error of a batch-means series: sd of the per-batch estimates
/// over sqrt(B). Degenerate (constant or single-batch) series report 0.
pub(crate) fn batch_means_se(batch_estimates: &[f64]) -> f64 {
    let b = batch_estimates.len();
    if b < 2 {
        return 0.0;
    }
    let mean = batch_estimates.iter().sum::<f64>() / b as f64;
    let var = batch_estimates
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / (b - 1) as f64;
    (var / b as f64).sqrt()
}
