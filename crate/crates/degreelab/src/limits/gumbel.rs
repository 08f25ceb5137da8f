//! Limit laws of centered-scaled top order statistics of exponential
//! variates: the generalized Gumbel family `G_s`, the two-rank joint law
//! `J_s`, and an exact sampler for the limiting pair.
//!
//! The sampler rests on the Poisson-process representation of the extremal
//! limit: under `t = e^-x` the limiting point process becomes unit-rate
//! Poisson on (0, inf), so the s-th deepest limit point is `-ln(G_s)` with
//! `G_s` a sum of s unit exponentials. This is an implementation device, not
//! a quoted formula; property tests pin its marginals to `G_s` and the pair
//! law to `J_s` before anything else relies on it.

use crate::rng::RandomStream;

use super::fujihara::ln_factorial;

/// CDF of the s-th largest centered-scaled exponential order statistic in
/// the large-sample limit:
/// `G_s(x) = (sum_{m<s} e^(-mx)/m!) * exp(-e^(-x))`, clamped to [0, 1].
pub fn gumbel_gs_cdf(s: u32, x: f64) -> f64 {
    assert!(s >= 1, "rank s must be at least 1");
    let gumbel_log = -(-x).exp(); // -inf for very negative x is fine: exp(-inf) = 0
    let mut total = 0.0;
    for m in 0..s {
        let lw = if m == 0 {
            gumbel_log
        } else {
            -f64::from(m) * x - ln_factorial(u64::from(m)) + gumbel_log
        };
        total += lw.exp();
    }
    total.clamp(0.0, 1.0)
}

/// Joint CDF of the (s+1)-th and s-th largest centered-scaled order
/// statistics in the limit: `J_s(x_next, x_s)` with `x_next` bounding the
/// deeper (smaller) rank-(s+1) statistic. Uses the convention 0^0 = 1, and
/// accepts infinite arguments, under which it collapses to the marginals.
pub fn joint_js_cdf(s: u32, x_next: f64, x_s: f64) -> f64 {
    assert!(s >= 1, "rank s must be at least 1");
    let x_min = x_s.min(x_next);
    let base = (-x_min).exp() - (-x_s).exp(); // >= 0; exactly 0 when x_s <= x_next
    let gumbel_log = -(-x_min).exp();
    let mut total = 0.0;
    for k_s in 0..s {
        for k_next in k_s..=s {
            let j = k_next - k_s;
            let mut lw = gumbel_log;
            if k_s > 0 {
                lw += -f64::from(k_s) * x_s - ln_factorial(u64::from(k_s));
            }
            if j > 0 {
                // base = 0 gives ln -> -inf and a vanishing term, which is
                // exactly the 0^j contribution for j > 0
                lw += f64::from(j) * base.ln() - ln_factorial(u64::from(j));
            }
            total += lw.exp();
        }
    }
    total.clamp(0.0, 1.0)
}

/// One draw of the limiting pair `(L_d, L_{d+1})` of the d-th and (d+1)-th
/// ranked statistics: `L_d = -ln(G_d)`, `L_{d+1} = -ln(G_d + E)` with `G_d`
/// a Gamma(d, 1) variate and `E` a further unit exponential.
#[derive(Debug, Clone, Copy)]
pub struct ExtremePairSample {
    /// Rank of the shallower statistic.
    pub d: u32,
    /// Limit value at rank d.
    pub lambda_d: f64,
    /// Limit value at rank d+1; never exceeds `lambda_d`.
    pub lambda_d1: f64,
}

/// Samples the limiting pair for rank `d >= 1`.
pub fn sample_lambda_pair(d: u32, stream: &mut RandomStream) -> ExtremePairSample {
    assert!(d >= 1, "rank d must be at least 1");
    let mut gamma = 0.0;
    for _ in 0..d {
        gamma += stream.sample_exp_unit();
    }
    let extra = stream.sample_exp_unit();
    ExtremePairSample {
        d,
        lambda_d: -gamma.ln(),
        lambda_d1: -(gamma + extra).ln(),
    }
}
