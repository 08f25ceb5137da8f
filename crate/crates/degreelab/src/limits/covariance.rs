//! Limiting covariances of same-degree indicators in the threshold model,
//! plus the finite-sample order-statistics checks that validate them.
//!
//! `C(0)` has a closed integral form over Pareto(1) variates (the law of
//! `exp(lambda * xi)` for exponential fitness, rate-free). `C(d)` for d >= 1
//! is the variance of `W = min(1, 1/G_d) - min(1, 1/(G_d + E))`, evaluated by
//! Monte Carlo over the same Gamma representation the pair sampler uses.
//! The finite-p estimators re-derive both quantities from raw exponential
//! samples through exceedance counting, giving an independent route that the
//! acceptance suite compares against the limit evaluators.

use rayon::prelude::*;

use crate::rng::RandomStream;
use crate::stats::util::{batch_means_se, batch_of, BATCHES};

use super::quad::{self, QuadratureResult};
use super::LimitError;

/// A Monte-Carlo point estimate with a batch-means standard error.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub draws: u64,
}

/// P(X1 + X2 > theta) for two independent Exp(lambda) variates:
/// `(1 + lambda theta) e^(-lambda theta)`.
pub fn erlang2_tail(lambda: f64, theta: f64) -> f64 {
    let lt = lambda * theta;
    (1.0 + lt) * (-lt).exp()
}

/// Limiting covariance of the degree-0 indicators at two fixed nodes,
/// through the one-dimensional reduction: with T, T1, T2 i.i.d. Pareto(1),
///
/// ```text
///   C(0) = E[e^(-max(T1,T2))] - E[e^(-T)]^2
///        = int_1^inf e^(-t) 2 (1 - 1/t) t^-2 dt  -  p(0)^2
/// ```
///
/// where `p(0)` is the heavy-tailed pmf at zero (the same integral without
/// the max-density factor). The result is strictly positive.
pub fn limit_cov_c0(rel_tol: f64) -> Result<QuadratureResult, LimitError> {
    if rel_tol.is_nan() || rel_tol <= 0.0 {
        return Err(LimitError::NonPositiveParameter);
    }
    let abs_tol = rel_tol * 0.05; // C(0) is order 5e-2
    let max_term = quad::integrate_to_infinity(
        |t| (-t).exp() * 2.0 * (1.0 - 1.0 / t) / (t * t),
        1.0,
        abs_tol,
        |cut| 2.0 * (-cut).exp(),
    )
    .map_err(LimitError::Quadrature)?;
    let p0 = super::fujihara::fujihara_pmf(0, rel_tol)?;
    let value = max_term.value - p0.value * p0.value;
    let err = max_term.abs_error_estimate + 2.0 * p0.value * p0.abs_error_estimate;
    Ok(QuadratureResult {
        value,
        abs_error_estimate: err,
    })
}

/// The same quantity through direct two-dimensional (iterated) quadrature of
/// `e^(-max(t,s)) t^-2 s^-2` over the quarter-plane, splitting the inner
/// integral at the diagonal kink. Cross-checks `limit_cov_c0`.
pub fn limit_cov_c0_direct2d(rel_tol: f64) -> Result<QuadratureResult, LimitError> {
    if rel_tol.is_nan() || rel_tol <= 0.0 {
        return Err(LimitError::NonPositiveParameter);
    }
    let abs_tol = rel_tol * 0.05;
    let inner_tol = abs_tol / 100.0;
    let inner_failed = std::cell::Cell::new(false);
    let inner_err = std::cell::Cell::new(0.0f64);
    let inner = |t: f64| -> f64 {
        // s <= t: e^(-max) = e^(-t) is constant over the panel
        let low = quad::integrate(|s| 1.0 / (s * s), 1.0, t, inner_tol)
            .map(|r| {
                inner_err.set(inner_err.get() + r.abs_error_estimate);
                r.value * (-t).exp()
            })
            .unwrap_or_else(|_| {
                inner_failed.set(true);
                0.0
            });
        let high = quad::integrate_to_infinity(
            |s| (-s).exp() / (s * s),
            t,
            inner_tol,
            |cut| (-cut).exp(),
        )
        .map(|r| {
            inner_err.set(inner_err.get() + r.abs_error_estimate);
            r.value
        })
        .unwrap_or_else(|_| {
            inner_failed.set(true);
            0.0
        });
        low + high
    };
    let max_term = quad::integrate_to_infinity(
        |t| inner(t) / (t * t),
        1.0,
        abs_tol,
        |cut| 2.0 * (-cut).exp(),
    )
    .map_err(LimitError::Quadrature)?;
    if inner_failed.get() {
        return Err(LimitError::Quadrature(quad::QuadratureError::NonConvergence {
            requested: inner_tol,
            achieved: f64::NAN,
        }));
    }
    let p0 = super::fujihara::fujihara_pmf(0, rel_tol)?;
    Ok(QuadratureResult {
        value: max_term.value - p0.value * p0.value,
        abs_error_estimate: max_term.abs_error_estimate
            + inner_err.get()
            + 2.0 * p0.value * p0.abs_error_estimate,
    })
}

/// Monte-Carlo estimate of `C(d)` for `d >= 1` as the variance of
/// `W = min(1, 1/G_d) - min(1, 1/(G_d + E))` with `G_d ~ Gamma(d, 1)` and
/// `E ~ Exp(1)`. Requires at least 1e4 draws; the standard error comes from
/// twenty equal batches.
pub fn limit_cov_cd(d: u32, draws: u64, stream: &mut RandomStream) -> MonteCarloEstimate {
    assert!(d >= 1, "C(d) Monte Carlo needs d >= 1");
    assert!(draws >= 10_000, "C(d) Monte Carlo needs at least 1e4 draws");
    let mut bs_w = [0.0f64; BATCHES];
    let mut bs_w2 = [0.0f64; BATCHES];
    let mut bn = [0u64; BATCHES];
    for i in 0..draws {
        let mut gamma = 0.0;
        for _ in 0..d {
            gamma += stream.sample_exp_unit();
        }
        let extra = stream.sample_exp_unit();
        let w = (1.0 / gamma).min(1.0) - (1.0 / (gamma + extra)).min(1.0);
        debug_assert!((0.0..1.0).contains(&w));
        let b = batch_of(i, draws);
        bs_w[b] += w;
        bs_w2[b] += w * w;
        bn[b] += 1;
    }
    let (sw, sw2): (f64, f64) = (bs_w.iter().sum(), bs_w2.iter().sum());
    let n = draws as f64;
    let mean = sw / n;
    let variance = sw2 / n - mean * mean;
    let batch_vars: Vec<f64> = (0..BATCHES)
        .filter(|&b| bn[b] > 0)
        .map(|b| {
            let nb = bn[b] as f64;
            let m = bs_w[b] / nb;
            bs_w2[b] / nb - m * m
        })
        .collect();
    MonteCarloEstimate {
        estimate: variance,
        standard_error: batch_means_se(&batch_vars),
        draws,
    }
}

/// Empirical `P(lambda (eta_{p|s} - theta*_p) <= x)` over `draws` replicates
/// of `p` unit-rate exponentials, evaluated through the exceedance
/// equivalence: the s-th largest value sits at or below the level iff fewer
/// than s draws exceed it. Converges to `G_s(x)` as p grows.
pub fn finite_p_extreme_check(
    p: u64,
    s: u32,
    x: f64,
    draws: u64,
    stream: &RandomStream,
) -> Result<f64, LimitError> {
    let grid = finite_p_extreme_grid(p, &[s], &[x], draws, stream)?;
    Ok(grid[0][0])
}

/// Grid variant of [`finite_p_extreme_check`]: one pass over the replicates
/// serves every `(s, x)` cell. Returns `out[si][xi]`. Each replicate runs on
/// its own child stream, so the result does not depend on worker scheduling.
pub fn finite_p_extreme_grid(
    p: u64,
    s_list: &[u32],
    x_list: &[f64],
    draws: u64,
    stream: &RandomStream,
) -> Result<Vec<Vec<f64>>, LimitError> {
    for &s in s_list {
        if s == 0 || u64::from(s) > p {
            return Err(LimitError::RankExceedsSample { p, s });
        }
    }
    if draws == 0 {
        return Err(LimitError::NonPositiveParameter);
    }
    let ln_p = (p as f64).ln();
    // exceedance of level (ln p + x)^+ by Exp(1) is the event U < e^-level
    let mut levels: Vec<(f64, usize)> = x_list
        .iter()
        .enumerate()
        .map(|(i, &x)| ((-(ln_p + x).max(0.0)).exp(), i))
        .collect();
    levels.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());

    let nx = x_list.len();
    let ns = s_list.len();
    let below = (0..draws)
        .into_par_iter()
        .fold(
            || vec![0u64; ns * nx],
            |mut acc, rep| {
                let mut sub = stream.split(rep);
                let mut counts = vec![0u32; nx];
                for _ in 0..p {
                    let u = sub.sample_uniform();
                    if u < levels[0].0 {
                        for &(t, xi) in &levels {
                            if u < t {
                                counts[xi] += 1;
                            } else {
                                break;
                            }
                        }
                    }
                }
                for (si, &s) in s_list.iter().enumerate() {
                    for xi in 0..nx {
                        if counts[xi] < s {
                            acc[si * nx + xi] += 1;
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; ns * nx],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok((0..ns)
        .map(|si| {
            (0..nx)
                .map(|xi| below[si * nx + xi] as f64 / draws as f64)
                .collect()
        })
        .collect())
}

/// Finite-p estimate of the same-degree indicator covariance in the degree
/// decomposition: per replicate, p unit exponentials define the order
/// statistics, two further exponentials play the fixed pair of fitness
/// values, and the degree-d indicators follow the sandwich
/// `theta - eta_{p|d} < xi_j <= theta - eta_{p|d+1}` (the maximum rule at
/// d = 0), with `theta = ln p`. Scaling removes the rate, so unit-rate draws
/// lose no generality. Converges to `C(d)` as p grows.
pub fn finite_p_pair_cov(
    p: u64,
    d: u32,
    replicates: u64,
    stream: &RandomStream,
) -> Result<MonteCarloEstimate, LimitError> {
    if p < u64::from(d) + 1 {
        return Err(LimitError::RankExceedsSample { p, s: d + 1 });
    }
    if replicates < 2 {
        return Err(LimitError::NonPositiveParameter);
    }
    let theta = (p as f64).ln();
    let keep = d as usize + 1; // the d+1 smallest uniforms give eta_{p|1..d+1}

    #[derive(Clone, Copy, Default)]
    struct Cell {
        n: u64,
        s1: u64,
        s2: u64,
        s12: u64,
    }

    let cells = (0..replicates)
        .into_par_iter()
        .fold(
            || [Cell::default(); BATCHES],
            |mut acc, rep| {
                let mut sub = stream.split(rep);
                // running buffer of the `keep` smallest uniforms, ascending
                let mut small = [f64::INFINITY; 16];
                let small = &mut small[..keep];
                for _ in 0..p {
                    let u = sub.sample_uniform();
                    if u < small[keep - 1] {
                        let mut i = keep - 1;
                        while i > 0 && small[i - 1] > u {
                            small[i] = small[i - 1];
                            i -= 1;
                        }
                        small[i] = u;
                    }
                }
                let xi1 = sub.sample_exp_unit();
                let xi2 = sub.sample_exp_unit();
                let (x1, x2) = if d == 0 {
                    let eta_top = -small[0].ln();
                    (xi1 + eta_top <= theta, xi2 + eta_top <= theta)
                } else {
                    let eta_d = -small[d as usize - 1].ln();
                    let eta_d1 = -small[d as usize].ln();
                    let hit = |xi: f64| theta - eta_d < xi && xi <= theta - eta_d1;
                    (hit(xi1), hit(xi2))
                };
                let cell = &mut acc[batch_of(rep, replicates)];
                cell.n += 1;
                cell.s1 += u64::from(x1);
                cell.s2 += u64::from(x2);
                cell.s12 += u64::from(x1 && x2);
                acc
            },
        )
        .reduce(
            || [Cell::default(); BATCHES],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    x.n += y.n;
                    x.s1 += y.s1;
                    x.s2 += y.s2;
                    x.s12 += y.s12;
                }
                a
            },
        );

    let n = replicates as f64;
    let (s1, s2, s12) = cells.iter().fold((0u64, 0u64, 0u64), |(a, b, c), cell| {
        (a + cell.s1, b + cell.s2, c + cell.s12)
    });
    let cov = s12 as f64 / n - (s1 as f64 / n) * (s2 as f64 / n);
    let batch_covs: Vec<f64> = cells
        .iter()
        .filter(|c| c.n > 0)
        .map(|c| {
            let nb = c.n as f64;
            c.s12 as f64 / nb - (c.s1 as f64 / nb) * (c.s2 as f64 / nb)
        })
        .collect();
    Ok(MonteCarloEstimate {
        estimate: cov,
        standard_error: batch_means_se(&batch_covs),
        draws: replicates,
    })
}

/// Coupled estimate of `P(D = d) - P(D* = d)` at threshold `ln n`, where D
/// counts all n-1 potential partners of a node and D* excludes the one
/// designated partner. The difference is nonzero only when the designated
/// pair is itself adjacent, so the estimator has tiny variance. Its absolute
/// value is bounded by `2 (1 + ln n) / n`.
pub fn threshold_decomposition_gap(
    n: u64,
    d: u32,
    replicates: u64,
    stream: &RandomStream,
) -> MonteCarloEstimate {
    assert!(n >= 3, "decomposition gap needs n >= 3");
    assert!(replicates >= 2);
    let theta = (n as f64).ln();
    let others = n - 2;

    #[derive(Clone, Copy, Default)]
    struct Cell {
        n: u64,
        diff: i64,
    }

    let cells = (0..replicates)
        .into_par_iter()
        .fold(
            || [Cell::default(); BATCHES],
            |mut acc, rep| {
                let mut sub = stream.split(rep);
                let xi1 = sub.sample_exp_unit();
                let xi2 = sub.sample_exp_unit();
                let mutual = xi1 + xi2 > theta;
                // count partners of node 1 among the remaining n-2 nodes;
                // exceedance of theta - xi1 by Exp(1) is U < e^-(theta-xi1)
                let t1 = (-(theta - xi1)).exp().min(1.0);
                let mut c1 = 0u32;
                for _ in 0..others {
                    if sub.sample_uniform() < t1 {
                        c1 += 1;
                        if c1 > d {
                            break; // both indicators are already 0
                        }
                    }
                }
                let with_pair = c1 + u32::from(mutual) == d;
                let without = c1 == d;
                let cell = &mut acc[batch_of(rep, replicates)];
                cell.n += 1;
                cell.diff += i64::from(with_pair) - i64::from(without);
                acc
            },
        )
        .reduce(
            || [Cell::default(); BATCHES],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    x.n += y.n;
                    x.diff += y.diff;
                }
                a
            },
        );

    let total: i64 = cells.iter().map(|c| c.diff).sum();
    let batch_means: Vec<f64> = cells
        .iter()
        .filter(|c| c.n > 0)
        .map(|c| c.diff as f64 / c.n as f64)
        .collect();
    MonteCarloEstimate {
        estimate: total as f64 / replicates as f64,
        standard_error: batch_means_se(&batch_means),
        draws: replicates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::make_stream;

    // Frozen from an independent 30-digit quadrature of the defining
    // integrals.
    const C0_REF: f64 = 0.055556163623685911;
    const C1_REF: f64 = 0.0531753084476;

    #[test]
    fn c0_routes_agree_and_are_positive() {
        let a = limit_cov_c0(1e-10).unwrap();
        let b = limit_cov_c0_direct2d(1e-8).unwrap();
        assert!(a.value > 0.0);
        assert!((a.value - C0_REF).abs() < 1e-9, "route A = {}", a.value);
        assert!((a.value - b.value).abs() < 1e-7, "A = {} B = {}", a.value, b.value);
    }

    #[test]
    fn cd_monte_carlo_matches_reference() {
        let mut stream = make_stream(31, 0);
        let est = limit_cov_cd(1, 1_000_000, &mut stream);
        assert!(
            (est.estimate - C1_REF).abs() < 3.0 * est.standard_error,
            "C(1) = {} +/- {}",
            est.estimate,
            est.standard_error
        );
        assert!(est.estimate > 3.0 * est.standard_error);
    }

    #[test]
    fn erlang_tail_closed_form() {
        // 2 P(xi1 + xi2 > ln n) at n = 1e4 is about 0.00204
        let b = 2.0 * erlang2_tail(1.0, (10_000.0f64).ln());
        assert!((b - 0.0020418).abs() < 1e-6, "bound = {b}");
    }

    #[test]
    fn finite_p_rejects_rank_above_sample() {
        let s = make_stream(0, 0);
        assert!(finite_p_extreme_check(3, 4, 0.0, 10, &s).is_err());
        assert!(finite_p_pair_cov(3, 3, 100, &s).is_err());
    }

    #[test]
    fn finite_p_minimum_case_reduces_to_direct_probability() {
        // s = p = 1: the single draw is both the maximum and the minimum;
        // P(eta <= ln 1 + x) = 1 - e^(-x) for x >= 0.
        let stream = make_stream(5, 0);
        let got = finite_p_extreme_check(1, 1, 0.7, 200_000, &stream).unwrap();
        let want = 1.0 - (-0.7f64).exp();
        assert!((got - want).abs() < 0.005, "got {got} want {want}");
    }

    #[test]
    fn finite_p_grid_is_deterministic_and_matches_single_calls() {
        let stream = make_stream(6, 0);
        let grid = finite_p_extreme_grid(50, &[1, 2], &[-0.5, 0.5], 4000, &stream).unwrap();
        let again = finite_p_extreme_grid(50, &[1, 2], &[-0.5, 0.5], 4000, &stream).unwrap();
        assert_eq!(grid, again);
        let single = finite_p_extreme_check(50, 2, 0.5, 4000, &stream).unwrap();
        assert_eq!(grid[1][1], single);
    }

    #[test]
    fn decomposition_gap_is_tiny_at_moderate_n() {
        let stream = make_stream(7, 0);
        let gap = threshold_decomposition_gap(1000, 0, 50_000, &stream);
        let bound = 2.0 * erlang2_tail(1.0, (1000.0f64).ln());
        assert!(
            gap.estimate.abs() <= bound + 3.0 * gap.standard_error,
            "gap = {} bound = {}",
            gap.estimate,
            bound
        );
    }
}
