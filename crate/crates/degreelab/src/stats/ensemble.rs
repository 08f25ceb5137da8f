//! Cross-run ensemble statistics and pair-indicator covariance estimators.
//!
//! Every estimator runs R independent realizations with `stream_id = run
//! index` under the caller's master seed, accumulates per-run summaries that
//! merge associatively, and reports batch-means standard errors over twenty
//! equal batches. Runs may be generated in parallel; summaries are reduced
//! in run order (and indicator summaries are integers), so the estimates do
//! not depend on worker scheduling.
//!
//! Covariances and variances use the plug-in 1/R normalization, matching the
//! moment identities they estimate, with O(1/R) bias.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::models::{generate_degrees, ModelParams, ModelSpec};
use crate::rng::make_stream;

use super::util::{batch_means_se, batch_of, KahanSum, BATCHES};
use super::{Pmf, StatsError};

const GEN_CHUNK: usize = 64;

/// Cross-run moments of the degree-d fraction.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DegreeMoments {
    /// Mean of P_n(d) across runs.
    pub mean: f64,
    /// Plug-in (1/R) cross-run variance of P_n(d).
    pub variance: f64,
    /// Standard error of the mean: sqrt(variance / R).
    pub mean_stderr: f64,
    /// Batch-means standard error of the variance estimate.
    pub variance_stderr: f64,
    /// Run-averaged empirical pmf value at d (exact count ratio).
    pub run_avg: f64,
}

#[derive(Debug, Clone)]
struct DegreeAcc {
    sum_p: KahanSum,
    sum_p2: KahanSum,
    total_count: u64,
    batch_sum: [f64; BATCHES],
    batch_sum2: [f64; BATCHES],
}

impl DegreeAcc {
    fn new() -> Self {
        DegreeAcc {
            sum_p: KahanSum::new(),
            sum_p2: KahanSum::new(),
            total_count: 0,
            batch_sum: [0.0; BATCHES],
            batch_sum2: [0.0; BATCHES],
        }
    }
}

/// Per-degree cross-run statistics over R realizations of one model.
#[derive(Debug, Clone)]
pub struct EnsembleStats {
    runs: usize,
    n: usize,
    degrees_of_interest: Vec<u32>,
    per_degree: BTreeMap<u32, DegreeAcc>,
    batch_runs: [u64; BATCHES],
}

impl EnsembleStats {
    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Degrees the caller asked to track (always emitted, observed or not).
    pub fn degrees_of_interest(&self) -> &[u32] {
        &self.degrees_of_interest
    }

    /// All degrees observed in any run, plus the requested ones.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.per_degree.keys().copied()
    }

    /// Moments at degree d. A degree never observed has all-zero moments,
    /// which is the exact statement that P_n(d) was 0 in every run.
    pub fn moments(&self, d: u32) -> DegreeMoments {
        let Some(acc) = self.per_degree.get(&d) else {
            return DegreeMoments::default();
        };
        let r = self.runs as f64;
        let mean = acc.sum_p.value() / r;
        let variance = (acc.sum_p2.value() / r - mean * mean).max(0.0);
        let batch_vars: Vec<f64> = (0..BATCHES)
            .filter(|&b| self.batch_runs[b] > 0)
            .map(|b| {
                let nb = self.batch_runs[b] as f64;
                let m = acc.batch_sum[b] / nb;
                (acc.batch_sum2[b] / nb - m * m).max(0.0)
            })
            .collect();
        DegreeMoments {
            mean,
            variance,
            mean_stderr: (variance / r).sqrt(),
            variance_stderr: batch_means_se(&batch_vars),
            run_avg: acc.total_count as f64 / (r * self.n as f64),
        }
    }

    /// The run-averaged empirical pmf; sums to one exactly up to rounding
    /// because it is a ratio of exact counts.
    pub fn run_averaged_pmf(&self) -> Pmf {
        let denom = self.runs as f64 * self.n as f64;
        Pmf::from_probs(
            self.per_degree
                .iter()
                .map(|(&d, acc)| (d, acc.total_count as f64 / denom)),
        )
    }
}

/// Runs R independent realizations (stream_id = run index) and accumulates
/// the cross-run mean, variance, and run-averaged pmf per degree. Requires
/// R >= 2.
pub fn ensemble_moments(
    spec: &ModelSpec,
    runs: usize,
    degrees_of_interest: &[u32],
    master_seed: u64,
) -> Result<EnsembleStats, StatsError> {
    if runs < 2 {
        return Err(StatsError::TooFewRuns {
            minimum: 2,
            got: runs,
        });
    }
    let n = spec.n();
    let mut stats = EnsembleStats {
        runs,
        n,
        degrees_of_interest: degrees_of_interest.to_vec(),
        per_degree: degrees_of_interest
            .iter()
            .map(|&d| (d, DegreeAcc::new()))
            .collect(),
        batch_runs: [0; BATCHES],
    };

    let mut start = 0usize;
    while start < runs {
        let end = (start + GEN_CHUNK).min(runs);
        // generate a chunk of run summaries in parallel, in run order
        let summaries: Vec<Vec<(u32, u64)>> = (start..end)
            .into_par_iter()
            .map(|r| {
                let mut stream = make_stream(master_seed, r as u64);
                let sample = generate_degrees(spec, &mut stream);
                let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
                for &d in &sample.degrees {
                    *counts.entry(d).or_insert(0) += 1;
                }
                counts.into_iter().collect()
            })
            .collect();
        // fold sequentially so results never depend on scheduling
        for (offset, counts) in summaries.into_iter().enumerate() {
            let r = start + offset;
            let b = batch_of(r as u64, runs as u64);
            stats.batch_runs[b] += 1;
            for (d, c) in counts {
                let p = c as f64 / n as f64;
                let acc = stats.per_degree.entry(d).or_insert_with(DegreeAcc::new);
                acc.sum_p.add(p);
                acc.sum_p2.add(p * p);
                acc.total_count += c;
                acc.batch_sum[b] += p;
                acc.batch_sum2[b] += p * p;
            }
        }
        start = end;
    }
    Ok(stats)
}

/// How the node pair entering a covariance estimate was selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// The two designated nodes 1 and 2 (indices 0 and 1).
    FixedNodes12,
    /// A uniform ordered pair drawn independently of the graph.
    UniformSampledPair,
}

impl PairMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairMode::FixedNodes12 => "fixed-nodes-12",
            PairMode::UniformSampledPair => "uniform-sampled-pair",
        }
    }
}

/// Sample covariance of a same-degree indicator pair across runs, with its
/// batch-means standard error. The plug-in normalization keeps the estimate
/// inside [-1/4, 1/4].
#[derive(Debug, Clone, Copy)]
pub struct PairCovEstimate {
    pub d: u32,
    pub estimate: f64,
    pub standard_error: f64,
    pub runs: usize,
    pub mode: PairMode,
    /// Mean of the first indicator: a Monte-Carlo estimate of P(D = d) for
    /// the selected node.
    pub indicator_mean: f64,
    /// Batch-means standard error of `indicator_mean`.
    pub mean_stderr: f64,
    /// True when no run produced either indicator; the covariance is then
    /// exactly 0 with standard error 0.
    pub degenerate: bool,
}

#[derive(Clone, Copy, Default)]
struct PairCell {
    n: u64,
    s1: u64,
    s2: u64,
    s12: u64,
}

/// Shared run loop: evaluates the indicator pair per run in parallel and
/// reduces integer batch sums, so the result is scheduling-independent.
pub(crate) fn pair_cov_core<F>(
    runs: usize,
    d: u32,
    mode: PairMode,
    indicators: F,
) -> PairCovEstimate
where
    F: Fn(u64) -> (bool, bool) + Sync,
{
    let cells = (0..runs as u64)
        .into_par_iter()
        .fold(
            || [PairCell::default(); BATCHES],
            |mut acc, r| {
                let (x1, x2) = indicators(r);
                let cell = &mut acc[batch_of(r, runs as u64)];
                cell.n += 1;
                cell.s1 += u64::from(x1);
                cell.s2 += u64::from(x2);
                cell.s12 += u64::from(x1 && x2);
                acc
            },
        )
        .reduce(
            || [PairCell::default(); BATCHES],
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

    let r = runs as f64;
    let (s1, s2, s12) = cells.iter().fold((0u64, 0u64, 0u64), |(a, b, c), cell| {
        (a + cell.s1, b + cell.s2, c + cell.s12)
    });
    let m1 = s1 as f64 / r;
    let m2 = s2 as f64 / r;
    let estimate = s12 as f64 / r - m1 * m2;
    let batch_covs: Vec<f64> = cells
        .iter()
        .filter(|c| c.n > 0)
        .map(|c| {
            let nb = c.n as f64;
            c.s12 as f64 / nb - (c.s1 as f64 / nb) * (c.s2 as f64 / nb)
        })
        .collect();
    let batch_means: Vec<f64> = cells
        .iter()
        .filter(|c| c.n > 0)
        .map(|c| c.s1 as f64 / c.n as f64)
        .collect();
    debug_assert!(estimate.abs() <= 0.25 + 1e-12);
    PairCovEstimate {
        d,
        estimate,
        standard_error: batch_means_se(&batch_covs),
        runs,
        mode,
        indicator_mean: m1,
        mean_stderr: batch_means_se(&batch_means),
        degenerate: s1 + s2 == 0,
    }
}

/// Covariance of the degree-d indicators at the two designated nodes across
/// R realizations (stream_id = run index). The threshold model takes an
/// O(n)-per-run path that never builds the full degree vector; other models
/// generate the realization and read the first two degrees.
pub fn pair_indicator_covariance(
    spec: &ModelSpec,
    runs: usize,
    d: u32,
    master_seed: u64,
) -> Result<PairCovEstimate, StatsError> {
    if runs < 2 {
        return Err(StatsError::TooFewRuns {
            minimum: 2,
            got: runs,
        });
    }
    let spec = *spec;
    let estimate = match spec.params() {
        ModelParams::Threshold { theta, law } => {
            pair_cov_core(runs, d, PairMode::FixedNodes12, move |r| {
                let mut stream = make_stream(master_seed, r);
                crate::models::threshold_pair_indicators(spec.n(), theta, law, d, &mut stream)
            })
        }
        _ => pair_cov_core(runs, d, PairMode::FixedNodes12, move |r| {
            let mut stream = make_stream(master_seed, r);
            let sample = generate_degrees(&spec, &mut stream);
            (sample.degrees[0] == d, sample.degrees[1] == d)
        }),
    };
    Ok(estimate)
}

/// Covariance of the degree-d indicators at a uniformly sampled ordered node
/// pair, drawn per run independently of the realization. The indicator mean
/// estimates E[P_n(d)] without any homogeneity assumption.
pub fn sampled_pair_covariance(
    spec: &ModelSpec,
    runs: usize,
    d: u32,
    master_seed: u64,
) -> Result<PairCovEstimate, StatsError> {
    if runs < 2 {
        return Err(StatsError::TooFewRuns {
            minimum: 2,
            got: runs,
        });
    }
    let spec = *spec;
    let n = spec.n() as u64;
    Ok(pair_cov_core(
        runs,
        d,
        PairMode::UniformSampledPair,
        move |r| {
            let mut stream = make_stream(master_seed, r);
            let sample = generate_degrees(&spec, &mut stream);
            // ordered pair without repetition, independent of the graph
            let nu = stream.sample_index(n) as usize;
            let mut mu = stream.sample_index(n - 1) as usize;
            if mu >= nu {
                mu += 1;
            }
            (sample.degrees[nu] == d, sample.degrees[mu] == d)
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{ModelKind, ModelSpec};
    use proptest::prelude::*;

    fn er_spec(n: usize, c: f64) -> ModelSpec {
        ModelSpec::from_critical_scaling(ModelKind::ErdosRenyi, n, c).unwrap()
    }

    #[test]
    fn rejects_single_run() {
        let spec = er_spec(100, 1.0);
        assert!(ensemble_moments(&spec, 1, &[0], 1).is_err());
        assert!(pair_indicator_covariance(&spec, 1, 0, 1).is_err());
        assert!(sampled_pair_covariance(&spec, 1, 0, 1).is_err());
    }

    #[test]
    fn degenerate_model_has_zero_variance() {
        // p = 0: every run is edgeless, P_n(0) = 1 with no spread
        let spec = ModelSpec::new(50, ModelParams::ErdosRenyi { p: 0.0 }).unwrap();
        let stats = ensemble_moments(&spec, 40, &[0, 1], 7).unwrap();
        let m0 = stats.moments(0);
        assert_eq!(m0.mean, 1.0);
        assert_eq!(m0.variance, 0.0);
        assert_eq!(m0.run_avg, 1.0);
        assert_eq!(stats.moments(1), DegreeMoments::default());
        let pmf = stats.run_averaged_pmf();
        assert_eq!(pmf.prob(0), 1.0);
    }

    #[test]
    fn run_average_sums_to_one() {
        let spec = er_spec(500, 1.0);
        let stats = ensemble_moments(&spec, 64, &[0], 11).unwrap();
        let mass = stats.run_averaged_pmf().total_mass();
        assert!((mass - 1.0).abs() < 1e-9, "mass = {mass}");
        for d in stats.support().collect::<Vec<_>>() {
            let m = stats.moments(d);
            assert!(m.variance >= 0.0);
            assert!((0.0..=1.0).contains(&m.mean));
        }
    }

    #[test]
    fn er_cross_run_variance_is_small_at_critical_scaling() {
        let spec = er_spec(10_000, 1.0);
        let stats = ensemble_moments(&spec, 200, &[0], 13).unwrap();
        let var = stats.moments(0).variance;
        assert!(var < 1e-3, "var = {var}");
    }

    #[test]
    fn parallelism_does_not_change_estimates() {
        let spec = er_spec(400, 1.0);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| ensemble_moments(&spec, 50, &[0, 1, 2], 17).unwrap());
        let multi = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| ensemble_moments(&spec, 50, &[0, 1, 2], 17).unwrap());
        for d in single.support().collect::<Vec<_>>() {
            assert_eq!(single.moments(d), multi.moments(d), "d = {d}");
        }
        let cov1 = pair_indicator_covariance(&spec, 500, 1, 19).unwrap();
        let cov2 = pair_indicator_covariance(&spec, 500, 1, 19).unwrap();
        assert_eq!(cov1.estimate, cov2.estimate);
        assert_eq!(cov1.standard_error, cov2.standard_error);
    }

    #[test]
    fn constant_indicator_series_has_zero_covariance() {
        let est = pair_cov_core(100, 0, PairMode::FixedNodes12, |_| (true, true));
        assert_eq!(est.estimate, 0.0);
        assert_eq!(est.standard_error, 0.0);
        assert_eq!(est.indicator_mean, 1.0);
        assert!(!est.degenerate);
    }

    #[test]
    fn alternating_series_hits_quarter_covariance() {
        let est = pair_cov_core(100, 0, PairMode::FixedNodes12, |r| {
            let on = r % 2 == 0;
            (on, on)
        });
        assert!((est.estimate - 0.25).abs() < 1e-12);
    }

    #[test]
    fn unobserved_degree_is_flagged_degenerate() {
        let spec = ModelSpec::new(20, ModelParams::ErdosRenyi { p: 0.0 }).unwrap();
        let est = pair_indicator_covariance(&spec, 50, 5, 23).unwrap();
        assert!(est.degenerate);
        assert_eq!(est.estimate, 0.0);
        assert_eq!(est.standard_error, 0.0);
        assert_eq!(est.indicator_mean, 0.0);
    }

    #[test]
    fn regular_graph_sampled_pair_is_constant() {
        // p = 1: complete graph, every degree equals n-1
        let spec = ModelSpec::new(40, ModelParams::ErdosRenyi { p: 1.0 }).unwrap();
        let est = sampled_pair_covariance(&spec, 60, 39, 29).unwrap();
        assert_eq!(est.estimate, 0.0);
        assert_eq!(est.indicator_mean, 1.0);
    }

    #[test]
    fn sampled_pair_agrees_with_fixed_pair_for_homogeneous_model() {
        // both estimate the same covariance under exchangeability
        let spec = er_spec(200, 1.0);
        let fixed = pair_indicator_covariance(&spec, 6000, 1, 31).unwrap();
        let sampled = sampled_pair_covariance(&spec, 6000, 1, 32).unwrap();
        let band = 3.0
            * (fixed.standard_error.powi(2) + sampled.standard_error.powi(2)).sqrt();
        assert!(
            (fixed.estimate - sampled.estimate).abs() <= band.max(1e-4),
            "fixed {} vs sampled {} (band {band})",
            fixed.estimate,
            sampled.estimate
        );
    }

    proptest! {
        #[test]
        fn covariance_magnitude_never_exceeds_quarter(pattern: u64, runs in 2usize..200) {
            let est = pair_cov_core(runs, 0, PairMode::FixedNodes12, |r| {
                let bit = |k: u64| (pattern >> (k % 64)) & 1 == 1;
                (bit(r), bit(r.wrapping_add(17)))
            });
            prop_assert!(est.estimate.abs() <= 0.25 + 1e-12);
            prop_assert!(est.standard_error >= 0.0);
        }
    }
}
