//! Degree statistics: empirical pmfs, total variation distance, cross-run
//! ensemble moments, and pair-indicator covariance estimators.

mod csv;
mod ensemble;
pub(crate) mod util;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::models::DegreeSample;

pub use csv::{write_cov_csv, write_ensemble_csv, write_pmf_csv};
pub use ensemble::{
    ensemble_moments, pair_indicator_covariance, sampled_pair_covariance, DegreeMoments,
    EnsembleStats, PairCovEstimate, PairMode,
};

/// Tolerance for accepting a pmf as normalized.
pub const PMF_MASS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("pmf mass {0} deviates from 1 by more than 1e-9")]
    NotNormalized(f64),
    #[error("need at least {minimum} runs, got {got}")]
    TooFewRuns { minimum: usize, got: usize },
    #[error("degree sample is empty")]
    EmptySample,
    #[error(transparent)]
    Model(#[from] crate::models::ModelError),
}

/// Exact degree counts of one realization and the fractions they induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalPmf {
    n: usize,
    counts: BTreeMap<u32, u64>,
}

impl EmpiricalPmf {
    /// Counts a degree vector. The vector must be non-empty.
    pub fn from_degrees(degrees: &[u32]) -> Result<Self, StatsError> {
        if degrees.is_empty() {
            return Err(StatsError::EmptySample);
        }
        let mut counts = BTreeMap::new();
        for &d in degrees {
            *counts.entry(d).or_insert(0u64) += 1;
        }
        Ok(EmpiricalPmf {
            n: degrees.len(),
            counts,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exact per-degree counts; they always sum to n.
    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn count(&self, d: u32) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// Fraction of nodes with degree d.
    pub fn prob(&self, d: u32) -> f64 {
        self.count(d) as f64 / self.n as f64
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.counts.keys().next_back().copied()
    }

    /// The induced finite pmf.
    pub fn to_pmf(&self) -> Pmf {
        Pmf::from_probs(
            self.counts
                .iter()
                .map(|(&d, &c)| (d, c as f64 / self.n as f64)),
        )
    }
}

/// Empirical pmf of one realization's degrees.
pub fn empirical_pmf(sample: &DegreeSample) -> EmpiricalPmf {
    EmpiricalPmf::from_degrees(&sample.degrees).expect("samples carry n >= 2 degrees")
}

/// A finite pmf over degrees, stored sparsely.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: BTreeMap<u32, f64>,
}

impl Pmf {
    /// Collects (degree, probability) pairs, dropping zero entries.
    /// Normalization is checked at the point of use, not construction.
    pub fn from_probs(iter: impl IntoIterator<Item = (u32, f64)>) -> Pmf {
        Pmf {
            probs: iter.into_iter().filter(|&(_, p)| p != 0.0).collect(),
        }
    }

    pub fn point_mass(d: u32) -> Pmf {
        Pmf {
            probs: BTreeMap::from([(d, 1.0)]),
        }
    }

    pub fn prob(&self, d: u32) -> f64 {
        self.probs.get(&d).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.probs.iter().map(|(&d, &p)| (d, p))
    }

    pub fn total_mass(&self) -> f64 {
        let mut acc = util::KahanSum::new();
        for &p in self.probs.values() {
            acc.add(p);
        }
        acc.value()
    }
}

/// Total variation distance between two finite pmfs: half the L1 distance
/// over the union of supports. Both inputs must carry total mass within
/// 1e-9 of one (analytic laws enter tail-truncated, which stays inside the
/// tolerance).
pub fn tv_distance(a: &Pmf, b: &Pmf) -> Result<f64, StatsError> {
    for pmf in [a, b] {
        let mass = pmf.total_mass();
        if (mass - 1.0).abs() > PMF_MASS_TOLERANCE {
            return Err(StatsError::NotNormalized(mass));
        }
    }
    let mut acc = util::KahanSum::new();
    let mut ia = a.probs.iter().peekable();
    let mut ib = b.probs.iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (Some((&da, &pa)), Some((&db, &pb))) => {
                if da < db {
                    acc.add(pa);
                    ia.next();
                } else if db < da {
                    acc.add(pb);
                    ib.next();
                } else {
                    acc.add((pa - pb).abs());
                    ia.next();
                    ib.next();
                }
            }
            (Some((_, &pa)), None) => {
                acc.add(pa);
                ia.next();
            }
            (None, Some((_, &pb))) => {
                acc.add(pb);
                ib.next();
            }
            (None, None) => break,
        }
    }
    Ok((0.5 * acc.value()).clamp(0.0, 1.0))
}

/// Least-squares slope of `ln y` against `ln x`. Points with non-positive
/// coordinates are skipped; returns `None` with fewer than three usable
/// points.
pub fn log_log_slope(points: impl IntoIterator<Item = (f64, f64)>) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .into_iter()
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 3 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

/// Slope of a pmf's log-log tail over the degree window `[dmin, dmax]`,
/// skipping degrees with zero observed mass.
pub fn pmf_tail_slope(
    probs: impl IntoIterator<Item = (u32, f64)>,
    dmin: u32,
    dmax: u32,
) -> Option<f64> {
    log_log_slope(
        probs
            .into_iter()
            .filter(|&(d, _)| d >= dmin && d <= dmax)
            .map(|(d, p)| (f64::from(d), p)),
    )
}
