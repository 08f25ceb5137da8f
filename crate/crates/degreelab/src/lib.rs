//! degreelab: a desk-scale laboratory for degree distributions of random
//! networks.
//!
//! The crate generates seeded ensembles of random-network realizations
//! (threshold, Erdos-Renyi, geometric, random key, preferential attachment),
//! estimates nodal and empirical degree statistics across runs, and
//! evaluates the analytic limit laws they converge to, including the
//! heavy-tailed threshold-model limit whose empirical degree distribution
//! keeps fluctuating no matter how large the graph gets.
//!
//! Layout:
//! * [`rng`]: reproducible splittable streams and elementary samplers
//! * [`models`]: one-realization degree generators at their critical scalings
//! * [`stats`]: empirical pmfs, total variation, ensemble moments,
//!   pair-indicator covariances
//! * [`limits`]: Poisson and heavy-tailed limit pmfs, generalized Gumbel and
//!   joint extreme laws, limiting covariances, finite-sample validators

pub mod limits;
pub mod models;
pub mod rng;
pub mod stats;

pub use models::{DegreeSample, ModelKind, ModelParams, ModelSpec};
pub use rng::{make_stream, FitnessLaw, RandomStream};
pub use stats::{empirical_pmf, tv_distance, EmpiricalPmf, EnsembleStats, PairCovEstimate};
