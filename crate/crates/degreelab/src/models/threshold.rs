//! Random threshold graphs: nodes carry i.i.d. fitness values and two nodes
//! are adjacent when their fitness sum exceeds the threshold.
//!
//! Degrees come from sorting the fitness vector once and binary-searching
//! the complementary level for each node, O(n log n) overall, so ensembles
//! at n = 1e5 stay cheap. Adjacency is never materialized here.

use crate::rng::{FitnessLaw, RandomStream};

use super::{DegreeSample, ModelError, ModelParams, ModelSpec};

/// Degrees of the threshold graph on a given fitness vector: node k has an
/// edge to every other node l with `fitness[k] + fitness[l] > theta`.
pub fn threshold_degrees_from_fitness(fitness: &[f64], theta: f64) -> Vec<u32> {
    let n = fitness.len();
    let mut sorted = fitness.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    fitness
        .iter()
        .map(|&xi| {
            let level = theta - xi;
            // count of fitness values strictly above the level
            let above = n - sorted.partition_point(|&v| v <= level);
            // drop the self-pairing when xi itself clears the level
            (above - usize::from(xi > level)) as u32
        })
        .collect()
}

/// One realization of the threshold graph with n nodes.
pub fn gen_threshold_degrees(
    n: usize,
    theta: f64,
    law: FitnessLaw,
    stream: &mut RandomStream,
) -> Result<DegreeSample, ModelError> {
    let spec = ModelSpec::new(n, ModelParams::Threshold { theta, law })?;
    let fitness: Vec<f64> = (0..n).map(|_| law.sample(stream)).collect();
    let degrees = threshold_degrees_from_fitness(&fitness, theta);
    Ok(DegreeSample {
        spec,
        degrees,
        fitness: Some(fitness),
        seed_info: stream.seed_info(),
    })
}

/// Degree-d indicators of the first two nodes only, in O(n): draws the pair's
/// fitness, then streams the other n-2 values counting exceedances of both
/// complementary levels, correcting for the mutual pair at the end. Exits
/// early once both counts pass d. Exponential exceedance `xi > t` is tested
/// as `U < e^(-lambda t)` on the underlying uniform, skipping the log.
pub(crate) fn threshold_pair_indicators(
    n: usize,
    theta: f64,
    law: FitnessLaw,
    d: u32,
    stream: &mut RandomStream,
) -> (bool, bool) {
    debug_assert!(n >= 2);
    let lambda = law.rate();
    let xi1 = law.sample(stream);
    let xi2 = law.sample(stream);
    let mutual = u32::from(xi1 + xi2 > theta);
    let t1 = (-lambda * (theta - xi1)).exp().min(1.0);
    let t2 = (-lambda * (theta - xi2)).exp().min(1.0);
    let mut c1 = 0u32;
    let mut c2 = 0u32;
    for _ in 0..n - 2 {
        let u = stream.sample_uniform();
        c1 += u32::from(u < t1);
        c2 += u32::from(u < t2);
        if c1 > d && c2 > d {
            return (false, false);
        }
    }
    (c1 + mutual == d, c2 + mutual == d)
}
