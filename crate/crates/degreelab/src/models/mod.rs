//! Random-network generators. Each model produces one realization's degree
//! vector from a dedicated stream; adjacency is only materialized on the
//! explicit edge-dumping path used for debugging small graphs.

mod erdos_renyi;
mod geometric;
mod key_graph;
mod preferential;
mod threshold;

use std::io::{self, Write};

use thiserror::Error;

use crate::rng::{FitnessLaw, RandomStream, RngError};

pub use erdos_renyi::gen_er_degrees;
pub use geometric::{gen_rgg_degrees, rgg_degrees_from_points};
pub use key_graph::{gen_keygraph_degrees, keygraph_degrees_from_keys};
pub use preferential::gen_ba_degrees;
pub use threshold::{gen_threshold_degrees, threshold_degrees_from_fitness};
pub(crate) use threshold::threshold_pair_indicators;

/// Errors from model construction and generation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("node count must be at least 2, got {0}")]
    TooFewNodes(usize),
    #[error("edge probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("threshold must be positive, got {0}")]
    NonPositiveThreshold(f64),
    #[error("geometric radius {0} is outside (0, sqrt(2)]")]
    RadiusOutOfRange(f64),
    #[error("key ring size {key_count} must satisfy 1 <= K < P = {pool_size}")]
    BadKeyParameters { key_count: u32, pool_size: u32 },
    #[error("preferential attachment needs n >= m + 1 (n = {n}, m = {m})")]
    SeedLargerThanGraph { n: usize, m: u32 },
    #[error("attachment count m must be at least 1")]
    ZeroAttachment,
    #[error("scaling constant must be positive and finite, got {0}")]
    BadScale(f64),
    #[error("no admissible key-graph scaling for n = {n}, c = {c}")]
    NoKeyScaling { n: usize, c: f64 },
    #[error(transparent)]
    Rng(#[from] RngError),
}

/// The five implemented network models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Threshold,
    ErdosRenyi,
    Geometric,
    RandomKey,
    PreferentialAttachment,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Threshold => "threshold",
            ModelKind::ErdosRenyi => "er",
            ModelKind::Geometric => "rgg",
            ModelKind::RandomKey => "keygraph",
            ModelKind::PreferentialAttachment => "pa",
        }
    }
}

/// Validated per-model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Threshold { theta: f64, law: FitnessLaw },
    ErdosRenyi { p: f64 },
    Geometric { rho: f64 },
    RandomKey { key_count: u32, pool_size: u32 },
    PreferentialAttachment { edges_per_node: u32 },
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::Threshold { .. } => ModelKind::Threshold,
            ModelParams::ErdosRenyi { .. } => ModelKind::ErdosRenyi,
            ModelParams::Geometric { .. } => ModelKind::Geometric,
            ModelParams::RandomKey { .. } => ModelKind::RandomKey,
            ModelParams::PreferentialAttachment { .. } => ModelKind::PreferentialAttachment,
        }
    }
}

/// A fully specified model instance: node count plus validated parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    n: usize,
    params: ModelParams,
}

impl ModelSpec {
    pub fn new(n: usize, params: ModelParams) -> Result<Self, ModelError> {
        if n < 2 {
            return Err(ModelError::TooFewNodes(n));
        }
        match params {
            ModelParams::Threshold { theta, .. } => {
                if theta <= 0.0 || !theta.is_finite() || theta.is_nan() {
                    return Err(ModelError::NonPositiveThreshold(theta));
                }
            }
            ModelParams::ErdosRenyi { p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(ModelError::ProbabilityOutOfRange(p));
                }
            }
            ModelParams::Geometric { rho } => {
                if rho.is_nan() || rho <= 0.0 || rho > std::f64::consts::SQRT_2 {
                    return Err(ModelError::RadiusOutOfRange(rho));
                }
            }
            ModelParams::RandomKey {
                key_count,
                pool_size,
            } => {
                if key_count < 1 || key_count >= pool_size {
                    return Err(ModelError::BadKeyParameters {
                        key_count,
                        pool_size,
                    });
                }
            }
            ModelParams::PreferentialAttachment { edges_per_node } => {
                if edges_per_node == 0 {
                    return Err(ModelError::ZeroAttachment);
                }
                if n < edges_per_node as usize + 1 {
                    return Err(ModelError::SeedLargerThanGraph {
                        n,
                        m: edges_per_node,
                    });
                }
            }
        }
        Ok(ModelSpec { n, params })
    }

    /// Builds the spec at the model's critical scaling; see
    /// [`critical_scaling`].
    pub fn from_critical_scaling(
        kind: ModelKind,
        n: usize,
        scale: f64,
    ) -> Result<Self, ModelError> {
        ModelSpec::new(n, critical_scaling(kind, n, scale)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn kind(&self) -> ModelKind {
        self.params.kind()
    }
}

/// Maps a model family and a scale constant to concrete parameters at the
/// critical scaling where the nodal degree law converges:
///
/// * Erdos-Renyi: `p = c/n`
/// * geometric: `pi rho^2 = c/n`
/// * threshold (exponential fitness, rate `lambda = scale`): `theta = ln(n)/lambda`
/// * random key graph: smallest `K >= 2` with `K^2/P` within 10% of `c/n`
/// * preferential attachment: `scale` is `m`, passed through
pub fn critical_scaling(
    kind: ModelKind,
    n: usize,
    scale: f64,
) -> Result<ModelParams, ModelError> {
    if n < 2 {
        return Err(ModelError::TooFewNodes(n));
    }
    if scale.is_nan() || scale <= 0.0 || !scale.is_finite() {
        return Err(ModelError::BadScale(scale));
    }
    let nf = n as f64;
    match kind {
        ModelKind::ErdosRenyi => {
            let p = scale / nf;
            if p > 1.0 {
                return Err(ModelError::ProbabilityOutOfRange(p));
            }
            Ok(ModelParams::ErdosRenyi { p })
        }
        ModelKind::Geometric => {
            let rho = (scale / (std::f64::consts::PI * nf)).sqrt();
            if rho > std::f64::consts::SQRT_2 {
                return Err(ModelError::RadiusOutOfRange(rho));
            }
            Ok(ModelParams::Geometric { rho })
        }
        ModelKind::Threshold => Ok(ModelParams::Threshold {
            theta: nf.ln() / scale,
            law: FitnessLaw::exponential(scale)?,
        }),
        ModelKind::RandomKey => key_scaling(n, scale),
        ModelKind::PreferentialAttachment => {
            let m = scale.round();
            if (scale - m).abs() > 1e-9 || m < 1.0 || m > u32::MAX as f64 {
                return Err(ModelError::BadScale(scale));
            }
            Ok(ModelParams::PreferentialAttachment {
                edges_per_node: m as u32,
            })
        }
    }
}

/// Fixes the key-graph pair (K, P): starting from K = 2, sets
/// `P = round(n K^2 / c)`, re-derives `K = max(2, round(sqrt(c P / n)))`
/// until stable, and accepts the pair if `K^2/P` is within 10% of `c/n`.
fn key_scaling(n: usize, c: f64) -> Result<ModelParams, ModelError> {
    let nf = n as f64;
    let target = c / nf;
    let mut k = 2u32;
    for _ in 0..8 {
        let p = (nf * f64::from(k) * f64::from(k) / c).round();
        if !p.is_finite() || p < 2.0 || p > u32::MAX as f64 {
            return Err(ModelError::NoKeyScaling { n, c });
        }
        let k_next = (c * p / nf).sqrt().round().max(2.0) as u32;
        if k_next == k {
            let pool = p as u32;
            let ratio = f64::from(k) * f64::from(k) / p;
            if k < pool && (ratio - target).abs() <= 0.1 * target {
                return Ok(ModelParams::RandomKey {
                    key_count: k,
                    pool_size: pool,
                });
            }
            return Err(ModelError::NoKeyScaling { n, c });
        }
        k = k_next;
    }
    Err(ModelError::NoKeyScaling { n, c })
}

/// One realization's degree vector with its provenance.
#[derive(Debug, Clone)]
pub struct DegreeSample {
    pub spec: ModelSpec,
    /// Degree of node k at index k.
    pub degrees: Vec<u32>,
    /// Fitness values (threshold model only).
    pub fitness: Option<Vec<f64>>,
    /// `(master_seed, stream_id)` of the stream that produced the sample.
    pub seed_info: (u64, u64),
}

impl DegreeSample {
    pub fn n(&self) -> usize {
        self.degrees.len()
    }
}

/// Generates one realization of the model and returns its degrees.
pub fn generate_degrees(spec: &ModelSpec, stream: &mut RandomStream) -> DegreeSample {
    let n = spec.n;
    match spec.params {
        ModelParams::Threshold { theta, law } => {
            gen_threshold_degrees(n, theta, law, stream).expect("validated spec")
        }
        ModelParams::ErdosRenyi { p } => gen_er_degrees(n, p, stream).expect("validated spec"),
        ModelParams::Geometric { rho } => {
            gen_rgg_degrees(n, rho, stream).expect("validated spec")
        }
        ModelParams::RandomKey {
            key_count,
            pool_size,
        } => gen_keygraph_degrees(n, key_count, pool_size, stream).expect("validated spec"),
        ModelParams::PreferentialAttachment { edges_per_node } => {
            gen_ba_degrees(n, edges_per_node, stream).expect("validated spec")
        }
    }
}

/// Generates one realization together with its edge list (0-indexed pairs).
/// Quadratic for the threshold model; intended for debugging small graphs.
pub fn generate_with_edges(
    spec: &ModelSpec,
    stream: &mut RandomStream,
) -> (DegreeSample, Vec<(u32, u32)>) {
    let n = spec.n;
    match spec.params {
        ModelParams::Threshold { theta, law } => {
            let sample = gen_threshold_degrees(n, theta, law, stream).expect("validated spec");
            let fitness = sample.fitness.as_ref().expect("threshold keeps fitness");
            let mut edges = Vec::new();
            for k in 0..n {
                for l in (k + 1)..n {
                    if fitness[k] + fitness[l] > theta {
                        edges.push((k as u32, l as u32));
                    }
                }
            }
            (sample, edges)
        }
        ModelParams::ErdosRenyi { p } => {
            erdos_renyi::gen_er_with_edges(n, p, stream).expect("validated spec")
        }
        ModelParams::Geometric { rho } => {
            geometric::gen_rgg_with_edges(n, rho, stream).expect("validated spec")
        }
        ModelParams::RandomKey {
            key_count,
            pool_size,
        } => key_graph::gen_keygraph_with_edges(n, key_count, pool_size, stream)
            .expect("validated spec"),
        ModelParams::PreferentialAttachment { edges_per_node } => {
            preferential::gen_ba_with_edges(n, edges_per_node, stream).expect("validated spec")
        }
    }
}

/// Writes an edge list as one `u v` pair per line, 1-indexed.
pub fn write_edge_list<W: Write>(mut w: W, edges: &[(u32, u32)]) -> io::Result<()> {
    for &(u, v) in edges {
        writeln!(w, "{} {}", u + 1, v + 1)?;
    }
    Ok(())
}

/// Checks the simple-graph degree invariants shared by the undirected
/// models.
#[cfg(test)]
pub(crate) fn assert_simple_degrees(degrees: &[u32]) {
    let n = degrees.len() as u64;
    let sum: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
    assert!(sum.is_multiple_of(2), "degree sum {sum} is odd");
    assert!(degrees.iter().all(|&d| u64::from(d) < n));
}
