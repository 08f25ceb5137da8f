//! Erdos-Renyi graphs: every one of the n(n-1)/2 potential undirected edges
//! appears independently with probability p.
//!
//! Sparse regimes use geometric edge skipping over the linearized pair
//! sequence (expected O(n + p n^2) work); dense regimes fall back to one
//! Bernoulli draw per pair.

use crate::rng::RandomStream;

use super::{DegreeSample, ModelError, ModelParams, ModelSpec};

const SKIP_THRESHOLD: f64 = 0.1;

fn generate<F: FnMut(usize, usize)>(
    n: usize,
    p: f64,
    stream: &mut RandomStream,
    mut on_edge: F,
) {
    if p == 0.0 {
        return;
    }
    if p < SKIP_THRESHOLD {
        // Geometric gaps through pairs (v, w), w < v, in row order.
        let lq = (1.0 - p).ln();
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let gap = (stream.sample_uniform().ln() / lq).floor() as i64;
            w += 1 + gap;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                on_edge(v, w as usize);
            }
        }
    } else {
        for v in 1..n {
            for w in 0..v {
                if stream.sample_uniform() < p {
                    on_edge(v, w);
                }
            }
        }
    }
}

/// One realization's degree vector.
pub fn gen_er_degrees(
    n: usize,
    p: f64,
    stream: &mut RandomStream,
) -> Result<DegreeSample, ModelError> {
    let spec = ModelSpec::new(n, ModelParams::ErdosRenyi { p })?;
    let mut degrees = vec![0u32; n];
    generate(n, p, stream, |v, w| {
        degrees[v] += 1;
        degrees[w] += 1;
    });
    Ok(DegreeSample {
        spec,
        degrees,
        fitness: None,
        seed_info: stream.seed_info(),
    })
}

pub(super) fn gen_er_with_edges(
    n: usize,
    p: f64,
    stream: &mut RandomStream,
) -> Result<(DegreeSample, Vec<(u32, u32)>), ModelError> {
    let spec = ModelSpec::new(n, ModelParams::ErdosRenyi { p })?;
    let mut degrees = vec![0u32; n];
    let mut edges = Vec::new();
    generate(n, p, stream, |v, w| {
        degrees[v] += 1;
        degrees[w] += 1;
        edges.push((w as u32, v as u32));
    });
    Ok((
        DegreeSample {
            spec,
            degrees,
            fitness: None,
            seed_info: stream.seed_info(),
        },
        edges,
    ))
}
