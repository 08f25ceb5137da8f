//! Preferential attachment growth: starting from a clique on m+1 nodes,
//! each arriving node attaches m edges to existing nodes chosen with
//! probability proportional to their current degree. Degree-proportional
//! choice samples uniformly from the running list of edge endpoints;
//! duplicate targets for the same arrival are redrawn, so the graph stays
//! simple. Self-loops cannot occur because targets precede the arrival.

use crate::rng::RandomStream;

use super::{DegreeSample, ModelError, ModelParams, ModelSpec};

fn generate<F: FnMut(u32, u32)>(
    n: usize,
    m: u32,
    stream: &mut RandomStream,
    mut on_edge: F,
) -> Vec<u32> {
    let m_us = m as usize;
    let mut degrees = vec![0u32; n];
    // every edge contributes both endpoints; sampling a uniform entry is a
    // degree-proportional draw
    let edge_count = m_us * (n - m_us - 1) + m_us * (m_us + 1) / 2;
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * edge_count);
    for a in 0..=m_us {
        for b in 0..a {
            endpoints.push(a as u32);
            endpoints.push(b as u32);
            degrees[a] += 1;
            degrees[b] += 1;
            on_edge(b as u32, a as u32);
        }
    }
    let mut chosen: Vec<u32> = Vec::with_capacity(m_us);
    for arrival in (m_us + 1)..n {
        chosen.clear();
        while chosen.len() < m_us {
            let t = endpoints[stream.sample_index(endpoints.len() as u64) as usize];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            endpoints.push(t);
            endpoints.push(arrival as u32);
            degrees[t as usize] += 1;
            degrees[arrival] += 1;
            on_edge(t, arrival as u32);
        }
    }
    degrees
}

/// One realization's degree vector.
pub fn gen_ba_degrees(
    n: usize,
    m: u32,
    stream: &mut RandomStream,
) -> Result<DegreeSample, ModelError> {
    let spec = ModelSpec::new(n, ModelParams::PreferentialAttachment { edges_per_node: m })?;
    let degrees = generate(n, m, stream, |_, _| {});
    Ok(DegreeSample {
        spec,
        degrees,
        fitness: None,
        seed_info: stream.seed_info(),
    })
}

pub(super) fn gen_ba_with_edges(
    n: usize,
    m: u32,
    stream: &mut RandomStream,
) -> Result<(DegreeSample, Vec<(u32, u32)>), ModelError> {
    let spec = ModelSpec::new(n, ModelParams::PreferentialAttachment { edges_per_node: m })?;
    let mut edges = Vec::new();
    let degrees = generate(n, m, stream, |a, b| edges.push((a.min(b), a.max(b))));
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::make_stream;

    #[test]
    fn smallest_growth_step_degree_multiset() {
        // n = 3, m = 1: node 2 attaches to node 0 or 1; degrees {1, 1, 2}
        for seed in 0..20 {
            let mut stream = make_stream(seed, 0);
            let mut degs = gen_ba_degrees(3, 1, &mut stream).unwrap().degrees;
            degs.sort_unstable();
            assert_eq!(degs, vec![1, 1, 2]);
        }
    }

    #[test]
    fn edge_count_identity() {
        // edges = m (n - m - 1) + m (m + 1) / 2 and the handshake identity
        for (n, m) in [(50usize, 1u32), (80, 2), (40, 3), (10, 4)] {
            let mut stream = make_stream(16, (n + m as usize) as u64);
            let (sample, edges) = gen_ba_with_edges(n, m, &mut stream).unwrap();
            let expect = m as usize * (n - m as usize - 1) + m as usize * (m as usize + 1) / 2;
            assert_eq!(edges.len(), expect);
            let degree_sum: u64 = sample.degrees.iter().map(|&d| u64::from(d)).sum();
            assert_eq!(degree_sum, 2 * expect as u64);
            // simple graph: no duplicate edges
            let mut sorted = edges.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), expect);
        }
    }

    #[test]
    fn arrivals_have_degree_at_least_m() {
        let mut stream = make_stream(17, 0);
        let sample = gen_ba_degrees(500, 3, &mut stream).unwrap();
        assert!(sample.degrees.iter().all(|&d| d >= 3));
    }

    #[test]
    fn rejects_degenerate_parameters() {
        let mut stream = make_stream(0, 0);
        assert!(gen_ba_degrees(3, 3, &mut stream).is_err());
        assert!(gen_ba_degrees(10, 0, &mut stream).is_err());
    }
}
