//! Random key graphs: each node holds a uniformly random K-subset of a
//! P-element key pool, and two nodes are adjacent when their key rings
//! intersect. Degrees come from an inverted key-to-holders index, so the
//! expected cost stays near n * K * (mean co-holders) instead of n^2.

use crate::rng::RandomStream;

use super::{DegreeSample, ModelError, ModelParams, ModelSpec};

/// Degrees of the intersection graph over explicit key rings.
pub fn keygraph_degrees_from_keys(keys: &[Vec<u32>], pool_size: u32) -> Vec<u32> {
    let n = keys.len();
    let mut holders: Vec<Vec<u32>> = vec![Vec::new(); pool_size as usize];
    for (node, ring) in keys.iter().enumerate() {
        for &k in ring {
            holders[k as usize].push(node as u32);
        }
    }
    let mut degrees = vec![0u32; n];
    let mut neighbors: Vec<u32> = Vec::new();
    for (node, ring) in keys.iter().enumerate() {
        neighbors.clear();
        for &k in ring {
            neighbors.extend(
                holders[k as usize]
                    .iter()
                    .copied()
                    .filter(|&other| other != node as u32),
            );
        }
        neighbors.sort_unstable();
        neighbors.dedup();
        degrees[node] = neighbors.len() as u32;
    }
    degrees
}

/// Samples one K-subset of {0, .., pool_size-1} without replacement
/// (Floyd's algorithm); returned sorted.
fn sample_key_ring(key_count: u32, pool_size: u32, stream: &mut RandomStream) -> Vec<u32> {
    let mut ring: Vec<u32> = Vec::with_capacity(key_count as usize);
    for j in (pool_size - key_count)..pool_size {
        let t = stream.sample_index(u64::from(j) + 1) as u32;
        if ring.contains(&t) {
            ring.push(j);
        } else {
            ring.push(t);
        }
    }
    ring.sort_unstable();
    ring
}

/// One realization of the random key graph.
pub fn gen_keygraph_degrees(
    n: usize,
    key_count: u32,
    pool_size: u32,
    stream: &mut RandomStream,
) -> Result<DegreeSample, ModelError> {
    let spec = ModelSpec::new(
        n,
        ModelParams::RandomKey {
            key_count,
            pool_size,
        },
    )?;
    let keys: Vec<Vec<u32>> = (0..n)
        .map(|_| sample_key_ring(key_count, pool_size, stream))
        .collect();
    Ok(DegreeSample {
        spec,
        degrees: keygraph_degrees_from_keys(&keys, pool_size),
        fitness: None,
        seed_info: stream.seed_info(),
    })
}

pub(super) fn gen_keygraph_with_edges(
    n: usize,
    key_count: u32,
    pool_size: u32,
    stream: &mut RandomStream,
) -> Result<(DegreeSample, Vec<(u32, u32)>), ModelError> {
    let spec = ModelSpec::new(
        n,
        ModelParams::RandomKey {
            key_count,
            pool_size,
        },
    )?;
    let keys: Vec<Vec<u32>> = (0..n)
        .map(|_| sample_key_ring(key_count, pool_size, stream))
        .collect();
    let degrees = keygraph_degrees_from_keys(&keys, pool_size);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let intersect = keys[a].iter().any(|k| keys[b].binary_search(k).is_ok());
            if intersect {
                edges.push((a as u32, b as u32));
            }
        }
    }
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
    use crate::models::assert_simple_degrees;
    use crate::rng::make_stream;

    #[test]
    fn rejects_ring_at_least_pool() {
        let mut stream = make_stream(1, 0);
        assert!(gen_keygraph_degrees(3, 2, 2, &mut stream).is_err());
        assert!(gen_keygraph_degrees(3, 1, 1, &mut stream).is_err());
    }

    #[test]
    fn forced_rings_control_adjacency() {
        // identical single keys intersect, disjoint ones do not
        assert_eq!(
            keygraph_degrees_from_keys(&[vec![7], vec![7]], 1000),
            vec![1, 1]
        );
        assert_eq!(
            keygraph_degrees_from_keys(&[vec![7], vec![8]], 1000),
            vec![0, 0]
        );
    }

    #[test]
    fn shared_key_counts_once() {
        // two shared keys still form a single edge
        assert_eq!(
            keygraph_degrees_from_keys(&[vec![1, 2], vec![1, 2], vec![3, 4]], 10),
            vec![1, 1, 0]
        );
    }

    #[test]
    fn ring_sampling_is_a_k_subset() {
        let mut stream = make_stream(3, 0);
        for _ in 0..500 {
            let ring = sample_key_ring(4, 30, &mut stream);
            assert_eq!(ring.len(), 4);
            assert!(ring.windows(2).all(|w| w[0] < w[1]));
            assert!(ring.iter().all(|&k| k < 30));
        }
    }

    #[test]
    fn index_path_equals_brute_force_intersection() {
        let n = 300;
        let (k, p) = (4u32, 4800u32);
        let mut stream = make_stream(15, 0);
        let sample = gen_keygraph_degrees(n, k, p, &mut stream).unwrap();
        // rebuild identical rings and brute-force the degrees
        let mut replay = make_stream(15, 0);
        let keys: Vec<Vec<u32>> = (0..n).map(|_| sample_key_ring(k, p, &mut replay)).collect();
        let mut brute = vec![0u32; n];
        for a in 0..n {
            for b in (a + 1)..n {
                if keys[a].iter().any(|key| keys[b].contains(key)) {
                    brute[a] += 1;
                    brute[b] += 1;
                }
            }
        }
        assert_eq!(sample.degrees, brute);
        assert_simple_degrees(&sample.degrees);
    }
}
