//! Geometric random graphs on the unit square: n uniform points, an edge
//! whenever the Euclidean distance is at most rho. Neighbor search goes
//! through a square cell grid with side at least rho, so only the 3x3 cell
//! neighborhood of a point needs checking.

use crate::rng::RandomStream;

use super::{DegreeSample, ModelError, ModelParams, ModelSpec};

struct CellGrid {
    cells_per_side: usize,
    // point indices bucketed by cell, row-major
    buckets: Vec<Vec<u32>>,
}

impl CellGrid {
    fn build(points: &[(f64, f64)], rho: f64) -> CellGrid {
        // side 1/m >= rho requires m <= 1/rho
        let cells_per_side = ((1.0 / rho).floor() as usize).clamp(1, 4096);
        let mut buckets = vec![Vec::new(); cells_per_side * cells_per_side];
        for (i, &(x, y)) in points.iter().enumerate() {
            buckets[Self::cell_index(cells_per_side, x, y)].push(i as u32);
        }
        CellGrid {
            cells_per_side,
            buckets,
        }
    }

    fn cell_index(m: usize, x: f64, y: f64) -> usize {
        let cx = ((x * m as f64) as usize).min(m - 1);
        let cy = ((y * m as f64) as usize).min(m - 1);
        cy * m + cx
    }

    /// Visits each unordered candidate pair exactly once.
    fn for_each_pair<F: FnMut(u32, u32)>(&self, mut visit: F) {
        let m = self.cells_per_side;
        for cy in 0..m {
            for cx in 0..m {
                let here = &self.buckets[cy * m + cx];
                // within the cell
                for i in 0..here.len() {
                    for j in (i + 1)..here.len() {
                        visit(here[i], here[j]);
                    }
                }
                // forward half of the 3x3 neighborhood
                for (dx, dy) in [(1isize, 0isize), (-1, 1), (0, 1), (1, 1)] {
                    let nx = cx as isize + dx;
                    let ny = cy as isize + dy;
                    if nx < 0 || ny < 0 || nx >= m as isize || ny >= m as isize {
                        continue;
                    }
                    let there = &self.buckets[ny as usize * m + nx as usize];
                    for &a in here {
                        for &b in there {
                            visit(a, b);
                        }
                    }
                }
            }
        }
    }
}

/// Degrees of the geometric graph on the given point set.
pub fn rgg_degrees_from_points(points: &[(f64, f64)], rho: f64) -> Vec<u32> {
    let mut degrees = vec![0u32; points.len()];
    let rho2 = rho * rho;
    let grid = CellGrid::build(points, rho);
    grid.for_each_pair(|a, b| {
        let (xa, ya) = points[a as usize];
        let (xb, yb) = points[b as usize];
        let dx = xa - xb;
        let dy = ya - yb;
        if dx * dx + dy * dy <= rho2 {
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
        }
    });
    degrees
}

fn draw_points(n: usize, stream: &mut RandomStream) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| (stream.sample_uniform(), stream.sample_uniform()))
        .collect()
}

/// One realization with n uniform points on the unit square.
pub fn gen_rgg_degrees(
    n: usize,
    rho: f64,
    stream: &mut RandomStream,
) -> Result<DegreeSample, ModelError> {
    let spec = ModelSpec::new(n, ModelParams::Geometric { rho })?;
    let points = draw_points(n, stream);
    Ok(DegreeSample {
        spec,
        degrees: rgg_degrees_from_points(&points, rho),
        fitness: None,
        seed_info: stream.seed_info(),
    })
}

pub(super) fn gen_rgg_with_edges(
    n: usize,
    rho: f64,
    stream: &mut RandomStream,
) -> Result<(DegreeSample, Vec<(u32, u32)>), ModelError> {
    let spec = ModelSpec::new(n, ModelParams::Geometric { rho })?;
    let points = draw_points(n, stream);
    let mut degrees = vec![0u32; n];
    let mut edges = Vec::new();
    let rho2 = rho * rho;
    let grid = CellGrid::build(&points, rho);
    grid.for_each_pair(|a, b| {
        let (xa, ya) = points[a as usize];
        let (xb, yb) = points[b as usize];
        let dx = xa - xb;
        let dy = ya - yb;
        if dx * dx + dy * dy <= rho2 {
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
            edges.push((a.min(b), a.max(b)));
        }
    });
    edges.sort_unstable();
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
