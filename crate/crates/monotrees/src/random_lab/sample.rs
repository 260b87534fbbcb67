//! Reproducible `G(n,p)` sampling and uniform edge colorings.

use crate::colored::ColoredGraph;
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Samples `G(n,p)`: each of the `n·(n−1)/2` possible edges is present
/// independently with probability `p`. Identical `(n, p, seed)` always yield
/// the identical graph.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gnp_with_rng(n, p, &mut rng)
}

/// [`sample_gnp`] driven by a caller-owned RNG (used by sweep streams).
///
/// Runs in time proportional to the number of edges generated, not the
/// number of slots: a geometric jump over the lexicographically ordered edge
/// slots lands directly on each present edge.
pub fn gnp_with_rng<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!((0.0..=1.0).contains(&p), "p = {p} must lie in [0, 1]");
    if n == 0 || p <= 0.0 {
        return Graph::new(n, &[]).expect("edgeless graph is always valid");
    }
    if p >= 1.0 {
        return Graph::complete(n);
    }
    let total = (n as u64) * (n as u64 - 1) / 2;
    let ln_q = (1.0 - p).ln();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut pos: u64 = 0;
    let mut row: u64 = 0;
    let mut row_start: u64 = 0;
    loop {
        // Geometric number of absent slots before the next present edge.
        let u: f64 = rng.gen();
        let skip = ((1.0 - u).ln() / ln_q) as u64;
        pos = pos.saturating_add(skip);
        if pos >= total {
            break;
        }
        // Slots are ordered (0,1), (0,2), …, (0,n−1), (1,2), …; `pos` only
        // grows, so the row decode advances amortized O(n) overall.
        while pos >= row_start + (n as u64 - 1 - row) {
            row_start += n as u64 - 1 - row;
            row += 1;
        }
        let col = row + 1 + (pos - row_start);
        edges.push((row as usize, col as usize));
        pos += 1;
    }
    Graph::new(n, &edges).expect("sampler emits distinct in-range edges")
}

/// Colors every edge of `g` independently and uniformly from `1..=r`.
/// Deterministic per seed.
pub fn random_coloring(g: &Graph, r: usize, seed: u64) -> ColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    coloring_with_rng(g, r, &mut rng)
}

/// [`random_coloring`] driven by a caller-owned RNG (used by sweep streams).
pub fn coloring_with_rng<R: Rng + ?Sized>(g: &Graph, r: usize, rng: &mut R) -> ColoredGraph {
    assert!((1..=255).contains(&r), "r = {r} must lie in 1..=255");
    let colors: Vec<u8> = g
        .edges()
        .iter()
        .map(|_| rng.gen_range(1..=r) as u8)
        .collect();
    ColoredGraph::attach_colors(g.clone(), r, &colors)
}
