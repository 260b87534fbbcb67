//! Statistical checks of the degree and connectivity properties that hold
//! asymptotically almost surely in `G(n,p)` above the relevant thresholds.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use itertools::Itertools;
use rand::SeedableRng;
use serde::Serialize;
use rand_chacha::ChaCha8Rng;

/// `C(n, k) ≤ cap`, computed without overflow.
fn binomial_at_most(n: usize, k: usize, cap: usize) -> bool {
    if k > n {
        return true; // zero sets
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return false;
        }
    }
    acc <= cap as u128
}

/// Yields `samples` vertex sets of size `r`: every `r`-subset exactly once
/// when there are at most `samples` of them, otherwise `samples` uniform
/// draws. Returns whether the enumeration was exhaustive.
fn r_sets(
    n: usize,
    r: usize,
    samples: usize,
    seed: u64,
    mut f: impl FnMut(&[u32]),
) -> (usize, bool) {
    if r == 0 || r > n || samples == 0 {
        return (0, r > n);
    }
    if binomial_at_most(n, r, samples) {
        let mut checked = 0;
        for combo in (0..n as u32).combinations(r) {
            f(&combo);
            checked += 1;
        }
        (checked, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let set: Vec<u32> = rand::seq::index::sample(&mut rng, n, r)
                .into_iter()
                .map(|v| v as u32)
                .collect();
            f(&set);
        }
        (samples, false)
    }
}

/// Distribution of common-neighborhood sizes over `r`-sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborhoodStats {
    /// Number of `r`-sets inspected.
    pub checked: usize,
    /// True when every `r`-set was inspected (counts are then exact).
    pub exhaustive: bool,
    pub min: usize,
    pub mean: f64,
    /// `n·p^r/2`, the lower bound the regime promises.
    pub threshold: f64,
    /// Sets whose common neighborhood fell strictly below the threshold.
    pub violations: usize,
    /// A set attaining the minimum (empty when nothing was checked).
    pub worst_set: Vec<u32>,
}

/// Measures `|N^∩(R)|` over `r`-sets of vertices against the lower bound
/// `n·p^r/2` for the supplied `p`. Exhaustive whenever the number of `r`-sets
/// is at most `samples`; otherwise a seeded uniform sample. Read-only and
/// deterministic per seed.
pub fn check_common_neighborhoods(
    g: &Graph,
    r: usize,
    p: f64,
    samples: usize,
    seed: u64,
) -> NeighborhoodStats {
    let n = g.n();
    let threshold = n as f64 * p.powi(r as i32) / 2.0;
    let mut min = usize::MAX;
    let mut sum: f64 = 0.0;
    let mut violations = 0usize;
    let mut worst_set: Vec<u32> = Vec::new();
    let (checked, exhaustive) = r_sets(n, r, samples, seed, |set| {
        let size = g
            .common_neighborhood(set)
            .expect("sampled vertices are in range")
            .count();
        sum += size as f64;
        if (size as f64) < threshold {
            violations += 1;
        }
        if size < min {
            min = size;
            worst_set = set.to_vec();
        }
    });
    NeighborhoodStats {
        checked,
        exhaustive,
        min: if checked == 0 { 0 } else { min },
        mean: if checked == 0 { 0.0 } else { sum / checked as f64 },
        threshold,
        violations,
        worst_set,
    }
}

/// Fraction of `r`-sets whose common neighborhood induces a connected
/// subgraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectivityStats {
    pub checked: usize,
    pub exhaustive: bool,
    /// Sets with a nonempty, connected common neighborhood.
    pub connected: usize,
    /// Sets whose common neighborhood is empty (counted as disconnected).
    pub empty: usize,
    /// `connected / checked`; 1.0 when nothing was checked.
    pub fraction: f64,
    /// First set found with a disconnected (or empty) neighborhood.
    pub first_disconnected: Option<Vec<u32>>,
}

/// Measures how often `G[N^∩(R)]` is connected over `r`-sets, exhaustively
/// when feasible and by seeded sampling otherwise. Read-only and
/// deterministic per seed.
pub fn check_local_connectivity(
    g: &Graph,
    r: usize,
    samples: usize,
    seed: u64,
) -> ConnectivityStats {
    let mut connected = 0usize;
    let mut empty = 0usize;
    let mut first_disconnected: Option<Vec<u32>> = None;
    let (checked, exhaustive) = r_sets(g.n(), r, samples, seed, |set| {
        let hood = g
            .common_neighborhood(set)
            .expect("sampled vertices are in range");
        if hood.is_empty() {
            empty += 1;
            first_disconnected.get_or_insert_with(|| set.to_vec());
        } else if g.connected_within(&hood) {
            connected += 1;
        } else {
            first_disconnected.get_or_insert_with(|| set.to_vec());
        }
    });
    ConnectivityStats {
        checked,
        exhaustive,
        connected,
        empty,
        fraction: if checked == 0 {
            1.0
        } else {
            connected as f64 / checked as f64
        },
        first_disconnected,
    }
}

/// Vertices outside a designated set whose degree into it degraded below the
/// random-graph expectation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeafDegradationReport {
    /// Vertices `v ∉ l` with `deg(v, l) < |l|·p/2`, ascending.
    pub bad: Vec<u32>,
    /// `|l|·p/2`.
    pub threshold: f64,
    /// `9·ln(n)/p`, the count the regime tolerates.
    pub allowed: f64,
    /// Set when `|l| < 80·ln(n)/p`, below which the bound loses force.
    pub small_set_warning: bool,
    /// `bad.len() ≤ allowed`.
    pub within_allowance: bool,
}

/// Lists the vertices outside `l` whose degree into `l` fell strictly below
/// `|l|·p/2`. Deterministic; the caller supplies the `p` the graph was
/// sampled at.
pub fn check_leaf_degradation(g: &Graph, l: &VertexSet, p: f64) -> LeafDegradationReport {
    assert!(p > 0.0 && p <= 1.0, "p = {p} must lie in (0, 1]");
    assert_eq!(l.universe(), g.n(), "set must live on the graph's vertices");
    let n = g.n();
    let threshold = l.count() as f64 * p / 2.0;
    let allowed = 9.0 * (n.max(2) as f64).ln() / p;
    let bad: Vec<u32> = (0..n)
        .filter(|&v| !l.contains(v) && (g.degree_in(v, l) as f64) < threshold)
        .map(|v| v as u32)
        .collect();
    let small_set_warning = (l.count() as f64) < 80.0 * (n.max(2) as f64).ln() / p;
    let within_allowance = (bad.len() as f64) <= allowed;
    LeafDegradationReport {
        bad,
        threshold,
        allowed,
        small_set_warning,
        within_allowance,
    }
}
