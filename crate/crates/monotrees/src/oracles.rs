//! Exact small-instance solvers.
//!
//! These are the ground truth the rest of the crate is tested against. They
//! are exponential-time searches with explicit size limits and a wall-clock
//! budget, and every positive answer comes with a certificate that
//! [`crate::certificate`] can re-check independently.

use crate::bitset::VertexSet;
use crate::certificate::{CoverCertificate, CoverPart, PartitionCertificate, TreeBlock};
use crate::colored::{mono_components, ColoredGraph, MonoComponent};
use crate::graph::Graph;
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Size and time caps for the exact solvers.
#[derive(Debug, Clone)]
pub struct OracleLimits {
    /// Vertex cap for the subset-DP partition solver (memory is `O(2^n)`).
    pub max_vertices_subset_dp: usize,
    /// Edge cap for whole-coloring enumeration (work is `O(r^(m-1))`).
    pub max_edges_coloring_enum: usize,
    /// Wall-clock budget for any single oracle call.
    pub time_budget: Duration,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices_subset_dp: 16,
            max_edges_coloring_enum: 15,
            time_budget: Duration::from_secs(120),
        }
    }
}

/// Node cap for the distinct-color cover search.
const DISTINCT_COVER_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} has size {size}, above the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("budget exceeded during {what}")]
    BudgetExceeded { what: &'static str },
    #[error("vertex {vertex} is isolated, so no monochromatic cover exists")]
    Uncoverable { vertex: u32 },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has no edges")]
    NoEdges,
}

/// Exact cover number of one colored instance, with an optimal cover.
#[derive(Debug, Clone)]
pub struct CoverSolution {
    pub value: usize,
    pub certificate: CoverCertificate,
}

/// Exact partition number of one colored instance, with an optimal partition.
#[derive(Debug, Clone)]
pub struct PartitionSolution {
    pub value: usize,
    pub certificate: PartitionCertificate,
}

/// Extremal value over all colorings of a graph, with one extremal coloring
/// (parallel to `graph.edges()`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringExtremal {
    pub value: usize,
    pub witness_colors: Vec<u8>,
}

/// Minimum number of monochromatic components needed to cover every vertex,
/// solved by branch-and-bound set cover over the maximal monochromatic
/// components. Components may repeat colors.
pub fn tc_exact(cg: &ColoredGraph, limits: &OracleLimits) -> Result<CoverSolution, OracleError> {
    let n = cg.n();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    if let Some(v) = (0..n).find(|&v| cg.graph().degree(v) == 0) {
        return Err(OracleError::Uncoverable { vertex: v as u32 });
    }
    let comps = mono_components(cg);
    let masks: Vec<&VertexSet> = comps.iter().map(|c| &c.vertices).collect();
    let deadline = Instant::now() + limits.time_budget;

    // Greedy upper bound: repeatedly take the component covering the most
    // uncovered vertices (lowest index on ties).
    let mut covered = VertexSet::new(n);
    let mut greedy_sel: Vec<usize> = Vec::new();
    while covered.count() < n {
        let (best_i, _) = masks
            .iter()
            .enumerate()
            .map(|(i, m)| (i, m.count() - m.intersection_count(&covered)))
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
            .expect("no isolated vertices, so components cover everything");
        covered.union_with(masks[best_i]);
        greedy_sel.push(best_i);
    }

    let max_comp_size = masks.iter().map(|m| m.count()).max().unwrap_or(1);
    let mut search = CoverSearch {
        masks: &masks,
        max_comp_size,
        best: greedy_sel.len(),
        best_sel: greedy_sel,
        nodes: 0,
        deadline,
        exceeded: false,
    };
    let mut uncovered = VertexSet::full(n);
    search.dfs(&mut uncovered, &mut Vec::new());
    if search.exceeded {
        return Err(OracleError::BudgetExceeded {
            what: "cover branch-and-bound",
        });
    }
    search.best_sel.sort_unstable();
    let parts = search
        .best_sel
        .iter()
        .map(|&i| CoverPart {
            color: comps[i].color,
            vertices: comps[i].vertices.to_vec(),
        })
        .collect();
    Ok(CoverSolution {
        value: search.best,
        certificate: CoverCertificate { parts },
    })
}

struct CoverSearch<'a> {
    masks: &'a [&'a VertexSet],
    max_comp_size: usize,
    best: usize,
    best_sel: Vec<usize>,
    nodes: u64,
    deadline: Instant,
    exceeded: bool,
}

impl CoverSearch<'_> {
    fn dfs(&mut self, uncovered: &mut VertexSet, chosen: &mut Vec<usize>) {
        if self.exceeded {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() >= self.deadline {
            self.exceeded = true;
            return;
        }
        let remaining = uncovered.count();
        if remaining == 0 {
            if chosen.len() < self.best {
                self.best = chosen.len();
                self.best_sel = chosen.clone();
            }
            return;
        }
        // Lower bound: even perfectly packed components need this many more.
        let bound = chosen.len() + remaining.div_ceil(self.max_comp_size);
        if bound >= self.best {
            return;
        }
        // Branch on the uncovered vertex contained in the fewest components.
        let v = uncovered
            .iter()
            .min_by_key(|&v| {
                (
                    self.masks.iter().filter(|m| m.contains(v)).count(),
                    v,
                )
            })
            .expect("remaining > 0");
        let options: Vec<usize> = (0..self.masks.len())
            .filter(|&i| self.masks[i].contains(v))
            .collect();
        for i in options {
            let mut next = uncovered.clone();
            next.subtract(self.masks[i]);
            chosen.push(i);
            self.dfs(&mut next, chosen);
            chosen.pop();
            if self.exceeded {
                return;
            }
        }
    }
}

/// Minimum number of vertex-disjoint monochromatic trees that together use
/// every vertex, solved by dynamic programming over vertex subsets. A
/// single non-isolated vertex counts as a degenerate tree.
pub fn tp_exact(
    cg: &ColoredGraph,
    limits: &OracleLimits,
) -> Result<PartitionSolution, OracleError> {
    let n = cg.n();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    if n > limits.max_vertices_subset_dp {
        return Err(OracleError::TooLarge {
            what: "vertex count for subset DP",
            size: n,
            limit: limits.max_vertices_subset_dp,
        });
    }
    if let Some(v) = (0..n).find(|&v| cg.graph().degree(v) == 0) {
        return Err(OracleError::Uncoverable { vertex: v as u32 });
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let r = cg.r();

    // Per-color adjacency masks.
    let mut adj: Vec<Vec<u32>> = vec![vec![0u32; n]; r];
    for (u, v, c) in cg.colored_edges() {
        let masks = &mut adj[c as usize - 1];
        masks[u as usize] |= 1u32 << v;
        masks[v as usize] |= 1u32 << u;
    }

    // block_color[s]: lowest color in which s induces a connected subgraph
    // (for singletons, the lowest incident color); 0 when no color works.
    let mut block_color = vec![0u8; (full as usize) + 1];
    for s in 1..=full {
        let su = s as usize;
        if s.count_ones() == 1 {
            let v = s.trailing_zeros() as usize;
            block_color[su] = (0..r)
                .find(|&c| adj[c][v] != 0)
                .map(|c| (c + 1) as u8)
                .expect("no isolated vertices");
            continue;
        }
        for (c, masks) in adj.iter().enumerate() {
            if connected_in_mask(s, masks) {
                block_color[su] = (c + 1) as u8;
                break;
            }
        }
    }

    // f[s]: fewest blocks partitioning s; choice[s]: the block containing
    // the lowest vertex of s in one optimal partition.
    const INF: u32 = u32::MAX;
    let mut f = vec![INF; (full as usize) + 1];
    let mut choice = vec![0u32; (full as usize) + 1];
    f[0] = 0;
    let deadline = Instant::now() + limits.time_budget;
    for s in 1..=full {
        let su = s as usize;
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        // Enumerate blocks t = low | (submask of rest), largest first.
        let mut sub = rest;
        loop {
            let t = sub | low;
            if block_color[t as usize] != 0 && f[(s ^ t) as usize] != INF {
                let cand = 1 + f[(s ^ t) as usize];
                if cand < f[su] {
                    f[su] = cand;
                    choice[su] = t;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        if su.is_multiple_of(8192) && Instant::now() >= deadline {
            return Err(OracleError::BudgetExceeded { what: "partition DP" });
        }
    }
    debug_assert_ne!(f[full as usize], INF, "no isolated vertices, so singletons always work");

    // Reconstruct blocks, then a spanning tree per block.
    let mut blocks = Vec::new();
    let mut s = full;
    while s != 0 {
        let t = choice[s as usize];
        let color = block_color[t as usize];
        let vertices: Vec<u32> = (0..n as u32).filter(|&v| t >> v & 1 == 1).collect();
        let tree_edges = spanning_tree_in_color(cg, &vertices, color);
        blocks.push(TreeBlock {
            color,
            vertices,
            tree_edges,
        });
        s ^= t;
    }
    Ok(PartitionSolution {
        value: f[full as usize] as usize,
        certificate: PartitionCertificate { blocks },
    })
}

/// True iff the vertices of mask `s` are connected under the per-vertex
/// adjacency masks `adj` (restricted to `s`).
fn connected_in_mask(s: u32, adj: &[u32]) -> bool {
    let start = s & s.wrapping_neg();
    let mut reached = start;
    loop {
        let mut grown = reached;
        let mut scan = reached;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            grown |= adj[v] & s;
        }
        if grown == reached {
            return reached == s;
        }
        reached = grown;
    }
}

/// BFS spanning tree of `vertices` inside color `color`, rooted at the lowest
/// vertex, exploring neighbors in ascending order.
fn spanning_tree_in_color(cg: &ColoredGraph, vertices: &[u32], color: u8) -> Vec<(u32, u32)> {
    if vertices.len() <= 1 {
        return Vec::new();
    }
    let members = VertexSet::from_slice(cg.n(), vertices);
    let root = vertices.iter().copied().min().expect("non-empty block") as usize;
    let mut seen = VertexSet::new(cg.n());
    seen.insert(root);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut edges = Vec::with_capacity(vertices.len() - 1);
    while let Some(v) = queue.pop_front() {
        for u in cg.neighbors_with_color(v, color) {
            if members.contains(u) && seen.insert(u) {
                edges.push((v.min(u) as u32, v.max(u) as u32));
                queue.push_back(u);
            }
        }
    }
    debug_assert_eq!(edges.len(), vertices.len() - 1, "block must be connected in its color");
    edges
}

/// Largest cover number over all colorings of `g` with colors `1..=r`,
/// together with one worst coloring. Color permutations do not change the
/// value, so the first edge's color is fixed to 1.
pub fn tc_graph_exact(
    g: &Graph,
    r: usize,
    limits: &OracleLimits,
) -> Result<ColoringExtremal, OracleError> {
    enumerate_colorings(g, r, limits, ColoringObjective::MaxCover)
}

/// Smallest achievable order of the largest monochromatic component over all
/// colorings of `g` with colors `1..=r`, with one minimizing coloring.
pub fn tm_graph_exact(
    g: &Graph,
    r: usize,
    limits: &OracleLimits,
) -> Result<ColoringExtremal, OracleError> {
    enumerate_colorings(g, r, limits, ColoringObjective::MinLargestComponent)
}

#[derive(Clone, Copy, PartialEq)]
enum ColoringObjective {
    MaxCover,
    MinLargestComponent,
}

fn enumerate_colorings(
    g: &Graph,
    r: usize,
    limits: &OracleLimits,
    objective: ColoringObjective,
) -> Result<ColoringExtremal, OracleError> {
    let n = g.n();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    let edges = g.edges();
    let m = edges.len();
    if m == 0 {
        return Err(match objective {
            ColoringObjective::MaxCover => OracleError::Uncoverable { vertex: 0 },
            ColoringObjective::MinLargestComponent => OracleError::NoEdges,
        });
    }
    if objective == ColoringObjective::MaxCover {
        if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
            return Err(OracleError::Uncoverable { vertex: v as u32 });
        }
    }
    if m > limits.max_edges_coloring_enum {
        return Err(OracleError::TooLarge {
            what: "edge count for coloring enumeration",
            size: m,
            limit: limits.max_edges_coloring_enum,
        });
    }
    if r == 0 {
        return Err(OracleError::TooLarge {
            what: "color count",
            size: 0,
            limit: usize::MAX,
        });
    }
    // Compact endpoint ids so every per-coloring computation fits in a
    // machine word; isolated vertices never join a component anyway.
    let mut compact_id = vec![u32::MAX; n];
    let mut nc: usize = 0;
    let edges: Vec<(u32, u32)> = edges
        .iter()
        .map(|&(u, v)| {
            let mut id = |w: u32| {
                if compact_id[w as usize] == u32::MAX {
                    compact_id[w as usize] = nc as u32;
                    nc += 1;
                }
                compact_id[w as usize]
            };
            (id(u), id(v))
        })
        .collect();
    let n = nc;
    debug_assert!(n <= 2 * m && n <= 64);

    let total: u64 = (r as u64)
        .checked_pow(m as u32 - 1)
        .expect("m <= 15 keeps the coloring count in range");
    let deadline = Instant::now() + limits.time_budget;
    let timed_out = AtomicBool::new(false);

    // Score convention: larger is better. Minimization negates.
    let score_of = |colors: &[u8]| -> i64 {
        match objective {
            ColoringObjective::MaxCover => cover_number_masks(n, &edges, colors, r) as i64,
            ColoringObjective::MinLargestComponent => {
                -(largest_component_masks(n, &edges, colors, r) as i64)
            }
        }
    };

    let best = (0..total)
        .into_par_iter()
        .map(|idx| {
            if timed_out.load(Ordering::Relaxed) {
                return None;
            }
            if idx % 1024 == 0 && Instant::now() >= deadline {
                timed_out.store(true, Ordering::Relaxed);
                return None;
            }
            let colors = decode_coloring(idx, m, r);
            Some((score_of(&colors), idx))
        })
        .while_some()
        .reduce(
            || (i64::MIN, u64::MAX),
            |a, b| {
                // Highest score wins; ties prefer the earliest coloring.
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    if timed_out.load(Ordering::Relaxed) {
        return Err(OracleError::BudgetExceeded {
            what: "coloring enumeration",
        });
    }
    let (score, idx) = best;
    let value = match objective {
        ColoringObjective::MaxCover => score as usize,
        ColoringObjective::MinLargestComponent => (-score) as usize,
    };
    Ok(ColoringExtremal {
        value,
        witness_colors: decode_coloring(idx, m, r),
    })
}

/// Coloring number `idx` in base-`r` digits, least significant digit on edge
/// 1; edge 0 always has color 1.
fn decode_coloring(idx: u64, m: usize, r: usize) -> Vec<u8> {
    let mut colors = Vec::with_capacity(m);
    colors.push(1u8);
    let mut x = idx;
    for _ in 1..m {
        colors.push((x % r as u64) as u8 + 1);
        x /= r as u64;
    }
    colors
}

/// Monochromatic component masks of a small colored instance, one `u64` per
/// component with at least one edge.
fn component_masks(n: usize, edges: &[(u32, u32)], colors: &[u8], r: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for c in 1..=r as u8 {
        let mut parent: Vec<u8> = (0..n as u8).collect();
        fn find(parent: &mut [u8], v: u8) -> u8 {
            let mut v = v;
            while parent[v as usize] != v {
                parent[v as usize] = parent[parent[v as usize] as usize];
                v = parent[v as usize];
            }
            v
        }
        let mut touched = 0u64;
        for (&(u, v), &ec) in edges.iter().zip(colors) {
            if ec == c {
                let (ru, rv) = (find(&mut parent, u as u8), find(&mut parent, v as u8));
                if ru != rv {
                    parent[ru as usize] = rv;
                }
                touched |= 1 << u | 1 << v;
            }
        }
        let mut comp_of_root = [0u64; 64];
        let mut roots = 0u64;
        let mut scan = touched;
        while scan != 0 {
            let v = scan.trailing_zeros() as u8;
            scan &= scan - 1;
            let root = find(&mut parent, v);
            comp_of_root[root as usize] |= 1 << v;
            roots |= 1 << root;
        }
        let mut rscan = roots;
        while rscan != 0 {
            let root = rscan.trailing_zeros() as usize;
            rscan &= rscan - 1;
            out.push(comp_of_root[root]);
        }
    }
    out
}

fn largest_component_masks(n: usize, edges: &[(u32, u32)], colors: &[u8], r: usize) -> usize {
    component_masks(n, edges, colors, r)
        .iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(1)
}

/// Exact set-cover size over the component masks of one small coloring.
fn cover_number_masks(n: usize, edges: &[(u32, u32)], colors: &[u8], r: usize) -> usize {
    let comps = component_masks(n, edges, colors, r);
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // Greedy upper bound.
    let mut covered = 0u64;
    let mut ub = 0usize;
    while covered != full {
        let gain = comps
            .iter()
            .map(|&m| (m & !covered).count_ones())
            .max()
            .expect("no isolated vertices");
        let i = comps
            .iter()
            .position(|&m| (m & !covered).count_ones() == gain)
            .expect("max exists");
        covered |= comps[i];
        ub += 1;
    }
    let max_size = comps.iter().map(|m| m.count_ones() as usize).max().unwrap_or(1);
    let mut best = ub;
    cover_dfs_masks(&comps, full, 0, 0, max_size, &mut best);
    best
}

fn cover_dfs_masks(comps: &[u64], full: u64, covered: u64, chosen: usize, max_size: usize, best: &mut usize) {
    if covered == full {
        *best = (*best).min(chosen);
        return;
    }
    let remaining = (full & !covered).count_ones() as usize;
    if chosen + remaining.div_ceil(max_size) >= *best {
        return;
    }
    let v = (full & !covered).trailing_zeros();
    for &m in comps.iter().filter(|&&m| m >> v & 1 == 1) {
        cover_dfs_masks(comps, full, covered | m, chosen + 1, max_size, best);
    }
}

/// Searches for a cover that uses at most one monochromatic component per
/// color. Returns `Ok(None)` when provably impossible.
pub fn distinct_color_cover_exists(
    cg: &ColoredGraph,
    _limits: &OracleLimits,
) -> Result<Option<CoverCertificate>, OracleError> {
    let n = cg.n();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    if let Some(v) = (0..n).find(|&v| cg.graph().degree(v) == 0) {
        return Err(OracleError::Uncoverable { vertex: v as u32 });
    }
    let comps = mono_components(cg);
    let r = cg.r();
    // Components grouped by color (colors are 1-based).
    let mut by_color: Vec<Vec<&MonoComponent>> = vec![Vec::new(); r + 1];
    for comp in &comps {
        by_color[comp.color as usize].push(comp);
    }
    // suffix_union[c] = every vertex in any component of color >= c.
    let mut suffix_union: Vec<VertexSet> = vec![VertexSet::new(n); r + 2];
    for c in (1..=r).rev() {
        let mut s = suffix_union[c + 1].clone();
        for comp in &by_color[c] {
            s.union_with(&comp.vertices);
        }
        suffix_union[c] = s;
    }

    let mut nodes: u64 = 0;
    let mut picked: Vec<&MonoComponent> = Vec::new();
    let covered = VertexSet::new(n);
    match distinct_dfs(n, 1, r, &by_color, &suffix_union, &covered, &mut picked, &mut nodes) {
        DistinctOutcome::Found => {
            let parts = picked
                .iter()
                .map(|comp| CoverPart {
                    color: comp.color,
                    vertices: comp.vertices.to_vec(),
                })
                .collect();
            Ok(Some(CoverCertificate { parts }))
        }
        DistinctOutcome::Exhausted => Ok(None),
        DistinctOutcome::OutOfBudget => Err(OracleError::BudgetExceeded {
            what: "distinct-color cover search",
        }),
    }
}

enum DistinctOutcome {
    Found,
    Exhausted,
    OutOfBudget,
}

#[allow(clippy::too_many_arguments)]
fn distinct_dfs<'a>(
    n: usize,
    c: usize,
    r: usize,
    by_color: &'a [Vec<&'a MonoComponent>],
    suffix_union: &[VertexSet],
    covered: &VertexSet,
    picked: &mut Vec<&'a MonoComponent>,
    nodes: &mut u64,
) -> DistinctOutcome {
    *nodes += 1;
    if *nodes > DISTINCT_COVER_NODE_BUDGET {
        return DistinctOutcome::OutOfBudget;
    }
    if covered.count() == n {
        return DistinctOutcome::Found;
    }
    if c > r {
        return DistinctOutcome::Exhausted;
    }
    // Everything still coverable must come from colors >= c.
    let mut reach = covered.clone();
    reach.union_with(&suffix_union[c]);
    if reach.count() != n {
        return DistinctOutcome::Exhausted;
    }
    // Option 1: pick each component of color c in turn.
    for comp in &by_color[c] {
        let mut next = covered.clone();
        next.union_with(&comp.vertices);
        picked.push(comp);
        match distinct_dfs(n, c + 1, r, by_color, suffix_union, &next, picked, nodes) {
            DistinctOutcome::Exhausted => {
                picked.pop();
            }
            other => return other,
        }
    }
    // Option 2: skip color c entirely.
    distinct_dfs(n, c + 1, r, by_color, suffix_union, covered, picked, nodes)
}
