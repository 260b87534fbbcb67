//! Constructive partition and cover algorithms.
//!
//! Every algorithm here produces a checkable certificate ([`PartitionCertificate`],
//! [`CoverCertificate`], or [`AbsorbingTreePartition`]) and re-verifies it against
//! the input graph before returning; a verification failure is a bug and panics.
//! All tie-breaks are deterministic (lowest color, then lowest vertex index), so
//! identical inputs and seeds always yield identical outputs.

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::certificate::TreeBlock;
use crate::colored::ColoredGraph;

mod absorb;
mod cover;
mod gnp;
mod hk;
mod leaf;
mod star;

pub use absorb::{
    complete_partition, leafy_spanning_tree, mindeg_absorbing_partition, LeafyTree,
};
pub use cover::{aux_cover, two_color_cover};
pub use gnp::gnp_two_color_partition;
pub use hk::{hk_partition, HkExit, HkOutcome};
pub use leaf::{leaf_partition, LeafMode, LeafPartition, ZAttachment};
pub use star::{double_star, large_mono_structure, DoubleStar, LargeMonoStructure};

/// Trace of the nested-neighborhood stage shared by the complete-graph and
/// min-degree partitioners: centers `x_1..x_i`, shrinking sets
/// `Y_1 ⊇ … ⊇ Y_i`, and the pairwise-distinct colors chosen so far.
#[derive(Debug, Clone)]
pub struct StepOneState {
    pub centers: Vec<u32>,
    pub sets: Vec<VertexSet>,
    pub colors: Vec<u8>,
}

impl StepOneState {
    fn empty() -> Self {
        StepOneState {
            centers: Vec::new(),
            sets: Vec::new(),
            colors: Vec::new(),
        }
    }

    /// Number of colors committed so far.
    pub fn depth(&self) -> usize {
        self.colors.len()
    }
}

/// Trees of pairwise-distinct colors whose pairwise vertex intersections all
/// equal one shared set `leaf_set` of common leaves; the leaves can later be
/// reassigned freely to any one tree ([`complete_partition`]).
#[derive(Debug, Clone)]
pub struct AbsorbingTreePartition {
    /// One tree per color used; tree `i` carries `trees[i].color` on every edge.
    pub trees: Vec<TreeBlock>,
    /// Common leaves, ascending: a degree-1 vertex of *every* tree.
    pub leaf_set: Vec<u32>,
    /// Total number of distinct vertices covered by the trees.
    pub covered: usize,
}

impl AbsorbingTreePartition {
    /// Number of trees.
    pub fn k(&self) -> usize {
        self.trees.len()
    }

    /// Size of the common leaf set.
    pub fn l(&self) -> usize {
        self.leaf_set.len()
    }
}

/// Failures of the constructive algorithms in this module.
#[derive(Debug, Error)]
pub enum PartitionerError {
    /// Randomized assignment failed on every attempt.
    #[error("randomized leaf assignment failed on all {retries} attempts")]
    RetriesExhausted { retries: usize },
    /// A vertex falls short of the degree bound the algorithm requires.
    #[error(
        "vertex {witness} has colored degree {actual}, at or below the required {required:.4}"
    )]
    HypothesisViolated {
        witness: u32,
        actual: usize,
        required: f64,
    },
    /// The nested neighborhoods ran out before a partition could be assembled.
    #[error("nested neighborhoods exhausted after {} colors", state.depth())]
    YExhausted { state: StepOneState },
    /// The operation requires a specific number of colors.
    #[error("expected exactly {expected} colors, got {actual}")]
    WrongColorCount { expected: usize, actual: usize },
    /// A structural property the algorithm relies on does not hold on this input.
    #[error("expected structure is absent: {detail}")]
    StructureBroken { detail: String },
    /// The leaf-assignment subroutine failed.
    #[error("leaf assignment failed: {0}")]
    LeafPartitionFailed(#[source] Box<PartitionerError>),
    /// The min-degree partitioner stalled; the trace shows how far it got.
    #[error("partition construction stalled after {} colors", state.depth())]
    StepFailed { state: StepOneState },
    /// Exhaustive component-pair search found no cover.
    #[error("no pair of monochromatic components covers every vertex{}",
        if *critical { " (CRITICAL: the minimum-degree bound promises one)" } else { "" })]
    NotFound { critical: bool },
    /// The given bipartition has no crossing edges.
    #[error("no edges cross the given bipartition")]
    NoCrossingEdges,
    /// A vertex shares no monochromatic component with any other vertex, so no
    /// component-based cover can reach it.
    #[error("vertex {vertex} lies in no monochromatic component")]
    IsolatedInH { vertex: u32 },
    /// A parameter is outside its documented range.
    #[error("invalid parameter: {what}")]
    InvalidParameter { what: String },
    /// The instance is smaller than the size threshold for these parameters.
    #[error("n = {n} is below the required size threshold {required:.1} (pass force to override)")]
    BelowSizeThreshold { n: usize, required: f64 },
}

/// Checks the four absorbing-tree-partition invariants against `cg`:
/// (1) the trees cover exactly `covered` distinct vertices, (2) each tree's
/// edges all exist in `cg` with the tree's color and span the tree, (3) every
/// leaf-set vertex has degree 1 in every tree, (4) every pairwise tree
/// intersection equals the leaf set exactly.
pub fn verify_atp(cg: &ColoredGraph, atp: &AbsorbingTreePartition) -> Result<(), String> {
    let n = cg.n();
    if atp.trees.is_empty() {
        return Err("no trees".into());
    }
    let lset = VertexSet::from_slice(n, &atp.leaf_set);
    if lset.count() != atp.leaf_set.len() {
        return Err("leaf set has duplicates or out-of-range vertices".into());
    }

    let mut union = VertexSet::new(n);
    let mut blocks: Vec<VertexSet> = Vec::with_capacity(atp.trees.len());
    for (ti, tree) in atp.trees.iter().enumerate() {
        if tree.vertices.is_empty() {
            return Err(format!("tree {ti} is empty"));
        }
        let block = VertexSet::from_slice(n, &tree.vertices);
        if block.count() != tree.vertices.len() {
            return Err(format!("tree {ti} repeats a vertex or leaves the range"));
        }
        if tree.tree_edges.len() + 1 != tree.vertices.len() {
            return Err(format!(
                "tree {ti} has {} edges for {} vertices",
                tree.tree_edges.len(),
                tree.vertices.len()
            ));
        }
        let mut degree = vec![0usize; n];
        for &(a, b) in &tree.tree_edges {
            let (a, b) = (a as usize, b as usize);
            if a >= n || b >= n || !block.contains(a) || !block.contains(b) {
                return Err(format!("tree {ti} edge ({a},{b}) leaves the tree"));
            }
            if cg.color_of(a, b) != Some(tree.color) {
                return Err(format!(
                    "tree {ti} edge ({a},{b}) is missing or not color {}",
                    tree.color
                ));
            }
            degree[a] += 1;
            degree[b] += 1;
        }
        if !edges_connect(&tree.vertices, &tree.tree_edges) {
            return Err(format!("tree {ti} is not connected"));
        }
        for &l in &atp.leaf_set {
            if !block.contains(l as usize) {
                return Err(format!("leaf {l} is missing from tree {ti}"));
            }
            if degree[l as usize] != 1 {
                return Err(format!(
                    "leaf {l} has degree {} in tree {ti}",
                    degree[l as usize]
                ));
            }
        }
        union.union_with(&block);
        blocks.push(block);
    }
    if union.count() != atp.covered {
        return Err(format!(
            "trees cover {} vertices, header says {}",
            union.count(),
            atp.covered
        ));
    }
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let mut inter = blocks[i].clone();
            inter.intersect_with(&blocks[j]);
            if inter != lset {
                return Err(format!(
                    "trees {i} and {j} intersect in {} vertices, expected the {} common leaves",
                    inter.count(),
                    lset.count()
                ));
            }
        }
    }
    // Distinct colors per tree.
    let mut seen = [false; 256];
    for tree in &atp.trees {
        if seen[tree.color as usize] {
            return Err(format!("color {} used by two trees", tree.color));
        }
        seen[tree.color as usize] = true;
    }
    Ok(())
}

/// True iff `edges` connect all of `vertices` (treating the edge list as an
/// undirected graph restricted to those vertices).
fn edges_connect(vertices: &[u32], edges: &[(u32, u32)]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    if vertices.len() == 1 {
        return true;
    }
    use std::collections::HashMap;
    let index: HashMap<u32, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for &(a, b) in edges {
        let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else {
            return false;
        };
        adj[ia].push(ib);
        adj[ib].push(ia);
    }
    let mut seen = vec![false; vertices.len()];
    let mut queue = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push(w);
            }
        }
    }
    reached == vertices.len()
}

/// Largest monochromatic neighborhood at `v`: the color class in which `v`
/// has the most neighbors (ties broken toward the lowest color) and that
/// neighbor set. `None` iff `v` is isolated.
fn largest_neighborhood_at(cg: &ColoredGraph, v: usize) -> Option<(u8, VertexSet)> {
    let mut counts = vec![0usize; cg.r() + 1];
    for &(_, c) in cg.colored_neighbors(v) {
        counts[c as usize] += 1;
    }
    let best = (1..counts.len()).max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)))?;
    if counts[best] == 0 {
        return None;
    }
    Some((best as u8, cg.color_neighbor_set(v, best as u8)))
}

/// Number of neighbors of `v` inside `set` reachable through an edge whose
/// color is marked in `used` (each neighbor counted once; an edge has one color).
fn used_colored_degree(cg: &ColoredGraph, v: usize, set: &VertexSet, used: &[bool]) -> usize {
    cg.colored_neighbors(v)
        .iter()
        .filter(|&&(nb, c)| used[c as usize] && set.contains(nb as usize))
        .count()
}

/// Extends the nested-neighborhood state by one center: picks the majority
/// color among `w`'s edges into the current innermost set restricted to
/// colors not yet used (ties toward the lowest color), and intersects.
/// Returns `false` when `w` has no such edge, leaving the state unchanged.
fn extend_nested(
    cg: &ColoredGraph,
    w: usize,
    centers: &mut Vec<u32>,
    sets: &mut Vec<VertexSet>,
    colors: &mut Vec<u8>,
    used: &mut [bool],
) -> bool {
    let innermost = sets.last().expect("state has at least one set");
    let mut counts = vec![0usize; cg.r() + 1];
    for &(nb, c) in cg.colored_neighbors(w) {
        if !used[c as usize] && innermost.contains(nb as usize) {
            counts[c as usize] += 1;
        }
    }
    let Some(best) = (1..counts.len())
        .filter(|&c| counts[c] > 0)
        .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)))
    else {
        return false;
    };
    let mut next = innermost.clone();
    next.intersect_with(&cg.color_neighbor_set(w, best as u8));
    centers.push(w as u32);
    sets.push(next);
    colors.push(best as u8);
    used[best] = true;
    true
}

/// Spanning tree of `set` inside color class `c`, as BFS edges from the
/// lowest vertex. Callers guarantee `set` is connected within color `c`.
fn color_spanning_tree(cg: &ColoredGraph, set: &VertexSet, c: u8) -> Vec<(u32, u32)> {
    let n = cg.n();
    let mut edges = Vec::new();
    let Some(start) = set.first() else {
        return edges;
    };
    let mut seen = VertexSet::new(n);
    seen.insert(start);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(nb, col) in cg.colored_neighbors(v) {
            let nb = nb as usize;
            if col == c && set.contains(nb) && !seen.contains(nb) {
                seen.insert(nb);
                edges.push((v as u32, nb as u32));
                queue.push_back(nb);
            }
        }
    }
    debug_assert_eq!(seen, *set, "set must be connected within the color");
    edges
}

/// Lowest-index vertex achieving the minimum degree.
fn min_degree_vertex(cg: &ColoredGraph) -> u32 {
    (0..cg.n())
        .min_by_key(|&v| cg.graph().degree(v))
        .unwrap_or(0) as u32
}
