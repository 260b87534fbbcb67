//! Min-degree absorbing tree partitions and depth-2 leafy spanning trees.
//!
//! Given minimum degree at least `(1−eps)n` and `alpha = 1/(e·r!) − eps`, the
//! partitioner either finds one spanning tree with almost all vertices as
//! leaves, or `k ∈ [2, r]` trees of distinct colors sharing a common leaf set
//! of `⌈alpha·n/2⌉` vertices. The shared leaves can then be handed out
//! round-robin to turn the overlapping trees into an exact partition.

use crate::bitset::VertexSet;
use crate::certificate::{verify_partition, PartitionCertificate, TreeBlock};
use crate::colored::ColoredGraph;
use crate::graph::Graph;

use super::leaf::{leaf_partition_with_colors, LeafMode};
use super::{
    extend_nested, largest_neighborhood_at, min_degree_vertex, used_colored_degree, verify_atp,
    AbsorbingTreePartition, PartitionerError, StepOneState,
};

/// A spanning tree of depth ≤ 2 with an explicit leaf list.
#[derive(Debug, Clone)]
pub struct LeafyTree {
    pub root: u32,
    pub tree_edges: Vec<(u32, u32)>,
    /// Degree-1 vertices of the tree, ascending.
    pub leaf_vertices: Vec<u32>,
}

impl LeafyTree {
    pub fn leaves(&self) -> usize {
        self.leaf_vertices.len()
    }
}

/// Spanning tree of depth ≤ 2 rooted at `x` with few internal vertices.
///
/// Requires `deg(v, N(x)) ≥ alpha·n` for every vertex `v` (checked; the first
/// offender is reported). The greedy loop repeatedly picks the neighbor of
/// `x` dominating the most still-uncovered vertices (ties toward the lowest
/// index); each pick becomes internal, everything else stays a leaf, giving
/// at least `n − (2/alpha)·ln n` leaves whenever `n` is large enough for the
/// bound to bite.
pub fn leafy_spanning_tree(
    g: &Graph,
    x: usize,
    alpha: f64,
) -> Result<LeafyTree, PartitionerError> {
    let n = g.n();
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(PartitionerError::InvalidParameter {
            what: format!("alpha = {alpha} must lie in (0, 1]"),
        });
    }
    if x >= n {
        return Err(PartitionerError::InvalidParameter {
            what: format!("root {x} out of range for {n} vertices"),
        });
    }
    let nx = g.neighbor_set(x);
    let required = alpha * n as f64;
    for v in 0..n {
        let d = g.degree_in(v, &nx);
        if (d as f64) < required {
            return Err(PartitionerError::HypothesisViolated {
                witness: v as u32,
                actual: d,
                required,
            });
        }
    }
    leafy_tree_rooted(g, x).map_err(|stuck| PartitionerError::HypothesisViolated {
        witness: stuck,
        actual: 0,
        required,
    })
}

/// Greedy dominating loop shared with the min-degree partitioner; the caller
/// is responsible for the degree hypothesis. Errs with a stuck vertex if some
/// vertex outside `{x} ∪ N(x)` has no neighbor left in the shrinking
/// candidate set (impossible once the hypothesis holds with `alpha·n ≥ 1`).
fn leafy_tree_rooted(g: &Graph, x: usize) -> Result<LeafyTree, u32> {
    let n = g.n();
    let nx = g.neighbor_set(x);
    let mut edges: Vec<(u32, u32)> = nx.iter().map(|y| (x as u32, y as u32)).collect();
    let mut candidates = nx.clone();
    let mut uncovered = VertexSet::full(n);
    uncovered.remove(x);
    uncovered.subtract(&nx);
    while !uncovered.is_empty() {
        let mut best: Option<(usize, usize)> = None; // (gain, vertex)
        for y in candidates.iter() {
            let gain = g.degree_in(y, &uncovered);
            if gain > 0 && best.is_none_or(|(bg, _)| gain > bg) {
                best = Some((gain, y));
            }
        }
        let Some((_, y)) = best else {
            return Err(uncovered.first().expect("nonempty") as u32);
        };
        let reach = g.neighbor_set(y);
        for z in uncovered.iter() {
            if reach.contains(z) {
                edges.push((y as u32, z as u32));
            }
        }
        uncovered.subtract(&reach);
        candidates.remove(y);
    }
    let mut degree = vec![0usize; n];
    for &(a, b) in &edges {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    let leaf_vertices: Vec<u32> = (0..n as u32)
        .filter(|&v| degree[v as usize] == 1)
        .collect();
    Ok(LeafyTree {
        root: x as u32,
        tree_edges: edges,
        leaf_vertices,
    })
}

/// Absorbing tree partition under a `(1−eps)n` minimum-degree hypothesis.
///
/// `alpha = 1/(e·r!) − eps` must be positive; `n` must reach the instance
/// size threshold `max{(12/α²)·ln(6/α²), (4r/α)·ln(2r/α)}` unless `force` is
/// set. Returns either one spanning tree with every non-internal vertex a
/// leaf (single-color case) or `k ∈ [2, r]` trees of distinct colors with a
/// common leaf set of `⌈alpha·n/2⌉` vertices. All four
/// [`AbsorbingTreePartition`] invariants are re-verified before returning.
pub fn mindeg_absorbing_partition(
    cg: &ColoredGraph,
    eps: f64,
    force: bool,
) -> Result<AbsorbingTreePartition, PartitionerError> {
    let n = cg.n();
    let r = cg.r();
    if n == 0 {
        return Err(PartitionerError::InvalidParameter {
            what: "graph has no vertices".into(),
        });
    }
    let r_factorial: f64 = (1..=r).map(|i| i as f64).product();
    let eps_cap = 1.0 / (std::f64::consts::E * r_factorial);
    if !(eps > 0.0 && eps < eps_cap) {
        return Err(PartitionerError::InvalidParameter {
            what: format!("eps = {eps} must lie in (0, {eps_cap:.6}) for r = {r}"),
        });
    }
    let alpha = eps_cap - eps;
    let nf = n as f64;
    let a2 = alpha * alpha;
    let n_threshold = (12.0 / a2 * (6.0 / a2).ln())
        .max(4.0 * r as f64 / alpha * (2.0 * r as f64 / alpha).ln());
    if !force && nf + 1e-9 < n_threshold {
        return Err(PartitionerError::BelowSizeThreshold {
            n,
            required: n_threshold,
        });
    }
    let delta = cg.graph().min_degree();
    if (delta as f64) + 1e-9 < (1.0 - eps) * nf {
        return Err(PartitionerError::HypothesisViolated {
            witness: min_degree_vertex(cg),
            actual: delta,
            required: (1.0 - eps) * nf,
        });
    }

    let alpha_n = alpha * nf;
    let x1 = 0usize;
    let (c1, y1) = largest_neighborhood_at(cg, x1)
        .expect("positive minimum degree leaves no isolated vertex");

    // Single-color branch: every vertex outside Y_1 keeps alpha·n neighbors
    // of the first color inside Y_1, so that color class alone spans.
    let single_color_violator = (0..n).find(|&v| {
        !y1.contains(v) && (cg.color_degree_in(v, c1, &y1) as f64) < alpha_n
    });
    if single_color_violator.is_none() {
        let g1 = cg.color_class_graph(c1);
        let tree = leafy_tree_rooted(&g1, x1).map_err(|_| PartitionerError::StepFailed {
            state: StepOneState {
                centers: vec![x1 as u32],
                sets: vec![y1.clone()],
                colors: vec![c1],
            },
        })?;
        let block = TreeBlock {
            color: c1,
            vertices: (0..n as u32).collect(),
            tree_edges: tree.tree_edges,
        };
        let atp = AbsorbingTreePartition {
            trees: vec![block],
            leaf_set: tree.leaf_vertices,
            covered: n,
        };
        if let Err(msg) = verify_atp(cg, &atp) {
            panic!("single-tree result must satisfy the invariants: {msg}");
        }
        return Ok(atp);
    }

    // Nested-neighborhood stage.
    let mut centers = vec![x1 as u32];
    let mut sets = vec![y1];
    let mut colors = vec![c1];
    let mut used = vec![false; r + 1];
    used[c1 as usize] = true;
    let snapshot = |centers: &Vec<u32>, sets: &Vec<VertexSet>, colors: &Vec<u8>| StepOneState {
        centers: centers.clone(),
        sets: sets.clone(),
        colors: colors.clone(),
    };

    let w = single_color_violator.expect("single-color branch handled above");
    if !extend_nested(cg, w, &mut centers, &mut sets, &mut colors, &mut used) {
        return Err(PartitionerError::StepFailed {
            state: snapshot(&centers, &sets, &colors),
        });
    }
    let k = loop {
        let i = centers.len();
        if i == r {
            break i;
        }
        let innermost = sets.last().expect("nonempty");
        let violator = (0..n).find(|&v| {
            !innermost.contains(v)
                && !centers.contains(&(v as u32))
                && (used_colored_degree(cg, v, innermost, &used) as f64) < alpha_n
        });
        match violator {
            None => break i,
            Some(v) => {
                if !extend_nested(cg, v, &mut centers, &mut sets, &mut colors, &mut used) {
                    return Err(PartitionerError::StepFailed {
                        state: snapshot(&centers, &sets, &colors),
                    });
                }
            }
        }
    };
    let state = snapshot(&centers, &sets, &colors);

    // Absorbing stage: set aside ⌈alpha·n/2⌉ common leaves, split the rest of
    // Y among the k colors, and hang every outside vertex off its slot.
    let y = sets.last().expect("nonempty").clone();
    let leaf_target = (alpha_n / 2.0).ceil().max(1.0) as usize;
    if y.count() < leaf_target {
        return Err(PartitionerError::StepFailed { state });
    }
    let leaf_set: Vec<u32> = y.iter().take(leaf_target).map(|v| v as u32).collect();
    let lset = VertexSet::from_slice(n, &leaf_set);
    let mut y_prime = y.clone();
    y_prime.subtract(&lset);
    let mut z = VertexSet::full(n);
    for &c in &centers {
        z.remove(c as usize);
    }
    z.subtract(&y);
    let lp = leaf_partition_with_colors(cg, &y_prime, &z, &colors, LeafMode::Derandomized)
        .map_err(|e| match e {
            PartitionerError::HypothesisViolated { .. } | PartitionerError::RetriesExhausted { .. } => {
                PartitionerError::StepFailed {
                    state: state.clone(),
                }
            }
            other => other,
        })?;

    let mut trees = Vec::with_capacity(k);
    let mut z_members: Vec<Vec<(u32, u32)>> = vec![Vec::new(); k];
    for a in &lp.attachments {
        z_members[a.slot].push((a.vertex, a.anchor));
    }
    for j in 0..k {
        let mut vertices: Vec<u32> = vec![centers[j]];
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for yv in lp.parts[j].iter() {
            vertices.push(yv as u32);
            edges.push((centers[j], yv as u32));
        }
        for &l in &leaf_set {
            vertices.push(l);
            edges.push((centers[j], l));
        }
        for &(zv, anchor) in &z_members[j] {
            vertices.push(zv);
            edges.push((zv, anchor));
        }
        vertices.sort_unstable();
        trees.push(TreeBlock {
            color: colors[j],
            vertices,
            tree_edges: edges,
        });
    }
    let atp = AbsorbingTreePartition {
        trees,
        leaf_set,
        covered: n,
    };
    if let Err(msg) = verify_atp(cg, &atp) {
        panic!("absorbing partition must satisfy the invariants: {msg}");
    }
    Ok(atp)
}

/// Turns an absorbing tree partition into an exact vertex partition by
/// handing the common leaves out round-robin (ascending leaves cycle through
/// the trees). The input must be valid against `cg` and span all vertices;
/// the resulting certificate is re-verified before returning.
pub fn complete_partition(
    cg: &ColoredGraph,
    atp: &AbsorbingTreePartition,
) -> PartitionCertificate {
    if let Err(msg) = verify_atp(cg, atp) {
        panic!("complete_partition requires a valid absorbing tree partition: {msg}");
    }
    assert_eq!(
        atp.covered,
        cg.n(),
        "complete_partition requires a spanning absorbing tree partition"
    );
    let n = cg.n();
    let k = atp.trees.len();
    let mut sorted_leaves = atp.leaf_set.clone();
    sorted_leaves.sort_unstable();
    let lset = VertexSet::from_slice(n, &sorted_leaves);
    let mut keep: Vec<VertexSet> = vec![VertexSet::new(n); k];
    for (j, &l) in sorted_leaves.iter().enumerate() {
        keep[j % k].insert(l as usize);
    }
    let blocks: Vec<TreeBlock> = atp
        .trees
        .iter()
        .enumerate()
        .map(|(ti, tree)| {
            let stays =
                |v: u32| !lset.contains(v as usize) || keep[ti].contains(v as usize);
            TreeBlock {
                color: tree.color,
                vertices: tree.vertices.iter().copied().filter(|&v| stays(v)).collect(),
                tree_edges: tree
                    .tree_edges
                    .iter()
                    .copied()
                    .filter(|&(a, b)| stays(a) && stays(b))
                    .collect(),
            }
        })
        .collect();
    let certificate = PartitionCertificate { blocks };
    assert!(
        verify_partition(cg, &certificate).is_ok(),
        "round-robin leaf assignment must yield a valid partition"
    );
    certificate
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::build_colored_graph;

    fn complete_colored(n: usize, r: usize, color: impl Fn(usize, usize) -> usize) -> ColoredGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, color(u, v)));
            }
        }
        build_colored_graph(n, r, &edges).unwrap()
    }

    #[test]
    fn complete_graph_yields_a_star() {
        let g = Graph::complete(6);
        let t = leafy_spanning_tree(&g, 0, 0.5).unwrap();
        assert_eq!(t.root, 0);
        assert_eq!(t.leaves(), 5);
        assert_eq!(t.tree_edges.len(), 5);
    }

    #[test]
    fn cycle_violates_the_degree_hypothesis() {
        let g = Graph::cycle(6);
        let err = leafy_spanning_tree(&g, 0, 1.0 / 3.0).unwrap_err();
        match err {
            PartitionerError::HypothesisViolated { witness, actual, .. } => {
                assert_eq!(witness, 1);
                assert_eq!(actual, 0);
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn greedy_picks_high_coverage_internal_vertices() {
        // Root 0 sees the clique {1,2,3,4}; 5 hangs off {1,2}, 6 off {3,4}.
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 4),
            (1, 5),
            (2, 5),
            (3, 6),
            (4, 6),
        ];
        let g = Graph::new(7, &edges).unwrap();
        let t = leafy_spanning_tree(&g, 0, 2.0 / 7.0).unwrap();
        assert_eq!(t.tree_edges.len(), 6);
        assert_eq!(t.leaf_vertices, vec![2, 4, 5, 6]);
    }

    #[test]
    fn monochromatic_complete_graph_gives_single_tree() {
        let cg = complete_colored(12, 1, |_, _| 1);
        let atp = mindeg_absorbing_partition(&cg, 0.1, true).unwrap();
        assert_eq!(atp.k(), 1);
        assert_eq!(atp.covered, 12);
        assert_eq!(atp.l(), 11);
        let cert = complete_partition(&cg, &atp);
        assert_eq!(cert.blocks.len(), 1);
        assert_eq!(cert.blocks[0].vertices.len(), 12);
    }

    /// Two-color K_6 forcing the two-tree branch: all color-1 edges at vertex
    /// 0 go to {1,2,3}; vertex 4 sees Y_1 only in color 2.
    fn forced_two_tree_instance() -> ColoredGraph {
        build_colored_graph(
            6,
            2,
            &[
                (0, 1, 1),
                (0, 2, 1),
                (0, 3, 1),
                (0, 4, 2),
                (0, 5, 2),
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, 1),
                (1, 4, 2),
                (2, 4, 2),
                (3, 4, 2),
                (4, 5, 1),
                (1, 5, 2),
                (2, 5, 1),
                (3, 5, 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_tree_branch_produces_common_leaves() {
        let cg = forced_two_tree_instance();
        let atp = mindeg_absorbing_partition(&cg, 0.17, true).unwrap();
        assert_eq!(atp.k(), 2);
        assert_eq!(atp.leaf_set, vec![1]);
        assert_eq!(atp.covered, 6);
        let colors: Vec<u8> = atp.trees.iter().map(|t| t.color).collect();
        assert_eq!(colors, vec![1, 2]);
        let cert = complete_partition(&cg, &atp);
        assert_eq!(cert.blocks.len(), 2);
        // The lone shared leaf lands in the first tree.
        assert!(cert.blocks[0].vertices.contains(&1));
        assert!(!cert.blocks[1].vertices.contains(&1));
    }

    #[test]
    fn low_degree_is_rejected_with_a_witness() {
        // K_6 minus the edge (0,5): vertices 0 and 5 drop to degree 4 < 4.98.
        let mut edges = Vec::new();
        for u in 0..6usize {
            for v in u + 1..6 {
                if (u, v) != (0, 5) {
                    edges.push((u, v, 1 + (u + v) % 2));
                }
            }
        }
        let cg = build_colored_graph(6, 2, &edges).unwrap();
        let err = mindeg_absorbing_partition(&cg, 0.17, true).unwrap_err();
        match err {
            PartitionerError::HypothesisViolated { witness, actual, .. } => {
                assert_eq!(witness, 0);
                assert_eq!(actual, 4);
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn parameter_gates_fire() {
        let cg = forced_two_tree_instance();
        assert!(matches!(
            mindeg_absorbing_partition(&cg, 0.5, true),
            Err(PartitionerError::InvalidParameter { .. })
        ));
        assert!(matches!(
            mindeg_absorbing_partition(&cg, 0.17, false),
            Err(PartitionerError::BelowSizeThreshold { .. })
        ));
    }

    #[test]
    fn round_robin_splits_a_handmade_partition() {
        let cg = build_colored_graph(
            5,
            2,
            &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (2, 4, 2), (3, 4, 2)],
        )
        .unwrap();
        let atp = AbsorbingTreePartition {
            trees: vec![
                TreeBlock {
                    color: 1,
                    vertices: vec![0, 1, 2, 3],
                    tree_edges: vec![(0, 1), (0, 2), (0, 3)],
                },
                TreeBlock {
                    color: 2,
                    vertices: vec![2, 3, 4],
                    tree_edges: vec![(4, 2), (4, 3)],
                },
            ],
            leaf_set: vec![2, 3],
            covered: 5,
        };
        verify_atp(&cg, &atp).unwrap();
        let cert = complete_partition(&cg, &atp);
        assert_eq!(cert.blocks[0].vertices, vec![0, 1, 2]);
        assert_eq!(cert.blocks[1].vertices, vec![3, 4]);
    }
}
