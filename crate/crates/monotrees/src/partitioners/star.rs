//! Double stars across a bipartition, and the tree-or-double-star dichotomy
//! for graphs of very high minimum degree.

use crate::bitset::VertexSet;
use crate::certificate::TreeBlock;
use crate::colored::{largest_mono_component, ColoredGraph};
use crate::graph::Graph;

use super::{color_spanning_tree, min_degree_vertex, PartitionerError};

/// A double star: two adjacent centers plus their neighbors on the opposite
/// sides of a bipartition.
#[derive(Debug, Clone)]
pub struct DoubleStar {
    pub center_x: u32,
    pub center_y: u32,
    /// All vertices of the star, ascending.
    pub vertices: Vec<u32>,
    pub tree_edges: Vec<(u32, u32)>,
}

impl DoubleStar {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }
}

/// Result of the high-min-degree dichotomy: either one monochromatic tree on
/// nearly all vertices, or a monochromatic double star across the gap.
#[derive(Debug, Clone)]
pub enum LargeMonoStructure {
    Tree(TreeBlock),
    Star {
        block: TreeBlock,
        star: DoubleStar,
        /// Set when the star's order falls short of `(1−2eps)n/(r−1)`, the
        /// size the averaging argument promises.
        critical: bool,
    },
}

/// Largest double star across the bipartition `(x_side, y_side)` of `g`.
///
/// Scans every crossing edge `(u, v)` and keeps the one maximizing
/// `deg(u, y_side) + deg(v, x_side)` (ties toward lexicographically smallest
/// `(u, v)` with `u` on the x-side). The returned star has exactly that many
/// vertices, which is at least `e(X,Y)·(|X|+|Y|)/(|X|·|Y|)` by averaging.
pub fn double_star(
    g: &Graph,
    x_side: &VertexSet,
    y_side: &VertexSet,
) -> Result<DoubleStar, PartitionerError> {
    let n = g.n();
    if x_side.universe() != n || y_side.universe() != n {
        return Err(PartitionerError::InvalidParameter {
            what: "side sets must live on the graph's vertex set".into(),
        });
    }
    if !x_side.is_disjoint(y_side) {
        return Err(PartitionerError::InvalidParameter {
            what: "bipartition sides must be disjoint".into(),
        });
    }
    let mut best: Option<(usize, usize, usize)> = None; // (score, u, v)
    for u in x_side.iter() {
        for v in g.neighbors(u) {
            if !y_side.contains(v) {
                continue;
            }
            let score = g.degree_in(u, y_side) + g.degree_in(v, x_side);
            if best.is_none_or(|(bs, bu, bv)| {
                score > bs || (score == bs && (u, v) < (bu, bv))
            }) {
                best = Some((score, u, v));
            }
        }
    }
    let Some((_, u, v)) = best else {
        return Err(PartitionerError::NoCrossingEdges);
    };
    let mut vertices: Vec<u32> = Vec::new();
    let mut tree_edges: Vec<(u32, u32)> = vec![(u as u32, v as u32)];
    for a in g.neighbors(u) {
        if y_side.contains(a) {
            vertices.push(a as u32);
            if a != v {
                tree_edges.push((u as u32, a as u32));
            }
        }
    }
    for b in g.neighbors(v) {
        if x_side.contains(b) {
            vertices.push(b as u32);
            if b != u {
                tree_edges.push((v as u32, b as u32));
            }
        }
    }
    vertices.sort_unstable();
    Ok(DoubleStar {
        center_x: u as u32,
        center_y: v as u32,
        vertices,
        tree_edges,
    })
}

/// Tree-or-double-star dichotomy under minimum degree `(1−eps)n`.
///
/// If the largest monochromatic component already spans `(1−eps)n` vertices,
/// returns a spanning tree of it. Otherwise takes `X` = that component,
/// `Y` = the rest, restricts to the majority color among crossing edges (the
/// component's own color never crosses, by maximality), and extracts a double
/// star there. The star is flagged critical when it misses the promised
/// `(1−2eps)n/(r−1)` order.
pub fn large_mono_structure(
    cg: &ColoredGraph,
    eps: f64,
) -> Result<LargeMonoStructure, PartitionerError> {
    let n = cg.n();
    let r = cg.r();
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(PartitionerError::InvalidParameter {
            what: format!("eps = {eps} must lie in (0, 1/2]"),
        });
    }
    let needed = (1.0 - eps) * n as f64;
    let delta = cg.graph().min_degree();
    if n == 0 || (delta as f64) + 1e-9 < needed {
        return Err(PartitionerError::HypothesisViolated {
            witness: if n == 0 { 0 } else { min_degree_vertex(cg) },
            actual: delta,
            required: needed,
        });
    }
    let comp = largest_mono_component(cg).expect("positive degree implies an edge");
    if comp.size() as f64 + 1e-9 >= needed {
        let tree_edges = color_spanning_tree(cg, &comp.vertices, comp.color);
        return Ok(LargeMonoStructure::Tree(TreeBlock {
            color: comp.color,
            vertices: comp.vertices.to_vec(),
            tree_edges,
        }));
    }
    let x_side = comp.vertices.clone();
    let mut y_side = x_side.clone();
    y_side.invert();
    // Majority color among crossing edges; ties toward the lowest color. The
    // component's color is absent from the cut, so r ≥ 2 here.
    let mut counts = vec![0usize; r + 1];
    for u in x_side.iter() {
        for &(nb, c) in cg.colored_neighbors(u) {
            if y_side.contains(nb as usize) {
                counts[c as usize] += 1;
            }
        }
    }
    let (&max_count, majority) = counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(c, cnt)| (cnt, c as u8))
        .max_by(|a, b| a.0.cmp(b.0).then(b.1.cmp(&a.1)))
        .expect("at least one color");
    if max_count == 0 {
        return Err(PartitionerError::NoCrossingEdges);
    }
    debug_assert_ne!(
        majority, comp.color,
        "a maximal component's color cannot cross its boundary"
    );
    let crossing: Vec<(usize, usize)> = cg
        .colored_edges()
        .iter()
        .filter(|&&(u, v, c)| {
            c == majority
                && (x_side.contains(u as usize) != x_side.contains(v as usize))
        })
        .map(|&(u, v, _)| (u as usize, v as usize))
        .collect();
    let cut = Graph::new(n, &crossing).expect("crossing edges form a simple graph");
    let star = double_star(&cut, &x_side, &y_side)?;
    let promised = (1.0 - 2.0 * eps) * n as f64 / (r as f64 - 1.0);
    let critical = (star.order() as f64) < promised - 1e-9;
    let block = TreeBlock {
        color: majority,
        vertices: star.vertices.clone(),
        tree_edges: star.tree_edges.clone(),
    };
    Ok(LargeMonoStructure::Star {
        block,
        star,
        critical,
    })
}
