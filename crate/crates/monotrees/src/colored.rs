//! Edge-colored graphs and their monochromatic component structure.
//!
//! A coloring assigns every edge one color from `1..=r`. Most algorithms in
//! this crate operate on the per-color component decomposition computed here.

use crate::bitset::VertexSet;
use crate::dsu::Dsu;
use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge ({u}, {v}) has color {c}, outside 1..={r}")]
    ColorOutOfRange { u: usize, v: usize, c: usize, r: usize },
    #[error("r = 0 requires an edgeless graph, but edges were given")]
    NoColorsForEdges,
}

/// A simple graph together with a total edge coloring in `1..=r`.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    graph: Graph,
    r: usize,
    /// Per-vertex sorted list of `(neighbor, color)` pairs.
    adj: Vec<Vec<(u32, u8)>>,
}

/// Builds a colored graph from `(u, v, color)` triples, validating the
/// underlying graph and every color.
pub fn build_colored_graph(
    n: usize,
    r: usize,
    edges: &[(usize, usize, usize)],
) -> Result<ColoredGraph, ColoringError> {
    let plain: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    let graph = Graph::new(n, &plain)?;
    if r == 0 && !edges.is_empty() {
        return Err(ColoringError::NoColorsForEdges);
    }
    for &(u, v, c) in edges {
        if c == 0 || c > r {
            return Err(ColoringError::ColorOutOfRange { u, v, c, r });
        }
    }
    let mut adj: Vec<Vec<(u32, u8)>> = vec![Vec::new(); n];
    for &(u, v, c) in edges {
        adj[u].push((v as u32, c as u8));
        adj[v].push((u as u32, c as u8));
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    Ok(ColoredGraph { graph, r, adj })
}

impl ColoredGraph {
    /// Attaches colors to an already-validated graph. `colors` must run
    /// parallel to `graph.edges()` (ascending normalized order); every color
    /// must lie in `1..=r`. Panics on mismatch — callers own the invariant.
    pub fn attach_colors(graph: Graph, r: usize, colors: &[u8]) -> ColoredGraph {
        let edges = graph.edges();
        assert_eq!(edges.len(), colors.len(), "one color per edge");
        assert!(
            colors.iter().all(|&c| c >= 1 && (c as usize) <= r),
            "colors must lie in 1..=r"
        );
        let mut adj: Vec<Vec<(u32, u8)>> = vec![Vec::new(); graph.n()];
        for (&(u, v), &c) in edges.iter().zip(colors) {
            adj[u as usize].push((v, c));
            adj[v as usize].push((u, c));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        ColoredGraph { graph, r, adj }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Color of edge `{u, v}`, or `None` when the edge is absent.
    pub fn color_of(&self, u: usize, v: usize) -> Option<u8> {
        if u >= self.n() || v >= self.n() {
            return None;
        }
        let row = &self.adj[u];
        row.binary_search_by_key(&(v as u32), |&(w, _)| w)
            .ok()
            .map(|i| row[i].1)
    }

    /// Ascending `(neighbor, color)` pairs at `v`.
    pub fn colored_neighbors(&self, v: usize) -> &[(u32, u8)] {
        &self.adj[v]
    }

    /// Neighbors of `v` joined by edges of color `c`, ascending.
    pub fn neighbors_with_color(&self, v: usize, c: u8) -> impl Iterator<Item = usize> + '_ {
        self.adj[v]
            .iter()
            .filter(move |&&(_, ec)| ec == c)
            .map(|&(u, _)| u as usize)
    }

    /// Bit set of `c`-colored neighbors of `v`.
    pub fn color_neighbor_set(&self, v: usize, c: u8) -> VertexSet {
        let mut s = VertexSet::new(self.n());
        for u in self.neighbors_with_color(v, c) {
            s.insert(u);
        }
        s
    }

    /// Number of `c`-colored neighbors of `v` inside `set`.
    pub fn color_degree_in(&self, v: usize, c: u8, set: &VertexSet) -> usize {
        self.neighbors_with_color(v, c)
            .filter(|&u| set.contains(u))
            .count()
    }

    /// Subgraph on all vertices keeping only edges of color `c`.
    pub fn color_class_graph(&self, c: u8) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n() {
            for &(v, ec) in &self.adj[u] {
                if ec == c && v as usize > u {
                    edges.push((u as u32, v));
                }
            }
        }
        Graph::from_sorted_edges(self.n(), &edges, crate::graph::DENSE_LIMIT)
    }

    /// Edges as `(u, v, color)` with `u < v`, ascending by `(u, v)`.
    pub fn colored_edges(&self) -> Vec<(u32, u32, u8)> {
        let mut out = Vec::with_capacity(self.graph.m());
        for u in 0..self.n() {
            for &(v, c) in &self.adj[u] {
                if v as usize > u {
                    out.push((u as u32, v, c));
                }
            }
        }
        out
    }

    /// True iff the induced subgraph on `set` is connected using only edges
    /// of color `c`. Empty sets are disconnected; singletons connected.
    pub fn connected_within_color(&self, set: &VertexSet, c: u8) -> bool {
        let Some(start) = set.first() else {
            return false;
        };
        let mut seen = VertexSet::new(self.n());
        seen.insert(start);
        let mut frontier = vec![start];
        let mut count = 1;
        while let Some(v) = frontier.pop() {
            for u in self.neighbors_with_color(v, c) {
                if set.contains(u) && seen.insert(u) {
                    count += 1;
                    frontier.push(u);
                }
            }
        }
        count == set.count()
    }
}

/// One monochromatic component: a maximal vertex set connected by edges of a
/// single color. Isolated vertices do not form components of any color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoComponent {
    pub color: u8,
    pub vertices: VertexSet,
}

impl MonoComponent {
    pub fn size(&self) -> usize {
        self.vertices.count()
    }
}

/// All monochromatic components over all colors, each spanning at least one
/// edge, sorted by `(color, minimum vertex)`.
pub fn mono_components(cg: &ColoredGraph) -> Vec<MonoComponent> {
    let n = cg.n();
    let mut out = Vec::new();
    for c in 1..=cg.r() as u8 {
        let mut dsu = Dsu::new(n);
        let mut touched = VertexSet::new(n);
        for u in 0..n {
            for v in cg.neighbors_with_color(u, c) {
                if v > u {
                    dsu.union(u, v);
                    touched.insert(u);
                    touched.insert(v);
                }
            }
        }
        let mut groups: Vec<(usize, VertexSet)> = Vec::new();
        let mut root_slot = vec![usize::MAX; n];
        for v in touched.iter() {
            let root = dsu.find(v);
            if root_slot[root] == usize::MAX {
                root_slot[root] = groups.len();
                groups.push((v, VertexSet::new(n)));
            }
            groups[root_slot[root]].1.insert(v);
        }
        groups.sort_by_key(|&(min_v, _)| min_v);
        out.extend(groups.into_iter().map(|(_, vertices)| MonoComponent {
            color: c,
            vertices,
        }));
    }
    out
}

/// For each color `c` (index `c - 1`), maps each vertex to the id of its
/// `c`-component, or `None` when the vertex has no `c`-edges. Ids are local
/// to the color and ordered by component minimum vertex.
pub fn component_ids(cg: &ColoredGraph) -> Vec<Vec<Option<u32>>> {
    let n = cg.n();
    let mut out = Vec::with_capacity(cg.r());
    for c in 1..=cg.r() as u8 {
        let mut dsu = Dsu::new(n);
        let mut touched = vec![false; n];
        for u in 0..n {
            for v in cg.neighbors_with_color(u, c) {
                if v > u {
                    dsu.union(u, v);
                    touched[u] = true;
                    touched[v] = true;
                }
            }
        }
        let mut next = 0u32;
        let mut root_id = vec![u32::MAX; n];
        let mut ids = vec![None; n];
        for v in 0..n {
            if !touched[v] {
                continue;
            }
            let root = dsu.find(v);
            if root_id[root] == u32::MAX {
                root_id[root] = next;
                next += 1;
            }
            ids[v] = Some(root_id[root]);
        }
        out.push(ids);
    }
    out
}

/// The largest monochromatic component; ties prefer the lowest color, then
/// the lowest minimum vertex. Errors when the graph has no edges.
pub fn largest_mono_component(cg: &ColoredGraph) -> Result<MonoComponent, GraphError> {
    mono_components(cg)
        .into_iter()
        .max_by(|a, b| {
            a.size()
                .cmp(&b.size())
                .then_with(|| b.color.cmp(&a.color))
                .then_with(|| b.vertices.first().cmp(&a.vertices.first()))
        })
        .ok_or(GraphError::NoEdges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_color_triangle_plus_pendant() -> ColoredGraph {
        // Triangle 0-1-2 in color 1, pendant edge 2-3 in color 2.
        build_colored_graph(4, 2, &[(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 2)]).unwrap()
    }

    #[test]
    fn validates_colors() {
        assert!(matches!(
            build_colored_graph(3, 2, &[(0, 1, 3)]),
            Err(ColoringError::ColorOutOfRange { u: 0, v: 1, c: 3, r: 2 })
        ));
        assert!(matches!(
            build_colored_graph(3, 2, &[(0, 1, 0)]),
            Err(ColoringError::ColorOutOfRange { .. })
        ));
        assert!(matches!(
            build_colored_graph(3, 0, &[(0, 1, 1)]),
            Err(ColoringError::NoColorsForEdges)
        ));
        assert!(build_colored_graph(3, 0, &[]).is_ok());
        assert!(matches!(
            build_colored_graph(3, 2, &[(0, 1, 1), (1, 0, 2)]),
            Err(ColoringError::Graph(GraphError::DuplicateEdge { u: 0, v: 1 }))
        ));
    }

    #[test]
    fn color_queries() {
        let cg = two_color_triangle_plus_pendant();
        assert_eq!(cg.color_of(0, 1), Some(1));
        assert_eq!(cg.color_of(3, 2), Some(2));
        assert_eq!(cg.color_of(0, 3), None);
        assert_eq!(cg.neighbors_with_color(2, 1).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(cg.neighbors_with_color(2, 2).collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn components_sorted_and_complete() {
        let cg = two_color_triangle_plus_pendant();
        let comps = mono_components(&cg);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].color, 1);
        assert_eq!(comps[0].vertices.to_vec(), vec![0, 1, 2]);
        assert_eq!(comps[1].color, 2);
        assert_eq!(comps[1].vertices.to_vec(), vec![2, 3]);

        let ids = component_ids(&cg);
        assert_eq!(ids[0][0], Some(0));
        assert_eq!(ids[0][3], None);
        assert_eq!(ids[1][2], Some(0));
        assert_eq!(ids[1][0], None);
    }

    #[test]
    fn largest_component_tie_breaks_low_color() {
        // Color 1 path 0-1, color 2 path 2-3: equal sizes, color 1 wins.
        let cg = build_colored_graph(4, 2, &[(0, 1, 1), (2, 3, 2)]).unwrap();
        let big = largest_mono_component(&cg).unwrap();
        assert_eq!(big.color, 1);
        assert_eq!(big.vertices.to_vec(), vec![0, 1]);

        let empty = build_colored_graph(3, 2, &[]).unwrap();
        assert!(matches!(
            largest_mono_component(&empty),
            Err(GraphError::NoEdges)
        ));
    }

    #[test]
    fn attach_colors_roundtrip() {
        let g = Graph::complete(4);
        let colors = vec![1u8, 2, 1, 2, 1, 2];
        let cg = ColoredGraph::attach_colors(g, 2, &colors);
        let edges = cg.colored_edges();
        assert_eq!(edges.len(), 6);
        let recovered: Vec<u8> = edges.iter().map(|&(_, _, c)| c).collect();
        assert_eq!(recovered, colors);
    }
}
