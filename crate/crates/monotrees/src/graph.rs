//! Simple undirected graphs with a representation chosen per instance.
//!
//! Dense instances store one bit-set row per vertex; large sparse instances
//! store sorted neighbor lists. Both representations sit behind the same
//! query surface, so algorithms never branch on the storage choice.

use crate::bitset::VertexSet;
use thiserror::Error;

/// Vertex count at or below which adjacency is stored as bit-set rows.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("loop edge at vertex {v}")]
    LoopEdge { v: usize },
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("common neighborhood of the empty set is undefined")]
    EmptyQuery,
    #[error("graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone)]
enum Repr {
    Dense(Vec<VertexSet>),
    Sparse(Vec<Vec<u32>>),
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    m: usize,
    repr: Repr,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects loops, duplicates (in either
    /// orientation), and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        Self::new_with_dense_limit(n, edges, DENSE_LIMIT)
    }

    pub(crate) fn new_with_dense_limit(
        n: usize,
        edges: &[(usize, usize)],
        dense_limit: usize,
    ) -> Result<Graph, GraphError> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { v: a, n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { v: b, n });
            }
            if a == b {
                return Err(GraphError::LoopEdge { v: a });
            }
            norm.push((a.min(b) as u32, a.max(b) as u32));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge {
                    u: w[0].0 as usize,
                    v: w[0].1 as usize,
                });
            }
        }
        Ok(Self::from_sorted_edges(n, &norm, dense_limit))
    }

    /// Builds from normalized (`u < v`), sorted, duplicate-free edges.
    pub(crate) fn from_sorted_edges(n: usize, edges: &[(u32, u32)], dense_limit: usize) -> Graph {
        let m = edges.len();
        let repr = if n <= dense_limit {
            let mut rows = vec![VertexSet::new(n); n];
            for &(u, v) in edges {
                rows[u as usize].insert(v as usize);
                rows[v as usize].insert(u as usize);
            }
            Repr::Dense(rows)
        } else {
            let mut rows = vec![Vec::new(); n];
            for &(u, v) in edges {
                rows[u as usize].push(v);
                rows[v as usize].push(u);
            }
            for row in &mut rows {
                row.sort_unstable();
            }
            Repr::Sparse(rows)
        };
        Graph { n, m, repr }
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u as u32, v as u32));
            }
        }
        Self::from_sorted_edges(n, &edges, DENSE_LIMIT)
    }

    /// Cycle C_n (`n >= 3`).
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|u| (u, u + 1)).collect();
        edges.insert(0, (0, n as u32 - 1));
        edges.sort_unstable();
        Self::from_sorted_edges(n, &edges, DENSE_LIMIT)
    }

    /// Star K_{1,n-1} centered at vertex 0.
    pub fn star(n: usize) -> Graph {
        assert!(n >= 1);
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (0, v)).collect();
        Self::from_sorted_edges(n, &edges, DENSE_LIMIT)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        match &self.repr {
            Repr::Dense(rows) => rows[v].count(),
            Repr::Sparse(rows) => rows[v].len(),
        }
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        match &self.repr {
            Repr::Dense(rows) => rows[u].contains(v),
            Repr::Sparse(rows) => rows[u].binary_search(&(v as u32)).is_ok(),
        }
    }

    /// Ascending iterator over the neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> Box<dyn Iterator<Item = usize> + '_> {
        match &self.repr {
            Repr::Dense(rows) => Box::new(rows[v].iter()),
            Repr::Sparse(rows) => Box::new(rows[v].iter().map(|&u| u as usize)),
        }
    }

    /// Neighbor set of `v` as a bit set (copied out of dense rows, built for
    /// sparse rows).
    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        match &self.repr {
            Repr::Dense(rows) => rows[v].clone(),
            Repr::Sparse(rows) => {
                let mut s = VertexSet::new(self.n);
                for &u in &rows[v] {
                    s.insert(u as usize);
                }
                s
            }
        }
    }

    /// Number of neighbors of `v` inside `set`.
    pub fn degree_in(&self, v: usize, set: &VertexSet) -> usize {
        match &self.repr {
            Repr::Dense(rows) => rows[v].intersection_count(set),
            Repr::Sparse(rows) => rows[v]
                .iter()
                .filter(|&&u| set.contains(u as usize))
                .count(),
        }
    }

    /// Edges as normalized pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u as u32, v as u32));
                }
            }
        }
        out
    }

    /// Intersection of the neighborhoods of all vertices in `s`.
    pub fn common_neighborhood(&self, s: &[u32]) -> Result<VertexSet, GraphError> {
        let Some((&first, rest)) = s.split_first() else {
            return Err(GraphError::EmptyQuery);
        };
        if first as usize >= self.n {
            return Err(GraphError::VertexOutOfRange {
                v: first as usize,
                n: self.n,
            });
        }
        let mut acc = self.neighbor_set(first as usize);
        for &v in rest {
            if v as usize >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    v: v as usize,
                    n: self.n,
                });
            }
            match &self.repr {
                Repr::Dense(rows) => acc.intersect_with(&rows[v as usize]),
                Repr::Sparse(_) => acc.intersect_with(&self.neighbor_set(v as usize)),
            }
            if acc.is_empty() {
                break;
            }
        }
        Ok(acc)
    }

    /// True iff the induced subgraph on `set` is connected. The empty set
    /// counts as disconnected, a single vertex as connected.
    pub fn connected_within(&self, set: &VertexSet) -> bool {
        let Some(start) = set.first() else {
            return false;
        };
        let mut seen = VertexSet::new(self.n);
        seen.insert(start);
        let mut frontier = vec![start];
        let mut count = 1;
        let mut fresh = VertexSet::new(self.n);
        while let Some(v) = frontier.pop() {
            match &self.repr {
                // Word-parallel frontier expansion; each vertex is
                // discovered exactly once, so the row work dominates.
                Repr::Dense(rows) => {
                    fresh.clone_from(&rows[v]);
                    fresh.intersect_with(set);
                    fresh.subtract(&seen);
                    for u in fresh.iter() {
                        count += 1;
                        frontier.push(u);
                    }
                    seen.union_with(&fresh);
                }
                Repr::Sparse(rows) => {
                    for &u in &rows[v] {
                        let u = u as usize;
                        if set.contains(u) && seen.insert(u) {
                            count += 1;
                            frontier.push(u);
                        }
                    }
                }
            }
        }
        count == set.count()
    }
}

/// Independence number with an exact cutoff: branch-and-bound when
/// `n <= exact_limit`, otherwise a min-degree greedy lower bound. The flag
/// reports whether the value is exact.
pub fn independence_number(g: &Graph, exact_limit: usize) -> (usize, bool) {
    if g.n() <= exact_limit {
        let mut best = 0;
        let cand = VertexSet::full(g.n());
        mis_branch(g, cand, 0, &mut best);
        (best, true)
    } else {
        (greedy_independent_set(g).len(), false)
    }
}

fn mis_branch(g: &Graph, cand: VertexSet, cur: usize, best: &mut usize) {
    if cur + cand.count() <= *best {
        return;
    }
    let Some(v) = cand.first() else {
        *best = (*best).max(cur);
        return;
    };
    // Include v.
    let mut with = cand.clone();
    with.remove(v);
    with.subtract(&g.neighbor_set(v));
    mis_branch(g, with, cur + 1, best);
    // Exclude v.
    let mut without = cand;
    without.remove(v);
    mis_branch(g, without, cur, best);
}

/// Greedy maximal independent set: repeatedly take the minimum-degree
/// remaining vertex (lowest index on ties) and discard its neighbors.
pub fn greedy_independent_set(g: &Graph) -> Vec<u32> {
    let mut alive = VertexSet::full(g.n());
    let mut out = Vec::new();
    while !alive.is_empty() {
        let v = alive
            .iter()
            .min_by_key(|&v| (g.degree_in(v, &alive), v))
            .expect("alive set is non-empty");
        out.push(v as u32);
        alive.remove(v);
        alive.subtract(&g.neighbor_set(v));
    }
    out.sort_unstable();
    out
}
