//! Checkable certificates for tree partitions and component covers.
//!
//! Every solver that claims a partition or cover returns one of these
//! structures, and the verifiers below re-check the claim against the graph
//! from scratch — no trust in how the certificate was produced.

use crate::bitset::VertexSet;
use crate::colored::ColoredGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One block of a tree partition: a vertex set together with a spanning tree
/// whose edges all carry `color`. A single vertex with no edges is a valid
/// degenerate tree.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TreeBlock {
    pub color: u8,
    pub vertices: Vec<u32>,
    pub tree_edges: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub blocks: Vec<TreeBlock>,
}

/// One part of a cover: a vertex set lying inside a single component of
/// `color`. Parts may overlap each other.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoverPart {
    pub color: u8,
    pub vertices: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoverCertificate {
    pub parts: Vec<CoverPart>,
}

/// On-disk wrapper distinguishing the two certificate kinds.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertificateFile {
    Partition(PartitionCertificate),
    Cover(CoverCertificate),
}

/// First defect found while re-checking a certificate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("certificate has no blocks or parts")]
    Empty,
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("vertex {v} out of range in block {block}")]
    VertexOutOfRange { block: usize, v: u32 },
    #[error("vertex {v} appears in blocks {first} and {second}")]
    Overlap { v: u32, first: usize, second: usize },
    #[error("vertex {v} is not covered")]
    Missing { v: u32 },
    #[error("block {block} edge ({u}, {v}) joins vertices outside the block")]
    EdgeLeavesBlock { block: usize, u: u32, v: u32 },
    #[error("block {block} edge ({u}, {v}) is not an edge of the graph")]
    EdgeNotInGraph { block: usize, u: u32, v: u32 },
    #[error("block {block} edge ({u}, {v}) has color {actual}, expected {expected}")]
    WrongColor { block: usize, u: u32, v: u32, expected: u8, actual: u8 },
    #[error("block {block} has {edges} edges for {vertices} vertices; a tree needs vertices - 1")]
    WrongEdgeCount { block: usize, vertices: usize, edges: usize },
    #[error("block {block} tree edges do not connect the block")]
    TreeDisconnected { block: usize },
    #[error("part {part} is not connected in color {color}")]
    PartDisconnected { part: usize, color: u8 },
    #[error("part {part} uses color {color}, outside 1..={r}")]
    ColorOutOfRange { part: usize, color: u8, r: usize },
    #[error("vertex {v} is isolated and cannot form a degenerate tree")]
    IsolatedSingleton { v: u32 },
}

/// Checks that `cert` is a partition of all of `cg`'s vertices into
/// monochromatic trees: blocks disjoint and exhaustive; each block's listed
/// edges lie inside the block, exist in the graph with the block's color,
/// number `|block| - 1`, and connect the block.
pub fn verify_partition(cg: &ColoredGraph, cert: &PartitionCertificate) -> Result<(), Violation> {
    let n = cg.n();
    if cert.blocks.is_empty() {
        return Err(Violation::Empty);
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (bi, block) in cert.blocks.iter().enumerate() {
        if block.vertices.is_empty() {
            return Err(Violation::EmptyBlock { block: bi });
        }
        if block.color == 0 || block.color as usize > cg.r().max(1) {
            return Err(Violation::ColorOutOfRange {
                part: bi,
                color: block.color,
                r: cg.r(),
            });
        }
        for &v in &block.vertices {
            if v as usize >= n {
                return Err(Violation::VertexOutOfRange { block: bi, v });
            }
            match owner[v as usize] {
                Some(first) => {
                    return Err(Violation::Overlap { v, first, second: bi });
                }
                None => owner[v as usize] = Some(bi),
            }
        }
    }
    for (v, assigned) in owner.iter().enumerate() {
        if assigned.is_none() {
            return Err(Violation::Missing { v: v as u32 });
        }
    }
    for (bi, block) in cert.blocks.iter().enumerate() {
        let members = VertexSet::from_slice(n, &block.vertices);
        if block.vertices.len() == 1 && cg.graph().degree(block.vertices[0] as usize) == 0 {
            return Err(Violation::IsolatedSingleton { v: block.vertices[0] });
        }
        if block.tree_edges.len() != block.vertices.len() - 1 {
            return Err(Violation::WrongEdgeCount {
                block: bi,
                vertices: block.vertices.len(),
                edges: block.tree_edges.len(),
            });
        }
        for &(u, v) in &block.tree_edges {
            if !members.contains(u as usize) || !members.contains(v as usize) {
                return Err(Violation::EdgeLeavesBlock { block: bi, u, v });
            }
            match cg.color_of(u as usize, v as usize) {
                None => return Err(Violation::EdgeNotInGraph { block: bi, u, v }),
                Some(c) if c != block.color => {
                    return Err(Violation::WrongColor {
                        block: bi,
                        u,
                        v,
                        expected: block.color,
                        actual: c,
                    });
                }
                Some(_) => {}
            }
        }
        // |V| - 1 edges inside the block: connectivity makes it a tree.
        if !connected_by_edges(&members, &block.tree_edges, n) {
            return Err(Violation::TreeDisconnected { block: bi });
        }
    }
    Ok(())
}

fn connected_by_edges(members: &VertexSet, edges: &[(u32, u32)], n: usize) -> bool {
    let Some(start) = members.first() else {
        return false;
    };
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    let mut seen = VertexSet::new(n);
    seen.insert(start);
    let mut frontier = vec![start];
    let mut count = 1;
    while let Some(v) = frontier.pop() {
        for &u in &adj[v] {
            if seen.insert(u as usize) {
                count += 1;
                frontier.push(u as usize);
            }
        }
    }
    count == members.count()
}

/// Checks that `cert` covers all of `cg`'s vertices with monochromatic
/// connected parts. Parts may overlap; a singleton part is connected by
/// definition.
pub fn verify_cover(cg: &ColoredGraph, cert: &CoverCertificate) -> Result<(), Violation> {
    let n = cg.n();
    if cert.parts.is_empty() {
        return Err(Violation::Empty);
    }
    let mut covered = VertexSet::new(n);
    for (pi, part) in cert.parts.iter().enumerate() {
        if part.vertices.is_empty() {
            return Err(Violation::EmptyBlock { block: pi });
        }
        if part.color == 0 || part.color as usize > cg.r().max(1) {
            return Err(Violation::ColorOutOfRange {
                part: pi,
                color: part.color,
                r: cg.r(),
            });
        }
        let mut members = VertexSet::new(n);
        for &v in &part.vertices {
            if v as usize >= n {
                return Err(Violation::VertexOutOfRange { block: pi, v });
            }
            members.insert(v as usize);
            covered.insert(v as usize);
        }
        if part.vertices.len() == 1 && cg.graph().degree(part.vertices[0] as usize) == 0 {
            return Err(Violation::IsolatedSingleton { v: part.vertices[0] });
        }
        if !cg.connected_within_color(&members, part.color) {
            return Err(Violation::PartDisconnected {
                part: pi,
                color: part.color,
            });
        }
    }
    for v in 0..n {
        if !covered.contains(v) {
            return Err(Violation::Missing { v: v as u32 });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::build_colored_graph;

    fn sample() -> ColoredGraph {
        // Triangle 0-1-2 color 1, pendant 2-3 color 2.
        build_colored_graph(4, 2, &[(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 2)]).unwrap()
    }

    #[test]
    fn accepts_good_partition() {
        let cg = sample();
        let cert = PartitionCertificate {
            blocks: vec![
                TreeBlock {
                    color: 1,
                    vertices: vec![0, 1, 2],
                    tree_edges: vec![(0, 1), (1, 2)],
                },
                TreeBlock {
                    color: 2,
                    vertices: vec![3],
                    tree_edges: vec![],
                },
            ],
        };
        assert_eq!(verify_partition(&cg, &cert), Ok(()));
    }

    #[test]
    fn rejects_bad_partitions() {
        let cg = sample();
        // Overlapping blocks.
        let overlap = PartitionCertificate {
            blocks: vec![
                TreeBlock { color: 1, vertices: vec![0, 1, 2], tree_edges: vec![(0, 1), (1, 2)] },
                TreeBlock { color: 2, vertices: vec![2, 3], tree_edges: vec![(2, 3)] },
            ],
        };
        assert!(matches!(
            verify_partition(&cg, &overlap),
            Err(Violation::Overlap { v: 2, .. })
        ));
        // Missing vertex 3.
        let missing = PartitionCertificate {
            blocks: vec![TreeBlock {
                color: 1,
                vertices: vec![0, 1, 2],
                tree_edges: vec![(0, 1), (1, 2)],
            }],
        };
        assert!(matches!(
            verify_partition(&cg, &missing),
            Err(Violation::Missing { v: 3 })
        ));
        // Wrong color on a tree edge.
        let wrong_color = PartitionCertificate {
            blocks: vec![
                TreeBlock { color: 2, vertices: vec![0, 1], tree_edges: vec![(0, 1)] },
                TreeBlock { color: 2, vertices: vec![2, 3], tree_edges: vec![(2, 3)] },
            ],
        };
        assert!(matches!(
            verify_partition(&cg, &wrong_color),
            Err(Violation::WrongColor { expected: 2, actual: 1, .. })
        ));
        // Cycle instead of tree: 3 vertices, 3 edges.
        let cycle = PartitionCertificate {
            blocks: vec![
                TreeBlock {
                    color: 1,
                    vertices: vec![0, 1, 2],
                    tree_edges: vec![(0, 1), (1, 2), (0, 2)],
                },
                TreeBlock { color: 2, vertices: vec![3], tree_edges: vec![] },
            ],
        };
        assert!(matches!(
            verify_partition(&cg, &cycle),
            Err(Violation::WrongEdgeCount { vertices: 3, edges: 3, .. })
        ));
        // Empty certificate.
        assert!(matches!(
            verify_partition(&cg, &PartitionCertificate { blocks: vec![] }),
            Err(Violation::Empty)
        ));
    }

    #[test]
    fn cover_allows_overlap_but_needs_connectivity() {
        let cg = sample();
        let good = CoverCertificate {
            parts: vec![
                CoverPart { color: 1, vertices: vec![0, 1, 2] },
                CoverPart { color: 2, vertices: vec![2, 3] },
            ],
        };
        assert_eq!(verify_cover(&cg, &good), Ok(()));

        // {0, 3} is not connected in color 2.
        let bad = CoverCertificate {
            parts: vec![
                CoverPart { color: 2, vertices: vec![0, 3] },
                CoverPart { color: 1, vertices: vec![1, 2] },
            ],
        };
        assert!(matches!(
            verify_cover(&cg, &bad),
            Err(Violation::PartDisconnected { part: 0, color: 2 })
        ));

        // Singleton parts are fine.
        let singles = CoverCertificate {
            parts: vec![
                CoverPart { color: 1, vertices: vec![0, 1, 2] },
                CoverPart { color: 1, vertices: vec![3] },
            ],
        };
        assert_eq!(verify_cover(&cg, &singles), Ok(()));
    }

    #[test]
    fn certificate_file_roundtrips() {
        let cert = CertificateFile::Partition(PartitionCertificate {
            blocks: vec![TreeBlock { color: 1, vertices: vec![0], tree_edges: vec![] }],
        });
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"kind\":\"partition\""));
        let back: CertificateFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
