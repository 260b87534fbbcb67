//! Two-tree partition for 2-colored graphs in the random-graph regime.
//!
//! Either some monochromatic component already spans (one tree suffices), or
//! a vertex pair split in both colors anchors two stars on its common
//! neighborhood — the structure that holds asymptotically almost surely above
//! the `p³·n = Θ(log n)` threshold. Every structural assumption is checked at
//! runtime and a violation is reported rather than assumed away.

use crate::bitset::VertexSet;
use crate::certificate::{verify_partition, PartitionCertificate, TreeBlock};
use crate::colored::{component_ids, mono_components, ColoredGraph};

use super::leaf::{leaf_partition_with_colors, LeafMode};
use super::{color_spanning_tree, PartitionerError};

/// Partition of a 2-colored graph into at most two monochromatic trees.
///
/// If a monochromatic component spans all vertices, returns its spanning tree
/// (lowest color first on ties). Otherwise finds the lexicographically first
/// pair `(u, v)` lying in different components of *both* colors, classifies
/// their common neighborhood by edge-color pattern, and hangs two stars off
/// `u` and `v`, splitting the remaining vertices with the derandomized leaf
/// partition. Any configuration outside the almost-sure structure —
/// no split pair, empty common neighborhood, or a mixed neighborhood —
/// is reported as [`PartitionerError::StructureBroken`].
pub fn gnp_two_color_partition(
    cg: &ColoredGraph,
) -> Result<PartitionCertificate, PartitionerError> {
    if cg.r() != 2 {
        return Err(PartitionerError::WrongColorCount {
            expected: 2,
            actual: cg.r(),
        });
    }
    let n = cg.n();
    let comps = mono_components(cg);
    if let Some(spanning) = comps.iter().find(|m| m.size() == n) {
        let tree_edges = color_spanning_tree(cg, &spanning.vertices, spanning.color);
        let certificate = PartitionCertificate {
            blocks: vec![TreeBlock {
                color: spanning.color,
                vertices: spanning.vertices.to_vec(),
                tree_edges,
            }],
        };
        assert!(
            verify_partition(cg, &certificate).is_ok(),
            "spanning component must verify as a 1-block partition"
        );
        return Ok(certificate);
    }

    // Lexicographically first pair split by both colors (being isolated in a
    // color counts as a different component).
    let ids = component_ids(cg);
    let split = |c: usize, a: usize, b: usize| match (ids[c][a], ids[c][b]) {
        (Some(x), Some(y)) => x != y,
        _ => true,
    };
    let pair = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .find(|&(u, v)| split(0, u, v) && split(1, u, v));
    let Some((u, v)) = pair else {
        return Err(PartitionerError::StructureBroken {
            detail: "no monochromatic component spans, yet every vertex pair shares a component in some color".into(),
        });
    };

    let w = cg
        .graph()
        .common_neighborhood(&[u as u32, v as u32])
        .expect("pair vertices are in range");
    if w.is_empty() {
        return Err(PartitionerError::StructureBroken {
            detail: format!("split pair ({u}, {v}) has an empty common neighborhood"),
        });
    }
    let mut side_a = VertexSet::new(n);
    let mut side_b = VertexSet::new(n);
    for x in w.iter() {
        let cu = cg.color_of(u, x).expect("common neighbor of u");
        let cv = cg.color_of(v, x).expect("common neighbor of v");
        match (cu, cv) {
            (1, 2) => {
                side_a.insert(x);
            }
            (2, 1) => {
                side_b.insert(x);
            }
            (c, _) => {
                // Equal colors would place u and v in one component of c,
                // contradicting the split; kept as a runtime report.
                return Err(PartitionerError::StructureBroken {
                    detail: format!(
                        "common neighbor {x} joins the split pair ({u}, {v}) inside color {c}"
                    ),
                });
            }
        }
    }
    if !side_a.is_empty() && !side_b.is_empty() {
        for a in side_a.iter() {
            for b in side_b.iter() {
                if cg.graph().has_edge(a, b) {
                    return Err(PartitionerError::StructureBroken {
                        detail: format!(
                            "edge ({a}, {b}) bridges both sides of the split pair's neighborhood"
                        ),
                    });
                }
            }
        }
        return Err(PartitionerError::StructureBroken {
            detail: format!(
                "split pair ({u}, {v}) has a mixed common neighborhood with no bridging edge"
            ),
        });
    }
    let (y, col_u, col_v) = if side_b.is_empty() {
        (side_a, 1u8, 2u8)
    } else {
        (side_b, 2u8, 1u8)
    };
    let mut z = VertexSet::full(n);
    z.remove(u);
    z.remove(v);
    z.subtract(&y);

    let lp = leaf_partition_with_colors(cg, &y, &z, &[col_u, col_v], LeafMode::Derandomized)
        .map_err(|e| PartitionerError::LeafPartitionFailed(Box::new(e)))?;

    let centers = [u as u32, v as u32];
    let mut blocks = Vec::with_capacity(2);
    for (slot, (&center, part)) in centers.iter().zip(&lp.parts).enumerate() {
        let mut vertices: Vec<u32> = vec![center];
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for yv in part.iter() {
            vertices.push(yv as u32);
            edges.push((center, yv as u32));
        }
        for a in lp.attachments.iter().filter(|a| a.slot == slot) {
            vertices.push(a.vertex);
            edges.push((a.vertex, a.anchor));
        }
        vertices.sort_unstable();
        blocks.push(TreeBlock {
            color: if slot == 0 { col_u } else { col_v },
            vertices,
            tree_edges: edges,
        });
    }
    let certificate = PartitionCertificate { blocks };
    assert!(
        verify_partition(cg, &certificate).is_ok(),
        "two-star partition must verify"
    );
    Ok(certificate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::build_colored_graph;

    #[test]
    fn spanning_component_short_circuits() {
        let mut edges = Vec::new();
        for a in 0..4usize {
            for b in a + 1..4 {
                edges.push((a, b, 1));
            }
        }
        let cg = build_colored_graph(4, 2, &edges).unwrap();
        let cert = gnp_two_color_partition(&cg).unwrap();
        assert_eq!(cert.blocks.len(), 1);
        assert_eq!(cert.blocks[0].color, 1);
        assert_eq!(cert.blocks[0].vertices.len(), 4);
    }

    /// Vertices 0 and 1 are split in both colors; {2..21} is their common
    /// neighborhood (all of it on the side seen from 0 in color 1); {22..39}
    /// each reach it with four edges per color.
    fn planted_split_instance() -> ColoredGraph {
        let mut edges = Vec::new();
        for w in 2..22usize {
            edges.push((0, w, 1));
            edges.push((1, w, 2));
        }
        for z in 22..40usize {
            for w in 2..6usize {
                edges.push((z, w, 1));
            }
            for w in 6..10usize {
                edges.push((z, w, 2));
            }
        }
        build_colored_graph(40, 2, &edges).unwrap()
    }

    #[test]
    fn planted_split_pair_yields_two_trees() {
        let cg = planted_split_instance();
        let cert = gnp_two_color_partition(&cg).unwrap();
        assert_eq!(cert.blocks.len(), 2);
        assert_eq!(cert.blocks[0].color, 1);
        assert_eq!(cert.blocks[1].color, 2);
        assert!(cert.blocks[0].vertices.contains(&0));
        assert!(cert.blocks[1].vertices.contains(&1));
        let total: usize = cert.blocks.iter().map(|b| b.vertices.len()).sum();
        assert_eq!(total, 40);
    }

    #[test]
    fn three_colors_are_rejected() {
        let cg = build_colored_graph(3, 3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
        assert!(matches!(
            gnp_two_color_partition(&cg),
            Err(PartitionerError::WrongColorCount {
                expected: 2,
                actual: 3
            })
        ));
    }

    #[test]
    fn mixed_neighborhood_without_bridge_is_reported() {
        // 4-cycle out of two perfect matchings: the split pair (0, 2) sees 1
        // and 3 with opposite patterns and no edge joins them.
        let cg = build_colored_graph(4, 2, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (0, 3, 2)]).unwrap();
        match gnp_two_color_partition(&cg) {
            Err(PartitionerError::StructureBroken { detail }) => {
                assert!(detail.contains("mixed"), "unexpected detail: {detail}");
            }
            other => panic!("expected StructureBroken, got {other:?}"),
        }
    }

    #[test]
    fn thin_leftover_degrees_surface_as_leaf_failure() {
        let cg = build_colored_graph(
            7,
            2,
            &[(0, 2, 1), (0, 3, 1), (1, 2, 2), (1, 3, 2), (2, 4, 1)],
        )
        .unwrap();
        match gnp_two_color_partition(&cg) {
            Err(PartitionerError::LeafPartitionFailed(inner)) => match *inner {
                PartitionerError::HypothesisViolated { witness, actual, .. } => {
                    assert_eq!(witness, 4);
                    assert_eq!(actual, 1);
                }
                other => panic!("expected HypothesisViolated inside, got {other:?}"),
            },
            other => panic!("expected LeafPartitionFailed, got {other:?}"),
        }
    }
}
