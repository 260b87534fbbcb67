//! Partition of a densely colored graph into at most `r` monochromatic trees
//! of pairwise-distinct colors, each of radius at most 2.
//!
//! Stage one grows nested neighborhoods: `x_1 = 0` with its largest
//! monochromatic neighborhood `Y_1`; while some outside vertex has at most
//! `i·ln n` neighbors of already-used colors inside `Y_i`, that vertex becomes
//! the next center and `Y` shrinks to its majority-unused-color neighborhood.
//! Stage two splits the final `Y` among the chosen colors so every remaining
//! vertex hangs off its own slot ([`leaf_partition`][super::leaf_partition]).

use crate::bitset::VertexSet;
use crate::certificate::{verify_partition, PartitionCertificate, TreeBlock};
use crate::colored::ColoredGraph;

use super::leaf::{leaf_partition_with_colors, LeafMode};
use super::{
    extend_nested, largest_neighborhood_at, used_colored_degree, PartitionerError, StepOneState,
};

/// Which exit produced the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkExit {
    /// Every vertex outside `Y_1` attaches in the first color: one spanning tree.
    SingleColorSpanning,
    /// All outside vertices cleared the `i·ln n` used-color degree bound at
    /// depth `k < r`.
    Threshold { k: usize },
    /// Nesting ran the full color budget; `k = r`.
    AllColorsUsed,
}

/// A verified partition plus the trace of how it was found.
#[derive(Debug, Clone)]
pub struct HkOutcome {
    pub certificate: PartitionCertificate,
    pub exit: HkExit,
    pub state: StepOneState,
}

/// Partitions the vertices into `k ≤ r` monochromatic trees of distinct
/// colors and radius ≤ 2. Intended for complete or near-complete inputs;
/// on sparse ones the nesting may die out ([`PartitionerError::YExhausted`]
/// carries the trace).
///
/// Selection rules: the first center is vertex 0; neighborhood-size ties
/// break toward the lowest color; the violating vertex is the lowest-index
/// one; majority-color ties break toward the lowest color.
pub fn hk_partition(cg: &ColoredGraph) -> Result<HkOutcome, PartitionerError> {
    let n = cg.n();
    let r = cg.r();
    if cg.graph().m() == 0 {
        return Err(PartitionerError::YExhausted {
            state: StepOneState::empty(),
        });
    }

    let x1 = 0usize;
    let Some((c1, y1)) = largest_neighborhood_at(cg, x1) else {
        return Err(PartitionerError::YExhausted {
            state: StepOneState {
                centers: vec![x1 as u32],
                sets: Vec::new(),
                colors: Vec::new(),
            },
        });
    };

    // Early exit: every vertex outside {x_1} ∪ Y_1 has a c_1-neighbor in Y_1.
    let mut rest = VertexSet::full(n);
    rest.remove(x1);
    rest.subtract(&y1);
    let first_violator = rest
        .iter()
        .find(|&w| cg.color_degree_in(w, c1, &y1) == 0);
    if first_violator.is_none() {
        let mut edges: Vec<(u32, u32)> = y1.iter().map(|y| (x1 as u32, y as u32)).collect();
        for w in rest.iter() {
            let anchor = cg
                .neighbors_with_color(w, c1)
                .find(|&nb| y1.contains(nb))
                .expect("checked: every outside vertex attaches");
            edges.push((w as u32, anchor as u32));
        }
        let block = TreeBlock {
            color: c1,
            vertices: (0..n as u32).collect(),
            tree_edges: edges,
        };
        let certificate = PartitionCertificate {
            blocks: vec![block],
        };
        let state = StepOneState {
            centers: vec![x1 as u32],
            sets: vec![y1],
            colors: vec![c1],
        };
        assert!(
            verify_partition(cg, &certificate).is_ok(),
            "single-tree certificate must verify"
        );
        return Ok(HkOutcome {
            certificate,
            exit: HkExit::SingleColorSpanning,
            state,
        });
    }

    // Stage one: grow centers until the used-color degree bound holds
    // everywhere or all r colors are committed.
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

    let w = first_violator.expect("early exit handled above");
    if !extend_nested(cg, w, &mut centers, &mut sets, &mut colors, &mut used) {
        return Err(PartitionerError::YExhausted {
            state: snapshot(&centers, &sets, &colors),
        });
    }

    let (k, exit) = loop {
        let i = centers.len();
        if i == r {
            break (i, HkExit::AllColorsUsed);
        }
        let innermost = sets.last().expect("nonempty");
        let bound = (i as f64) * (n as f64).ln();
        let violator = (0..n).find(|&v| {
            !innermost.contains(v)
                && !centers.contains(&(v as u32))
                && (used_colored_degree(cg, v, innermost, &used) as f64) <= bound
        });
        match violator {
            None => break (i, HkExit::Threshold { k: i }),
            Some(v) => {
                if !extend_nested(cg, v, &mut centers, &mut sets, &mut colors, &mut used) {
                    return Err(PartitionerError::YExhausted {
                        state: snapshot(&centers, &sets, &colors),
                    });
                }
            }
        }
    };

    // Stage two: split Y among the committed colors.
    let state = snapshot(&centers, &sets, &colors);
    let y = sets.last().expect("nonempty").clone();
    let mut z = VertexSet::full(n);
    for &c in &centers {
        z.remove(c as usize);
    }
    z.subtract(&y);
    let lp = leaf_partition_with_colors(cg, &y, &z, &colors, LeafMode::Derandomized).map_err(
        |_| PartitionerError::YExhausted {
            state: state.clone(),
        },
    )?;

    let mut block_vertices: Vec<Vec<u32>> = (0..k).map(|j| vec![centers[j]]).collect();
    let mut block_edges: Vec<Vec<(u32, u32)>> = vec![Vec::new(); k];
    for (j, part) in lp.parts.iter().enumerate() {
        for yv in part.iter() {
            block_vertices[j].push(yv as u32);
            block_edges[j].push((centers[j], yv as u32));
        }
    }
    for a in &lp.attachments {
        block_vertices[a.slot].push(a.vertex);
        block_edges[a.slot].push((a.vertex, a.anchor));
    }
    let blocks: Vec<TreeBlock> = (0..k)
        .map(|j| {
            let mut vertices = std::mem::take(&mut block_vertices[j]);
            vertices.sort_unstable();
            TreeBlock {
                color: colors[j],
                vertices,
                tree_edges: std::mem::take(&mut block_edges[j]),
            }
        })
        .collect();
    let certificate = PartitionCertificate { blocks };
    assert!(
        verify_partition(cg, &certificate).is_ok(),
        "nested-neighborhood certificate must verify"
    );
    Ok(HkOutcome {
        certificate,
        exit,
        state,
    })
}
