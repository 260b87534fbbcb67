//! Splitting a host set `y` into color slots so that every outside vertex in
//! `z` keeps a neighbor of the matching color inside its slot.
//!
//! Randomized mode samples uniform slot assignments and retries; derandomized
//! mode assigns `y`-vertices one at a time, greedily minimizing the expected
//! number of uncovered `z`-vertices under uniform completion (the pessimistic
//! estimator `Σ_z (1 − 1/k)^{remaining colored degree}`). The estimator starts
//! below 1 whenever every `z`-vertex has combined colored degree into `y`
//! strictly above `k·ln|z|`, and never increases under the greedy choice, so
//! derandomized mode cannot fail once that hypothesis is checked.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::colored::ColoredGraph;

use super::PartitionerError;

/// How slots are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafMode {
    /// Uniform random assignments, retried up to a fixed cap.
    Randomized { seed: u64 },
    /// Deterministic conditional-expectation greedy; requires the degree
    /// hypothesis and then always succeeds.
    Derandomized,
}

/// Attempt cap for [`LeafMode::Randomized`].
pub const LEAF_RETRY_CAP: usize = 64;

/// Where one `z`-vertex attaches: slot index and the chosen neighbor inside
/// that slot (lowest eligible slot, then lowest neighbor).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZAttachment {
    pub vertex: u32,
    pub slot: usize,
    pub anchor: u32,
}

/// Result of a leaf split: `parts[i]` is the slice of `y` assigned to slot
/// `i`, which stands for color `colors[i]`; `attachments` lists, per
/// `z`-vertex ascending, the covering slot and anchor neighbor.
#[derive(Debug, Clone)]
pub struct LeafPartition {
    pub parts: Vec<VertexSet>,
    pub colors: Vec<u8>,
    pub attachments: Vec<ZAttachment>,
}

/// Splits `y` into `k` slots for colors `1..=k` so that every vertex of `z`
/// has a color-`i` neighbor inside slot `i` for some `i`.
///
/// Preconditions: `y` and `z` disjoint. In derandomized mode every `z`-vertex
/// must have combined degree into `y` over colors `1..=k` strictly greater
/// than `k·ln|z|` (checked; [`PartitionerError::HypothesisViolated`] names the
/// first offender). `k = 1` succeeds exactly when every `z`-vertex has a
/// color-1 neighbor in `y`. Empty `z` yields a round-robin split.
pub fn leaf_partition(
    cg: &ColoredGraph,
    y: &VertexSet,
    z: &VertexSet,
    k: usize,
    mode: LeafMode,
) -> Result<LeafPartition, PartitionerError> {
    if k == 0 || k > u8::MAX as usize {
        return Err(PartitionerError::InvalidParameter {
            what: format!("slot count k = {k} must lie in 1..=255"),
        });
    }
    let colors: Vec<u8> = (1..=k as u8).collect();
    leaf_partition_with_colors(cg, y, z, &colors, mode)
}

/// [`leaf_partition`] generalized to an arbitrary list of distinct colors;
/// slot `i` stands for `colors[i]`.
pub(crate) fn leaf_partition_with_colors(
    cg: &ColoredGraph,
    y: &VertexSet,
    z: &VertexSet,
    colors: &[u8],
    mode: LeafMode,
) -> Result<LeafPartition, PartitionerError> {
    let n = cg.n();
    if y.universe() != n || z.universe() != n {
        return Err(PartitionerError::InvalidParameter {
            what: "y and z must range over the graph's vertices".into(),
        });
    }
    if !y.is_disjoint(z) {
        return Err(PartitionerError::InvalidParameter {
            what: "y and z must be disjoint".into(),
        });
    }
    let k = colors.len();
    if k == 0 {
        return Err(PartitionerError::InvalidParameter {
            what: "at least one color slot is required".into(),
        });
    }
    let mut slot_of = [usize::MAX; 256];
    for (i, &c) in colors.iter().enumerate() {
        if c == 0 {
            return Err(PartitionerError::InvalidParameter {
                what: "color 0 is not a valid slot color".into(),
            });
        }
        if slot_of[c as usize] != usize::MAX {
            return Err(PartitionerError::InvalidParameter {
                what: format!("color {c} appears twice in the slot list"),
            });
        }
        slot_of[c as usize] = i;
    }

    let y_list = y.to_vec();
    let z_list = z.to_vec();

    // Contact lists: for each z-vertex, its colored edges into y, as
    // (y-neighbor, slot); and the reverse view per y-vertex as (z-index, slot).
    let mut z_index = vec![usize::MAX; n];
    for (zi, &zv) in z_list.iter().enumerate() {
        z_index[zv as usize] = zi;
    }
    let mut y_index = vec![usize::MAX; n];
    for (yi, &yv) in y_list.iter().enumerate() {
        y_index[yv as usize] = yi;
    }
    let mut z_contacts: Vec<Vec<(u32, usize)>> = vec![Vec::new(); z_list.len()];
    let mut y_contacts: Vec<Vec<(usize, usize)>> = vec![Vec::new(); y_list.len()];
    for (zi, &zv) in z_list.iter().enumerate() {
        for &(nb, c) in cg.colored_neighbors(zv as usize) {
            let slot = slot_of[c as usize];
            if slot != usize::MAX && y.contains(nb as usize) {
                z_contacts[zi].push((nb, slot));
                y_contacts[y_index[nb as usize]].push((zi, slot));
            }
        }
    }

    // Empty z: nothing to cover — split y round-robin.
    if z_list.is_empty() {
        let mut parts = vec![VertexSet::new(n); k];
        for (yi, &yv) in y_list.iter().enumerate() {
            parts[yi % k].insert(yv as usize);
        }
        return Ok(LeafPartition {
            parts,
            colors: colors.to_vec(),
            attachments: Vec::new(),
        });
    }

    // Single slot: coverage is forced, only feasibility is in question.
    if k == 1 {
        for (zi, &zv) in z_list.iter().enumerate() {
            if z_contacts[zi].is_empty() {
                return Err(match mode {
                    LeafMode::Derandomized => PartitionerError::HypothesisViolated {
                        witness: zv,
                        actual: 0,
                        required: 1.0,
                    },
                    LeafMode::Randomized { .. } => {
                        PartitionerError::RetriesExhausted { retries: 1 }
                    }
                });
            }
        }
        let parts = vec![y.clone()];
        let attachments = attach(&parts, &z_list, &z_contacts, k);
        return Ok(LeafPartition {
            parts,
            colors: colors.to_vec(),
            attachments,
        });
    }

    let assignment = match mode {
        LeafMode::Randomized { seed } => {
            random_assignment(seed, k, &y_list, &z_list, &z_contacts, &y_index)?
        }
        LeafMode::Derandomized => {
            greedy_assignment(k, &y_list, &z_list, &z_contacts, &y_contacts)?
        }
    };

    let mut parts = vec![VertexSet::new(n); k];
    for (yi, &yv) in y_list.iter().enumerate() {
        parts[assignment[yi]].insert(yv as usize);
    }
    let attachments = attach(&parts, &z_list, &z_contacts, k);
    debug_assert_eq!(attachments.len(), z_list.len());
    Ok(LeafPartition {
        parts,
        colors: colors.to_vec(),
        attachments,
    })
}

/// Uniform random slot assignments with a retry cap.
fn random_assignment(
    seed: u64,
    k: usize,
    y_list: &[u32],
    z_list: &[u32],
    z_contacts: &[Vec<(u32, usize)>],
    y_index: &[usize],
) -> Result<Vec<usize>, PartitionerError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..LEAF_RETRY_CAP {
        let assignment: Vec<usize> = y_list.iter().map(|_| rng.gen_range(0..k)).collect();
        let all_covered = (0..z_list.len()).all(|zi| {
            z_contacts[zi]
                .iter()
                .any(|&(nb, slot)| assignment[y_index[nb as usize]] == slot)
        });
        if all_covered {
            return Ok(assignment);
        }
    }
    Err(PartitionerError::RetriesExhausted {
        retries: LEAF_RETRY_CAP,
    })
}

/// Conditional-expectation greedy. Checks the degree hypothesis, then assigns
/// each `y`-vertex to the slot gathering the largest estimator mass among its
/// uncovered contacts (ties toward the lowest slot). Succeeds deterministically.
fn greedy_assignment(
    k: usize,
    y_list: &[u32],
    z_list: &[u32],
    z_contacts: &[Vec<(u32, usize)>],
    y_contacts: &[Vec<(usize, usize)>],
) -> Result<Vec<usize>, PartitionerError> {
    let zc = z_list.len();
    let threshold = (k as f64) * (zc as f64).ln();
    for (zi, &zv) in z_list.iter().enumerate() {
        let d = z_contacts[zi].len();
        if (d as f64) <= threshold {
            return Err(PartitionerError::HypothesisViolated {
                witness: zv,
                actual: d,
                required: threshold,
            });
        }
    }

    let base = 1.0 - 1.0 / (k as f64);
    let mut remaining: Vec<i32> = z_contacts.iter().map(|c| c.len() as i32).collect();
    let mut covered = vec![false; zc];
    let mut assignment = vec![0usize; y_list.len()];
    let mut mass = vec![0.0f64; k];
    for yi in 0..y_list.len() {
        mass.iter_mut().for_each(|m| *m = 0.0);
        for &(zi, slot) in &y_contacts[yi] {
            if !covered[zi] {
                mass[slot] += base.powi(remaining[zi]);
            }
        }
        let mut best = 0usize;
        for (slot, &m) in mass.iter().enumerate().skip(1) {
            if m > mass[best] {
                best = slot;
            }
        }
        assignment[yi] = best;
        for &(zi, slot) in &y_contacts[yi] {
            if covered[zi] {
                continue;
            }
            remaining[zi] -= 1;
            if slot == best {
                covered[zi] = true;
            }
        }
    }
    assert!(
        covered.iter().all(|&c| c),
        "estimator invariant broken: a z-vertex stayed uncovered despite the degree hypothesis"
    );
    Ok(assignment)
}

/// Recomputes, per `z`-vertex ascending, the lowest covering slot and the
/// lowest anchor neighbor inside it. Coverage must already hold.
fn attach(
    parts: &[VertexSet],
    z_list: &[u32],
    z_contacts: &[Vec<(u32, usize)>],
    k: usize,
) -> Vec<ZAttachment> {
    let mut out = Vec::with_capacity(z_list.len());
    for (zi, &zv) in z_list.iter().enumerate() {
        let mut found = None;
        'slots: for (slot, part) in parts.iter().enumerate().take(k) {
            let mut anchor: Option<u32> = None;
            for &(nb, s) in &z_contacts[zi] {
                if s == slot && part.contains(nb as usize) {
                    anchor = Some(anchor.map_or(nb, |a: u32| a.min(nb)));
                }
            }
            if let Some(a) = anchor {
                found = Some(ZAttachment {
                    vertex: zv,
                    slot,
                    anchor: a,
                });
                break 'slots;
            }
        }
        out.push(found.expect("every z-vertex is covered at attachment time"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::build_colored_graph;

    fn set(n: usize, vs: &[u32]) -> VertexSet {
        VertexSet::from_slice(n, vs)
    }

    #[test]
    fn single_slot_is_direct_coverage() {
        // 3 has a color-1 neighbor (vertex 1) inside y = {1,2}.
        let cg = build_colored_graph(4, 2, &[(0, 1, 1), (1, 3, 1), (2, 3, 2)]).unwrap();
        let lp = leaf_partition(
            &cg,
            &set(4, &[1, 2]),
            &set(4, &[3]),
            1,
            LeafMode::Derandomized,
        )
        .unwrap();
        assert_eq!(lp.parts.len(), 1);
        assert_eq!(lp.parts[0].to_vec(), vec![1, 2]);
        assert_eq!(
            lp.attachments,
            vec![ZAttachment {
                vertex: 3,
                slot: 0,
                anchor: 1
            }]
        );
    }

    #[test]
    fn single_slot_failure_names_witness() {
        // 3's only edge into y = {2} has color 2; slot color is 1.
        let cg = build_colored_graph(4, 2, &[(0, 1, 1), (2, 3, 2)]).unwrap();
        let err = leaf_partition(&cg, &set(4, &[2]), &set(4, &[3]), 1, LeafMode::Derandomized)
            .unwrap_err();
        match err {
            PartitionerError::HypothesisViolated { witness, actual, .. } => {
                assert_eq!(witness, 3);
                assert_eq!(actual, 0);
            }
            other => panic!("unexpected error: {other:?}"),
        }
        let err = leaf_partition(
            &cg,
            &set(4, &[2]),
            &set(4, &[3]),
            1,
            LeafMode::Randomized { seed: 7 },
        )
        .unwrap_err();
        assert!(matches!(err, PartitionerError::RetriesExhausted { .. }));
    }

    #[test]
    fn empty_z_splits_round_robin() {
        let cg = build_colored_graph(5, 2, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 2)]).unwrap();
        for mode in [LeafMode::Derandomized, LeafMode::Randomized { seed: 1 }] {
            let lp = leaf_partition(&cg, &set(5, &[0, 1, 2, 3, 4]), &set(5, &[]), 2, mode).unwrap();
            assert_eq!(lp.parts[0].to_vec(), vec![0, 2, 4]);
            assert_eq!(lp.parts[1].to_vec(), vec![1, 3]);
            assert!(lp.attachments.is_empty());
        }
    }

    /// Bipartite-ish instance: z = {6,7,8} each adjacent to all of y = {0..5}
    /// with alternating colors; degree 6 > 2·ln 3 ≈ 2.197.
    fn alternating_instance() -> crate::colored::ColoredGraph {
        let mut edges = Vec::new();
        for zv in 6..9usize {
            for yv in 0..6usize {
                edges.push((yv, zv, (yv + zv) % 2 + 1));
            }
        }
        build_colored_graph(9, 2, &edges).unwrap()
    }

    fn covers(cg: &crate::colored::ColoredGraph, lp: &LeafPartition, z: &[u32]) {
        let zs: Vec<u32> = lp.attachments.iter().map(|a| a.vertex).collect();
        assert_eq!(zs, z);
        for a in &lp.attachments {
            assert!(lp.parts[a.slot].contains(a.anchor as usize));
            assert_eq!(
                cg.color_of(a.vertex as usize, a.anchor as usize),
                Some(lp.colors[a.slot])
            );
        }
    }

    #[test]
    fn derandomized_covers_under_hypothesis() {
        let cg = alternating_instance();
        let y = set(9, &[0, 1, 2, 3, 4, 5]);
        let z = set(9, &[6, 7, 8]);
        let lp = leaf_partition(&cg, &y, &z, 2, LeafMode::Derandomized).unwrap();
        // Parts partition y.
        let mut union = lp.parts[0].clone();
        assert!(union.is_disjoint(&lp.parts[1]));
        union.union_with(&lp.parts[1]);
        assert_eq!(union, y);
        covers(&cg, &lp, &[6, 7, 8]);
    }

    #[test]
    fn derandomized_rejects_thin_degree() {
        // Vertex 8 has only 2 contacts; 2 ≤ 2·ln 3 ≈ 2.197.
        let mut edges = Vec::new();
        for zv in 6..8usize {
            for yv in 0..6usize {
                edges.push((yv, zv, (yv + zv) % 2 + 1));
            }
        }
        edges.push((0, 8, 1));
        edges.push((1, 8, 2));
        let cg = build_colored_graph(9, 2, &edges).unwrap();
        let err = leaf_partition(
            &cg,
            &set(9, &[0, 1, 2, 3, 4, 5]),
            &set(9, &[6, 7, 8]),
            2,
            LeafMode::Derandomized,
        )
        .unwrap_err();
        match err {
            PartitionerError::HypothesisViolated {
                witness,
                actual,
                required,
            } => {
                assert_eq!(witness, 8);
                assert_eq!(actual, 2);
                assert!(required > 2.19 && required < 2.2);
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn randomized_is_reproducible() {
        let cg = alternating_instance();
        let y = set(9, &[0, 1, 2, 3, 4, 5]);
        let z = set(9, &[6, 7, 8]);
        let a = leaf_partition(&cg, &y, &z, 2, LeafMode::Randomized { seed: 42 }).unwrap();
        let b = leaf_partition(&cg, &y, &z, 2, LeafMode::Randomized { seed: 42 }).unwrap();
        assert_eq!(a.parts[0], b.parts[0]);
        assert_eq!(a.parts[1], b.parts[1]);
        covers(&cg, &a, &[6, 7, 8]);
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        let cg = build_colored_graph(3, 1, &[(0, 1, 1)]).unwrap();
        let err = leaf_partition(
            &cg,
            &set(3, &[0, 1]),
            &set(3, &[1, 2]),
            1,
            LeafMode::Derandomized,
        )
        .unwrap_err();
        assert!(matches!(err, PartitionerError::InvalidParameter { .. }));
    }
}
