//! Randomized invariants of the public API: monochromatic component
//! structure, common-neighborhood monotonicity, oracle bounds, exhaustive
//! cross-checks on small instances, leaf-split structure, and the anchored
//! coloring's color rule.

use monotrees::{
    anchored_coloring, greedy_independent_set, independence_number, leaf_partition,
    mono_components, random_coloring, sample_gnp, tc_exact, tp_exact, ColoredGraph, Graph,
    LeafMode, OracleLimits, VertexSet,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic random colored instance from compact parameters.
fn instance(n: usize, density_pct: u8, r: usize, seed: u64) -> ColoredGraph {
    let g = sample_gnp(n, f64::from(density_pct) / 100.0, seed);
    random_coloring(&g, r, seed ^ 0x9e37_79b9)
}

fn min_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}

/// Vertices incident to at least one edge of color `c`.
fn touched_by_color(cg: &ColoredGraph, c: u8) -> VertexSet {
    let mut touched = VertexSet::new(cg.n());
    for (u, v, ec) in cg.colored_edges() {
        if ec == c {
            touched.insert(u as usize);
            touched.insert(v as usize);
        }
    }
    touched
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    /// Within each color, the monochromatic components are pairwise
    /// disjoint, jointly cover exactly the vertices touched by that color,
    /// are each connected in that color, and are maximal: no edge of the
    /// color leaves a component.
    #[test]
    fn mono_components_tile_each_color_class(
        n in 2usize..=14,
        density in 10u8..=95,
        r in 1usize..=4,
        seed in any::<u64>(),
    ) {
        let cg = instance(n, density, r, seed);
        let comps = mono_components(&cg);
        for c in 1..=cg.r() as u8 {
            let mine: Vec<_> = comps.iter().filter(|mc| mc.color == c).collect();
            let mut union = VertexSet::new(n);
            let mut total = 0usize;
            for mc in &mine {
                prop_assert!(mc.size() >= 2, "color component must span an edge");
                prop_assert!(cg.connected_within_color(&mc.vertices, c));
                total += mc.size();
                union.union_with(&mc.vertices);
            }
            // Disjoint: sizes add up exactly to the union.
            prop_assert_eq!(total, union.count());
            prop_assert_eq!(&union, &touched_by_color(&cg, c));
            // Maximal: an edge of color c never crosses out of a component.
            for (u, v, ec) in cg.colored_edges() {
                if ec != c {
                    continue;
                }
                for mc in &mine {
                    prop_assert_eq!(
                        mc.vertices.contains(u as usize),
                        mc.vertices.contains(v as usize),
                        "edge ({}, {}) of color {} crosses a component boundary", u, v, c
                    );
                }
            }
        }
    }

    /// Growing the query set can only shrink the common neighborhood.
    #[test]
    fn common_neighborhood_is_antitone(
        n in 2usize..=20,
        density in 10u8..=95,
        seed in any::<u64>(),
        picks in prop::collection::vec(any::<u32>(), 1..=6),
    ) {
        let g = sample_gnp(n, f64::from(density) / 100.0, seed);
        // Derive T from the pick stream, then S as a nonempty prefix of T.
        let t: Vec<u32> = {
            let mut t: Vec<u32> = picks.iter().map(|&x| x % n as u32).collect();
            t.sort_unstable();
            t.dedup();
            t
        };
        let s = &t[..1 + (seed as usize % t.len())];
        let nt = g.common_neighborhood(&t).unwrap();
        let ns = g.common_neighborhood(s).unwrap();
        prop_assert!(nt.is_subset_of(&ns));
    }

    /// A tree partition is also a tree cover, so the minimum cover never
    /// needs more blocks than the minimum partition.
    #[test]
    fn cover_never_exceeds_partition(
        n in 2usize..=9,
        density in 50u8..=100,
        r in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let cg = instance(n, density, r, seed);
        prop_assume!(min_degree(cg.graph()) >= 1);
        let limits = OracleLimits::default();
        let tc = tc_exact(&cg, &limits).unwrap();
        let tp = tp_exact(&cg, &limits).unwrap();
        prop_assert!(tc.value <= tp.value, "cover {} > partition {}", tc.value, tp.value);
    }

    /// Covering each color class by one tree per component of an optimal
    /// independent-set argument gives cover number at most r times the
    /// independence number.
    #[test]
    fn cover_bounded_by_colors_times_independence(
        n in 2usize..=10,
        density in 50u8..=100,
        r in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let cg = instance(n, density, r, seed);
        prop_assume!(min_degree(cg.graph()) >= 1);
        let (alpha, exact) = independence_number(cg.graph(), n);
        prop_assert!(exact);
        let tc = tc_exact(&cg, &OracleLimits::default()).unwrap();
        prop_assert!(
            tc.value <= r * alpha,
            "cover {} exceeds r * alpha = {} * {}", tc.value, r, alpha
        );
    }
}

/// A block is usable in a tree partition iff it is a single non-isolated
/// vertex or is connected inside a single color class.
fn block_feasible(cg: &ColoredGraph, block: &VertexSet) -> bool {
    if block.count() == 1 {
        return cg.graph().degree(block.first().unwrap()) >= 1;
    }
    (1..=cg.r() as u8).any(|c| cg.connected_within_color(block, c))
}

/// Minimum number of feasible blocks over all set partitions of the vertex
/// set, by direct enumeration. Only sensible for very small n.
fn naive_partition_number(cg: &ColoredGraph) -> usize {
    fn go(cg: &ColoredGraph, next: usize, blocks: &mut Vec<VertexSet>, best: &mut usize) {
        if blocks.len() >= *best {
            return; // already no better than the incumbent
        }
        if next == cg.n() {
            if blocks.iter().all(|b| block_feasible(cg, b)) {
                *best = blocks.len();
            }
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].insert(next);
            go(cg, next + 1, blocks, best);
            blocks[i].remove(next);
        }
        let mut fresh = VertexSet::new(cg.n());
        fresh.insert(next);
        blocks.push(fresh);
        go(cg, next + 1, blocks, best);
        blocks.pop();
    }
    let mut best = usize::MAX;
    go(cg, 0, &mut Vec::new(), &mut best);
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The partition oracle agrees with brute-force enumeration of all set
    /// partitions on instances small enough to enumerate.
    #[test]
    fn partition_oracle_matches_exhaustive_enumeration(
        n in 2usize..=8,
        density in 40u8..=100,
        r in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let cg = instance(n, density, r, seed);
        prop_assume!(min_degree(cg.graph()) >= 1);
        let tp = tp_exact(&cg, &OracleLimits::default()).unwrap();
        prop_assert_eq!(tp.value, naive_partition_number(&cg));
    }

    /// The deterministic leaf split partitions y into one part per slot and
    /// attaches every z-vertex exactly once, to a same-colored neighbor
    /// inside its slot.
    #[test]
    fn leaf_split_attaches_each_leaf_exactly_once(
        k in 2usize..=3,
        nz in 4usize..=16,
        pad in 0usize..6,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = (k as f64 * (nz as f64).ln()).floor() as usize + 1;
        let ny = d + 1 + pad;
        let n = ny + nz;
        let mut edges = Vec::new();
        for z in ny..n {
            let nbrs = rand::seq::index::sample(&mut rng, ny, d);
            for y in nbrs.iter() {
                edges.push((y, z, rng.gen_range(1..=k)));
            }
        }
        let cg = monotrees::build_colored_graph(n, k, &edges).unwrap();
        let mut y = VertexSet::new(n);
        for v in 0..ny {
            y.insert(v);
        }
        let mut z = VertexSet::new(n);
        for v in ny..n {
            z.insert(v);
        }
        let split = leaf_partition(&cg, &y, &z, k, LeafMode::Derandomized).unwrap();

        prop_assert_eq!(split.parts.len(), k);
        prop_assert_eq!(split.colors.len(), k);
        let mut union = VertexSet::new(n);
        let mut total = 0;
        for (i, part) in split.parts.iter().enumerate() {
            prop_assert!(part.is_subset_of(&y));
            prop_assert!(split.colors[i] >= 1 && split.colors[i] <= k as u8);
            total += part.count();
            union.union_with(part);
        }
        prop_assert_eq!(total, union.count(), "slots overlap");
        prop_assert_eq!(&union, &y, "slots must tile all of y");

        prop_assert_eq!(split.attachments.len(), nz);
        for (idx, att) in split.attachments.iter().enumerate() {
            prop_assert_eq!(att.vertex as usize, ny + idx, "one attachment per z, ascending");
            prop_assert!(att.slot < k);
            prop_assert!(split.parts[att.slot].contains(att.anchor as usize));
            prop_assert_eq!(
                cg.color_of(att.vertex as usize, att.anchor as usize),
                Some(split.colors[att.slot])
            );
        }
    }

    /// In an anchored coloring, an edge meeting the i-th anchor gets color
    /// i + 1 and every other edge gets the background color r.
    #[test]
    fn anchored_coloring_colors_follow_anchors(
        n in 3usize..=20,
        density in 20u8..=95,
        seed in any::<u64>(),
        take in 1usize..=4,
    ) {
        let g = sample_gnp(n, f64::from(density) / 100.0, seed);
        let indep = greedy_independent_set(&g);
        prop_assume!(!indep.is_empty());
        let anchors = &indep[..take.min(indep.len())];
        let r = anchors.len() as u8;
        let cg = anchored_coloring(&g, anchors).unwrap();
        prop_assert_eq!(cg.r(), anchors.len());
        for (u, v, c) in cg.colored_edges() {
            let hit = anchors
                .iter()
                .position(|&a| a == u || a == v)
                .map(|i| (i + 1) as u8);
            prop_assert_eq!(c, hit.unwrap_or(r), "edge ({}, {})", u, v);
        }
    }
}

/// On a complete graph the leaf-split degree hypothesis holds with huge
/// slack, so the randomized mode (with its bounded retry loop) must succeed
/// for every coloring and every seed.
#[test]
fn complete_graph_leaf_split_succeeds_for_all_seeds() {
    let n = 30;
    let half = 15;
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let k30 = Graph::new(n, &edges).unwrap();
    let mut y = VertexSet::new(n);
    let mut z = VertexSet::new(n);
    for v in 0..half {
        y.insert(v);
    }
    for v in half..n {
        z.insert(v);
    }
    for seed in 0..1000u64 {
        let cg = random_coloring(&k30, 2, seed);
        let split = leaf_partition(&cg, &y, &z, 2, LeafMode::Randomized { seed });
        assert!(split.is_ok(), "seed {seed}: {:?}", split.err());
    }
}
