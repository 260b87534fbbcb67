//! Witness-set search and the adversarial colorings it powers, plus the
//! largest-component experiment over crafted coloring families.

use crate::colored::{component_ids, largest_mono_component, mono_components, ColoredGraph};
use crate::constructions::{anchored_coloring, witness_set_coloring};
use crate::graph::{greedy_independent_set, Graph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;
use rand_chacha::ChaCha8Rng;

use super::{coloring_with_rng, gnp_with_rng, stream_rng};

/// Outcome of a witness-set search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSearch {
    /// A set satisfying all three clauses, ascending.
    Found(Vec<u32>),
    /// Exhaustive scan proved no witness set exists (only for `s = r ≤ 2`).
    NoneExists,
    /// Randomized search exhausted its budget; existence is open.
    Inconclusive,
}

/// Checks the three witness clauses for `set` against degree cap `r − 1`:
/// independence, at most `r − 1` neighbors in `set` for every vertex, and
/// some vertex outside `set` with no neighbor in it (non-domination).
pub fn verify_witness_clauses(g: &Graph, set: &[u32], r: usize) -> Result<(), String> {
    if r == 0 {
        return Err("color count must be at least 1".into());
    }
    if set.is_empty() {
        return Err("witness set is empty".into());
    }
    let n = g.n();
    let mut member = vec![false; n];
    for &v in set {
        if v as usize >= n {
            return Err(format!("vertex {v} out of range for {n} vertices"));
        }
        if member[v as usize] {
            return Err(format!("vertex {v} repeats"));
        }
        member[v as usize] = true;
    }
    for &v in set {
        if let Some(u) = g.neighbors(v as usize).find(|&u| member[u]) {
            return Err(format!("members {v} and {u} are adjacent"));
        }
    }
    for v in 0..n {
        let d = g.neighbors(v).filter(|&u| member[u]).count();
        if d > r - 1 {
            return Err(format!(
                "vertex {v} has {d} neighbors in the set, above the cap {}",
                r - 1
            ));
        }
    }
    let dominated = (0..n).all(|v| member[v] || g.neighbors(v).any(|u| member[u]));
    if dominated {
        return Err("the set dominates every vertex".into());
    }
    Ok(())
}

/// Searches for an independent, non-dominating set of `s` vertices such that
/// every vertex has at most `r − 1` neighbors inside it.
///
/// For `s = r ≤ 2` the scan is exhaustive and exact: `NoneExists` means no
/// such set exists. For larger `s` a randomized greedy with `budget` restarts
/// runs instead, and failure is only `Inconclusive`. Any returned set is
/// re-verified against all three clauses.
pub fn find_witness_set(g: &Graph, r: usize, s: usize, budget: usize, seed: u64) -> WitnessSearch {
    assert!(r >= 1, "color count must be at least 1");
    assert!(s >= r, "set size {s} must be at least the color count {r}");
    let n = g.n();
    if s > n {
        return WitnessSearch::Inconclusive;
    }
    let found = |set: Vec<u32>| {
        verify_witness_clauses(g, &set, r).expect("search result must satisfy the clauses");
        WitnessSearch::Found(set)
    };
    if s == 1 && r == 1 {
        // Clause cap 0 means no vertex may neighbor the set: the vertex must
        // be isolated, and any second vertex is then undominated.
        for v in 0..n {
            if g.degree(v) == 0 && n >= 2 {
                return found(vec![v as u32]);
            }
        }
        return WitnessSearch::NoneExists;
    }
    if s == 2 && r == 2 {
        let nsets: Vec<_> = (0..n).map(|v| g.neighbor_set(v)).collect();
        for u in 0..n {
            for v in u + 1..n {
                // Cap 1 forbids common neighbors; non-domination needs some
                // vertex beyond both neighborhoods and the pair itself.
                if !g.has_edge(u, v)
                    && g.degree(u) + g.degree(v) + 2 < n
                    && nsets[u].is_disjoint(&nsets[v])
                {
                    return found(vec![u as u32, v as u32]);
                }
            }
        }
        return WitnessSearch::NoneExists;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let order = rand::seq::index::sample(&mut rng, n, n).into_vec();
        let mut set: Vec<u32> = Vec::with_capacity(s);
        let mut deg_in_set = vec![0usize; n];
        for &cand in &order {
            if set.len() == s {
                break;
            }
            if deg_in_set[cand] > 0 {
                continue; // would break independence
            }
            if g.neighbors(cand).any(|w| deg_in_set[w] + 1 > r - 1) {
                continue; // would push a vertex past the cap
            }
            for w in g.neighbors(cand) {
                deg_in_set[w] += 1;
            }
            set.push(cand as u32);
        }
        if set.len() == s {
            let member: Vec<bool> = {
                let mut m = vec![false; n];
                for &v in &set {
                    m[v as usize] = true;
                }
                m
            };
            let undominated = (0..n).any(|v| !member[v] && deg_in_set[v] == 0);
            if undominated {
                set.sort_unstable();
                return found(set);
            }
        }
    }
    WitnessSearch::Inconclusive
}

/// A coloring whose structure certifies that covering it takes more than
/// `witness.len()` monochromatic components.
#[derive(Debug, Clone)]
pub struct AdversarialBound {
    pub coloring: ColoredGraph,
    /// The witness set behind the construction, ascending.
    pub witness: Vec<u32>,
    /// Certified lower bound: the cover number is at least this.
    pub bound: usize,
}

/// Builds an `r`-coloring of `g` certifying a cover-number lower bound of
/// `s + 1`, when a witness set of size `s` can be found.
///
/// Chains the witness search into the rank coloring, then checks the
/// structural certificate directly — no witness vertices share a
/// monochromatic component in any color, and a component of color `r`
/// exists — so no exact oracle is needed at scale. `None` means no witness
/// was found or the certificate failed on a degenerate instance.
pub fn adversarial_tc_lower_bound(
    g: &Graph,
    r: usize,
    s: usize,
    budget: usize,
    seed: u64,
) -> Option<AdversarialBound> {
    let WitnessSearch::Found(witness) = find_witness_set(g, r, s, budget, seed) else {
        return None;
    };
    let coloring = witness_set_coloring(g, &witness, r)
        .expect("verified witness clauses are the construction's preconditions");
    let ids = component_ids(&coloring);
    for row in &ids {
        let mut seen: Vec<u32> = Vec::with_capacity(witness.len());
        for &v in &witness {
            if let Some(id) = row[v as usize] {
                if seen.contains(&id) {
                    return None; // two witness vertices share a component
                }
                seen.push(id);
            }
        }
    }
    if !mono_components(&coloring)
        .iter()
        .any(|c| c.color as usize == r)
    {
        return None;
    }
    Some(AdversarialBound {
        coloring,
        witness,
        bound: s + 1,
    })
}

/// One coloring measurement inside [`tm_experiment`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TmRow {
    pub trial: usize,
    /// Which coloring family produced the row.
    pub family: &'static str,
    /// Order of the largest monochromatic component (0 when edgeless).
    pub largest: usize,
}

/// Distribution of largest-component orders over sampled graphs and coloring
/// families.
#[derive(Debug, Clone, Serialize)]
pub struct TmStats {
    pub n: usize,
    pub p: f64,
    pub r: usize,
    pub trials: usize,
    pub rows: Vec<TmRow>,
    pub min_largest: Option<usize>,
    pub min_family: Option<&'static str>,
    /// `(1 − eps)·n/(r − 1)`; `+∞` for `r = 1`, where it does not apply.
    pub guarantee: f64,
    /// Set when some coloring drove the largest component below the
    /// guarantee.
    pub flagged: bool,
}

/// Measures the largest monochromatic component over `trials` samples of
/// `G(n,p)`, each colored by several families: uniform at random, balanced
/// (equal color counts, shuffled), anchored at a greedy independent set, and
/// an affine-plane projection (when a prime `q ≤ r − 1` exists). Flags the
/// run if any coloring beats the `(1 − eps)·n/(r − 1)` guarantee.
pub fn tm_experiment(n: usize, p: f64, r: usize, trials: usize, eps: f64, seed: u64) -> TmStats {
    assert!((1..=255).contains(&r), "r = {r} must lie in 1..=255");
    let guarantee = if r >= 2 {
        (1.0 - eps) * n as f64 / (r as f64 - 1.0)
    } else {
        f64::INFINITY
    };
    let mut rows: Vec<TmRow> = Vec::new();
    let measure = |cg: &ColoredGraph| largest_mono_component(cg).map_or(0, |c| c.size());
    for trial in 0..trials {
        let mut rng = stream_rng(seed, 0, trial as u64);
        let g = gnp_with_rng(n, p, &mut rng);
        let m = g.m();

        let random = coloring_with_rng(&g, r, &mut rng);
        rows.push(TmRow {
            trial,
            family: "random",
            largest: measure(&random),
        });

        let mut balanced_colors: Vec<u8> = (0..m).map(|i| (i % r + 1) as u8).collect();
        balanced_colors.shuffle(&mut rng);
        let balanced = ColoredGraph::attach_colors(g.clone(), r, &balanced_colors);
        rows.push(TmRow {
            trial,
            family: "balanced",
            largest: measure(&balanced),
        });

        let independent = greedy_independent_set(&g);
        if independent.len() >= r {
            if let Ok(anchored) = anchored_coloring(&g, &independent[..r]) {
                rows.push(TmRow {
                    trial,
                    family: "anchored",
                    largest: measure(&anchored),
                });
            }
        }

        if let Some(q) = (2..r).rev().find(|&q| is_prime(q)) {
            let affine = affine_projection_coloring(&g, r, q);
            rows.push(TmRow {
                trial,
                family: "affine",
                largest: measure(&affine),
            });
        }
    }
    let best = rows.iter().min_by_key(|row| row.largest);
    let min_largest = best.map(|row| row.largest);
    let min_family = best.map(|row| row.family);
    let flagged = guarantee.is_finite()
        && rows
            .iter()
            .any(|row| row.largest > 0 && (row.largest as f64) < guarantee);
    TmStats {
        n,
        p,
        r,
        trials,
        rows,
        min_largest,
        min_family,
        guarantee,
        flagged,
    }
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Colors `g` by projecting vertices onto the `q²` points of the affine
/// plane of prime order `q` (`v ↦ v mod q²`) and coloring each edge by the
/// parallel class of the line through its endpoints' points: slope `s` gets
/// color `s + 1`, vertical lines `q + 1`, same-point edges color 1. Uses at
/// most `q + 1 ≤ r` colors.
fn affine_projection_coloring(g: &Graph, r: usize, q: usize) -> ColoredGraph {
    debug_assert!(q < r);
    let points = q * q;
    let colors: Vec<u8> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let pu = u as usize % points;
            let pv = v as usize % points;
            if pu == pv {
                return 1u8;
            }
            let (x1, y1) = (pu / q, pu % q);
            let (x2, y2) = (pv / q, pv % q);
            if x1 == x2 {
                (q + 1) as u8
            } else {
                let dy = (y2 + q - y1) % q;
                let dx = (x2 + q - x1) % q;
                (dy * mod_inverse(dx, q) % q + 1) as u8
            }
        })
        .collect();
    ColoredGraph::attach_colors(g.clone(), r, &colors)
}

/// Multiplicative inverse mod prime `q`.
fn mod_inverse(a: usize, q: usize) -> usize {
    let (mut base, mut exp, mut acc) = (a % q, q - 2, 1usize);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}
