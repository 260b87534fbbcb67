//! Deterministic extremal graphs and colorings.
//!
//! Each builder produces an instance whose cover/partition behavior is
//! pinned from below by its structure, together with machine-checkable
//! promises (`ConstructionMeta`) that [`verify_promise`] re-checks against
//! the exact oracles.

use crate::colored::{mono_components, ColoredGraph};
use crate::graph::Graph;
use crate::oracles::{distinct_color_cover_exists, tc_exact, OracleError, OracleLimits};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("anchor vertices must be independent, but ({u}, {v}) is an edge")]
    NotIndependent { u: u32, v: u32 },
    #[error("vertex {v} appears twice in the anchor set")]
    DuplicateVertex { v: u32 },
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: u32, n: usize },
    #[error("witness set has {size} vertices but needs at least {need}")]
    SetTooSmall { size: usize, need: usize },
    #[error("vertex {v} has {count} neighbors in the witness set, at most {max} allowed")]
    TooManyNeighborsInSet { v: u32, count: usize, max: usize },
    #[error("the witness set dominates the graph; some vertex must have no neighbor in it")]
    SetDominates,
    #[error("{what} is {value} but must be at least {min}")]
    TooSmall {
        what: &'static str,
        value: usize,
        min: usize,
    },
    #[error("{what} is {value} but must be at most {max}")]
    TooBig {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("{q} is not prime")]
    NotPrime { q: usize },
}

/// What a construction guarantees about itself. `verify_promise` re-checks
/// every field against the instance.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConstructionMeta {
    /// Family identifier, matching the CLI `gen --family` string.
    pub name: String,
    pub promised_min_degree: usize,
    /// For `tc_gt`: the cover number is at least this. For `tm_eq`: every
    /// monochromatic component has exactly this many vertices. Unused (0)
    /// for `tcr_distinct_fail`.
    pub promised_lower_bound: usize,
    pub bound_kind: BoundKind,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub enum BoundKind {
    /// Cover number is at least `promised_lower_bound`.
    #[serde(rename = "tc_gt")]
    CoverAtLeast,
    /// No cover using each color at most once exists.
    #[serde(rename = "tcr_distinct_fail")]
    DistinctCoverImpossible,
    /// All monochromatic components have exactly `promised_lower_bound`
    /// vertices.
    #[serde(rename = "tm_eq")]
    ComponentsAllExactly,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PromiseError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("promised minimum degree {promised}, actual {actual}")]
    MinDegree { promised: usize, actual: usize },
    #[error("promised cover number at least {promised}, oracle found {actual}")]
    CoverTooSmall { promised: usize, actual: usize },
    #[error("a distinct-color cover exists despite the promise")]
    DistinctCoverExists,
    #[error("component of size {actual} found, but all were promised to have {promised} vertices")]
    ComponentSize { promised: usize, actual: usize },
    #[error("no monochromatic components at all")]
    NoComponents,
}

/// Re-checks a construction's promises with the exact oracles. An
/// `Uncoverable` verdict satisfies cover-related promises vacuously (the
/// cover number is infinite).
pub fn verify_promise(
    cg: &ColoredGraph,
    meta: &ConstructionMeta,
    limits: &OracleLimits,
) -> Result<(), PromiseError> {
    let actual_delta = cg.graph().min_degree();
    if actual_delta != meta.promised_min_degree {
        return Err(PromiseError::MinDegree {
            promised: meta.promised_min_degree,
            actual: actual_delta,
        });
    }
    match meta.bound_kind {
        BoundKind::CoverAtLeast => match tc_exact(cg, limits) {
            Ok(sol) if sol.value >= meta.promised_lower_bound => Ok(()),
            Ok(sol) => Err(PromiseError::CoverTooSmall {
                promised: meta.promised_lower_bound,
                actual: sol.value,
            }),
            Err(OracleError::Uncoverable { .. }) => Ok(()),
            Err(e) => Err(e.into()),
        },
        BoundKind::DistinctCoverImpossible => match distinct_color_cover_exists(cg, limits) {
            Ok(None) => Ok(()),
            Ok(Some(_)) => Err(PromiseError::DistinctCoverExists),
            Err(OracleError::Uncoverable { .. }) => Ok(()),
            Err(e) => Err(e.into()),
        },
        BoundKind::ComponentsAllExactly => {
            let comps = mono_components(cg);
            if comps.is_empty() {
                return Err(PromiseError::NoComponents);
            }
            match comps
                .iter()
                .find(|c| c.size() != meta.promised_lower_bound)
            {
                Some(c) => Err(PromiseError::ComponentSize {
                    promised: meta.promised_lower_bound,
                    actual: c.size(),
                }),
                None => Ok(()),
            }
        }
    }
}

fn check_anchor_set(g: &Graph, xs: &[u32]) -> Result<(), ConstructionError> {
    for &v in xs {
        if v as usize >= g.n() {
            return Err(ConstructionError::VertexOutOfRange { v, n: g.n() });
        }
    }
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(ConstructionError::DuplicateVertex { v: w[0] });
        }
    }
    for (i, &u) in xs.iter().enumerate() {
        for &v in &xs[i + 1..] {
            if g.has_edge(u as usize, v as usize) {
                return Err(ConstructionError::NotIndependent {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
    }
    Ok(())
}

/// Colors `g` with `anchors.len()` colors so that each anchor touches only
/// its own color: every edge at `anchors[i]` gets color `i + 1`, every other
/// edge the last color. Anchors must be independent and distinct, which
/// forces the cover number to at least `anchors.len()` — no two anchors can
/// share a monochromatic component.
pub fn anchored_coloring(g: &Graph, anchors: &[u32]) -> Result<ColoredGraph, ConstructionError> {
    if anchors.is_empty() {
        return Err(ConstructionError::SetTooSmall { size: 0, need: 1 });
    }
    check_anchor_set(g, anchors)?;
    let r = anchors.len();
    let mut color_of_anchor = vec![0u8; g.n()];
    for (i, &x) in anchors.iter().enumerate() {
        color_of_anchor[x as usize] = (i + 1) as u8;
    }
    let colors: Vec<u8> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (cu, cv) = (color_of_anchor[u as usize], color_of_anchor[v as usize]);
            debug_assert!(cu == 0 || cv == 0, "anchors are independent");
            match cu.max(cv) {
                0 => r as u8,
                c => c,
            }
        })
        .collect();
    Ok(ColoredGraph::attach_colors(g.clone(), r, &colors))
}

/// Colors `g` with `r` colors so that the witness set and one undominated
/// vertex require `witness.len() + 1` components to cover. Requires:
/// `witness` independent with at least `r >= 1` vertices, every outside
/// vertex has at most `r - 1` neighbors in it, and some vertex has none.
/// Edges inside the complement get color `r`; each outside vertex's edges
/// into the witness set get colors `1, 2, ...` in ascending neighbor order.
pub fn witness_set_coloring(
    g: &Graph,
    witness: &[u32],
    r: usize,
) -> Result<ColoredGraph, ConstructionError> {
    if r < 1 {
        return Err(ConstructionError::TooSmall {
            what: "color count",
            value: r,
            min: 1,
        });
    }
    if witness.len() < r {
        return Err(ConstructionError::SetTooSmall {
            size: witness.len(),
            need: r,
        });
    }
    check_anchor_set(g, witness)?;
    let mut in_set = vec![false; g.n()];
    for &v in witness {
        in_set[v as usize] = true;
    }
    for v in 0..g.n() {
        if in_set[v] {
            continue;
        }
        let count = g.neighbors(v).filter(|&u| in_set[u]).count();
        if count > r - 1 {
            return Err(ConstructionError::TooManyNeighborsInSet {
                v: v as u32,
                count,
                max: r - 1,
            });
        }
    }
    if (0..g.n()).all(|v| in_set[v] || g.neighbors(v).any(|u| in_set[u])) {
        return Err(ConstructionError::SetDominates);
    }

    // Edge (v, x) with x in the witness set gets the rank of x among v's
    // witness neighbors; everything else gets color r.
    let colors: Vec<u8> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (outside, inside) = if in_set[u as usize] {
                (v, u)
            } else if in_set[v as usize] {
                (u, v)
            } else {
                return r as u8;
            };
            let rank = g
                .neighbors(outside as usize)
                .filter(|&w| in_set[w])
                .position(|w| w == inside as usize)
                .expect("inside is a witness neighbor of outside")
                + 1;
            rank as u8
        })
        .collect();
    Ok(ColoredGraph::attach_colors(g.clone(), r, &colors))
}

/// A graph and coloring on `n >= 2r + 2` vertices with minimum degree
/// exactly `ceil((r(n-r-1)+1)/(r+1)) - 1` whose cover number exceeds `r`:
/// hub vertices `u_1..u_{r+1}` and classes `V_1..V_{r+1}` wired so that no
/// two hubs ever share a monochromatic component.
pub fn cover_lower_bound_graph(
    r: usize,
    n: usize,
) -> Result<(ColoredGraph, ConstructionMeta), ConstructionError> {
    if r < 1 {
        return Err(ConstructionError::TooSmall {
            what: "color count",
            value: r,
            min: 1,
        });
    }
    if n < 2 * r + 2 {
        return Err(ConstructionError::TooSmall {
            what: "vertex count",
            value: n,
            min: 2 * r + 2,
        });
    }
    // n = (r+1)m + q with 0 <= q <= r; class sizes m-1 (first r+1-q) or m.
    let m = n / (r + 1);
    let q = n % (r + 1);
    // Hubs are vertices 0..=r (hub i is vertex i-1); classes follow.
    let hub = |i: usize| -> u32 { (i - 1) as u32 };
    let mut class: Vec<Vec<u32>> = Vec::with_capacity(r + 1);
    let mut next = (r + 1) as u32;
    for j in 1..=r + 1 {
        let size = if j <= r + 1 - q { m - 1 } else { m };
        class.push((next..next + size as u32).collect());
        next += size as u32;
    }
    debug_assert_eq!(next as usize, n);

    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let bipartite = |a: &[u32], b: &[u32], c: usize, edges: &mut Vec<(usize, usize, usize)>| {
        for &u in a {
            for &v in b {
                edges.push((u as usize, v as usize, c));
            }
        }
    };
    for i in 1..=r + 1 {
        for j in 1..=r + 1 {
            if i < j {
                // Hub below its class index: color i.
                bipartite(&[hub(i)], &class[j - 1], i, &mut edges);
            } else if j < i {
                // Hub above its class index: color i - 1.
                bipartite(&[hub(i)], &class[j - 1], i - 1, &mut edges);
            }
        }
    }
    for i in 1..=r {
        for j in i + 1..=r {
            bipartite(&class[i - 1], &class[j - 1], r, &mut edges);
        }
    }
    for i in 2..=r {
        bipartite(&class[r], &class[i - 1], 1, &mut edges);
    }
    for cls in &class {
        for (a, &u) in cls.iter().enumerate() {
            for &v in &cls[a + 1..] {
                edges.push((u as usize, v as usize, r));
            }
        }
    }
    let cg = crate::colored::build_colored_graph(n, r, &edges)
        .expect("construction emits a valid simple coloring");
    let delta = (r * (n - r - 1) + 1).div_ceil(r + 1) - 1;
    assert_eq!(
        cg.graph().min_degree(),
        delta,
        "minimum degree must match the closed form"
    );
    let meta = ConstructionMeta {
        name: "cover-lb".to_string(),
        promised_min_degree: delta,
        promised_lower_bound: r + 1,
        bound_kind: BoundKind::CoverAtLeast,
    };
    Ok((cg, meta))
}

/// A graph and coloring on `n >= 2^r` vertices with minimum degree
/// `floor((1 - 2^-r) n) - 1` that cannot be covered by components of
/// pairwise distinct colors: vertex classes indexed by r-bit strings,
/// adjacent unless complementary, each edge colored by the lowest
/// coordinate where the endpoint indices agree.
pub fn distinct_cover_impossible_graph(
    r: usize,
    n: usize,
) -> Result<(ColoredGraph, ConstructionMeta), ConstructionError> {
    if r < 1 {
        return Err(ConstructionError::TooSmall {
            what: "color count",
            value: r,
            min: 1,
        });
    }
    if r > 20 {
        return Err(ConstructionError::TooBig {
            what: "color count",
            value: r,
            max: 20,
        });
    }
    let classes = 1usize << r;
    if n < classes {
        return Err(ConstructionError::TooSmall {
            what: "vertex count",
            value: n,
            min: classes,
        });
    }
    let m = n / classes;
    let q = n % classes;
    // First q classes get the extra vertex.
    let mut class_of: Vec<usize> = Vec::with_capacity(n);
    for (b, size) in (0..classes).map(|b| (b, if b < q { m + 1 } else { m })) {
        class_of.extend(std::iter::repeat_n(b, size));
    }
    debug_assert_eq!(class_of.len(), n);

    let comp_mask = classes - 1;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (b, b2) = (class_of[u], class_of[v]);
            if b2 == b ^ comp_mask {
                continue; // complementary indices never meet
            }
            // Lowest coordinate (1-based, LSB first) where the indices agree.
            let agree = !(b ^ b2) & comp_mask;
            let color = agree.trailing_zeros() as usize + 1;
            edges.push((u, v, color));
        }
    }
    let cg = crate::colored::build_colored_graph(n, r, &edges)
        .expect("construction emits a valid simple coloring");
    // floor((1 - 2^-r) n) - 1 = n - ceil(n / 2^r) - 1.
    let delta = n - n.div_ceil(classes) - 1;
    assert_eq!(
        cg.graph().min_degree(),
        delta,
        "minimum degree must match the closed form"
    );
    let meta = ConstructionMeta {
        name: "distinct-lb".to_string(),
        promised_min_degree: delta,
        promised_lower_bound: 0,
        bound_kind: BoundKind::DistinctCoverImpossible,
    };
    Ok((cg, meta))
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The complete graph on the `q^2` points of the affine plane of prime
/// order `q` (each point duplicated `blowup` times), colored by parallel
/// class: slope `s` lines get color `s + 1`, vertical lines color `q + 1`,
/// duplicate edges color 1. Every monochromatic component is one line —
/// exactly `q * blowup` vertices.
pub fn affine_plane_coloring(
    q: usize,
    blowup: usize,
) -> Result<(ColoredGraph, ConstructionMeta), ConstructionError> {
    if !is_prime(q) {
        return Err(ConstructionError::NotPrime { q });
    }
    if blowup < 1 {
        return Err(ConstructionError::TooSmall {
            what: "blowup",
            value: blowup,
            min: 1,
        });
    }
    let points = q * q;
    let n = points * blowup;
    let r = q + 1;
    let vertex = |p: usize, t: usize| p * blowup + t;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for p1 in 0..points {
        // Copies of one point: color 1 (they ride with the slope-0 line).
        for t1 in 0..blowup {
            for t2 in t1 + 1..blowup {
                edges.push((vertex(p1, t1), vertex(p1, t2), 1));
            }
        }
        let (x1, y1) = (p1 / q, p1 % q);
        for p2 in p1 + 1..points {
            let (x2, y2) = (p2 / q, p2 % q);
            let color = if x1 == x2 {
                q + 1 // vertical line
            } else {
                // slope = (y2 - y1) / (x2 - x1) mod q
                let dy = (y2 + q - y1) % q;
                let dx = (x2 + q - x1) % q;
                let slope = (dy * mod_inverse(dx, q)) % q;
                slope + 1
            };
            for t1 in 0..blowup {
                for t2 in 0..blowup {
                    edges.push((vertex(p1, t1), vertex(p2, t2), color));
                }
            }
        }
    }
    let cg = crate::colored::build_colored_graph(n, r, &edges)
        .expect("construction emits a valid simple coloring");
    assert_eq!(cg.graph().min_degree(), n - 1, "the blown-up plane is complete");
    let meta = ConstructionMeta {
        name: "affine".to_string(),
        promised_min_degree: n - 1,
        promised_lower_bound: q * blowup,
        bound_kind: BoundKind::ComponentsAllExactly,
    };
    Ok((cg, meta))
}

/// Multiplicative inverse mod prime `q` by Fermat's little theorem.
fn mod_inverse(a: usize, q: usize) -> usize {
    let mut base = a % q;
    let mut exp = q - 2;
    let mut acc = 1usize;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}
