//! Monochromatic tree covers: the two-color pair search and the
//! auxiliary-graph greedy cover for any number of colors.

use crate::certificate::{verify_cover, CoverCertificate, CoverPart};
use crate::colored::{mono_components, ColoredGraph};

use super::PartitionerError;

/// Cover of a 2-colored graph by at most two monochromatic components.
///
/// Enumerates all pairs of monochromatic components (components sorted by
/// color then lowest vertex; the first covering pair in that order wins, and
/// a single spanning component yields a 1-part cover). When no pair covers,
/// reports `NotFound` whose `critical` flag is set exactly when
/// `3·δ(G) ≥ 2n − 5`, the minimum-degree regime where a 2-cover is promised.
pub fn two_color_cover(cg: &ColoredGraph) -> Result<CoverCertificate, PartitionerError> {
    if cg.r() != 2 {
        return Err(PartitionerError::WrongColorCount {
            expected: 2,
            actual: cg.r(),
        });
    }
    let n = cg.n();
    let critical = || {
        n > 0 && 3 * (cg.graph().min_degree() as i64) >= 2 * (n as i64) - 5
    };
    if n == 0 {
        return Err(PartitionerError::NotFound { critical: false });
    }
    let comps = mono_components(cg);
    for (i, a) in comps.iter().enumerate() {
        if a.size() == n {
            let cert = CoverCertificate {
                parts: vec![CoverPart {
                    color: a.color,
                    vertices: a.vertices.to_vec(),
                }],
            };
            assert!(
                verify_cover(cg, &cert).is_ok(),
                "spanning component must verify as a 1-part cover"
            );
            return Ok(cert);
        }
        for b in comps.iter().skip(i + 1) {
            let mut union = a.vertices.clone();
            union.union_with(&b.vertices);
            if union.count() == n {
                let cert = CoverCertificate {
                    parts: vec![
                        CoverPart {
                            color: a.color,
                            vertices: a.vertices.to_vec(),
                        },
                        CoverPart {
                            color: b.color,
                            vertices: b.vertices.to_vec(),
                        },
                    ],
                };
                assert!(
                    verify_cover(cg, &cert).is_ok(),
                    "covering pair must verify as a 2-part cover"
                );
                return Ok(cert);
            }
        }
    }
    Err(PartitionerError::NotFound {
        critical: critical(),
    })
}

/// Cover by at most `r·|I|` monochromatic components, where `I` is a greedy
/// maximal independent set in the auxiliary graph whose vertices are the
/// graph's vertices and where `u ~ v` iff they share a monochromatic
/// component in some color.
///
/// Each member of `I` contributes its component in every color (skipping
/// colors where it is isolated); a final pruning pass repeatedly drops the
/// smallest redundant part until none is redundant. A vertex isolated in
/// every color makes the cover impossible and is reported.
pub fn aux_cover(cg: &ColoredGraph) -> Result<CoverCertificate, PartitionerError> {
    let n = cg.n();
    let r = cg.r();
    if n == 0 {
        return Err(PartitionerError::NotFound { critical: false });
    }
    let ids = crate::colored::component_ids(cg);
    // Greedy maximal independent set, ascending: u joins unless it shares a
    // component (in some color) with a vertex already chosen.
    let mut chosen: Vec<usize> = Vec::new();
    for u in 0..n {
        let adjacent = chosen.iter().any(|&v| {
            (0..r).any(|c| {
                matches!((ids[c][u], ids[c][v]), (Some(a), Some(b)) if a == b)
            })
        });
        if !adjacent {
            chosen.push(u);
        }
    }

    let comps = mono_components(cg);
    // Locate the component of vertex u in color c (None if u is isolated
    // there).
    let comp_of = |u: usize, c: usize| -> Option<usize> {
        ids[c][u]?;
        comps
            .iter()
            .position(|m| m.color as usize == c + 1 && m.vertices.contains(u))
    };
    let mut part_indices: Vec<usize> = Vec::new();
    for &u in &chosen {
        for c in 0..r {
            if let Some(pi) = comp_of(u, c) {
                if !part_indices.contains(&pi) {
                    part_indices.push(pi);
                }
            }
        }
    }
    let mut covered = crate::bitset::VertexSet::new(n);
    for &pi in &part_indices {
        covered.union_with(&comps[pi].vertices);
    }
    if covered.count() != n {
        let mut missing = 0usize;
        for v in 0..n {
            if !covered.contains(v) {
                missing = v;
                break;
            }
        }
        return Err(PartitionerError::IsolatedInH {
            vertex: missing as u32,
        });
    }

    // Prune: repeatedly drop the first redundant part, scanning in ascending
    // (size, original index) order, until every remaining part is needed.
    loop {
        let mut order: Vec<usize> = (0..part_indices.len()).collect();
        order.sort_by_key(|&ix| (comps[part_indices[ix]].size(), ix));
        let mut dropped = None;
        for &ix in &order {
            let mut rest = crate::bitset::VertexSet::new(n);
            for (jx, &pj) in part_indices.iter().enumerate() {
                if jx != ix {
                    rest.union_with(&comps[pj].vertices);
                }
            }
            if rest.count() == n {
                dropped = Some(ix);
                break;
            }
        }
        match dropped {
            Some(ix) => {
                part_indices.remove(ix);
            }
            None => break,
        }
    }

    let cert = CoverCertificate {
        parts: part_indices
            .iter()
            .map(|&pi| CoverPart {
                color: comps[pi].color,
                vertices: comps[pi].vertices.to_vec(),
            })
            .collect(),
    };
    assert!(
        verify_cover(cg, &cert).is_ok(),
        "pruned component cover must verify"
    );
    assert!(
        cert.parts.len() <= r * chosen.len(),
        "cover must stay within r parts per independent-set vertex"
    );
    Ok(cert)
}
