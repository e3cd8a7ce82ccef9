//! Logarithmic-span drawings of general cycle-trees.
//!
//! The pipeline augments the instance with chords from internal vertices to
//! external ones, identifies the cycle `C` bounding the face of the
//! external-induced graph that contains the tree, and strips everything
//! that is not 3-connected-ly attached to `C`: tree components hanging off a
//! single kept vertex, and external components outside `C`. The remaining
//! core is drawn with span at most 4, converted to a strict drawing of span
//! at most 9, stretched by the factor `L + 1`, and the stripped components
//! are re-inserted into the corridors beside their host edges. All edges not
//! present in the input are removed at the end.

use std::collections::{BTreeMap, BTreeSet};

use crate::drawing::{
    canonicalize, check_geometric, weak_to_strict, Coord, EdgeGeom, PolylineDrawing,
};
use crate::graph::{
    canonical_walk_undirected, edge, is_connected, Edge, FaceWalk, Graph, PlaneGraph, VertexId,
};

use super::draw::add_chord_in_face;
use super::insert::{outerplanar_need, splice_jobs, InsertJob};
use super::{
    draw_3conn_cycle_tree, recognize_cycle_tree, CycleTreeError, CycleTreeInstance,
};

/// Draw any connected cycle-tree with span at most `9 * (L + 1)` where the
/// stretch factor `L` is logarithmic in the number of vertices (plus the
/// level budget certified for the outside components).
pub fn draw_cycle_tree(ct: &CycleTreeInstance) -> Result<PolylineDrawing, CycleTreeError> {
    Ok(draw_cycle_tree_stretched(ct)?.0)
}

/// [`draw_cycle_tree`] plus the stretch factor `L` it used; the output span
/// is at most `9 * (L + 1)`.
pub fn draw_cycle_tree_stretched(
    ct: &CycleTreeInstance,
) -> Result<(PolylineDrawing, i64), CycleTreeError> {
    let g0 = ct.plane_graph().graph().clone();
    let tset = ct.internal().clone();
    let wset = ct.external().clone();
    let n = g0.num_vertices();
    let bad = |m: String| CycleTreeError::NotCycleTree(m);

    // Augmentation: fan each internal face from its smallest internal
    // vertex towards the face's external vertices, and triangulate faces
    // with external vertices only (those become the outside components).
    let mut pg = ct.plane_graph().clone();
    loop {
        let Some((walk, x, y)) = find_fan_chord(&pg, &tset, None) else {
            break;
        };
        pg = add_chord_in_face(&pg, &walk, x, y)?;
    }

    // The external-induced graph, and the face of it that holds the tree:
    // the unique internal face whose boundary is not a face of the full
    // augmented embedding (removing the tree merged all tree-incident faces
    // into it).
    let outer_walk: Vec<VertexId> = pg.outer_face().clone();
    let gw = restrict_plane(&pg, &wset, &outer_walk)?;
    let aug_faces: BTreeSet<FaceWalk> = pg
        .faces()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pg.outer_face_index())
        .map(|(_, f)| canonical_walk_undirected(f))
        .collect();
    let mut cands = gw.faces().iter().enumerate().filter(|&(i, f)| {
        i != gw.outer_face_index() && !aug_faces.contains(&canonical_walk_undirected(f))
    });
    let cwalk: Vec<VertexId> = match (cands.next(), cands.next()) {
        (Some((_, f)), None) => f.clone(),
        _ => {
            return Err(bad(
                "cannot identify the face of the external graph holding the tree".into(),
            ))
        }
    };
    let cset: BTreeSet<VertexId> = cwalk.iter().copied().collect();
    if cset.len() != cwalk.len() || cwalk.len() < 3 {
        return Err(bad("the face holding the tree is not a simple cycle".into()));
    }

    // Partition the tree: kept vertices attach to C at least twice; the
    // remaining components hang off one kept vertex each and are re-inserted
    // later. Components that cannot be inserted beside a single host edge
    // (several kept attachments, or external edges to more than one C
    // vertex) are promoted into the kept core by adding every available
    // chord at them.
    let (yset, xjobs) = loop {
        let g_aug = pg.graph();
        let yset: BTreeSet<VertexId> = tset
            .iter()
            .copied()
            .filter(|&t| g_aug.neighbors(t).iter().filter(|w| cset.contains(w)).count() >= 2)
            .collect();
        if yset.is_empty() {
            return Err(bad("no internal vertex attaches to the cycle twice".into()));
        }
        let rest: BTreeSet<VertexId> = tset.difference(&yset).copied().collect();
        let mut xjobs: Vec<InsertJob> = Vec::new();
        let mut promote: BTreeSet<VertexId> = BTreeSet::new();
        for comp in g_aug.induced(&rest).components() {
            match subtree_job(&g0, g_aug, &comp, &yset, &cset) {
                Some(job) => xjobs.push(job),
                None => {
                    promote.extend(comp.iter().copied());
                    // Also allow new chords at the kept neighbors, for the
                    // case where only the host edge (x, u) is missing.
                    for &z in &comp {
                        for &w in g_aug.neighbors(z) {
                            if yset.contains(&w) {
                                promote.insert(w);
                            }
                        }
                    }
                }
            }
        }
        if promote.is_empty() {
            break (yset, xjobs);
        }
        let mut progressed = false;
        while let Some((walk, x, y)) = find_fan_chord(&pg, &tset, Some(&promote)) {
            pg = add_chord_in_face(&pg, &walk, x, y)?;
            progressed = true;
        }
        if !progressed {
            return Err(bad(
                "a stripped tree component does not fit beside a single host edge".into(),
            ));
        }
    };
    let g_aug = pg.graph().clone();

    // Outside components of the external graph, each attached to C at one
    // vertex (a hanging tree) or at the two ends of a C edge (a maximal
    // outerplanar pocket).
    let mut ojobs: Vec<InsertJob> = Vec::new();
    let mut out_need = 0i64;
    let wrest: BTreeSet<VertexId> = wset.difference(&cset).copied().collect();
    for comp in g_aug.induced(&wrest).components() {
        let mut atts: BTreeSet<VertexId> = BTreeSet::new();
        for &z in &comp {
            for &w in g_aug.neighbors(z) {
                if cset.contains(&w) {
                    atts.insert(w);
                } else if !comp.contains(&w) {
                    return Err(bad(format!(
                        "external component at vertex {z} touches another component"
                    )));
                }
            }
        }
        let att: Vec<VertexId> = atts.into_iter().collect();
        match att.as_slice() {
            [a] => {
                let tree = g_aug.induced(&comp);
                let roots: Vec<VertexId> = g_aug
                    .neighbors(*a)
                    .iter()
                    .copied()
                    .filter(|z| comp.contains(z))
                    .collect();
                if roots.len() != 1
                    || !is_connected(&tree)
                    || tree.num_edges() != tree.num_vertices() - 1
                {
                    return Err(bad(format!(
                        "external component at vertex {a} is not a hanging tree"
                    )));
                }
                let u = host_neighbor(&g_aug, &cset, *a)
                    .ok_or_else(|| bad(format!("no host edge at vertex {a}")))?;
                ojobs.push(InsertJob::Subtree {
                    x: *a,
                    u,
                    tree,
                    root: roots[0],
                });
            }
            [a, b] if g_aug.has_edge(*a, *b) => {
                let mut keep = comp.clone();
                keep.insert(*a);
                keep.insert(*b);
                let comp_g = g_aug.induced(&keep);
                let marked = crate::graph::MarkedGraph::new(
                    comp_g.clone(),
                    BTreeMap::from([("u".into(), *a), ("v".into(), *b)]),
                )
                .map_err(|e| bad(format!("bad external component: {e}")))?;
                out_need = out_need.max(outerplanar_need(&marked)?);
                ojobs.push(InsertJob::Outerplanar {
                    comp: comp_g,
                    u: *a,
                    v: *b,
                });
            }
            _ => {
                return Err(bad(format!(
                    "external component with {} attachments on the cycle",
                    att.len()
                )))
            }
        }
    }

    // The kept core: C plus the kept tree vertices, outer face C.
    let mut hset = cset.clone();
    hset.extend(yset.iter().copied());
    let h_pg = restrict_plane(&pg, &hset, &cwalk)?;
    let h_ct = recognize_cycle_tree(&h_pg)
        .map_err(|e| bad(format!("stripped core is not a cycle-tree: {e}")))?;
    if !h_ct.is_three_connected() {
        return Err(bad("stripped core is not 3-connected".into()));
    }

    // Draw the core (span <= 4), make it strict (span <= 9), stretch by
    // L + 1 so every host edge spans enough levels for the insertions.
    let l = (3 + 2 * ceil_log2(n)).max(out_need);
    let d0 = draw_3conn_cycle_tree(&h_ct)?;
    let strict = weak_to_strict(&d0)
        .and_then(|d| canonicalize(&d))
        .map_err(|e| bad(format!("internal: strict conversion failed: {e}")))?;
    let host = scale_levels(&strict, l + 1);

    let mut jobs = xjobs;
    jobs.extend(ojobs);
    let full = splice_jobs(&host, &jobs)?;

    // Strip augmentation chords and helper chains: keep input edges only.
    let mut kept: Vec<EdgeGeom> = Vec::new();
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    for e in full.edges() {
        if g0.has_edge(e.u, e.v) && seen.insert(edge(e.u, e.v)) {
            kept.push(e.clone());
        }
    }
    if seen.len() != g0.num_edges() || full.positions().len() != n {
        return Err(bad(format!(
            "internal: drew {} of {} edges, {} of {} vertices",
            seen.len(),
            g0.num_edges(),
            full.positions().len(),
            n
        )));
    }
    let out = PolylineDrawing::new(full.positions().clone(), kept);
    debug_assert!(
        n > 150 || check_geometric(&out).is_valid(),
        "cycle-tree drawing invalid"
    );
    Ok((out, l))
}

fn ceil_log2(n: usize) -> i64 {
    i64::from(usize::BITS - n.max(1).saturating_sub(1).leading_zeros())
}

/// Next chord for the augmentation: in an internal face with internal
/// vertices, a chord from the smallest internal vertex on it to a
/// non-adjacent external one; in an all-external internal face longer than
/// a triangle, the smallest non-adjacent pair. Only vertices appearing once
/// on the face walk are used. With `focus` set, only chords incident to a
/// focus vertex are considered (and every internal face vertex may serve as
/// the fan center).
fn find_fan_chord(
    pg: &PlaneGraph,
    tset: &BTreeSet<VertexId>,
    focus: Option<&BTreeSet<VertexId>>,
) -> Option<(FaceWalk, VertexId, VertexId)> {
    let g = pg.graph();
    for (fi, walk) in pg.faces().iter().enumerate() {
        if fi == pg.outer_face_index() {
            continue;
        }
        let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &v in walk {
            *count.entry(v).or_insert(0) += 1;
        }
        let once = |v: VertexId| count[&v] == 1;
        let mut internals: Vec<VertexId> = count.keys().copied().filter(|v| tset.contains(v)).collect();
        let externals: Vec<VertexId> = count
            .keys()
            .copied()
            .filter(|v| !tset.contains(v) && once(*v))
            .collect();
        internals.retain(|&v| once(v));
        if !count.keys().any(|v| tset.contains(v)) {
            // All-external face: triangulate.
            if walk.len() <= 3 {
                continue;
            }
            for i in 0..externals.len() {
                for j in i + 1..externals.len() {
                    let (a, b) = (externals[i], externals[j]);
                    if g.has_edge(a, b) || walk_adjacent(walk, a, b) {
                        continue;
                    }
                    if focus.is_some_and(|f| !f.contains(&a) && !f.contains(&b)) {
                        continue;
                    }
                    return Some((walk.clone(), a, b));
                }
            }
            continue;
        }
        let centers: &[VertexId] = match focus {
            None => &internals[..internals.len().min(1)],
            Some(_) => &internals,
        };
        for &c in centers {
            for &w in &externals {
                if g.has_edge(c, w) {
                    continue;
                }
                if focus.is_some_and(|f| !f.contains(&c)) {
                    continue;
                }
                return Some((walk.clone(), c, w));
            }
        }
    }
    None
}

/// Whether `a` and `b` are consecutive somewhere on the face walk.
fn walk_adjacent(walk: &[VertexId], a: VertexId, b: VertexId) -> bool {
    let m = walk.len();
    (0..m).any(|i| {
        let (x, y) = (walk[i], walk[(i + 1) % m]);
        (x, y) == (a, b) || (x, y) == (b, a)
    })
}

/// The induced sub-embedding on `keep`, with the given outer face.
fn restrict_plane(
    pg: &PlaneGraph,
    keep: &BTreeSet<VertexId>,
    outer: &[VertexId],
) -> Result<PlaneGraph, CycleTreeError> {
    let g = pg.graph().induced(keep);
    let rot: BTreeMap<VertexId, Vec<VertexId>> = keep
        .iter()
        .map(|&v| {
            (
                v,
                pg.rotation(v)
                    .iter()
                    .copied()
                    .filter(|w| keep.contains(w))
                    .collect(),
            )
        })
        .collect();
    PlaneGraph::new(g, rot, Some(outer))
        .map_err(|e| CycleTreeError::NotCycleTree(format!("restricted embedding invalid: {e}")))
}

/// Build the insertion job for one stripped tree component, or `None` when
/// it does not fit beside a single host edge: it must hang off exactly one
/// kept vertex `x`, all its real external edges must lead to one C vertex
/// `u`, and `(x, u)` must be an edge of the augmented graph.
fn subtree_job(
    g0: &Graph,
    g_aug: &Graph,
    comp: &BTreeSet<VertexId>,
    yset: &BTreeSet<VertexId>,
    cset: &BTreeSet<VertexId>,
) -> Option<InsertJob> {
    let mut attach: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut u_real: BTreeSet<VertexId> = BTreeSet::new();
    for &z in comp {
        for &w in g_aug.neighbors(z) {
            if yset.contains(&w) {
                attach.insert((z, w));
            } else if cset.contains(&w) && g0.has_edge(z, w) {
                u_real.insert(w);
            }
        }
    }
    let mut it = attach.into_iter();
    let (root, x) = match (it.next(), it.next()) {
        (Some(p), None) => p,
        _ => return None,
    };
    let u = match u_real.len() {
        0 => host_neighbor(g_aug, cset, x)?,
        1 => u_real.into_iter().next().unwrap(),
        _ => return None,
    };
    if !g_aug.has_edge(x, u) {
        return None;
    }
    Some(InsertJob::Subtree {
        x,
        u,
        tree: g_aug.induced(comp),
        root,
    })
}

/// Smallest C vertex adjacent to `x` in the augmented graph.
fn host_neighbor(g_aug: &Graph, cset: &BTreeSet<VertexId>, x: VertexId) -> Option<VertexId> {
    g_aug
        .neighbors(x)
        .iter()
        .copied()
        .find(|w| cset.contains(w))
}

/// Multiply every level (vertices and bends) by `f > 0`; validity and level
/// orders are preserved, and in a strict drawing every edge then spans at
/// least `f` levels.
fn scale_levels(d: &PolylineDrawing, f: i64) -> PolylineDrawing {
    let positions: BTreeMap<VertexId, (Coord, i64)> = d
        .positions()
        .iter()
        .map(|(&v, &(ref x, l))| (v, (x.clone(), l * f)))
        .collect();
    let edges = d.edges().iter().map(|e| EdgeGeom {
        u: e.u,
        v: e.v,
        bends: e.bends.iter().map(|&(ref x, l)| (x.clone(), l * f)).collect(),
    });
    PolylineDrawing::new(positions, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_cycle_tree_lower, gen_random_cycle_tree};
    use crate::graph::{build_graph, planar_embedding};

    fn assert_draws(ct: &CycleTreeInstance) -> (PolylineDrawing, i64) {
        let (d, l) = draw_cycle_tree_stretched(ct).unwrap();
        assert!(check_geometric(&d).is_valid(), "invalid drawing");
        assert_eq!(d.graph(), ct.plane_graph().graph().clone(), "graph mismatch");
        assert!(
            d.span() <= 9 * (l + 1),
            "span {} exceeds 9 * ({l} + 1)",
            d.span()
        );
        (d, l)
    }

    fn wheel(rim: u64) -> CycleTreeInstance {
        let mut edges = Vec::new();
        for i in 1..=rim {
            edges.push((0, i));
            edges.push((i, if i == rim { 1 } else { i + 1 }));
        }
        let g = build_graph(0..=rim, edges).unwrap();
        let pg = planar_embedding(&g).unwrap();
        let outer: Vec<u64> = (1..=rim).collect();
        let pg = PlaneGraph::new(g, pg.rotation_map().clone(), Some(&outer)).unwrap();
        recognize_cycle_tree(&pg).unwrap()
    }

    #[test]
    fn three_connected_input_draws_directly() {
        assert_draws(&wheel(6));
    }

    #[test]
    fn wheel_with_pendant_leaf_draws() {
        let mut edges = vec![(0u64, 6u64)];
        for i in 1..=5u64 {
            edges.push((0, i));
            edges.push((i, if i == 5 { 1 } else { i + 1 }));
        }
        let g = build_graph(0..=6, edges).unwrap();
        let pg = planar_embedding(&g).unwrap();
        let pg = PlaneGraph::new(g, pg.rotation_map().clone(), Some(&[1, 2, 3, 4, 5])).unwrap();
        let ct = recognize_cycle_tree(&pg).unwrap();
        assert_draws(&ct);
    }

    #[test]
    fn lower_bound_family_draws_with_log_stretch() {
        let ct = gen_cycle_tree_lower(100).unwrap();
        let (_, l) = assert_draws(&ct);
        assert_eq!(l, 3 + 2 * ceil_log2(100));
    }

    #[test]
    fn random_instances_draw() {
        for (n, seeds) in [(20, 0..6), (40, 0..4), (80, 0..2)] {
            for seed in seeds {
                for three_connected in [false, true] {
                    let ct = gen_random_cycle_tree(n, three_connected, seed).unwrap();
                    let (_, _) = assert_draws(&ct);
                }
            }
        }
    }
}
