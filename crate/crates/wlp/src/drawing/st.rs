//! Strictly leveled drawings with one vertex per level, built from an
//! st-numbering of a plane graph: planar edge augmentation, biconnectivity
//! augmentation inside faces, ear-decomposition st-numbering, and the
//! bottom-up sweep that places every vertex on its own level.

use std::collections::{BTreeMap, BTreeSet};

use super::check::{canonicalize, check_geometric};
use super::{coord, Coord, DrawingError, EdgeGeom, PolylineDrawing};
use crate::graph::{is_connected, Graph, PlaneGraph, VertexId};

/// Add the edge `(u, v)` inside a face shared by `u` and `v`, preserving the
/// rest of the embedding. Fails with [`DrawingError::NotCoFacial`] when no
/// face walk contains both vertices.
pub fn add_edge_in_face(
    pg: &PlaneGraph,
    u: VertexId,
    v: VertexId,
) -> Result<PlaneGraph, DrawingError> {
    if u == v || pg.graph().has_edge(u, v) {
        return Err(DrawingError::InvalidInput(format!(
            "cannot insert edge ({u}, {v})"
        )));
    }
    let walk = pg
        .faces()
        .iter()
        .find(|w| w.contains(&u) && w.contains(&v))
        .ok_or(DrawingError::NotCoFacial(u, v))?;
    let len = walk.len();
    let iu = walk.iter().position(|&x| x == u).unwrap();
    let iv = walk.iter().position(|&x| x == v).unwrap();
    // Walk predecessors at the chosen corners; inserting each new neighbor
    // right after the predecessor in the rotation splits this face in two.
    let a = walk[(iu + len - 1) % len];
    let c = walk[(iv + len - 1) % len];
    let mut rotation = pg.rotation_map().clone();
    let insert_after = |rot: &mut Vec<VertexId>, after: VertexId, new: VertexId| {
        let i = rot.iter().position(|&x| x == after).unwrap();
        rot.insert(i + 1, new);
    };
    insert_after(rotation.get_mut(&u).unwrap(), a, v);
    insert_after(rotation.get_mut(&v).unwrap(), c, u);
    let graph = pg.graph().with_edge(u, v);
    let old_outer: Vec<VertexId> = pg.outer_face().clone();
    PlaneGraph::new(graph.clone(), rotation.clone(), Some(&old_outer))
        .or_else(|_| PlaneGraph::new(graph, rotation, None))
        .map_err(|e| DrawingError::InvalidInput(e.to_string()))
}

/// Augment a connected plane graph to a biconnected one by repeatedly adding
/// an edge, inside a face, between two vertices separated by a cut vertex.
/// The embedding of the input is preserved; only edges are added.
pub fn biconnect_plane(pg: &PlaneGraph) -> Result<PlaneGraph, DrawingError> {
    if !is_connected(pg.graph()) {
        return Err(DrawingError::Disconnected);
    }
    let mut cur = pg.clone();
    loop {
        let g = cur.graph();
        if g.num_vertices() <= 2 {
            return Ok(cur);
        }
        let cut = g.vertices().find(|&v| {
            let drop: BTreeSet<VertexId> = [v].into_iter().collect();
            !is_connected(&g.without_vertices(&drop))
        });
        let v = match cut {
            Some(v) => v,
            None => return Ok(cur),
        };
        let drop: BTreeSet<VertexId> = [v].into_iter().collect();
        let comps = g.without_vertices(&drop).components();
        let comp_of = |x: VertexId| comps.iter().position(|c| c.contains(&x));
        // A face walk through the cut vertex visits at least two of the
        // components of G - v; a chord between them is always absent (an
        // existing edge would already connect them) and planar to add.
        let mut pick: Option<(VertexId, VertexId)> = None;
        'faces: for walk in cur.faces() {
            for (ix, &x) in walk.iter().enumerate() {
                if x == v {
                    continue;
                }
                for &y in &walk[ix + 1..] {
                    if y == v || y == x {
                        continue;
                    }
                    if comp_of(x) != comp_of(y) && !g.has_edge(x, y) {
                        pick = Some((x, y));
                        break 'faces;
                    }
                }
            }
        }
        let (x, y) = pick.ok_or_else(|| {
            DrawingError::InvalidInput(format!("no augmenting chord around cut vertex {v}"))
        })?;
        cur = add_edge_in_face(&cur, x, y)?;
    }
}

/// st-numbering of a biconnected graph containing the edge `(s, t)`: a total
/// vertex order starting at `s` and ending at `t` in which every other
/// vertex has both an earlier and a later neighbor. Built by ear
/// decomposition: start from a cycle through `(s, t)` and repeatedly splice
/// the interior of an ear right after its earlier attachment.
pub fn st_numbering(
    g: &Graph,
    s: VertexId,
    t: VertexId,
) -> Result<Vec<VertexId>, DrawingError> {
    if s == t || !g.has_edge(s, t) {
        return Err(DrawingError::InvalidInput(format!(
            "st-numbering needs a graph edge ({s}, {t})"
        )));
    }
    if g.num_vertices() == 2 {
        return Ok(vec![s, t]);
    }
    let cycle_path = bfs_path(g, s, t, Some((s, t)), None).ok_or_else(|| {
        DrawingError::InvalidInput("st-numbering needs a biconnected graph".into())
    })?;
    let mut order: Vec<VertexId> = cycle_path;
    let mut in_h: BTreeSet<VertexId> = order.iter().copied().collect();
    loop {
        let remaining = g.vertex_set() - &in_h;
        if remaining.is_empty() {
            break;
        }
        let comps = g.induced(&remaining).components();
        let comp = &comps[0];
        let pos: BTreeMap<VertexId, usize> =
            order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut attachments: Vec<VertexId> = in_h
            .iter()
            .copied()
            .filter(|&h| g.neighbors(h).iter().any(|n| comp.contains(n)))
            .collect();
        if attachments.len() < 2 {
            return Err(DrawingError::InvalidInput(
                "st-numbering needs a biconnected graph".into(),
            ));
        }
        attachments.sort_by_key(|v| pos[v]);
        let (a, b) = (attachments[0], attachments[1]);
        let path = bfs_path(g, a, b, None, Some(comp))
            .expect("attachments of one component are joined through it");
        let interior: Vec<VertexId> = path[1..path.len() - 1].to_vec();
        let at = pos[&a] + 1;
        for (k, &v) in interior.iter().enumerate() {
            order.insert(at + k, v);
            in_h.insert(v);
        }
    }
    Ok(order)
}

/// Shortest path from `s` to `t`. `skip` excludes one edge; `through`
/// restricts all interior vertices to the given set (endpoints exempt) and
/// forces the first step into it.
fn bfs_path(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    skip: Option<(VertexId, VertexId)>,
    through: Option<&BTreeSet<VertexId>>,
) -> Option<Vec<VertexId>> {
    let banned = skip.map(|(u, v)| crate::graph::edge(u, v));
    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([s]);
    let mut seen: BTreeSet<VertexId> = [s].into_iter().collect();
    'bfs: while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if banned == Some(crate::graph::edge(u, w)) || seen.contains(&w) {
                continue;
            }
            if let Some(inner) = through {
                let ok = if w == t {
                    u != s || inner.is_empty()
                } else {
                    inner.contains(&w)
                };
                if !ok {
                    continue;
                }
            }
            seen.insert(w);
            prev.insert(w, u);
            if w == t {
                break 'bfs;
            }
            queue.push_back(w);
        }
    }
    if !prev.contains_key(&t) {
        return None;
    }
    let mut path = vec![t];
    while *path.last().unwrap() != s {
        path.push(prev[path.last().unwrap()]);
    }
    path.reverse();
    Some(path)
}

/// Draw a connected plane graph strictly leveled with exactly one vertex per
/// level, `low` on the bottom level and `high` (chosen co-facial with `low`
/// when absent) on the top level. The span is at most `n - 1` and the height
/// exactly `n - 1`; the embedding may be augmented internally but only the
/// input's edges appear in the output.
pub fn st_leveled_drawing(
    pg: &PlaneGraph,
    low: VertexId,
    high: Option<VertexId>,
) -> Result<PolylineDrawing, DrawingError> {
    let g = pg.graph();
    if !g.contains_vertex(low) {
        return Err(DrawingError::InvalidInput(format!("unknown vertex {low}")));
    }
    if !is_connected(g) {
        return Err(DrawingError::Disconnected);
    }
    if g.num_vertices() == 1 {
        let positions = [(low, (coord(0), 0))].into_iter().collect();
        return Ok(PolylineDrawing::new(positions, std::iter::empty()));
    }
    let high = match high {
        Some(h) => {
            if h == low || !g.contains_vertex(h) {
                return Err(DrawingError::InvalidInput(format!("bad top vertex {h}")));
            }
            if !pg.faces().iter().any(|w| w.contains(&low) && w.contains(&h)) {
                return Err(DrawingError::NotCoFacial(low, h));
            }
            h
        }
        None => {
            let walk = if pg.outer_face().contains(&low) {
                pg.outer_face()
            } else {
                pg.faces()
                    .iter()
                    .find(|w| w.contains(&low))
                    .expect("a non-isolated vertex lies on a face")
            };
            walk.iter().copied().filter(|&v| v != low).min().unwrap()
        }
    };
    let mut aug = pg.clone();
    if !aug.graph().has_edge(low, high) {
        aug = add_edge_in_face(&aug, low, high)?;
    }
    aug = biconnect_plane(&aug)?;
    let order = st_numbering(aug.graph(), low, high)?;
    for mirror in [false, true] {
        if let Some(d) = sweep(&aug, &order, mirror) {
            let stripped = PolylineDrawing::new(
                d.positions().clone(),
                d.edges()
                    .iter()
                    .filter(|e| g.has_edge(e.u, e.v))
                    .cloned(),
            );
            if check_geometric(&stripped).is_valid() {
                return canonicalize(&stripped)
                    .map_err(|e| DrawingError::InvalidInput(e.to_string()));
            }
        }
    }
    Err(DrawingError::InvalidInput(
        "no planar sweep orientation found".into(),
    ))
}

/// Bottom-up sweep over an st-order of a biconnected plane graph. Keeps the
/// left-to-right list of edges crossing the current level; each vertex
/// replaces its contiguous block of incoming edges by its outgoing edges in
/// rotation order. Returns `None` when a contiguity check fails, which the
/// caller resolves by mirroring the embedding.
fn sweep(aug: &PlaneGraph, order: &[VertexId], mirror: bool) -> Option<PolylineDrawing> {
    let pos: BTreeMap<VertexId, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rot = |v: VertexId| -> Vec<VertexId> {
        let mut r = aug.rotation(v).to_vec();
        if mirror {
            r.reverse();
        }
        r
    };
    let top = *order.last().unwrap();
    let mut active: Vec<(VertexId, VertexId)> = Vec::new();
    let mut bends: BTreeMap<(VertexId, VertexId), Vec<(Coord, i64)>> = BTreeMap::new();
    let mut positions: BTreeMap<VertexId, (Coord, i64)> = BTreeMap::new();
    for (i, &v) in order.iter().enumerate() {
        let level = i as i64;
        let incoming: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|(_, e)| e.1 == v)
            .map(|(j, _)| j)
            .collect();
        let (block_start, block_len) = match (incoming.first(), incoming.last()) {
            (Some(&a), Some(&b)) => {
                if b - a + 1 != incoming.len() {
                    return None;
                }
                (a, incoming.len())
            }
            _ => {
                if i != 0 {
                    return None;
                }
                (0, 0)
            }
        };
        positions.insert(v, (coord(block_start as i64), level));
        for (j, e) in active.iter().enumerate() {
            if j < block_start {
                bends.get_mut(e).unwrap().push((coord(j as i64), level));
            } else if j >= block_start + block_len {
                let x = (block_start + 1 + j - block_start - block_len) as i64;
                bends.get_mut(e).unwrap().push((coord(x), level));
            }
        }
        let out_seq: Vec<VertexId> = if i == 0 {
            let r = rot(v);
            let k = r.iter().position(|&x| x == top)?;
            (0..r.len()).map(|j| r[(k + j) % r.len()]).collect()
        } else if i + 1 == order.len() {
            Vec::new()
        } else {
            let r = rot(v);
            let len = r.len();
            let inc = |w: VertexId| pos[&w] < i;
            let k = (0..len).find(|&k| inc(r[k]) && !inc(r[(k + 1) % len]))?;
            let out: Vec<VertexId> = (1..len)
                .map(|j| r[(k + j) % len])
                .take_while(|&w| !inc(w))
                .collect();
            if out.len() + incoming.len() != len {
                return None;
            }
            out
        };
        let replacement: Vec<(VertexId, VertexId)> =
            out_seq.iter().map(|&w| (v, w)).collect();
        for e in &replacement {
            bends.insert(*e, Vec::new());
        }
        active.splice(block_start..block_start + block_len, replacement);
    }
    if !active.is_empty() {
        return None;
    }
    let edges = bends.into_iter().map(|((u, v), b)| EdgeGeom { u, v, bends: b });
    Some(PolylineDrawing::new(positions, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::Verdict;
    use crate::graph::{build_graph, planar_embedding};

    fn plane(vertices: &[VertexId], edges: &[(VertexId, VertexId)]) -> PlaneGraph {
        let g = build_graph(vertices.iter().copied(), edges.iter().copied()).unwrap();
        planar_embedding(&g).unwrap()
    }

    fn assert_st_drawing(pg: &PlaneGraph, low: VertexId, high: Option<VertexId>) {
        let d = st_leveled_drawing(pg, low, high).unwrap();
        assert_eq!(check_geometric(&d), Verdict::Valid);
        assert!(d.is_strictly_leveled());
        let n = pg.graph().num_vertices() as i64;
        assert_eq!(d.height(), n - 1);
        let mut levels: Vec<i64> = d.positions().values().map(|p| p.1).collect();
        levels.sort_unstable();
        assert_eq!(levels, (0..n).collect::<Vec<_>>());
        assert_eq!(d.level(low), Some(0));
        if let Some(h) = high {
            assert_eq!(d.level(h), Some(n - 1));
        }
        assert_eq!(d.edges().len(), pg.graph().num_edges());
    }

    #[test]
    fn add_edge_splits_a_square_face() {
        let pg = plane(&[1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let with_chord = add_edge_in_face(&pg, 1, 3).unwrap();
        assert!(with_chord.graph().has_edge(1, 3));
        assert_eq!(with_chord.faces().len(), 3);
    }

    #[test]
    fn add_edge_rejects_non_cofacial_pair() {
        // Octahedron: vertices 1 and 6 are antipodal, sharing no face.
        let pg = plane(
            &[1, 2, 3, 4, 5, 6],
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (3, 4),
                (4, 5),
                (2, 5),
                (2, 6),
                (3, 6),
                (4, 6),
                (5, 6),
            ],
        );
        assert_eq!(
            add_edge_in_face(&pg, 1, 6),
            Err(DrawingError::NotCoFacial(1, 6))
        );
    }

    #[test]
    fn biconnect_star() {
        let pg = plane(&[1, 2, 3, 4], &[(1, 2), (1, 3), (1, 4)]);
        let b = biconnect_plane(&pg).unwrap();
        assert!(crate::graph::is_k_connected(b.graph(), 2));
        assert_eq!(b.graph().num_vertices(), 4);
    }

    #[test]
    fn biconnect_path_and_bridge_chain() {
        let pg = plane(&[1, 2, 3, 4, 5], &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        let b = biconnect_plane(&pg).unwrap();
        assert!(crate::graph::is_k_connected(b.graph(), 2));
    }

    #[test]
    fn st_numbering_of_cycle() {
        let g = build_graph(1..=4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let order = st_numbering(&g, 1, 4).unwrap();
        assert_eq!(order.len(), 4);
        assert_eq!(order[0], 1);
        assert_eq!(order[3], 4);
        let pos: BTreeMap<_, _> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for &v in &order[1..3] {
            assert!(g.neighbors(v).iter().any(|n| pos[n] < pos[&v]));
            assert!(g.neighbors(v).iter().any(|n| pos[n] > pos[&v]));
        }
    }

    #[test]
    fn st_numbering_requires_the_edge() {
        let g = build_graph(1..=4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert!(st_numbering(&g, 1, 3).is_err());
    }

    #[test]
    fn draws_single_edge() {
        let pg = plane(&[1, 2], &[(1, 2)]);
        assert_st_drawing(&pg, 1, Some(2));
    }

    #[test]
    fn draws_k4() {
        let pg = plane(&[1, 2, 3, 4], &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_st_drawing(&pg, 1, Some(2));
        assert_st_drawing(&pg, 1, None);
    }

    #[test]
    fn draws_octahedron() {
        let pg = plane(
            &[1, 2, 3, 4, 5, 6],
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (3, 4),
                (4, 5),
                (2, 5),
                (2, 6),
                (3, 6),
                (4, 6),
                (5, 6),
            ],
        );
        assert_st_drawing(&pg, 1, Some(2));
        assert_st_drawing(&pg, 3, None);
    }

    #[test]
    fn draws_tree_after_augmentation() {
        let pg = plane(&[1, 2, 3, 4, 5, 6], &[(1, 2), (1, 3), (2, 4), (2, 5), (3, 6)]);
        assert_st_drawing(&pg, 4, None);
    }

    #[test]
    fn rejects_disconnected_input() {
        let g = build_graph(1..=4, [(1, 2), (3, 4)]).unwrap();
        let pg = planar_embedding(&g).unwrap();
        assert_eq!(
            st_leveled_drawing(&pg, 1, None),
            Err(DrawingError::Disconnected)
        );
    }
}
