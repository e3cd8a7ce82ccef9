//! Span-4 drawings of 3-connected cycle-trees.
//!
//! The algorithm internally triangulates the instance, removes one outer
//! edge whose inner triangle has an internal apex, decomposes the rest as an
//! almost-3-connected path-tree, draws the decomposition with the constant
//! span templates, and reinserts the removed edge with a single bend.

use std::collections::BTreeSet;

use crate::drawing::{check_geometric, coord, EdgeGeom, PolylineDrawing};
use crate::graph::{edge, Edge, FaceWalk, PlaneGraph, VertexId};

use super::spq::build_spq_parts;
use super::template::{draw_template, DrawingTemplate};
use super::{CycleTreeError, CycleTreeInstance};

/// Insert the chord `(x, y)` inside the specific face `walk`, splitting it
/// in two; the rest of the embedding (and the outer face) is unchanged.
pub(crate) fn add_chord_in_face(
    pg: &PlaneGraph,
    walk: &FaceWalk,
    x: VertexId,
    y: VertexId,
) -> Result<PlaneGraph, CycleTreeError> {
    let len = walk.len();
    let ix = walk.iter().position(|&v| v == x).unwrap();
    let iy = walk.iter().position(|&v| v == y).unwrap();
    let px = walk[(ix + len - 1) % len];
    let py = walk[(iy + len - 1) % len];
    let mut rotation = pg.rotation_map().clone();
    let insert_after = |rot: &mut Vec<VertexId>, after: VertexId, new: VertexId| {
        let i = rot.iter().position(|&v| v == after).unwrap();
        rot.insert(i + 1, new);
    };
    insert_after(rotation.get_mut(&x).unwrap(), px, y);
    insert_after(rotation.get_mut(&y).unwrap(), py, x);
    let outer: Vec<VertexId> = pg.outer_face().clone();
    PlaneGraph::new(pg.graph().with_edge(x, y), rotation, Some(&outer))
        .map_err(|e| CycleTreeError::NotCycleTree(format!("chord insertion failed: {e}")))
}

/// Triangulate every internal face by adding chords, never connecting two
/// internal vertices (which would close a cycle through the tree). Chords
/// from an internal vertex to external ones are preferred; 3-connected
/// cycle-trees have no chords between external vertices on a common face
/// that are already adjacent, so a face never gets stuck.
pub(crate) fn triangulate_internal(
    ct: &CycleTreeInstance,
) -> Result<(PlaneGraph, BTreeSet<Edge>), CycleTreeError> {
    let mut pg = ct.plane_graph().clone();
    let mut added: BTreeSet<Edge> = BTreeSet::new();
    loop {
        let outer_idx = pg.outer_face_index();
        let Some(walk) = pg
            .faces()
            .iter()
            .enumerate()
            .find(|&(i, w)| i != outer_idx && w.len() > 3)
            .map(|(_, w)| w.clone())
        else {
            return Ok((pg, added));
        };
        let m = walk.len();
        let g = pg.graph();
        let mut cands: Vec<(u8, VertexId, VertexId)> = Vec::new();
        for i in 0..m {
            for j in i + 2..m {
                if i == 0 && j == m - 1 {
                    continue;
                }
                let (x, y) = (walk[i], walk[j]);
                if x == y || g.has_edge(x, y) {
                    continue;
                }
                let (xi, yi) = (ct.internal().contains(&x), ct.internal().contains(&y));
                match (xi, yi) {
                    (true, true) => {}
                    (false, false) => cands.push((1, x.min(y), x.max(y))),
                    _ => {
                        let (int, ext) = if xi { (x, y) } else { (y, x) };
                        cands.push((0, int, ext));
                    }
                }
            }
        }
        let Some(&(_, x, y)) = cands.iter().min() else {
            return Err(CycleTreeError::NotInternallyTriangulated);
        };
        pg = add_chord_in_face(&pg, &walk, x, y)?;
        added.insert(edge(x, y));
    }
}

/// Draw a 3-connected cycle-tree with edge span at most 4.
pub fn draw_3conn_cycle_tree(
    ct: &CycleTreeInstance,
) -> Result<PolylineDrawing, CycleTreeError> {
    if !ct.is_three_connected() {
        return Err(CycleTreeError::Not3Connected);
    }
    let (pg, added) = triangulate_internal(ct)?;
    // Pick an outer edge (u, w) whose inner triangle has an internal apex
    // z; smallest z (then smallest edge) for determinism.
    let outer = pg.outer_face().clone();
    let outer_idx = pg.outer_face_index();
    let m = outer.len();
    let mut pick: Option<(VertexId, VertexId, VertexId)> = None;
    for i in 0..m {
        let (u, w) = (outer[i], outer[(i + 1) % m]);
        let apex = pg.faces().iter().enumerate().find_map(|(fi, f)| {
            if fi == outer_idx || f.len() != 3 || !f.contains(&u) || !f.contains(&w) {
                return None;
            }
            f.iter().copied().find(|&z| z != u && z != w)
        });
        if let Some(z) = apex {
            if ct.internal().contains(&z) {
                let key = (z, u.min(w), u.max(w));
                if pick.map_or(true, |(pz, pa, pb)| key < (pz, pa, pb)) {
                    pick = Some(key);
                }
            }
        }
    }
    let Some((z, a, b)) = pick else {
        return Err(CycleTreeError::NotCycleTree(
            "no outer edge borders a triangle with an internal apex".into(),
        ));
    };
    // Recover the actual (u, w) orientation along the outer walk.
    let iu = outer.iter().position(|&v| v == a).unwrap();
    let (u, w) = if outer[(iu + 1) % m] == b {
        (a, b)
    } else {
        (b, a)
    };
    // The path runs from u the long way around the outer cycle to w.
    let iu = outer.iter().position(|&v| v == u).unwrap();
    let path: Vec<VertexId> = (0..m).map(|j| outer[(iu + m - j) % m]).collect();
    debug_assert_eq!((path[0], *path.last().unwrap()), (u, w));
    let cut = pg.graph().without_edge(u, w);
    let spq = build_spq_parts(&cut, &path, z, ct.internal())?;
    let d = draw_template(&spq, spq.root(), DrawingTemplate::new(1, 1).unwrap())?;
    // Reinsert (u, w) with one bend just left of everything: from u (the
    // bottom-left extreme) one unit further left on ρ's level, then up to w.
    let xu = d.x(u).unwrap().clone();
    let reinserted = EdgeGeom {
        u,
        v: w,
        bends: vec![(xu - coord(1), 0)],
    };
    let positions = d.positions().clone();
    let edges: Vec<EdgeGeom> = d
        .edges()
        .iter()
        .filter(|e| !added.contains(&edge(e.u, e.v)))
        .cloned()
        .chain([reinserted])
        .collect();
    let out = PolylineDrawing::new(positions, edges);
    debug_assert!(check_geometric(&out).is_valid(), "span-4 drawing invalid");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_3conn_lower, gen_random_cycle_tree};
    use crate::graph::{build_graph, planar_embedding};

    fn k4() -> CycleTreeInstance {
        let g = build_graph(1..=4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let pg = planar_embedding(&g).unwrap();
        let pg = PlaneGraph::new(g, pg.rotation_map().clone(), Some(&[2, 3, 4])).unwrap();
        super::super::recognize_cycle_tree(&pg).unwrap()
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
        super::super::recognize_cycle_tree(&pg).unwrap()
    }

    fn assert_draws(ct: &CycleTreeInstance) -> PolylineDrawing {
        let d = draw_3conn_cycle_tree(ct).unwrap();
        assert!(check_geometric(&d).is_valid());
        assert_eq!(d.graph(), ct.plane_graph().graph().clone(), "graph mismatch");
        assert!(d.span() <= 4, "span {}", d.span());
        d
    }

    #[test]
    fn k4_draws_with_span_at_most_4() {
        assert_draws(&k4());
    }

    #[test]
    fn wheels_draw_with_span_at_most_4() {
        for rim in 5..=9 {
            assert_draws(&wheel(rim));
        }
    }

    #[test]
    fn lower_bound_family_needs_exactly_span_4() {
        let ct = gen_3conn_lower(43).unwrap();
        let d = assert_draws(&ct);
        assert_eq!(d.span(), 4);
    }

    #[test]
    fn random_instances_draw_with_span_at_most_4() {
        for seed in 0..10 {
            let ct = gen_random_cycle_tree(40, true, seed).unwrap();
            assert_draws(&ct);
        }
    }

    #[test]
    fn non_3connected_input_is_rejected() {
        // A wheel with one pendant internal vertex.
        let mut edges = vec![(0u64, 6u64)];
        for i in 1..=5u64 {
            edges.push((0, i));
            edges.push((i, if i == 5 { 1 } else { i + 1 }));
        }
        let g = build_graph(0..=6, edges).unwrap();
        let pg = planar_embedding(&g).unwrap();
        let pg = PlaneGraph::new(g, pg.rotation_map().clone(), Some(&[1, 2, 3, 4, 5])).unwrap();
        let ct = super::super::recognize_cycle_tree(&pg).unwrap();
        assert_eq!(draw_3conn_cycle_tree(&ct), Err(CycleTreeError::Not3Connected));
    }
}
