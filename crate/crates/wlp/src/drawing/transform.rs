//! The weak-to-strict level doubling transform and queue-layout extraction.

use std::collections::BTreeMap;

use super::check::{check_normalized, materialize, normalize};
use super::{
    Chain, DrawingError, Invalidity, Item, ItemKind, NormalizedDrawing, PolylineDrawing, Verdict,
};
use crate::graph::{edge, Edge, VertexId};

/// Turn a valid weakly leveled drawing (span `s`, height `h`) into a strictly
/// leveled one with span at most `2s + 1` and height at most `2h + 1`, on the
/// same vertex set.
///
/// Construction: each level `i` becomes `2i`; the horizontal edges of one
/// level form vertex-disjoint paths (forced by planarity and the
/// consecutiveness condition), and alternating vertices of each such path
/// are lifted to level `2i + 1`. Every former horizontal edge then has span
/// 1, and every former span-`d` edge has span at most `2d + 1`.
pub fn weak_to_strict(d: &PolylineDrawing) -> Result<PolylineDrawing, DrawingError> {
    let nd = normalize(d).map_err(|e| DrawingError::InvalidInput(e.to_string()))?;
    match check_normalized(&nd)? {
        Verdict::Valid => {}
        Verdict::Invalid(v) => {
            return Err(DrawingError::InvalidInput(format!(
                "input drawing is invalid: {v:?}"
            )))
        }
    }
    // Rank of each item within its level.
    let mut rank: Vec<usize> = vec![0; nd.items().len()];
    for order in nd.orders().values() {
        for (i, &id) in order.iter().enumerate() {
            rank[id] = i;
        }
    }
    // Horizontal adjacency between items (span-0 chains only); each item has
    // at most two horizontal neighbors and the components are paths.
    let mut hneighbors: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for ch in nd.chains() {
        if ch.items.len() == 2 {
            let (a, b) = (ch.items[0], ch.items[1]);
            if nd.items()[a].level == nd.items()[b].level {
                hneighbors.entry(a).or_default().push(b);
                hneighbors.entry(b).or_default().push(a);
            }
        }
    }
    // Lift assignment: walk each horizontal path from its leftmost end,
    // alternating starting with "not lifted".
    let mut lift: Vec<bool> = vec![false; nd.items().len()];
    let mut seen: Vec<bool> = vec![false; nd.items().len()];
    for (&start, nbs) in &hneighbors {
        if seen[start] || nbs.len() != 1 {
            continue;
        }
        // Choose the end with the smaller rank as the path start.
        let mut path = vec![start];
        let mut prev = start;
        let mut cur = nbs[0];
        loop {
            path.push(cur);
            let next = hneighbors[&cur].iter().find(|&&x| x != prev).copied();
            match next {
                Some(n) => {
                    prev = cur;
                    cur = n;
                }
                None => break,
            }
        }
        if rank[*path.last().unwrap()] < rank[path[0]] {
            path.reverse();
        }
        for (i, &id) in path.iter().enumerate() {
            seen[id] = true;
            lift[id] = i % 2 == 1;
        }
    }

    // New structure: item at old level l maps to level 2l (+1 when lifted);
    // each old inter-level step gains up to two fresh subdivision points.
    let mut new_items: Vec<Item> = Vec::new();
    // Sort key: (primary old rank, virtual flag, secondary old rank).
    let mut entries: BTreeMap<i64, Vec<((usize, u8, usize), usize)>> = BTreeMap::new();
    let mut old_to_new: Vec<usize> = vec![usize::MAX; nd.items().len()];
    for (id, item) in nd.items().iter().enumerate() {
        let nl = 2 * item.level + i64::from(lift[id]);
        let nid = new_items.len();
        new_items.push(Item {
            kind: item.kind,
            level: nl,
        });
        old_to_new[id] = nid;
        entries.entry(nl).or_default().push(((rank[id], 0, 0), nid));
    }
    let mut new_chains: Vec<Chain> = Vec::new();
    for (ci, ch) in nd.chains().iter().enumerate() {
        let mut seq: Vec<usize> = vec![old_to_new[ch.items[0]]];
        for w in ch.items.windows(2) {
            let (p, q) = (w[0], w[1]);
            let (lp, lq) = (nd.items()[p].level, nd.items()[q].level);
            if lp != lq {
                let (a, b, ascending) = if lp < lq { (p, q, true) } else { (q, p, false) };
                let la = nd.items()[a].level;
                let mut mids: Vec<usize> = Vec::new();
                if !lift[a] {
                    let nid = new_items.len();
                    new_items.push(Item {
                        kind: ItemKind::Virtual { chain: ci },
                        level: 2 * la + 1,
                    });
                    entries
                        .entry(2 * la + 1)
                        .or_default()
                        .push(((rank[a], 1, rank[b]), nid));
                    mids.push(nid);
                }
                if lift[b] {
                    let nid = new_items.len();
                    new_items.push(Item {
                        kind: ItemKind::Virtual { chain: ci },
                        level: 2 * la + 2,
                    });
                    entries
                        .entry(2 * la + 2)
                        .or_default()
                        .push(((rank[b], 1, rank[a]), nid));
                    mids.push(nid);
                }
                if !ascending {
                    mids.reverse();
                }
                seq.extend(mids);
            }
            seq.push(old_to_new[q]);
        }
        new_chains.push(Chain {
            u: ch.u,
            v: ch.v,
            items: seq,
        });
    }
    let mut orders: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (lvl, mut es) in entries {
        es.sort();
        orders.insert(lvl, es.into_iter().map(|(_, id)| id).collect());
    }
    let out_nd = NormalizedDrawing::new(new_items, orders, new_chains);
    debug_assert_eq!(check_normalized(&out_nd)?, Verdict::Valid);
    Ok(materialize(&out_nd))
}

/// Queue layout extracted from a valid drawing: vertex order (level, then x),
/// one queue per distinct edge span. Span-0 edges always form a queue of
/// their own (their endpoints are consecutive in the order, so they cannot
/// nest anything), and two same-span edges between the same level pair
/// cannot nest without crossing in the drawing; hence at most `s + 1` queues
/// for a span-`s` drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueueLayout {
    /// Vertex total order, left to right.
    pub order: Vec<VertexId>,
    /// Queue index per edge.
    pub queues: BTreeMap<Edge, usize>,
    pub num_queues: usize,
}

impl QueueLayout {
    /// All nesting violations: pairs of same-queue edges (a,b), (c,d) with
    /// a < c < d < b in the vertex order. Empty for any layout produced by
    /// [`queue_layout`].
    pub fn nesting_violations(&self) -> Vec<(Edge, Edge)> {
        let pos: BTreeMap<VertexId, usize> = self
            .order
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut by_queue: BTreeMap<usize, Vec<(usize, usize, Edge)>> = BTreeMap::new();
        for (&e, &q) in &self.queues {
            let (a, b) = (pos[&e.0], pos[&e.1]);
            by_queue
                .entry(q)
                .or_default()
                .push((a.min(b), a.max(b), e));
        }
        let mut out = Vec::new();
        for es in by_queue.values() {
            for i in 0..es.len() {
                for j in 0..es.len() {
                    let (a, b, e1) = es[i];
                    let (c, d, e2) = es[j];
                    if a < c && d < b {
                        out.push((e1, e2));
                    }
                }
            }
        }
        out
    }
}

pub fn queue_layout(d: &PolylineDrawing) -> Result<QueueLayout, DrawingError> {
    match super::check::check_geometric(d) {
        Verdict::Valid => {}
        Verdict::Invalid(Invalidity::Malformed { reason }) => {
            return Err(DrawingError::InvalidInput(reason))
        }
        Verdict::Invalid(v) => {
            return Err(DrawingError::InvalidInput(format!(
                "input drawing is invalid: {v:?}"
            )))
        }
    }
    let mut verts: Vec<VertexId> = d.positions().keys().copied().collect();
    verts.sort_by(|a, b| {
        let pa = &d.positions()[a];
        let pb = &d.positions()[b];
        pa.1.cmp(&pb.1).then(pa.0.cmp(&pb.0)).then(a.cmp(b))
    });
    let mut spans: Vec<i64> = d
        .edges()
        .iter()
        .map(|e| (d.level(e.u).unwrap() - d.level(e.v).unwrap()).abs())
        .collect();
    let mut distinct = spans.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let index: BTreeMap<i64, usize> = distinct
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();
    let queues: BTreeMap<Edge, usize> = d
        .edges()
        .iter()
        .zip(spans.drain(..))
        .map(|(e, s)| (edge(e.u, e.v), index[&s]))
        .collect();
    let layout = QueueLayout {
        order: verts,
        queues,
        num_queues: distinct.len(),
    };
    assert!(
        layout.nesting_violations().is_empty(),
        "span-bucketed queues of a planar leveled drawing cannot nest"
    );
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::super::{check_geometric, coord, EdgeGeom};
    use super::*;

    fn simple(
        positions: Vec<(VertexId, i64, i64)>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> PolylineDrawing {
        let pos = positions
            .into_iter()
            .map(|(v, x, l)| (v, (coord(x), l)))
            .collect();
        PolylineDrawing::new(
            pos,
            edges.into_iter().map(|(u, v)| EdgeGeom {
                u,
                v,
                bends: vec![],
            }),
        )
    }

    #[test]
    fn single_horizontal_edge_becomes_span_one() {
        let d = simple(vec![(1, 0, 0), (2, 1, 0)], vec![(1, 2)]);
        let s = weak_to_strict(&d).unwrap();
        assert_eq!(check_geometric(&s), Verdict::Valid);
        assert!(s.is_strictly_leveled());
        assert_eq!(s.span(), 1);
        assert_eq!(s.height(), 1);
    }

    #[test]
    fn triangle_with_horizontal_edge() {
        // C3: edge (1,2) horizontal at level 0, vertex 3 above.
        let d = simple(
            vec![(1, 0, 0), (2, 1, 0), (3, 0, 1)],
            vec![(1, 2), (2, 3), (1, 3)],
        );
        assert_eq!(check_geometric(&d), Verdict::Valid);
        let s = weak_to_strict(&d).unwrap();
        assert_eq!(check_geometric(&s), Verdict::Valid);
        assert!(s.is_strictly_leveled());
        assert!(s.span() <= 3);
        assert!(s.height() <= 3);
        assert_eq!(s.positions().len(), 3);
    }

    #[test]
    fn long_horizontal_path_alternates() {
        let d = simple(
            vec![(1, 0, 0), (2, 1, 0), (3, 2, 0), (4, 3, 0), (5, 4, 0)],
            vec![(1, 2), (2, 3), (3, 4), (4, 5)],
        );
        let s = weak_to_strict(&d).unwrap();
        assert_eq!(check_geometric(&s), Verdict::Valid);
        assert!(s.is_strictly_leveled());
        assert_eq!(s.span(), 1);
        assert_eq!(s.height(), 1);
    }

    #[test]
    fn already_strict_input_keeps_bounds() {
        let d = simple(vec![(1, 0, 0), (2, 0, 1), (3, 1, 2)], vec![(1, 2), (2, 3)]);
        let s = weak_to_strict(&d).unwrap();
        assert_eq!(check_geometric(&s), Verdict::Valid);
        assert!(s.span() <= 2 * d.span() + 1);
        assert!(s.height() <= 2 * d.height() + 1);
    }

    #[test]
    fn queue_layout_of_path_drawing() {
        let d = simple(vec![(1, 0, 0), (2, 0, 1), (3, 1, 2)], vec![(1, 2), (2, 3)]);
        let q = queue_layout(&d).unwrap();
        assert!(q.num_queues <= 2);
        assert!(q.nesting_violations().is_empty());
        assert_eq!(q.order, vec![1, 2, 3]);
    }

    #[test]
    fn star_on_two_levels_is_nesting_free() {
        let d = simple(
            vec![(1, 1, 0), (2, 0, 1), (3, 1, 1), (4, 2, 1)],
            vec![(1, 2), (1, 3), (1, 4)],
        );
        let q = queue_layout(&d).unwrap();
        assert!(q.num_queues <= 2);
        assert!(q.nesting_violations().is_empty());
    }

    #[test]
    fn invalid_drawing_is_rejected() {
        let d = simple(
            vec![(1, 0, 0), (2, 5, 1), (3, 5, 0), (4, 0, 1)],
            vec![(1, 2), (3, 4)],
        );
        assert!(weak_to_strict(&d).is_err());
        assert!(queue_layout(&d).is_err());
    }
}
