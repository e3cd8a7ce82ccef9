//! Geometric and combinatorial validity checkers, subdivision, and
//! re-materialization of drawings from per-level orders.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{
    coord, Chain, Coord, DrawingError, EdgeGeom, Invalidity, Item, ItemKind, NormalizedDrawing,
    PolylineDrawing, Verdict, VertexId,
};

/// Structural view of one edge: the full point sequence from `u` to `v`.
fn edge_points(
    d: &PolylineDrawing,
    e: &EdgeGeom,
) -> Result<Vec<(Coord, i64)>, DrawingError> {
    let &(ref xu, lu) = d
        .position(e.u)
        .ok_or(DrawingError::MissingLevel(e.u))?;
    let &(ref xv, lv) = d
        .position(e.v)
        .ok_or(DrawingError::MissingLevel(e.v))?;
    let mut pts = Vec::with_capacity(e.bends.len() + 2);
    pts.push((xu.clone(), lu));
    pts.extend(e.bends.iter().cloned());
    pts.push((xv.clone(), lv));
    // Weak monotonicity: horizontal edges are a single segment; all other
    // edges have strictly monotone levels along the polyline.
    if lu == lv {
        if !e.bends.is_empty() {
            return Err(DrawingError::NonMonotoneEdge(e.u, e.v));
        }
    } else {
        let dir = (lv - lu).signum();
        for w in pts.windows(2) {
            if (w[1].1 - w[0].1).signum() != dir {
                return Err(DrawingError::NonMonotoneEdge(e.u, e.v));
            }
        }
    }
    Ok(pts)
}

/// Exact geometric validity: every vertex on its level, every edge weakly
/// y-monotone, and no two points/segments intersect except at shared
/// endpoints. The verdict carries the first violation found in a fixed
/// deterministic traversal order.
pub fn check_geometric(d: &PolylineDrawing) -> Verdict {
    // Collect point sequences; structural problems are verdicts here, not
    // errors.
    let mut polylines: Vec<Vec<(Coord, i64)>> = Vec::with_capacity(d.edges().len());
    for e in d.edges() {
        match edge_points(d, e) {
            Ok(p) => polylines.push(p),
            Err(err) => {
                return Verdict::Invalid(Invalidity::Malformed {
                    reason: err.to_string(),
                })
            }
        }
    }
    for w in d.edges().windows(2) {
        if (w[0].u, w[0].v) == (w[1].u, w[1].v) {
            return Verdict::Invalid(Invalidity::Malformed {
                reason: format!("duplicate edge ({}, {})", w[0].u, w[0].v),
            });
        }
    }

    // Coincident drawing points (vertices and bends alike).
    let mut by_point: BTreeMap<(i64, Coord), usize> = BTreeMap::new();
    let mut add_point = |x: &Coord, l: i64| -> bool {
        let n = by_point.entry((l, x.clone())).or_insert(0);
        *n += 1;
        *n > 1
    };
    for (_, &(ref x, l)) in d.positions() {
        if add_point(x, l) {
            return Verdict::Invalid(Invalidity::CoincidentPoints { level: l });
        }
    }
    for e in d.edges() {
        for (x, l) in &e.bends {
            if add_point(x, *l) {
                return Verdict::Invalid(Invalidity::CoincidentPoints { level: *l });
            }
        }
    }

    // Vertices must not lie in the interior of non-incident edges. (Bends on
    // foreign segments are caught by the segment tests below.)
    for (&v, &(ref x, l)) in d.positions() {
        for (ei, e) in d.edges().iter().enumerate() {
            if e.u == v || e.v == v {
                continue;
            }
            for seg in polylines[ei].windows(2) {
                if point_in_segment_interior(x, l, &seg[0], &seg[1]) {
                    return Verdict::Invalid(Invalidity::PointOnSegment {
                        vertex: v,
                        edge: (e.u, e.v),
                    });
                }
            }
        }
    }

    // Pairwise segment intersection with y-interval bucketing. Segments of
    // the same edge are skipped: adjacent ones share exactly their bend and
    // strict monotonicity keeps non-adjacent ones on disjoint level ranges.
    struct Seg {
        edge: usize,
        p: (Coord, i64),
        q: (Coord, i64),
        lo: i64,
        hi: i64,
    }
    let mut segs: Vec<Seg> = Vec::new();
    for (ei, pts) in polylines.iter().enumerate() {
        for w in pts.windows(2) {
            let (lo, hi) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
            segs.push(Seg {
                edge: ei,
                p: w[0].clone(),
                q: w[1].clone(),
                lo,
                hi,
            });
        }
    }
    let mut buckets: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, s) in segs.iter().enumerate() {
        buckets.entry(s.lo).or_default().push(i);
    }
    let edges = d.edges();
    for (i, a) in segs.iter().enumerate() {
        for (_, bucket) in buckets.range(a.lo..=a.hi) {
            for &j in bucket {
                if j <= i {
                    continue;
                }
                let b = &segs[j];
                if b.lo > a.hi || b.hi < a.lo || a.edge == b.edge {
                    continue;
                }
                let (e1, e2) = (&edges[a.edge], &edges[b.edge]);
                let shared = shared_vertex(e1, e2).map(|v| {
                    let &(ref x, l) = d.position(v).unwrap();
                    (x.clone(), l)
                });
                if segments_conflict(&a.p, &a.q, &b.p, &b.q, shared.as_ref()) {
                    return Verdict::Invalid(Invalidity::CrossingSegments {
                        first: (e1.u, e1.v),
                        second: (e2.u, e2.v),
                    });
                }
            }
        }
    }
    Verdict::Valid
}

fn shared_vertex(a: &EdgeGeom, b: &EdgeGeom) -> Option<VertexId> {
    [a.u, a.v].into_iter().find(|&x| x == b.u || x == b.v)
}

/// Signed area orientation of (a, b, c): >0 counterclockwise, 0 collinear.
/// Small integer coordinates (the common case after compaction) are handled
/// in machine arithmetic; anything else falls back to exact rationals.
fn orient(a: &(Coord, i64), b: &(Coord, i64), c: &(Coord, i64)) -> i32 {
    fn small(x: &Coord) -> Option<i64> {
        use num_traits::ToPrimitive;
        if x.is_integer() {
            x.to_integer().to_i64().filter(|v| v.abs() < (1 << 30))
        } else {
            None
        }
    }
    if let (Some(ax), Some(bx), Some(cx)) = (small(&a.0), small(&b.0), small(&c.0)) {
        if a.1.abs() < (1 << 30) && b.1.abs() < (1 << 30) && c.1.abs() < (1 << 30) {
            let v = (bx - ax) as i128 * (c.1 - a.1) as i128
                - (b.1 - a.1) as i128 * (cx - ax) as i128;
            return v.signum() as i32;
        }
    }
    let ax = &a.0;
    let ay = coord(a.1);
    let bx = &b.0;
    let by = coord(b.1);
    let cx = &c.0;
    let cy = coord(c.1);
    let v = (bx - ax) * (&cy - &ay) - (&by - &ay) * (cx - ax);
    if v.is_zero() {
        0
    } else if v > Coord::zero() {
        1
    } else {
        -1
    }
}

fn point_on_closed_segment(p: &(Coord, i64), a: &(Coord, i64), b: &(Coord, i64)) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let (lo, hi) = (a.1.min(b.1), a.1.max(b.1));
    if p.1 < lo || p.1 > hi {
        return false;
    }
    let (xlo, xhi) = if a.0 <= b.0 {
        (&a.0, &b.0)
    } else {
        (&b.0, &a.0)
    };
    &p.0 >= xlo && &p.0 <= xhi
}

fn point_in_segment_interior(x: &Coord, l: i64, a: &(Coord, i64), b: &(Coord, i64)) -> bool {
    let p = (x.clone(), l);
    point_on_closed_segment(&p, a, b) && p != *a && p != *b
}

/// `true` when segments [p1,p2] and [q1,q2] share any point other than an
/// allowed common endpoint.
fn segments_conflict(
    p1: &(Coord, i64),
    p2: &(Coord, i64),
    q1: &(Coord, i64),
    q2: &(Coord, i64),
    allowed: Option<&(Coord, i64)>,
) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if d1 != d2 && d3 != d4 && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0 {
        // Proper crossing.
        return true;
    }
    // Collinear or touching cases: collect endpoint-on-segment incidences.
    let mut touches: Vec<(Coord, i64)> = Vec::new();
    for p in [p1, p2] {
        if point_on_closed_segment(p, q1, q2) {
            touches.push(p.clone());
        }
    }
    for q in [q1, q2] {
        if point_on_closed_segment(q, p1, p2) && !touches.contains(q) {
            touches.push(q.clone());
        }
    }
    if touches.is_empty() {
        return false;
    }
    if touches.len() > 1 {
        // Collinear overlap in more than one point.
        return true;
    }
    let t = &touches[0];
    // A single touch point is fine only if it is the allowed shared endpoint
    // and is an endpoint of both segments.
    !(Some(t) == allowed
        && (t == p1 || t == p2)
        && (t == q1 || t == q2))
}

/// Split each edge at every level it crosses and read off the per-level
/// left-to-right orders from the x-coordinates.
pub fn normalize(d: &PolylineDrawing) -> Result<NormalizedDrawing, DrawingError> {
    let mut items: Vec<Item> = Vec::new();
    let mut at_level: BTreeMap<i64, Vec<(Coord, usize)>> = BTreeMap::new();
    let mut vertex_item: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (&v, &(ref x, l)) in d.positions() {
        let id = items.len();
        items.push(Item {
            kind: ItemKind::Real(v),
            level: l,
        });
        vertex_item.insert(v, id);
        at_level.entry(l).or_default().push((x.clone(), id));
    }
    let mut chains: Vec<Chain> = Vec::new();
    for (ci, e) in d.edges().iter().enumerate() {
        let pts = edge_points(d, e)?;
        let (lu, lv) = (pts[0].1, pts[pts.len() - 1].1);
        let mut chain_items = vec![vertex_item[&e.u]];
        if lu != lv {
            let dir = (lv - lu).signum();
            let mut lvl = lu + dir;
            while lvl != lv {
                let x = x_at_level(&pts, lvl);
                let id = items.len();
                items.push(Item {
                    kind: ItemKind::Virtual { chain: ci },
                    level: lvl,
                });
                at_level.entry(lvl).or_default().push((x, id));
                chain_items.push(id);
                lvl += dir;
            }
        }
        chain_items.push(vertex_item[&e.v]);
        chains.push(Chain {
            u: e.u,
            v: e.v,
            items: chain_items,
        });
    }
    let mut orders: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (lvl, mut v) in at_level {
        v.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for w in v.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(DrawingError::CoincidentPoints(lvl));
            }
        }
        orders.insert(lvl, v.into_iter().map(|(_, id)| id).collect());
    }
    Ok(NormalizedDrawing::new(items, orders, chains))
}

/// x-coordinate where the polyline crosses level `lvl` (which must lie
/// strictly between two consecutive polyline points, or on a bend).
fn x_at_level(pts: &[(Coord, i64)], lvl: i64) -> Coord {
    for p in pts {
        if p.1 == lvl {
            return p.0.clone();
        }
    }
    for w in pts.windows(2) {
        let (lo, hi) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
        if lvl > lo && lvl < hi {
            let t = coord(lvl - w[0].1) / coord(w[1].1 - w[0].1);
            return &w[0].0 + (&w[1].0 - &w[0].0) * t;
        }
    }
    unreachable!("level {lvl} not crossed by polyline");
}

/// Combinatorial validity of a subdivided drawing:
///
/// - condition (i): the endpoints of every same-level edge are consecutive
///   in that level's order;
/// - condition (ii): for independent edges between consecutive levels, the
///   lower order determines the upper order (no inversion).
pub fn check_normalized(nd: &NormalizedDrawing) -> Result<Verdict, DrawingError> {
    let bad = |m: String| DrawingError::InconsistentSubdivision(m);
    // Item bookkeeping: every item appears exactly once at its own level.
    let mut pos: Vec<Option<usize>> = vec![None; nd.items().len()];
    for (lvl, order) in nd.orders() {
        for (i, &id) in order.iter().enumerate() {
            let item = nd
                .items()
                .get(id)
                .ok_or_else(|| bad(format!("unknown item id {id}")))?;
            if item.level != *lvl {
                return Err(bad(format!("item {id} listed on level {lvl}")));
            }
            if pos[id].replace(i).is_some() {
                return Err(bad(format!("item {id} listed twice")));
            }
        }
    }
    if let Some(id) = pos.iter().position(|p| p.is_none()) {
        return Err(bad(format!("item {id} missing from the level orders")));
    }
    let pos: Vec<usize> = pos.into_iter().map(Option::unwrap).collect();

    // Chain shape: endpoints real, interior virtual and owned, levels moving
    // in unit steps (or one span-0 step).
    for (ci, ch) in nd.chains().iter().enumerate() {
        if ch.items.len() < 2 {
            return Err(bad(format!("chain {ci} too short")));
        }
        let first = &nd.items()[ch.items[0]];
        let last = &nd.items()[*ch.items.last().unwrap()];
        if first.kind != ItemKind::Real(ch.u) || last.kind != ItemKind::Real(ch.v) {
            return Err(bad(format!("chain {ci} endpoints do not match its edge")));
        }
        for &mid in &ch.items[1..ch.items.len() - 1] {
            if nd.items()[mid].kind != (ItemKind::Virtual { chain: ci }) {
                return Err(bad(format!("chain {ci} passes through a foreign item")));
            }
        }
        let levels: Vec<i64> = ch.items.iter().map(|&id| nd.items()[id].level).collect();
        let span0 = levels.len() == 2 && levels[0] == levels[1];
        if !span0 {
            let dir = (levels[levels.len() - 1] - levels[0]).signum();
            if dir == 0 || levels.windows(2).any(|w| w[1] - w[0] != dir) {
                return Err(bad(format!("chain {ci} levels are not unit-monotone")));
            }
        }
    }

    // Condition (i).
    for ch in nd.chains() {
        if ch.items.len() == 2 {
            let (a, b) = (ch.items[0], ch.items[1]);
            let (la, lb) = (nd.items()[a].level, nd.items()[b].level);
            if la == lb && pos[a].abs_diff(pos[b]) != 1 {
                return Ok(Verdict::Invalid(Invalidity::NotConsecutive {
                    level: la,
                    u: ch.u,
                    v: ch.v,
                }));
            }
        }
    }

    // Condition (ii): per gap, collect (lower pos, upper pos, chain) and
    // compare independent pairs.
    let mut gaps: BTreeMap<i64, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for (ci, ch) in nd.chains().iter().enumerate() {
        for w in ch.items.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (la, lb) = (nd.items()[a].level, nd.items()[b].level);
            if la == lb {
                continue;
            }
            let (lower, upper, lvl) = if la < lb { (a, b, la) } else { (b, a, lb) };
            gaps.entry(lvl)
                .or_default()
                .push((pos[lower], pos[upper], ci));
        }
    }
    for (lvl, mut edges) in gaps {
        edges.sort_unstable();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a1, b1, c1) = edges[i];
                let (a2, b2, c2) = edges[j];
                // After sorting, a1 <= a2. Independent pairs must satisfy
                // b1 <= b2 as well (shared endpoints are unconstrained).
                if a1 != a2 && b1 != b2 && b1 > b2 {
                    let ch1 = &nd.chains()[c1];
                    let ch2 = &nd.chains()[c2];
                    return Ok(Verdict::Invalid(Invalidity::OrderFlip {
                        level: lvl,
                        first: (ch1.u, ch1.v),
                        second: (ch2.u, ch2.v),
                    }));
                }
            }
        }
    }
    Ok(Verdict::Valid)
}

/// Rebuild a polyline drawing from per-level orders: x = rank within level,
/// subdivision items become bends. The input must be valid (condition (i)
/// and (ii)); then the output passes [`check_geometric`], because every
/// segment connects consecutive levels and order consistency excludes
/// crossings.
pub fn materialize(nd: &NormalizedDrawing) -> PolylineDrawing {
    let mut pos_of: BTreeMap<usize, (Coord, i64)> = BTreeMap::new();
    for (lvl, order) in nd.orders() {
        for (i, &id) in order.iter().enumerate() {
            pos_of.insert(id, (coord(i as i64), *lvl));
        }
    }
    let mut positions: BTreeMap<VertexId, (Coord, i64)> = BTreeMap::new();
    for (id, item) in nd.items().iter().enumerate() {
        if let ItemKind::Real(v) = item.kind {
            positions.insert(v, pos_of[&id].clone());
        }
    }
    let edges = nd.chains().iter().map(|ch| EdgeGeom {
        u: ch.u,
        v: ch.v,
        bends: ch.items[1..ch.items.len() - 1]
            .iter()
            .map(|id| pos_of[id].clone())
            .collect(),
    });
    PolylineDrawing::new(positions, edges)
}

/// Normalize then re-materialize: produces an equivalent drawing whose
/// x-coordinates are small integers (ranks). Validity is preserved in both
/// directions.
pub fn canonicalize(d: &PolylineDrawing) -> Result<PolylineDrawing, DrawingError> {
    Ok(materialize(&normalize(d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn simple(positions: Vec<(VertexId, i64, i64)>, edges: Vec<(VertexId, VertexId)>) -> PolylineDrawing {
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
    fn disjoint_edges_are_valid() {
        let d = simple(
            vec![(1, 0, 0), (2, 0, 1), (3, 5, 0), (4, 5, 1)],
            vec![(1, 2), (3, 4)],
        );
        assert_eq!(check_geometric(&d), Verdict::Valid);
        assert_eq!(check_normalized(&normalize(&d).unwrap()).unwrap(), Verdict::Valid);
    }

    #[test]
    fn x_crossing_is_reported_by_both_checkers() {
        let d = simple(
            vec![(1, 0, 0), (2, 5, 1), (3, 5, 0), (4, 0, 1)],
            vec![(1, 2), (3, 4)],
        );
        assert!(matches!(
            check_geometric(&d),
            Verdict::Invalid(Invalidity::CrossingSegments { .. })
        ));
        assert!(matches!(
            check_normalized(&normalize(&d).unwrap()).unwrap(),
            Verdict::Invalid(Invalidity::OrderFlip { .. })
        ));
    }

    #[test]
    fn overlapping_horizontal_edges_are_invalid() {
        // (1,3) drawn from x=0 to x=2 overlaps (2,4) from x=1 to x=3.
        let d = simple(
            vec![(1, 0, 0), (3, 2, 0), (2, 1, 0), (4, 3, 0)],
            vec![(1, 3), (2, 4)],
        );
        assert!(!check_geometric(&d).is_valid());
        assert!(!check_normalized(&normalize(&d).unwrap())
            .unwrap()
            .is_valid());
    }

    #[test]
    fn vertex_between_horizontal_endpoints_violates_condition_one() {
        let d = simple(vec![(1, 0, 0), (2, 2, 0), (3, 1, 0)], vec![(1, 2)]);
        assert!(matches!(
            check_normalized(&normalize(&d).unwrap()).unwrap(),
            Verdict::Invalid(Invalidity::NotConsecutive { level: 0, u: 1, v: 2 })
        ));
        // Geometrically the vertex sits on the segment's interior.
        assert!(matches!(
            check_geometric(&d),
            Verdict::Invalid(Invalidity::PointOnSegment { vertex: 3, .. })
        ));
    }

    #[test]
    fn bend_subdivision_counts_levels() {
        let pos = BTreeMap::from([(1, (coord(0), 0)), (2, (coord(2), 2))]);
        let d = PolylineDrawing::new(
            pos,
            [EdgeGeom {
                u: 1,
                v: 2,
                bends: vec![(coord(7), 1)],
            }],
        );
        let nd = normalize(&d).unwrap();
        assert_eq!(nd.items().len(), 3);
        assert_eq!(nd.chains()[0].items.len(), 3);
        assert_eq!(check_normalized(&nd).unwrap(), Verdict::Valid);
    }

    #[test]
    fn interpolated_crossing_detected_between_levels() {
        // Edges (1,2) and (3,4) cross between levels 0 and 2 at level 1.
        let pos = BTreeMap::from([
            (1, (coord(0), 0)),
            (2, (coord(4), 2)),
            (3, (coord(4), 0)),
            (4, (coord(0), 2)),
        ]);
        let d = PolylineDrawing::new(
            pos,
            [
                EdgeGeom { u: 1, v: 2, bends: vec![] },
                EdgeGeom { u: 3, v: 4, bends: vec![] },
            ],
        );
        assert!(!check_geometric(&d).is_valid());
        // The two edges cross exactly at level 1, x=2: coincident virtuals.
        assert_eq!(normalize(&d), Err(DrawingError::CoincidentPoints(1)));
    }

    #[test]
    fn materialize_round_trips_validity() {
        let pos = BTreeMap::from([
            (1, (coord_n(0), 0)),
            (2, (coord_n(17), 1)),
            (3, (coord_n(40), 0)),
        ]);
        let d = PolylineDrawing::new(
            pos,
            [
                EdgeGeom { u: 1, v: 2, bends: vec![] },
                EdgeGeom { u: 2, v: 3, bends: vec![] },
                EdgeGeom { u: 1, v: 3, bends: vec![] },
            ],
        );
        assert_eq!(check_geometric(&d), Verdict::Valid);
        let c = canonicalize(&d).unwrap();
        assert_eq!(check_geometric(&c), Verdict::Valid);
        assert_eq!(c.span(), d.span());
        assert_eq!(c.height(), d.height());
    }

    fn coord_n(i: i64) -> Coord {
        coord(i)
    }
}
