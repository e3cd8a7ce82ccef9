//! Constant-span drawings of SPQ decompositions.
//!
//! Every node of an SPQ tree admits, for each admissible template, a drawing
//! of its pertinent graph in which `ρ` sits on level 0, `λ` on level `-a`
//! and `r` on level `b` with `x(λ) < x(r)`, all edges have span at most 4,
//! and everything else stays inside the region bounded by the `λ–ρ–r` anchor
//! path and the vertical rays below its extremes. Drawings compose by
//! re-embedding a child drawing into a frame: an exact placement of its
//! anchor path inside the parent, preserving the child's left-to-right order
//! on every level.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::drawing::{
    check_geometric, coord, normalize, Chain, Coord, EdgeGeom, ItemKind, PolylineDrawing,
};
use crate::graph::VertexId;

use super::spq::{SpqKind, SpqTree};
use super::CycleTreeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemplateKind {
    /// `a` and `b` share a sign: λ and r lie on opposite sides of ρ.
    Flat,
    /// `a > 0 > b`: both λ and r lie below ρ.
    Roof,
}

/// Level offsets `(a, b)` prescribing `ℓ(λ) = ℓ(ρ) - a` and
/// `ℓ(r) = ℓ(ρ) + b`. Only six offset pairs occur in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DrawingTemplate {
    a: i64,
    b: i64,
}

pub const FLAT_TEMPLATES: [(i64, i64); 4] = [(-1, -1), (1, 1), (-1, -3), (3, 1)];
pub const ROOF_TEMPLATES: [(i64, i64); 2] = [(1, -3), (3, -1)];

impl DrawingTemplate {
    pub fn new(a: i64, b: i64) -> Result<Self, CycleTreeError> {
        if FLAT_TEMPLATES.contains(&(a, b)) || ROOF_TEMPLATES.contains(&(a, b)) {
            Ok(DrawingTemplate { a, b })
        } else {
            Err(CycleTreeError::InadmissibleTemplate)
        }
    }

    pub fn offsets(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    pub fn kind(&self) -> TemplateKind {
        if self.b < 0 && self.a > 0 {
            TemplateKind::Roof
        } else {
            TemplateKind::Flat
        }
    }
}

/// An exact placement for the anchor path `u–v–w` of a child drawing: the
/// three vertex positions plus the bend points of the two anchor edges
/// (listed from `u` to `v` and from `v` to `w`). The admissible region for
/// the child is bounded above by the anchor polyline and laterally by the
/// vertical rays going down from `u` and from `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub u: VertexId,
    pub v: VertexId,
    pub w: VertexId,
    pub pos_u: (Coord, i64),
    pub pos_v: (Coord, i64),
    pub pos_w: (Coord, i64),
    pub bends_uv: Vec<(Coord, i64)>,
    pub bends_vw: Vec<(Coord, i64)>,
}

impl Frame {
    /// Straight-line frame through the three positions.
    pub fn straight(
        u: (VertexId, (Coord, i64)),
        v: (VertexId, (Coord, i64)),
        w: (VertexId, (Coord, i64)),
    ) -> Self {
        Frame {
            u: u.0,
            v: v.0,
            w: w.0,
            pos_u: u.1,
            pos_v: v.1,
            pos_w: w.1,
            bends_uv: Vec::new(),
            bends_vw: Vec::new(),
        }
    }

    fn poly_uv(&self) -> Vec<(Coord, i64)> {
        let mut p = vec![self.pos_u.clone()];
        p.extend(self.bends_uv.iter().cloned());
        p.push(self.pos_v.clone());
        p
    }

    fn poly_vw(&self) -> Vec<(Coord, i64)> {
        let mut p = vec![self.pos_v.clone()];
        p.extend(self.bends_vw.iter().cloned());
        p.push(self.pos_w.clone());
        p
    }

    fn full(&self) -> Vec<(Coord, i64)> {
        let mut p = self.poly_uv();
        p.extend(self.poly_vw().into_iter().skip(1));
        p
    }
}

/// All x-coordinates where the polyline meets level `y`.
fn crossings(poly: &[(Coord, i64)], y: i64) -> Vec<Coord> {
    let mut xs = Vec::new();
    for seg in poly.windows(2) {
        let ((x0, y0), (x1, y1)) = (&seg[0], &seg[1]);
        if (y - y0) * (y - y1) > 0 {
            continue;
        }
        if y0 == y1 {
            xs.push(x0.clone());
            xs.push(x1.clone());
        } else {
            let t = BigRational::new((y - y0).into(), (y1 - y0).into());
            xs.push(x0 + (x1 - x0) * t);
        }
    }
    xs.sort();
    xs.dedup();
    xs
}

/// The unique crossing of a y-monotone polyline at level `y`.
fn cross_monotone(poly: &[(Coord, i64)], y: i64) -> Option<Coord> {
    crossings(poly, y).into_iter().next()
}

/// Re-embed a valid drawing into a frame for its anchor path `(u, v, w)`:
/// the anchor vertices and the subdivision points of the anchor edges are
/// pinned onto the frame polylines, every other point keeps its level and
/// its left-to-right rank but is re-spaced strictly inside the region. The
/// per-level orders of the input are preserved exactly, so validity carries
/// over.
pub fn geometric_realize(
    sub: &PolylineDrawing,
    frame: &Frame,
) -> Result<PolylineDrawing, CycleTreeError> {
    let mismatch = |m: String| CycleTreeError::FrameMismatch(m);
    for (x, pos) in [
        (frame.u, &frame.pos_u),
        (frame.v, &frame.pos_v),
        (frame.w, &frame.pos_w),
    ] {
        match sub.level(x) {
            Some(l) if l == pos.1 => {}
            Some(l) => {
                return Err(mismatch(format!(
                    "anchor vertex {x} is on level {l}, frame expects {}",
                    pos.1
                )))
            }
            None => return Err(mismatch(format!("anchor vertex {x} is not in the drawing"))),
        }
    }
    if frame.pos_u.0 >= frame.pos_w.0 {
        return Err(mismatch("frame extremes are not in left-to-right order".into()));
    }
    let nd = normalize(sub).map_err(|e| mismatch(e.to_string()))?;

    // Pin the anchor vertices and the anchor-edge subdivision points.
    let mut pin: BTreeMap<usize, Coord> = BTreeMap::new();
    for (x, pos) in [
        (frame.u, &frame.pos_u),
        (frame.v, &frame.pos_v),
        (frame.w, &frame.pos_w),
    ] {
        pin.insert(nd.item_of(x).unwrap(), pos.0.clone());
    }
    for (a, b, poly) in [
        (frame.u, frame.v, frame.poly_uv()),
        (frame.v, frame.w, frame.poly_vw()),
    ] {
        let Some(chain) = nd
            .chains()
            .iter()
            .find(|c| (c.u == a && c.v == b) || (c.u == b && c.v == a))
        else {
            continue;
        };
        for &it in &chain.items {
            if let ItemKind::Virtual { .. } = nd.items()[it].kind {
                let y = nd.items()[it].level;
                let x = cross_monotone(&poly, y)
                    .ok_or_else(|| mismatch(format!("anchor edge has no point on level {y}")))?;
                pin.insert(it, x);
            }
        }
    }

    let anchor = frame.full();
    let top = anchor.iter().map(|p| p.1).max().unwrap();
    let (lu, lw) = (frame.pos_u.1, frame.pos_w.1);
    let mut xs: BTreeMap<usize, Coord> = BTreeMap::new();
    for (&y, order) in nd.orders() {
        if y > top {
            return Err(mismatch(format!("level {y} lies above the frame")));
        }
        let lo = if y <= lu {
            frame.pos_u.0.clone()
        } else {
            crossings(&anchor, y)
                .into_iter()
                .next()
                .ok_or_else(|| mismatch(format!("no left boundary on level {y}")))?
        };
        let hi = if y <= lw {
            frame.pos_w.0.clone()
        } else {
            crossings(&anchor, y)
                .into_iter()
                .last()
                .ok_or_else(|| mismatch(format!("no right boundary on level {y}")))?
        };
        // Split the order at pinned items; spread each unpinned run evenly
        // in the open interval between its bounding pins (or the region
        // boundary).
        let mut run: Vec<usize> = Vec::new();
        let mut left = lo.clone();
        fn place(
            xs: &mut BTreeMap<usize, Coord>,
            run: &mut Vec<usize>,
            left: &Coord,
            right: &Coord,
            y: i64,
        ) -> Result<(), CycleTreeError> {
            if run.is_empty() {
                return Ok(());
            }
            if left >= right {
                return Err(CycleTreeError::FrameMismatch(format!(
                    "no room between pins on level {y}"
                )));
            }
            let m = run.len() as i64;
            for (j, &it) in run.iter().enumerate() {
                let t = BigRational::new((j as i64 + 1).into(), (m + 1).into());
                xs.insert(it, left + (right - left) * t);
            }
            run.clear();
            Ok(())
        }
        for &it in order {
            if let Some(px) = pin.get(&it) {
                place(&mut xs, &mut run, &left, px, y)?;
                if *px < left {
                    return Err(mismatch(format!("pinned items out of order on level {y}")));
                }
                xs.insert(it, px.clone());
                left = px.clone();
            } else {
                run.push(it);
            }
        }
        place(&mut xs, &mut run, &left, &hi, y)?;
        // Strict monotonicity across the whole level.
        let mut prev: Option<&Coord> = None;
        for &it in order {
            let x = &xs[&it];
            if let Some(p) = prev {
                if p >= x {
                    return Err(mismatch(format!("order collapses on level {y}")));
                }
            }
            prev = Some(x);
        }
    }

    let mut positions: BTreeMap<VertexId, (Coord, i64)> = BTreeMap::new();
    for (it, item) in nd.items().iter().enumerate() {
        if let ItemKind::Real(v) = item.kind {
            positions.insert(v, (xs[&it].clone(), item.level));
        }
    }
    let edges = nd.chains().iter().map(|c: &Chain| EdgeGeom {
        u: c.u,
        v: c.v,
        bends: c
            .items
            .iter()
            .filter(|&&it| matches!(nd.items()[it].kind, ItemKind::Virtual { .. }))
            .map(|&it| (xs[&it].clone(), nd.items()[it].level))
            .collect(),
    });
    Ok(PolylineDrawing::new(positions, edges))
}

/// Merge drawings of edge-disjoint-or-identical parts that agree on shared
/// vertex positions; duplicated edges (drawn identically by two siblings
/// pinned to the same frame) are kept once.
fn merge(acc: &mut PolylineDrawing, part: PolylineDrawing) {
    let mut positions = acc.positions().clone();
    for (v, p) in part.positions() {
        if let Some(q) = positions.get(v) {
            debug_assert_eq!(q, p, "parts disagree on the position of {v}");
        } else {
            positions.insert(*v, p.clone());
        }
    }
    let mut edges: Vec<EdgeGeom> = acc.edges().to_vec();
    for e in part.edges() {
        if !edges.iter().any(|f| (f.u, f.v) == (e.u, e.v)) {
            edges.push(e.clone());
        }
    }
    *acc = PolylineDrawing::new(positions, edges);
}

/// Draw the pertinent graph of `node` under the given template: `ρ` on level
/// 0, `λ` on level `-a`, `r` on level `b`, span at most 4. P-nodes admit
/// only flat templates.
pub fn draw_template(
    t: &SpqTree,
    node: usize,
    template: DrawingTemplate,
) -> Result<PolylineDrawing, CycleTreeError> {
    if t.node(node).kind == SpqKind::P && template.kind() == TemplateKind::Roof {
        return Err(CycleTreeError::InadmissibleTemplate);
    }
    let d = draw_any(t, node, template.offsets(), false);
    debug_assert!(check_geometric(&d).is_valid(), "template drawing invalid");
    Ok(d)
}

/// Negate all x-coordinates; levels are unchanged. Planarity and spans are
/// preserved, left-to-right orders reverse.
fn mirror_x(d: &PolylineDrawing) -> PolylineDrawing {
    let positions = d
        .positions()
        .iter()
        .map(|(&v, (x, y))| (v, (-x.clone(), *y)))
        .collect();
    let edges = d.edges().iter().map(|e| EdgeGeom {
        u: e.u,
        v: e.v,
        bends: e.bends.iter().map(|(x, y)| (-x.clone(), *y)).collect(),
    });
    PolylineDrawing::new(positions, edges)
}

/// The three primary templates; the other three arise by mirroring.
fn is_primary(ab: (i64, i64)) -> bool {
    matches!(ab, (1, 1) | (3, 1) | (3, -1))
}

/// Recursive constructor. `swap` records that the whole drawing will be
/// mirrored afterwards, so the roles of λ and r (and the child order of
/// P-nodes) are exchanged while drawing. Contract: writing `L`/`R` for the
/// effective extremes, the output has `ℓ(L) = -a`, `ℓ(ρ) = 0`, `ℓ(R) = b`
/// and `x(L) < x(R)`.
fn draw_any(t: &SpqTree, id: usize, (a, b): (i64, i64), swap: bool) -> PolylineDrawing {
    if !is_primary((a, b)) {
        // (a,b) is the mirror image of a primary template: draw that one
        // with the roles exchanged, then flip.
        return mirror_x(&draw_any(t, id, (-b, -a), !swap));
    }
    let n = t.node(id);
    let (ll, rr) = if swap { (n.r, n.lambda) } else { (n.lambda, n.r) };
    let (has_rl, has_rr) = if swap {
        (n.has_rho_r, n.has_rho_lambda)
    } else {
        (n.has_rho_lambda, n.has_rho_r)
    };
    match n.kind {
        SpqKind::Q => {
            let (pl, pp, pr) = match (a, b) {
                (1, 1) => ((0, -1), (1, 0), (4, 1)),
                (3, 1) => ((0, -3), (1, 0), (4, 1)),
                (3, -1) => ((0, -3), (1, 0), (2, -1)),
                _ => unreachable!(),
            };
            let positions = BTreeMap::from([
                (ll, (coord(pl.0), pl.1)),
                (n.rho, (coord(pp.0), pp.1)),
                (rr, (coord(pr.0), pr.1)),
            ]);
            let mut edges = Vec::new();
            if n.has_lambda_r {
                edges.push(straight(ll, rr));
            }
            if has_rl {
                edges.push(straight(n.rho, ll));
            }
            if has_rr {
                edges.push(straight(n.rho, rr));
            }
            PolylineDrawing::new(positions, edges)
        }
        SpqKind::S => draw_series(t, id, (a, b), swap, ll, rr, has_rl, has_rr),
        SpqKind::P => draw_parallel(t, id, (a, b), swap, ll, rr),
    }
}

fn straight(u: VertexId, v: VertexId) -> EdgeGeom {
    EdgeGeom {
        u,
        v,
        bends: Vec::new(),
    }
}

fn draw_series(
    t: &SpqTree,
    id: usize,
    (a, b): (i64, i64),
    swap: bool,
    ll: VertexId,
    rr: VertexId,
    has_rl: bool,
    has_rr: bool,
) -> PolylineDrawing {
    let n = t.node(id);
    let child = n.children[0];
    let rho_c = t.node(child).rho;
    // Skeleton coordinates per template; the child is re-embedded into the
    // frame spanned by (λ, ρ_ν, r).
    let (pos_l, pos_p, pos_c, pos_r, rl_bends, child_tpl) = match (a, b) {
        (1, 1) => ((1, -1), (2, 0), (3, 0), (6, 1), vec![], (1, 1)),
        (3, 1) => ((1, -3), (2, 0), (3, 0), (6, 1), vec![(coord(1), -1)], (3, 1)),
        (3, -1) => ((1, -3), (2, 0), (2, -2), (4, -1), vec![], (1, 1)),
        _ => unreachable!(),
    };
    let at = |p: (i64, i64)| (coord(p.0), p.1);
    let mut edges = vec![straight(n.rho, rho_c)];
    if has_rl {
        edges.push(EdgeGeom {
            u: n.rho,
            v: ll,
            bends: rl_bends,
        });
    }
    if has_rr {
        edges.push(straight(n.rho, rr));
    }
    let mut acc = PolylineDrawing::new(
        BTreeMap::from([(ll, at(pos_l)), (n.rho, at(pos_p)), (rr, at(pos_r))]),
        edges,
    );
    // The child is drawn with its own ρ on level 0; shift it down to the
    // frame's level for the roof construction.
    let sub = translate_levels(&draw_any(t, child, child_tpl, swap), pos_c.1);
    let frame = Frame::straight((ll, at(pos_l)), (rho_c, at(pos_c)), (rr, at(pos_r)));
    let realized = geometric_realize(&sub, &frame).expect("series frame fits its child");
    merge(&mut acc, realized);
    acc
}

/// Shift every level by `dy`; x-coordinates are unchanged.
pub(crate) fn translate_levels(d: &PolylineDrawing, dy: i64) -> PolylineDrawing {
    let positions = d
        .positions()
        .iter()
        .map(|(&v, (x, y))| (v, (x.clone(), y + dy)))
        .collect();
    let edges = d.edges().iter().map(|e| EdgeGeom {
        u: e.u,
        v: e.v,
        bends: e.bends.iter().map(|(x, y)| (x.clone(), y + dy)).collect(),
    });
    PolylineDrawing::new(positions, edges)
}

fn draw_parallel(
    t: &SpqTree,
    id: usize,
    (a, b): (i64, i64),
    swap: bool,
    ll: VertexId,
    rr: VertexId,
) -> PolylineDrawing {
    let n = t.node(id);
    debug_assert!(matches!((a, b), (1, 1) | (3, 1)));
    let kids: Vec<usize> = if swap {
        n.children.iter().rev().copied().collect()
    } else {
        n.children.clone()
    };
    let k = kids.len() as i64;
    // Effective λ of the i-th child (1-based); the chain property makes it
    // the effective r of child i−1.
    let eff_l = |i: usize| {
        let c = t.node(kids[i - 1]);
        if swap {
            c.r
        } else {
            c.lambda
        }
    };
    debug_assert_eq!(eff_l(1), ll);
    // λ_{ν_i} alternates between one and three levels below ρ; which parity
    // goes deep depends on the template.
    let lvl = |i: i64| {
        let deep_odd = a == 3;
        if (i % 2 == 1) == deep_odd {
            -3
        } else {
            -1
        }
    };
    let rho_pos = (coord(k + 1), 0);
    let mut acc = PolylineDrawing::new(
        BTreeMap::from([(n.rho, rho_pos.clone()), (rr, (coord(2 * k + 3), 1))]),
        Vec::<EdgeGeom>::new(),
    );
    for i in 1..=k {
        let u_v = eff_l(i as usize);
        let u_pos = (coord(i), lvl(i));
        let (w_v, w_pos) = if i < k {
            (eff_l(i as usize + 1), (coord(i + 1), lvl(i + 1)))
        } else {
            (rr, (coord(2 * k + 3), 1))
        };
        let child_tpl = (-u_pos.1, w_pos.1);
        let bend_at = |p: &(Coord, i64)| {
            if p.1 == -3 {
                vec![(p.0.clone(), -1)]
            } else {
                vec![]
            }
        };
        let frame = Frame {
            u: u_v,
            v: n.rho,
            w: w_v,
            pos_u: u_pos.clone(),
            pos_v: rho_pos.clone(),
            pos_w: w_pos.clone(),
            // The fan edge to a deep λ drops vertically after a bend one
            // level below ρ's level.
            bends_uv: bend_at(&u_pos),
            bends_vw: if i < k { bend_at(&w_pos) } else { vec![] },
        };
        let sub = draw_any(t, kids[i as usize - 1], child_tpl, swap);
        let realized = geometric_realize(&sub, &frame).expect("parallel frame fits its child");
        merge(&mut acc, realized);
    }
    debug_assert_eq!(acc.level(ll), Some(-a));
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, MarkedGraph};

    fn spq_of(
        vs: std::ops::RangeInclusive<u64>,
        es: &[(u64, u64)],
        rho: u64,
        lambda: u64,
        r: u64,
    ) -> SpqTree {
        let g = build_graph(vs, es.iter().copied()).unwrap();
        let mg = MarkedGraph::new(
            g,
            BTreeMap::from([
                ("rho".to_string(), rho),
                ("lambda".to_string(), lambda),
                ("r".to_string(), r),
            ]),
        )
        .unwrap();
        super::super::build_spq(&mg).unwrap()
    }

    fn triangle() -> SpqTree {
        spq_of(1..=3, &[(1, 2), (1, 3), (2, 3)], 1, 2, 3)
    }

    fn fan() -> SpqTree {
        spq_of(
            0..=4,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)],
            0,
            1,
            4,
        )
    }

    fn stacked() -> SpqTree {
        spq_of(
            0..=4,
            &[
                (0, 1),
                (0, 3),
                (0, 4),
                (4, 1),
                (4, 2),
                (4, 3),
                (1, 2),
                (2, 3),
            ],
            0,
            1,
            3,
        )
    }

    fn check_contract(t: &SpqTree, (a, b): (i64, i64)) {
        let tpl = DrawingTemplate::new(a, b).unwrap();
        let d = draw_template(t, t.root(), tpl).unwrap();
        let n = t.node(t.root());
        assert!(check_geometric(&d).is_valid(), "invalid for ({a},{b})");
        assert_eq!(d.level(n.rho), Some(0));
        assert_eq!(d.level(n.lambda), Some(-a), "λ offset for ({a},{b})");
        assert_eq!(d.level(n.r), Some(b), "r offset for ({a},{b})");
        assert!(d.span() <= 4, "span {} for ({a},{b})", d.span());
        assert_eq!(
            d.graph(),
            t.assemble(),
            "drawn graph differs for ({a},{b})"
        );
    }

    #[test]
    fn q_node_templates_meet_the_contract() {
        let t = triangle();
        for ab in FLAT_TEMPLATES.iter().chain(&ROOF_TEMPLATES) {
            check_contract(&t, *ab);
        }
        // The (1,1)-flat triangle keeps every edge at span ≤ 2.
        let d = draw_template(&t, t.root(), DrawingTemplate::new(1, 1).unwrap()).unwrap();
        assert!(d.span() <= 2);
    }

    #[test]
    fn p_node_flat_templates_meet_the_contract() {
        let t = fan();
        for ab in FLAT_TEMPLATES {
            check_contract(&t, ab);
        }
    }

    #[test]
    fn p_node_rejects_roof_templates() {
        let t = fan();
        for (a, b) in ROOF_TEMPLATES {
            assert_eq!(
                draw_template(&t, t.root(), DrawingTemplate::new(a, b).unwrap()),
                Err(CycleTreeError::InadmissibleTemplate)
            );
        }
    }

    #[test]
    fn s_node_templates_meet_the_contract() {
        let t = stacked();
        for ab in FLAT_TEMPLATES.iter().chain(&ROOF_TEMPLATES) {
            check_contract(&t, *ab);
        }
    }

    #[test]
    fn unknown_offsets_are_rejected() {
        assert!(DrawingTemplate::new(2, 1).is_err());
        assert!(DrawingTemplate::new(-3, -1).is_err());
    }

    #[test]
    fn identity_frame_preserves_a_drawing_up_to_respacing() {
        let t = stacked();
        let d = draw_template(&t, t.root(), DrawingTemplate::new(1, 1).unwrap()).unwrap();
        let n = t.node(t.root());
        let frame = Frame::straight(
            (n.lambda, d.position(n.lambda).unwrap().clone()),
            (n.rho, d.position(n.rho).unwrap().clone()),
            (n.r, d.position(n.r).unwrap().clone()),
        );
        let r = geometric_realize(&d, &frame).unwrap();
        assert!(check_geometric(&r).is_valid());
        // Same levels and left-to-right orders as the input.
        assert_eq!(normalize(&d).unwrap().orders(), normalize(&r).unwrap().orders());
    }

    #[test]
    fn reversed_frame_is_rejected() {
        let t = triangle();
        let d = draw_template(&t, t.root(), DrawingTemplate::new(1, 1).unwrap()).unwrap();
        let frame = Frame::straight(
            (2, (coord(10), -1)),
            (1, (coord(5), 0)),
            (3, (coord(0), 1)),
        );
        assert!(matches!(
            geometric_realize(&d, &frame),
            Err(CycleTreeError::FrameMismatch(_))
        ));
    }

    #[test]
    fn narrow_frame_still_fits_exactly() {
        let t = fan();
        let d = draw_template(&t, t.root(), DrawingTemplate::new(1, 1).unwrap()).unwrap();
        let n = t.node(t.root());
        let frame = Frame::straight(
            (n.lambda, (coord(0), -1)),
            (n.rho, (crate::drawing::coord_frac(1, 3), 0)),
            (n.r, (crate::drawing::coord_frac(2, 3), 1)),
        );
        let r = geometric_realize(&d, &frame).unwrap();
        assert!(check_geometric(&r).is_valid());
    }
}
