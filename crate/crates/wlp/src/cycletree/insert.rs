//! Corridor insertions: drawing a stripped tree component or a maximal
//! outerplanar component into the region immediately right of a host edge.
//!
//! Both insertions work on the subdivided form of the host drawing: the new
//! items are spliced into the per-level orders directly after the host
//! edge's item on each level, so every new chain stays inside the corridor
//! bounded by the host edge on the left. Order validity is preserved because
//! the inserted block keeps a consistent relative order on every level and
//! attaches to the host only at the corridor endpoints.

use std::collections::BTreeMap;

use crate::drawing::{
    check_normalized, materialize, normalize, Chain, Item, ItemKind, NormalizedDrawing,
    PolylineDrawing, Verdict,
};
use crate::graph::{edge, is_connected, planar_embedding, Edge, Graph, MarkedGraph, VertexId};

use super::CycleTreeError;

/// One insertion request against a shared host drawing.
#[derive(Debug, Clone)]
pub(crate) enum InsertJob {
    /// A tree rooted at `root`, drawn beside the host edge `(x, u)`: the
    /// root connects to `x`, every tree vertex connects to `u`.
    Subtree {
        x: VertexId,
        u: VertexId,
        tree: Graph,
        root: VertexId,
    },
    /// A maximal outerplanar component containing the host edge `(u, v)`,
    /// drawn y-monotone inside the levels spanned by that edge.
    Outerplanar { comp: Graph, u: VertexId, v: VertexId },
}

/// Insert a tree beside the host edge `(x, u)`. The root is drawn one level
/// inward of `x`; at every node the heaviest child (largest subtree, ties by
/// smallest id) stays on its parent's level via a horizontal edge, all other
/// children move one level further. This keeps the corridor depth at most
/// `1 + ceil(log2 |tree|)`. Output edges: all tree edges, `(root, x)`, and
/// `(z, u)` for every tree vertex `z`.
pub fn insert_subtree(
    host: &PolylineDrawing,
    x: VertexId,
    u: VertexId,
    tree: &Graph,
    root: VertexId,
) -> Result<PolylineDrawing, CycleTreeError> {
    splice_jobs(
        host,
        &[InsertJob::Subtree {
            x,
            u,
            tree: tree.clone(),
            root,
        }],
    )
}

/// Insert a maximal outerplanar component (marks `u`, `v`) beside the host
/// edge `(u, v)`, keeping `u` strictly lowest and `v` strictly highest among
/// the component's vertices (up to a vertical flip when `v` lies below `u`).
/// A component consisting of the edge `(u, v)` alone is an identity.
pub fn insert_outerplanar(
    host: &PolylineDrawing,
    comp: &MarkedGraph,
) -> Result<PolylineDrawing, CycleTreeError> {
    let (u, v) = outerplanar_marks(comp)?;
    splice_jobs(
        host,
        &[InsertJob::Outerplanar {
            comp: comp.graph.clone(),
            u,
            v,
        }],
    )
}

/// Minimum number of levels the edge `(u, v)` must span in the host for
/// [`insert_outerplanar`] to succeed on this component.
pub fn outerplanar_need(comp: &MarkedGraph) -> Result<i64, CycleTreeError> {
    let (u, v) = outerplanar_marks(comp)?;
    if comp.graph.num_vertices() == 2 {
        return Ok(1);
    }
    let poly = Polygon::new(&comp.graph, u, v)?;
    let t = poly.q.len() - 1;
    poly.need(0, t, false, false)
}

fn outerplanar_marks(comp: &MarkedGraph) -> Result<(VertexId, VertexId), CycleTreeError> {
    let u = comp
        .mark("u")
        .ok_or_else(|| CycleTreeError::NotCycleTree("missing mark 'u'".into()))?;
    let v = comp
        .mark("v")
        .ok_or_else(|| CycleTreeError::NotCycleTree("missing mark 'v'".into()))?;
    Ok((u, v))
}

/// Run a batch of insertions against one host drawing with a single
/// normalize/materialize round trip. Later jobs on the same host edge end up
/// closer to that edge, pushing earlier insertions to the right; every job's
/// chains attach to the host only at the corridor endpoints, so the splices
/// stay independent.
pub(crate) fn splice_jobs(
    host: &PolylineDrawing,
    jobs: &[InsertJob],
) -> Result<PolylineDrawing, CycleTreeError> {
    let nd = normalize(host)
        .map_err(|e| CycleTreeError::NotCycleTree(format!("host drawing rejected: {e}")))?;
    let mut sp = Splicer::new(&nd);
    for job in jobs {
        match job {
            InsertJob::Subtree { x, u, tree, root } => sp.subtree(*x, *u, tree, *root)?,
            InsertJob::Outerplanar { comp, u, v } => sp.outerplanar(comp, *u, *v)?,
        }
    }
    Ok(sp.finish(&nd))
}

struct Splicer {
    items: Vec<Item>,
    chains: Vec<Chain>,
    chain_idx: BTreeMap<Edge, usize>,
    item_of: BTreeMap<VertexId, usize>,
    /// Blocks to splice directly after an anchor item: `(level, anchor) ->
    /// one block per job`, later jobs ending up nearer the anchor.
    pending: BTreeMap<(i64, usize), Vec<Vec<usize>>>,
}

/// Per-job accumulation: the new item ids per level, in left-to-right order.
type Block = BTreeMap<i64, Vec<usize>>;

impl Splicer {
    fn new(nd: &NormalizedDrawing) -> Self {
        let items = nd.items().to_vec();
        let chains = nd.chains().to_vec();
        let chain_idx = chains
            .iter()
            .enumerate()
            .map(|(i, c)| (edge(c.u, c.v), i))
            .collect();
        let item_of = items
            .iter()
            .enumerate()
            .filter_map(|(i, it)| match it.kind {
                ItemKind::Real(v) => Some((v, i)),
                ItemKind::Virtual { .. } => None,
            })
            .collect();
        Splicer {
            items,
            chains,
            chain_idx,
            item_of,
            pending: BTreeMap::new(),
        }
    }

    fn level_of(&self, v: VertexId) -> Result<i64, CycleTreeError> {
        let &id = self
            .item_of
            .get(&v)
            .ok_or_else(|| CycleTreeError::NotCycleTree(format!("vertex {v} not in host")))?;
        Ok(self.items[id].level)
    }

    fn host_chain(&self, a: VertexId, b: VertexId) -> Result<usize, CycleTreeError> {
        self.chain_idx.get(&edge(a, b)).copied().ok_or_else(|| {
            CycleTreeError::NotCycleTree(format!("host edge ({a}, {b}) missing"))
        })
    }

    /// Item of chain `ci` on each level it touches.
    fn chain_levels(&self, ci: usize) -> BTreeMap<i64, usize> {
        self.chains[ci]
            .items
            .iter()
            .map(|&id| (self.items[id].level, id))
            .collect()
    }

    fn add_real(&mut self, v: VertexId, level: i64) -> Result<usize, CycleTreeError> {
        if self.item_of.contains_key(&v) {
            return Err(CycleTreeError::NotCycleTree(format!(
                "vertex {v} already present in host"
            )));
        }
        let id = self.items.len();
        self.items.push(Item {
            kind: ItemKind::Real(v),
            level,
        });
        self.item_of.insert(v, id);
        Ok(id)
    }

    /// New chain from item `ia` (vertex `a`) to item `ib` (vertex `b`), with
    /// virtual items at every intermediate level pushed into `block`.
    fn add_chain(
        &mut self,
        a: VertexId,
        ia: usize,
        b: VertexId,
        ib: usize,
        block: &mut Block,
    ) {
        let (la, lb) = (self.items[ia].level, self.items[ib].level);
        let ci = self.chains.len();
        let mut its = vec![ia];
        if la != lb {
            let step = (lb - la).signum();
            let mut lvl = la + step;
            while lvl != lb {
                let id = self.items.len();
                self.items.push(Item {
                    kind: ItemKind::Virtual { chain: ci },
                    level: lvl,
                });
                block.entry(lvl).or_default().push(id);
                its.push(id);
                lvl += step;
            }
        }
        its.push(ib);
        self.chains.push(Chain { u: a, v: b, items: its });
    }

    /// Queue a finished block for splicing after the host chain `ci`'s item
    /// on each level.
    fn queue(&mut self, ci: usize, block: Block) -> Result<(), CycleTreeError> {
        let anchors = self.chain_levels(ci);
        for (lvl, ids) in block {
            let &anchor = anchors.get(&lvl).ok_or_else(|| {
                CycleTreeError::NotCycleTree(format!(
                    "insertion leaves the corridor at level {lvl}"
                ))
            })?;
            self.pending.entry((lvl, anchor)).or_default().push(ids);
        }
        Ok(())
    }

    fn subtree(
        &mut self,
        x: VertexId,
        u: VertexId,
        tree: &Graph,
        root: VertexId,
    ) -> Result<(), CycleTreeError> {
        if !tree.contains_vertex(root) {
            return Err(CycleTreeError::NotCycleTree(format!(
                "root {root} not in the tree"
            )));
        }
        if !is_connected(tree) || tree.num_edges() != tree.num_vertices() - 1 {
            return Err(CycleTreeError::NotCycleTree(
                "inserted component is not a tree".into(),
            ));
        }
        let ci = self.host_chain(x, u)?;
        let (lx, lu) = (self.level_of(x)?, self.level_of(u)?);
        let have = (lx - lu).abs();
        let dir = (lx - lu).signum();

        // Root the tree; order children non-heavy first (ascending id), the
        // heaviest last so it can share its parent's level.
        let mut kids: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        let mut order = vec![root];
        let mut seen = std::collections::BTreeSet::from([root]);
        let mut i = 0;
        while i < order.len() {
            let z = order[i];
            i += 1;
            for &c in tree.neighbors(z) {
                if seen.insert(c) {
                    kids.entry(z).or_default().push(c);
                    order.push(c);
                }
            }
        }
        let mut size: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &z in order.iter().rev() {
            let s = 1 + kids
                .get(&z)
                .map_or(0, |cs| cs.iter().map(|c| size[c]).sum::<usize>());
            size.insert(z, s);
        }
        for cs in kids.values_mut() {
            cs.sort_unstable();
            if let Some(hi) = cs
                .iter()
                .enumerate()
                .max_by_key(|&(_, c)| (size[c], std::cmp::Reverse(*c)))
                .map(|(i, _)| i)
            {
                let heavy = cs.remove(hi);
                cs.push(heavy);
            }
        }
        // Depth below x: root at 1; heavy child keeps its parent's depth.
        let mut depth: BTreeMap<VertexId, i64> = BTreeMap::from([(root, 1)]);
        for &z in &order {
            let d = depth[&z];
            if let Some(cs) = kids.get(&z) {
                for (j, &c) in cs.iter().enumerate() {
                    let heavy = j + 1 == cs.len();
                    depth.insert(c, if heavy { d } else { d + 1 });
                }
            }
        }
        let need = depth.values().max().copied().unwrap_or(1) + 1;
        if dir == 0 || need > have {
            return Err(CycleTreeError::CorridorTooShort { have, need });
        }

        let iu = self.item_of[&u];
        let ix = self.item_of[&x];
        let mut it: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &z in &order {
            it.insert(z, self.add_real(z, lx - dir * depth[&z])?);
        }
        let mut block = Block::new();
        // Emit a node: its (z, u) chain's virtuals, the node itself, then
        // its subtree; children in the precomputed order. On every level the
        // per-job sequence of pushes is the block's left-to-right order.
        let mut stack = vec![(root, false)];
        self.add_chain(root, it[&root], x, ix, &mut block);
        while let Some((z, expanded)) = stack.pop() {
            if !expanded {
                self.add_chain(z, it[&z], u, iu, &mut block);
                block.entry(self.items[it[&z]].level).or_default().push(it[&z]);
                stack.push((z, true));
            } else if let Some(cs) = kids.get(&z) {
                for &c in cs.iter().rev() {
                    self.add_chain(z, it[&z], c, it[&c], &mut block);
                    stack.push((c, false));
                }
            }
        }
        self.queue(ci, block)
    }

    fn outerplanar(
        &mut self,
        comp: &Graph,
        u: VertexId,
        v: VertexId,
    ) -> Result<(), CycleTreeError> {
        if !comp.has_edge(u, v) {
            return Err(CycleTreeError::NotCycleTree(
                "component does not contain the host edge".into(),
            ));
        }
        let ci = self.host_chain(u, v)?;
        if comp.num_vertices() == 2 {
            return Ok(());
        }
        let (lu, lv) = (self.level_of(u)?, self.level_of(v)?);
        let (h, dir) = ((lv - lu).abs(), (lv - lu).signum());
        if dir == 0 {
            return Err(CycleTreeError::BudgetExceeded(
                "host edge is horizontal".into(),
            ));
        }
        let poly = Polygon::new(comp, u, v)?;
        let t = poly.q.len() - 1;
        let need = poly.need(0, t, false, false)?;
        if need > h {
            return Err(CycleTreeError::BudgetExceeded(format!(
                "component needs {need} levels, host edge spans {h}"
            )));
        }
        let mut rel: BTreeMap<usize, i64> = BTreeMap::from([(0, 0), (t, need)]);
        poly.assign(0, t, 0, need, false, false, &mut rel)?;
        // Interior vertices map linearly from u's side; v keeps its host
        // level, any slack is absorbed by the edges into v.
        let actual = |k: usize| -> i64 {
            if k == 0 {
                lu
            } else if k == t {
                lv
            } else {
                lu + dir * rel[&k]
            }
        };
        let mut it: BTreeMap<usize, usize> = BTreeMap::from([
            (0, self.item_of[&u]),
            (t, self.item_of[&v]),
        ]);
        for k in 1..t {
            it.insert(k, self.add_real(poly.q[k], actual(k))?);
        }
        let mut block = Block::new();
        // Interval emission: the edge into the apex, then the apex itself
        // (so same-level runs of ear apexes stay consecutive), the lower
        // sub-interval, the edge out of the apex, the upper sub-interval.
        // The boundary edge (q0, qt) is the host edge and is not re-drawn.
        let mut stack = vec![(0usize, t, false)];
        while let Some((i, j, past_apex)) = stack.pop() {
            if j == i + 1 {
                continue;
            }
            let k = poly.apex(i, j)?;
            if !past_apex {
                self.add_chain(poly.q[i], it[&i], poly.q[k], it[&k], &mut block);
                block.entry(actual(k)).or_default().push(it[&k]);
                stack.push((i, j, true));
                stack.push((i, k, false));
            } else {
                self.add_chain(poly.q[k], it[&k], poly.q[j], it[&j], &mut block);
                stack.push((k, j, false));
            }
        }
        self.queue(ci, block)
    }

    fn finish(self, nd: &NormalizedDrawing) -> PolylineDrawing {
        let mut orders = nd.orders().clone();
        for (lvl, order) in orders.iter_mut() {
            let mut out: Vec<usize> = Vec::with_capacity(order.len());
            for &id in order.iter() {
                out.push(id);
                if let Some(blocks) = self.pending.get(&(*lvl, id)) {
                    for blk in blocks.iter().rev() {
                        out.extend(blk.iter().copied());
                    }
                }
            }
            *order = out;
        }
        let out = NormalizedDrawing::new(self.items, orders, self.chains);
        debug_assert_eq!(
            check_normalized(&out),
            Ok(Verdict::Valid),
            "insertion broke order validity"
        );
        materialize(&out)
    }
}

/// A maximal outerplanar component viewed as a triangulated polygon over the
/// boundary path `q0 = u, ..., qt = v` (the outer cycle minus the host
/// edge). Level requirements follow the ear structure: an ear over a path
/// endpoint may share that endpoint's level only when the connecting edge is
/// a boundary (arc) edge; chords are never horizontal.
struct Polygon {
    q: Vec<VertexId>,
    g: Graph,
}

impl Polygon {
    fn new(g: &Graph, u: VertexId, v: VertexId) -> Result<Self, CycleTreeError> {
        let n = g.num_vertices();
        let bad = |m: &str| CycleTreeError::NotCycleTree(m.into());
        if n < 3 {
            return Err(bad("component too small"));
        }
        if g.num_edges() != 2 * n - 3 {
            return Err(bad("component is not maximal outerplanar"));
        }
        if planar_embedding(g).is_none() {
            return Err(bad("component is not planar"));
        }
        // Boundary edges are the ones lying in exactly one triangle; in an
        // outerplanar graph no vertex sits inside a triangle, so triangles
        // and common neighbors of adjacent vertices coincide.
        let mut boundary: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (a, b) in g.edges() {
            let na: std::collections::BTreeSet<VertexId> = g.neighbors(a).iter().copied().collect();
            let common = g.neighbors(b).iter().filter(|c| na.contains(c)).count();
            if common == 1 {
                boundary.entry(a).or_default().push(b);
                boundary.entry(b).or_default().push(a);
            }
        }
        if boundary.len() != n || boundary.values().any(|bs| bs.len() != 2) {
            return Err(bad("component has no boundary cycle through all vertices"));
        }
        if !boundary[&u].contains(&v) {
            return Err(bad("host edge is not on the component boundary"));
        }
        // Walk the boundary from u the long way around to v.
        let mut q = vec![u];
        let mut prev = v;
        while *q.last().unwrap() != v {
            let cur = *q.last().unwrap();
            let &next = boundary[&cur].iter().find(|&&w| w != prev).unwrap();
            prev = cur;
            q.push(next);
            if q.len() > n {
                return Err(bad("component boundary is not a single cycle"));
            }
        }
        if q.len() != n {
            return Err(bad("component boundary is not a single cycle"));
        }
        Ok(Polygon { q, g: g.clone() })
    }

    /// Unique common neighbor of `q[i]` and `q[j]` strictly inside the
    /// interval: the apex of the triangle closing this sub-polygon.
    fn apex(&self, i: usize, j: usize) -> Result<usize, CycleTreeError> {
        let mut found = None;
        for k in i + 1..j {
            if self.g.has_edge(self.q[i], self.q[k]) && self.g.has_edge(self.q[k], self.q[j]) {
                if found.replace(k).is_some() {
                    return Err(CycleTreeError::NotCycleTree(
                        "component is not maximal outerplanar".into(),
                    ));
                }
            }
        }
        found.ok_or_else(|| {
            CycleTreeError::NotCycleTree("component is not maximal outerplanar".into())
        })
    }

    /// Levels needed to draw the sub-polygon over `q[i..=j]` with its ends
    /// `allow_*` level-sharing flags (true only while the connecting edge is
    /// an arc edge of the boundary).
    fn need(&self, i: usize, j: usize, aa: bool, ab: bool) -> Result<i64, CycleTreeError> {
        if j == i + 1 {
            return Ok(1);
        }
        let k = self.apex(i, j)?;
        if k == i + 1 {
            Ok(i64::from(!aa) + self.need(k, j, true, ab)?)
        } else if k == j - 1 {
            Ok(self.need(i, k, aa, true)? + i64::from(!ab))
        } else {
            // Both sides nonempty: the apex has one horizontal slot per
            // side; the lower side's grant is consumed by its top ear, so
            // the upper side must rise.
            Ok(self.need(i, k, aa, true)? + self.need(k, j, false, ab)?)
        }
    }

    /// Assign relative levels matching [`Polygon::need`], endpoints pinned
    /// at `la` and `lb`.
    fn assign(
        &self,
        i: usize,
        j: usize,
        la: i64,
        lb: i64,
        aa: bool,
        ab: bool,
        rel: &mut BTreeMap<usize, i64>,
    ) -> Result<(), CycleTreeError> {
        if j == i + 1 {
            return Ok(());
        }
        let k = self.apex(i, j)?;
        if k == i + 1 {
            let lc = la + i64::from(!aa);
            rel.insert(k, lc);
            self.assign(k, j, lc, lb, true, ab, rel)
        } else if k == j - 1 {
            let lc = lb - i64::from(!ab);
            rel.insert(k, lc);
            self.assign(i, k, la, lc, aa, true, rel)
        } else {
            let lc = la + self.need(i, k, aa, true)?;
            rel.insert(k, lc);
            self.assign(i, k, la, lc, aa, true, rel)?;
            self.assign(k, j, lc, lb, false, ab, rel)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{check_geometric, coord, EdgeGeom};
    use crate::graph::build_graph;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// A host drawing consisting of the single vertical edge `(a, b)`.
    fn host_edge(a: VertexId, b: VertexId, span: i64) -> PolylineDrawing {
        let positions = BTreeMap::from([(a, (coord(0), 0)), (b, (coord(0), span))]);
        PolylineDrawing::new(positions, [EdgeGeom { u: a, v: b, bends: vec![] }])
    }

    fn assert_valid(d: &PolylineDrawing) {
        assert!(check_geometric(d).is_valid(), "invalid drawing");
    }

    #[test]
    fn single_vertex_subtree_sits_one_level_inward() {
        let host = host_edge(1, 2, 5);
        let tree = build_graph([10u64], []).unwrap();
        let d = insert_subtree(&host, 2, 1, &tree, 10).unwrap();
        assert_valid(&d);
        assert_eq!(d.level(10), Some(4));
        let g = d.graph();
        assert!(g.has_edge(10, 1) && g.has_edge(10, 2));
        assert_eq!(g.num_edges(), 3);
    }

    #[test]
    fn path_tree_stays_on_a_single_level() {
        // A path rooted at one end: every node's only child is heavy, so
        // the whole path shares the root's level.
        let host = host_edge(1, 2, 5);
        let edges: Vec<(u64, u64)> = (10..16).map(|i| (i, i + 1)).collect();
        let tree = build_graph(10..=16, edges).unwrap();
        let d = insert_subtree(&host, 2, 1, &tree, 10).unwrap();
        assert_valid(&d);
        for z in 10..=16 {
            assert_eq!(d.level(z), Some(4), "vertex {z}");
        }
        assert_eq!(d.graph().num_edges(), 1 + 6 + 1 + 7);
    }

    fn complete_btree(lo: u64, n: u64) -> (Graph, u64) {
        let edges: Vec<(u64, u64)> = (2..=n)
            .map(|k| (lo + k / 2 - 1, lo + k - 1))
            .collect();
        (build_graph(lo..lo + n, edges).unwrap(), lo)
    }

    #[test]
    fn complete_binary_tree_respects_log_depth() {
        let host = host_edge(1, 2, 6);
        let (tree, root) = complete_btree(10, 15);
        let d = insert_subtree(&host, 2, 1, &tree, root).unwrap();
        assert_valid(&d);
        // Depth at most 1 + ceil(log2 15) = 4 below x's level 6.
        for z in 10..25 {
            let l = d.level(z).unwrap();
            assert!((2..=5).contains(&l), "vertex {z} at level {l}");
        }
    }

    #[test]
    fn short_corridor_is_rejected() {
        let host = host_edge(1, 2, 2);
        let (tree, root) = complete_btree(10, 15);
        assert!(matches!(
            insert_subtree(&host, 2, 1, &tree, root),
            Err(CycleTreeError::CorridorTooShort { have: 2, .. })
        ));
    }

    #[test]
    fn horizontal_host_edge_is_rejected_for_subtrees() {
        let positions = BTreeMap::from([(1, (coord(0), 0)), (2, (coord(1), 0))]);
        let host = PolylineDrawing::new(positions, [EdgeGeom { u: 1, v: 2, bends: vec![] }]);
        let tree = build_graph([10u64], []).unwrap();
        assert!(matches!(
            insert_subtree(&host, 2, 1, &tree, 10),
            Err(CycleTreeError::CorridorTooShort { have: 0, .. })
        ));
    }

    fn marked(g: Graph, u: VertexId, v: VertexId) -> MarkedGraph {
        MarkedGraph::new(g, BTreeMap::from([("u".into(), u), ("v".into(), v)])).unwrap()
    }

    #[test]
    fn triangle_component_uses_an_intermediate_level() {
        let host = host_edge(1, 2, 5);
        let comp = marked(
            build_graph(1..=3, [(1, 2), (1, 3), (2, 3)]).unwrap(),
            1,
            2,
        );
        assert_eq!(outerplanar_need(&comp), Ok(2));
        let d = insert_outerplanar(&host, &comp).unwrap();
        assert_valid(&d);
        assert_eq!(d.level(3), Some(1));
        assert_eq!(d.graph().num_edges(), 3);
    }

    fn fan6() -> MarkedGraph {
        let mut edges = vec![(1u64, 2u64), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)];
        edges.extend([(1, 3), (1, 4), (1, 5)]);
        marked(build_graph(1..=6, edges).unwrap(), 1, 6)
    }

    #[test]
    fn fan_fits_within_its_stated_need() {
        let comp = fan6();
        assert_eq!(outerplanar_need(&comp), Ok(3));
        for span in [3, 5] {
            let d = insert_outerplanar(&host_edge(1, 6, span), &comp).unwrap();
            assert_valid(&d);
            assert_eq!(d.graph(), comp.graph);
        }
    }

    #[test]
    fn tight_host_edge_rejects_the_fan() {
        assert!(matches!(
            insert_outerplanar(&host_edge(1, 6, 2), &fan6()),
            Err(CycleTreeError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn single_edge_component_is_an_identity() {
        let host = host_edge(1, 2, 4);
        let comp = marked(build_graph(1..=2, [(1, 2)]).unwrap(), 1, 2);
        let d = insert_outerplanar(&host, &comp).unwrap();
        assert_valid(&d);
        assert_eq!(d.graph(), host.graph());
        assert_eq!(d.level(1), Some(0));
        assert_eq!(d.level(2), Some(4));
    }

    #[test]
    fn stacked_jobs_share_one_corridor() {
        let host = host_edge(1, 2, 5);
        let comp = marked(
            build_graph(1..=3, [(1, 2), (1, 3), (2, 3)]).unwrap(),
            1,
            2,
        );
        let tree = build_graph([10u64], []).unwrap();
        let jobs = [
            InsertJob::Outerplanar { comp: comp.graph.clone(), u: 1, v: 2 },
            InsertJob::Subtree { x: 2, u: 1, tree, root: 10 },
        ];
        let d = splice_jobs(&host, &jobs).unwrap();
        assert_valid(&d);
        assert_eq!(d.graph().num_edges(), 3 + 2);
    }

    /// Random maximal outerplanar component over the path `1..=n` with host
    /// edge `(1, n)`: cycle edges plus a uniformly random triangulation.
    fn random_outerplanar(n: u64, rng: &mut StdRng) -> MarkedGraph {
        let mut edges: Vec<(u64, u64)> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        let mut stack = vec![(1u64, n)];
        while let Some((i, j)) = stack.pop() {
            if j <= i + 1 {
                continue;
            }
            let k = rng.gen_range(i + 1..j);
            if k > i + 1 {
                edges.push((i, k));
                stack.push((i, k));
            }
            if k < j - 1 {
                edges.push((k, j));
                stack.push((k, j));
            }
        }
        marked(build_graph(1..=n, edges).unwrap(), 1, n)
    }

    #[test]
    fn random_outerplanar_components_insert_validly() {
        let mut rng = StdRng::seed_from_u64(7);
        for trial in 0..120 {
            let n = rng.gen_range(3..=12);
            let comp = random_outerplanar(n, &mut rng);
            let need = outerplanar_need(&comp).unwrap();
            let slack = rng.gen_range(0..=3);
            let d = insert_outerplanar(&host_edge(1, n, need + slack), &comp).unwrap();
            assert!(
                check_geometric(&d).is_valid(),
                "trial {trial} n={n} need={need} slack={slack}"
            );
            assert_eq!(d.graph(), comp.graph, "trial {trial}");
        }
    }

    #[test]
    fn random_subtrees_insert_validly() {
        let mut rng = StdRng::seed_from_u64(11);
        for trial in 0..80 {
            let n = rng.gen_range(1..=20u64);
            let edges: Vec<(u64, u64)> = (11..10 + n)
                .map(|i| (rng.gen_range(10..i), i))
                .collect();
            let tree = build_graph(10..10 + n, edges).unwrap();
            let host = host_edge(1, 2, 8);
            match insert_subtree(&host, 2, 1, &tree, 10) {
                Ok(d) => {
                    assert!(check_geometric(&d).is_valid(), "trial {trial} n={n}");
                    assert_eq!(d.graph().num_edges() as u64, (n - 1) + n + 1 + 1);
                }
                Err(CycleTreeError::CorridorTooShort { need, .. }) => {
                    // Only very unbalanced trees outgrow the corridor; the
                    // guaranteed bound is 2 + ceil(log2 n).
                    assert!(need > 8, "trial {trial} n={n} need={need}");
                }
                Err(e) => panic!("trial {trial}: {e}"),
            }
        }
    }
}
