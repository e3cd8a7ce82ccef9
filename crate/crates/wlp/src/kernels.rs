//! Kernelizations for span-bounded drawing instances, parameterized by
//! vertex cover, component modulator, and treedepth.
//!
//! Each kernelization shrinks an instance `(G, s)` to an equivalent one whose
//! size depends only on the parameter, by capping the number of
//! interchangeable pieces hanging off the parameter structure: pendant and
//! subdivision vertices for a vertex cover, equivalent small components for a
//! modulator, and the same applied bottom-up along a treedepth decomposition.
//! Every removal is recorded in a [`ReductionTrace`]; for the vertex-cover
//! kernel the trace supports [`vc_reinsert`], which lifts a drawing of the
//! kernel back to a drawing of the original graph without increasing the
//! span. When the span budget already exceeds the parameter threshold the
//! instance is a YES instance outright ([`threshold_check`]) and
//! [`draw_large_s_witness`] produces a witness drawing directly.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::drawing::{
    check_normalized, materialize, normalize, st_leveled_drawing, Chain, DrawingError, EdgeGeom,
    Item, ItemKind, NormalizedDrawing, PolylineDrawing, Verdict,
};
use crate::graph::{build_graph, edge, planar_embedding, Edge, Graph, MarkedGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("not a vertex cover: {0}")]
    InvalidCover(String),
    #[error("not a valid modulator: {0}")]
    InvalidModulator(String),
    #[error("not a valid treedepth decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("component has {0} attachments, at most 2 are comparable")]
    TooManyAttachments(usize),
    #[error("no surviving sibling for anchors {anchors:?}: the drawing exceeds the span budget used during kernelization")]
    NoSiblingFound { anchors: Vec<VertexId> },
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

// ---------------------------------------------------------------------------
// Parameter structures
// ---------------------------------------------------------------------------

/// A set of vertices touching every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCover {
    cover: BTreeSet<VertexId>,
}

impl VertexCover {
    pub fn new(g: &Graph, cover: BTreeSet<VertexId>) -> Result<Self, KernelError> {
        check_cover(g, &cover)?;
        Ok(VertexCover { cover })
    }

    pub fn cover(&self) -> &BTreeSet<VertexId> {
        &self.cover
    }

    pub fn k(&self) -> usize {
        self.cover.len()
    }
}

fn check_cover(g: &Graph, cover: &BTreeSet<VertexId>) -> Result<(), KernelError> {
    if let Some(v) = cover.iter().find(|v| !g.contains_vertex(**v)) {
        return Err(KernelError::InvalidCover(format!("unknown vertex {v}")));
    }
    for (u, v) in g.edges() {
        if !cover.contains(&u) && !cover.contains(&v) {
            return Err(KernelError::InvalidCover(format!(
                "edge ({u}, {v}) has no covered endpoint"
            )));
        }
    }
    Ok(())
}

/// A vertex set whose removal leaves only components of at most `b` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulator {
    set: BTreeSet<VertexId>,
    b: usize,
}

impl Modulator {
    pub fn new(g: &Graph, set: BTreeSet<VertexId>, b: usize) -> Result<Self, KernelError> {
        if let Some(v) = set.iter().find(|v| !g.contains_vertex(**v)) {
            return Err(KernelError::InvalidModulator(format!("unknown vertex {v}")));
        }
        if b == 0 {
            return Err(KernelError::InvalidModulator(
                "component bound must be positive".into(),
            ));
        }
        let rest = g.without_vertices(&set);
        for comp in rest.components() {
            if comp.len() > b {
                return Err(KernelError::InvalidModulator(format!(
                    "a residual component has {} > {b} vertices",
                    comp.len()
                )));
            }
        }
        Ok(Modulator { set, b })
    }

    pub fn set(&self) -> &BTreeSet<VertexId> {
        &self.set
    }

    pub fn bound(&self) -> usize {
        self.b
    }

    pub fn k(&self) -> usize {
        self.set.len()
    }
}

/// A rooted forest on the vertex set in which every graph edge connects an
/// ancestor-descendant pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreedepthDecomposition {
    parent: BTreeMap<VertexId, Option<VertexId>>,
}

impl TreedepthDecomposition {
    pub fn new(
        g: &Graph,
        parent: BTreeMap<VertexId, Option<VertexId>>,
    ) -> Result<Self, KernelError> {
        let bad = KernelError::InvalidDecomposition;
        if parent.keys().copied().collect::<BTreeSet<_>>() != *g.vertex_set() {
            return Err(bad("the forest is not over the vertex set".into()));
        }
        let t = TreedepthDecomposition { parent };
        for &v in g.vertex_set() {
            // Depth doubles as a cycle guard: a parent chain longer than n
            // must revisit a vertex.
            if t.depth_of(v).is_none() {
                return Err(bad(format!("the parent chain of {v} is cyclic")));
            }
        }
        for (u, v) in g.edges() {
            let up = t.ancestors(u);
            if !up.contains(&v) && !t.ancestors(v).contains(&u) {
                return Err(bad(format!("edge ({u}, {v}) joins unrelated vertices")));
            }
        }
        Ok(t)
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent.get(&v).copied().flatten()
    }

    pub fn parents(&self) -> &BTreeMap<VertexId, Option<VertexId>> {
        &self.parent
    }

    /// The vertex together with all its ancestors, bottom-up.
    pub fn root_path(&self, v: VertexId) -> Vec<VertexId> {
        let mut path = vec![v];
        while let Some(&Some(p)) = self.parent.get(path.last().unwrap()) {
            path.push(p);
        }
        path
    }

    fn ancestors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.root_path(v).into_iter().collect()
    }

    fn depth_of(&self, v: VertexId) -> Option<usize> {
        let n = self.parent.len();
        let mut cur = v;
        let mut d = 1;
        while let Some(&Some(p)) = self.parent.get(&cur) {
            cur = p;
            d += 1;
            if d > n {
                return None;
            }
        }
        Some(d)
    }

    /// Maximum root-path length.
    pub fn td(&self) -> usize {
        self.parent
            .keys()
            .filter_map(|&v| self.depth_of(v))
            .max()
            .unwrap_or(0)
    }
}

// ---------------------------------------------------------------------------
// Reduction traces
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionRule {
    /// Cap on degree-1 cover-free neighbors of a cover vertex.
    CoverPendants,
    /// Cap on degree-2 cover-free vertices between a pair of cover vertices.
    CoverSubdivisions,
    /// Cap on equivalent one-attachment components of a modulator.
    OneAttachment,
    /// Cap on equivalent two-attachment components of a modulator.
    TwoAttachments,
}

/// A removed piece: its vertices together with every incident edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedPart {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    pub anchors: Vec<VertexId>,
    pub removed: Vec<RemovedPart>,
}

/// Ordered log of rule applications; replaying the removals on the input
/// yields exactly the kernel.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Total number of removed vertices.
    pub fn removed_count(&self) -> usize {
        self.steps
            .iter()
            .flat_map(|s| &s.removed)
            .map(|p| p.vertices.len())
            .sum()
    }

    /// Apply all recorded removals to `g`.
    pub fn replay(&self, g: &Graph) -> Graph {
        let drop: BTreeSet<VertexId> = self
            .steps
            .iter()
            .flat_map(|s| &s.removed)
            .flat_map(|p| p.vertices.iter().copied())
            .collect();
        g.without_vertices(&drop)
    }
}

// ---------------------------------------------------------------------------
// Threshold shortcut
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelParam {
    VertexCover { k: u64 },
    Modulator { b: u64, k: u64 },
    Treedepth { td: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Yes,
    Undecided,
}

/// Spans at or above the parameter threshold always admit a drawing, so the
/// decision problem is YES without further work. The thresholds are `6k` for
/// a vertex cover, `(5b+1)bk` for a `b`-modulator of size `k`, and
/// `((5·td)^td + 1)^td` for treedepth `td`.
pub fn threshold_check(param: KernelParam, s: i64) -> Threshold {
    if s < 0 {
        return Threshold::Undecided;
    }
    let s = s as u128;
    let met = match param {
        KernelParam::VertexCover { k } => s >= 6 * k as u128,
        KernelParam::Modulator { b, k } => {
            let (b, k) = (b as u128, k as u128);
            (5 * b + 1)
                .checked_mul(b)
                .and_then(|x| x.checked_mul(k))
                .is_some_and(|t| s >= t)
        }
        KernelParam::Treedepth { td } => (5u128 * td as u128)
            .checked_pow(td)
            .and_then(|x| x.checked_add(1))
            .and_then(|x| x.checked_pow(td))
            .is_some_and(|t| s >= t),
    };
    if met {
        Threshold::Yes
    } else {
        Threshold::Undecided
    }
}

// ---------------------------------------------------------------------------
// Vertex-cover kernel
// ---------------------------------------------------------------------------

/// Shrink `(g, s)` relative to a vertex cover: keep at most 3 pendant
/// neighbors per cover vertex and at most `min(4s+5, 24k+5)` degree-2
/// common neighbors per cover pair, always the smallest ids. The kernel has
/// `O(k²)` vertices and the same answer for span budget `s`.
pub fn vc_kernelize(
    g: &Graph,
    c: &VertexCover,
    s: i64,
) -> Result<(Graph, ReductionTrace), KernelError> {
    check_cover(g, c.cover())?;
    let k = c.k() as i64;
    let pair_cap = (4 * s.clamp(0, 6 * k) + 5) as usize;

    let mut pendants: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut middles: BTreeMap<(VertexId, VertexId), Vec<VertexId>> = BTreeMap::new();
    for v in g.vertices().filter(|v| !c.cover().contains(v)) {
        match g.neighbors(v) {
            [a] => pendants.entry(*a).or_default().push(v),
            [a, b] => middles.entry((*a, *b)).or_default().push(v),
            _ => {}
        }
    }

    let mut trace = ReductionTrace::default();
    let mut drop: BTreeSet<VertexId> = BTreeSet::new();
    for (anchor, vs) in pendants {
        if vs.len() > 3 {
            let removed = vs[3..]
                .iter()
                .map(|&v| RemovedPart {
                    vertices: BTreeSet::from([v]),
                    edges: BTreeSet::from([edge(v, anchor)]),
                })
                .collect();
            drop.extend(&vs[3..]);
            trace.steps.push(ReductionStep {
                rule: ReductionRule::CoverPendants,
                anchors: vec![anchor],
                removed,
            });
        }
    }
    for ((a, b), vs) in middles {
        if vs.len() > pair_cap {
            let removed = vs[pair_cap..]
                .iter()
                .map(|&v| RemovedPart {
                    vertices: BTreeSet::from([v]),
                    edges: BTreeSet::from([edge(v, a), edge(v, b)]),
                })
                .collect();
            drop.extend(&vs[pair_cap..]);
            trace.steps.push(ReductionStep {
                rule: ReductionRule::CoverSubdivisions,
                anchors: vec![a, b],
                removed,
            });
        }
    }
    Ok((g.without_vertices(&drop), trace))
}

/// Lift a valid drawing of a vertex-cover kernel back to the full graph by
/// undoing the trace: every removed pendant is drawn beside a surviving
/// pendant sibling that sits on a level different from its anchor, every
/// removed degree-2 vertex beside a surviving sibling strictly between its
/// two anchors. Such siblings exist in any drawing within the span budget
/// (at most two pendants fit on the anchor's own level, and too few middles
/// fit on the non-between levels); their absence is reported as
/// [`KernelError::NoSiblingFound`]. The span never increases.
pub fn vc_reinsert(
    d: &PolylineDrawing,
    trace: &ReductionTrace,
) -> Result<PolylineDrawing, KernelError> {
    let mut patch = Patch::from(d)?;
    for step in trace.steps.iter().rev() {
        match step.rule {
            ReductionRule::CoverPendants => {
                let c = step.anchors[0];
                let mut anchor = patch.pendant_sibling(c)?;
                for part in &step.removed {
                    let &v = part.vertices.iter().next().unwrap();
                    patch.insert_parallel(anchor, &[c], v)?;
                    anchor = v;
                }
            }
            ReductionRule::CoverSubdivisions => {
                let (c, d) = (step.anchors[0], step.anchors[1]);
                let mut anchor = patch.middle_sibling(c, d)?;
                for part in &step.removed {
                    let &v = part.vertices.iter().next().unwrap();
                    patch.insert_parallel(anchor, &[c, d], v)?;
                    anchor = v;
                }
            }
            _ => {
                return Err(KernelError::Unsupported(
                    "only vertex-cover traces can be re-inserted".into(),
                ))
            }
        }
    }
    patch.finish()
}

// ---------------------------------------------------------------------------
// Combinatorial drawing edits
// ---------------------------------------------------------------------------

/// An editable subdivided drawing. All insertions keep the left-to-right
/// orders valid, so the final materialization is crossing-free.
struct Patch {
    items: Vec<Item>,
    orders: BTreeMap<i64, Vec<usize>>,
    chains: Vec<Chain>,
}

impl Patch {
    fn from(d: &PolylineDrawing) -> Result<Self, KernelError> {
        let nd = normalize(d)?;
        Ok(Patch {
            items: nd.items().to_vec(),
            orders: nd.orders().clone(),
            chains: nd.chains().to_vec(),
        })
    }

    fn item_of(&self, v: VertexId) -> Option<usize> {
        self.items
            .iter()
            .position(|it| it.kind == ItemKind::Real(v))
    }

    fn level(&self, id: usize) -> i64 {
        self.items[id].level
    }

    fn push_item(&mut self, kind: ItemKind, level: i64) -> usize {
        self.items.push(Item { kind, level });
        self.items.len() - 1
    }

    /// Place `id` in its level's order directly after `anchor`.
    fn insert_after(&mut self, anchor: usize, id: usize) {
        let lvl = self.items[id].level;
        let ord = self.orders.get_mut(&lvl).expect("anchor level exists");
        let p = ord.iter().position(|&x| x == anchor).expect("anchor placed");
        ord.insert(p + 1, id);
    }

    fn chain_index(&self, a: VertexId, b: VertexId) -> Option<usize> {
        let e = edge(a, b);
        self.chains.iter().position(|ch| (ch.u, ch.v) == e)
    }

    /// Items of a chain oriented to start at `a`.
    fn oriented_items(&self, ci: usize, a: VertexId) -> Vec<usize> {
        let ch = &self.chains[ci];
        if ch.u == a {
            ch.items.clone()
        } else {
            ch.items.iter().rev().copied().collect()
        }
    }

    fn chain_item_at(&self, ci: usize, lvl: i64) -> usize {
        *self.chains[ci]
            .items
            .iter()
            .find(|&&id| self.items[id].level == lvl)
            .expect("chain crosses the level")
    }

    fn make_chain(&mut self, mut items: Vec<usize>, from: VertexId, to: VertexId) -> usize {
        let ci = self.chains.len();
        let (u, v) = if from <= to {
            (from, to)
        } else {
            items.reverse();
            (to, from)
        };
        for &mid in &items[1..items.len() - 1] {
            self.items[mid].kind = ItemKind::Virtual { chain: ci };
        }
        self.chains.push(Chain { u, v, items });
        ci
    }

    fn degree(&self, v: VertexId) -> usize {
        self.chains.iter().filter(|ch| ch.u == v || ch.v == v).count()
    }

    fn neighbors_of(&self, v: VertexId) -> Vec<VertexId> {
        self.chains
            .iter()
            .filter_map(|ch| match (ch.u == v, ch.v == v) {
                (true, _) => Some(ch.v),
                (_, true) => Some(ch.u),
                _ => None,
            })
            .collect()
    }

    /// A degree-1 neighbor of `c` on a level different from `c`'s.
    fn pendant_sibling(&self, c: VertexId) -> Result<VertexId, KernelError> {
        let lc = self.level(self.item_of(c).expect("anchor drawn"));
        self.neighbors_of(c)
            .into_iter()
            .filter(|&v| self.degree(v) == 1 && self.level(self.item_of(v).unwrap()) != lc)
            .min()
            .ok_or(KernelError::NoSiblingFound { anchors: vec![c] })
    }

    /// A common degree-2 neighbor of `c` and `d` strictly between their
    /// levels.
    fn middle_sibling(&self, c: VertexId, d: VertexId) -> Result<VertexId, KernelError> {
        let lc = self.level(self.item_of(c).expect("anchor drawn"));
        let ld = self.level(self.item_of(d).expect("anchor drawn"));
        let (lo, hi) = (lc.min(ld), lc.max(ld));
        let dn: BTreeSet<VertexId> = self.neighbors_of(d).into_iter().collect();
        self.neighbors_of(c)
            .into_iter()
            .filter(|&v| {
                let lv = self.level(self.item_of(v).unwrap());
                dn.contains(&v) && self.degree(v) == 2 && lo < lv && lv < hi
            })
            .min()
            .ok_or(KernelError::NoSiblingFound {
                anchors: vec![c, d],
            })
    }

    /// Insert `w` with edges to exactly `targets`, hugging the existing
    /// vertex `anchor` whose edges go to the same targets: `w` lands directly
    /// right of `anchor`, and each new chain runs directly right of the
    /// corresponding anchor chain. Valid because every pair of hugging
    /// chains shares a target endpoint and foreign chains keep their side.
    fn insert_parallel(
        &mut self,
        anchor: VertexId,
        targets: &[VertexId],
        w: VertexId,
    ) -> Result<(), KernelError> {
        let ai = self
            .item_of(anchor)
            .ok_or_else(|| KernelError::Unsupported(format!("vertex {anchor} is not drawn")))?;
        let la = self.level(ai);
        let wi = self.push_item(ItemKind::Real(w), la);
        self.insert_after(ai, wi);
        for &t in targets {
            let ti = self
                .item_of(t)
                .ok_or_else(|| KernelError::Unsupported(format!("vertex {t} is not drawn")))?;
            let lt = self.level(ti);
            let host = self.chain_index(anchor, t).ok_or_else(|| {
                KernelError::Unsupported(format!("no edge between {anchor} and {t}"))
            })?;
            let dir = (lt - la).signum();
            if dir == 0 {
                return Err(KernelError::Unsupported(
                    "cannot parallel a horizontal edge".into(),
                ));
            }
            let ci = self.chains.len();
            let mut items = vec![wi];
            let mut lvl = la + dir;
            while lvl != lt {
                let hi = self.chain_item_at(host, lvl);
                let vi = self.push_item(ItemKind::Virtual { chain: ci }, lvl);
                self.insert_after(hi, vi);
                items.push(vi);
                lvl += dir;
            }
            items.push(ti);
            self.make_chain(items, w, t);
        }
        Ok(())
    }

    /// Replace the chain of edge `(a, b)` by the path `a - p_1 - … - p_t - b`:
    /// `p_1` takes over the subdivision point nearest `a`, the remaining
    /// path vertices line up beside it on the same level, joined by
    /// horizontal edges. Positions of existing items never change.
    fn replace_by_path(
        &mut self,
        a: VertexId,
        b: VertexId,
        interior: &[VertexId],
    ) -> Result<(), KernelError> {
        let host = self
            .chain_index(a, b)
            .ok_or_else(|| KernelError::Unsupported(format!("no edge between {a} and {b}")))?;
        let hitems = self.oriented_items(host, a);
        if hitems.len() < 3 {
            return Err(KernelError::Unsupported(
                "the replaced edge crosses no intermediate level".into(),
            ));
        }
        let split = hitems[1];
        let m = self.level(split);
        self.items[split].kind = ItemKind::Real(interior[0]);
        let mut ids = vec![split];
        for &p in &interior[1..] {
            let pi = self.push_item(ItemKind::Real(p), m);
            self.insert_after(*ids.last().unwrap(), pi);
            ids.push(pi);
        }
        // Reuse the host slot for the short end chain; the upper remainder
        // becomes a fresh chain owning the surviving subdivision points.
        let lower = {
            let mut items = vec![hitems[0], split];
            let e = edge(a, interior[0]);
            if e.0 != a {
                items.reverse();
            }
            Chain {
                u: e.0,
                v: e.1,
                items,
            }
        };
        self.chains[host] = lower;
        for w in ids.windows(2) {
            let (x, y) = (w[0], w[1]);
            let (vx, vy) = match (self.items[x].kind, self.items[y].kind) {
                (ItemKind::Real(vx), ItemKind::Real(vy)) => (vx, vy),
                _ => unreachable!("path items are real"),
            };
            self.make_chain(vec![x, y], vx, vy);
        }
        let mut upper = vec![*ids.last().unwrap()];
        upper.extend(&hitems[2..]);
        self.make_chain(upper, *interior.last().unwrap(), b);
        Ok(())
    }

    /// Insert the path `a - p_1 - … - p_t - b` parallel to the surviving
    /// chain of edge `(a, b)`: the path vertices line up directly right of
    /// the chain's subdivision point nearest `a`.
    fn insert_parallel_path(
        &mut self,
        a: VertexId,
        b: VertexId,
        interior: &[VertexId],
    ) -> Result<(), KernelError> {
        let host = self
            .chain_index(a, b)
            .ok_or_else(|| KernelError::Unsupported(format!("no edge between {a} and {b}")))?;
        let hitems = self.oriented_items(host, a);
        if hitems.len() < 3 {
            return Err(KernelError::Unsupported(
                "the paralleled edge crosses no intermediate level".into(),
            ));
        }
        let m = self.level(hitems[1]);
        let mut ids = Vec::new();
        let mut prev = hitems[1];
        for &p in interior {
            let pi = self.push_item(ItemKind::Real(p), m);
            self.insert_after(prev, pi);
            ids.push(pi);
            prev = pi;
        }
        self.make_chain(vec![self.oriented_items(host, a)[0], ids[0]], a, interior[0]);
        for (w, pair) in ids.windows(2).zip(interior.windows(2)) {
            self.make_chain(vec![w[0], w[1]], pair[0], pair[1]);
        }
        // Tail: climb beside the host chain from the path's last vertex.
        let bi = self.item_of(b).unwrap();
        let lb = self.level(bi);
        let dir = (lb - m).signum();
        let ci = self.chains.len();
        let mut items = vec![*ids.last().unwrap()];
        let mut lvl = m + dir;
        while lvl != lb {
            let hi = self.chain_item_at(host, lvl);
            let vi = self.push_item(ItemKind::Virtual { chain: ci }, lvl);
            self.insert_after(hi, vi);
            items.push(vi);
            lvl += dir;
        }
        items.push(bi);
        self.make_chain(items, *interior.last().unwrap(), b);
        Ok(())
    }

    /// Insert a new pendant `leaf` attached to `nbr` on an adjacent level.
    /// The slot is chosen so the new unit chain does not invert against any
    /// chain crossing the gap: strictly right of every crossing chain that
    /// starts left of `nbr` and strictly left of every one starting right.
    fn insert_pendant(&mut self, nbr: VertexId, leaf: VertexId) -> Result<(), KernelError> {
        let ni = self
            .item_of(nbr)
            .ok_or_else(|| KernelError::Unsupported(format!("vertex {nbr} is not drawn")))?;
        let ln = self.level(ni);
        for dir in [1i64, -1] {
            let m = ln + dir;
            if let Some(idx) = self.pendant_slot(ni, ln, m) {
                let li = self.push_item(ItemKind::Real(leaf), m);
                self.orders.entry(m).or_default().insert(idx, li);
                let items = vec![ni, li];
                self.make_chain(items, nbr, leaf);
                return Ok(());
            }
        }
        Err(KernelError::Unsupported(format!(
            "no free slot next to vertex {nbr} on either adjacent level"
        )))
    }

    /// Valid order index on level `m` for a pendant hanging from the item
    /// `ni` on level `ln`, if one exists.
    fn pendant_slot(&self, ni: usize, ln: i64, m: i64) -> Option<usize> {
        let ord_m = self.orders.get(&m).cloned().unwrap_or_default();
        let pos_m: BTreeMap<usize, usize> =
            ord_m.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let ord_n = &self.orders[&ln];
        let pn = ord_n.iter().position(|&x| x == ni).unwrap();
        let pos_n: BTreeMap<usize, usize> =
            ord_n.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut max_left: i64 = -1;
        let mut min_right: i64 = ord_m.len() as i64;
        for ch in &self.chains {
            for w in ch.items.windows(2) {
                let (la, lb) = (self.level(w[0]), self.level(w[1]));
                let (low, up) = if (la, lb) == (ln, m) {
                    (w[0], w[1])
                } else if (lb, la) == (ln, m) {
                    (w[1], w[0])
                } else {
                    continue;
                };
                let pl = pos_n[&low];
                let pu = pos_m[&up] as i64;
                match pl.cmp(&pn) {
                    std::cmp::Ordering::Less => max_left = max_left.max(pu),
                    std::cmp::Ordering::Greater => min_right = min_right.min(pu),
                    // Chains through `ni` itself share the pendant's
                    // endpoint and are unconstrained.
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        let mut idx = max_left + 1;
        // Never separate the endpoints of a horizontal edge.
        while idx <= min_right && self.splits_horizontal_pair(&ord_m, idx as usize) {
            idx += 1;
        }
        (idx <= min_right).then_some(idx as usize)
    }

    fn splits_horizontal_pair(&self, ord: &[usize], idx: usize) -> bool {
        if idx == 0 || idx >= ord.len() {
            return false;
        }
        let (a, b) = (ord[idx - 1], ord[idx]);
        self.chains.iter().any(|ch| {
            ch.items.len() == 2
                && ((ch.items[0], ch.items[1]) == (a, b) || (ch.items[0], ch.items[1]) == (b, a))
        })
    }

    /// Place a vertex with no edges on a level of its own below everything.
    fn place_isolated(&mut self, v: VertexId) {
        let m = self.orders.keys().next().map_or(0, |&l| l - 1);
        let vi = self.push_item(ItemKind::Real(v), m);
        self.orders.entry(m).or_default().push(vi);
    }

    fn finish(self) -> Result<PolylineDrawing, KernelError> {
        let nd = NormalizedDrawing::new(self.items, self.orders, self.chains);
        match check_normalized(&nd)? {
            Verdict::Valid => Ok(materialize(&nd)),
            Verdict::Invalid(why) => Err(KernelError::Unsupported(format!(
                "re-insertion produced an invalid drawing: {why:?}"
            ))),
        }
    }
}

// ---------------------------------------------------------------------------
// Component equivalence and the modulator kernel
// ---------------------------------------------------------------------------

/// Are two marked components interchangeable: same attachment vertices and
/// isomorphic bridge graphs under a mapping fixing the attachments? The
/// attachment-fixing constraint is encoded by gadget paths of distinct
/// lengths (longer than any path inside the components), after which a plain
/// unlabeled isomorphism test suffices.
pub fn component_equivalent(c1: &MarkedGraph, c2: &MarkedGraph) -> Result<bool, KernelError> {
    for mg in [c1, c2] {
        if mg.marks.len() > 2 {
            return Err(KernelError::TooManyAttachments(mg.marks.len()));
        }
    }
    let att1: BTreeSet<VertexId> = c1.marks.values().copied().collect();
    let att2: BTreeSet<VertexId> = c2.marks.values().copied().collect();
    if att1 != att2 {
        return Ok(false);
    }
    let b = (c1.graph.num_vertices() - att1.len())
        .max(c2.graph.num_vertices() - att2.len())
        .max(1) as u64;
    let fresh = c1
        .graph
        .max_vertex_id()
        .unwrap_or(0)
        .max(c2.graph.max_vertex_id().unwrap_or(0))
        + 1;
    let augment = |g: &Graph| {
        let mut vs: Vec<VertexId> = g.vertices().collect();
        let mut es: Vec<Edge> = g.edges().collect();
        let mut next = fresh;
        for (i, &a) in att1.iter().enumerate() {
            let len = b + 1 + i as u64;
            let mut prev = a;
            for _ in 0..len {
                vs.push(next);
                es.push(edge(prev, next));
                prev = next;
                next += 1;
            }
        }
        build_graph(vs, es).expect("augmented gadget graph is simple")
    };
    Ok(isomorphic(&augment(&c1.graph), &augment(&c2.graph)))
}

/// Brute-force graph isomorphism, adequate for components of bounded size.
fn isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges() {
        return false;
    }
    let mut d1: Vec<usize> = g1.vertices().map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = g2.vertices().map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return false;
    }
    let mut vs1: Vec<VertexId> = g1.vertices().collect();
    vs1.sort_by_key(|&v| (std::cmp::Reverse(g1.degree(v)), v));
    let vs2: Vec<VertexId> = g2.vertices().collect();
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    extend_iso(g1, g2, &vs1, &vs2, 0, &mut map, &mut used)
}

fn extend_iso(
    g1: &Graph,
    g2: &Graph,
    vs1: &[VertexId],
    vs2: &[VertexId],
    i: usize,
    map: &mut BTreeMap<VertexId, VertexId>,
    used: &mut BTreeSet<VertexId>,
) -> bool {
    if i == vs1.len() {
        return true;
    }
    let v = vs1[i];
    for &u in vs2 {
        if used.contains(&u) || g1.degree(v) != g2.degree(u) {
            continue;
        }
        let consistent = map
            .iter()
            .all(|(&w, &wu)| g1.has_edge(v, w) == g2.has_edge(u, wu));
        if !consistent {
            continue;
        }
        map.insert(v, u);
        used.insert(u);
        if extend_iso(g1, g2, vs1, vs2, i + 1, map, used) {
            return true;
        }
        map.remove(&v);
        used.remove(&u);
    }
    false
}

/// Bridge graph of a component relative to a modulator: the component, its
/// attachment vertices (marked `a0`, `a1`), and only the edges inside the
/// component or between it and the attachments.
fn bridge_graph(g: &Graph, comp: &BTreeSet<VertexId>, atts: &[VertexId]) -> MarkedGraph {
    let keep: BTreeSet<VertexId> = comp.iter().chain(atts).copied().collect();
    let sub = g.induced(&keep);
    let att_set: BTreeSet<VertexId> = atts.iter().copied().collect();
    let es: Vec<Edge> = sub
        .edges()
        .filter(|(u, v)| !(att_set.contains(u) && att_set.contains(v)))
        .collect();
    let graph = build_graph(keep, es).expect("bridge subgraph is simple");
    let marks = atts
        .iter()
        .enumerate()
        .map(|(i, &a)| (format!("a{i}"), a))
        .collect();
    MarkedGraph::new(graph, marks).expect("marks name bridge vertices")
}

/// Cap the number of pairwise-equivalent components per attachment anchor.
/// Components with three or more attachments are never touched.
fn apply_component_caps(
    g: &Graph,
    modulator: &BTreeSet<VertexId>,
    comps: &[BTreeSet<VertexId>],
    cap1: usize,
    cap2: usize,
) -> Result<Vec<ReductionStep>, KernelError> {
    let mut groups: BTreeMap<Vec<VertexId>, Vec<&BTreeSet<VertexId>>> = BTreeMap::new();
    for comp in comps {
        let atts: BTreeSet<VertexId> = comp
            .iter()
            .flat_map(|&v| g.neighbors(v))
            .filter(|v| modulator.contains(v))
            .copied()
            .collect();
        if (1..=2).contains(&atts.len()) {
            groups
                .entry(atts.into_iter().collect())
                .or_default()
                .push(comp);
        }
    }
    let mut steps = Vec::new();
    for (atts, members) in groups {
        let cap = if atts.len() == 1 { cap1 } else { cap2 };
        // Partition into equivalence classes; members arrive sorted, so the
        // kept representatives are the lexicographically smallest.
        let mut classes: Vec<(MarkedGraph, Vec<&BTreeSet<VertexId>>)> = Vec::new();
        for &comp in &members {
            let mg = bridge_graph(g, comp, &atts);
            let mut placed = false;
            for (rep, list) in classes.iter_mut() {
                if component_equivalent(rep, &mg)? {
                    list.push(comp);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push((mg, vec![comp]));
            }
        }
        for (_, list) in classes {
            if list.len() > cap {
                let removed = list[cap..]
                    .iter()
                    .map(|comp| RemovedPart {
                        vertices: (*comp).clone(),
                        edges: g
                            .edges()
                            .filter(|(u, v)| comp.contains(u) || comp.contains(v))
                            .collect(),
                    })
                    .collect();
                steps.push(ReductionStep {
                    rule: if atts.len() == 1 {
                        ReductionRule::OneAttachment
                    } else {
                        ReductionRule::TwoAttachments
                    },
                    anchors: atts.clone(),
                    removed,
                });
            }
        }
    }
    Ok(steps)
}

/// Shrink `(g, s)` relative to a `b`-modulator: per attachment anchor and
/// equivalence class, keep at most `(4·min(s, S)+4)·b` one-attachment and
/// `(8·min(s, S)+8)·(b+1)` two-attachment components, where `S = (5b+1)bk`
/// is the span threshold beyond which the instance is YES anyway.
pub fn modulator_kernelize(
    g: &Graph,
    m: &Modulator,
    s: i64,
) -> Result<(Graph, ReductionTrace), KernelError> {
    let checked = Modulator::new(g, m.set().clone(), m.bound())?;
    let b = checked.bound() as i64;
    let k = checked.k() as i64;
    let s_eff = s.clamp(0, (5 * b + 1) * b * k);
    let cap1 = ((4 * s_eff + 4) * b) as usize;
    let cap2 = ((8 * s_eff + 8) * (b + 1)) as usize;
    let mut comps = g.without_vertices(checked.set()).components();
    comps.sort();
    let steps = apply_component_caps(g, checked.set(), &comps, cap1, cap2)?;
    let trace = ReductionTrace { steps };
    let kernel = trace.replay(g);
    Ok((kernel, trace))
}

/// Shrink `(g, s)` relative to a treedepth decomposition by processing the
/// forest bottom-up: at each internal vertex `v`, the root path of `v` acts
/// as a modulator for the components hanging below `v`, and the modulator
/// caps apply with the largest such component as the size bound. Vertices
/// orphaned by a removal are reparented to their lowest surviving ancestor,
/// so the decomposition stays valid throughout.
pub fn treedepth_kernelize(
    g: &Graph,
    t: &TreedepthDecomposition,
    s: i64,
) -> Result<(Graph, ReductionTrace), KernelError> {
    let checked = TreedepthDecomposition::new(g, t.parents().clone())?;
    let mut heights: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(checked.depth_of(v).unwrap()));
    for &v in &order {
        let h = 1 + g
            .vertices()
            .filter(|&u| checked.parent(u) == Some(v))
            .map(|u| heights[&u])
            .max()
            .unwrap_or(0);
        heights.insert(v, h);
    }
    order.sort_by_key(|&v| (heights[&v], v));

    let mut cur = g.clone();
    let mut trace = ReductionTrace::default();
    let s_eff = s.max(0);
    for &v in &order {
        if heights[&v] <= 1 || !cur.contains_vertex(v) {
            continue;
        }
        // Root path and descendant set within the current (reparented) tree:
        // removed vertices are skipped when walking parent pointers.
        let root_path: BTreeSet<VertexId> = checked
            .root_path(v)
            .into_iter()
            .filter(|u| cur.contains_vertex(*u))
            .collect();
        let below: BTreeSet<VertexId> = cur
            .vertices()
            .filter(|&u| u != v && checked.ancestors(u).contains(&v))
            .collect();
        let mut comps: Vec<BTreeSet<VertexId>> = cur
            .without_vertices(&root_path)
            .components()
            .into_iter()
            .filter(|c| c.is_subset(&below))
            .collect();
        comps.sort();
        let Some(bound) = comps.iter().map(|c| c.len()).max() else {
            continue;
        };
        let bound = bound as i64;
        let cap1 = ((4 * s_eff + 4) * bound) as usize;
        let cap2 = ((8 * s_eff + 8) * (bound + 1)) as usize;
        let steps = apply_component_caps(&cur, &root_path, &comps, cap1, cap2)?;
        for step in steps {
            cur = ReductionTrace {
                steps: vec![step.clone()],
            }
            .replay(&cur);
            trace.steps.push(step);
        }
    }
    Ok((cur, trace))
}

// ---------------------------------------------------------------------------
// Parameter computation
// ---------------------------------------------------------------------------

/// Endpoints of a greedily maximal matching: a vertex cover of at most twice
/// the optimum size.
pub fn vertex_cover_2approx(g: &Graph) -> VertexCover {
    let mut cover: BTreeSet<VertexId> = BTreeSet::new();
    for (u, v) in g.edges() {
        if !cover.contains(&u) && !cover.contains(&v) {
            cover.insert(u);
            cover.insert(v);
        }
    }
    VertexCover::new(g, cover).expect("matching endpoints cover every edge")
}

/// Elimination-tree greedy: root each component at its maximum-degree vertex
/// and recurse on the remainder. Valid but not necessarily optimal.
pub fn treedepth_greedy(g: &Graph) -> TreedepthDecomposition {
    fn go(
        g: &Graph,
        comp: &BTreeSet<VertexId>,
        parent: Option<VertexId>,
        out: &mut BTreeMap<VertexId, Option<VertexId>>,
    ) {
        let sub = g.induced(comp);
        let root = comp
            .iter()
            .copied()
            .min_by_key(|&v| (std::cmp::Reverse(sub.degree(v)), v))
            .expect("component is non-empty");
        out.insert(root, parent);
        for c in sub.without_vertices(&BTreeSet::from([root])).components() {
            go(g, &c, Some(root), out);
        }
    }
    let mut parent = BTreeMap::new();
    for comp in g.components() {
        go(g, &comp, None, &mut parent);
    }
    TreedepthDecomposition::new(g, parent).expect("elimination trees relate every edge")
}

// ---------------------------------------------------------------------------
// Direct witness for large span budgets
// ---------------------------------------------------------------------------

/// A valid drawing of `g` with span at most `6k`, where `k` is the cover
/// size: trim the graph (drop cover-free pendants, smooth cover-free
/// degree-2 vertices) to at most `3k` vertices, draw the trimmed graph
/// strictly leveled, double the levels, and re-insert the trimmed vertices
/// on the freed intermediate levels.
pub fn draw_large_s_witness(g: &Graph, c: &VertexCover) -> Result<PolylineDrawing, KernelError> {
    check_cover(g, c.cover())?;
    let mut positions = BTreeMap::new();
    let mut edges: Vec<EdgeGeom> = Vec::new();
    let mut x_off: i64 = 0;
    for comp in g.components() {
        let d = witness_component(&g.induced(&comp), c.cover())?;
        let width = component_width(&d);
        for (v, (x, l)) in d.positions() {
            positions.insert(*v, (x + crate::drawing::coord(x_off), *l));
        }
        for e in d.edges() {
            edges.push(EdgeGeom {
                u: e.u,
                v: e.v,
                bends: e
                    .bends
                    .iter()
                    .map(|(x, l)| (x + crate::drawing::coord(x_off), *l))
                    .collect(),
            });
        }
        x_off += width + 1;
    }
    Ok(PolylineDrawing::new(positions, edges))
}

fn component_width(d: &PolylineDrawing) -> i64 {
    use num_traits::ToPrimitive;
    d.positions()
        .values()
        .chain(d.edges().iter().flat_map(|e| &e.bends))
        .map(|(x, _)| x.ceil().to_integer().to_i64().unwrap_or(0))
        .max()
        .unwrap_or(0)
        .max(0)
}

fn witness_component(
    g: &Graph,
    cover: &BTreeSet<VertexId>,
) -> Result<PolylineDrawing, KernelError> {
    // Trim with records. Cover-free vertices only neighbor cover vertices,
    // so pendant removals never cascade and smoothed paths never nest: every
    // record is a single vertex hanging off cover vertices.
    let mut cur = g.clone();
    let mut leaves: Vec<(VertexId, Option<VertexId>)> = Vec::new();
    let mut primary: BTreeMap<Edge, VertexId> = BTreeMap::new();
    let mut extras: Vec<(Edge, VertexId)> = Vec::new();
    loop {
        let pendant = cur
            .vertices()
            .find(|v| !cover.contains(v) && cur.degree(*v) <= 1);
        if let Some(v) = pendant {
            leaves.push((v, cur.neighbors(v).first().copied()));
            cur = cur.without_vertices(&BTreeSet::from([v]));
            continue;
        }
        let middle = cur
            .vertices()
            .find(|v| !cover.contains(v) && cur.degree(*v) == 2);
        if let Some(v) = middle {
            let nb = cur.neighbors(v).to_vec();
            let (a, b) = (nb[0], nb[1]);
            cur = cur.without_vertices(&BTreeSet::from([v]));
            if cur.has_edge(a, b) || primary.contains_key(&edge(a, b)) {
                extras.push((edge(a, b), v));
            } else {
                primary.insert(edge(a, b), v);
                cur = cur.with_edge(a, b);
            }
            continue;
        }
        break;
    }

    // Base drawing of the trimmed graph on doubled levels.
    let base = if cur.num_vertices() <= 1 {
        let positions = cur
            .vertices()
            .map(|v| (v, (crate::drawing::coord(0), 0i64)))
            .collect();
        PolylineDrawing::new(positions, std::iter::empty())
    } else {
        let pe = planar_embedding(&cur)
            .ok_or_else(|| KernelError::Unsupported("the trimmed graph is not planar".into()))?;
        let low = cur.vertices().min().unwrap();
        let strict = st_leveled_drawing(&pe, low, None)?;
        double_levels(&strict)
    };

    let mut patch = Patch::from(&base)?;
    // Parallel paths first (they hug chains the primaries will consume).
    for (e, v) in extras.iter().rev() {
        patch.insert_parallel_path(e.0, e.1, &[*v])?;
    }
    for (e, v) in &primary {
        patch.replace_by_path(e.0, e.1, &[*v])?;
    }
    for (v, nbr) in leaves.iter().rev() {
        match nbr {
            Some(n) => patch.insert_pendant(*n, *v)?,
            None => patch.place_isolated(*v),
        }
    }
    patch.finish()
}

fn double_levels(d: &PolylineDrawing) -> PolylineDrawing {
    let positions = d
        .positions()
        .iter()
        .map(|(&v, (x, l))| (v, (x.clone(), 2 * l)))
        .collect();
    let edges = d.edges().iter().map(|e| EdgeGeom {
        u: e.u,
        v: e.v,
        bends: e.bends.iter().map(|(x, l)| (x.clone(), 2 * l)).collect(),
    });
    PolylineDrawing::new(positions, edges)
}
