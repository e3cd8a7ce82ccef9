//! Exact decision and optimization for bounded-span weakly leveled
//! planarity at desk scale.
//!
//! Three independent engines live here:
//!
//! - [`decide_span`] / [`min_span_wlp`]: an exhaustive level-by-level sweep.
//!   A search state is the set of placed vertices plus the left-to-right
//!   sequence of edges crossing into the next level, each with its remaining
//!   span budget. States are memoized and deduplicated up to mirror
//!   reflection. The sweep covers exactly the levelings with no empty level
//!   (safe because removing an empty level never increases any span), so the
//!   height never exceeds `n - 1`.
//! - [`level_planar_fixed_leveling`]: order backtracking for one given
//!   leveling, pruning with the two order-validity conditions (horizontal
//!   endpoints consecutive; no inversion between consecutive levels).
//! - [`min_span_naive`]: leveling enumeration on top of the fixed-leveling
//!   backtracker, used as a cross-oracle for the sweep on tiny inputs.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::drawing::{
    check_geometric, materialize, span_of, Chain, Item, ItemKind, Leveling, NormalizedDrawing,
    PolylineDrawing, Verdict,
};
use crate::graph::{is_planar, Graph, VertexId};

/// Default vertex cap; exceeding a cap is an error, never silent truncation.
pub const DEFAULT_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("instance has {vertices} vertices, exceeding the cap of {cap}")]
    SizeCapExceeded { vertices: usize, cap: usize },
    #[error("input graph is not planar")]
    NonPlanarInput,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of vertices accepted (per instance).
    pub cap: usize,
    /// Forbid horizontal edges (strictly leveled mode).
    pub strict: bool,
    /// Construct witness drawings for feasible answers (default). Disable
    /// for pure decision queries where only feasibility matters.
    pub want_witness: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            cap: DEFAULT_CAP,
            strict: false,
            want_witness: true,
        }
    }
}

impl SolverConfig {
    pub fn with_cap(cap: usize) -> Self {
        SolverConfig {
            cap,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Distinct (placed set, pending-edge frontier) states expanded.
    pub levelings_examined: u64,
    /// Order-search nodes: steps of the per-level sequence construction.
    pub order_nodes: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.levelings_examined += other.levelings_examined;
        self.order_nodes += other.order_nodes;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Optimum {
    Feasible { span: i64, witness: PolylineDrawing },
    NonPlanar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub optimum: Optimum,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub feasible: bool,
    pub witness: Option<PolylineDrawing>,
    pub stats: SearchStats,
}

fn check_cap(g: &Graph, cfg: &SolverConfig) -> Result<(), SolverError> {
    let n = g.num_vertices();
    if n > cfg.cap {
        return Err(SolverError::SizeCapExceeded {
            vertices: n,
            cap: cfg.cap,
        });
    }
    if n > 64 {
        return Err(SolverError::InvalidInput(
            "solver instances are limited to 64 vertices".into(),
        ));
    }
    Ok(())
}

/// Is there a valid drawing of `g` with every edge span at most `s`?
/// Components are decided independently; the witness stacks them side by
/// side.
pub fn decide_span(g: &Graph, s: i64, cfg: &SolverConfig) -> Result<Decision, SolverError> {
    check_cap(g, cfg)?;
    let mut stats = SearchStats::default();
    if s < 0 {
        return Ok(Decision {
            feasible: false,
            witness: None,
            stats,
        });
    }
    if !is_planar(g) {
        return Ok(Decision {
            feasible: false,
            witness: None,
            stats,
        });
    }
    let mut parts = Vec::new();
    for comp in g.components() {
        let sub = g.induced(&comp);
        let mut sweep = Sweep::new(&sub, s, cfg.strict);
        let found = sweep.run();
        stats.absorb(sweep.stats);
        match found {
            Some(leveling) => {
                if cfg.want_witness {
                    parts.push(realize(&sub, leveling));
                }
            }
            None => {
                return Ok(Decision {
                    feasible: false,
                    witness: None,
                    stats,
                });
            }
        }
    }
    Ok(Decision {
        feasible: true,
        witness: cfg.want_witness.then(|| merge_side_by_side(&parts)),
        stats,
    })
}

/// Turn a feasible leveling found by the sweep into a concrete drawing.
fn realize(sub: &Graph, leveling: Vec<(VertexId, i64)>) -> PolylineDrawing {
    if sub.num_vertices() == 0 {
        return PolylineDrawing::new(BTreeMap::new(), std::iter::empty());
    }
    let l = Leveling::new(leveling.into_iter().collect());
    FixedLeveling::new(sub, &l)
        .solve()
        .expect("a leveling accepted by the sweep admits a valid order")
}

/// Minimum span over all valid drawings, per component (the result is the
/// maximum of the per-component optima and the witness combines them).
pub fn min_span_wlp(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolverError> {
    check_cap(g, cfg)?;
    let mut stats = SearchStats::default();
    if !is_planar(g) {
        return Ok(SolveResult {
            optimum: Optimum::NonPlanar,
            stats,
        });
    }
    let mut best = 0i64;
    let mut parts = Vec::new();
    for comp in g.components() {
        let sub = g.induced(&comp);
        let limit = sub.num_vertices() as i64;
        let mut found = None;
        for s in 0..limit.max(1) {
            let mut sweep = Sweep::new(&sub, s, cfg.strict);
            let r = sweep.run();
            stats.absorb(sweep.stats);
            if let Some(leveling) = r {
                found = Some((s, leveling));
                break;
            }
        }
        let (s, leveling) =
            found.expect("every planar component admits a strictly leveled drawing of span < n");
        best = best.max(s);
        parts.push(realize(&sub, leveling));
    }
    Ok(SolveResult {
        optimum: Optimum::Feasible {
            span: best,
            witness: merge_side_by_side(&parts),
        },
        stats,
    })
}

/// Stack drawings of disjoint vertex sets side by side on shared levels.
fn merge_side_by_side(parts: &[PolylineDrawing]) -> PolylineDrawing {
    use crate::drawing::{coord, Coord, EdgeGeom};
    let mut positions: BTreeMap<VertexId, (Coord, i64)> = BTreeMap::new();
    let mut edges: Vec<EdgeGeom> = Vec::new();
    let mut offset = 0i64;
    for p in parts {
        let shift = coord(offset);
        let mut width = 0i64;
        for (&v, (x, l)) in p.positions() {
            positions.insert(v, (x + &shift, *l));
        }
        for e in p.edges() {
            edges.push(EdgeGeom {
                u: e.u,
                v: e.v,
                bends: e.bends.iter().map(|(x, l)| (x + &shift, *l)).collect(),
            });
        }
        for x in p
            .positions()
            .values()
            .map(|(x, _)| x)
            .chain(p.edges().iter().flat_map(|e| e.bends.iter().map(|b| &b.0)))
        {
            width = width.max(x.to_integer().try_into().unwrap_or(0));
        }
        offset += width + 2;
    }
    PolylineDrawing::new(positions, edges)
}

/// One pending edge crossing into the next level: the not yet placed target
/// and how many further levels the edge may still skip.
type Ent = (u8, u8);

/// A group of pending edges whose left-to-right order is not yet committed:
/// the upward edges of one placed vertex that no termination has separated
/// so far. Orders are resolved lazily, only when a termination forces a
/// group apart, which avoids enumerating the factorially many edge orders
/// up front.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bag {
    src: u8,
    /// Sorted by target; targets within a bag are distinct.
    ents: Vec<Ent>,
}

/// One item of a level's left-to-right sequence under construction.
#[derive(Debug, Clone)]
enum YItem {
    V(u8),
    B(Bag),
}

struct Sweep {
    ids: Vec<VertexId>,
    nbrs: Vec<Vec<u8>>,
    nbr_mask: Vec<u64>,
    n: usize,
    s: i64,
    strict: bool,
    full: u64,
    /// Twin classes: vertices connected by pairwise twin relations (equal
    /// neighborhoods up to each other). Any permutation within a class is a
    /// graph automorphism, so class members are interchangeable wherever
    /// their pending-edge profiles agree.
    class_of: Vec<u8>,
    memo: HashSet<(Vec<u8>, Vec<Vec<(u8, u8, u8)>>)>,
    level_of: Vec<i64>,
    found: Option<Vec<i64>>,
    stats: SearchStats,
}

impl Sweep {
    fn new(g: &Graph, s: i64, strict: bool) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let idx: BTreeMap<VertexId, u8> = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u8))
            .collect();
        let nbrs: Vec<Vec<u8>> = ids
            .iter()
            .map(|&v| g.neighbors(v).iter().map(|n| idx[n]).collect())
            .collect();
        let nbr_mask: Vec<u64> = nbrs
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect();
        let n = ids.len();
        // Spans above n - 1 are never needed: a strictly leveled drawing
        // with one vertex per level already achieves n - 1.
        let s = s.min(n.saturating_sub(1) as i64);
        // Union-find over the pairwise twin relation.
        let mut class_of: Vec<u8> = (0..n as u8).collect();
        fn find(c: &mut [u8], v: u8) -> u8 {
            if c[v as usize] == v {
                v
            } else {
                let r = find(c, c[v as usize]);
                c[v as usize] = r;
                r
            }
        }
        for u in 0..n as u8 {
            for v in u + 1..n as u8 {
                let mu = nbr_mask[u as usize] & !(1 << v);
                let mv = nbr_mask[v as usize] & !(1 << u);
                if mu == mv {
                    let (ru, rv) = (find(&mut class_of, u), find(&mut class_of, v));
                    if ru != rv {
                        class_of[rv.max(ru) as usize] = rv.min(ru);
                    }
                }
            }
        }
        for v in 0..n as u8 {
            find(&mut class_of, v);
        }
        Sweep {
            ids,
            nbrs,
            nbr_mask,
            n,
            s,
            strict,
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            class_of,
            memo: HashSet::new(),
            level_of: vec![-1; n],
            found: None,
            stats: SearchStats::default(),
        }
    }

    /// Decide feasibility; on success return a feasible leveling.
    fn run(&mut self) -> Option<Vec<(VertexId, i64)>> {
        if self.n == 0 {
            return Some(Vec::new());
        }
        if self.search(0, &[], 0) {
            let levels = self.found.take().expect("success records the leveling");
            Some(
                levels
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| (self.ids[i], l))
                    .collect(),
            )
        } else {
            None
        }
    }

    fn search(&mut self, mask: u64, frontier: &[Bag], depth: i64) -> bool {
        if mask == self.full {
            debug_assert!(frontier.is_empty());
            self.found = Some(self.level_of.clone());
            return true;
        }
        let fwd: Vec<Vec<Ent>> = frontier.iter().map(|b| b.ents.clone()).collect();
        let mut rev = fwd.clone();
        rev.reverse();
        // Memo key up to mirror reflection and twin relabeling: placed sets
        // become per-class counts, targets become (class, first-occurrence
        // rank within class).
        let mut counts = vec![0u8; self.n];
        for v in 0..self.n {
            if mask & (1 << v) != 0 {
                counts[self.class_of[v] as usize] += 1;
            }
        }
        let key = (counts, self.canon_seq(&fwd).min(self.canon_seq(&rev)));
        if !self.memo.insert(key) {
            return false;
        }
        if Self::tokens_dead(&fwd) {
            return false;
        }
        self.stats.levelings_examined += 1;
        let mut y = Vec::new();
        let mut pending = std::collections::VecDeque::new();
        let targeted = frontier
            .iter()
            .flat_map(|b| b.ents.iter())
            .fold(0u64, |m, &(t, _)| m | (1 << t));
        self.step(mask, frontier, &mut y, &mut pending, 0, targeted, depth)
    }

    /// Relabel a pending-edge sequence up to twin interchange: each target
    /// becomes its twin class plus the rank of its first appearance within
    /// that class.
    fn canon_seq(&self, seq: &[Vec<Ent>]) -> Vec<Vec<(u8, u8, u8)>> {
        let mut occ_idx = [u8::MAX; 64];
        let mut next = [0u8; 64];
        seq.iter()
            .map(|bag| {
                let mut b2: Vec<(u8, u8, u8)> = bag
                    .iter()
                    .map(|&(t, sl)| {
                        let c = self.class_of[t as usize];
                        if occ_idx[t as usize] == u8::MAX {
                            occ_idx[t as usize] = next[c as usize];
                            next[c as usize] += 1;
                        }
                        (c, occ_idx[t as usize], sl)
                    })
                    .collect();
                b2.sort_unstable();
                b2
            })
            .collect()
    }

    /// A pending-edge sequence is dead when its edges can no longer all
    /// terminate, regardless of future choices. Relative order of pending
    /// edges is preserved by passes, and terminating a target requires its
    /// edges to be contiguous, so for two targets `a` and `b`:
    ///
    /// - if `b` occurs strictly inside `a`'s occurrence interval and also
    ///   strictly outside it, the two can never both become contiguous;
    /// - if `b` occurs strictly inside `a`'s interval, every surviving order
    ///   keeps all of `b`'s edges inside `a`'s, so `b` must be placed on a
    ///   strictly earlier level than `a`: its effective deadline drops below
    ///   `a`'s, and a negative deadline is impossible;
    /// - if `a` and `b` share two or more positions (unresolved groups that
    ///   contain both), any crossing-free order nests one strictly inside
    ///   the other, so they cannot both be due at the next level.
    fn tokens_dead(tokens: &[Vec<Ent>]) -> bool {
        if tokens.len() < 2 {
            return false;
        }
        let mut occ: Vec<Vec<usize>> = vec![Vec::new(); 64];
        let mut dl = [u8::MAX; 64];
        let mut targets: Vec<u8> = Vec::new();
        for (p, ents) in tokens.iter().enumerate() {
            for &(t, sl) in ents {
                let o = &mut occ[t as usize];
                if o.is_empty() {
                    targets.push(t);
                }
                if o.last() != Some(&p) {
                    o.push(p);
                }
                dl[t as usize] = dl[t as usize].min(sl);
            }
        }
        let mut prec: Vec<(u8, u8)> = Vec::new(); // (inner, outer)
        for (ai, &a) in targets.iter().enumerate() {
            let oa = &occ[a as usize];
            let (fa, la) = (oa[0], *oa.last().unwrap());
            for &b in &targets[ai + 1..] {
                let ob = &occ[b as usize];
                let (fb, lb) = (ob[0], *ob.last().unwrap());
                let b_in = ob.iter().any(|&p| p > fa && p < la);
                let b_out = fb < fa || lb > la;
                let a_in = oa.iter().any(|&p| p > fb && p < lb);
                let a_out = fa < fb || la > lb;
                if b_in {
                    if b_out || a_in {
                        return true;
                    }
                    prec.push((b, a));
                } else if a_in {
                    if a_out {
                        return true;
                    }
                    prec.push((a, b));
                } else {
                    let shared = oa.iter().filter(|p| ob.contains(p)).count();
                    if shared >= 2 && dl[a as usize] == 0 && dl[b as usize] == 0 {
                        return true;
                    }
                }
            }
        }
        if prec.is_empty() {
            return false;
        }
        // Deadline propagation from outer to inner, to a fixpoint (the
        // containment relation is acyclic, so this terminates).
        let mut eff = [i32::MAX; 64];
        for &t in &targets {
            eff[t as usize] = dl[t as usize] as i32;
        }
        loop {
            let mut changed = false;
            for &(inner, outer) in &prec {
                let bound = eff[outer as usize] - 1;
                if bound < eff[inner as usize] {
                    eff[inner as usize] = bound;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        targets.iter().any(|&t| eff[t as usize] < 0)
    }

    /// Dead-state check on the committed part of the level under
    /// construction: items already in `y` or queued in `pending` have final
    /// relative order, so the next frontier is known to contain their
    /// pending edges in that order. Edges of the last committed vertex are
    /// skipped: it may still gain a horizontal neighbor to its right.
    ///
    /// Unprocessed slots are also projected one level ahead, restricted to
    /// targets that can no longer be placed on this level (an edge of theirs
    /// already passed, or a same-level neighbor is buried): their remaining
    /// edges certainly survive to the next frontier, in order, with one
    /// less unit of slack. Deadness of these token sequences is monotone
    /// under the insertions later steps can still make, so pruning on them
    /// is sound.
    ///
    /// With `hypo = Some(x)`, evaluates the state as it will look right
    /// after terminating target `x` at the current slot, independently of
    /// how the leftover edges split around `x`; a verdict here discards
    /// every split at once.
    fn committed_dead(
        &self,
        y: &[YItem],
        pending: &std::collections::VecDeque<YItem>,
        rest: &[Bag],
        mask: u64,
        placed: u64,
        hypo: Option<u8>,
    ) -> bool {
        let placed_all = placed | hypo.map_or(0, |x| 1u64 << x);
        let total = y.len() + pending.len();
        let slack = self.s.saturating_sub(1) as u8;
        let mut tokens: Vec<Vec<Ent>> = Vec::with_capacity(total + rest.len());
        let mut committed_targets = 0u64;
        for (p, it) in y.iter().chain(pending.iter()).enumerate() {
            match it {
                YItem::B(b) => {
                    for &(t, _) in &b.ents {
                        committed_targets |= 1 << t;
                    }
                    tokens.push(b.ents.clone());
                }
                YItem::V(v) => {
                    if hypo.is_none() && p + 1 == total {
                        continue;
                    }
                    let ups: Vec<Ent> = self.nbrs[*v as usize]
                        .iter()
                        .copied()
                        .filter(|&w| (mask | placed_all) & (1 << w) == 0)
                        .map(|w| (w, slack))
                        .collect();
                    if !ups.is_empty() {
                        tokens.push(ups);
                    }
                }
            }
        }
        // The only spot a vertex with an already placed neighbor can still
        // take is immediately after the final committed item.
        let open_nbr: Option<u8> = if hypo.is_some() {
            hypo
        } else {
            match pending.back().or_else(|| y.last()) {
                Some(YItem::V(v)) => Some(*v),
                _ => None,
            }
        };
        let unplaceable = |t: u8| -> bool {
            if committed_targets & (1 << t) != 0 {
                return true;
            }
            let pn = self.nbr_mask[t as usize] & placed_all;
            if pn == 0 {
                return false;
            }
            if self.strict || pn.count_ones() > 1 {
                return true;
            }
            Some(pn.trailing_zeros() as u8) != open_nbr
        };
        for b in rest {
            let proj: Vec<Ent> = b
                .ents
                .iter()
                .filter(|&&(t, _)| placed_all & (1 << t) == 0 && unplaceable(t))
                .copied()
                .collect();
            for &(_, sl) in &proj {
                if sl == 0 {
                    // Must terminate on this level but never can.
                    return true;
                }
            }
            if !proj.is_empty() {
                tokens.push(proj.iter().map(|&(t, sl)| (t, sl - 1)).collect());
            }
        }
        Self::tokens_dead(&tokens)
    }

    /// One step of the level construction. Branches, in order: emit the next
    /// committed item of an in-progress termination, terminate a target whose
    /// edges begin at the current slot, pass the current slot, close the
    /// level, or insert a free vertex at this boundary.
    #[allow(clippy::too_many_arguments)]
    fn step(
        &mut self,
        mask: u64,
        rest: &[Bag],
        y: &mut Vec<YItem>,
        pending: &mut std::collections::VecDeque<YItem>,
        placed: u64,
        targeted: u64,
        depth: i64,
    ) -> bool {
        self.stats.order_nodes += 1;
        if self.committed_dead(y, pending, rest, mask, placed, None) {
            return false;
        }
        if let Some(item) = pending.pop_front() {
            let ok = match &item {
                YItem::B(_) => {
                    y.push(item.clone());
                    let r = self.step(mask, rest, y, pending, placed, targeted, depth);
                    y.pop();
                    r
                }
                YItem::V(v) => self.push_vertex(*v, mask, rest, y, pending, placed, targeted, depth),
            };
            pending.push_front(item);
            if ok {
                return true;
            }
            return self.try_free(mask, rest, y, pending, placed, targeted, depth);
        }
        if let Some(bag0) = rest.first() {
            let mut tgts: Vec<u8> = bag0.ents.iter().map(|e| e.0).collect();
            // Prefer targets that add the fewest new pending edges: they
            // grow the frontier least, which finds witnesses sooner.
            tgts.sort_by_key(|&x| {
                ((self.nbr_mask[x as usize] & !(mask | placed)).count_ones(), x)
            });
            for (ti, &x) in tgts.iter().enumerate() {
                // Twin targets with identical pending-edge profiles are
                // interchangeable; terminate only the first of each kind.
                if tgts[..ti].iter().any(|&x2| {
                    self.class_of[x2 as usize] == self.class_of[x as usize]
                        && Self::same_profile(x2, x, rest, y)
                }) {
                    continue;
                }
                if self.try_terminate(x, mask, rest, y, pending, placed, targeted, depth) {
                    return true;
                }
            }
            if bag0.ents.iter().all(|e| e.1 >= 1) {
                let nb = Bag {
                    src: bag0.src,
                    ents: bag0.ents.iter().map(|&(t, sl)| (t, sl - 1)).collect(),
                };
                y.push(YItem::B(nb));
                let r = self.step(mask, &rest[1..], y, pending, placed, targeted, depth);
                y.pop();
                if r {
                    return true;
                }
            }
        } else if placed != 0 && self.finish(mask, y, placed, depth) {
            return true;
        }
        self.try_free(mask, rest, y, pending, placed, targeted, depth)
    }

    /// Place vertex `v` at the current position, checking horizontal
    /// adjacency against vertices already placed on this level.
    #[allow(clippy::too_many_arguments)]
    fn push_vertex(
        &mut self,
        v: u8,
        mask: u64,
        rest: &[Bag],
        y: &mut Vec<YItem>,
        pending: &mut std::collections::VecDeque<YItem>,
        placed: u64,
        targeted: u64,
        depth: i64,
    ) -> bool {
        let pn = self.nbr_mask[v as usize] & placed;
        if pn != 0 {
            // Earlier same-level neighbors must be exactly the item
            // immediately to the left (horizontal edges need consecutive
            // endpoints); strict mode forbids them outright.
            if self.strict || pn.count_ones() > 1 {
                return false;
            }
            let w = pn.trailing_zeros() as u8;
            match y.last() {
                Some(YItem::V(x)) if *x == w => {}
                _ => return false,
            }
        }
        y.push(YItem::V(v));
        self.level_of[v as usize] = depth;
        let r = self.step(mask, rest, y, pending, placed | (1 << v), targeted, depth);
        self.level_of[v as usize] = -1;
        y.pop();
        r
    }

    /// Insert a vertex with no pending edges at the current boundary.
    #[allow(clippy::too_many_arguments)]
    fn try_free(
        &mut self,
        mask: u64,
        rest: &[Bag],
        y: &mut Vec<YItem>,
        pending: &mut std::collections::VecDeque<YItem>,
        placed: u64,
        targeted: u64,
        depth: i64,
    ) -> bool {
        let taken = mask | placed | targeted;
        for v in 0..self.n as u8 {
            if taken & (1 << v) != 0 {
                continue;
            }
            // Unplaced untargeted twins are interchangeable: only the
            // smallest member of each class needs to be tried here.
            if (0..v).any(|w| taken & (1 << w) == 0 && self.class_of[w as usize] == self.class_of[v as usize])
            {
                continue;
            }
            if self.push_vertex(v, mask, rest, y, pending, placed, targeted, depth) {
                return true;
            }
        }
        false
    }

    /// Do targets `a` and `b` hold identical pending-edge positions and
    /// slacks? (Neither may have an edge that already passed this level.)
    fn same_profile(a: u8, b: u8, rest: &[Bag], y: &[YItem]) -> bool {
        let slack_in = |bag: &Bag, t: u8| bag.ents.iter().find(|e| e.0 == t).map(|e| e.1);
        if y.iter().any(|it| match it {
            YItem::B(bag) => slack_in(bag, a).is_some() || slack_in(bag, b).is_some(),
            YItem::V(_) => false,
        }) {
            return false;
        }
        rest.iter().all(|bag| slack_in(bag, a) == slack_in(bag, b))
    }

    /// Terminate target `x`, whose pending edges must occupy a consecutive
    /// run of slots beginning at the current one. Edges sharing the run's
    /// first slot may only stay left of `x` (they pass), edges sharing its
    /// last slot stay right of `x` (still available on this level); for a
    /// single-slot run the split is a free choice.
    #[allow(clippy::too_many_arguments)]
    fn try_terminate(
        &mut self,
        x: u8,
        mask: u64,
        rest: &[Bag],
        y: &mut Vec<YItem>,
        pending: &mut std::collections::VecDeque<YItem>,
        placed: u64,
        targeted: u64,
        depth: i64,
    ) -> bool {
        // An edge to x that already passed this level pins x above it.
        if y.iter().any(|it| match it {
            YItem::B(b) => b.ents.iter().any(|e| e.0 == x),
            YItem::V(_) => false,
        }) {
            return false;
        }
        let has_x = |b: &Bag| b.ents.iter().any(|e| e.0 == x);
        let mut k = 0;
        while k < rest.len() && has_x(&rest[k]) {
            k += 1;
        }
        debug_assert!(k >= 1);
        if rest[k..].iter().any(has_x) {
            return false;
        }
        // Interior slots of the run must hold nothing but their edge to x.
        if k >= 2 && rest[1..k - 1].iter().any(|b| b.ents.len() != 1) {
            return false;
        }
        // If the state is dead no matter how the leftovers split around x,
        // skip the whole enumeration.
        if self.committed_dead(y, pending, rest, mask, placed, Some(x)) {
            return false;
        }
        let minus_x = |b: &Bag| -> Vec<Ent> { b.ents.iter().copied().filter(|e| e.0 != x).collect() };
        let dec = |ents: &[Ent]| -> Vec<Ent> { ents.iter().map(|&(t, sl)| (t, sl - 1)).collect() };
        let emit = |me: &mut Self,
                    left: Vec<Ent>,
                    lsrc: u8,
                    right: Vec<Ent>,
                    rsrc: u8,
                    pending: &mut std::collections::VecDeque<YItem>,
                    y: &mut Vec<YItem>|
         -> bool {
            let mut pushed = 0;
            if !left.is_empty() {
                pending.push_back(YItem::B(Bag {
                    src: lsrc,
                    ents: dec(&left),
                }));
                pushed += 1;
            }
            pending.push_back(YItem::V(x));
            pushed += 1;
            let mut new_rest: Vec<Bag> = Vec::with_capacity(rest.len());
            if !right.is_empty() {
                new_rest.push(Bag {
                    src: rsrc,
                    ents: right,
                });
            }
            new_rest.extend_from_slice(&rest[k..]);
            let r = me.step(mask, &new_rest, y, pending, placed, targeted, depth);
            for _ in 0..pushed {
                pending.pop_back();
            }
            r
        };
        if k == 1 {
            let leftovers = minus_x(&rest[0]);
            // Leftovers that could still pass may go on either side of x;
            // exhausted ones must stay right (they terminate later on this
            // level). Try the all-right split first: it keeps every
            // remaining edge available for further terminations.
            let passable: Vec<Ent> = leftovers.iter().copied().filter(|e| e.1 >= 1).collect();
            let forced: Vec<Ent> = leftovers.iter().copied().filter(|e| e.1 == 0).collect();
            // Passable edges to twin targets of equal slack living only in
            // this bag are interchangeable: for those only the count sent
            // left matters, not the choice of subset.
            let elsewhere = |t: u8| -> bool {
                rest[1..]
                    .iter()
                    .any(|b| b.ents.iter().any(|e| e.0 == t))
                    || y.iter().any(|it| match it {
                        YItem::B(b) => b.ents.iter().any(|e| e.0 == t),
                        YItem::V(_) => false,
                    })
            };
            let mut groups: Vec<(u8, u8, Vec<Ent>)> = Vec::new(); // (class, slack, ents)
            let mut singles: Vec<Ent> = Vec::new();
            for &(t, sl) in &passable {
                if elsewhere(t) {
                    singles.push((t, sl));
                } else {
                    let c = self.class_of[t as usize];
                    match groups.iter_mut().find(|(gc, gs, _)| *gc == c && *gs == sl) {
                        Some((_, _, g)) => g.push((t, sl)),
                        None => groups.push((c, sl, vec![(t, sl)])),
                    }
                }
            }
            // Mixed-radix enumeration of left-side choices, all-right first
            // (it keeps every remaining edge available for further
            // terminations on this level).
            let mut choice = vec![0usize; groups.len() + singles.len()];
            loop {
                let mut left: Vec<Ent> = Vec::new();
                let mut right: Vec<Ent> = forced.clone();
                for (gi, (_, _, g)) in groups.iter().enumerate() {
                    left.extend_from_slice(&g[..choice[gi]]);
                    right.extend_from_slice(&g[choice[gi]..]);
                }
                for (si, &e) in singles.iter().enumerate() {
                    if choice[groups.len() + si] == 1 {
                        left.push(e);
                    } else {
                        right.push(e);
                    }
                }
                left.sort_unstable();
                right.sort_unstable();
                if emit(self, left, rest[0].src, right, rest[0].src, pending, y) {
                    return true;
                }
                let mut d = 0;
                loop {
                    if d == choice.len() {
                        return false;
                    }
                    let radix = if d < groups.len() {
                        groups[d].2.len() + 1
                    } else {
                        2
                    };
                    choice[d] += 1;
                    if choice[d] < radix {
                        break;
                    }
                    choice[d] = 0;
                    d += 1;
                }
            }
        } else {
            let left = minus_x(&rest[0]);
            if left.iter().any(|e| e.1 == 0) {
                return false;
            }
            let right = minus_x(&rest[k - 1]);
            emit(self, left, rest[0].src, right, rest[k - 1].src, pending, y)
        }
    }

    /// Close the level: commit the placed set, derive the next frontier from
    /// the final item sequence, and recurse.
    fn finish(&mut self, mask: u64, y: &[YItem], placed: u64, depth: i64) -> bool {
        let new_mask = mask | placed;
        let slack = self.s.saturating_sub(1) as u8;
        let mut frontier: Vec<Bag> = Vec::new();
        for it in y {
            match it {
                YItem::B(b) => frontier.push(b.clone()),
                YItem::V(v) => {
                    let ups: Vec<Ent> = self.nbrs[*v as usize]
                        .iter()
                        .copied()
                        .filter(|&w| new_mask & (1 << w) == 0)
                        .map(|w| (w, slack))
                        .collect();
                    if !ups.is_empty() {
                        if self.s == 0 {
                            return false;
                        }
                        frontier.push(Bag {
                            src: *v,
                            ents: ups,
                        });
                    }
                }
            }
        }
        self.search(new_mask, &frontier, depth + 1)
    }
}

/// Level planarity for one fixed leveling: backtracking over the
/// left-to-right orders of each level's items (vertices plus pass-through
/// points of longer edges), pruned by the order-validity conditions.
/// Returns a witness drawing, or `None` when no valid order exists.
pub fn level_planar_fixed_leveling(
    g: &Graph,
    l: &Leveling,
    cfg: &SolverConfig,
) -> Result<Option<PolylineDrawing>, SolverError> {
    check_cap(g, cfg)?;
    for v in g.vertices() {
        if l.get(v).is_none() {
            return Err(SolverError::InvalidInput(format!(
                "vertex {v} has no level"
            )));
        }
    }
    let total_span: i64 = g
        .edges()
        .map(|(u, v)| (l.get(u).unwrap() - l.get(v).unwrap()).abs())
        .sum();
    let items_budget = 4 * cfg.cap;
    let item_count = g.num_vertices() + total_span.max(0) as usize;
    if item_count > items_budget {
        return Err(SolverError::SizeCapExceeded {
            vertices: item_count,
            cap: items_budget,
        });
    }
    if g.num_vertices() == 0 {
        return Ok(Some(PolylineDrawing::new(
            BTreeMap::new(),
            std::iter::empty(),
        )));
    }
    Ok(FixedLeveling::new(g, l).solve())
}

/// Per-level slot during fixed-leveling search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Vertex(VertexId),
    /// Pass-through of the chain (edge) with the given index.
    Mid(usize),
}

struct FixedLeveling<'a> {
    g: &'a Graph,
    chain_edges: Vec<(VertexId, VertexId)>,
    levels: Vec<i64>,
    /// Items per used level, ascending.
    slots: Vec<Vec<Slot>>,
    level_of: BTreeMap<VertexId, i64>,
    chosen: Vec<Vec<Slot>>,
}

impl<'a> FixedLeveling<'a> {
    fn new(g: &'a Graph, l: &Leveling) -> Self {
        let level_of: BTreeMap<VertexId, i64> =
            g.vertices().map(|v| (v, l.get(v).unwrap())).collect();
        let chain_edges: Vec<(VertexId, VertexId)> = g.edges().collect();
        let mut per_level: BTreeMap<i64, Vec<Slot>> = BTreeMap::new();
        for (&v, &lv) in &level_of {
            per_level.entry(lv).or_default().push(Slot::Vertex(v));
        }
        for (ci, &(u, v)) in chain_edges.iter().enumerate() {
            let (a, b) = (level_of[&u].min(level_of[&v]), level_of[&u].max(level_of[&v]));
            for t in a + 1..b {
                per_level.entry(t).or_default().push(Slot::Mid(ci));
            }
        }
        let (levels, slots): (Vec<i64>, Vec<Vec<Slot>>) = per_level.into_iter().unzip();
        FixedLeveling {
            g,
            chain_edges,
            levels,
            slots,
            level_of,
            chosen: Vec::new(),
        }
    }

    fn solve(mut self) -> Option<PolylineDrawing> {
        if self.place_level(0) {
            Some(self.reconstruct())
        } else {
            None
        }
    }

    /// Where the chain of edge `ci` attaches at level index `li`: its vertex
    /// item at an endpoint level, its pass-through otherwise.
    fn attachment(&self, ci: usize, li: usize) -> Option<Slot> {
        let (u, v) = self.chain_edges[ci];
        let t = self.levels[li];
        let (lu, lv) = (self.level_of[&u], self.level_of[&v]);
        if t == lu && t == lv {
            return None; // horizontal; no single attachment
        }
        if t == lu {
            Some(Slot::Vertex(u))
        } else if t == lv {
            Some(Slot::Vertex(v))
        } else if t > lu.min(lv) && t < lu.max(lv) {
            Some(Slot::Mid(ci))
        } else {
            None
        }
    }

    fn place_level(&mut self, li: usize) -> bool {
        if li == self.slots.len() {
            return true;
        }
        let mut order: Vec<Slot> = Vec::new();
        let mut remaining = self.slots[li].clone();
        self.place_slot(li, &mut order, &mut remaining)
    }

    fn place_slot(&mut self, li: usize, order: &mut Vec<Slot>, remaining: &mut Vec<Slot>) -> bool {
        if remaining.is_empty() {
            if !self.horizontal_ok(li, order) {
                return false;
            }
            self.chosen.push(order.clone());
            if self.place_level(li + 1) {
                return true;
            }
            self.chosen.pop();
            return false;
        }
        for k in 0..remaining.len() {
            let slot = remaining[k];
            if !self.no_inversion(li, order, slot) {
                continue;
            }
            remaining.swap_remove(k);
            order.push(slot);
            if self.place_slot(li, order, remaining) {
                return true;
            }
            order.pop();
            remaining.push(slot);
            let last = remaining.len() - 1;
            remaining.swap(k, last);
        }
        false
    }

    /// Incremental inter-level pruning: appending `slot` must not invert any
    /// independent pair of edges spanning the gap below this level.
    fn no_inversion(&self, li: usize, order: &[Slot], slot: Slot) -> bool {
        if li == 0 {
            return true;
        }
        let below = &self.chosen[li - 1];
        let low_pos = |ci: usize| -> Option<usize> {
            self.attachment(ci, li - 1)
                .and_then(|a| below.iter().position(|&s| s == a))
        };
        let chains_at = |s: Slot| -> Vec<usize> {
            match s {
                Slot::Mid(ci) => vec![ci],
                Slot::Vertex(v) => (0..self.chain_edges.len())
                    .filter(|&ci| {
                        let (a, b) = self.chain_edges[ci];
                        a == v || b == v
                    })
                    .collect(),
            }
        };
        let gap_lows = |s: Slot| -> Vec<(usize, usize)> {
            chains_at(s)
                .into_iter()
                .filter_map(|ci| low_pos(ci).map(|p| (ci, p)))
                .collect()
        };
        let new_lows = gap_lows(slot);
        if new_lows.is_empty() {
            return true;
        }
        for &earlier in order {
            if earlier == slot {
                continue;
            }
            for &(eci, ep) in &gap_lows(earlier) {
                for &(nci, np) in &new_lows {
                    if eci == nci {
                        continue;
                    }
                    // Independent iff the lower attachments differ and the
                    // upper attachments differ (the latter holds: distinct
                    // slots). Earlier slot is left of `slot`, so its lower
                    // attachment must not be to the right.
                    let same_low = self.attachment(eci, li - 1) == self.attachment(nci, li - 1);
                    if !same_low && ep > np {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Horizontal edges of this level must have adjacent endpoints.
    fn horizontal_ok(&self, li: usize, order: &[Slot]) -> bool {
        let t = self.levels[li];
        for &(u, v) in &self.chain_edges {
            if self.level_of[&u] == t && self.level_of[&v] == t {
                let pu = order.iter().position(|&s| s == Slot::Vertex(u)).unwrap();
                let pv = order.iter().position(|&s| s == Slot::Vertex(v)).unwrap();
                if pu.abs_diff(pv) != 1 {
                    return false;
                }
            }
        }
        true
    }

    fn reconstruct(&self) -> PolylineDrawing {
        let mut items: Vec<Item> = Vec::new();
        let mut orders: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut vertex_item: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut mids: Vec<Vec<(i64, usize)>> = vec![Vec::new(); self.chain_edges.len()];
        for (li, order) in self.chosen.iter().enumerate() {
            let t = self.levels[li];
            let mut ids = Vec::new();
            for &slot in order {
                let id = items.len();
                match slot {
                    Slot::Vertex(v) => {
                        items.push(Item {
                            kind: ItemKind::Real(v),
                            level: t,
                        });
                        vertex_item.insert(v, id);
                    }
                    Slot::Mid(ci) => {
                        items.push(Item {
                            kind: ItemKind::Virtual { chain: ci },
                            level: t,
                        });
                        mids[ci].push((t, id));
                    }
                }
                ids.push(id);
            }
            orders.insert(t, ids);
        }
        let mut chains = Vec::new();
        for (ci, &(u, v)) in self.chain_edges.iter().enumerate() {
            let ascending = self.level_of[&u] <= self.level_of[&v];
            let mut m = mids[ci].clone();
            m.sort_unstable();
            if !ascending {
                m.reverse();
            }
            let mut seq = vec![vertex_item[&u]];
            seq.extend(m.into_iter().map(|(_, id)| id));
            seq.push(vertex_item[&v]);
            chains.push(Chain { u, v, items: seq });
        }
        let d = materialize(&NormalizedDrawing::new(items, orders, chains));
        debug_assert_eq!(check_geometric(&d), Verdict::Valid);
        debug_assert!(self.g.num_edges() == d.edges().len());
        d
    }
}

/// Independent cross-oracle: enumerate every leveling into at most `n`
/// levels (no pruning, no symmetry reduction) and test each with the
/// fixed-leveling backtracker; return the minimum achieved span. `None`
/// when no leveling works (non-planar input). Intended for `n <= 6`.
pub fn min_span_naive(g: &Graph, strict: bool) -> Option<i64> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    if n == 0 {
        return Some(0);
    }
    // Generous cap: the subdivision budget must admit every enumerated
    // leveling, not just the optimal ones.
    let cfg = SolverConfig {
        cap: n * n.max(8),
        strict,
        ..SolverConfig::default()
    };
    let mut best: Option<i64> = None;
    let mut assign = vec![0i64; n];
    loop {
        let l = Leveling::new(verts.iter().copied().zip(assign.iter().copied()).collect());
        let min_used = assign.iter().min().unwrap();
        let skip_strict = strict
            && g.edges()
                .any(|(u, v)| l.get(u) == l.get(v));
        if *min_used == 0 && !skip_strict {
            let s = span_of(&l, g).unwrap();
            if best.map_or(true, |b| s < b)
                && level_planar_fixed_leveling(g, &l, &cfg)
                    .ok()
                    .flatten()
                    .is_some()
            {
                best = Some(s);
            }
        }
        // Next assignment in mixed-radix order.
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            assign[i] += 1;
            if assign[i] < n as i64 {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::Leveling;
    use crate::graph::build_graph;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn path_has_span_zero() {
        let g = build_graph(1..=5, [(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let r = min_span_wlp(&g, &cfg()).unwrap();
        match r.optimum {
            Optimum::Feasible { span, ref witness } => {
                assert_eq!(span, 0);
                assert_eq!(check_geometric(witness), Verdict::Valid);
                assert_eq!(witness.span(), 0);
            }
            Optimum::NonPlanar => panic!("path is planar"),
        }
    }

    #[test]
    fn triangle_has_span_one() {
        let g = build_graph(1..=3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let r = min_span_wlp(&g, &cfg()).unwrap();
        match r.optimum {
            Optimum::Feasible { span, ref witness } => {
                assert_eq!(span, 1);
                assert_eq!(witness.span(), 1);
                assert_eq!(check_geometric(witness), Verdict::Valid);
            }
            Optimum::NonPlanar => panic!("triangle is planar"),
        }
    }

    #[test]
    fn k24_has_span_one() {
        let g = build_graph(
            1..=6,
            [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6)],
        )
        .unwrap();
        let r = min_span_wlp(&g, &cfg()).unwrap();
        match r.optimum {
            Optimum::Feasible { span, .. } => assert_eq!(span, 1),
            Optimum::NonPlanar => panic!("K2,4 is planar"),
        }
    }

    #[test]
    fn k5_is_nonplanar() {
        let g = build_graph(
            1..=5,
            (1..=5u64).flat_map(|u| (u + 1..=5).map(move |v| (u, v))),
        )
        .unwrap();
        let r = min_span_wlp(&g, &cfg()).unwrap();
        assert_eq!(r.optimum, Optimum::NonPlanar);
        assert!(!decide_span(&g, 4, &cfg()).unwrap().feasible);
    }

    #[test]
    fn decide_span_is_monotone_on_k4() {
        let g = build_graph(1..=4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let mut seen_true = false;
        for s in 0..4 {
            let d = decide_span(&g, s, &cfg()).unwrap();
            if seen_true {
                assert!(d.feasible, "monotonicity violated at s = {s}");
            }
            seen_true |= d.feasible;
            if d.feasible {
                let w = d.witness.unwrap();
                assert!(w.span() <= s);
                assert_eq!(check_geometric(&w), Verdict::Valid);
            }
        }
        assert!(seen_true);
    }

    #[test]
    fn cap_is_enforced() {
        let g = build_graph(1..=11, (1..=10u64).map(|v| (v, v + 1))).unwrap();
        assert_eq!(
            decide_span(&g, 1, &cfg()),
            Err(SolverError::SizeCapExceeded {
                vertices: 11,
                cap: 10
            })
        );
        assert!(decide_span(&g, 1, &SolverConfig::with_cap(11)).is_ok());
    }

    #[test]
    fn fixed_leveling_c4_opposite_pairs_feasible() {
        let g = build_graph(1..=4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let l = Leveling::new([(1, 0), (2, 1), (3, 1), (4, 0)].into_iter().collect());
        let w = level_planar_fixed_leveling(&g, &l, &cfg()).unwrap();
        let w = w.expect("C4 with opposite edge pairs on two levels is feasible");
        assert_eq!(check_geometric(&w), Verdict::Valid);
        assert_eq!(w.span(), 1);
    }

    #[test]
    fn fixed_leveling_c4_alternating_is_infeasible() {
        // C4 on two proper levels is K2,2, which is not 2-level planar.
        let g = build_graph(1..=4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let l = Leveling::new([(1, 0), (2, 1), (3, 0), (4, 1)].into_iter().collect());
        assert_eq!(level_planar_fixed_leveling(&g, &l, &cfg()).unwrap(), None);
    }

    #[test]
    fn fixed_leveling_k24_poles_together_infeasible() {
        let g = build_graph(
            1..=6,
            [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6)],
        )
        .unwrap();
        let l = Leveling::new(
            [(1, 0), (2, 0), (3, 1), (4, 1), (5, 1), (6, 1)]
                .into_iter()
                .collect(),
        );
        assert_eq!(level_planar_fixed_leveling(&g, &l, &cfg()).unwrap(), None);
    }

    #[test]
    fn fixed_leveling_horizontal_edge_feasible() {
        let g = build_graph(1..=2, [(1, 2)]).unwrap();
        let l = Leveling::new([(1, 0), (2, 0)].into_iter().collect());
        let w = level_planar_fixed_leveling(&g, &l, &cfg()).unwrap().unwrap();
        assert_eq!(w.span(), 0);
    }

    #[test]
    fn sweep_agrees_with_naive_on_small_graphs() {
        let cases: Vec<Graph> = vec![
            build_graph(1..=3, [(1, 2), (2, 3), (1, 3)]).unwrap(),
            build_graph(1..=4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap(),
            build_graph(1..=4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap(),
            build_graph(1..=5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3)]).unwrap(),
            build_graph(1..=5, [(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap(),
        ];
        for g in &cases {
            let naive = min_span_naive(g, false);
            let r = min_span_wlp(g, &cfg()).unwrap();
            match (naive, r.optimum) {
                (Some(a), Optimum::Feasible { span, .. }) => assert_eq!(a, span),
                (None, Optimum::NonPlanar) => {}
                other => panic!("oracles disagree: {other:?}"),
            }
        }
    }

    #[test]
    fn strict_mode_forbids_horizontal_edges() {
        let g = build_graph(1..=2, [(1, 2)]).unwrap();
        let strict = SolverConfig {
            strict: true,
            ..cfg()
        };
        assert!(!decide_span(&g, 0, &strict).unwrap().feasible);
        let d = decide_span(&g, 1, &strict).unwrap();
        assert!(d.feasible);
        assert!(d.witness.unwrap().is_strictly_leveled());
        assert_eq!(min_span_naive(&g, true), Some(1));
    }

    #[test]
    fn disconnected_components_take_the_max() {
        let g = build_graph(1..=5, [(1, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let r = min_span_wlp(&g, &cfg()).unwrap();
        match r.optimum {
            Optimum::Feasible { span, ref witness } => {
                assert_eq!(span, 1);
                assert_eq!(check_geometric(witness), Verdict::Valid);
                assert_eq!(witness.positions().len(), 5);
            }
            Optimum::NonPlanar => panic!("planar"),
        }
    }
}
