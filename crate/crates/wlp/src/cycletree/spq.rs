//! SPQ decomposition of almost-3-connected path-trees.
//!
//! A path-tree consists of a path `λ = p₀, ..., p_m = r`, a tree `T`
//! containing a root `ρ`, and edges between the two parts; it is
//! almost-3-connected when adding the edges `(ρ,λ)`, `(ρ,r)` and `(λ,r)`
//! makes it 3-connected. Internally triangulated path-trees decompose into a
//! tree of S-, P- and Q-nodes whose pertinent graphs each span a pertinent
//! triple `(ρ_μ, λ_μ, r_μ)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{
    build_graph, edge, is_k_connected, planar_embedding, Edge, Graph, MarkedGraph, VertexId,
};

use super::CycleTreeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpqKind {
    /// Series: a unique child hangs below `ρ_μ` via the tree edge
    /// `(ρ_μ, ρ_ν)`; the child spans the same `(λ, r)` interval.
    S,
    /// Parallel: children in left-to-right order share `ρ_μ` and chain their
    /// intervals (`λ_{νᵢ} = r_{ν_{i-1}}`).
    P,
    /// Leaf: the pertinent triple with the path edge `(λ, r)`.
    Q,
}

/// One node of the decomposition. The edge sets of the pertinent graphs are
/// distributed over the tree so that every input edge is owned exactly once:
/// a Q-node owns its path edge `(λ,r)` plus whichever of the fan edges
/// `(ρ,λ)`, `(ρ,r)` exist; an S-node owns the tree edge to its child plus
/// its fan edges; a P-node owns nothing (its fan edges are recorded on the
/// children, deduplicated on reassembly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpqNode {
    pub kind: SpqKind,
    pub rho: VertexId,
    pub lambda: VertexId,
    pub r: VertexId,
    /// Child node ids, left to right. Empty for Q, singleton for S.
    pub children: Vec<usize>,
    /// Whether the fan edge `(ρ, λ)` is present in the input graph.
    pub has_rho_lambda: bool,
    /// Whether the fan edge `(ρ, r)` is present in the input graph.
    pub has_rho_r: bool,
    /// Q-nodes only: whether the path edge `(λ, r)` is present (it is,
    /// except for a root whose closing edge was virtual).
    pub has_lambda_r: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpqTree {
    nodes: Vec<SpqNode>,
    root: usize,
}

impl SpqTree {
    /// Assemble a decomposition from explicit nodes (used by generators and
    /// tests; `build_spq` is the validating constructor from a graph).
    pub fn new(nodes: Vec<SpqNode>, root: usize) -> Self {
        SpqTree { nodes, root }
    }

    pub fn nodes(&self) -> &[SpqNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &SpqNode {
        &self.nodes[id]
    }

    /// Reconstruct the decomposed graph from the per-node edge ownership;
    /// inverse of `build_spq` on valid inputs.
    pub fn assemble(&self) -> Graph {
        let mut vs: BTreeSet<VertexId> = BTreeSet::new();
        let mut es: BTreeSet<Edge> = BTreeSet::new();
        for (id, n) in self.nodes.iter().enumerate() {
            vs.extend([n.rho, n.lambda, n.r]);
            if n.has_rho_lambda {
                es.insert(edge(n.rho, n.lambda));
            }
            if n.has_rho_r {
                es.insert(edge(n.rho, n.r));
            }
            match n.kind {
                SpqKind::Q => {
                    if n.has_lambda_r {
                        es.insert(edge(n.lambda, n.r));
                    }
                }
                SpqKind::S => {
                    es.insert(edge(n.rho, self.nodes[n.children[0]].rho));
                }
                SpqKind::P => {}
            }
            debug_assert!(match n.kind {
                SpqKind::Q => n.children.is_empty(),
                SpqKind::S => n.children.len() == 1,
                SpqKind::P => n.children.len() >= 2,
            }, "malformed node {id}");
        }
        build_graph(vs, es).expect("ownership sets form a simple graph")
    }
}

/// Decompose an internally triangulated almost-3-connected path-tree given
/// by a marked graph with marks `rho`, `lambda` and `r`. The path/tree
/// partition is recovered from the (unique) planar embedding of the
/// 3-connected augmentation: the path lies on the face that contains `λ`
/// and `r` but not `ρ`.
pub fn build_spq(mg: &MarkedGraph) -> Result<SpqTree, CycleTreeError> {
    let need = |role: &str| {
        mg.mark(role).ok_or_else(|| {
            CycleTreeError::NotAlmost3Connected(format!("missing mark {role:?}"))
        })
    };
    let rho = need("rho")?;
    let lambda = need("lambda")?;
    let r = need("r")?;
    let g = &mg.graph;
    if rho == lambda || rho == r || lambda == r {
        return Err(CycleTreeError::NotAlmost3Connected(
            "marks must name three distinct vertices".into(),
        ));
    }
    if g.num_vertices() == 3 {
        // Base case: a single triangle (possibly with some of the three
        // closing edges virtual); the path is the edge (λ, r).
        if !g.has_edge(lambda, r) {
            return Err(CycleTreeError::NotAlmost3Connected(
                "three vertices but no path edge (λ, r)".into(),
            ));
        }
        let node = SpqNode {
            kind: SpqKind::Q,
            rho,
            lambda,
            r,
            children: Vec::new(),
            has_rho_lambda: g.has_edge(rho, lambda),
            has_rho_r: g.has_edge(rho, r),
            has_lambda_r: true,
        };
        return Ok(SpqTree::new(vec![node], 0));
    }
    let aug = g
        .with_edge(rho, lambda)
        .with_edge(rho, r)
        .with_edge(lambda, r);
    if !is_k_connected(&aug, 3) {
        return Err(CycleTreeError::NotAlmost3Connected(
            "augmentation by the three closing edges is not 3-connected".into(),
        ));
    }
    let pg = planar_embedding(&aug).ok_or_else(|| {
        CycleTreeError::NotAlmost3Connected("augmented graph is not planar".into())
    })?;
    // Find the path face: it contains λ and r (consecutively, via the
    // closing edge) but not ρ, its other consecutive pairs are original
    // edges, and the remaining vertices induce a tree containing ρ.
    let mut chosen: Option<(Vec<VertexId>, usize)> = None;
    for (fi, walk) in pg.faces().iter().enumerate() {
        if walk.contains(&rho) || !walk.contains(&lambda) || !walk.contains(&r) {
            continue;
        }
        let m = walk.len();
        let set: BTreeSet<VertexId> = walk.iter().copied().collect();
        if set.len() != m {
            continue;
        }
        let il = walk.iter().position(|&x| x == lambda).unwrap();
        let path: Vec<VertexId> = if walk[(il + 1) % m] == r {
            // Closing pair (λ, r): the path runs backwards around the walk.
            (0..m).map(|j| walk[(il + m - j) % m]).collect()
        } else if walk[(il + m - 1) % m] == r {
            (0..m).map(|j| walk[(il + j) % m]).collect()
        } else {
            continue;
        };
        debug_assert_eq!((path[0], *path.last().unwrap()), (lambda, r));
        if !path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            continue;
        }
        let tree_vs: BTreeSet<VertexId> = g.vertices().filter(|v| !set.contains(v)).collect();
        if !tree_vs.contains(&rho) {
            continue;
        }
        let t = g.induced(&tree_vs);
        if !crate::graph::is_connected(&t) || t.num_edges() != t.num_vertices() - 1 {
            continue;
        }
        chosen = Some((path, fi));
        break;
    }
    let (path, face_idx) = chosen.ok_or_else(|| {
        CycleTreeError::NotAlmost3Connected(
            "no face of the augmentation separates the path from a tree".into(),
        )
    })?;
    if pg
        .faces()
        .iter()
        .enumerate()
        .any(|(fi, w)| fi != face_idx && w.len() != 3)
    {
        return Err(CycleTreeError::NotInternallyTriangulated);
    }
    let tree_vs: BTreeSet<VertexId> = g
        .vertices()
        .filter(|v| !path.contains(v))
        .collect();
    build_spq_parts(g, &path, rho, &tree_vs)
}

/// Decompose with a known partition: `path` from λ to r, `tree_vs` the tree
/// vertices (containing `rho`, inducing a tree). Every structural claim the
/// recursion relies on is re-verified, so malformed inputs surface as
/// errors rather than bad decompositions.
pub(crate) fn build_spq_parts(
    g: &Graph,
    path: &[VertexId],
    rho: VertexId,
    tree_vs: &BTreeSet<VertexId>,
) -> Result<SpqTree, CycleTreeError> {
    let tree = g.induced(tree_vs);
    if !crate::graph::is_connected(&tree) || tree.num_edges() + 1 != tree.num_vertices() {
        return Err(CycleTreeError::NotAlmost3Connected(
            "internal part does not induce a tree".into(),
        ));
    }
    // Root the tree at ρ.
    let mut kids: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut seen = BTreeSet::from([rho]);
    let mut queue = vec![rho];
    while let Some(x) = queue.pop() {
        for &c in tree.neighbors(x) {
            if seen.insert(c) {
                kids.entry(x).or_default().push(c);
                queue.push(c);
            }
        }
    }
    let mut b = Builder {
        g,
        path,
        kids,
        nodes: Vec::new(),
    };
    let root = b.expand(rho, 0, path.len() - 1)?;
    Ok(SpqTree::new(b.nodes, root))
}

struct Builder<'a> {
    g: &'a Graph,
    path: &'a [VertexId],
    kids: BTreeMap<VertexId, Vec<VertexId>>,
    nodes: Vec<SpqNode>,
}

impl Builder<'_> {
    fn push(&mut self, n: SpqNode) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    /// Build the node whose pertinent graph is rooted at `rho` over the path
    /// interval `[a..=b]` (inclusive indices into `self.path`). All tree
    /// children of `rho` must be claimed by exactly one sub-interval.
    fn expand(&mut self, rho: VertexId, a: usize, b: usize) -> Result<usize, CycleTreeError> {
        let nbrs: Vec<usize> = (a..=b)
            .filter(|&i| self.g.has_edge(rho, self.path[i]))
            .collect();
        if nbrs.first() != Some(&a) || nbrs.last() != Some(&b) {
            return Err(CycleTreeError::NotAlmost3Connected(format!(
                "vertex {rho} is not adjacent to both extremes of its interval"
            )));
        }
        let children = self.kids.get(&rho).cloned().unwrap_or_default();
        let mut claimed: BTreeSet<VertexId> = BTreeSet::new();
        let mut parts: Vec<usize> = Vec::new();
        for pq in nbrs.windows(2) {
            let (p, q) = (pq[0], pq[1]);
            let (vp, vq) = (self.path[p], self.path[q]);
            let cands: Vec<VertexId> = children
                .iter()
                .copied()
                .filter(|&t| self.g.has_edge(t, vp) && self.g.has_edge(t, vq))
                .collect();
            match cands.as_slice() {
                [] => {
                    if q != p + 1 {
                        return Err(CycleTreeError::NotInternallyTriangulated);
                    }
                    parts.push(self.push(SpqNode {
                        kind: SpqKind::Q,
                        rho,
                        lambda: vp,
                        r: vq,
                        children: Vec::new(),
                        has_rho_lambda: true,
                        has_rho_r: true,
                        has_lambda_r: true,
                    }));
                }
                [t] => {
                    if !claimed.insert(*t) {
                        return Err(CycleTreeError::NotAlmost3Connected(format!(
                            "tree vertex {t} claimed by two intervals"
                        )));
                    }
                    let inner = self.expand(*t, p, q)?;
                    parts.push(self.push(SpqNode {
                        kind: SpqKind::S,
                        rho,
                        lambda: vp,
                        r: vq,
                        children: vec![inner],
                        has_rho_lambda: true,
                        has_rho_r: true,
                        has_lambda_r: false,
                    }));
                }
                _ => {
                    return Err(CycleTreeError::NotAlmost3Connected(format!(
                        "two tree children of {rho} share the corner ({vp}, {vq})"
                    )));
                }
            }
        }
        if claimed.len() != children.len() {
            return Err(CycleTreeError::NotAlmost3Connected(format!(
                "tree children of {rho} not covered by its fan"
            )));
        }
        Ok(if parts.len() == 1 {
            parts[0]
        } else {
            self.push(SpqNode {
                kind: SpqKind::P,
                rho,
                lambda: self.path[a],
                r: self.path[b],
                children: parts,
                has_rho_lambda: true,
                has_rho_r: true,
                has_lambda_r: false,
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn marked(
        vs: impl IntoIterator<Item = VertexId>,
        es: impl IntoIterator<Item = (VertexId, VertexId)>,
        rho: VertexId,
        lambda: VertexId,
        r: VertexId,
    ) -> MarkedGraph {
        let g = build_graph(vs, es).unwrap();
        MarkedGraph::new(
            g,
            BTreeMap::from([
                ("rho".to_string(), rho),
                ("lambda".to_string(), lambda),
                ("r".to_string(), r),
            ]),
        )
        .unwrap()
    }

    #[test]
    fn triangle_is_a_single_q_node() {
        let mg = marked([1, 2, 3], [(1, 2), (1, 3), (2, 3)], 1, 2, 3);
        let t = build_spq(&mg).unwrap();
        assert_eq!(t.nodes().len(), 1);
        let n = t.node(t.root());
        assert_eq!(n.kind, SpqKind::Q);
        assert_eq!((n.rho, n.lambda, n.r), (1, 2, 3));
        assert_eq!(t.assemble(), mg.graph);
    }

    #[test]
    fn fan_decomposes_into_p_over_q_nodes() {
        // ρ = 0 adjacent to the whole path 1-2-3-4.
        let mg = marked(
            0..=4,
            [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)],
            0,
            1,
            4,
        );
        let t = build_spq(&mg).unwrap();
        let root = t.node(t.root());
        assert_eq!(root.kind, SpqKind::P);
        assert_eq!(root.children.len(), 3);
        for (&c, want_l) in root.children.iter().zip([1, 2, 3]) {
            let n = t.node(c);
            assert_eq!(n.kind, SpqKind::Q);
            assert_eq!((n.rho, n.lambda, n.r), (0, want_l, want_l + 1));
        }
        assert_eq!(t.assemble(), mg.graph);
    }

    #[test]
    fn stacked_tree_levels_give_an_s_node() {
        // ρ = 0 over a second tree vertex 4 that fans onto the path 1-2-3.
        let mg = marked(
            0..=4,
            [
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
        );
        let t = build_spq(&mg).unwrap();
        let root = t.node(t.root());
        assert_eq!(root.kind, SpqKind::S);
        let inner = t.node(root.children[0]);
        assert_eq!(inner.kind, SpqKind::P);
        assert_eq!(inner.rho, 4);
        assert_eq!(t.assemble(), mg.graph);
    }

    #[test]
    fn missing_fan_edge_is_rejected() {
        // ρ not adjacent to λ: the closing fan edge is required.
        let mg = marked(
            0..=4,
            [(0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)],
            0,
            1,
            4,
        );
        assert!(matches!(
            build_spq(&mg),
            Err(CycleTreeError::NotAlmost3Connected(_))
        ));
    }

    #[test]
    fn quadrilateral_face_is_rejected() {
        // Path 1-2-3-4 with ρ adjacent only to 1, 2, 4: the corner (2, 4)
        // spans two path edges with no tree vertex inside.
        let mg = marked(
            0..=4,
            [(0, 1), (0, 2), (0, 4), (1, 2), (2, 3), (3, 4)],
            0,
            1,
            4,
        );
        assert!(matches!(
            build_spq(&mg),
            Err(CycleTreeError::NotInternallyTriangulated)
                | Err(CycleTreeError::NotAlmost3Connected(_))
        ));
    }
}
