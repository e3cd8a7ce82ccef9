//! Simple graphs, plane graphs (rotation systems), and structural helpers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

/// Opaque stable vertex identifier. All iteration orders are sorted by id so
/// every algorithm in the crate is reproducible.
pub type VertexId = u64;

/// Undirected edge with normalized endpoint order (`0 < 1`).
pub type Edge = (VertexId, VertexId);

/// Normalize an endpoint pair into the canonical `(min, max)` form.
pub fn edge(u: VertexId, v: VertexId) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge ({0}, {1})")]
    ParallelEdge(VertexId, VertexId),
    #[error("edge endpoint {0} is not a declared vertex")]
    DanglingEndpoint(VertexId),
    #[error("rotation of vertex {0} does not list its neighbors exactly once")]
    BadRotation(VertexId),
    #[error("rotation system is not planar: V - E + F = {0}, expected {1}")]
    NonPlanarRotation(i64, i64),
    #[error("declared outer face does not match any traced face")]
    UnknownOuterFace,
    #[error("mark {0:?} refers to missing vertex {1}")]
    DanglingMark(String, VertexId),
}

/// Simple undirected graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
    adj: BTreeMap<VertexId, Vec<VertexId>>,
}

/// Validating constructor for [`Graph`].
pub fn build_graph(
    vertices: impl IntoIterator<Item = VertexId>,
    edges: impl IntoIterator<Item = (VertexId, VertexId)>,
) -> Result<Graph, GraphError> {
    let vs: BTreeSet<VertexId> = vertices.into_iter().collect();
    let mut es: BTreeSet<Edge> = BTreeSet::new();
    for (u, v) in edges {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for w in [u, v] {
            if !vs.contains(&w) {
                return Err(GraphError::DanglingEndpoint(w));
            }
        }
        if !es.insert(edge(u, v)) {
            return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
        }
    }
    Ok(Graph::from_parts(vs, es))
}

impl Graph {
    fn from_parts(vertices: BTreeSet<VertexId>, edges: BTreeSet<Edge>) -> Self {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(u, v) in &edges {
            adj.get_mut(&u).unwrap().push(v);
            adj.get_mut(&v).unwrap().push(u);
        }
        for nb in adj.values_mut() {
            nb.sort_unstable();
        }
        Graph {
            vertices,
            edges,
            adj,
        }
    }

    /// Build without validation from already-normalized parts. Used
    /// internally where invariants hold by construction.
    pub(crate) fn from_sets(vertices: BTreeSet<VertexId>, edges: BTreeSet<Edge>) -> Self {
        Self::from_parts(vertices, edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&edge(u, v))
    }

    /// Neighbors of `v` in increasing id order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    /// Subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let vs: BTreeSet<VertexId> = self.vertices.intersection(keep).copied().collect();
        let es = self
            .edges
            .iter()
            .filter(|(u, v)| vs.contains(u) && vs.contains(v))
            .copied()
            .collect();
        Graph::from_parts(vs, es)
    }

    /// Graph with the listed vertices (and their incident edges) removed.
    pub fn without_vertices(&self, drop: &BTreeSet<VertexId>) -> Graph {
        let keep: BTreeSet<VertexId> = self.vertices.difference(drop).copied().collect();
        self.induced(&keep)
    }

    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Graph {
        let mut es = self.edges.clone();
        es.insert(edge(u, v));
        Graph::from_parts(self.vertices.clone(), es)
    }

    pub fn without_edge(&self, u: VertexId, v: VertexId) -> Graph {
        let mut es = self.edges.clone();
        es.remove(&edge(u, v));
        Graph::from_parts(self.vertices.clone(), es)
    }

    /// Connected components as sorted vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            comp.insert(start);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Two-coloring if the graph is bipartite, `None` otherwise.
    pub fn bipartition(&self) -> Option<BTreeMap<VertexId, bool>> {
        let mut color: BTreeMap<VertexId, bool> = BTreeMap::new();
        for &start in &self.vertices {
            if color.contains_key(&start) {
                continue;
            }
            color.insert(start, false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = color[&v];
                for &w in self.neighbors(v) {
                    match color.get(&w) {
                        None => {
                            color.insert(w, !c);
                            queue.push_back(w);
                        }
                        Some(&cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color)
    }
}

/// `true` when the graph is connected (empty and single-vertex graphs count
/// as connected).
pub fn is_connected(g: &Graph) -> bool {
    g.components().len() <= 1
}

/// k-connectivity test for k in {2, 3}: the graph is k-connected when it has
/// more than k vertices and no (k-1)-subset of vertices disconnects it.
/// 2-connectivity is one articulation-point scan; 3-connectivity removes
/// each vertex in turn and re-checks 2-connectivity.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    assert!(k == 2 || k == 3, "only k = 2 and k = 3 are supported");
    if g.num_vertices() <= k {
        return false;
    }
    if !is_connected(g) {
        return false;
    }
    if k == 2 {
        return !has_articulation_point(g);
    }
    g.vertices().all(|v| {
        let h = g.without_vertices(&BTreeSet::from([v]));
        is_connected(&h) && !has_articulation_point(&h)
    })
}

/// Whether a connected graph has an articulation point (iterative lowpoint
/// computation over a DFS forest rooted at the smallest vertex).
fn has_articulation_point(g: &Graph) -> bool {
    let Some(root) = g.vertices().next() else {
        return false;
    };
    let mut num: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut low: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut next = 0usize;
    let mut root_children = 0usize;
    // Stack of (vertex, index into its neighbor list).
    let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
    num.insert(root, 0);
    low.insert(root, 0);
    next += 1;
    while let Some(&(v, i)) = stack.last() {
        let nbrs = g.neighbors(v);
        if i < nbrs.len() {
            let w = nbrs[i];
            stack.last_mut().unwrap().1 += 1;
            if let Some(&nw) = num.get(&w) {
                if parent.get(&v) != Some(&w) {
                    let lv = low.get_mut(&v).unwrap();
                    *lv = (*lv).min(nw);
                }
            } else {
                num.insert(w, next);
                low.insert(w, next);
                next += 1;
                parent.insert(w, v);
                if v == root {
                    root_children += 1;
                }
                stack.push((w, 0));
            }
        } else {
            stack.pop();
            if let Some(&p) = parent.get(&v) {
                let lv = low[&v];
                if p != root && lv >= num[&p] {
                    return true;
                }
                let lp = low.get_mut(&p).unwrap();
                *lp = (*lp).min(lv);
            }
        }
    }
    root_children > 1
}

/// Remove every unprotected degree-2 vertex, connecting its two neighbors;
/// parallel edges arising this way are merged into a single edge. Repeats
/// until no unprotected degree-2 vertex remains (the result is idempotent).
pub fn smooth_degree_two(g: &Graph, protected: &BTreeSet<VertexId>) -> Graph {
    let mut cur = g.clone();
    loop {
        let target = cur
            .vertices()
            .find(|v| !protected.contains(v) && cur.degree(*v) == 2);
        let Some(v) = target else {
            return cur;
        };
        let nb = cur.neighbors(v).to_vec();
        let (a, b) = (nb[0], nb[1]);
        let mut es = cur.edge_set().clone();
        es.remove(&edge(v, a));
        es.remove(&edge(v, b));
        es.insert(edge(a, b));
        let mut vs = cur.vertex_set().clone();
        vs.remove(&v);
        cur = Graph::from_parts(vs, es);
    }
}

/// Graph with named vertices (poles, extremes, roots of gadgets).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: Graph,
    pub marks: BTreeMap<String, VertexId>,
}

impl MarkedGraph {
    pub fn new(graph: Graph, marks: BTreeMap<String, VertexId>) -> Result<Self, GraphError> {
        for (role, &v) in &marks {
            if !graph.contains_vertex(v) {
                return Err(GraphError::DanglingMark(role.clone(), v));
            }
        }
        Ok(MarkedGraph { graph, marks })
    }

    pub fn mark(&self, role: &str) -> Option<VertexId> {
        self.marks.get(role).copied()
    }
}

/// A face boundary walk: the cyclic sequence of vertices visited; the walk
/// `(v0, v1, ..., v_{k-1})` stands for the directed edges
/// `(v0,v1), ..., (v_{k-1},v0)`.
pub type FaceWalk = Vec<VertexId>;

/// Canonical form of a face walk: the lexicographically minimal rotation of
/// the vertex sequence (orientation is preserved, so a walk and its reverse
/// are distinct faces in general).
pub fn canonical_walk(walk: &[VertexId]) -> FaceWalk {
    if walk.is_empty() {
        return Vec::new();
    }
    let k = walk.len();
    let mut best: Option<Vec<VertexId>> = None;
    for s in 0..k {
        let rot: Vec<VertexId> = (0..k).map(|i| walk[(s + i) % k]).collect();
        if best.as_ref().map_or(true, |b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

/// Canonical identity of a face under both rotation and reversal; used when
/// matching a user-declared outer face, where orientation is not meaningful.
pub fn canonical_walk_undirected(walk: &[VertexId]) -> FaceWalk {
    let fwd = canonical_walk(walk);
    let rev: Vec<VertexId> = walk.iter().rev().copied().collect();
    let bwd = canonical_walk(&rev);
    fwd.min(bwd)
}

/// Plane graph: a graph together with a rotation system (cyclic neighbor
/// order per vertex) whose face traversal satisfies Euler's formula, plus a
/// designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    faces: Vec<FaceWalk>,
    outer_face: usize,
}

impl PlaneGraph {
    /// Validate a rotation system and designate the outer face. When
    /// `outer_face` is `None` a deterministic default is chosen: the longest
    /// face, ties broken by lexicographically smallest canonical walk.
    pub fn new(
        graph: Graph,
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        outer_face: Option<&[VertexId]>,
    ) -> Result<Self, GraphError> {
        for v in graph.vertices() {
            let rot = rotation.get(&v).map(Vec::as_slice).unwrap_or(&[]);
            let mut sorted = rot.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted != graph.neighbors(v) || sorted.len() != rot.len() {
                return Err(GraphError::BadRotation(v));
            }
        }
        let mut rotation = rotation;
        for v in graph.vertices() {
            rotation.entry(v).or_default();
        }
        let faces = trace_faces_internal(&graph, &rotation)?;
        let outer = match outer_face {
            Some(walk) => {
                let want = canonical_walk_undirected(walk);
                faces
                    .iter()
                    .position(|f| canonical_walk_undirected(f) == want)
                    .ok_or(GraphError::UnknownOuterFace)?
            }
            None => default_outer_face(&faces),
        };
        Ok(PlaneGraph {
            graph,
            rotation,
            faces,
            outer_face: outer,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        self.rotation.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rotation_map(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.rotation
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn outer_face(&self) -> &FaceWalk {
        &self.faces[self.outer_face]
    }

    pub fn outer_face_index(&self) -> usize {
        self.outer_face
    }

    /// Vertices on the outer face, as a sorted set.
    pub fn outer_vertices(&self) -> BTreeSet<VertexId> {
        self.outer_face().iter().copied().collect()
    }
}

fn default_outer_face(faces: &[FaceWalk]) -> usize {
    let mut best = 0usize;
    for i in 1..faces.len() {
        let (bl, il) = (faces[best].len(), faces[i].len());
        if il > bl
            || (il == bl && canonical_walk(&faces[i]) < canonical_walk(&faces[best]))
        {
            best = i;
        }
    }
    best
}

/// Trace all face boundary walks of a rotation system and verify Euler's
/// formula per connected component.
pub fn trace_faces(pg: &PlaneGraph) -> Vec<FaceWalk> {
    pg.faces.clone()
}

fn trace_faces_internal(
    graph: &Graph,
    rotation: &BTreeMap<VertexId, Vec<VertexId>>,
) -> Result<Vec<FaceWalk>, GraphError> {
    // next directed edge after (u, v): at v, continue to the rotation
    // successor of u.
    let succ = |u: VertexId, v: VertexId| -> VertexId {
        let rot = &rotation[&v];
        let i = rot.iter().position(|&x| x == u).unwrap();
        rot[(i + 1) % rot.len()]
    };
    let mut used: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut darts: Vec<(VertexId, VertexId)> = Vec::new();
    for (u, v) in graph.edges() {
        darts.push((u, v));
        darts.push((v, u));
    }
    darts.sort_unstable();
    let mut faces: Vec<FaceWalk> = Vec::new();
    for &start in &darts {
        if used.contains(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            if !used.insert(cur) {
                // A dart may only be revisited as the loop closes.
                break;
            }
            walk.push(cur.0);
            cur = (cur.1, succ(cur.0, cur.1));
            if cur == start {
                break;
            }
        }
        faces.push(walk);
    }
    // Euler check per connected component: V - E + F = 2, where F counts the
    // faces whose walks use the component's edges (a component with no edges
    // has the single all-surrounding face).
    for comp in graph.components() {
        let vcount = comp.len() as i64;
        let ecount = graph
            .edges()
            .filter(|(u, _)| comp.contains(u))
            .count() as i64;
        let fcount = if ecount == 0 {
            1
        } else {
            faces
                .iter()
                .filter(|w| !w.is_empty() && comp.contains(&w[0]))
                .count() as i64
        };
        if vcount - ecount + fcount != 2 {
            return Err(GraphError::NonPlanarRotation(vcount - ecount + fcount, 2));
        }
    }
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        build_graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn build_rejects_self_loop() {
        assert_eq!(
            build_graph([1], [(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
    }

    #[test]
    fn build_rejects_parallel_edge() {
        assert_eq!(
            build_graph([1, 2], [(1, 2), (2, 1)]).unwrap_err(),
            GraphError::ParallelEdge(1, 2)
        );
    }

    #[test]
    fn build_rejects_dangling_endpoint() {
        assert_eq!(
            build_graph([1, 2], [(1, 3)]).unwrap_err(),
            GraphError::DanglingEndpoint(3)
        );
    }

    #[test]
    fn triangle_is_built() {
        let g = triangle();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.neighbors(2), &[1, 3]);
    }

    #[test]
    fn k4_is_3_connected() {
        let g = build_graph(
            [1, 2, 3, 4],
            [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        assert!(is_k_connected(&g, 3));
        assert!(is_k_connected(&g, 2));
    }

    #[test]
    fn path_is_not_2_connected() {
        let g = build_graph([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(is_connected(&g));
        assert!(!is_k_connected(&g, 2));
    }

    #[test]
    fn smooth_path_yields_edge() {
        let g = build_graph([1, 2, 3], [(1, 2), (2, 3)]).unwrap();
        let s = smooth_degree_two(&g, &BTreeSet::from([1, 3]));
        assert_eq!(s.num_vertices(), 2);
        assert!(s.has_edge(1, 3));
    }

    #[test]
    fn smooth_c4_merges_parallel_edges() {
        let g = build_graph([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let s = smooth_degree_two(&g, &BTreeSet::from([1, 3]));
        assert_eq!(s.num_vertices(), 2);
        assert_eq!(s.num_edges(), 1);
        assert!(s.has_edge(1, 3));
    }

    #[test]
    fn smooth_is_idempotent_without_degree_two() {
        let g = triangle();
        let protected = BTreeSet::new();
        let s = smooth_degree_two(&g, &protected);
        // A triangle's vertices all have degree 2; smoothing collapses it.
        assert_eq!(smooth_degree_two(&s, &protected), s);
    }

    #[test]
    fn trace_triangle_faces() {
        let g = triangle();
        let rot = BTreeMap::from([(1, vec![2, 3]), (2, vec![1, 3]), (3, vec![1, 2])]);
        let pg = PlaneGraph::new(g, rot, None).unwrap();
        assert_eq!(pg.faces().len(), 2);
        assert!(pg.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn trace_k4_faces() {
        let g = build_graph(
            [1, 2, 3, 4],
            [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        // Planar rotation of K4 with vertex 4 in the center of triangle 1,2,3.
        let rot = BTreeMap::from([
            (1, vec![2, 4, 3]),
            (2, vec![3, 4, 1]),
            (3, vec![1, 4, 2]),
            (4, vec![1, 2, 3]),
        ]);
        let pg = PlaneGraph::new(g, rot, None).unwrap();
        assert_eq!(pg.faces().len(), 4);
        assert!(pg.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn k5_rotation_is_rejected() {
        let vs = [1u64, 2, 3, 4, 5];
        let mut es = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                es.push((vs[i], vs[j]));
            }
        }
        let g = build_graph(vs, es).unwrap();
        let rot: BTreeMap<VertexId, Vec<VertexId>> = vs
            .iter()
            .map(|&v| (v, g.neighbors(v).to_vec()))
            .collect();
        assert!(matches!(
            PlaneGraph::new(g, rot, None),
            Err(GraphError::NonPlanarRotation(_, _))
        ));
    }

    #[test]
    fn outer_face_can_be_designated() {
        let g = triangle();
        let rot = BTreeMap::from([(1, vec![2, 3]), (2, vec![1, 3]), (3, vec![1, 2])]);
        let pg = PlaneGraph::new(g, rot, Some(&[2, 1, 3])).unwrap();
        assert_eq!(pg.outer_vertices(), BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn canonical_walk_is_minimal_rotation() {
        assert_eq!(canonical_walk(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(canonical_walk(&[2, 1, 2, 1]), vec![1, 2, 1, 2]);
    }
}

pub mod planar;
pub use planar::{is_planar, planar_embedding, biconnected_components};
