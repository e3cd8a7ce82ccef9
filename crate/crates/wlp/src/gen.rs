//! Deterministic gadget, reduction and lower-bound constructors, plus
//! seeded random instance generators.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cycletree::{recognize_cycle_tree, CycleTreeInstance};
use crate::graph::{
    build_graph, edge, is_connected, is_planar, planar_embedding, Edge, Graph, MarkedGraph,
    PlaneGraph, VertexId,
};

/// 64-bit seed; the same seed always produces the identical instance.
pub type Seed = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("input graph is not bipartite")]
    NotBipartite,
    #[error("input graph is not planar")]
    NotPlanar,
    #[error("instance size {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("generation failed: {0}")]
    GenerationFailed(String),
}

/// `K⁺₂,α`: the complete bipartite graph `K₂,α` plus an edge between the two
/// vertices of its size-2 class, marked "top" (`t`) and "bottom" (`b`).
/// Vertex ids: t = 0, b = 1, middles 2..α+1.
pub fn gen_k_plus(alpha: usize) -> MarkedGraph {
    assert!(alpha >= 1, "K+_2,alpha needs alpha >= 1");
    let t = 0u64;
    let b = 1u64;
    let mut edges = vec![(t, b)];
    for x in 2..(alpha as u64 + 2) {
        edges.push((t, x));
        edges.push((b, x));
    }
    let g = build_graph(0..(alpha as u64 + 2), edges).unwrap();
    MarkedGraph::new(
        g,
        [("top".to_string(), t), ("bottom".to_string(), b)]
            .into_iter()
            .collect(),
    )
    .unwrap()
}

/// The pole gadget `W_{i,h}` (poles marked "north" and "south"). `W_{i,1}`
/// is `K⁺₂,₂ᵢ₊₁`; for `h > 1` each edge from the north pole to a middle
/// vertex of `K⁺₂,₂ᵢ₊₁` is replaced by a fresh copy of `W_{i,h-1}` whose
/// north pole is the north pole and whose south pole is that middle vertex.
pub fn gen_w(i: usize, h: usize) -> Result<MarkedGraph, GenError> {
    if i < 2 || h < 1 || h >= i {
        return Err(GenError::BadParams(format!(
            "W_(i,h) needs i >= 2 and 1 <= h < i, got ({i}, {h})"
        )));
    }
    let north = 0u64;
    let south = 1u64;
    let mut vertices: BTreeSet<VertexId> = [north, south].into_iter().collect();
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut next = 2u64;
    build_w_gadget(i, h, north, south, &mut vertices, &mut edges, &mut next);
    let g = build_graph(vertices, edges).unwrap();
    MarkedGraph::new(
        g,
        [("north".to_string(), north), ("south".to_string(), south)]
            .into_iter()
            .collect(),
    )
    .map_err(|e| GenError::GenerationFailed(e.to_string()))
}

/// Splice a `W_{i,h}` copy between existing vertices `north` and `south`.
fn build_w_gadget(
    i: usize,
    h: usize,
    north: VertexId,
    south: VertexId,
    vertices: &mut BTreeSet<VertexId>,
    edges: &mut BTreeSet<Edge>,
    next: &mut u64,
) {
    edges.insert(edge(north, south));
    let middles: Vec<VertexId> = (0..2 * i + 1)
        .map(|_| {
            let v = *next;
            *next += 1;
            vertices.insert(v);
            v
        })
        .collect();
    for &x in &middles {
        edges.insert(edge(south, x));
        if h == 1 {
            edges.insert(edge(north, x));
        } else {
            build_w_gadget(i, h - 1, north, x, vertices, edges, next);
        }
    }
}

/// Number of vertices of `W_{i,h}`.
pub fn w_vertex_count(i: usize, h: usize) -> usize {
    if h == 1 {
        2 * i + 3
    } else {
        2 + (2 * i + 1) * (w_vertex_count(i, h - 1) - 1)
    }
}

/// Hardness reduction: replace every edge `(u, v)` of a connected bipartite
/// planar graph by a gadget — a `K₂,₄` copy whose size-2 class is `{u, v}`
/// when `s = 1`, a `W_{s,s-1}` copy with poles `u, v` when `s > 1`. The
/// result admits a span-`s` drawing iff the input admits a span-1 strictly
/// leveled drawing.
pub fn reduce_instance(h: &Graph, s: i64) -> Result<Graph, GenError> {
    if s < 1 {
        return Err(GenError::BadParams(format!("span must be >= 1, got {s}")));
    }
    if h.bipartition().is_none() {
        return Err(GenError::NotBipartite);
    }
    if !is_planar(h) {
        return Err(GenError::NotPlanar);
    }
    if !is_connected(h) {
        return Err(GenError::BadParams("input graph must be connected".into()));
    }
    let mut vertices: BTreeSet<VertexId> = h.vertex_set().clone();
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut next = h.max_vertex_id().map_or(0, |m| m + 1);
    for (u, v) in h.edges() {
        if s == 1 {
            for _ in 0..4 {
                let x = next;
                next += 1;
                vertices.insert(x);
                edges.insert(edge(u, x));
                edges.insert(edge(v, x));
            }
        } else {
            build_w_gadget(
                s as usize,
                s as usize - 1,
                u,
                v,
                &mut vertices,
                &mut edges,
                &mut next,
            );
        }
    }
    Ok(build_graph(vertices, edges).unwrap())
}

/// `k` triangles `(uᵢ, vᵢ, z)` sharing the apex `z`, fused by the paths
/// `(u₁, …, u_k)` and `(v₁, …, v_k)`. Ids: z = 0, uᵢ = 2i-1, vᵢ = 2i.
pub fn gen_stacked_cycles(k: usize) -> Graph {
    assert!(k >= 1);
    let z = 0u64;
    let u = |i: u64| 2 * i - 1;
    let v = |i: u64| 2 * i;
    let mut edges = Vec::new();
    for i in 1..=k as u64 {
        edges.push((u(i), v(i)));
        edges.push((z, u(i)));
        edges.push((z, v(i)));
        if i > 1 {
            edges.push((u(i - 1), u(i)));
            edges.push((v(i - 1), v(i)));
        }
    }
    build_graph(0..=(2 * k as u64), edges).unwrap()
}

/// `r` concentric triangles with matching edges between consecutive rings.
/// Ring `j` has vertices `3j, 3j+1, 3j+2`.
pub fn gen_nested_triangles(r: usize) -> Graph {
    assert!(r >= 2);
    let mut edges = Vec::new();
    for j in 0..r as u64 {
        let b = 3 * j;
        edges.push((b, b + 1));
        edges.push((b + 1, b + 2));
        edges.push((b, b + 2));
        if j > 0 {
            for i in 0..3 {
                edges.push((b + i - 3, b + i));
            }
        }
    }
    build_graph(0..3 * r as u64, edges).unwrap()
}

/// Insert a fresh vertex inside the first internal face containing all of
/// `nbrs`, adjacent to each of them, preserving the rest of the embedding.
fn add_vertex_in_face(
    pg: &PlaneGraph,
    new: VertexId,
    nbrs: &[VertexId],
) -> Result<PlaneGraph, GenError> {
    let want: BTreeSet<VertexId> = nbrs.iter().copied().collect();
    let outer_idx = pg.outer_face_index();
    let walk = pg
        .faces()
        .iter()
        .enumerate()
        .find(|(i, w)| *i != outer_idx && want.iter().all(|v| w.contains(v)))
        .map(|(_, w)| w)
        .ok_or_else(|| {
            GenError::GenerationFailed(format!("no internal face contains all of {nbrs:?}"))
        })?;
    // Order the neighbors by first occurrence along the walk; the new
    // vertex's rotation lists them in that order, and it is spliced into
    // each neighbor's rotation right after that corner's walk predecessor.
    let mut ordered: Vec<(usize, VertexId)> = want
        .iter()
        .map(|&v| (walk.iter().position(|&x| x == v).unwrap(), v))
        .collect();
    ordered.sort_unstable();
    let mut rotation = pg.rotation_map().clone();
    let len = walk.len();
    for &(iu, v) in &ordered {
        let pred = walk[(iu + len - 1) % len];
        let rot = rotation.get_mut(&v).unwrap();
        let at = rot.iter().position(|&x| x == pred).unwrap();
        rot.insert(at + 1, new);
    }
    // The new vertex sees its neighbors in reverse walk order: the face
    // between consecutive corners v_j, v_{j+1} closes via the darts
    // (v_{j+1}, new), (new, v_j), which requires succ(v_{j+1}, new) = v_j.
    rotation.insert(new, ordered.iter().rev().map(|&(_, v)| v).collect());
    let mut graph = pg.graph().clone();
    graph = Graph::from_sets(
        graph.vertex_set().iter().copied().chain([new]).collect(),
        graph
            .edge_set()
            .iter()
            .copied()
            .chain(nbrs.iter().map(|&v| edge(new, v)))
            .collect(),
    );
    let old_outer: Vec<VertexId> = pg.outer_face().clone();
    PlaneGraph::new(graph.clone(), rotation.clone(), Some(&old_outer))
        .or_else(|_| PlaneGraph::new(graph, rotation, None))
        .map_err(|e| GenError::GenerationFailed(e.to_string()))
}

fn k4_with_outer(outer: [VertexId; 3]) -> PlaneGraph {
    let vs: BTreeSet<VertexId> = (1..=4).collect();
    let es: Vec<(u64, u64)> = vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let g = build_graph(vs, es).unwrap();
    let pg = planar_embedding(&g).unwrap();
    PlaneGraph::new(g, pg.rotation_map().clone(), Some(&outer)).unwrap()
}

/// The 3-connected cycle-tree family requiring span 4: a `K₄` core
/// `{v₁..v₄}` (ids 1..4) with three fans of paths — `u₁..u₁₃` between `v₁`
/// and `v₃`, `w₁..w₁₃` between `v₁` and `v₄`, and `z₁..z_k` (`k = n - 30`)
/// between `v₃` and `v₄` — whose first vertices also attach to `v₂`. The
/// outer face is the triangle `(v₁, v₃, v₄)`; the internal tree is the
/// spider formed by `v₂` and the three paths.
pub fn gen_3conn_lower(n: usize) -> Result<CycleTreeInstance, GenError> {
    if n < 43 {
        return Err(GenError::TooSmall { n, min: 43 });
    }
    let k = n - 30;
    let mut pg = k4_with_outer([1, 3, 4]);
    let mut next = 5u64;
    let grow_fan = |pg: &mut PlaneGraph,
                        count: usize,
                        a: VertexId,
                        mid: VertexId,
                        b: VertexId,
                        next: &mut u64|
     -> Result<(), GenError> {
        let mut prev = mid;
        for _ in 0..count {
            let x = *next;
            *next += 1;
            *pg = add_vertex_in_face(pg, x, &[a, prev, b])?;
            prev = x;
        }
        Ok(())
    };
    grow_fan(&mut pg, 13, 1, 2, 3, &mut next)?;
    grow_fan(&mut pg, 13, 1, 2, 4, &mut next)?;
    grow_fan(&mut pg, k, 3, 2, 4, &mut next)?;
    recognize_cycle_tree(&pg).map_err(|e| GenError::GenerationFailed(e.to_string()))
}

/// The general cycle-tree lower-bound family: `K₄` (ids 1..4) plus two
/// complete binary trees with `k` vertices each (`k+1` the largest power of
/// two with `k ≤ (n-4)/2`), rooted at `v₁v₂v₃` and `v₁v₂v₄` respectively;
/// extra leaves on the second root pad the graph to exactly `n` vertices.
pub fn gen_cycle_tree_lower(n: usize) -> Result<CycleTreeInstance, GenError> {
    if n < 10 {
        return Err(GenError::TooSmall { n, min: 10 });
    }
    let mut k = 1usize;
    while 2 * (k + 1) - 1 <= (n - 4) / 2 {
        k = 2 * (k + 1) - 1;
    }
    let mut pg = k4_with_outer([2, 3, 4]);
    let mut next = 5u64;
    let add_btree = |pg: &mut PlaneGraph,
                         anchors: [VertexId; 3],
                         next: &mut u64|
     -> Result<VertexId, GenError> {
        let root = *next;
        *next += 1;
        *pg = add_vertex_in_face(pg, root, &anchors)?;
        // Complete binary tree below the root, level by level.
        let mut frontier = vec![root];
        let mut size = 1usize;
        while size < k {
            let mut nf = Vec::new();
            for &p in &frontier {
                for _ in 0..2 {
                    if size == k {
                        break;
                    }
                    let c = *next;
                    *next += 1;
                    *pg = add_vertex_in_face(pg, c, &[p])?;
                    nf.push(c);
                    size += 1;
                }
            }
            frontier = nf;
        }
        Ok(root)
    };
    add_btree(&mut pg, [1, 2, 3], &mut next)?;
    let root2 = add_btree(&mut pg, [1, 2, 4], &mut next)?;
    for _ in 0..n - 2 * k - 4 {
        let leaf = next;
        next += 1;
        pg = add_vertex_in_face(&pg, leaf, &[root2])?;
    }
    debug_assert_eq!(pg.graph().num_vertices(), n);
    recognize_cycle_tree(&pg).map_err(|e| GenError::GenerationFailed(e.to_string()))
}

/// Seeded random cycle-tree. The internal tree is grown at random; its
/// leaves, in embedding order, are wired into the external cycle (a
/// Halin-style construction). In 3-connected mode the tree has no degree-2
/// vertices, which makes the result 3-connected (verified); otherwise unary
/// tree nodes and extra internal pendants are allowed.
pub fn gen_random_cycle_tree(
    n: usize,
    three_connected: bool,
    seed: Seed,
) -> Result<CycleTreeInstance, GenError> {
    if n < 4 {
        return Err(GenError::TooSmall { n, min: 4 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c1c1e_u64);
    for _attempt in 0..32 {
        if let Some(ct) = try_random_cycle_tree(n, three_connected, &mut rng) {
            return Ok(ct);
        }
    }
    Err(GenError::GenerationFailed(
        "retry budget exhausted for random cycle-tree".into(),
    ))
}

fn try_random_cycle_tree(
    n: usize,
    three_connected: bool,
    rng: &mut ChaCha8Rng,
) -> Option<CycleTreeInstance> {
    // Grow a rooted tree on vertices 0..m: children[] lists per node. In
    // 3-connected mode every internal node gets >= 3 neighbors total.
    let mut children: Vec<Vec<usize>> = vec![vec![1, 2, 3], vec![], vec![], vec![]];
    let mut count = 4usize;
    while count < n {
        let node = rng.gen_range(0..count);
        if children[node].is_empty() {
            // Turn a leaf into an internal node.
            let want = if three_connected { 2 } else { 1 };
            let extra = rng.gen_range(0..=1);
            let add = (want + extra).min(n - count);
            if three_connected && add < 2 {
                continue;
            }
            for _ in 0..add {
                children[node].push(count);
                children.push(vec![]);
                count += 1;
            }
        } else {
            children[node].push(count);
            children.push(vec![]);
            count += 1;
        }
    }
    // Leaves in planar (depth-first) order become the external cycle.
    let mut leaves = Vec::new();
    let mut stack = vec![0usize];
    let mut tree_edges = Vec::new();
    while let Some(x) = stack.pop() {
        if children[x].is_empty() {
            leaves.push(x);
        }
        for &c in children[x].iter().rev() {
            tree_edges.push((x as u64, c as u64));
            stack.push(c);
        }
    }
    if leaves.len() < 3 || leaves.len() == count {
        return None;
    }
    let mut edges = tree_edges;
    for i in 0..leaves.len() {
        let a = leaves[i] as u64;
        let b = leaves[(i + 1) % leaves.len()] as u64;
        edges.push((a, b));
    }
    let g = build_graph(0..count as u64, edges).ok()?;
    if three_connected && !crate::graph::is_k_connected(&g, 3) {
        return None;
    }
    // Embedding: rotation per tree node is [parent, children...]; leaves
    // additionally interleave their two cycle neighbors around the parent
    // edge. Validated by the face tracer.
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    for (x, cs) in children.iter().enumerate() {
        for &c in cs {
            parent.insert(c, x);
        }
    }
    let cyc_next: BTreeMap<usize, usize> = (0..leaves.len())
        .map(|i| (leaves[i], leaves[(i + 1) % leaves.len()]))
        .collect();
    let cyc_prev: BTreeMap<usize, usize> = (0..leaves.len())
        .map(|i| (leaves[(i + 1) % leaves.len()], leaves[i]))
        .collect();
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for x in 0..count {
        let rot: Vec<VertexId> = if children[x].is_empty() {
            vec![
                parent[&x] as u64,
                cyc_prev[&x] as u64,
                cyc_next[&x] as u64,
            ]
        } else {
            let mut r: Vec<VertexId> = Vec::new();
            if let Some(&p) = parent.get(&x) {
                r.push(p as u64);
            }
            r.extend(children[x].iter().map(|&c| c as u64));
            r
        };
        rotation.insert(x as u64, rot);
    }
    let outer: Vec<VertexId> = leaves.iter().map(|&l| l as u64).collect();
    let pg = PlaneGraph::new(g, rotation, Some(&outer)).ok()?;
    recognize_cycle_tree(&pg).ok()
}

/// Seeded random connected planar graph: random stacked (apollonian)
/// triangulation followed by random edge deletions that keep the graph
/// connected.
pub fn gen_random_planar(n: usize, seed: Seed) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    if n == 0 {
        return build_graph(std::iter::empty::<u64>(), []).unwrap();
    }
    if n <= 2 {
        let edges: Vec<(u64, u64)> = if n == 2 { vec![(0, 1)] } else { vec![] };
        return build_graph(0..n as u64, edges).unwrap();
    }
    let mut faces: Vec<[u64; 3]> = vec![[0, 1, 2]];
    let mut edges: BTreeSet<Edge> = [edge(0, 1), edge(1, 2), edge(0, 2)].into_iter().collect();
    for v in 3..n as u64 {
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(fi);
        edges.insert(edge(v, a));
        edges.insert(edge(v, b));
        edges.insert(edge(v, c));
        faces.push([a, b, v]);
        faces.push([b, c, v]);
        faces.push([a, c, v]);
    }
    let mut g = build_graph(0..n as u64, edges.iter().copied()).unwrap();
    let mut all: Vec<Edge> = edges.into_iter().collect();
    // Deterministic shuffle.
    for i in (1..all.len()).rev() {
        all.swap(i, rng.gen_range(0..=i));
    }
    for (u, v) in all {
        if rng.gen_bool(0.3) {
            let candidate = g.without_edge(u, v);
            if is_connected(&candidate) {
                g = candidate;
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_k_connected;

    #[test]
    fn k_plus_counts() {
        let t = gen_k_plus(1);
        assert_eq!(t.graph.num_vertices(), 3);
        assert_eq!(t.graph.num_edges(), 3);
        let k = gen_k_plus(4);
        assert_eq!(k.graph.num_vertices(), 6);
        assert_eq!(k.graph.num_edges(), 9);
        assert_eq!(k.mark("top"), Some(0));
        assert_eq!(k.mark("bottom"), Some(1));
    }

    #[test]
    fn w21_is_k_plus_25() {
        let w = gen_w(2, 1).unwrap();
        assert_eq!(w.graph.num_vertices(), 7);
        let k = gen_k_plus(5);
        assert_eq!(w.graph.num_edges(), k.graph.num_edges());
        assert!(is_planar(&w.graph));
    }

    #[test]
    fn w31_has_nine_vertices() {
        let w = gen_w(3, 1).unwrap();
        assert_eq!(w.graph.num_vertices(), 9);
    }

    #[test]
    fn w32_structure() {
        let w = gen_w(3, 2).unwrap();
        assert_eq!(w.graph.num_vertices(), w_vertex_count(3, 2));
        // South pole: adjacent to the 2i+1 = 7 outermost middles plus north.
        let south = w.mark("south").unwrap();
        assert_eq!(w.graph.degree(south), 8);
        assert!(is_planar(&w.graph));
    }

    #[test]
    fn w_rejects_bad_params() {
        assert!(gen_w(1, 1).is_err());
        assert!(gen_w(3, 3).is_err());
        assert!(gen_w(3, 0).is_err());
    }

    #[test]
    fn reduce_single_edge() {
        let h = build_graph([1u64, 2], [(1, 2)]).unwrap();
        let g1 = reduce_instance(&h, 1).unwrap();
        assert_eq!(g1.num_vertices(), 6);
        assert_eq!(g1.num_edges(), 8);
        assert!(!g1.has_edge(1, 2));
        let g2 = reduce_instance(&h, 2).unwrap();
        assert_eq!(g2.num_vertices(), 7);
        assert!(g2.has_edge(1, 2));
        assert!(is_planar(&g2));
    }

    #[test]
    fn reduce_path_three() {
        let h = build_graph(1..=3, [(1, 2), (2, 3)]).unwrap();
        let g = reduce_instance(&h, 1).unwrap();
        assert_eq!(g.num_vertices(), 11);
        assert!(g.bipartition().is_some());
        assert!(is_planar(&g));
    }

    #[test]
    fn reduce_rejects_non_bipartite() {
        let h = build_graph(1..=3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(reduce_instance(&h, 1), Err(GenError::NotBipartite));
    }

    #[test]
    fn stacked_and_nested_shapes() {
        let t = gen_stacked_cycles(1);
        assert_eq!(t.num_vertices(), 3);
        assert_eq!(t.num_edges(), 3);
        let s3 = gen_stacked_cycles(3);
        assert_eq!(s3.num_vertices(), 7);
        assert!(is_planar(&s3));
        let prism = gen_nested_triangles(2);
        assert_eq!(prism.num_vertices(), 6);
        assert_eq!(prism.num_edges(), 9);
        assert!(is_planar(&prism));
    }

    #[test]
    fn lower_3conn_instance() {
        let ct = gen_3conn_lower(43).unwrap();
        assert_eq!(ct.plane_graph().graph().num_vertices(), 43);
        assert!(ct.is_three_connected());
        assert_eq!(ct.external().len(), 3);
        assert!(gen_3conn_lower(42).is_err());
    }

    #[test]
    fn lower_general_instance() {
        let ct = gen_cycle_tree_lower(18).unwrap();
        assert_eq!(ct.plane_graph().graph().num_vertices(), 18);
        let ct10 = gen_cycle_tree_lower(10).unwrap();
        assert_eq!(ct10.plane_graph().graph().num_vertices(), 10);
        assert!(gen_cycle_tree_lower(9).is_err());
    }

    #[test]
    fn random_cycle_tree_is_deterministic() {
        let a = gen_random_cycle_tree(12, false, 7).unwrap();
        let b = gen_random_cycle_tree(12, false, 7).unwrap();
        assert_eq!(a.plane_graph(), b.plane_graph());
        let c = gen_random_cycle_tree(12, false, 8).unwrap();
        assert_eq!(c.plane_graph().graph().num_vertices(), 12);
    }

    #[test]
    fn random_cycle_tree_three_connected() {
        let ct = gen_random_cycle_tree(50, true, 1).unwrap();
        assert!(ct.is_three_connected());
        assert!(is_k_connected(ct.plane_graph().graph(), 3));
        assert_eq!(ct.plane_graph().graph().num_vertices(), 50);
    }

    #[test]
    fn random_planar_is_planar_and_deterministic() {
        for seed in 0..5 {
            let g = gen_random_planar(8, seed);
            assert_eq!(g.num_vertices(), 8);
            assert!(is_planar(&g));
            assert!(is_connected(&g));
            assert_eq!(g, gen_random_planar(8, seed));
        }
    }
}
