//! Incremental planarity testing and embedding (Demoucron's method).
//!
//! Polynomial-time and embedding-producing, which is all the crate needs:
//! constructive inputs carry embeddings, so this is only used to validate
//! generated graphs and to embed small auxiliary graphs (trimmed kernels,
//! reduction inputs).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{edge, Edge, Graph, PlaneGraph, VertexId};

/// `true` when the graph admits a planar embedding.
pub fn is_planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// Compute a planar embedding, or `None` when the graph is not planar.
pub fn planar_embedding(g: &Graph) -> Option<PlaneGraph> {
    let n = g.num_vertices();
    if n >= 3 && g.num_edges() > 3 * n - 6 {
        return None;
    }
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> =
        g.vertices().map(|v| (v, Vec::new())).collect();
    for block in biconnected_components(g) {
        let rot = embed_block(g, &block)?;
        for (v, mut order) in rot {
            rotation.get_mut(&v).unwrap().append(&mut order);
        }
    }
    PlaneGraph::new(g.clone(), rotation, None).ok()
}

/// Edge sets of the biconnected components (blocks), via DFS lowpoints.
/// Bridges appear as single-edge blocks; isolated vertices appear in none.
pub fn biconnected_components(g: &Graph) -> Vec<Vec<Edge>> {
    struct State<'a> {
        g: &'a Graph,
        index: BTreeMap<VertexId, usize>,
        low: BTreeMap<VertexId, usize>,
        stack: Vec<Edge>,
        counter: usize,
        out: Vec<Vec<Edge>>,
    }
    fn dfs(st: &mut State, v: VertexId, parent: Option<VertexId>) {
        st.index.insert(v, st.counter);
        st.low.insert(v, st.counter);
        st.counter += 1;
        for &w in st.g.neighbors(v) {
            if Some(w) == parent {
                continue;
            }
            if let Some(&iw) = st.index.get(&w) {
                if iw < st.index[&v] {
                    st.stack.push(edge(v, w));
                    let lv = st.low[&v].min(iw);
                    st.low.insert(v, lv);
                }
            } else {
                st.stack.push(edge(v, w));
                dfs(st, w, Some(v));
                let lw = st.low[&w];
                if lw >= st.index[&v] {
                    // v is an articulation point (or root); pop a block.
                    let mut block = Vec::new();
                    while let Some(&top) = st.stack.last() {
                        st.stack.pop();
                        block.push(top);
                        if top == edge(v, w) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    st.out.push(block);
                }
                let lv = st.low[&v].min(lw);
                st.low.insert(v, lv);
            }
        }
    }
    let mut st = State {
        g,
        index: BTreeMap::new(),
        low: BTreeMap::new(),
        stack: Vec::new(),
        counter: 0,
        out: Vec::new(),
    };
    for v in g.vertices() {
        if !st.index.contains_key(&v) {
            dfs(&mut st, v, None);
        }
    }
    st.out.sort();
    st.out
}

/// One fragment of `block` relative to the embedded subgraph `h`: either a
/// single chord, or a connected component of `block - V(h)` together with
/// its edges to `h`.
struct Fragment {
    attachments: Vec<VertexId>,
    // Interior vertices (empty for chords).
    interior: BTreeSet<VertexId>,
    chord: Option<Edge>,
}

fn embed_block(g: &Graph, block: &[Edge]) -> Option<BTreeMap<VertexId, Vec<VertexId>>> {
    let block_edges: BTreeSet<Edge> = block.iter().copied().collect();
    let block_vertices: BTreeSet<VertexId> = block
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect();
    if block.len() == 1 {
        let (u, v) = block[0];
        return Some(BTreeMap::from([(u, vec![v]), (v, vec![u])]));
    }
    let sub = Graph::from_sets(block_vertices.clone(), block_edges.clone());
    let cycle = find_cycle(&sub)?;

    // Embedded subgraph state: vertex set, edge set, directed face walks.
    let mut h_vertices: BTreeSet<VertexId> = cycle.iter().copied().collect();
    let mut h_edges: BTreeSet<Edge> = BTreeSet::new();
    for i in 0..cycle.len() {
        h_edges.insert(edge(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<VertexId>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    loop {
        let fragments = compute_fragments(&sub, &h_vertices, &h_edges);
        if fragments.is_empty() {
            break;
        }
        // Admissible faces per fragment.
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|f| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, walk)| {
                        let set: BTreeSet<VertexId> = walk.iter().copied().collect();
                        f.attachments.iter().all(|a| set.contains(a))
                    })
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        if let Some(i) = admissible.iter().position(|a| a.is_empty()) {
            let _ = i;
            return None;
        }
        let pick = admissible
            .iter()
            .position(|a| a.len() == 1)
            .unwrap_or(0);
        let face_idx = admissible[pick][0];
        let frag = &fragments[pick];
        let path = fragment_path(&sub, frag);
        // Split the chosen face along the path.
        let walk = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = walk.iter().position(|&x| x == a).unwrap();
        let ib = walk.iter().position(|&x| x == b).unwrap();
        let k = walk.len();
        // Segment of the directed walk from a to b, inclusive.
        let mut seg_ab = Vec::new();
        let mut i = ia;
        loop {
            seg_ab.push(walk[i]);
            if i == ib {
                break;
            }
            i = (i + 1) % k;
        }
        // Segment from b to a, inclusive.
        let mut seg_ba = Vec::new();
        let mut i = ib;
        loop {
            seg_ba.push(walk[i]);
            if i == ia {
                break;
            }
            i = (i + 1) % k;
        }
        // Face 1: a ->(old walk) b, then back along the reversed path.
        let mut f1 = seg_ab;
        f1.extend(path.iter().rev().skip(1).take(path.len().saturating_sub(2)));
        // Face 2: b ->(old walk) a, then forward along the path.
        let mut f2 = seg_ba;
        f2.extend(path.iter().skip(1).take(path.len().saturating_sub(2)));
        faces.push(f1);
        faces.push(f2);
        for w in &path {
            h_vertices.insert(*w);
        }
        for pair in path.windows(2) {
            h_edges.insert(edge(pair[0], pair[1]));
        }
    }

    // Recover the rotation system from the directed faces: in some face,
    // consecutive (u, v, w) means the rotation successor of u around v is w.
    let mut succ: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new();
    for walk in &faces {
        let k = walk.len();
        for i in 0..k {
            let u = walk[i];
            let v = walk[(i + 1) % k];
            let w = walk[(i + 2) % k];
            succ.insert((u, v), w);
        }
    }
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &v in &block_vertices {
        let deg = sub.degree(v);
        let first = sub.neighbors(v)[0];
        let mut order = vec![first];
        while order.len() < deg {
            let &next = succ.get(&(*order.last().unwrap(), v))?;
            if next == first {
                return None;
            }
            order.push(next);
        }
        rotation.insert(v, order);
    }
    let _ = g;
    Some(rotation)
}

fn compute_fragments(
    sub: &Graph,
    h_vertices: &BTreeSet<VertexId>,
    h_edges: &BTreeSet<Edge>,
) -> Vec<Fragment> {
    let mut frags = Vec::new();
    for (u, v) in sub.edges() {
        if h_vertices.contains(&u) && h_vertices.contains(&v) && !h_edges.contains(&edge(u, v)) {
            frags.push(Fragment {
                attachments: vec![u, v],
                interior: BTreeSet::new(),
                chord: Some(edge(u, v)),
            });
        }
    }
    let rest = sub.without_vertices(h_vertices);
    for comp in rest.components() {
        let mut attachments: BTreeSet<VertexId> = BTreeSet::new();
        for &v in &comp {
            for &w in sub.neighbors(v) {
                if h_vertices.contains(&w) {
                    attachments.insert(w);
                }
            }
        }
        frags.push(Fragment {
            attachments: attachments.into_iter().collect(),
            interior: comp,
            chord: None,
        });
    }
    frags.sort_by(|a, b| {
        (&a.attachments, &a.interior, a.chord).cmp(&(&b.attachments, &b.interior, b.chord))
    });
    frags
}

/// A path between two distinct attachments whose interior lies inside the
/// fragment.
fn fragment_path(sub: &Graph, frag: &Fragment) -> Vec<VertexId> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = frag.attachments[0];
    let b = frag.attachments[1];
    // BFS from a through interior vertices to b.
    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::from([a]);
    let mut seen = BTreeSet::from([a]);
    'outer: while let Some(v) = queue.pop_front() {
        for &w in sub.neighbors(v) {
            let inside = frag.interior.contains(&w);
            let is_target = w == b && v != a;
            if (inside || is_target) && seen.insert(w) {
                prev.insert(w, v);
                if is_target {
                    break 'outer;
                }
                if inside {
                    queue.push_back(w);
                }
            }
        }
    }
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        let p = prev[path.last().unwrap()];
        path.push(p);
    }
    path.reverse();
    path
}

fn find_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    // DFS until a back edge closes a cycle.
    let start = g.vertices().next()?;
    let mut parent: BTreeMap<VertexId, Option<VertexId>> = BTreeMap::from([(start, None)]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if parent.get(&v).copied().flatten() == Some(w) {
                continue;
            }
            if parent.contains_key(&w) {
                // Close the cycle along tree paths v -> root and w -> root.
                let path_to_root = |mut x: VertexId| {
                    let mut p = vec![x];
                    while let Some(Some(q)) = parent.get(&x) {
                        p.push(*q);
                        x = *q;
                    }
                    p
                };
                let pv = path_to_root(v);
                let pw = path_to_root(w);
                let sv: BTreeSet<_> = pv.iter().copied().collect();
                let meet = *pw.iter().find(|x| sv.contains(x)).unwrap();
                let mut cycle: Vec<VertexId> =
                    pv.iter().take_while(|&&x| x != meet).copied().collect();
                cycle.push(meet);
                let tail: Vec<VertexId> =
                    pw.iter().take_while(|&&x| x != meet).copied().collect();
                cycle.extend(tail.iter().rev());
                if cycle.len() >= 3 {
                    return Some(cycle);
                }
            } else {
                parent.insert(w, Some(v));
                stack.push(w);
            }
        }
    }
    None
}
