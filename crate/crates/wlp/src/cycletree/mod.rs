//! Cycle-trees: recognition, SPQ decomposition of almost-3-connected
//! path-trees, the span-4 drawing algorithm for 3-connected cycle-trees and
//! the logarithmic-span algorithm for general cycle-trees.
//!
//! A cycle-tree is a plane graph whose outer-face (external) vertices leave
//! a tree when removed; the tree vertices are internal.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{is_connected, is_k_connected, PlaneGraph, VertexId};

mod draw;
mod general;
mod insert;
mod spq;
mod template;

pub use draw::draw_3conn_cycle_tree;
pub use general::{draw_cycle_tree, draw_cycle_tree_stretched};
pub use insert::{insert_outerplanar, insert_subtree, outerplanar_need};
pub use spq::{build_spq, SpqKind, SpqNode, SpqTree};
pub use template::{
    draw_template, geometric_realize, DrawingTemplate, Frame, TemplateKind, FLAT_TEMPLATES,
    ROOF_TEMPLATES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleTreeError {
    #[error("not a cycle-tree: {0}")]
    NotCycleTree(String),
    #[error("input is not 3-connected")]
    Not3Connected,
    #[error("not an almost-3-connected path-tree: {0}")]
    NotAlmost3Connected(String),
    #[error("graph is not internally triangulated")]
    NotInternallyTriangulated,
    #[error("template not admissible for this node type")]
    InadmissibleTemplate,
    #[error("frame does not match the drawing: {0}")]
    FrameMismatch(String),
    #[error("corridor too short: edge span {have}, need at least {need}")]
    CorridorTooShort { have: i64, need: i64 },
    #[error("level budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// A validated cycle-tree: plane graph plus the external/internal partition
/// derived from the outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTreeInstance {
    pg: PlaneGraph,
    external: BTreeSet<VertexId>,
    internal: BTreeSet<VertexId>,
    three_connected: bool,
}

impl CycleTreeInstance {
    pub fn plane_graph(&self) -> &PlaneGraph {
        &self.pg
    }

    pub fn external(&self) -> &BTreeSet<VertexId> {
        &self.external
    }

    pub fn internal(&self) -> &BTreeSet<VertexId> {
        &self.internal
    }

    pub fn is_three_connected(&self) -> bool {
        self.three_connected
    }
}

/// Validate that a plane graph is a cycle-tree: the vertices not on the
/// outer face must induce a (nonempty) tree.
pub fn recognize_cycle_tree(pg: &PlaneGraph) -> Result<CycleTreeInstance, CycleTreeError> {
    let g = pg.graph();
    if !is_connected(g) {
        return Err(CycleTreeError::NotCycleTree("graph is disconnected".into()));
    }
    let external = pg.outer_vertices();
    let internal: BTreeSet<VertexId> = g
        .vertices()
        .filter(|v| !external.contains(v))
        .collect();
    if internal.is_empty() {
        return Err(CycleTreeError::NotCycleTree(
            "no internal vertices (all vertices lie on the outer face)".into(),
        ));
    }
    let tree = g.induced(&internal);
    if !is_connected(&tree) {
        return Err(CycleTreeError::NotCycleTree(
            "internal vertices induce a disconnected graph".into(),
        ));
    }
    if tree.num_edges() != tree.num_vertices() - 1 {
        return Err(CycleTreeError::NotCycleTree(
            "internal vertices induce a graph with a cycle".into(),
        ));
    }
    let three_connected = g.num_vertices() > 3 && is_k_connected(g, 3);
    Ok(CycleTreeInstance {
        pg: pg.clone(),
        external,
        internal,
        three_connected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, planar_embedding, PlaneGraph};

    fn wheel(rim: u64) -> PlaneGraph {
        // Hub 0, rim 1..=rim.
        let mut edges = Vec::new();
        for i in 1..=rim {
            edges.push((0, i));
            edges.push((i, if i == rim { 1 } else { i + 1 }));
        }
        let g = build_graph(0..=rim, edges).unwrap();
        let pg = planar_embedding(&g).unwrap();
        let outer: Vec<u64> = (1..=rim).collect();
        PlaneGraph::new(g, pg.rotation_map().clone(), Some(&outer)).unwrap()
    }

    #[test]
    fn wheel_is_a_cycle_tree_with_hub_inside() {
        let ct = recognize_cycle_tree(&wheel(5)).unwrap();
        assert_eq!(ct.internal().iter().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(ct.external().len(), 5);
        assert!(ct.is_three_connected());
    }

    #[test]
    fn k4_with_outer_triangle_is_a_cycle_tree() {
        let g = build_graph(1..=4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let pg = planar_embedding(&g).unwrap();
        let pg = PlaneGraph::new(g, pg.rotation_map().clone(), Some(&[2, 3, 4])).unwrap();
        let ct = recognize_cycle_tree(&pg).unwrap();
        assert_eq!(ct.internal().iter().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn nested_triangles_are_rejected() {
        // Two nested triangles (a prism plus an inner triangle): the inner
        // six vertices of a 3-ring instance do not induce a tree.
        let mut edges = Vec::new();
        for j in 0..3u64 {
            let base = 3 * j;
            edges.push((base, base + 1));
            edges.push((base + 1, base + 2));
            edges.push((base, base + 2));
            if j > 0 {
                for i in 0..3 {
                    edges.push((base + i - 3, base + i));
                }
            }
        }
        let g = build_graph(0..9, edges).unwrap();
        let pg = planar_embedding(&g).unwrap();
        let pg = PlaneGraph::new(g, pg.rotation_map().clone(), Some(&[0, 1, 2])).unwrap();
        assert!(matches!(
            recognize_cycle_tree(&pg),
            Err(CycleTreeError::NotCycleTree(_))
        ));
    }

    #[test]
    fn all_external_is_rejected() {
        let g = build_graph(1..=3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let pg = planar_embedding(&g).unwrap();
        assert!(matches!(
            recognize_cycle_tree(&pg),
            Err(CycleTreeError::NotCycleTree(_))
        ));
    }
}
