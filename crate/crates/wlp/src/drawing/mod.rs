//! Levelings, drawings, validity checkers, and drawing transforms.
//!
//! Two independent validity checkers are provided and cross-validated by the
//! test suite:
//!
//! - [`check_geometric`]: exact rational segment-intersection test over the
//!   polyline geometry;
//! - [`check_normalized`]: the combinatorial conditions on per-level orders
//!   of the subdivided drawing (same-level edge endpoints consecutive;
//!   independent edges between consecutive levels do not invert).

mod check;
mod st;
mod transform;

pub use check::{canonicalize, check_geometric, check_normalized, materialize, normalize};
pub use st::{add_edge_in_face, biconnect_plane, st_leveled_drawing, st_numbering};
pub use transform::{queue_layout, weak_to_strict, QueueLayout};

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::graph::{edge, Edge, Graph, VertexId};

/// Exact x-coordinate.
pub type Coord = BigRational;

/// Integer as an exact coordinate.
pub fn coord(i: i64) -> Coord {
    BigRational::from(BigInt::from(i))
}

/// Rational `n / d` as an exact coordinate.
pub fn coord_frac(n: i64, d: i64) -> Coord {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("vertex {0} has no level")]
    MissingLevel(VertexId),
    #[error("edge ({0}, {1}) is not weakly y-monotone")]
    NonMonotoneEdge(VertexId, VertexId),
    #[error("two drawing points coincide at level {0}")]
    CoincidentPoints(i64),
    #[error("inconsistent subdivision: {0}")]
    InconsistentSubdivision(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("vertices {0} and {1} do not share a face")]
    NotCoFacial(VertexId, VertexId),
    #[error("graph is not connected")]
    Disconnected,
}

/// Level assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leveling {
    levels: BTreeMap<VertexId, i64>,
}

impl Leveling {
    pub fn new(levels: BTreeMap<VertexId, i64>) -> Self {
        Leveling { levels }
    }

    pub fn get(&self, v: VertexId) -> Option<i64> {
        self.levels.get(&v).copied()
    }

    pub fn levels(&self) -> &BTreeMap<VertexId, i64> {
        &self.levels
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// Maximum `|l(u) - l(v)|` over the edges of `g`; 0 for edgeless graphs.
pub fn span_of(l: &Leveling, g: &Graph) -> Result<i64, DrawingError> {
    let mut span = 0i64;
    for (u, v) in g.edges() {
        let lu = l.get(u).ok_or(DrawingError::MissingLevel(u))?;
        let lv = l.get(v).ok_or(DrawingError::MissingLevel(v))?;
        span = span.max((lu - lv).abs());
    }
    Ok(span)
}

/// `max level - min level`; 0 when at most one level is used (or empty).
pub fn height_of(l: &Leveling) -> i64 {
    let mut it = l.levels.values();
    let Some(&first) = it.next() else { return 0 };
    let (mut lo, mut hi) = (first, first);
    for &x in it {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    hi - lo
}

/// Renumber levels so they are contiguous starting at 0, preserving relative
/// order. No edge span can increase.
pub fn compact_levels(l: &Leveling) -> Leveling {
    let used: BTreeSet<i64> = l.levels.values().copied().collect();
    let remap: BTreeMap<i64, i64> = used
        .into_iter()
        .enumerate()
        .map(|(i, lvl)| (lvl, i as i64))
        .collect();
    Leveling::new(
        l.levels
            .iter()
            .map(|(&v, lvl)| (v, remap[lvl]))
            .collect(),
    )
}

/// One edge's geometry: bends listed from `u` to `v`, each at an integer
/// level with a rational x-coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGeom {
    pub u: VertexId,
    pub v: VertexId,
    pub bends: Vec<(Coord, i64)>,
}

/// Weakly y-monotone polyline drawing: vertices on integer levels at rational
/// x-coordinates, edges drawn as level-respecting polylines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolylineDrawing {
    positions: BTreeMap<VertexId, (Coord, i64)>,
    edges: Vec<EdgeGeom>,
}

impl PolylineDrawing {
    /// Assemble a drawing. Edge direction is normalized to `u < v` (bends
    /// reversed accordingly) and edges are sorted, so equal drawings compare
    /// equal regardless of construction order. No validity checking happens
    /// here; use [`check_geometric`].
    pub fn new(
        positions: BTreeMap<VertexId, (Coord, i64)>,
        edges: impl IntoIterator<Item = EdgeGeom>,
    ) -> Self {
        let mut es: Vec<EdgeGeom> = edges
            .into_iter()
            .map(|mut e| {
                if e.u > e.v {
                    std::mem::swap(&mut e.u, &mut e.v);
                    e.bends.reverse();
                }
                e
            })
            .collect();
        es.sort_by_key(|e| (e.u, e.v));
        PolylineDrawing {
            positions,
            edges: es,
        }
    }

    pub fn position(&self, v: VertexId) -> Option<&(Coord, i64)> {
        self.positions.get(&v)
    }

    pub fn level(&self, v: VertexId) -> Option<i64> {
        self.positions.get(&v).map(|p| p.1)
    }

    pub fn x(&self, v: VertexId) -> Option<&Coord> {
        self.positions.get(&v).map(|p| &p.0)
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, (Coord, i64)> {
        &self.positions
    }

    pub fn edges(&self) -> &[EdgeGeom] {
        &self.edges
    }

    pub fn edge_geom(&self, u: VertexId, v: VertexId) -> Option<&EdgeGeom> {
        let (u, v) = edge(u, v);
        self.edges.iter().find(|e| (e.u, e.v) == (u, v))
    }

    /// The underlying graph (positioned vertices plus drawn edges).
    pub fn graph(&self) -> Graph {
        let vs: BTreeSet<VertexId> = self.positions.keys().copied().collect();
        let es: BTreeSet<Edge> = self.edges.iter().map(|e| edge(e.u, e.v)).collect();
        Graph::from_sets(vs, es)
    }

    pub fn leveling(&self) -> Leveling {
        Leveling::new(self.positions.iter().map(|(&v, p)| (v, p.1)).collect())
    }

    /// Maximum edge span, recomputed from the geometry.
    pub fn span(&self) -> i64 {
        self.edges
            .iter()
            .map(|e| (self.positions[&e.u].1 - self.positions[&e.v].1).abs())
            .max()
            .unwrap_or(0)
    }

    pub fn height(&self) -> i64 {
        height_of(&self.leveling())
    }

    /// `true` when no edge is horizontal (and there is at least one vertex).
    pub fn is_strictly_leveled(&self) -> bool {
        self.edges
            .iter()
            .all(|e| self.positions[&e.u].1 != self.positions[&e.v].1)
    }
}

/// Checker outcome. `Invalid` carries a machine-readable counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Invalidity),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Why a drawing is invalid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invalidity {
    /// Condition (i): the endpoints of a same-level edge are not consecutive
    /// in that level's order.
    NotConsecutive { level: i64, u: VertexId, v: VertexId },
    /// Condition (ii): two independent edges between consecutive levels
    /// invert their order. Endpoints identify the two offending edges of the
    /// original (pre-subdivision) graph.
    OrderFlip {
        level: i64,
        first: (VertexId, VertexId),
        second: (VertexId, VertexId),
    },
    /// Two segments of distinct edges intersect outside shared endpoints.
    CrossingSegments {
        first: (VertexId, VertexId),
        second: (VertexId, VertexId),
    },
    /// A vertex lies in the interior of a non-incident edge.
    PointOnSegment {
        vertex: VertexId,
        edge: (VertexId, VertexId),
    },
    /// Two drawing points coincide.
    CoincidentPoints { level: i64 },
    /// The drawing is structurally malformed (missing positions, bends off
    /// their levels, non-monotone bend sequences, ...).
    Malformed { reason: String },
}

/// The subdivided, combinatorial form of a drawing: every edge split at each
/// level it crosses, plus left-to-right item orders per level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedDrawing {
    /// All items; index = item id.
    items: Vec<Item>,
    /// Left-to-right item ids per level.
    orders: BTreeMap<i64, Vec<usize>>,
    /// One chain per original edge: item ids from `u`'s item to `v`'s item,
    /// passing through the virtual subdivision items.
    chains: Vec<Chain>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub kind: ItemKind,
    pub level: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ItemKind {
    Real(VertexId),
    /// Subdivision point of the chain with the given index.
    Virtual { chain: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub u: VertexId,
    pub v: VertexId,
    pub items: Vec<usize>,
}

impl NormalizedDrawing {
    pub fn new(items: Vec<Item>, orders: BTreeMap<i64, Vec<usize>>, chains: Vec<Chain>) -> Self {
        NormalizedDrawing {
            items,
            orders,
            chains,
        }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn orders(&self) -> &BTreeMap<i64, Vec<usize>> {
        &self.orders
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    /// Item id of a real vertex.
    pub fn item_of(&self, v: VertexId) -> Option<usize> {
        self.items
            .iter()
            .position(|it| it.kind == ItemKind::Real(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn span_and_height_of_path() {
        let g = build_graph([1, 2, 3], [(1, 2), (2, 3)]).unwrap();
        let l = Leveling::new(BTreeMap::from([(1, 0), (2, 1), (3, 2)]));
        assert_eq!(span_of(&l, &g).unwrap(), 1);
        assert_eq!(height_of(&l), 2);
    }

    #[test]
    fn span_of_k24_optimal_leveling() {
        let g = build_graph(
            [1, 2, 3, 4, 5, 6],
            [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6)],
        )
        .unwrap();
        let l = Leveling::new(BTreeMap::from([
            (1, 0),
            (2, 2),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 1),
        ]));
        assert_eq!(span_of(&l, &g).unwrap(), 1);
    }

    #[test]
    fn horizontal_edge_has_span_zero() {
        let g = build_graph([1, 2], [(1, 2)]).unwrap();
        let l = Leveling::new(BTreeMap::from([(1, 5), (2, 5)]));
        assert_eq!(span_of(&l, &g).unwrap(), 0);
    }

    #[test]
    fn missing_level_is_reported() {
        let g = build_graph([1, 2], [(1, 2)]).unwrap();
        let l = Leveling::new(BTreeMap::from([(1, 0)]));
        assert_eq!(span_of(&l, &g), Err(DrawingError::MissingLevel(2)));
    }

    #[test]
    fn compact_removes_gaps() {
        let l = Leveling::new(BTreeMap::from([(1, 0), (2, 5)]));
        assert_eq!(
            compact_levels(&l).levels(),
            &BTreeMap::from([(1, 0), (2, 1)])
        );
        let l2 = Leveling::new(BTreeMap::from([(1, 2), (2, 2), (3, 7)]));
        assert_eq!(
            compact_levels(&l2).levels(),
            &BTreeMap::from([(1, 0), (2, 0), (3, 1)])
        );
        let contiguous = Leveling::new(BTreeMap::from([(1, 0), (2, 1), (3, 1)]));
        assert_eq!(compact_levels(&contiguous), contiguous);
    }

    #[test]
    fn compaction_never_increases_span() {
        let g = build_graph([1, 2, 3], [(1, 2), (2, 3)]).unwrap();
        let l = Leveling::new(BTreeMap::from([(1, 0), (2, 4), (3, 9)]));
        let before = span_of(&l, &g).unwrap();
        let after = span_of(&compact_levels(&l), &g).unwrap();
        assert!(after <= before);
    }

    #[test]
    fn drawing_normalizes_edge_direction() {
        let positions = BTreeMap::from([(1, (coord(0), 0)), (2, (coord(1), 2))]);
        let d = PolylineDrawing::new(
            positions,
            [EdgeGeom {
                u: 2,
                v: 1,
                bends: vec![(coord(3), 1)],
            }],
        );
        assert_eq!(d.edges()[0].u, 1);
        assert_eq!(d.edges()[0].bends, vec![(coord(3), 1)]);
        assert_eq!(d.span(), 2);
        assert_eq!(d.height(), 2);
    }
}
