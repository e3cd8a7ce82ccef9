//! Weakly leveled planar drawings with bounded edge span.
//!
//! A *leveling* assigns every vertex of a planar graph to an integer level;
//! the *span* of an edge is the absolute level difference of its endpoints.
//! A drawing is *weakly leveled planar* when vertices sit on their levels,
//! every edge is either horizontal or strictly y-monotone, and no two edges
//! cross. This crate provides:
//!
//! - graph and plane-graph representations with embedding validation
//!   ([`graph`]),
//! - levelings, polyline drawings, combinatorial and geometric validity
//!   checkers, the weak-to-strict transform and queue-layout extraction
//!   ([`drawing`]),
//! - an exact exhaustive solver for span minimization at desk scale
//!   ([`solver`]),
//! - drawing algorithms for cycle-trees: span at most 4 for 3-connected
//!   inputs, logarithmic span in general ([`cycletree`]),
//! - kernelizations parameterized by vertex cover, modulator size and
//!   treedepth ([`kernels`]),
//! - gadget, reduction and random instance generators ([`gen`]),
//! - the JSON/SVG external interfaces ([`io`]).

pub mod cycletree;
pub mod drawing;
pub mod gen;
pub mod graph;
pub mod io;
pub mod kernels;
pub mod solver;
