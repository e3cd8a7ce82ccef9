//! Randomized invariant checks across the library surface.

use proptest::prelude::*;

use wlp::cycletree::{draw_cycle_tree, recognize_cycle_tree};
use wlp::drawing::{
    check_geometric, check_normalized, normalize, queue_layout, weak_to_strict, Verdict,
};
use wlp::gen::{gen_random_cycle_tree, gen_random_planar};
use wlp::io::{emit_drawing, emit_graph, parse_drawing, parse_graph, GraphInput};
use wlp::kernels::{vc_kernelize, vertex_cover_2approx, VertexCover};
use wlp::solver::{min_span_wlp, Optimum, SolverConfig};

fn feasible_witness(n: usize, seed: u64) -> Option<(wlp::graph::Graph, wlp::drawing::PolylineDrawing, i64)> {
    let g = gen_random_planar(n, seed);
    let result = min_span_wlp(&g, &SolverConfig::default()).ok()?;
    match result.optimum {
        Optimum::Feasible { span, witness } => Some((g, witness, span)),
        Optimum::NonPlanar => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_witnesses_are_valid_and_consistent(n in 2usize..9, seed in 0u64..10_000) {
        if let Some((g, witness, span)) = feasible_witness(n, seed) {
            prop_assert!(check_geometric(&witness).is_valid());
            prop_assert_eq!(witness.graph(), g);
            prop_assert_eq!(witness.span(), span);
        }
    }

    #[test]
    fn geometric_and_normalized_checkers_agree(n in 2usize..9, seed in 0u64..10_000) {
        if let Some((_, witness, _)) = feasible_witness(n, seed) {
            let nd = normalize(&witness).unwrap();
            prop_assert_eq!(
                check_geometric(&witness).is_valid(),
                check_normalized(&nd).unwrap() == Verdict::Valid
            );
        }
    }

    #[test]
    fn drawing_documents_round_trip(n in 2usize..9, seed in 0u64..10_000) {
        if let Some((_, witness, _)) = feasible_witness(n, seed) {
            let text = emit_drawing(&witness).unwrap();
            let back = parse_drawing(&text).unwrap();
            prop_assert_eq!(back.graph(), witness.graph());
            prop_assert_eq!(back.span(), witness.span());
            prop_assert_eq!(emit_drawing(&back).unwrap(), text);
        }
    }

    #[test]
    fn graph_documents_round_trip(n in 1usize..20, seed in 0u64..10_000) {
        let g = gen_random_planar(n, seed);
        let input = GraphInput {
            graph: g.clone(),
            plane: None,
            marks: Default::default(),
            leveling: None,
            cover: None,
            modulator: None,
            forest: None,
        };
        let text = emit_graph(&input);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(back.graph, g);
    }

    #[test]
    fn strictify_preserves_validity_within_bounds(n in 5usize..40, seed in 0u64..10_000) {
        let ct = gen_random_cycle_tree(n, false, seed).unwrap();
        let d = draw_cycle_tree(&recognize_cycle_tree(ct.plane_graph()).unwrap()).unwrap();
        prop_assert!(check_geometric(&d).is_valid());
        let strict = weak_to_strict(&d).unwrap();
        prop_assert!(check_geometric(&strict).is_valid());
        prop_assert!(strict.is_strictly_leveled());
        prop_assert!(strict.span() <= 2 * d.span() + 1);
        prop_assert!(strict.height() <= 2 * d.height() + 1);
        prop_assert_eq!(strict.graph(), d.graph());
    }

    #[test]
    fn queue_layouts_are_nesting_free(n in 5usize..40, seed in 0u64..10_000) {
        let ct = gen_random_cycle_tree(n, false, seed).unwrap();
        let d = draw_cycle_tree(&recognize_cycle_tree(ct.plane_graph()).unwrap()).unwrap();
        let layout = queue_layout(&d).unwrap();
        prop_assert!(layout.nesting_violations().is_empty());
        prop_assert!(layout.num_queues as i64 <= d.span() + 1);
        prop_assert_eq!(layout.order.len(), d.positions().len());
    }

    #[test]
    fn vc_kernelization_is_idempotent(n in 2usize..30, seed in 0u64..10_000, s in 1i64..4) {
        let g = gen_random_planar(n, seed);
        let cover = vertex_cover_2approx(&g);
        let (kernel, _) = vc_kernelize(&g, &cover, s).unwrap();
        let cover2 = VertexCover::new(&kernel, cover.cover().clone()).unwrap();
        let (kernel2, trace2) = vc_kernelize(&kernel, &cover2, s).unwrap();
        prop_assert_eq!(kernel2, kernel);
        prop_assert!(trace2.is_empty());
    }
}
