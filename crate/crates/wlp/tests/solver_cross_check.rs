use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wlp::graph::{build_graph, Graph};
use wlp::solver::{min_span_naive, min_span_wlp, Optimum, SolverConfig};

fn random_graph(rng: &mut StdRng, n: u64, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build_graph(0..n, edges).unwrap()
}

#[test]
fn cross_check_sweep_vs_naive() {
    let mut rng = StdRng::seed_from_u64(20240824);
    for strict in [false, true] {
        let cfg = SolverConfig {
            strict,
            ..SolverConfig::with_cap(8)
        };
        for trial in 0..150 {
            let n = rng.gen_range(2..=5);
            let p = rng.gen_range(0.2..0.9);
            let g = random_graph(&mut rng, n, p);
            let a = min_span_wlp(&g, &cfg).unwrap();
            let b = min_span_naive(&g, strict);
            let key = match &a.optimum {
                Optimum::Feasible { span, .. } => Some(*span),
                Optimum::NonPlanar => None,
            };
            assert_eq!(
                key, b,
                "disagreement strict={strict} trial={trial} n={n} g={:?}",
                g
            );
        }
    }
}
