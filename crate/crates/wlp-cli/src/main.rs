//! Command-line front door: parse JSON graph documents, dispatch to the
//! library, emit JSON reports and SVG drawings.
//!
//! Exit codes: 0 on success, 1 on domain errors (with a structured JSON
//! error on stderr), 2 on usage errors.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wlp::cycletree::{draw_3conn_cycle_tree, draw_cycle_tree, recognize_cycle_tree};
use wlp::drawing::{check_geometric, queue_layout, weak_to_strict, PolylineDrawing, Verdict};
use wlp::gen::{
    gen_3conn_lower, gen_cycle_tree_lower, gen_k_plus, gen_nested_triangles, gen_random_cycle_tree,
    gen_random_planar, gen_stacked_cycles, gen_w, reduce_instance,
};
use wlp::graph::{Graph, MarkedGraph, PlaneGraph};
use wlp::io::{
    emit_drawing, emit_graph, emit_trace, parse_drawing, parse_graph, render_svg, GraphInput,
};
use wlp::kernels::{
    modulator_kernelize, threshold_check, treedepth_greedy, treedepth_kernelize,
    vc_kernelize, vertex_cover_2approx, KernelParam, Modulator, Threshold, TreedepthDecomposition,
    VertexCover,
};
use wlp::solver::{decide_span, min_span_wlp, Optimum, SolverConfig};

#[derive(Parser)]
#[command(name = "wlp", version, about = "Weakly leveled planar drawings with bounded edge span")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimize the edge span over all valid drawings (exact, desk scale).
    Solve {
        /// Graph JSON file, or `-` for stdin.
        #[arg(long)]
        input: String,
        /// Vertex cap for the exhaustive search.
        #[arg(long)]
        cap: Option<usize>,
        /// Forbid horizontal edges (strictly leveled mode).
        #[arg(long)]
        strict: bool,
        /// Skip witness construction.
        #[arg(long)]
        no_witness: bool,
        /// Write the witness drawing JSON here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the witness SVG here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Is there a valid drawing with span at most the budget?
    Decide {
        #[arg(long)]
        input: String,
        #[arg(long)]
        span: i64,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        no_witness: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Validate a drawing; optionally check it draws a given graph.
    Check {
        /// Graph JSON the drawing is expected to realize.
        #[arg(long)]
        input: Option<String>,
        /// Drawing JSON file, or `-` for stdin.
        #[arg(long)]
        drawing: String,
    },
    /// Draw a cycle-tree (embedding required in the input).
    Draw {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        mode: DrawMode,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Shrink an instance to a parameterized kernel.
    Kernelize {
        #[arg(long)]
        input: String,
        /// `vc`, `modulator:<b>`, or `treedepth`.
        #[arg(long)]
        param: String,
        #[arg(long)]
        span: i64,
        /// Write the kernel graph JSON here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the reduction trace JSON here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Emit a gadget, lower-bound family, or random instance.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Instance size (families with an `n` parameter).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Middle-class size for the `kplus` gadget.
        #[arg(long)]
        alpha: Option<usize>,
        /// Recursion width `i` for the `w` gadget.
        #[arg(long = "i")]
        gi: Option<usize>,
        /// Recursion height `h` for the `w` gadget.
        #[arg(long = "h")]
        gh: Option<usize>,
        /// Cycle count for `stacked`.
        #[arg(long)]
        k: Option<usize>,
        /// Nesting depth for `nested`.
        #[arg(long)]
        r: Option<usize>,
        /// Enforce 3-connectivity for `random-ct`.
        #[arg(long)]
        three_connected: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Replace every edge of a bipartite planar graph by the span gadget.
    Reduce {
        #[arg(long)]
        input: String,
        #[arg(long)]
        span: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Extract the queue layout induced by a drawing.
    QueueLayout {
        #[arg(long)]
        drawing: String,
    },
    /// Convert a weakly leveled drawing into a strictly leveled one.
    Strictify {
        #[arg(long)]
        drawing: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DrawMode {
    CycleTree,
    #[value(name = "3conn-cycle-tree")]
    ThreeConnCycleTree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Kplus,
    W,
    Stacked,
    Nested,
    #[value(name = "3conn-lower")]
    ThreeConnLower,
    CtLower,
    RandomCt,
    RandomPlanar,
}

struct AppError {
    kind: String,
    message: String,
}

impl AppError {
    fn new(e: impl Display + std::fmt::Debug) -> Self {
        let dbg = format!("{e:?}");
        let kind = dbg
            .split(['(', '{', ' '])
            .next()
            .unwrap_or("Error")
            .to_string();
        AppError {
            kind,
            message: e.to_string(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        AppError {
            kind: "Usage".into(),
            message: message.into(),
        }
    }
}

macro_rules! from_error {
    ($($ty:ty),*) => {$(
        impl From<$ty> for AppError {
            fn from(e: $ty) -> Self {
                AppError::new(e)
            }
        }
    )*};
}

from_error!(
    wlp::io::IoError,
    wlp::graph::GraphError,
    wlp::drawing::DrawingError,
    wlp::solver::SolverError,
    wlp::cycletree::CycleTreeError,
    wlp::kernels::KernelError,
    wlp::gen::GenError,
    std::io::Error
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{}",
                json!({ "error": e.kind, "message": e.message })
            );
            ExitCode::FAILURE
        }
    }
}

fn read_input(path: &str) -> Result<String, AppError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), AppError> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn load_graph(path: &str) -> Result<GraphInput, AppError> {
    Ok(parse_graph(&read_input(path)?)?)
}

fn load_drawing(path: &str) -> Result<PolylineDrawing, AppError> {
    Ok(parse_drawing(&read_input(path)?)?)
}

/// Write witness side outputs and return the drawing document for the
/// report.
fn emit_witness(
    d: &PolylineDrawing,
    output: &Option<PathBuf>,
    svg: &Option<PathBuf>,
) -> Result<serde_json::Value, AppError> {
    let text = emit_drawing(d).map_err(AppError::new)?;
    if let Some(path) = output {
        write_file(path, &text)?;
    }
    if let Some(path) = svg {
        write_file(path, &render_svg(d))?;
    }
    Ok(serde_json::from_str(&text).expect("emitted drawings are valid JSON"))
}

fn plain_input(graph: Graph) -> GraphInput {
    GraphInput {
        graph,
        plane: None,
        marks: BTreeMap::new(),
        leveling: None,
        cover: None,
        modulator: None,
        forest: None,
    }
}

fn marked_input(mg: MarkedGraph) -> GraphInput {
    GraphInput {
        marks: mg.marks,
        ..plain_input(mg.graph)
    }
}

fn plane_input(pg: &PlaneGraph) -> GraphInput {
    GraphInput {
        plane: Some(pg.clone()),
        ..plain_input(pg.graph().clone())
    }
}

fn solver_config(cap: Option<usize>, strict: bool, no_witness: bool) -> SolverConfig {
    let mut cfg = SolverConfig {
        strict,
        want_witness: !no_witness,
        ..SolverConfig::default()
    };
    if let Some(cap) = cap {
        cfg.cap = cap;
    }
    cfg
}

fn run(cmd: Cmd) -> Result<(), AppError> {
    match cmd {
        Cmd::Solve {
            input,
            cap,
            strict,
            no_witness,
            output,
            svg,
        } => {
            let g = load_graph(&input)?.graph;
            let result = min_span_wlp(&g, &solver_config(cap, strict, no_witness))?;
            let mut report = json!({
                "stats": {
                    "levelings_examined": result.stats.levelings_examined,
                    "order_nodes": result.stats.order_nodes,
                },
            });
            match result.optimum {
                Optimum::Feasible { span, witness } => {
                    report["optimum"] = json!(span);
                    report["planar"] = json!(true);
                    if !no_witness {
                        report["witness"] = emit_witness(&witness, &output, &svg)?;
                    }
                }
                Optimum::NonPlanar => {
                    report["optimum"] = serde_json::Value::Null;
                    report["planar"] = json!(false);
                }
            }
            println!("{report}");
        }
        Cmd::Decide {
            input,
            span,
            cap,
            strict,
            no_witness,
            output,
            svg,
        } => {
            let g = load_graph(&input)?.graph;
            let decision = decide_span(&g, span, &solver_config(cap, strict, no_witness))?;
            let mut report = json!({ "feasible": decision.feasible, "span": span });
            if let Some(witness) = &decision.witness {
                report["witness"] = emit_witness(witness, &output, &svg)?;
            }
            println!("{report}");
        }
        Cmd::Check { input, drawing } => {
            let d = load_drawing(&drawing)?;
            let verdict = check_geometric(&d);
            let mut report = json!({
                "valid": verdict.is_valid(),
                "span": d.span(),
                "height": d.height(),
            });
            if let Verdict::Invalid(why) = &verdict {
                report["violation"] = json!(format!("{why:?}"));
            }
            if let Some(path) = input {
                let expected = load_graph(&path)?.graph;
                report["matches_input"] = json!(d.graph() == expected);
            }
            println!("{report}");
        }
        Cmd::Draw {
            input,
            mode,
            output,
            svg,
        } => {
            let parsed = load_graph(&input)?;
            let pg = parsed.plane.ok_or_else(|| {
                AppError::usage("drawing cycle-trees requires a rotation system in the input")
            })?;
            let ct = recognize_cycle_tree(&pg)?;
            let (d, mode_name) = match mode {
                DrawMode::ThreeConnCycleTree => {
                    (draw_3conn_cycle_tree(&ct)?, "3conn-cycle-tree")
                }
                DrawMode::CycleTree => (draw_cycle_tree(&ct)?, "cycle-tree"),
            };
            let doc = emit_witness(&d, &output, &svg)?;
            println!(
                "{}",
                json!({
                    "mode": mode_name,
                    "span": d.span(),
                    "height": d.height(),
                    "drawing": doc,
                })
            );
        }
        Cmd::Kernelize {
            input,
            param,
            span,
            output,
            trace,
        } => {
            let parsed = load_graph(&input)?;
            let g = &parsed.graph;
            let (kernel, tr, tparam) = match param.as_str() {
                "vc" => {
                    let cover = match &parsed.cover {
                        Some(set) => VertexCover::new(g, set.clone())?,
                        None => vertex_cover_2approx(g),
                    };
                    let (kernel, tr) = vc_kernelize(g, &cover, span)?;
                    (
                        kernel,
                        tr,
                        KernelParam::VertexCover {
                            k: cover.k() as u64,
                        },
                    )
                }
                p if p.starts_with("modulator:") => {
                    let b: usize = p["modulator:".len()..]
                        .parse()
                        .map_err(|_| AppError::usage("expected modulator:<positive integer>"))?;
                    let set = parsed
                        .modulator
                        .clone()
                        .or_else(|| Some(vertex_cover_2approx(g).cover().clone()))
                        .unwrap();
                    let m = Modulator::new(g, set, b)?;
                    let (kernel, tr) = modulator_kernelize(g, &m, span)?;
                    (
                        kernel,
                        tr,
                        KernelParam::Modulator {
                            b: m.bound() as u64,
                            k: m.k() as u64,
                        },
                    )
                }
                "treedepth" => {
                    let t = match &parsed.forest {
                        Some(parents) => TreedepthDecomposition::new(g, parents.clone())?,
                        None => treedepth_greedy(g),
                    };
                    let (kernel, tr) = treedepth_kernelize(g, &t, span)?;
                    (
                        kernel,
                        tr,
                        KernelParam::Treedepth { td: t.td() as u32 },
                    )
                }
                _ => {
                    return Err(AppError::usage(
                        "expected --param vc, modulator:<b>, or treedepth",
                    ))
                }
            };
            let kernel_text = emit_graph(&plain_input(kernel.clone()));
            if let Some(path) = &output {
                write_file(path, &kernel_text)?;
            }
            let trace_text = emit_trace(&tr);
            if let Some(path) = &trace {
                write_file(path, &trace_text)?;
            }
            let threshold = match threshold_check(tparam, span) {
                Threshold::Yes => "yes",
                Threshold::Undecided => "undecided",
            };
            println!(
                "{}",
                json!({
                    "param": param,
                    "span": span,
                    "threshold": threshold,
                    "original_vertices": g.num_vertices(),
                    "kernel_vertices": kernel.num_vertices(),
                    "kernel_edges": kernel.num_edges(),
                    "removed": tr.removed_count(),
                    "kernel": serde_json::from_str::<serde_json::Value>(&kernel_text).unwrap(),
                    "trace": serde_json::from_str::<serde_json::Value>(&trace_text).unwrap(),
                })
            );
        }
        Cmd::Generate {
            family,
            n,
            seed,
            alpha,
            gi,
            gh,
            k,
            r,
            three_connected,
            output,
        } => {
            let need = |opt: Option<usize>, flag: &str| {
                opt.ok_or_else(|| AppError::usage(format!("--family requires --{flag}")))
            };
            let input = match family {
                Family::Kplus => marked_input(gen_k_plus(need(alpha, "alpha")?)),
                Family::W => marked_input(gen_w(need(gi, "i")?, need(gh, "h")?)?),
                Family::Stacked => plain_input(gen_stacked_cycles(need(k, "k")?)),
                Family::Nested => plain_input(gen_nested_triangles(need(r, "r")?)),
                Family::ThreeConnLower => {
                    plane_input(gen_3conn_lower(need(n, "n")?)?.plane_graph())
                }
                Family::CtLower => plane_input(gen_cycle_tree_lower(need(n, "n")?)?.plane_graph()),
                Family::RandomCt => plane_input(
                    gen_random_cycle_tree(need(n, "n")?, three_connected, seed)?.plane_graph(),
                ),
                Family::RandomPlanar => plain_input(gen_random_planar(need(n, "n")?, seed)),
            };
            let text = emit_graph(&input);
            match &output {
                Some(path) => write_file(path, &text)?,
                None => println!("{text}"),
            }
        }
        Cmd::Reduce {
            input,
            span,
            output,
        } => {
            let h = load_graph(&input)?.graph;
            let g = reduce_instance(&h, span)?;
            let text = emit_graph(&plain_input(g));
            match &output {
                Some(path) => write_file(path, &text)?,
                None => println!("{text}"),
            }
        }
        Cmd::QueueLayout { drawing } => {
            let d = load_drawing(&drawing)?;
            let layout = queue_layout(&d)?;
            let queues: BTreeMap<String, usize> = layout
                .queues
                .iter()
                .map(|((u, v), q)| (format!("{u}-{v}"), *q))
                .collect();
            println!(
                "{}",
                json!({
                    "num_queues": layout.num_queues,
                    "order": layout.order,
                    "queues": queues,
                    "nesting_violations": layout.nesting_violations().len(),
                })
            );
        }
        Cmd::Strictify {
            drawing,
            output,
            svg,
        } => {
            let d = load_drawing(&drawing)?;
            let strict = weak_to_strict(&d)?;
            let doc = emit_witness(&strict, &output, &svg)?;
            println!(
                "{}",
                json!({
                    "span": strict.span(),
                    "height": strict.height(),
                    "drawing": doc,
                })
            );
        }
    }
    Ok(())
}
