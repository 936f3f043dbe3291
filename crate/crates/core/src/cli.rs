//! Command-line front end.  [`run`] is the whole program minus process
//! plumbing so it can be driven from tests.

use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::algebra::{extract_ghost_polynomial, parse_element, Lpa};
use crate::catalogue;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::Graph;
use crate::io::{load_graph, save_graph};
use crate::lattice::{
    admissible_pairs, breaking_vertices, format_vertex_set, hereditary_closure, in_graded_ideal, parse_vertex_set,
    saturate, AdmissiblePair, Lattice, VertexSet,
};
use crate::props::{condition_k, condition_l, is_cofinal, is_simple};
use crate::transforms::{desingularize, quotient_graph, restriction_graph};

#[derive(Parser, Debug)]
#[command(name = "leavitt", version, about = "Leavitt path algebras of directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// `GRAPH` is a graph file, or a catalogue name (R1, R2, A3, C3, T,
/// Example5, two_loops) when no such file exists.
#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph file and report its size.
    Validate { graph: String },
    /// Conditions (L) and (K), cofinality and simplicity as key=value lines.
    Props { graph: String },
    /// Saturation of a hereditary set.
    Saturate {
        graph: String,
        #[arg(long = "H", value_name = "VERTICES")]
        h: String,
    },
    /// Hereditary closure of a vertex set.
    Closure {
        graph: String,
        #[arg(long = "X", value_name = "VERTICES")]
        x: String,
    },
    /// Breaking vertices of a saturated hereditary set.
    Breaking {
        graph: String,
        #[arg(long = "H", value_name = "VERTICES")]
        h: String,
    },
    /// All admissible pairs, one per line.
    Pairs { graph: String },
    /// The lattice of admissible pairs.
    Lattice {
        graph: String,
        /// Emit a Hasse diagram in DOT.
        #[arg(long)]
        dot: bool,
        /// Compare the printed meet/join formulas with the order-theoretic bounds.
        #[arg(long)]
        formulas: bool,
    },
    /// The quotient graph of an admissible pair.
    Quotient {
        graph: String,
        #[arg(long, value_name = "H={..};S={..}")]
        pair: String,
    },
    /// The restriction graph of an admissible pair.
    Restrict {
        graph: String,
        #[arg(long, value_name = "H={..};S={..}")]
        pair: String,
    },
    /// Truncated desingularization.
    Desingularize {
        graph: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Normal form of an element expression.
    Eval {
        graph: String,
        expr: String,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Membership of an element in the graded ideal of a pair.
    Member {
        graph: String,
        expr: String,
        #[arg(long, value_name = "H={..};S={..}")]
        pair: String,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// A nonzero ghost-only element of the ideal generated by an element.
    GhostExtract {
        graph: String,
        expr: String,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Simplicity verdict with every characterization.
    Simple { graph: String },
    /// The graph in DOT.
    Dot { graph: String },
}

fn resolve_graph(spec: &str) -> Result<Graph> {
    let path = std::path::Path::new(spec);
    if path.exists() {
        return load_graph(path);
    }
    catalogue::by_name(spec).ok_or_else(|| Error::Hypothesis(format!("no graph file or catalogue graph `{spec}`")))
}

fn algebra(graph: &str, field: &str) -> Result<Arc<Lpa>> {
    Ok(Lpa::new(resolve_graph(graph)?, Field::from_tag(field)?))
}

fn names(g: &Graph, set: &VertexSet) -> String {
    set.iter().map(|v| g.vertex_name(*v)).collect::<Vec<_>>().join(" ")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    let mut text = String::new();
    let mut line = |s: String| {
        text.push_str(&s);
        text.push('\n');
    };
    match command {
        Command::Validate { graph } => {
            let g = resolve_graph(&graph)?;
            line(format!(
                "valid: {} vertices, {} edges, {} bundles",
                g.vertex_count(),
                g.edge_count(),
                g.bundles().len()
            ));
        }
        Command::Props { graph } => {
            let g = resolve_graph(&graph)?;
            line(format!("condition_L={}", condition_l(&g)));
            line(format!("condition_K={}", condition_k(&g)));
            line(format!("cofinal={}", is_cofinal(&g)));
            line(format!("simple={}", is_simple(&g)?.simple));
        }
        Command::Saturate { graph, h } => {
            let g = resolve_graph(&graph)?;
            line(names(&g, &saturate(&g, &parse_vertex_set(&g, &h)?)?));
        }
        Command::Closure { graph, x } => {
            let g = resolve_graph(&graph)?;
            line(names(&g, &hereditary_closure(&g, &parse_vertex_set(&g, &x)?)?));
        }
        Command::Breaking { graph, h } => {
            let g = resolve_graph(&graph)?;
            line(names(&g, &breaking_vertices(&g, &parse_vertex_set(&g, &h)?)?));
        }
        Command::Pairs { graph } => {
            let g = resolve_graph(&graph)?;
            for p in admissible_pairs(&g) {
                line(p.display(&g));
            }
        }
        Command::Lattice { graph, dot, formulas } => {
            let g = resolve_graph(&graph)?;
            let lat = Lattice::new(&g);
            if dot {
                text.push_str(&lat.to_dot(&g));
            } else if formulas {
                let bad = lat.formula_disagreements(&g)?;
                for d in &bad {
                    line(format!(
                        "{} {} {}: formula H={};S={} lattice {}",
                        d.op,
                        d.left.display(&g),
                        d.right.display(&g),
                        format_vertex_set(&g, &d.formula.0),
                        format_vertex_set(&g, &d.formula.1),
                        d.lattice.display(&g)
                    ));
                }
                line(format!("disagreements={}", bad.len()));
            } else {
                for (i, p) in lat.pairs().iter().enumerate() {
                    line(format!("{i} {}", p.display(&g)));
                }
                for (i, j) in lat.covers() {
                    line(format!("{i} < {j}"));
                }
            }
        }
        Command::Quotient { graph, pair } => {
            let g = resolve_graph(&graph)?;
            text.push_str(&save_graph(&quotient_graph(&g, &AdmissiblePair::parse(&g, &pair)?)?));
        }
        Command::Restrict { graph, pair } => {
            let g = resolve_graph(&graph)?;
            text.push_str(&save_graph(&restriction_graph(&g, &AdmissiblePair::parse(&g, &pair)?)?));
        }
        Command::Desingularize { graph, depth } => {
            let g = resolve_graph(&graph)?;
            text.push_str(&save_graph(&desingularize(&g, depth)?));
        }
        Command::Eval { graph, expr, field } => {
            let alg = algebra(&graph, &field)?;
            line(parse_element(&alg, &expr)?.to_string());
        }
        Command::Member { graph, expr, pair, field } => {
            let alg = algebra(&graph, &field)?;
            let p = AdmissiblePair::parse(alg.graph(), &pair)?;
            line(in_graded_ideal(&alg, &p, &parse_element(&alg, &expr)?)?.to_string());
        }
        Command::GhostExtract { graph, expr, field } => {
            let alg = algebra(&graph, &field)?;
            let y = parse_element(&alg, &expr)?;
            let found = extract_ghost_polynomial(&alg, &y)?;
            line(format!("x={}", found.x));
            line(format!("vertex={}", alg.graph().vertex_name(found.vertex)));
            line(format!("beta={}", found.beta.display(alg.graph())));
        }
        Command::Simple { graph } => {
            let g = resolve_graph(&graph)?;
            let v = is_simple(&g)?;
            line(format!("simple={}", v.simple));
            line(format!("condition_L={}", v.condition_l));
            line(format!("condition_K={}", v.condition_k));
            line(format!("trivial_saturated={}", v.trivial_saturated));
            line(format!("cofinal={}", v.cofinal));
            line(format!("reaches_singular={}", v.reaches_singular));
            let labels = ["L_trivial", "K_trivial", "L_cofinal_singular", "K_cofinal_singular"];
            for (label, value) in labels.iter().zip(v.characterizations) {
                line(format!("via_{label}={value}"));
            }
        }
        Command::Dot { graph } => {
            text.push_str(&resolve_graph(&graph)?.to_dot());
        }
    }
    out.write_all(text.as_bytes()).map_err(|e| Error::Internal(format!("write failed: {e}")))
}

/// Runs the program on `args` (including the program name) and returns the
/// exit status: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
