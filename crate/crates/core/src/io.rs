//! Line-oriented graph text format.
//!
//! ```text
//! # comment
//! vertex v
//! edge e v w
//! bundle v y,z
//! ```
//!
//! `#` starts a comment when it begins a token.  Tokens are separated by
//! whitespace; bundle targets are comma separated and may be spread over
//! several tokens.

use std::path::Path as FsPath;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

/// Whitespace-separated tokens with 1-based columns, comments stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => {
                if ch == '#' {
                    break;
                }
                start = Some(i);
            }
            _ => {}
        }
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for (n, line) in text.lines().enumerate() {
        let lineno = n + 1;
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else { continue };
        let args = &toks[1..];
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                return Ok(());
            }
            let at = args.get(k).map(|t| t.0).unwrap_or(line.chars().count() + 1);
            Err(syntax(lineno, at, format!("`{keyword}` takes {k} argument(s), found {}", args.len())))
        };
        match keyword {
            "vertex" => {
                arity(1)?;
                b = b.vertex(args[0].1);
            }
            "edge" => {
                arity(3)?;
                b = b.edge(args[0].1, args[1].1, args[2].1);
            }
            "bundle" => {
                if args.len() < 2 {
                    let at = args.get(1).map(|t| t.0).unwrap_or(line.chars().count() + 1);
                    return Err(syntax(lineno, at, "`bundle` takes a source and at least one target"));
                }
                let joined: String = args[1..].iter().map(|t| t.1).collect::<Vec<_>>().join("");
                let targets: Vec<&str> = joined.split(',').filter(|s| !s.is_empty()).collect();
                if targets.is_empty() {
                    return Err(syntax(lineno, args[1].0, "empty bundle target list"));
                }
                b = b.bundle(args[0].1, &targets);
            }
            other => return Err(syntax(lineno, col, format!("unknown keyword `{other}`"))),
        }
    }
    b.build()
}

pub fn load_graph(path: impl AsRef<FsPath>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Hypothesis(format!("cannot read `{}`: {e}", path.display())))?;
    parse_graph(&text)
}

/// Canonical text: vertices, then edges, then bundles, in graph order.
pub fn save_graph(g: &Graph) -> String {
    let mut s = String::new();
    for v in g.vertex_ids() {
        s.push_str(&format!("vertex {}\n", g.vertex_name(v)));
    }
    for e in g.edge_ids() {
        let r = g.edge_record(e);
        s.push_str(&format!("edge {} {} {}\n", r.name, g.vertex_name(r.source), g.vertex_name(r.range)));
    }
    for (v, targets) in g.bundles() {
        let ts: Vec<&str> = targets.iter().map(|t| g.vertex_name(*t)).collect();
        s.push_str(&format!("bundle {} {}\n", g.vertex_name(*v), ts.join(",")));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    #[test]
    fn loop_source() {
        let g = parse_graph("vertex v\nedge e v v   # the loop\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        assert_eq!(g, catalogue::r1());
    }

    #[test]
    fn example_with_bundles() {
        let text = save_graph(&catalogue::example5());
        assert_eq!(text.lines().filter(|l| l.starts_with("bundle")).count(), 3);
        let g = parse_graph(&text).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.bundles().len(), 3);
        assert_eq!(save_graph(&g), text);
    }

    #[test]
    fn positioned_errors() {
        let err = parse_graph("vertex v\nedge e v\n").unwrap_err();
        assert_eq!(err, Error::Syntax { line: 2, column: 9, message: "`edge` takes 3 argument(s), found 2".into() });
        let err = parse_graph("vertex v\n  edge e v v w\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 14, .. }));
        let err = parse_graph("vertx v\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 1, .. }));
        assert!(matches!(parse_graph("vertex v\nedge e v w\n"), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn comments_only_at_token_start() {
        let g = parse_graph("# header\nvertex v#1 # trailing\n").unwrap();
        assert_eq!(g.vertex_name(crate::graph::VertexId(0)), "v#1");
        let g = parse_graph("vertex v\nvertex y\nvertex z\nbundle v y, z\n").unwrap();
        assert_eq!(g.bundle_targets(g.vertex("v").unwrap()).unwrap().len(), 2);
    }
}
