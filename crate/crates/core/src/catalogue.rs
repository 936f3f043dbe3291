//! Small named graphs used throughout the test suites and the CLI docs.

use crate::graph::{Graph, GraphBuilder};

fn build(b: GraphBuilder) -> Graph {
    b.build().expect("catalogue graph is well formed")
}

/// One vertex `v` with one loop `e`.
pub fn r1() -> Graph {
    build(Graph::builder().vertex("v").edge("e", "v", "v"))
}

/// One vertex `v` with loops `a`, `b`.
pub fn r2() -> Graph {
    rose(2)
}

/// Rose with `n` petals; petals are named `a`, `b`, ... for `n <= 26`.
pub fn rose(n: usize) -> Graph {
    let mut b = Graph::builder().vertex("v");
    for i in 0..n {
        let name = if n <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("e{}", i + 1) };
        b = b.edge(&name, "v", "v");
    }
    build(b)
}

/// `u --e--> v --f--> w`.
pub fn a3() -> Graph {
    build(Graph::builder().vertices(&["u", "v", "w"]).edge("e", "u", "v").edge("f", "v", "w"))
}

/// Line graph `v1 -> v2 -> ... -> vn` with edges `e1 .. e(n-1)`.
pub fn line(n: usize) -> Graph {
    let mut b = Graph::builder();
    for i in 1..=n {
        b = b.vertex(&format!("v{i}"));
    }
    for i in 1..n {
        b = b.edge(&format!("e{i}"), &format!("v{i}"), &format!("v{}", i + 1));
    }
    build(b)
}

/// Single simple closed path `v1 -e1-> v2 -> ... -en-> v1`.
pub fn cycle(n: usize) -> Graph {
    let mut b = Graph::builder();
    for i in 1..=n {
        b = b.vertex(&format!("v{i}"));
    }
    for i in 1..=n {
        let next = if i == n { 1 } else { i + 1 };
        b = b.edge(&format!("e{i}"), &format!("v{i}"), &format!("v{next}"));
    }
    build(b)
}

pub fn c3() -> Graph {
    cycle(3)
}

/// Loop `e` at `v` with an exit `f: v -> w`.
pub fn t() -> Graph {
    build(Graph::builder().vertices(&["v", "w"]).edge("e", "v", "v").edge("f", "v", "w"))
}

/// Two disjoint loops.
pub fn two_loops() -> Graph {
    build(Graph::builder().vertices(&["v", "w"]).edge("e", "v", "v").edge("f", "w", "w"))
}

/// The six-vertex graph with three infinite emitters used to illustrate
/// admissible pairs: `v`, `x`, `w` each emit infinitely many edges to `y`.
pub fn example5() -> Graph {
    build(
        Graph::builder()
            .vertices(&["u", "v", "w", "x", "y", "z"])
            .edge("uv", "u", "v")
            .edge("ux", "u", "x")
            .edge("uw", "u", "w")
            .edge("vx", "v", "x")
            .edge("wx", "w", "x")
            .edge("wu", "w", "u")
            .edge("yz", "y", "z")
            .edge("zy", "z", "y")
            .bundle("v", &["y"])
            .bundle("x", &["y"])
            .bundle("w", &["y"]),
    )
}

/// The catalogue used by the exhaustive suites.
pub fn all() -> Vec<(&'static str, Graph)> {
    vec![("R1", r1()), ("R2", r2()), ("A3", a3()), ("C3", c3()), ("T", t()), ("Example5", example5())]
}

/// Looks up a catalogue graph by name, ignoring case.
pub fn by_name(name: &str) -> Option<Graph> {
    match name.to_ascii_lowercase().as_str() {
        "r1" => Some(r1()),
        "r2" => Some(r2()),
        "a3" => Some(a3()),
        "c3" => Some(c3()),
        "t" => Some(t()),
        "example5" => Some(example5()),
        "two_loops" => Some(two_loops()),
        _ => None,
    }
}
