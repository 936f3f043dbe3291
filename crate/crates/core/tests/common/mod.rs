//! Seeded random graphs and elements shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use leavitt::graph::{Graph, Path, VertexId};
use leavitt::{Element, Lpa, Monomial};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A graph with 1..=`max_vertices` vertices, a few edges (loops and
/// parallel edges allowed) and, when asked, occasional bundles.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize, bundles: bool) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut b = Graph::builder();
    for name in &names {
        b = b.vertex(name);
    }
    let edges = rng.gen_range(0..=2 * n);
    for k in 0..edges {
        let s = names.choose(rng).unwrap();
        let t = names.choose(rng).unwrap();
        b = b.edge(&format!("e{k}"), s, t);
    }
    if bundles {
        for name in &names {
            if rng.gen_bool(0.2) {
                let count = rng.gen_range(1..=n.min(2));
                let targets: Vec<&str> = names.choose_multiple(rng, count).map(String::as_str).collect();
                b = b.bundle(name, &targets);
            }
        }
    }
    b.build().expect("random graph is well formed")
}

/// A path of length at most `max_len` ending at `r`, grown backwards.
pub fn random_path_into(rng: &mut impl Rng, g: &Graph, r: VertexId, max_len: usize) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut at = r;
    let mut rev = Vec::new();
    for _ in 0..len {
        match g.in_edges(at).choose(rng) {
            Some(&e) => {
                rev.push(e);
                at = g.source(e);
            }
            None => break,
        }
    }
    rev.reverse();
    Path { source: at, edges: rev }
}

pub fn random_monomial(rng: &mut impl Rng, g: &Graph, max_len: usize) -> Monomial {
    let r = VertexId(rng.gen_range(0..g.vertex_count()));
    random_monomial_at(rng, g, r, max_len)
}

pub fn random_monomial_at(rng: &mut impl Rng, g: &Graph, r: VertexId, max_len: usize) -> Monomial {
    let alpha = random_path_into(rng, g, r, max_len);
    let beta = random_path_into(rng, g, r, max_len);
    Monomial::new(g, alpha, beta).expect("shared range")
}

/// A combination of up to `terms` random monomials with small integer
/// coefficients (possibly zero in total).
pub fn random_element(rng: &mut impl Rng, alg: &Arc<Lpa>, terms: usize, max_len: usize) -> Element {
    let mut x = alg.zero();
    if alg.graph().vertex_count() == 0 {
        return x;
    }
    for _ in 0..rng.gen_range(1..=terms) {
        let m = random_monomial(rng, alg.graph(), max_len);
        let c = alg.scalar(rng.gen_range(-3..=3));
        x = &x + &alg.term(c, m);
    }
    x
}

/// As [`random_element`], retried until nonzero.
pub fn random_nonzero_element(rng: &mut impl Rng, alg: &Arc<Lpa>, terms: usize, max_len: usize) -> Element {
    loop {
        let x = random_element(rng, alg, terms, max_len);
        if !x.is_zero() {
            return x.normalize();
        }
    }
}
