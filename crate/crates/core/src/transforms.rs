//! Graph constructions attached to admissible pairs, truncated
//! desingularization and the matrix model of a single cycle.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::{Element, Lpa, Monomial};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, GraphBuilder, Path, VertexId};
use crate::lattice::{breaking_vertices, is_hereditary, vh_element, AdmissiblePair, VertexSet};
use crate::laurent::{LaurentMatrix, LaurentPoly};

fn validated(g: &Graph, p: &AdmissiblePair) -> Result<AdmissiblePair> {
    AdmissiblePair::new(g, p.h.clone(), p.s.clone())
}

/// Appends `'` until the name is unused.
fn primed(name: &str, taken: &BTreeSet<String>) -> String {
    let mut out = format!("{name}'");
    while taken.contains(&out) {
        out.push('\'');
    }
    out
}

fn all_names(g: &Graph) -> BTreeSet<String> {
    g.vertex_ids()
        .map(|v| g.vertex_name(v).to_string())
        .chain(g.edge_ids().map(|e| g.edge_name(e).to_string()))
        .collect()
}

/// Names in the quotient graph for every vertex and edge of the source.
struct QuotientNames {
    graph: Graph,
    vertex_images: Vec<Vec<String>>,
    edge_images: Vec<Vec<String>>,
}

fn build_quotient(g: &Graph, p: &AdmissiblePair) -> Result<QuotientNames> {
    let p = validated(g, p)?;
    let b = breaking_vertices(g, &p.h)?;
    let doubled: VertexSet = b.difference(&p.s).copied().collect();
    let mut taken = all_names(g);
    let mut prime = |name: &str| {
        let n = primed(name, &taken);
        taken.insert(n.clone());
        n
    };

    let mut vertex_images: Vec<Vec<String>> = vec![Vec::new(); g.vertex_count()];
    let mut builder = GraphBuilder::new();
    for v in g.vertex_ids() {
        if p.h.contains(&v) {
            continue;
        }
        let name = g.vertex_name(v).to_string();
        builder = builder.vertex(&name);
        vertex_images[v.0].push(name.clone());
        if doubled.contains(&v) {
            let copy = prime(&name);
            builder = builder.vertex(&copy);
            vertex_images[v.0].push(copy);
        }
    }
    let mut edge_images: Vec<Vec<String>> = vec![Vec::new(); g.edge_count()];
    for e in g.edge_ids() {
        let r = g.range(e);
        if p.h.contains(&r) {
            continue;
        }
        let src = &vertex_images[g.source(e).0][0];
        let name = g.edge_name(e).to_string();
        builder = builder.edge(&name, src, &vertex_images[r.0][0]);
        edge_images[e.0].push(name.clone());
        if doubled.contains(&r) {
            let copy = prime(&name);
            builder = builder.edge(&copy, src, &vertex_images[r.0][1]);
            edge_images[e.0].push(copy);
        }
    }
    for (v, targets) in g.bundles() {
        if p.h.contains(v) {
            continue;
        }
        let kept: Vec<&str> = targets.iter().flat_map(|t| vertex_images[t.0].iter().map(String::as_str)).collect();
        if !kept.is_empty() {
            builder = builder.bundle(&vertex_images[v.0][0], &kept);
        }
    }
    Ok(QuotientNames { graph: builder.build()?, vertex_images, edge_images })
}

/// `E \ (H,S)`: vertices outside `H` plus a copy `v'` of each breaking
/// vertex not in `S`; edges with range outside `H` plus a copy `e'` of each
/// edge into a doubled vertex.  Bundles keep their surviving targets.
pub fn quotient_graph(g: &Graph, p: &AdmissiblePair) -> Result<Graph> {
    Ok(build_quotient(g, p)?.graph)
}

/// The homomorphism `L_K(E) → L_K(E \ (H,S))` whose kernel is the graded
/// ideal of the pair.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: Arc<Lpa>,
    target: Arc<Lpa>,
    vertex_images: Vec<Vec<VertexId>>,
    edge_images: Vec<Vec<EdgeId>>,
}

impl QuotientMap {
    pub fn new(alg: &Arc<Lpa>, p: &AdmissiblePair) -> Result<QuotientMap> {
        let q = build_quotient(alg.graph(), p)?;
        let graph = q.graph;
        let vertex_images = q
            .vertex_images
            .iter()
            .map(|names| names.iter().map(|n| graph.vertex(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let edge_images = q
            .edge_images
            .iter()
            .map(|names| names.iter().map(|n| graph.edge(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientMap { source: Arc::clone(alg), target: Lpa::new(graph, alg.field()), vertex_images, edge_images })
    }

    pub fn source(&self) -> &Arc<Lpa> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Lpa> {
        &self.target
    }

    fn vertex_image(&self, v: VertexId) -> Element {
        let mut x = self.target.zero();
        for &w in &self.vertex_images[v.0] {
            x = &x + &self.target.vertex_element(w);
        }
        x
    }

    fn edge_image(&self, e: EdgeId, ghost: bool) -> Element {
        let mut x = self.target.zero();
        for &f in &self.edge_images[e.0] {
            let y = if ghost { self.target.ghost_element(f) } else { self.target.edge_element(f) };
            x = &x + &y;
        }
        x
    }

    fn monomial_image(&self, m: &Monomial) -> Result<Element> {
        if m.alpha.is_vertex() && m.beta.is_vertex() {
            return Ok(self.vertex_image(m.alpha.source));
        }
        let mut factors: Vec<Element> = m.alpha.edges.iter().map(|e| self.edge_image(*e, false)).collect();
        factors.extend(m.beta.edges.iter().rev().map(|e| self.edge_image(*e, true)));
        let mut acc = factors.remove(0);
        for f in &factors {
            if acc.is_empty() {
                break;
            }
            acc = acc.try_mul(f)?;
        }
        Ok(acc)
    }

    /// Substitutes the images of the generators and normalizes.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.graph() != self.source.graph() || x.algebra().field() != self.source.field() {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.target.zero();
        for (m, c) in x.terms() {
            let image = self.monomial_image(m)?.scale(c)?;
            out = out.try_add(&image)?;
        }
        Ok(out.normalize())
    }
}

pub fn quotient_hom(alg: &Arc<Lpa>, p: &AdmissiblePair, x: &Element) -> Result<Element> {
    QuotientMap::new(alg, p)?.apply(x)
}

fn restrict(g: &Graph, h: &VertexSet, s: &VertexSet) -> Result<Graph> {
    let keep = |v: &VertexId| h.contains(v) || s.contains(v);
    let mut b = GraphBuilder::new();
    for v in g.vertex_ids().filter(keep) {
        b = b.vertex(g.vertex_name(v));
    }
    for e in g.edge_ids() {
        let (src, dst) = (g.source(e), g.range(e));
        if h.contains(&src) || (s.contains(&src) && h.contains(&dst)) {
            b = b.edge(g.edge_name(e), g.vertex_name(src), g.vertex_name(dst));
        }
    }
    for (v, targets) in g.bundles() {
        if keep(v) {
            let inside: Vec<&str> = targets.iter().filter(|t| h.contains(t)).map(|t| g.vertex_name(*t)).collect();
            if !inside.is_empty() {
                b = b.bundle(g.vertex_name(*v), &inside);
            }
        }
    }
    b.build()
}

/// `E_(H,S)`: vertices `H ∪ S`, the edges out of `H`, and the edges from
/// `S` into `H` (bundles included).
pub fn restriction_graph(g: &Graph, p: &AdmissiblePair) -> Result<Graph> {
    let p = validated(g, p)?;
    restrict(g, &p.h, &p.s)
}

/// `E_X` for a hereditary `X`.  Its algebra is Morita equivalent to the ideal
/// generated by `X`, which equals the ideal of the pair `(sat(X), ∅)`.
pub fn hereditary_subgraph(g: &Graph, x: &VertexSet) -> Result<Graph> {
    if !is_hereditary(g, x)? {
        return Err(Error::NotHereditary);
    }
    restrict(g, x, &VertexSet::new())
}

/// The inclusion `L_K(E_(H,S)) → L_K(E)`: identity on shared names except
/// that each `v ∈ S` goes to `v^H`.
pub fn embed_restriction(alg: &Arc<Lpa>, p: &AdmissiblePair, x: &Element) -> Result<Element> {
    let g = alg.graph();
    let p = validated(g, p)?;
    let sub = x.graph();
    if *sub != restrict(g, &p.h, &p.s)? {
        return Err(Error::AlgebraMismatch);
    }
    let mut out = alg.zero();
    for (m, c) in x.terms() {
        let image = if m.alpha.is_vertex() && m.beta.is_vertex() {
            let v = g.vertex(sub.vertex_name(m.alpha.source))?;
            if p.s.contains(&v) {
                vh_element(alg, &p.h, v)?
            } else {
                alg.vertex_element(v)
            }
        } else {
            let lift = |q: &Path| -> Result<Path> {
                let source = g.vertex(sub.vertex_name(q.source))?;
                let edges = q.edges.iter().map(|e| g.edge(sub.edge_name(*e))).collect::<Result<Vec<_>>>()?;
                Path::from_edges(g, source, &edges)
            };
            alg.monomial(Monomial::new(g, lift(&m.alpha)?, lift(&m.beta)?)?)
        };
        out = out.try_add(&image.scale(c)?)?;
    }
    Ok(out.normalize())
}

/// Finite truncation of the desingularization.
///
/// Each sink `w` grows a tail `w → w#1 → … → w#depth`.  Each infinite
/// emitter `v` grows a tail `v = v#0 → v#1 → …` with tail edges `v#f{k}`;
/// its edges are enumerated (explicit edges in canonical order, then the
/// bundle targets round-robin) and the `k`-th one is moved to leave
/// `v#(k-1)`.  Explicit edges keep their names, bundle edges are named
/// `v#g{k}`.  The tail has `max(depth, explicit edge count)` steps, so no
/// explicit edge is dropped; its last vertex is a sink on the truncation
/// frontier.
pub fn desingularize(g: &Graph, depth: usize) -> Result<Graph> {
    if depth == 0 {
        return Err(Error::Hypothesis("desingularization depth must be at least 1".into()));
    }
    let mut b = GraphBuilder::new();
    let mut moved: BTreeMap<EdgeId, String> = BTreeMap::new();
    let mut extra_vertices: Vec<String> = Vec::new();
    let mut extra_edges: Vec<(String, String, String)> = Vec::new();
    let tail = |v: &str, k: usize| if k == 0 { v.to_string() } else { format!("{v}#{k}") };
    for v in g.vertex_ids() {
        let name = g.vertex_name(v);
        b = b.vertex(name);
        let explicit = g.out_edges(v);
        match g.bundle_targets(v) {
            Some(targets) => {
                let len = depth.max(explicit.len());
                let targets: Vec<&str> = targets.iter().map(|t| g.vertex_name(*t)).collect();
                for k in 1..=len {
                    extra_vertices.push(tail(name, k));
                    extra_edges.push((format!("{name}#f{k}"), tail(name, k - 1), tail(name, k)));
                    match explicit.get(k - 1) {
                        Some(&e) => {
                            moved.insert(e, tail(name, k - 1));
                        }
                        None => {
                            let t = targets[(k - 1 - explicit.len()) % targets.len()];
                            extra_edges.push((format!("{name}#g{k}"), tail(name, k - 1), t.to_string()));
                        }
                    }
                }
            }
            None if explicit.is_empty() => {
                for k in 1..=depth {
                    extra_vertices.push(tail(name, k));
                    extra_edges.push((format!("{name}#f{k}"), tail(name, k - 1), tail(name, k)));
                }
            }
            None => {}
        }
    }
    for v in &extra_vertices {
        b = b.vertex(v);
    }
    for e in g.edge_ids() {
        let src = moved.get(&e).cloned().unwrap_or_else(|| g.vertex_name(g.source(e)).to_string());
        b = b.edge(g.edge_name(e), &src, g.vertex_name(g.range(e)));
    }
    for (e, s, t) in &extra_edges {
        b = b.edge(e, s, t);
    }
    b.build()
}

/// `L_K(C_n) ≅ M_n(K[x, x⁻¹])` for a graph that is one simple closed path
/// `v_1 → v_2 → … → v_n → v_1`, starting at the first vertex.
///
/// `v_i ↦ E_ii`, `e_i ↦ E_{i,i+1}` for `i < n`, `e_n ↦ E_{n,1} ⊗ x`, and
/// ghosts go to the conjugate transposes.
#[derive(Debug, Clone)]
pub struct CycleIso {
    /// Position of each vertex along the cycle.
    index: Vec<usize>,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl CycleIso {
    pub fn new(g: &Graph) -> Result<CycleIso> {
        let n = g.vertex_count();
        if n == 0 || g.edge_count() != n || g.has_bundles() {
            return Err(Error::NotACycle);
        }
        let mut index = vec![usize::MAX; n];
        let mut vertices = Vec::with_capacity(n);
        let mut edges = Vec::with_capacity(n);
        let mut v = VertexId(0);
        for i in 0..n {
            if index[v.0] != usize::MAX || g.out_edges(v).len() != 1 {
                return Err(Error::NotACycle);
            }
            index[v.0] = i;
            vertices.push(v);
            let e = g.out_edges(v)[0];
            edges.push(e);
            v = g.range(e);
        }
        if v != VertexId(0) {
            return Err(Error::NotACycle);
        }
        Ok(CycleIso { index, vertices, edges })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `(row, column, power of x)` of a real path.
    fn path_cell(&self, p: &Path) -> (usize, usize, i64) {
        let n = self.len();
        let i = self.index[p.source.0];
        let end = i + p.len();
        (i, end % n, (end / n) as i64)
    }

    pub fn forward(&self, x: &Element) -> Result<LaurentMatrix> {
        let n = self.len();
        let field = x.algebra().field();
        let mut out = LaurentMatrix::zero(field, n);
        for (m, c) in x.terms() {
            if m.alpha.source.0 >= n {
                return Err(Error::AlgebraMismatch);
            }
            let (i, _, a) = self.path_cell(&m.alpha);
            let (j, _, b) = self.path_cell(&m.beta);
            let cell = out.get(i, j).add(&LaurentPoly::monomial(c.clone(), a - b));
            out.set(i, j, cell);
        }
        Ok(out)
    }

    /// Path from position `i` to position 0 crossing the closing edge `w` times.
    fn path_to_base(&self, i: usize, wraps: i64) -> Path {
        let n = self.len();
        let len = (n - i) % n + n * (wraps - i64::from(i != 0)) as usize;
        let edges = (0..len).map(|k| self.edges[(i + k) % n]).collect();
        Path { source: self.vertices[i], edges }
    }

    pub fn inverse(&self, alg: &Arc<Lpa>, m: &LaurentMatrix) -> Result<Element> {
        let n = self.len();
        if m.dim() != n || alg.graph().vertex_count() != n {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = alg.zero();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in m.get(i, j).terms() {
                    let base_i = i64::from(i != 0);
                    let base_j = i64::from(j != 0);
                    let wb = base_j.max(base_i - k);
                    let wa = k + wb;
                    let mono = Monomial { alpha: self.path_to_base(i, wa), beta: self.path_to_base(j, wb) };
                    out = out.try_add(&alg.term(c.clone(), mono))?;
                }
            }
        }
        Ok(out.normalize())
    }
}

pub fn cycle_iso(alg: &Arc<Lpa>, x: &Element) -> Result<LaurentMatrix> {
    CycleIso::new(alg.graph())?.forward(x)
}

pub fn cycle_iso_inv(alg: &Arc<Lpa>, m: &LaurentMatrix) -> Result<Element> {
    CycleIso::new(alg.graph())?.inverse(alg, m)
}
