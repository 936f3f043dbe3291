//! Directed graphs with sinks, regular vertices and infinite emitters.
//!
//! Only finitely many vertices and named edges are stored.  An infinite
//! emitter is described by a *bundle*: `v => {w, ...}` stands for countably
//! many anonymous parallel edges from `v` to each listed target.  Bundle edges
//! are real edges for reachability and exit questions, but they never occur in
//! a [`Path`], so algebra elements stay finite.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Regular,
    Sink,
    InfiniteEmitter,
}

impl VertexClass {
    pub fn is_singular(self) -> bool {
        !matches!(self, VertexClass::Regular)
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexClass::Regular => "regular",
            VertexClass::Sink => "sink",
            VertexClass::InfiniteEmitter => "infinite-emitter",
        })
    }
}

/// One broken graph invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyIdentifier,
    BadIdentifier(String),
    DuplicateIdentifier(String),
    DanglingEdge { edge: String, endpoint: String },
    UnknownBundleSource(String),
    UnknownBundleTarget { source: String, target: String },
    EmptyBundle(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyIdentifier => write!(f, "empty identifier"),
            Violation::BadIdentifier(s) => write!(f, "identifier `{s}` contains a reserved character"),
            Violation::DuplicateIdentifier(s) => write!(f, "identifier `{s}` is used twice"),
            Violation::DanglingEdge { edge, endpoint } => {
                write!(f, "edge `{edge}` mentions unknown vertex `{endpoint}`")
            }
            Violation::UnknownBundleSource(s) => write!(f, "bundle source `{s}` is not a vertex"),
            Violation::UnknownBundleTarget { source, target } => {
                write!(f, "bundle at `{source}` targets unknown vertex `{target}`")
            }
            Violation::EmptyBundle(s) => write!(f, "bundle at `{s}` has no targets"),
        }
    }
}

/// Characters that may not appear in vertex or edge identifiers.
pub const RESERVED_CHARS: &[char] = &[',', ';', '{', '}', '='];

pub fn is_valid_identifier(s: &str) -> bool {
    !s.is_empty() && !s.starts_with('#') && !s.chars().any(|c| c.is_whitespace() || RESERVED_CHARS.contains(&c))
}

/// Raw, unvalidated graph description.  Insertion order is the canonical
/// order of the finished [`Graph`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphBuilder {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
    pub bundles: Vec<(String, Vec<String>)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn vertices(mut self, names: &[&str]) -> Self {
        self.vertices.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn edge(mut self, name: &str, source: &str, range: &str) -> Self {
        self.edges.push((name.to_string(), source.to_string(), range.to_string()));
        self
    }

    pub fn bundle(mut self, source: &str, targets: &[&str]) -> Self {
        self.bundles.push((source.to_string(), targets.iter().map(|s| s.to_string()).collect()));
        self
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let names = self.vertices.iter().chain(self.edges.iter().map(|e| &e.0));
        for name in names {
            if name.is_empty() {
                out.push(Violation::EmptyIdentifier);
            } else if !is_valid_identifier(name) {
                out.push(Violation::BadIdentifier(name.clone()));
            }
            if !name.is_empty() && !seen.insert(name.as_str()) {
                out.push(Violation::DuplicateIdentifier(name.clone()));
            }
        }
        let vertex_set: BTreeSet<&str> = self.vertices.iter().map(String::as_str).collect();
        for (e, s, r) in &self.edges {
            for end in [s, r] {
                if !vertex_set.contains(end.as_str()) {
                    out.push(Violation::DanglingEdge { edge: e.clone(), endpoint: end.clone() });
                }
            }
        }
        for (s, targets) in &self.bundles {
            if !vertex_set.contains(s.as_str()) {
                out.push(Violation::UnknownBundleSource(s.clone()));
            }
            if targets.is_empty() {
                out.push(Violation::EmptyBundle(s.clone()));
            }
            for t in targets {
                if !vertex_set.contains(t.as_str()) {
                    out.push(Violation::UnknownBundleTarget { source: s.clone(), target: t.clone() });
                }
            }
        }
        out
    }

    pub fn build(self) -> Result<Graph> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidGraph(violations));
        }
        let vertex_index: HashMap<String, VertexId> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.clone(), VertexId(i))).collect();
        let edges: Vec<EdgeRecord> = self
            .edges
            .iter()
            .map(|(e, s, r)| EdgeRecord { name: e.clone(), source: vertex_index[s], range: vertex_index[r] })
            .collect();
        let edge_index = edges.iter().enumerate().map(|(i, e)| (e.name.clone(), EdgeId(i))).collect();
        let mut bundles: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for (s, targets) in &self.bundles {
            bundles.entry(vertex_index[s]).or_default().extend(targets.iter().map(|t| vertex_index[t]));
        }
        let mut out_edges = vec![Vec::new(); self.vertices.len()];
        let mut in_edges = vec![Vec::new(); self.vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.0].push(EdgeId(i));
            in_edges[e.range.0].push(EdgeId(i));
        }
        Ok(Graph { vertices: self.vertices, vertex_index, edges, edge_index, bundles, out_edges, in_edges })
    }
}

/// A validated, immutable graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<EdgeRecord>,
    edge_index: HashMap<String, EdgeId>,
    bundles: BTreeMap<VertexId, BTreeSet<VertexId>>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (e.name.clone(), self.vertex_name(e.source).to_string(), self.vertex_name(e.range).to_string())
                })
                .collect(),
            bundles: self
                .bundles
                .iter()
                .map(|(s, ts)| {
                    (self.vertex_name(*s).to_string(), ts.iter().map(|t| self.vertex_name(*t).to_string()).collect())
                })
                .collect(),
        }
    }

    /// Always empty: a `Graph` can only be obtained from a validated builder.
    pub fn validate(&self) -> Vec<Violation> {
        self.to_builder().validate()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId> {
        self.edge_index.get(name).copied().ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    pub fn edge_record(&self, e: EdgeId) -> &EdgeRecord {
        &self.edges[e.0]
    }

    /// Explicit out-edges of `v` in canonical order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn bundle_targets(&self, v: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.bundles.get(&v)
    }

    pub fn bundles(&self) -> &BTreeMap<VertexId, BTreeSet<VertexId>> {
        &self.bundles
    }

    pub fn has_bundles(&self) -> bool {
        !self.bundles.is_empty()
    }

    pub fn classify(&self, v: VertexId) -> VertexClass {
        if self.bundles.contains_key(&v) {
            VertexClass::InfiniteEmitter
        } else if self.out_edges[v.0].is_empty() {
            VertexClass::Sink
        } else {
            VertexClass::Regular
        }
    }

    pub fn classify_vertex(&self, name: &str) -> Result<VertexClass> {
        Ok(self.classify(self.vertex(name)?))
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        self.classify(v) == VertexClass::Regular
    }

    /// Every vertex reached by one edge from `v`, explicit or bundled, in
    /// canonical order without repeats.
    pub fn successors(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = self.out_edges[v.0].iter().map(|e| self.range(*e)).collect();
        if let Some(ts) = self.bundles.get(&v) {
            out.extend(ts.iter().copied());
        }
        out
    }

    /// Number of edges (explicit plus bundled) from `u` to `w`, saturating:
    /// a bundle contributes infinitely many, reported as `usize::MAX`.
    pub fn edge_multiplicity(&self, u: VertexId, w: VertexId) -> usize {
        if self.bundles.get(&u).is_some_and(|ts| ts.contains(&w)) {
            return usize::MAX;
        }
        self.out_edges[u.0].iter().filter(|e| self.range(**e) == w).count()
    }

    /// Forward closure through explicit and bundle edges.
    pub fn reachable_from<I: IntoIterator<Item = VertexId>>(&self, start: I) -> BTreeSet<VertexId> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut queue: VecDeque<VertexId> = VecDeque::new();
        for v in start {
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in self.successors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// All paths of length `n` over explicit edges, optionally from one
    /// source, sorted lexicographically by edge sequence.
    pub fn paths_of_length(&self, n: usize, from: Option<VertexId>) -> Vec<Path> {
        let starts: Vec<VertexId> = match from {
            Some(v) => vec![v],
            None => self.vertex_ids().collect(),
        };
        let mut layer: Vec<Path> = starts.into_iter().map(Path::vertex).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &layer {
                for &e in self.out_edges(p.range(self)) {
                    let mut q = p.clone();
                    q.edges.push(e);
                    next.push(q);
                }
            }
            layer = next;
        }
        if n > 0 {
            layer.sort_by(|a, b| a.edges.cmp(&b.edges));
        }
        layer
    }

    /// Paths of length `n` that end at `v`, in lexicographic edge order.
    pub fn paths_of_length_into(&self, n: usize, v: VertexId) -> Vec<Path> {
        self.paths_of_length(n, None).into_iter().filter(|p| p.range(self) == v).collect()
    }

    pub fn path_from_names(&self, source: &str, edges: &[&str]) -> Result<Path> {
        let mut p = Path::vertex(self.vertex(source)?);
        for name in edges {
            let e = self.edge(name)?;
            p = p.compose(&Path::edge(self, e), self)?;
        }
        Ok(p)
    }

    /// Graphviz rendering.  Bundles are drawn as bold edges labelled `∞`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for v in &self.vertices {
            s.push_str(&format!("  \"{}\";\n", escape(v)));
        }
        for e in &self.edges {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                escape(self.vertex_name(e.source)),
                escape(self.vertex_name(e.range)),
                escape(&e.name)
            ));
        }
        for (src, targets) in &self.bundles {
            for t in targets {
                s.push_str(&format!(
                    "  \"{}\" -> \"{}\" [style=bold, label=\"∞\"];\n",
                    escape(self.vertex_name(*src)),
                    escape(self.vertex_name(*t))
                ));
            }
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A finite path over explicit edges.  The empty path at `source` is the
/// vertex itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { source: v, edges: Vec::new() }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Path {
        Path { source: g.source(e), edges: vec![e] }
    }

    /// Builds a path from an edge sequence, checking composability.
    pub fn from_edges(g: &Graph, source: VertexId, edges: &[EdgeId]) -> Result<Path> {
        let mut p = Path::vertex(source);
        for &e in edges {
            p = p.compose(&Path::edge(g, e), g)?;
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.edges.last().map_or(self.source, |e| g.range(*e))
    }

    pub fn is_closed(&self, g: &Graph) -> bool {
        !self.edges.is_empty() && self.range(g) == self.source
    }

    /// Concatenation `self · other`; requires `r(self) = s(other)`.
    pub fn compose(&self, other: &Path, g: &Graph) -> Result<Path> {
        let r = self.range(g);
        if r != other.source {
            return Err(Error::NotComposable {
                range: g.vertex_name(r).to_string(),
                source_vertex: g.vertex_name(other.source).to_string(),
            });
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path { source: self.source, edges })
    }

    /// Appends one edge without checking; callers guarantee composability.
    pub(crate) fn pushed(&self, e: EdgeId) -> Path {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path { source: self.source, edges }
    }

    /// `Some(rest)` with `self = prefix · rest` when `prefix` is an initial
    /// segment of `self`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Vec<EdgeId>> {
        if self.source == prefix.source && self.edges.starts_with(&prefix.edges) {
            Some(self.edges[prefix.edges.len()..].to_vec())
        } else {
            None
        }
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph: g }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.edges.is_empty() {
            return f.write_str(self.graph.vertex_name(self.path.source));
        }
        let names: Vec<&str> = self.path.edges.iter().map(|e| self.graph.edge_name(*e)).collect();
        f.write_str(&names.join("."))
    }
}
