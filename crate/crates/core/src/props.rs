//! Closed paths, exits, Conditions (L) and (K), cofinality and simplicity.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexClass, VertexId};
use crate::lattice::{admissible_pairs, saturated_hereditary_sets};
use crate::transforms::quotient_graph;

/// One step of a walk: an explicit edge, or one of the infinitely many
/// anonymous edges of a bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Edge(EdgeId),
    Bundle { source: VertexId, target: VertexId },
}

impl Step {
    pub fn source(self, g: &Graph) -> VertexId {
        match self {
            Step::Edge(e) => g.source(e),
            Step::Bundle { source, .. } => source,
        }
    }

    pub fn range(self, g: &Graph) -> VertexId {
        match self {
            Step::Edge(e) => g.range(e),
            Step::Bundle { target, .. } => target,
        }
    }
}

/// A simple closed path; bundle steps stand for infinitely many parallel
/// paths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedPath {
    pub base: VertexId,
    pub steps: Vec<Step>,
}

impl ClosedPath {
    pub fn is_bundle_backed(&self) -> bool {
        self.steps.iter().any(|s| matches!(s, Step::Bundle { .. }))
    }

    /// The explicit path, when no bundle step is involved.
    pub fn to_path(&self) -> Option<Path> {
        let edges = self
            .steps
            .iter()
            .map(|s| match s {
                Step::Edge(e) => Some(*e),
                Step::Bundle { .. } => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Path { source: self.base, edges })
    }

    pub fn has_exit(&self, g: &Graph) -> bool {
        self.steps.iter().any(|s| vertex_has_choice(g, s.source(g)))
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> ClosedPathDisplay<'a> {
        ClosedPathDisplay { path: self, graph: g }
    }
}

pub struct ClosedPathDisplay<'a> {
    path: &'a ClosedPath,
    graph: &'a Graph,
}

impl fmt::Display for ClosedPathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        let parts: Vec<String> = self
            .path
            .steps
            .iter()
            .map(|s| match s {
                Step::Edge(e) => g.edge_name(*e).to_string(),
                Step::Bundle { source, target } => format!("[{}=>{}]", g.vertex_name(*source), g.vertex_name(*target)),
            })
            .collect();
        f.write_str(&parts.join("."))
    }
}

/// More than one way to leave `v`: a bundle, or two explicit edges.
fn vertex_has_choice(g: &Graph, v: VertexId) -> bool {
    g.bundle_targets(v).is_some() || g.out_edges(v).len() >= 2
}

fn steps_from(g: &Graph, v: VertexId) -> Vec<Step> {
    let mut out: Vec<Step> = g.out_edges(v).iter().map(|e| Step::Edge(*e)).collect();
    if let Some(ts) = g.bundle_targets(v) {
        out.extend(ts.iter().map(|t| Step::Bundle { source: v, target: *t }));
    }
    out
}

/// Vertices with a walk to `v`, including `v`.
fn reaching(g: &Graph, v: VertexId) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([v]);
    let mut changed = true;
    while changed {
        changed = false;
        for u in g.vertex_ids() {
            if !seen.contains(&u) && g.successors(u).iter().any(|w| seen.contains(w)) {
                seen.insert(u);
                changed = true;
            }
        }
    }
    seen
}

/// Simple closed paths at `v` (returning to `v` only at the end), in
/// shortlex order, at most `limit` of them.  There can be infinitely many
/// when a cycle avoiding `v` feeds back into `v`.
pub fn simple_closed_paths_at(g: &Graph, v: VertexId, limit: usize) -> Result<Vec<ClosedPath>> {
    if v.0 >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", v.0)));
    }
    let back = reaching(g, v);
    let mut out = Vec::new();
    let mut queue: VecDeque<(VertexId, Vec<Step>)> = VecDeque::from([(v, Vec::new())]);
    while let Some((at, steps)) = queue.pop_front() {
        if out.len() >= limit {
            break;
        }
        for s in steps_from(g, at) {
            let r = s.range(g);
            let mut next = steps.clone();
            next.push(s);
            if r == v {
                if out.len() < limit {
                    out.push(ClosedPath { base: v, steps: next });
                }
            } else if back.contains(&r) {
                queue.push_back((r, next));
            }
        }
    }
    Ok(out)
}

/// Number of simple closed paths at `v`, capped at `cap`; a bundle-backed
/// path already stands for infinitely many.
pub fn count_simple_closed_paths(g: &Graph, v: VertexId, cap: usize) -> Result<usize> {
    let paths = simple_closed_paths_at(g, v, cap)?;
    if paths.iter().any(ClosedPath::is_bundle_backed) {
        return Ok(cap);
    }
    Ok(paths.len())
}

pub fn has_exit(g: &Graph, alpha: &Path) -> Result<bool> {
    if alpha.is_vertex() || !alpha.is_closed(g) {
        return Err(Error::Hypothesis("an exit is only defined for closed paths".into()));
    }
    Ok(alpha.edges.iter().any(|e| vertex_has_choice(g, g.source(*e))))
}

/// Every closed path without an exit, once, based at its least vertex.
pub fn closed_paths_without_exit(g: &Graph) -> Vec<Path> {
    let mut out = Vec::new();
    for v in g.vertex_ids() {
        let mut at = v;
        let mut edges = Vec::new();
        loop {
            if vertex_has_choice(g, at) || g.out_edges(at).is_empty() {
                break;
            }
            let e = g.out_edges(at)[0];
            edges.push(e);
            at = g.range(e);
            if at == v {
                let least = std::iter::once(v).chain(edges.iter().map(|e| g.range(*e))).min().unwrap();
                if least == v {
                    out.push(Path { source: v, edges });
                }
                break;
            }
            if at < v || edges.len() > g.vertex_count() {
                break;
            }
        }
    }
    out
}

pub fn condition_l(g: &Graph) -> bool {
    closed_paths_without_exit(g).is_empty()
}

/// Every vertex is the base of no simple closed path or of at least two.
pub fn condition_k(g: &Graph) -> bool {
    g.vertex_ids().all(|v| count_simple_closed_paths(g, v, 2).map(|n| n != 1).unwrap_or(false))
}

/// Condition (L) on every quotient by an admissible pair.
pub fn condition_k_via_quotients(g: &Graph) -> Result<bool> {
    for p in admissible_pairs(g) {
        if !condition_l(&quotient_graph(g, &p)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vertices lying on some closed path, bundle edges included.
pub fn cycle_vertices(g: &Graph) -> BTreeSet<VertexId> {
    g.vertex_ids().filter(|v| g.reachable_from(g.successors(*v)).contains(v)).collect()
}

/// Every vertex reaches every infinite path.  In a finite graph an infinite
/// path eventually stays on closed paths, so this is the same as every
/// vertex reaching every vertex that lies on a closed path.
pub fn is_cofinal(g: &Graph) -> bool {
    let cyc = cycle_vertices(g);
    g.vertex_ids().all(|v| {
        let r = g.reachable_from([v]);
        cyc.iter().all(|c| r.contains(c))
    })
}

/// Every vertex reaches every sink and every infinite emitter.
pub fn reaches_all_singular(g: &Graph) -> bool {
    let singular: Vec<VertexId> = g.vertex_ids().filter(|v| g.classify(*v) != VertexClass::Regular).collect();
    g.vertex_ids().all(|v| {
        let r = g.reachable_from([v]);
        singular.iter().all(|s| r.contains(s))
    })
}

/// The only saturated hereditary subsets are `∅` and `E⁰`.
pub fn only_trivial_saturated(g: &Graph) -> bool {
    saturated_hereditary_sets(g).len() == 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub condition_l: bool,
    pub condition_k: bool,
    pub trivial_saturated: bool,
    pub cofinal: bool,
    pub reaches_singular: bool,
    /// `[L ∧ trivial, K ∧ trivial, L ∧ cofinal ∧ reach, K ∧ cofinal ∧ reach]`.
    pub characterizations: [bool; 4],
}

/// Decides simplicity of `L_K(E)` four ways and insists they agree.
pub fn is_simple(g: &Graph) -> Result<SimplicityVerdict> {
    if g.vertex_count() == 0 {
        return Err(Error::Hypothesis("the empty graph has the zero algebra".into()));
    }
    let condition_l = condition_l(g);
    let condition_k = condition_k(g);
    let trivial_saturated = only_trivial_saturated(g);
    let cofinal = is_cofinal(g);
    let reaches_singular = reaches_all_singular(g);
    let characterizations = [
        condition_l && trivial_saturated,
        condition_k && trivial_saturated,
        condition_l && cofinal && reaches_singular,
        condition_k && cofinal && reaches_singular,
    ];
    if characterizations.iter().any(|c| *c != characterizations[0]) {
        return Err(Error::Internal(format!("simplicity characterizations disagree: {characterizations:?}")));
    }
    Ok(SimplicityVerdict {
        simple: characterizations[0],
        condition_l,
        condition_k,
        trivial_saturated,
        cofinal,
        reaches_singular,
        characterizations,
    })
}
