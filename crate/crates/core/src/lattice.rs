//! Hereditary and saturated vertex sets, breaking vertices, admissible pairs
//! and the lattice of graded ideals they index.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{Element, Lpa};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexClass, VertexId};
use crate::laurent::LaurentPoly;
use crate::transforms::{hereditary_subgraph, CycleIso, QuotientMap};

pub type VertexSet = BTreeSet<VertexId>;

fn check_ids(g: &Graph, set: &VertexSet) -> Result<()> {
    match set.iter().find(|v| v.0 >= g.vertex_count()) {
        Some(v) => Err(Error::UnknownVertex(format!("#{}", v.0))),
        None => Ok(()),
    }
}

/// Parses `y,z`, `{y,z}` or the empty string into a vertex set.
pub fn parse_vertex_set(g: &Graph, text: &str) -> Result<VertexSet> {
    let inner = text.trim();
    let inner = inner.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(inner);
    inner.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| g.vertex(s)).collect()
}

/// `{a,b,c}` in canonical vertex order.
pub fn format_vertex_set(g: &Graph, set: &VertexSet) -> String {
    let names: Vec<&str> = set.iter().map(|v| g.vertex_name(*v)).collect();
    format!("{{{}}}", names.join(","))
}

pub fn is_hereditary(g: &Graph, h: &VertexSet) -> Result<bool> {
    check_ids(g, h)?;
    Ok(h.iter().all(|v| g.successors(*v).iter().all(|w| h.contains(w))))
}

fn require_hereditary(g: &Graph, h: &VertexSet) -> Result<()> {
    if is_hereditary(g, h)? {
        Ok(())
    } else {
        Err(Error::NotHereditary)
    }
}

/// Regular vertices outside `h` whose edges all land in `h`.
fn saturation_candidates<'a>(g: &'a Graph, h: &'a VertexSet) -> impl Iterator<Item = VertexId> + 'a {
    g.vertex_ids().filter(move |v| {
        !h.contains(v)
            && g.classify(*v) == VertexClass::Regular
            && g.out_edges(*v).iter().all(|e| h.contains(&g.range(*e)))
    })
}

pub fn is_saturated(g: &Graph, h: &VertexSet) -> Result<bool> {
    require_hereditary(g, h)?;
    Ok(saturation_candidates(g, h).next().is_none())
}

/// Least saturated hereditary superset of a hereditary set.
pub fn saturate(g: &Graph, h: &VertexSet) -> Result<VertexSet> {
    require_hereditary(g, h)?;
    let mut out = h.clone();
    loop {
        let add: Vec<VertexId> = saturation_candidates(g, &out).collect();
        if add.is_empty() {
            return Ok(out);
        }
        out.extend(add);
    }
}

/// Least hereditary superset: everything reachable from `x`.
pub fn hereditary_closure(g: &Graph, x: &VertexSet) -> Result<VertexSet> {
    check_ids(g, x)?;
    Ok(g.reachable_from(x.iter().copied()))
}

fn require_saturated_hereditary(g: &Graph, h: &VertexSet) -> Result<()> {
    if is_saturated(g, h)? {
        Ok(())
    } else {
        Err(Error::NotSaturated)
    }
}

/// Infinite emitters outside `h` with all bundle targets inside `h` and at
/// least one explicit edge leaving `h`.
pub fn breaking_vertices(g: &Graph, h: &VertexSet) -> Result<VertexSet> {
    require_saturated_hereditary(g, h)?;
    Ok(breaking_unchecked(g, h))
}

fn breaking_unchecked(g: &Graph, h: &VertexSet) -> VertexSet {
    g.bundles()
        .iter()
        .filter(|(v, targets)| {
            !h.contains(v)
                && targets.iter().all(|t| h.contains(t))
                && g.out_edges(**v).iter().any(|e| !h.contains(&g.range(*e)))
        })
        .map(|(v, _)| *v)
        .collect()
}

/// `v^H = v - Σ ee*` over the edges from `v` leaving `h`.
pub fn vh_element(alg: &Arc<Lpa>, h: &VertexSet, v: VertexId) -> Result<Element> {
    let g = alg.graph();
    if !breaking_vertices(g, h)?.contains(&v) {
        return Err(Error::NotBreaking(g.vertex_name(v).to_string()));
    }
    Ok(vh_unchecked(alg, h, v))
}

fn vh_unchecked(alg: &Arc<Lpa>, h: &VertexSet, v: VertexId) -> Element {
    let g = alg.graph();
    let mut x = alg.vertex_element(v);
    for &e in g.out_edges(v) {
        if !h.contains(&g.range(e)) {
            let ee = &alg.edge_element(e) * &alg.ghost_element(e);
            x = &x - &ee;
        }
    }
    x.normalize()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissiblePair {
    pub h: VertexSet,
    pub s: VertexSet,
}

impl AdmissiblePair {
    pub fn new(g: &Graph, h: VertexSet, s: VertexSet) -> Result<AdmissiblePair> {
        check_ids(g, &s)?;
        if !is_hereditary(g, &h)? {
            return Err(Error::InvalidPair("H is not hereditary".into()));
        }
        if !is_saturated(g, &h)? {
            return Err(Error::InvalidPair("H is not saturated".into()));
        }
        let b = breaking_unchecked(g, &h);
        if let Some(v) = s.iter().find(|v| !b.contains(v)) {
            return Err(Error::InvalidPair(format!("`{}` is not a breaking vertex of H", g.vertex_name(*v))));
        }
        Ok(AdmissiblePair { h, s })
    }

    pub fn trivial_bottom() -> AdmissiblePair {
        AdmissiblePair { h: VertexSet::new(), s: VertexSet::new() }
    }

    pub fn trivial_top(g: &Graph) -> AdmissiblePair {
        AdmissiblePair { h: g.vertex_ids().collect(), s: VertexSet::new() }
    }

    /// Parses `H={y,z};S={v}`; either part may be omitted and means `{}`.
    pub fn parse(g: &Graph, text: &str) -> Result<AdmissiblePair> {
        let mut h = VertexSet::new();
        let mut s = VertexSet::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidPair(format!("expected `H=...` or `S=...`, found `{part}`")))?;
            match key.trim() {
                "H" => h = parse_vertex_set(g, value)?,
                "S" => s = parse_vertex_set(g, value)?,
                other => return Err(Error::InvalidPair(format!("unknown key `{other}`"))),
            }
        }
        AdmissiblePair::new(g, h, s)
    }

    pub fn display(&self, g: &Graph) -> String {
        format!("H={};S={}", format_vertex_set(g, &self.h), format_vertex_set(g, &self.s))
    }
}

/// `(H,S) ≤ (H',S')` iff `H ⊆ H'` and `S ⊆ H' ∪ S'`.
pub fn pair_leq(p1: &AdmissiblePair, p2: &AdmissiblePair) -> bool {
    p1.h.is_subset(&p2.h) && p1.s.iter().all(|v| p2.h.contains(v) || p2.s.contains(v))
}

/// Every saturated hereditary subset, ordered by size then lexicographically.
pub fn saturated_hereditary_sets(g: &Graph) -> Vec<VertexSet> {
    let start = VertexSet::new();
    let mut seen: BTreeSet<VertexSet> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        for v in g.vertex_ids().filter(|v| !h.contains(v)) {
            let mut grown = g.reachable_from([v]);
            grown.extend(h.iter().copied());
            let next = saturate(g, &grown).expect("union of hereditary sets is hereditary");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<VertexSet> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All admissible pairs: each saturated hereditary `H` with every subset of
/// its breaking vertices.
pub fn admissible_pairs(g: &Graph) -> Vec<AdmissiblePair> {
    let mut out = Vec::new();
    for h in saturated_hereditary_sets(g) {
        let b: Vec<VertexId> = breaking_unchecked(g, &h).into_iter().collect();
        let mut subsets: Vec<VertexSet> = (0u64..1 << b.len())
            .map(|mask| (0..b.len()).filter(|i| mask >> i & 1 == 1).map(|i| b[i]).collect())
            .collect();
        subsets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        out.extend(subsets.into_iter().map(|s| AdmissiblePair { h: h.clone(), s }));
    }
    out
}

/// The enumerated poset of admissible pairs with order-theoretic meets and
/// joins.
#[derive(Debug, Clone)]
pub struct Lattice {
    pairs: Vec<AdmissiblePair>,
    leq: Vec<Vec<bool>>,
}

/// A printed bound formula that disagrees with the order-theoretic bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaDisagreement {
    pub op: &'static str,
    pub left: AdmissiblePair,
    pub right: AdmissiblePair,
    pub formula: (VertexSet, VertexSet),
    pub lattice: AdmissiblePair,
}

impl Lattice {
    pub fn new(g: &Graph) -> Lattice {
        let pairs = admissible_pairs(g);
        let leq = pairs.iter().map(|a| pairs.iter().map(|b| pair_leq(a, b)).collect()).collect();
        Lattice { pairs, leq }
    }

    pub fn pairs(&self) -> &[AdmissiblePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, p: &AdmissiblePair) -> Result<usize> {
        self.pairs.iter().position(|q| q == p).ok_or_else(|| Error::InvalidPair("pair not in the lattice".into()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    fn extremal(&self, bounds: Vec<usize>, greatest: bool) -> Result<usize> {
        let found: Vec<usize> = bounds
            .iter()
            .copied()
            .filter(|&m| bounds.iter().all(|&b| if greatest { self.leq[b][m] } else { self.leq[m][b] }))
            .collect();
        match found.as_slice() {
            [m] => Ok(*m),
            _ => Err(Error::Internal(format!("{} bounds found where one was expected", found.len()))),
        }
    }

    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        let lower = (0..self.len()).filter(|&k| self.leq[k][i] && self.leq[k][j]).collect();
        self.extremal(lower, true)
    }

    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        let upper = (0..self.len()).filter(|&k| self.leq[i][k] && self.leq[j][k]).collect();
        self.extremal(upper, false)
    }

    pub fn meet_pairs(&self, p1: &AdmissiblePair, p2: &AdmissiblePair) -> Result<AdmissiblePair> {
        Ok(self.pairs[self.meet(self.index_of(p1)?, self.index_of(p2)?)?].clone())
    }

    pub fn join_pairs(&self, p1: &AdmissiblePair, p2: &AdmissiblePair) -> Result<AdmissiblePair> {
        Ok(self.pairs[self.join(self.index_of(p1)?, self.index_of(p2)?)?].clone())
    }

    /// Covering relations `(lower, upper)` of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_dot(&self, g: &Graph) -> String {
        let mut s = String::from("digraph lattice {\n  rankdir=BT;\n");
        for (i, p) in self.pairs.iter().enumerate() {
            let _ = writeln!(s, "  p{i} [label=\"{}\"];", p.display(g).replace('"', "\\\""));
        }
        for (i, j) in self.covers() {
            let _ = writeln!(s, "  p{i} -> p{j};");
        }
        s.push_str("}\n");
        s
    }

    /// Evaluates the printed meet and join formulas on every pair of pairs
    /// and lists where they differ from the bounds forced by the order.
    pub fn formula_disagreements(&self, g: &Graph) -> Result<Vec<FormulaDisagreement>> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                let (a, b) = (&self.pairs[i], &self.pairs[j]);
                let checks = [
                    ("meet", printed_meet(g, a, b)?, &self.pairs[self.meet(i, j)?]),
                    ("join", printed_join(g, a, b)?, &self.pairs[self.join(i, j)?]),
                ];
                for (op, formula, lattice) in checks {
                    if formula.0 != lattice.h || formula.1 != lattice.s {
                        out.push(FormulaDisagreement {
                            op,
                            left: a.clone(),
                            right: b.clone(),
                            formula,
                            lattice: lattice.clone(),
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn pair_meet(g: &Graph, p1: &AdmissiblePair, p2: &AdmissiblePair) -> Result<AdmissiblePair> {
    Lattice::new(g).meet_pairs(p1, p2)
}

pub fn pair_join(g: &Graph, p1: &AdmissiblePair, p2: &AdmissiblePair) -> Result<AdmissiblePair> {
    Lattice::new(g).join_pairs(p1, p2)
}

/// `(H₁ ∩ H₂, ((S₁ ∪ H₁) ∪ (S₂ ∪ H₂)) ∩ B_{H₁∩H₂})`, read literally.
pub fn printed_meet(g: &Graph, p1: &AdmissiblePair, p2: &AdmissiblePair) -> Result<(VertexSet, VertexSet)> {
    let h: VertexSet = p1.h.intersection(&p2.h).copied().collect();
    let b = breaking_vertices(g, &h)?;
    let s = p1.s.iter().chain(&p1.h).chain(&p2.s).chain(&p2.h).filter(|v| b.contains(v)).copied().collect();
    Ok((h, s))
}

/// `(sat(H₁ ∪ H₂) ∪ ((S₁ ∪ S₂) \ B_{sat(H₁∩H₂)}), (S₁ ∪ S₂) ∩ B_{sat(H₁∪H₂)})`,
/// read literally.
pub fn printed_join(g: &Graph, p1: &AdmissiblePair, p2: &AdmissiblePair) -> Result<(VertexSet, VertexSet)> {
    let union: VertexSet = p1.h.union(&p2.h).copied().collect();
    let inter: VertexSet = p1.h.intersection(&p2.h).copied().collect();
    let sat_union = saturate(g, &union)?;
    let sat_inter = saturate(g, &inter)?;
    let b_inter = breaking_vertices(g, &sat_inter)?;
    let b_union = breaking_vertices(g, &sat_union)?;
    let s_all: VertexSet = p1.s.union(&p2.s).copied().collect();
    let mut h = sat_union.clone();
    h.extend(s_all.iter().filter(|v| !b_inter.contains(v)));
    let s = s_all.into_iter().filter(|v| b_union.contains(v)).collect();
    Ok((h, s))
}

/// The vertices of `H` followed by `v^H` for each `v ∈ S`.
pub fn ideal_generators(alg: &Arc<Lpa>, p: &AdmissiblePair) -> Result<Vec<Element>> {
    let g = alg.graph();
    AdmissiblePair::new(g, p.h.clone(), p.s.clone())?;
    let mut out: Vec<Element> = p.h.iter().map(|v| alg.vertex_element(*v)).collect();
    out.extend(p.s.iter().map(|v| vh_unchecked(alg, &p.h, *v)));
    Ok(out)
}

/// Membership in the graded ideal of a pair: the quotient image vanishes.
pub fn in_graded_ideal(alg: &Arc<Lpa>, p: &AdmissiblePair, x: &Element) -> Result<bool> {
    Ok(QuotientMap::new(alg, p)?.apply(x)?.is_zero())
}

/// Increasing local units `t_1, t_2, ...` for the ideal of `(H, ∅)`.
///
/// `t_n` sums the first `n` vertices of `H` and the projections `αα*` of
/// the first `n` paths that start outside `H`, end in `H` and meet `H` only
/// at their range, in shortlex order.  The iterator stops once both lists
/// are exhausted.
pub fn ideal_local_units(alg: &Arc<Lpa>, h: &VertexSet) -> Result<IdealLocalUnits> {
    require_saturated_hereditary(alg.graph(), h)?;
    let g = alg.graph();
    let inside: VertexSet = h.clone();
    // Only vertices that can still reach H through explicit edges are worth
    // extending, which keeps every layer productive.
    let mut feeds: VertexSet = inside.clone();
    loop {
        let more: Vec<VertexId> = g
            .vertex_ids()
            .filter(|v| !feeds.contains(v) && g.out_edges(*v).iter().any(|e| feeds.contains(&g.range(*e))))
            .collect();
        if more.is_empty() {
            break;
        }
        feeds.extend(more);
    }
    let frontier: Vec<Path> =
        g.vertex_ids().filter(|v| !inside.contains(v) && feeds.contains(v)).map(Path::vertex).collect();
    Ok(IdealLocalUnits {
        alg: Arc::clone(alg),
        vertices: h.iter().copied().collect(),
        inside,
        feeds,
        frontier,
        ready: VecDeque::new(),
        n: 0,
        current: alg.zero(),
        paths_done: false,
    })
}

pub struct IdealLocalUnits {
    alg: Arc<Lpa>,
    vertices: Vec<VertexId>,
    inside: VertexSet,
    feeds: VertexSet,
    frontier: Vec<Path>,
    ready: VecDeque<Path>,
    n: usize,
    current: Element,
    paths_done: bool,
}

impl IdealLocalUnits {
    fn next_path(&mut self) -> Option<Path> {
        let g = Arc::clone(self.alg.graph_arc());
        while self.ready.is_empty() && !self.frontier.is_empty() {
            let mut next = Vec::new();
            for p in &self.frontier {
                for &e in g.out_edges(p.range(&g)) {
                    let r = g.range(e);
                    let q = p.pushed(e);
                    if self.inside.contains(&r) {
                        self.ready.push_back(q);
                    } else if self.feeds.contains(&r) {
                        next.push(q);
                    }
                }
            }
            self.frontier = next;
        }
        self.ready.pop_front()
    }
}

impl Iterator for IdealLocalUnits {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let vertex = self.vertices.get(self.n).copied();
        let path = if self.paths_done { None } else { self.next_path() };
        if path.is_none() {
            self.paths_done = true;
        }
        if vertex.is_none() && path.is_none() {
            return None;
        }
        self.n += 1;
        if let Some(v) = vertex {
            self.current = &self.current + &self.alg.vertex_element(v);
        }
        if let Some(p) = path {
            let proj = &self.alg.path_element(&p) * &self.alg.ghost_path_element(&p);
            self.current = &self.current + &proj;
        }
        self.current = self.current.normalize();
        Some(self.current.clone())
    }
}

/// A generator of a non-graded ideal together with a homogeneous component
/// of it certified to lie outside the ideal.
#[derive(Debug, Clone)]
pub struct NongradedWitness {
    /// The exitless closed path, based at its first vertex.
    pub cycle: Path,
    /// `v + α` for the cycle `α` based at `v`.
    pub generator: Element,
    /// The degree-0 component `v` of the generator.
    pub component: Element,
    /// Generator of the entry ideal of the generator's matrix image.
    pub modulus: LaurentPoly,
    /// Remainder of the component's nonzero matrix entry modulo `modulus`.
    pub residue: LaurentPoly,
}

/// For a graph with an exitless closed path, returns `v + α` with `α` the
/// cycle at `v`.  Its ideal is not graded: inside the cycle corner
/// `M_n(K[x, x⁻¹])` it corresponds to `⟨1 + x⟩`, which does not contain
/// the image of `v`.  Returns `None` when every closed path has an exit.
pub fn nongraded_ideal_witness(alg: &Arc<Lpa>) -> Result<Option<NongradedWitness>> {
    let g = alg.graph();
    let Some(cycle) = crate::props::closed_paths_without_exit(g).into_iter().next() else {
        return Ok(None);
    };
    let component = alg.vertex_element(cycle.source);
    let generator = &component + &alg.path_element(&cycle);

    let x: VertexSet = std::iter::once(cycle.source).chain(cycle.edges.iter().map(|e| g.range(*e))).collect();
    let sub = Lpa::new(hereditary_subgraph(g, &x)?, alg.field());
    let iso = CycleIso::new(sub.graph())?;
    let gen_image = iso.forward(&generator.transport(&sub)?)?;
    let comp_image = iso.forward(&component.transport(&sub)?)?;
    let modulus = gen_image.entry_ideal()?;
    let n = iso.len();
    let mut residue = LaurentPoly::zero(alg.field());
    for i in 0..n {
        for j in 0..n {
            let r = comp_image.get(i, j).rem(&modulus)?;
            if !r.is_zero() && residue.is_zero() {
                residue = r;
            }
        }
    }
    if residue.is_zero() {
        return Err(Error::Internal("witness component lies in the generated ideal".into()));
    }
    Ok(Some(NongradedWitness { cycle, generator, component, modulus, residue }))
}
